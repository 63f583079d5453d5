#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <sys/wait.h>

#include "wittrep/report.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded.
Run cli(const std::string& args) {
  const std::string cmd = std::string(WITTREP_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path fresh_dir(const char* tag) {
  std::random_device rd;
  auto p = std::filesystem::temp_directory_path() / (std::string("wittrep-") + tag + "-" + std::to_string(rd()));
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("class counts") {
  for (const auto& [ring, scheme, k] : std::vector<std::tuple<const char*, const char*, int>>{
           {"'truncpoly(gf(2),r=3)'", "'sl(2)'", 24}, {"'zmod(2^3)'", "'sl(2)'", 30}, {"'gf(2)'", "'gl(1)'", 1},
           {"'zmod(2^2)'", "'gl(1)'", 2}}) {
    const Run r = cli(std::string("--scheme ") + scheme + " --ring " + ring + " classes --out json");
    CAPTURE(ring);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["num_classes"] == k);
    CHECK(j["classes"].size() == static_cast<std::size_t>(k));
    std::uint64_t total = 0;
    for (const auto& c : j["classes"]) {
      total += c["size"].get<std::uint64_t>();
      CHECK(c["size"].get<std::uint64_t>() * c["centralizer_order"].get<std::uint64_t>() == j["order"]);
    }
    CHECK(total == j["order"]);
  }
  const Run csv = cli("--scheme 'sl(2)' --ring 'zmod(2^3)' classes --out csv");
  CHECK(csv.out.rfind("class,size,centralizer_order\n", 0) == 0);
  const Run text = cli("--scheme 'sl(2)' --q 2 --r 3 classes --out text");
  CHECK(text.code == 0);
  CHECK(text.out.find("24") != std::string::npos);
}

TEST_CASE("compare output follows the schema") {
  const Run r = cli("--scheme 'gl(2)' --q 2 compare --out json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(wittrep::validate_comparison_json(j).empty());
  CHECK(j["scheme"] == "gl(2)");
  CHECK(j["q"] == 2);
  CHECK(j["rings"].size() == 2);
  CHECK(j["verdicts"]["global_equal"] == true);
  CHECK(j["verdicts"]["exploratory"] == false);
  CHECK(j["timings_ms"].contains("zmod(2^2)"));
  CHECK(j["config"]["seed"] == 1);
  for (const auto& ring : j["rings"])
    for (const auto& o : ring["orbit_table"])
      for (const char* key : {"beta", "orbit_size", "stab_order", "index", "extension_exists", "fiber_degrees", "n1",
                              "n2", "n3"})
        CHECK(o.contains(key));
  CHECK(j["rings"][0]["degree_multiset"] == nlohmann::json::parse("[[1,4],[2,5],[3,4],[6,1]]"));

  // Removing a required key is reported.
  auto broken = j;
  broken.erase("verdicts");
  CHECK_FALSE(wittrep::validate_comparison_json(broken).empty());
  broken = j;
  broken["rings"][0]["orbit_table"][0].erase("n2");
  CHECK_FALSE(wittrep::validate_comparison_json(broken).empty());

  const Run csv = cli("--scheme 'gl(2)' --q 2 compare --out csv");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("ring,dimension,count\n", 0) == 0);
  CHECK(csv.out.find("zmod(2^2),6,1\n") != std::string::npos);
}

TEST_CASE("exploratory configurations exit 0") {
  const Run r = cli("--scheme 'sl(2)' --q 2 compare --out json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdicts"]["exploratory"] == true);
  CHECK(wittrep::validate_comparison_json(j).empty());
}

TEST_CASE("exit codes") {
  CHECK(cli("--scheme 'gl(2)' --q 7 --r 2 classes --max-order 1000").code == 3);
  CHECK(cli("--scheme 'sl(2)' --q 3 compare --max-order 500").code == 3);
  CHECK(cli("--scheme 'gl(9)' --q 2 classes").code == 1);
  CHECK(cli("--scheme 'gl(2)' --ring 'zmod(6)' classes").code == 1);
  CHECK(cli("--scheme 'gl(2)' classes").code == 1);
  CHECK(cli("--scheme 'gl(2)' --q 3 --ring 'zmod(2^2)' classes").code == 1);
  CHECK(cli("--scheme 'gl(2)' --q 2 compare --out xml").code != 0);
  CHECK(cli("--q 2 compare").code != 0);
  CHECK(cli("--scheme 'gl(2)' --q 2 degrees --out csv").code == 0);
}

TEST_CASE("degree CSV") {
  const Run r = cli("--scheme 'sl(2)' --ring 'gf(3)' degrees --out csv");
  CHECK(r.code == 0);
  CHECK(r.out == "dimension,count\n1,3\n2,3\n3,1\n");
}

TEST_CASE("cached reruns are byte-identical") {
  const auto dir = fresh_dir("cache");
  const std::string args = "--scheme 'gl(2)' --q 2 --cache-dir " + dir.string() + " compare --out json";
  const Run first = cli(args);
  const Run second = cli(args);
  CHECK(first.code == 0);
  CHECK(second.code == first.code);
  CHECK(second.out == first.out);
  CHECK_FALSE(std::filesystem::is_empty(dir));

  // Same for a failing exit code.
  const std::string bound = "--scheme 'sl(2)' --q 3 --cache-dir " + dir.string() + " classes --max-order 100";
  CHECK(cli(bound).code == 3);
  CHECK(cli(bound).code == 3);

  // A different seed is a different key.
  const Run other = cli("--scheme 'gl(2)' --q 2 --seed 7 --cache-dir " + dir.string() + " compare --out json");
  CHECK(other.code == 0);
  CHECK(nlohmann::json::parse(other.out)["seed"] == 7);
  CHECK(nlohmann::json::parse(other.out)["rings"] == nlohmann::json::parse(first.out)["rings"]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify") {
  const Run r = cli("--scheme 'gl(2)' --ring 'witt2(gf(2))' verify --out json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == true);
  REQUIRE(j["bundles"].size() == 1);
  const auto& b = j["bundles"][0];
  CHECK(b["twist_exponent"] == 1);
  for (const auto& c : b["checks"]) {
    CAPTURE(c["name"].get<std::string>());
    CHECK(c["passed"] == true);
  }

  const Run both = cli("--scheme 'sl(2)' --q 3 verify --out json");
  CHECK(both.code == 0);
  const auto jb = nlohmann::json::parse(both.out);
  REQUIRE(jb["bundles"].size() == 2);
  CHECK(jb["bundles"][0]["twist_exponent"] == 0);
  CHECK(jb["bundles"][1]["twist_exponent"] == 1);

  const Run csv = cli("--scheme 'gl(2)' --ring 'zmod(2^2)' verify --out csv");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("ring,check,passed,asserted\n", 0) == 0);

  const Run text = cli("--scheme 'sl(2)' --q 2 verify --out text");
  CHECK(text.code == 0);
}
