// wittrep: class counts, degree multisets, ring comparisons and invariant
// verification for matrix groups over finite local rings.
//
// Exit codes: 0 ok, 1 usage, 2 verdict failure, 3 bound refusal,
// 4 internal invariant violation.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <thread>

#include "wittrep/cache.hpp"
#include "wittrep/clifford.hpp"
#include "wittrep/errors.hpp"
#include "wittrep/report.hpp"
#include "wittrep/verify.hpp"

using namespace wittrep;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerdict = 2;
constexpr int kBound = 3;
constexpr int kInvariant = 4;

struct Outcome {
  int code = kOk;
  std::string output;
  std::string failure;
};

AnalysisOptions analysis_options(const RunConfig& cfg, const Cache& cache) {
  AnalysisOptions o;
  o.bounds.max_order = cfg.max_order;
  o.max_functionals = cfg.max_functionals;
  o.dixon.seed = cfg.seed;
  o.dixon.max_classes = cfg.max_classes;
  o.dixon.workers = cfg.workers;
  o.cache = cache.enabled() ? &cache : nullptr;
  return o;
}

// --ring wins; otherwise truncpoly(gf(q), r).
RingPtr resolve_ring(RunConfig& cfg, const std::string& ring_text) {
  RingPtr ring;
  if (!ring_text.empty()) {
    ring = parse_ring(ring_text);
  } else if (cfg.q != 0) {
    const auto [equal, mixed] = length_two_rings(cfg.q);
    ring = LocalRing::truncated_poly(equal->residue_field(), cfg.r == 0 ? 2 : cfg.r);
  } else {
    throw UsageError("give --ring, or --q (with optional --r)");
  }
  if (cfg.q != 0 && cfg.q != ring->residue_field().order())
    throw UsageError("--q " + std::to_string(cfg.q) + " does not match the residue field of " + ring->descriptor());
  if (cfg.r != 0 && cfg.r != ring->length())
    throw UsageError("--r " + std::to_string(cfg.r) + " does not match the length of " + ring->descriptor());
  cfg.q = ring->residue_field().order();
  cfg.r = ring->length();
  cfg.rings = {ring->descriptor()};
  return ring;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

Outcome run_classes(RunConfig& cfg, const std::string& ring_text, const Cache& cache) {
  const GroupScheme scheme = GroupScheme::parse(cfg.scheme);
  const RingPtr ring = resolve_ring(cfg, ring_text);
  EnumerationBounds bounds;
  bounds.max_order = cfg.max_order;
  const MatrixGroup group = cached_group(cache, scheme, ring, bounds);
  Outcome out;
  if (cfg.out == "json") {
    out.output = dump(classes_json(group, cfg));
  } else if (cfg.out == "csv") {
    std::ostringstream s;
    const auto& cls = group.classes();
    s << "class,size,centralizer_order\n";
    for (std::size_t c = 0; c < cls.count(); ++c) s << c << ',' << cls.sizes[c] << ',' << cls.centralizer_orders[c] << '\n';
    out.output = s.str();
  } else {
    out.output = classes_text(group);
  }
  return out;
}

Outcome run_degrees(RunConfig& cfg, const std::string& ring_text, const Cache& cache) {
  const GroupScheme scheme = GroupScheme::parse(cfg.scheme);
  const RingPtr ring = resolve_ring(cfg, ring_text);
  const AnalysisOptions options = analysis_options(cfg, cache);
  const MatrixGroup group = cached_group(cache, scheme, ring, options.bounds);
  const CharacterTable table = cached_table(cache, group, options.dixon);
  const TableChecks checks = check_table(table, group.classes().count());
  const DegreeMultiset m = degree_multiset(table);
  Outcome out;
  if (!checks.all()) {
    out.code = kInvariant;
    out.failure = "character table failed its sanity checks";
  }
  if (cfg.out == "csv") {
    out.output = multiset_csv(m);
  } else if (cfg.out == "json") {
    out.output = dump({{"group", group.descriptor()},
                       {"order", group.size()},
                       {"num_classes", group.classes().count()},
                       {"ell", table.ell},
                       {"degree_multiset", multiset_json(m)},
                       {"config", cfg.to_json()}});
  } else {
    std::ostringstream s;
    s << group.descriptor() << ": order " << group.size() << ", " << table.character_count() << " characters\n";
    for (const auto& [d, c] : m) s << "  " << d << "  x" << c << '\n';
    out.output = s.str();
  }
  return out;
}

Outcome run_compare(RunConfig& cfg, const Cache& cache) {
  if (cfg.q == 0) throw UsageError("compare needs --q");
  const GroupScheme scheme = GroupScheme::parse(cfg.scheme);
  const auto [equal, mixed] = length_two_rings(cfg.q);
  cfg.r = 2;
  cfg.rings = {equal->descriptor(), mixed->descriptor()};
  const ComparisonReport report = compare_rings(scheme, cfg.q, analysis_options(cfg, cache));
  Outcome out;
  if (!report.verdicts.passed()) {
    out.code = kVerdict;
    out.failure = report.verdicts.first_failure();
  }
  if (cfg.out == "json") {
    out.output = dump(comparison_json(report, cfg));
  } else if (cfg.out == "csv") {
    std::ostringstream s;
    s << "ring,dimension,count\n";
    for (const auto& r : report.rings)
      for (const auto& [d, c] : r.oracle) s << r.ring_descriptor << ',' << d << ',' << c << '\n';
    out.output = s.str();
  } else {
    out.output = comparison_text(report);
  }
  return out;
}

Outcome run_verify(RunConfig& cfg, const std::string& ring_text, const Cache& cache) {
  const GroupScheme scheme = GroupScheme::parse(cfg.scheme);
  std::vector<RingPtr> rings;
  if (ring_text.empty() && cfg.q != 0 && cfg.r == 0) {
    const auto [equal, mixed] = length_two_rings(cfg.q);
    rings = {equal, mixed};
    cfg.r = 2;
    cfg.rings = {equal->descriptor(), mixed->descriptor()};
  } else {
    rings = {resolve_ring(cfg, ring_text)};
  }
  VerifyOptions options;
  options.analysis = analysis_options(cfg, cache);
  options.sample_seed = cfg.seed;
  Outcome out;
  nlohmann::json bundles = nlohmann::json::array();
  std::string text;
  for (const RingPtr& ring : rings) {
    const VerificationBundle b = run_verification(scheme, ring, options);
    if (!b.passed() && out.code == kOk) {
      out.code = kVerdict;
      out.failure = b.ring + ": " + b.first_failure();
    }
    bundles.push_back(verification_json(b));
    text += verification_text(b);
  }
  if (cfg.out == "text") {
    out.output = text;
  } else if (cfg.out == "csv") {
    std::ostringstream s;
    s << "ring,check,passed,asserted\n";
    for (const auto& b : bundles)
      for (const auto& c : b["checks"])
        s << b["ring"].get<std::string>() << ',' << c["name"].get<std::string>() << ',' << c["passed"] << ','
          << c["asserted"] << '\n';
    out.output = s.str();
  } else {
    out.output = dump({{"bundles", bundles}, {"passed", out.code == kOk}, {"config", cfg.to_json()}});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representation counting over finite local rings of length two"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  std::string ring_text;

  app.add_option("--scheme", cfg.scheme, "group scheme: gl(n), sl(n), sp(n)")->required();
  app.add_option("--ring", ring_text, "ring descriptor, e.g. zmod(2^3), truncpoly(gf(2),r=3), witt2(gf(4))");
  app.add_option("--q", cfg.q, "residue field order");
  app.add_option("--r", cfg.r, "ring length (with --q and no --ring: truncated polynomials)");
  app.add_option("--seed", cfg.seed, "seed for the randomized eigenspace splitting")->capture_default_str();
  app.add_option("--out", cfg.out, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--cache-dir", cfg.cache_dir, "directory for cached groups, tables and reports");
  app.add_option("--max-order", cfg.max_order, "refuse groups larger than this")->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads")->capture_default_str();

  auto* classes = app.add_subcommand("classes", "conjugacy classes of G(R)")->fallthrough();
  auto* degrees = app.add_subcommand("degrees", "character degree multiset of G(R)")->fallthrough();
  auto* compare = app.add_subcommand("compare", "compare G(F_q[t]/t^2) with G of the mixed-characteristic ring")
                      ->fallthrough();
  auto* verify = app.add_subcommand("verify", "run the invariant suites for one configuration")->fallthrough();

  CLI11_PARSE(app, argc, argv);

  for (auto* sub : {classes, degrees, compare, verify})
    if (sub->parsed()) cfg.command = sub->get_name();

  try {
    const Cache cache(cfg.cache_dir);
    // Resolve ring text now so the cache key sees the canonical descriptor.
    if (!ring_text.empty()) ring_text = parse_ring(ring_text)->descriptor();
    cfg.scheme = GroupScheme::parse(cfg.scheme).to_string();
    const std::string key = cfg.command + " " + ring_text + " " + cfg.canonical();
    if (const auto hit = cache.load_text("report", key)) {
      const auto newline = hit->find('\n');
      const int code = std::stoi(hit->substr(0, newline));
      std::cout << hit->substr(newline + 1);
      return code;
    }

    Outcome out;
    if (cfg.command == "classes") out = run_classes(cfg, ring_text, cache);
    else if (cfg.command == "degrees") out = run_degrees(cfg, ring_text, cache);
    else if (cfg.command == "compare") out = run_compare(cfg, cache);
    else out = run_verify(cfg, ring_text, cache);

    std::cout << out.output;
    if (!out.failure.empty()) std::cerr << "failed verdict: " << out.failure << '\n';
    cache.store_text("report", key, std::to_string(out.code) + "\n" + out.output);
    return out.code;
  } catch (const BoundExceeded& e) {
    std::cerr << "refused: " << e.what() << "; raise --max-order or choose a smaller configuration\n";
    return kBound;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const SplittingStalled& e) {
    std::cerr << "invariant violation: " << e.what() << " (retry with another --seed)\n";
    return kInvariant;
  }
}
