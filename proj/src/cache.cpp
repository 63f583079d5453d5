#include "wittrep/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wittrep/errors.hpp"

namespace wittrep {

namespace fs = std::filesystem;

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {
  if (enabled()) fs::create_directories(dir_);
}

fs::path Cache::path_for(std::string_view kind, const std::string& key) const {
  std::string full(kCacheVersion);
  full += '|';
  full += kind;
  full += '|';
  full += key;
  return dir_ / (std::string(kind) + "-" + hex64(fnv1a(full)) + ".txt");
}

std::optional<std::string> Cache::load_text(std::string_view kind, const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(kind, key), std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  std::getline(in, header);
  if (header != std::string(kCacheVersion) + " " + key) return std::nullopt;
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

void Cache::store_text(std::string_view kind, const std::string& key, const std::string& body) const {
  if (!enabled()) return;
  const fs::path target = path_for(kind, key);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << kCacheVersion << ' ' << key << '\n' << body;
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::optional<MatrixGroup> Cache::load_group(const GroupScheme& scheme, const RingPtr& ring) const {
  const std::string key = scheme.to_string() + "@" + ring->descriptor();
  const auto text = load_text("group", key);
  if (!text) return std::nullopt;
  std::istringstream in(*text);
  std::size_t count = 0, classes = 0;
  if (!(in >> count)) return std::nullopt;
  const int n = scheme.n;
  std::vector<RingMatrix> elements(count, RingMatrix(n, n));
  for (auto& m : elements)
    for (int i = 0; i < n * n; ++i)
      if (!(in >> m(i / n, i % n))) return std::nullopt;
  MatrixGroup group(scheme, ring, n, std::move(elements));
  if (group.size() != count) return std::nullopt;
  ConjugacyClassData data;
  if (!(in >> classes)) return std::nullopt;
  data.class_of.resize(count);
  for (auto& c : data.class_of)
    if (!(in >> c) || c >= classes) return std::nullopt;
  data.representatives.assign(classes, static_cast<ElementId>(count));
  data.sizes.assign(classes, 0);
  for (ElementId g = 0; g < count; ++g) {
    auto& rep = data.representatives[data.class_of[g]];
    rep = std::min(rep, g);
    ++data.sizes[data.class_of[g]];
  }
  for (const auto s : data.sizes) {
    if (s == 0) return std::nullopt;
    data.centralizer_orders.push_back(count / s);
  }
  group.adopt_classes(std::move(data));
  return group;
}

void Cache::store_group(const MatrixGroup& group) const {
  if (!enabled()) return;
  std::ostringstream out;
  const int n = group.dimension();
  out << group.size() << '\n';
  for (ElementId g = 0; g < group.size(); ++g) {
    const RingMatrix m = group.element(g);
    for (int i = 0; i < n * n; ++i) out << (i ? " " : "") << m(i / n, i % n);
    out << '\n';
  }
  const auto& cls = group.classes();
  out << cls.count() << '\n';
  for (ElementId g = 0; g < group.size(); ++g) out << cls.class_of[g] << (g + 1 == group.size() ? '\n' : ' ');
  store_text("group", group.descriptor(), out.str());
}

namespace {

std::string table_key(const MatrixGroup& group, std::uint64_t ell, std::uint64_t seed) {
  return hex64(fnv1a(group.descriptor())) + " " + group.descriptor() + " ell=" + std::to_string(ell) +
         " seed=" + std::to_string(seed);
}

}  // namespace

std::optional<CharacterTable> Cache::load_table(const MatrixGroup& group, std::uint64_t ell,
                                                std::uint64_t seed) const {
  const auto text = load_text("table", table_key(group, ell, seed));
  if (!text) return std::nullopt;
  std::istringstream in(*text);
  CharacterTable t;
  std::size_t k = 0;
  if (!(in >> t.group_order >> t.exponent >> t.ell >> t.zeta >> t.seed >> t.identity_class >> k)) return std::nullopt;
  if (t.group_order != group.size() || t.ell != ell || k != group.classes().count()) return std::nullopt;
  t.class_sizes.resize(k);
  t.inverse_class.resize(k);
  t.degrees.resize(k);
  for (auto& s : t.class_sizes) in >> s;
  for (auto& c : t.inverse_class) in >> c;
  for (auto& d : t.degrees) in >> d;
  t.values.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < t.values.size(); ++i) in >> t.values.data()[i];
  if (!in) return std::nullopt;
  return t;
}

void Cache::store_table(const MatrixGroup& group, const CharacterTable& t) const {
  if (!enabled()) return;
  std::ostringstream out;
  out << t.group_order << ' ' << t.exponent << ' ' << t.ell << ' ' << t.zeta << ' ' << t.seed << ' '
      << t.identity_class << ' ' << t.class_count() << '\n';
  auto line = [&](const auto& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    out << '\n';
  };
  line(t.class_sizes);
  line(t.inverse_class);
  line(t.degrees);
  for (Eigen::Index i = 0; i < t.values.size(); ++i) out << (i ? " " : "") << t.values.data()[i];
  out << '\n';
  store_text("table", table_key(group, t.ell, t.seed), out.str());
}

MatrixGroup cached_group(const Cache& cache, const GroupScheme& scheme, const RingPtr& ring,
                         const EnumerationBounds& bounds) {
  const std::uint64_t order = expected_group_order(scheme, *ring);
  if (order > bounds.max_order) throw BoundExceeded("group order exceeds --max-order", order, bounds.max_order);
  if (auto hit = cache.load_group(scheme, ring)) return std::move(*hit);
  MatrixGroup group = enumerate_points(scheme, ring, bounds);
  cache.store_group(group);
  return group;
}

CharacterTable cached_table(const Cache& cache, const MatrixGroup& group, const DixonOptions& options) {
  const std::uint64_t ell = split_prime(group.exponent(), group.size(), options.max_ell);
  if (auto hit = cache.load_table(group, ell, options.seed)) return std::move(*hit);
  CharacterTable table = dixon_table(group, options);
  cache.store_table(group, table);
  return table;
}

}  // namespace wittrep
