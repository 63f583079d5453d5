#include "wittrep/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>

#include "wittrep/errors.hpp"

namespace wittrep {

namespace {

std::uint64_t ipow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Iterates all n x n matrices with entries drawn from `values`.
template <class Fn>
void for_each_matrix(const std::vector<Code>& values, int n, Fn&& fn) {
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  std::vector<std::size_t> digit(cells, 0);
  RingMatrix m(n, n);
  for (std::size_t c = 0; c < cells; ++c) m(c / n, c % n) = values[0];
  while (true) {
    fn(m);
    std::size_t c = cells;
    while (c-- > 0) {
      if (++digit[c] < values.size()) {
        m(c / n, c % n) = values[digit[c]];
        break;
      }
      digit[c] = 0;
      m(c / n, c % n) = values[0];
    }
    if (c == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupScheme

std::string GroupScheme::to_string() const {
  const char* name = family == Family::GL ? "gl" : family == Family::SL ? "sl" : "sp";
  return std::string(name) + "(" + std::to_string(n) + ")";
}

GroupScheme GroupScheme::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')')
    throw UsageError("malformed group scheme '" + std::string(text) + "'");
  std::string name(text.substr(0, open));
  for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto arg = text.substr(open + 1, text.size() - open - 2);
  int n = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
  if (ec != std::errc{} || ptr != arg.data() + arg.size() || n < 1 || n > kMaxMatrixSize)
    throw UsageError("matrix size in '" + std::string(text) + "' must be in [1, 4]");
  GroupScheme s;
  s.n = n;
  if (name == "gl") s.family = Family::GL;
  else if (name == "sl") s.family = Family::SL;
  else if (name == "sp") {
    if (n % 2 != 0) throw UsageError("sp needs an even matrix size");
    s.family = Family::Sp;
  } else {
    throw UsageError("unknown group family '" + name + "'");
  }
  return s;
}

int GroupScheme::lie_dimension() const {
  switch (family) {
    case Family::GL: return n * n;
    case Family::SL: return n * n - 1;
    case Family::Sp: return n * (n + 1) / 2;
  }
  return 0;
}

bool GroupScheme::lie_contains(const GaloisField& field, const RingMatrix& x) const {
  switch (family) {
    case Family::GL:
      return true;
    case Family::SL:
      return mat_trace(field, x) == field.zero();
    case Family::Sp: {
      const RingMatrix j = symplectic_form(field, n);
      const RingMatrix lhs =
          mat_add(field, mat_mul(field, RingMatrix(x.transpose()), j), mat_mul(field, j, x));
      return (lhs.array() == field.zero()).all();
    }
  }
  return false;
}

std::uint64_t residue_group_order(const GroupScheme& scheme, std::uint64_t q) {
  const int n = scheme.n;
  switch (scheme.family) {
    case Family::GL:
    case Family::SL: {
      std::uint64_t order = 1;
      for (int i = 0; i < n; ++i) order *= ipow(q, n) - ipow(q, i);
      return scheme.family == Family::GL ? order : order / (q - 1);
    }
    case Family::Sp: {
      const int m = n / 2;
      std::uint64_t order = ipow(q, static_cast<std::uint64_t>(m) * m);
      for (int i = 1; i <= m; ++i) order *= ipow(q, 2 * i) - 1;
      return order;
    }
  }
  return 0;
}

std::uint64_t expected_group_order(const GroupScheme& scheme, const LocalRing& ring) {
  const std::uint64_t q = ring.residue_field().order();
  return residue_group_order(scheme, q) *
         ipow(q, static_cast<std::uint64_t>(ring.length() - 1) * scheme.lie_dimension());
}

// ---------------------------------------------------------------------------
// MatrixGroup

struct MatrixGroup::Lazy {
  std::once_flag generators_once;
  std::vector<ElementId> generators;
  std::once_flag classes_once;
  ConjugacyClassData classes;
};

MatrixGroup::MatrixGroup(GroupScheme scheme, RingPtr ring, int n, std::vector<RingMatrix> elements)
    : scheme_(scheme), ring_(std::move(ring)), n_(n), lazy_(std::make_unique<Lazy>()) {
  const double bits = n * n * std::log2(static_cast<double>(ring_->size()));
  if (bits > 64.0)
    throw BoundExceeded("matrix keys do not fit in 64 bits", static_cast<std::uint64_t>(bits), 64);
  keys_.reserve(elements.size());
  for (const auto& m : elements) keys_.push_back(matrix_key(m, ring_->size()));
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  entries_.resize(keys_.size() * n_ * n_);
  for (std::size_t g = 0; g < keys_.size(); ++g) {
    const RingMatrix m = matrix_from_key(keys_[g], ring_->size(), n_);
    for (int i = 0; i < n_ * n_; ++i) entries_[g * n_ * n_ + i] = m(i / n_, i % n_);
  }

  const auto id = find(identity_matrix(*ring_, n_));
  if (!id) throw InvariantViolation("identity missing from " + descriptor());
  identity_ = *id;
  inverse_.resize(keys_.size());
  for (ElementId g = 0; g < keys_.size(); ++g)
    inverse_[g] = id_of(mat_inverse(*ring_, element(g)));
}

MatrixGroup::~MatrixGroup() = default;
MatrixGroup::MatrixGroup(MatrixGroup&&) noexcept = default;
MatrixGroup& MatrixGroup::operator=(MatrixGroup&&) noexcept = default;

std::string MatrixGroup::descriptor() const { return scheme_.to_string() + "@" + ring_->descriptor(); }

std::optional<ElementId> MatrixGroup::find(const RingMatrix& m) const {
  const std::uint64_t k = matrix_key(m, ring_->size());
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k) return std::nullopt;
  return static_cast<ElementId>(it - keys_.begin());
}

ElementId MatrixGroup::id_of(const RingMatrix& m) const {
  const auto id = find(m);
  if (!id) throw InvariantViolation("matrix is not an element of " + descriptor());
  return *id;
}

ElementId MatrixGroup::mul(ElementId a, ElementId b) const {
  return id_of(mat_mul(*ring_, element(a), element(b)));
}

std::uint64_t MatrixGroup::element_order(ElementId a) const {
  std::uint64_t order = 1;
  for (ElementId x = a; x != identity_; x = mul(x, a)) ++order;
  return order;
}

std::uint64_t MatrixGroup::exponent() const {
  std::uint64_t e = 1;
  for (ElementId g = 0; g < size(); ++g) e = std::lcm(e, element_order(g));
  return e;
}

std::vector<ElementId> MatrixGroup::closure(const std::vector<ElementId>& gens) const {
  std::vector<char> seen(size(), 0);
  std::vector<ElementId> members{identity_};
  seen[identity_] = 1;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (const ElementId g : gens) {
      const ElementId y = mul(members[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

namespace {

// Greedy random generating set for the subgroup `members` (sorted ids).
std::vector<ElementId> pick_generators(const MatrixGroup& g, const std::vector<ElementId>& members) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::vector<ElementId> gens;
  std::vector<ElementId> span = g.closure(gens);
  while (span.size() < members.size()) {
    ElementId candidate;
    do {
      candidate = members[rng() % members.size()];
    } while (std::binary_search(span.begin(), span.end(), candidate));
    gens.push_back(candidate);
    span = g.closure(gens);
  }
  return gens;
}

}  // namespace

const std::vector<ElementId>& MatrixGroup::generators() const {
  std::call_once(lazy_->generators_once, [this] {
    std::vector<ElementId> all(size());
    std::iota(all.begin(), all.end(), ElementId{0});
    lazy_->generators = pick_generators(*this, all);
  });
  return lazy_->generators;
}

void MatrixGroup::adopt_classes(ConjugacyClassData data) const {
  if (data.class_of.size() != size()) throw InvariantViolation("class partition does not match the group");
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < data.count(); ++c) {
    total += data.sizes[c];
    if (data.sizes[c] * data.centralizer_orders[c] != size())
      throw InvariantViolation("class size times centralizer order is not |G|");
  }
  if (total != size()) throw InvariantViolation("class sizes do not sum to |G|");
  std::call_once(lazy_->classes_once, [&] { lazy_->classes = std::move(data); });
}

const ConjugacyClassData& MatrixGroup::classes() const {
  std::call_once(lazy_->classes_once, [this] {
    const auto& gens = generators();
    ConjugacyClassData data;
    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    data.class_of.assign(size(), kUnset);
    std::vector<ElementId> stack;
    for (ElementId x = 0; x < size(); ++x) {
      if (data.class_of[x] != kUnset) continue;
      const auto cls = static_cast<std::uint32_t>(data.representatives.size());
      data.representatives.push_back(x);
      std::uint64_t count = 1;
      data.class_of[x] = cls;
      stack.assign(1, x);
      while (!stack.empty()) {
        const ElementId y = stack.back();
        stack.pop_back();
        for (const ElementId g : gens) {
          const ElementId z = conjugate(g, y);
          if (data.class_of[z] == kUnset) {
            data.class_of[z] = cls;
            ++count;
            stack.push_back(z);
          }
        }
      }
      data.sizes.push_back(count);
      data.centralizer_orders.push_back(size() / count);
      if (size() % count != 0) throw InvariantViolation("class size does not divide |G|");
    }
    lazy_->classes = std::move(data);
  });
  return lazy_->classes;
}

std::vector<ElementId> MatrixGroup::centralizer(ElementId x) const {
  std::vector<ElementId> out;
  for (ElementId g = 0; g < size(); ++g)
    if (mul(g, x) == mul(x, g)) out.push_back(g);
  return out;
}

MatrixGroup MatrixGroup::subgroup(const std::vector<ElementId>& ids) const {
  std::vector<ElementId> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  std::mt19937_64 rng(sorted.size());
  const std::size_t checks = std::min<std::size_t>(2000, sorted.size() * sorted.size());
  for (std::size_t i = 0; i < checks; ++i) {
    const ElementId a = sorted[rng() % sorted.size()];
    const ElementId b = sorted[rng() % sorted.size()];
    if (!std::binary_search(sorted.begin(), sorted.end(), mul(a, inverse_[b])))
      throw InvariantViolation("element list is not closed under a*b^-1");
  }
  std::vector<RingMatrix> mats;
  mats.reserve(sorted.size());
  for (const ElementId g : sorted) mats.push_back(element(g));
  return MatrixGroup(scheme_, ring_, n_, std::move(mats));
}

std::vector<ElementId> MatrixGroup::derived_subgroup(const std::vector<ElementId>& subgroup_ids) const {
  const auto sgens = pick_generators(*this, subgroup_ids);
  std::vector<ElementId> hgens;
  for (const ElementId a : sgens)
    for (const ElementId b : sgens) {
      const ElementId c = mul(mul(a, b), mul(inverse_[a], inverse_[b]));
      if (c != identity_) hgens.push_back(c);
    }
  std::vector<ElementId> h = closure(hgens);
  // Normal closure in the subgroup: add conjugates until stable.
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < hgens.size() && !grew; ++i)
      for (const ElementId s : sgens) {
        const ElementId c = conjugate(s, hgens[i]);
        if (!std::binary_search(h.begin(), h.end(), c)) {
          hgens.push_back(c);
          h = closure(hgens);
          grew = true;
          break;
        }
      }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Enumeration

RingPtr residue_ring(const LocalRing& ring) {
  return LocalRing::truncated_poly(ring.residue_field(), 1);
}

RingMatrix reduce_matrix(const LocalRing& ring, const RingMatrix& m) {
  return m.unaryExpr([&](Code c) { return ring.reduce(c); });
}

RingMatrix lift_matrix(const LocalRing& ring, const RingMatrix& m) {
  return m.unaryExpr([&](Code c) { return ring.lift(c); });
}

RingMatrix sigma(const GaloisField& field, const RingMatrix& m) {
  return m.unaryExpr([&](Code c) { return field.frobenius(c); });
}

MatrixGroup enumerate_points(const GroupScheme& scheme, const RingPtr& ring,
                             const EnumerationBounds& bounds) {
  const int n = scheme.n;
  const std::uint64_t expected = expected_group_order(scheme, *ring);
  if (expected > bounds.max_order)
    throw BoundExceeded("|" + scheme.to_string() + "(" + ring->descriptor() + ")| too large",
                        expected, bounds.max_order);
  const GaloisField& field = ring->residue_field();
  const std::uint64_t q = field.order();
  const std::uint64_t residue_scan = ipow(q, static_cast<std::uint64_t>(n) * n);
  if (residue_scan > bounds.max_scan)
    throw BoundExceeded("residue matrix scan too large", residue_scan, bounds.max_scan);

  std::vector<Code> field_values(q);
  std::iota(field_values.begin(), field_values.end(), Code{0});
  std::vector<RingMatrix> residue_points;
  for_each_matrix(field_values, n, [&](const RingMatrix& m) {
    if (scheme.contains(field, m)) residue_points.push_back(m);
  });
  if (residue_points.size() != residue_group_order(scheme, q))
    throw InvariantViolation("residue point count disagrees with the order formula");
  if (ring->length() == 1) return MatrixGroup(scheme, ring, n, std::move(residue_points));

  // I + M with M over the maximal ideal.
  std::vector<Code> ideal;
  for (Code a = 0; a < ring->size(); ++a)
    if (ring->in_maximal_ideal(a)) ideal.push_back(a);
  const std::uint64_t kernel_scan = ipow(ideal.size(), static_cast<std::uint64_t>(n) * n);
  if (kernel_scan > bounds.max_scan)
    throw BoundExceeded("kernel matrix scan too large", kernel_scan, bounds.max_scan);
  const RingMatrix id = identity_matrix(*ring, n);
  std::vector<RingMatrix> congruent;  // all I + M
  std::vector<RingMatrix> kernel;     // those on the defining equation
  for_each_matrix(ideal, n, [&](const RingMatrix& m) {
    RingMatrix u = mat_add(*ring, id, m);
    if (scheme.contains(*ring, u)) kernel.push_back(u);
    if (scheme.family == Family::Sp) congruent.push_back(std::move(u));
  });

  std::vector<RingMatrix> points;
  points.reserve(expected);
  for (const RingMatrix& g : residue_points) {
    RingMatrix lift = lift_matrix(*ring, g);
    switch (scheme.family) {
      case Family::GL:
        break;
      case Family::SL: {
        const Code d = ring->inv(mat_det(*ring, lift));
        for (int j = 0; j < n; ++j) lift(0, j) = ring->mul(d, lift(0, j));
        break;
      }
      case Family::Sp: {
        bool fixed = false;
        for (const RingMatrix& u : congruent) {
          const RingMatrix candidate = mat_mul(*ring, lift, u);
          if (scheme.contains(*ring, candidate)) {
            lift = candidate;
            fixed = true;
            break;
          }
        }
        if (!fixed) throw InvariantViolation("no symplectic lift of a residue point");
        break;
      }
    }
    if (!scheme.contains(*ring, lift)) throw InvariantViolation("lift correction failed");
    for (const RingMatrix& u : kernel) points.push_back(mat_mul(*ring, lift, u));
  }
  MatrixGroup group(scheme, ring, n, std::move(points));
  if (group.size() != expected)
    throw InvariantViolation("enumerated " + std::to_string(group.size()) + " points of " +
                             group.descriptor() + ", expected " + std::to_string(expected));
  return group;
}

std::vector<ElementId> reduction_map(const MatrixGroup& group, const MatrixGroup& residue_group) {
  std::vector<ElementId> image(group.size());
  for (ElementId g = 0; g < group.size(); ++g)
    image[g] = residue_group.id_of(reduce_matrix(*group.ring(), group.element(g)));
  return image;
}

// ---------------------------------------------------------------------------
// Kernel and exp

KernelSubgroup kernel_subgroup(const MatrixGroup& group) {
  const LocalRing& ring = *group.ring();
  if (ring.length() < 2) throw UsageError("kernel subgroup needs a ring of length >= 2");
  const int n = group.dimension();
  const RingMatrix id = identity_matrix(ring, n);
  KernelSubgroup k;
  k.index_of.assign(group.size(), -1);
  for (ElementId g = 0; g < group.size(); ++g) {
    const RingMatrix d = mat_sub(ring, group.element(g), id);
    bool top = true;
    for (int i = 0; i < n * n && top; ++i) top = ring.in_top_layer(d(i / n, i % n));
    if (!top) continue;
    const RingMatrix x = d.unaryExpr([&](Code c) { return ring.top_extract(c); });
    if (!group.scheme().lie_contains(ring.residue_field(), x))
      throw InvariantViolation("kernel element outside the Lie algebra");
    k.index_of[g] = static_cast<std::int32_t>(k.elements.size());
    k.elements.push_back(g);
    k.lie.push_back(x);
  }
  const std::uint64_t expected =
      ipow(ring.residue_field().order(), static_cast<std::uint64_t>(group.scheme().lie_dimension()));
  if (k.size() != expected) throw InvariantViolation("kernel subgroup has the wrong order");
  return k;
}

RingMatrix exp_map(const MatrixGroup& group, const RingMatrix& x) {
  const LocalRing& ring = *group.ring();
  if (ring.length() != 2) throw UsageError("exp is defined for length-two rings only");
  if (!group.scheme().lie_contains(ring.residue_field(), x))
    throw UsageError("argument of exp is not in the Lie algebra of " + group.scheme().to_string());
  const RingMatrix u = mat_add(ring, identity_matrix(ring, group.dimension()),
                               x.unaryExpr([&](Code c) { return ring.top_embed(c); }));
  if (!group.find(u)) throw InvariantViolation("exp(X) is not a group element");
  return u;
}

RingMatrix log_map(const MatrixGroup& group, const RingMatrix& u) {
  const LocalRing& ring = *group.ring();
  if (ring.length() != 2) throw UsageError("log is defined for length-two rings only");
  const RingMatrix d = mat_sub(ring, u, identity_matrix(ring, group.dimension()));
  for (int i = 0; i < d.size(); ++i)
    if (!ring.in_top_layer(d(i / d.cols(), i % d.cols())))
      throw UsageError("argument of log is not in the congruence kernel");
  return d.unaryExpr([&](Code c) { return ring.top_extract(c); });
}

int twist_exponent(const LocalRing& ring) { return ring.mixed_characteristic() ? 1 : 0; }

}  // namespace wittrep
