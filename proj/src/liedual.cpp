#include "wittrep/liedual.hpp"

#include <algorithm>
#include <numeric>

#include "wittrep/errors.hpp"

namespace wittrep {

namespace {

RingMatrix unit_matrix(const GaloisField& k, int n, int i, int j) {
  RingMatrix e = RingMatrix::Constant(n, n, k.zero());
  e(i, j) = k.one();
  return e;
}

// Union-find with path halving; the root of each set is its smallest member.
class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::uint64_t find(std::uint64_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint64_t a, std::uint64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

private:
  std::vector<std::uint64_t> parent_;
};

// Matrix of Ad*(g) on value vectors: new[b] = sum_c m[b][c] * old[c].
std::vector<Code> coadjoint_matrix(const LieAlgebra& lie, const RingMatrix& g) {
  const GaloisField& k = lie.field();
  const int d = lie.dimension();
  const RingMatrix g_inv = mat_inverse(k, g);
  std::vector<Code> m(static_cast<std::size_t>(d) * d);
  for (int b = 0; b < d; ++b) {
    const auto coords = lie.coordinates(mat_mul(k, mat_mul(k, g_inv, lie.basis()[b]), g));
    std::copy(coords.begin(), coords.end(), m.begin() + static_cast<std::ptrdiff_t>(b) * d);
  }
  return m;
}

DualFunctional apply_linear(const GaloisField& k, const std::vector<Code>& m, const DualFunctional& beta) {
  const std::size_t d = beta.values.size();
  DualFunctional out{std::vector<Code>(d, k.zero())};
  for (std::size_t b = 0; b < d; ++b) {
    Code s = k.zero();
    for (std::size_t c = 0; c < d; ++c) s = k.add(s, k.mul(m[b * d + c], beta.values[c]));
    out.values[b] = s;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// LieAlgebra

LieAlgebra::LieAlgebra(GroupScheme scheme, GaloisField field)
    : scheme_(scheme), field_(std::move(field)) {
  const int n = scheme_.n;
  const GaloisField& k = field_;
  switch (scheme_.family) {
    case Family::GL:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) basis_.push_back(unit_matrix(k, n, i, j));
      break;
    case Family::SL:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == n - 1 && j == n - 1) continue;
          RingMatrix e = unit_matrix(k, n, i, j);
          if (i == j) e(n - 1, n - 1) = k.neg(k.one());
          basis_.push_back(e);
        }
      break;
    case Family::Sp: {
      const RingMatrix j_inv = mat_inverse(k, symplectic_form(k, n));
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          RingMatrix s = unit_matrix(k, n, i, j);
          s(j, i) = k.one();
          basis_.push_back(mat_mul(k, j_inv, s));
        }
      break;
    }
  }
  if (dimension() != scheme_.lie_dimension()) throw InvariantViolation("Lie basis has the wrong size");
}

std::vector<Code> LieAlgebra::coordinates(const RingMatrix& x) const {
  if (!contains(x)) throw UsageError("matrix is not in the Lie algebra of " + scheme_.to_string());
  const int n = scheme_.n;
  std::vector<Code> c;
  c.reserve(basis_.size());
  switch (scheme_.family) {
    case Family::GL:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c.push_back(x(i, j));
      break;
    case Family::SL:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != n - 1 || j != n - 1) c.push_back(x(i, j));
      break;
    case Family::Sp: {
      const RingMatrix s = mat_mul(field_, symplectic_form(field_, n), x);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) c.push_back(s(i, j));
      break;
    }
  }
  return c;
}

RingMatrix LieAlgebra::from_coordinates(const std::vector<Code>& coords) const {
  if (coords.size() != basis_.size()) throw UsageError("coordinate vector has the wrong length");
  const int n = scheme_.n;
  RingMatrix x = RingMatrix::Constant(n, n, field_.zero());
  for (std::size_t b = 0; b < basis_.size(); ++b)
    x = mat_add(field_, x, mat_scale(field_, coords[b], basis_[b]));
  return x;
}

RingMatrix LieAlgebra::bracket(const RingMatrix& x, const RingMatrix& y) const {
  return mat_sub(field_, mat_mul(field_, x, y), mat_mul(field_, y, x));
}

// ---------------------------------------------------------------------------
// Functionals

Code pairing(const LieAlgebra& lie, const DualFunctional& beta, const RingMatrix& x) {
  const GaloisField& k = lie.field();
  const auto c = lie.coordinates(x);
  Code s = k.zero();
  for (std::size_t b = 0; b < c.size(); ++b) s = k.add(s, k.mul(c[b], beta.values[b]));
  return s;
}

DualFunctional from_trace_matrix(const LieAlgebra& lie, const RingMatrix& b) {
  if (lie.scheme().family != Family::GL) throw UsageError("trace coordinates are only used for gl_n");
  const int n = lie.scheme().n;
  DualFunctional beta;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) beta.values.push_back(b(j, i));  // Tr(B E_ij) = B_ji
  return beta;
}

RingMatrix trace_matrix(const LieAlgebra& lie, const DualFunctional& beta) {
  if (lie.scheme().family != Family::GL) throw UsageError("trace coordinates are only used for gl_n");
  const int n = lie.scheme().n;
  RingMatrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(j, i) = beta.values[i * n + j];
  return b;
}

DualFunctional coadjoint(const LieAlgebra& lie, const RingMatrix& g, const DualFunctional& beta) {
  return apply_linear(lie.field(), coadjoint_matrix(lie, g), beta);
}

DualFunctional sigma_star(const LieAlgebra& lie, const DualFunctional& beta) {
  DualFunctional out = beta;
  for (auto& v : out.values) v = lie.field().frobenius(v);
  return out;
}

DualFunctional sigma_star_inverse(const LieAlgebra& lie, const DualFunctional& beta) {
  DualFunctional out = beta;
  for (std::uint32_t i = 1; i < lie.field().degree(); ++i) out = sigma_star(lie, out);
  return out;
}

std::uint64_t functional_count(const LieAlgebra& lie) {
  std::uint64_t count = 1;
  for (int i = 0; i < lie.dimension(); ++i) count *= lie.field().order();
  return count;
}

std::uint64_t functional_index(const LieAlgebra& lie, const DualFunctional& beta) {
  std::uint64_t idx = 0;
  for (const Code v : beta.values) idx = idx * lie.field().order() + v;
  return idx;
}

DualFunctional functional_at(const LieAlgebra& lie, std::uint64_t index) {
  DualFunctional beta{std::vector<Code>(lie.dimension())};
  const std::uint64_t q = lie.field().order();
  for (int b = lie.dimension(); b-- > 0; index /= q) beta.values[b] = static_cast<Code>(index % q);
  return beta;
}

OrbitDecomposition coadjoint_orbits(const LieAlgebra& lie, const MatrixGroup& residue_group,
                                    std::uint64_t max_functionals) {
  const std::uint64_t total = functional_count(lie);
  if (total > max_functionals) throw BoundExceeded("dual Lie algebra too large", total, max_functionals);
  std::vector<std::vector<Code>> actions;
  for (const ElementId g : residue_group.generators())
    actions.push_back(coadjoint_matrix(lie, residue_group.element(g)));

  DisjointSets sets(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    const DualFunctional beta = functional_at(lie, i);
    for (const auto& a : actions) sets.unite(i, functional_index(lie, apply_linear(lie.field(), a, beta)));
  }

  OrbitDecomposition out;
  out.orbit_of.resize(total);
  std::vector<std::uint32_t> position(total, ~std::uint32_t{0});
  for (std::uint64_t i = 0; i < total; ++i) {
    const std::uint64_t root = sets.find(i);
    if (root == i) {
      position[i] = static_cast<std::uint32_t>(out.representatives.size());
      out.representatives.push_back(i);
      out.sizes.push_back(0);
    }
    out.orbit_of[i] = position[root];
    ++out.sizes[position[root]];
  }
  for (const std::uint64_t size : out.sizes) {
    if (residue_group.size() % size != 0) throw InvariantViolation("orbit size does not divide |G|");
    out.stabilizer_orders.push_back(residue_group.size() / size);
  }
  return out;
}

std::vector<ElementId> functional_centralizer(const LieAlgebra& lie, const MatrixGroup& residue_group,
                                              const DualFunctional& beta) {
  std::vector<ElementId> out;
  for (ElementId g = 0; g < residue_group.size(); ++g)
    if (coadjoint(lie, residue_group.element(g), beta) == beta) out.push_back(g);
  return out;
}

std::uint32_t psi_beta(const LieAlgebra& lie, const DualFunctional& beta, const RingMatrix& x) {
  return lie.field().trace(pairing(lie, beta, x));
}

std::uint32_t psi_beta(const LieAlgebra& lie, const KernelSubgroup& kernel, const DualFunctional& beta,
                       ElementId u) {
  if (!kernel.contains(u)) throw UsageError("psi_beta evaluated outside the kernel subgroup");
  return psi_beta(lie, beta, kernel.lie[kernel.index_of[u]]);
}

std::vector<ElementId> character_stabilizer(const MatrixGroup& group, const KernelSubgroup& kernel,
                                            const LieAlgebra& lie, const DualFunctional& beta) {
  std::vector<std::uint32_t> values(kernel.size());
  for (std::size_t i = 0; i < kernel.size(); ++i) values[i] = psi_beta(lie, beta, kernel.lie[i]);
  std::vector<ElementId> out;
  for (ElementId g = 0; g < group.size(); ++g) {
    const ElementId g_inv = group.inv(g);
    bool fixed = true;
    for (std::size_t i = 0; i < kernel.size() && fixed; ++i) {
      const ElementId c = group.conjugate(g_inv, kernel.elements[i]);
      fixed = values[kernel.index_of[c]] == values[i];
    }
    if (fixed) out.push_back(g);
  }
  return out;
}

std::vector<ElementId> predicted_stabilizer(const MatrixGroup& group, const MatrixGroup& residue_group,
                                            const std::vector<ElementId>& reduction,
                                            const LieAlgebra& lie, const DualFunctional& beta) {
  const DualFunctional target =
      group.ring()->mixed_characteristic() ? sigma_star_inverse(lie, beta) : beta;
  std::vector<char> in_centralizer(residue_group.size(), 0);
  for (const ElementId c : functional_centralizer(lie, residue_group, target)) in_centralizer[c] = 1;
  std::vector<ElementId> out;
  for (ElementId g = 0; g < group.size(); ++g)
    if (in_centralizer[reduction[g]]) out.push_back(g);
  return out;
}

// ---------------------------------------------------------------------------
// Good and very good primes

bool is_good_prime(const RootSystem& h, std::uint64_t p) {
  switch (h.type) {
    case RootType::A:
      return true;
    case RootType::B:
    case RootType::C:
    case RootType::D:
      return p != 2;
    case RootType::G2:
    case RootType::F4:
    case RootType::E6:
    case RootType::E7:
      return p > 3;
    case RootType::E8:
      return p > 5;
  }
  return false;
}

bool is_very_good_prime(const RootSystem& h, std::uint64_t p) {
  if (!is_good_prime(h, p)) return false;
  if (h.type == RootType::A) return (h.rank + 1) % p != 0;
  return true;
}

RootSystem parse_root_system(const std::string& text) {
  if (text.size() < 2) throw UsageError("unknown root system '" + text + "'");
  int rank = 0;
  try {
    rank = std::stoi(text.substr(1));
  } catch (const std::exception&) {
    throw UsageError("unknown root system '" + text + "'");
  }
  switch (text[0]) {
    case 'A':
      if (rank >= 1) return {RootType::A, rank};
      break;
    case 'B':
      if (rank >= 2) return {RootType::B, rank};
      break;
    case 'C':
      if (rank >= 2) return {RootType::C, rank};
      break;
    case 'D':
      if (rank >= 4) return {RootType::D, rank};
      break;
    case 'G':
      if (rank == 2) return {RootType::G2, 2};
      break;
    case 'F':
      if (rank == 4) return {RootType::F4, 4};
      break;
    case 'E':
      if (rank == 6) return {RootType::E6, 6};
      if (rank == 7) return {RootType::E7, 7};
      if (rank == 8) return {RootType::E8, 8};
      break;
    default:
      break;
  }
  throw UsageError("unknown root system '" + text + "'");
}

bool comparison_hypotheses_hold(const GroupScheme& scheme, std::uint64_t p) {
  switch (scheme.family) {
    case Family::GL:
      return true;
    case Family::SL:
      return scheme.n == 1 || is_very_good_prime({RootType::A, scheme.n - 1}, p);
    case Family::Sp:
      return scheme.n == 2 ? is_very_good_prime({RootType::A, 1}, p)
                           : is_very_good_prime({RootType::C, scheme.n / 2}, p);
  }
  return false;
}

}  // namespace wittrep
