#include "wittrep/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "wittrep/errors.hpp"

namespace wittrep {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

// For each class k, the class of x^-1 z_k for every x. Column-major by k.
std::vector<std::uint16_t> quotient_classes(const MatrixGroup& group, unsigned workers) {
  const auto& cls = group.classes();
  const std::size_t n = group.size();
  const std::size_t k = cls.count();
  std::vector<std::uint16_t> out(n * k);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      const ElementId z = cls.representatives[c];
      for (ElementId x = 0; x < n; ++x)
        out[c * n + x] = static_cast<std::uint16_t>(cls.class_of[group.mul(group.inv(x), z)]);
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(k)));
  if (workers == 1) {
    work(0, k);
  } else {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (k + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back(work, std::min(k, w * chunk), std::min(k, (w + 1) * chunk));
  }
  return out;
}

// Column-reduces a basis so that it carries an identity block on its pivot rows.
struct Subspace {
  ModMatrix basis;  // k x d
  std::vector<Eigen::Index> pivot_rows;
};

Subspace normalize(const PrimeField& f, const ModMatrix& basis) {
  ModMatrix t = basis.transpose();
  auto pivots = rref_in_place(f, t);
  if (static_cast<Eigen::Index>(pivots.size()) != basis.cols())
    throw InvariantViolation("eigenspace basis is not linearly independent");
  return {t.transpose(), std::move(pivots)};
}

}  // namespace

std::vector<std::uint32_t> class_algebra_constants(const MatrixGroup& group) {
  const auto& cls = group.classes();
  const std::size_t k = cls.count();
  if (k > 128) throw BoundExceeded("too many classes for a full structure-constant tensor", k, 128);
  std::vector<std::uint32_t> a(k * k * k, 0);
  for (std::size_t kk = 0; kk < k; ++kk) {
    const ElementId z = cls.representatives[kk];
    for (ElementId x = 0; x < group.size(); ++x) {
      const std::size_t i = cls.class_of[x];
      const std::size_t j = cls.class_of[group.mul(group.inv(x), z)];
      ++a[(i * k + j) * k + kk];
    }
  }
  return a;
}

std::uint64_t split_prime(std::uint64_t exponent, std::uint64_t group_order, std::uint64_t max_ell) {
  for (std::uint64_t ell = exponent + 1; ell <= max_ell; ell += exponent) {
    if (ell * ell <= 4 * group_order) continue;
    if (is_prime(ell)) return ell;
  }
  throw InvariantViolation("no split prime l = 1 mod " + std::to_string(exponent) + " below " +
                           std::to_string(max_ell));
}

std::uint64_t primitive_root(std::uint64_t ell) {
  const PrimeField f(ell);
  const auto factors = prime_factors(ell - 1);
  for (std::uint64_t g = 2; g < ell; ++g) {
    if (std::all_of(factors.begin(), factors.end(),
                    [&](std::uint64_t r) { return f.pow(g, (ell - 1) / r) != 1; }))
      return g;
  }
  return 1;  // ell == 2
}

CharacterTable dixon_table(const MatrixGroup& group, const DixonOptions& options) {
  const auto& cls = group.classes();
  const std::size_t k = cls.count();
  if (k > options.max_classes) throw BoundExceeded("too many conjugacy classes", k, options.max_classes);
  const std::uint64_t order = group.size();

  CharacterTable table;
  table.group_order = order;
  table.exponent = group.exponent();
  table.ell = split_prime(table.exponent, order, options.max_ell);
  table.zeta = PrimeField(table.ell).pow(primitive_root(table.ell), (table.ell - 1) / table.exponent);
  table.seed = options.seed;
  table.class_sizes = cls.sizes;
  table.identity_class = cls.class_of[group.identity()];
  table.inverse_class.resize(k);
  for (std::size_t c = 0; c < k; ++c) table.inverse_class[c] = cls.class_of[group.inv(cls.representatives[c])];

  const PrimeField f(table.ell);
  const auto quotients = quotient_classes(group, options.workers);
  std::mt19937_64 rng(options.seed);

  std::vector<Subspace> pending{normalize(f, ModMatrix::Identity(k, k))};
  std::vector<ModVector> done;
  int stalled = 0;
  while (!pending.empty()) {
    // M_c[j][kk] = sum_i c_i a_ijk for a random c.
    std::vector<std::uint64_t> c(k);
    for (auto& v : c) v = rng() % table.ell;
    ModMatrix m = ModMatrix::Zero(k, k);
    for (std::size_t kk = 0; kk < k; ++kk) {
      const std::uint16_t* q = quotients.data() + kk * order;
      for (ElementId x = 0; x < order; ++x) {
        auto& cell = m(q[x], static_cast<Eigen::Index>(kk));
        cell = f.add(cell, c[cls.class_of[x]]);
      }
    }

    bool progress = false;
    std::vector<Subspace> next;
    for (auto& space : pending) {
      const Eigen::Index d = space.basis.cols();
      const ModMatrix image = mod_product(f, m, space.basis);
      ModMatrix restricted(d, d);
      for (Eigen::Index i = 0; i < d; ++i) restricted.row(i) = image.row(space.pivot_rows[i]);
      const auto eigenvalues = roots_by_scan(f, characteristic_polynomial(f, restricted));
      if (eigenvalues.size() <= 1) {
        next.push_back(std::move(space));
        continue;
      }
      progress = true;
      Eigen::Index total = 0;
      for (const std::uint64_t lambda : eigenvalues) {
        ModMatrix shifted = restricted;
        for (Eigen::Index i = 0; i < d; ++i) shifted(i, i) = f.sub(shifted(i, i), lambda);
        const ModMatrix kernel = nullspace(f, shifted);
        total += kernel.cols();
        Subspace piece = normalize(f, mod_product(f, space.basis, kernel));
        if (piece.basis.cols() == 1) done.push_back(piece.basis.col(0));
        else next.push_back(std::move(piece));
      }
      if (total != d) throw InvariantViolation("class matrix is not diagonalisable on an eigenspace");
    }
    pending = std::move(next);
    // A single-space start splits on the first round unless G is trivial.
    if (pending.size() == 1 && pending.front().basis.cols() == 1 && done.empty()) {
      done.push_back(pending.front().basis.col(0));
      pending.clear();
    }
    stalled = progress ? 0 : stalled + 1;
    if (stalled > options.max_stalled_rounds)
      throw SplittingStalled("eigenspace splitting stalled for " + group.descriptor() + " with seed " +
                             std::to_string(options.seed));
  }
  if (done.size() != k) throw InvariantViolation("found " + std::to_string(done.size()) + " characters for " +
                                                 std::to_string(k) + " classes");

  const std::uint64_t root = isqrt(order);
  struct Row {
    std::uint64_t degree;
    std::vector<std::uint64_t> values;
  };
  std::vector<Row> rows;
  for (const ModVector& w : done) {
    // Central character omega_c = |K_c| chi(g_c) / chi(1), normalised at the identity.
    const std::uint64_t scale = f.inv(w(table.identity_class));
    std::vector<std::uint64_t> omega(k);
    for (std::size_t c = 0; c < k; ++c) omega[c] = f.mul(w(static_cast<Eigen::Index>(c)), scale);
    // chi(1)^2 = |G| / sum_c omega_c omega_{c*} / |K_c|
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < k; ++c)
      s = f.add(s, f.mul(f.mul(omega[c], omega[table.inverse_class[c]]), f.inv(cls.sizes[c] % table.ell)));
    const std::uint64_t d2 = f.mul(order % table.ell, f.inv(s));
    std::uint64_t degree = 0;
    for (std::uint64_t d = 1; d <= root; ++d)
      if ((d * d) % table.ell == d2) {
        degree = d;
        break;
      }
    if (degree == 0) throw InvariantViolation("character degree does not lift to an integer");
    Row row{degree, std::vector<std::uint64_t>(k)};
    for (std::size_t c = 0; c < k; ++c)
      row.values[c] = f.mul(f.mul(omega[c], degree % table.ell), f.inv(cls.sizes[c] % table.ell));
    rows.push_back(std::move(row));
  }
  // Canonical order, independent of the splitting randomness.
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.degree, a.values) < std::tie(b.degree, b.values);
  });
  table.values.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t r = 0; r < k; ++r) {
    table.degrees.push_back(rows[r].degree);
    for (std::size_t c = 0; c < k; ++c)
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r].values[c];
  }
  return table;
}

DegreeMultiset degree_multiset(const CharacterTable& table) {
  DegreeMultiset out;
  for (const std::uint64_t d : table.degrees) ++out[d];
  return out;
}

TableChecks check_table(const CharacterTable& table, std::size_t class_count) {
  TableChecks checks;
  const PrimeField f(table.ell);
  const std::size_t k = table.class_count();
  const auto n = static_cast<Eigen::Index>(table.character_count());
  checks.count_matches_classes = table.character_count() == class_count && k == class_count;

  std::uint64_t squares = 0;
  checks.degrees_divide_order = true;
  for (const std::uint64_t d : table.degrees) {
    squares += d * d;
    checks.degrees_divide_order = checks.degrees_divide_order && table.group_order % d == 0;
  }
  checks.sum_of_squares = squares == table.group_order;

  const std::uint64_t order = table.group_order % table.ell;
  checks.row_orthogonality = true;
  for (Eigen::Index a = 0; a < n && checks.row_orthogonality; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      std::uint64_t s = 0;
      for (std::size_t c = 0; c < k; ++c)
        s = f.add(s, f.mul(table.class_sizes[c] % table.ell,
                           f.mul(table.values(a, static_cast<Eigen::Index>(c)),
                                 table.values(b, table.inverse_class[c]))));
      if (s != (a == b ? order : 0)) {
        checks.row_orthogonality = false;
        break;
      }
    }

  checks.column_orthogonality = true;
  for (std::size_t c = 0; c < k && checks.column_orthogonality; ++c)
    for (std::size_t e = 0; e < k; ++e) {
      std::uint64_t s = 0;
      for (Eigen::Index a = 0; a < n; ++a)
        s = f.add(s, f.mul(table.values(a, static_cast<Eigen::Index>(c)),
                           table.values(a, table.inverse_class[e])));
      const std::uint64_t centralizer = (table.group_order / table.class_sizes[c]) % table.ell;
      if (s != (c == e ? centralizer : 0)) {
        checks.column_orthogonality = false;
        break;
      }
    }
  return checks;
}

std::vector<std::uint64_t> restriction_multiplicities(const CharacterTable& table, const MatrixGroup& group,
                                                      const KernelSubgroup& kernel, const LieAlgebra& lie,
                                                      const DualFunctional& beta) {
  const PrimeField f(table.ell);
  const std::uint64_t p = lie.field().characteristic();
  if (table.exponent % p != 0) throw InvariantViolation("group exponent is prime to p");
  const std::uint64_t zeta_p = f.pow(table.zeta, table.exponent / p);
  // zeta_p^(-psi(u)) for each u in N
  std::vector<std::uint64_t> weight(kernel.size());
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const std::uint32_t e = psi_beta(lie, beta, kernel.lie[i]);
    weight[i] = f.pow(zeta_p, (p - e) % p);
  }
  const auto& class_of = group.classes().class_of;
  const std::uint64_t n_inv = f.inv(kernel.size() % table.ell);
  const std::uint64_t bound = isqrt(table.group_order);
  std::vector<std::uint64_t> out(table.character_count());
  for (std::size_t chi = 0; chi < out.size(); ++chi) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < kernel.size(); ++i)
      s = f.add(s, f.mul(table.values(static_cast<Eigen::Index>(chi), class_of[kernel.elements[i]]), weight[i]));
    const std::uint64_t m = f.mul(s, n_inv);
    if (m > bound) throw InvariantViolation("restriction multiplicity does not lift to [0, sqrt|G|]");
    out[chi] = m;
  }
  return out;
}

std::uint64_t restriction_multiplicity(const CharacterTable& table, const MatrixGroup& group,
                                       const KernelSubgroup& kernel, const LieAlgebra& lie,
                                       const DualFunctional& beta, std::size_t chi) {
  return restriction_multiplicities(table, group, kernel, lie, beta).at(chi);
}

}  // namespace wittrep
