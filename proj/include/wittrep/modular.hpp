#pragma once

// Dense linear algebra over a prime field F_l (l < 2^31), on top of Eigen
// storage. Eigen's arithmetic operators are not used on these matrices since
// they would not reduce; the free functions below do all arithmetic mod l.

#include <Eigen/Core>

#include <cstdint>
#include <utility>
#include <vector>

#include "wittrep/errors.hpp"

namespace wittrep {

using ModMatrix = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic>;
using ModVector = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, 1>;

class PrimeField {
public:
  explicit PrimeField(std::uint64_t modulus) : l_(modulus) {
    if (modulus < 2 || modulus >= (std::uint64_t{1} << 31))
      throw UsageError("prime field modulus out of range");
  }

  std::uint64_t modulus() const noexcept { return l_; }
  std::uint64_t reduce(std::int64_t a) const {
    const auto l = static_cast<std::int64_t>(l_);
    return static_cast<std::uint64_t>(((a % l) + l) % l);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % l_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + l_ - b) % l_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % l_; }
  std::uint64_t neg(std::uint64_t a) const { return (l_ - a) % l_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % l_;
    a %= l_;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (a % l_ == 0) throw UsageError("inverse of zero mod l");
    return pow(a, l_ - 2);
  }

private:
  std::uint64_t l_;
};

/// Row-reduces `a` in place to reduced row echelon form; returns pivot columns.
template <class Derived>
std::vector<Eigen::Index> rref_in_place(const PrimeField& f, Eigen::MatrixBase<Derived>& a) {
  using RowMajor = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor m = a;
  const std::uint64_t l = f.modulus();
  const Eigen::Index cols = m.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < m.rows(); ++col) {
    Eigen::Index piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) m.row(row).swap(m.row(piv));
    std::uint64_t* prow = &m(row, 0);
    const std::uint64_t s = f.inv(prow[col]);
    for (Eigen::Index j = col; j < cols; ++j) prow[j] = prow[j] * s % l;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      std::uint64_t* target = &m(r, 0);
      if (r == row || target[col] == 0) continue;
      const std::uint64_t c = l - target[col];
      // Entries left of col are zero in the pivot row.
      for (Eigen::Index j = col; j < cols; ++j) target[j] = (target[j] + c * prow[j]) % l;
    }
    pivots.push_back(col);
    ++row;
  }
  a = m;
  return pivots;
}

/// Basis of the right kernel {v : a v = 0}, one vector per column.
template <class Derived>
ModMatrix nullspace(const PrimeField& f, const Eigen::MatrixBase<Derived>& a) {
  ModMatrix r = a;
  const auto pivots = rref_in_place(f, r);
  const Eigen::Index n = a.cols();
  std::vector<char> is_pivot(n, 0);
  for (const auto c : pivots) is_pivot[c] = 1;
  ModMatrix basis(n, n - static_cast<Eigen::Index>(pivots.size()));
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    ModVector v = ModVector::Zero(n);
    v(free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v(pivots[i]) = f.neg(r(static_cast<Eigen::Index>(i), free));
    basis.col(out++) = v;
  }
  return basis;
}

template <class Derived>
Eigen::Index rank(const PrimeField& f, const Eigen::MatrixBase<Derived>& a) {
  ModMatrix r = a;
  return static_cast<Eigen::Index>(rref_in_place(f, r).size());
}

/// c = a * b mod l.
template <class DerivedA, class DerivedB>
ModMatrix mod_product(const PrimeField& f, const Eigen::MatrixBase<DerivedA>& a,
                      const Eigen::MatrixBase<DerivedB>& b) {
  ModMatrix c = ModMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const std::uint64_t aik = a(i, k);
      if (aik == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) c(i, j) = (c(i, j) + aik * b(k, j)) % f.modulus();
    }
  return c;
}

/// Characteristic polynomial det(xI - a), coefficients lowest degree first,
/// via reduction to upper Hessenberg form.
template <class Derived>
std::vector<std::uint64_t> characteristic_polynomial(const PrimeField& f, const Eigen::MatrixBase<Derived>& a) {
  ModMatrix h = a;
  const Eigen::Index n = h.rows();
  for (Eigen::Index j = 0; j + 2 < n; ++j) {
    Eigen::Index piv = j + 1;
    while (piv < n && h(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      h.row(piv).swap(h.row(j + 1));
      h.col(piv).swap(h.col(j + 1));
    }
    const std::uint64_t inv = f.inv(h(j + 1, j));
    for (Eigen::Index r = j + 2; r < n; ++r) {
      if (h(r, j) == 0) continue;
      const std::uint64_t u = f.mul(h(r, j), inv);
      for (Eigen::Index c = 0; c < n; ++c) h(r, c) = f.sub(h(r, c), f.mul(u, h(j + 1, c)));
      for (Eigen::Index c = 0; c < n; ++c) h(c, j + 1) = f.add(h(c, j + 1), f.mul(u, h(c, r)));
    }
  }
  std::vector<std::vector<std::uint64_t>> p(n + 1);
  p[0] = {1};
  for (Eigen::Index m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> next(m + 1, 0);
    const auto& prev = p[m - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], prev[i]);
      next[i] = f.sub(next[i], f.mul(h(m - 1, m - 1), prev[i]));
    }
    std::uint64_t t = 1;
    for (Eigen::Index i = m - 1; i >= 1; --i) {
      t = f.mul(t, h(i, i - 1));
      if (t == 0) break;
      const std::uint64_t coeff = f.mul(t, h(i - 1, m - 1));
      for (std::size_t k = 0; k < p[i - 1].size(); ++k) next[k] = f.sub(next[k], f.mul(coeff, p[i - 1][k]));
    }
    p[m] = std::move(next);
  }
  return p[n];
}

/// Distinct roots in F_l, by evaluation at every point.
inline std::vector<std::uint64_t> roots_by_scan(const PrimeField& f, const std::vector<std::uint64_t>& poly) {
  std::vector<std::uint64_t> roots;
  for (std::uint64_t x = 0; x < f.modulus(); ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = poly.size(); i-- > 0;) v = f.add(f.mul(v, x), poly[i]);
    if (v == 0) roots.push_back(x);
  }
  return roots;
}

}  // namespace wittrep
