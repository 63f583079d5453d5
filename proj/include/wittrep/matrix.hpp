#pragma once

// Small square matrices (n <= 4) whose entries are element codes of a field
// or local ring. Storage is a fixed-capacity Eigen matrix, so nothing here
// allocates. The arithmetic helpers are templated on the coefficient ring:
// anything exposing zero/one/add/sub/mul/neg/inv/is_unit over Code works
// (GaloisField and LocalRing both do).

#include <Eigen/Core>

#include <cstdint>
#include <numeric>

#include "wittrep/errors.hpp"
#include "wittrep/ring.hpp"

namespace wittrep {

constexpr int kMaxMatrixSize = 4;

using RingMatrix =
    Eigen::Matrix<Code, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor, kMaxMatrixSize, kMaxMatrixSize>;

template <class Ring>
RingMatrix identity_matrix(const Ring& ring, int n) {
  RingMatrix m = RingMatrix::Constant(n, n, ring.zero());
  for (int i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

template <class Ring>
RingMatrix mat_mul(const Ring& ring, const RingMatrix& a, const RingMatrix& b) {
  const int n = static_cast<int>(a.rows());
  RingMatrix c(n, b.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Code s = ring.zero();
      for (int k = 0; k < a.cols(); ++k) s = ring.add(s, ring.mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return c;
}

template <class Ring>
RingMatrix mat_add(const Ring& ring, const RingMatrix& a, const RingMatrix& b) {
  return a.binaryExpr(b, [&](Code x, Code y) { return ring.add(x, y); });
}

template <class Ring>
RingMatrix mat_sub(const Ring& ring, const RingMatrix& a, const RingMatrix& b) {
  return a.binaryExpr(b, [&](Code x, Code y) { return ring.sub(x, y); });
}

template <class Ring>
RingMatrix mat_scale(const Ring& ring, Code s, const RingMatrix& a) {
  return a.unaryExpr([&](Code x) { return ring.mul(s, x); });
}

template <class Ring>
Code mat_trace(const Ring& ring, const RingMatrix& a) {
  Code s = ring.zero();
  for (int i = 0; i < a.rows(); ++i) s = ring.add(s, a(i, i));
  return s;
}

/// Determinant by cofactor expansion along the first row (n <= 4).
template <class Ring>
Code mat_det(const Ring& ring, const RingMatrix& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 1) return a(0, 0);
  if (n == 2) return ring.sub(ring.mul(a(0, 0), a(1, 1)), ring.mul(a(0, 1), a(1, 0)));
  Code det = ring.zero();
  for (int j = 0; j < n; ++j) {
    RingMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r)
      for (int c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    const Code term = ring.mul(a(0, j), mat_det(ring, minor));
    det = (j % 2 == 0) ? ring.add(det, term) : ring.sub(det, term);
  }
  return det;
}

/// Inverse via the adjugate; throws UsageError when det is not a unit.
template <class Ring>
RingMatrix mat_inverse(const Ring& ring, const RingMatrix& a) {
  const int n = static_cast<int>(a.rows());
  const Code det = mat_det(ring, a);
  if (!ring.is_unit(det)) throw UsageError("matrix is not invertible");
  const Code det_inv = ring.inv(det);
  if (n == 1) return RingMatrix::Constant(1, 1, det_inv);
  RingMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RingMatrix minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c)
          if (c != i) minor(rr, cc++) = a(r, c);
        ++rr;
      }
      const Code cof = mat_det(ring, minor);
      inv(i, j) = ring.mul(det_inv, (i + j) % 2 == 0 ? cof : ring.neg(cof));
    }
  return inv;
}

/// Fixed antidiagonal symplectic form [[0, K], [-K, 0]] with K the
/// antidiagonal identity of size n/2.
template <class Ring>
RingMatrix symplectic_form(const Ring& ring, int n) {
  RingMatrix j = RingMatrix::Constant(n, n, ring.zero());
  const int m = n / 2;
  for (int i = 0; i < m; ++i) {
    j(i, n - 1 - i) = ring.one();
    j(n - 1 - i, i) = ring.neg(ring.one());
  }
  return j;
}

/// Mixed-radix key with the (0,0) entry most significant, so that key order
/// is lexicographic order on row-major coordinate tuples.
inline std::uint64_t matrix_key(const RingMatrix& m, std::uint64_t radix) {
  std::uint64_t key = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) key = key * radix + m(i, j);
  return key;
}

inline RingMatrix matrix_from_key(std::uint64_t key, std::uint64_t radix, int n) {
  RingMatrix m(n, n);
  for (int idx = n * n; idx-- > 0;) {
    m(idx / n, idx % n) = static_cast<Code>(key % radix);
    key /= radix;
  }
  return m;
}

}  // namespace wittrep
