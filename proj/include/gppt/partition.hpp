#pragma once

#include "numkern.hpp"

namespace gppt {

/// Square matrix with a leading principal split:
///   m = [ a b ; c d ],  a = m(0..k, 0..k).
/// k may be 0 or n; the corresponding blocks are then empty, and products
/// over the empty dimension contribute zero (Eigen's convention).
struct PartitionedMatrix {
  Matrix m;
  Index k = 0;

  Index n() const { return m.rows(); }
  Index l() const { return m.rows() - k; }

  Matrix a() const { return m.topLeftCorner(k, k); }
  Matrix b() const { return m.topRightCorner(k, l()); }
  Matrix c() const { return m.bottomLeftCorner(l(), k); }
  Matrix d() const { return m.bottomRightCorner(l(), l()); }
};

inline PartitionedMatrix make_partitioned(Matrix m, Index k) {
  if (m.rows() != m.cols())
    throw DimensionError("make_partitioned: matrix must be square");
  if (k < 0 || k > m.rows())
    throw DimensionError("make_partitioned: split must satisfy 0 <= k <= n");
  require_finite(m, "make_partitioned");
  return {std::move(m), k};
}

inline Matrix assemble(const Matrix& a, const Matrix& b, const Matrix& c,
                       const Matrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols())
    throw DimensionError("assemble: inconsistent block shapes");
  Matrix m(a.rows() + c.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols())     = a;
  m.topRightCorner(b.rows(), b.cols())    = b;
  m.bottomLeftCorner(c.rows(), c.cols())  = c;
  m.bottomRightCorner(d.rows(), d.cols()) = d;
  return m;
}

inline PartitionedMatrix make_partitioned(const Matrix& a, const Matrix& b,
                                          const Matrix& c, const Matrix& d) {
  return make_partitioned(assemble(a, b, c, d), a.rows());
}

/// Generalized Schur complements of both corners:
///   f = d - c a† b  (complement of a),  g = a - b d† c  (complement of d).
struct SchurPair {
  Matrix f;
  Matrix g;
};

inline SchurPair schur_complements(const PartitionedMatrix& pm,
                                   const ToleranceConfig& cfg = {}) {
  const Matrix ad = pinv(pm.a(), cfg);
  const Matrix dd = pinv(pm.d(), cfg);
  return {pm.d() - pm.c() * ad * pm.b(), pm.a() - pm.b() * dd * pm.c()};
}

}  // namespace gppt
