#pragma once

#include <Eigen/SVD>

#include <algorithm>
#include <array>

#include "core.hpp"

namespace gppt {

/// Full decomposition a = u * diag(sigma) * v^H with unitary u (m x m),
/// v (n x n) and sigma of length min(m, n), nonincreasing.
struct SvdResult {
  Matrix u;
  RealVector sigma;
  Matrix v;
};

inline SvdResult svd(const Matrix& a) {
  require_finite(a, "svd");
  const Index m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) {
    return {Matrix::Identity(m, m), RealVector(0), Matrix::Identity(n, n)};
  }
  Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success)
    throw NumericError("svd: did not converge", 0);
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

/// Cutoff below which a singular value counts as zero.
inline double rank_threshold(const RealVector& sigma, Index rows, Index cols,
                             const ToleranceConfig& cfg = {}) {
  const double smax = sigma.size() == 0 ? 0.0 : sigma(0);
  const double rel  = cfg.rank_tol_rel * smax * static_cast<double>(std::max(rows, cols));
  return std::max(rel, cfg.zero_floor);
}

inline Index rank(const Matrix& a, const ToleranceConfig& cfg = {}) {
  if (a.size() == 0) return 0;
  const SvdResult s = svd(a);
  const double cut  = rank_threshold(s.sigma, a.rows(), a.cols(), cfg);
  Index r = 0;
  for (Index i = 0; i < s.sigma.size(); ++i)
    if (s.sigma(i) > cut) ++r;
  return r;
}

/// Moore-Penrose inverse via SVD. pinv of an m x n zero or empty matrix is
/// the n x m zero/empty matrix.
inline Matrix pinv(const Matrix& a, const ToleranceConfig& cfg = {}) {
  const Index m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) return Matrix::Zero(n, m);
  const SvdResult s = svd(a);
  const double cut  = rank_threshold(s.sigma, m, n, cfg);
  RealVector inv = RealVector::Zero(s.sigma.size());
  for (Index i = 0; i < s.sigma.size(); ++i)
    if (s.sigma(i) > cut) inv(i) = 1.0 / s.sigma(i);
  return s.v.leftCols(inv.size()) * inv.asDiagonal() *
         s.u.leftCols(inv.size()).adjoint();
}

/// Boolean outcome plus the residual it was decided on.
struct PredicateVerdict {
  bool holds = false;
  double residual = 0.0;
  double threshold = 0.0;
};

/// N(x) subseteq N(y), decided as ||y (I - x†x)||_F / (1 + ||y||_F) ~ 0.
inline PredicateVerdict null_space_included(const Matrix& x, const Matrix& y,
                                            const ToleranceConfig& cfg = {}) {
  if (x.cols() != y.cols())
    throw DimensionError("null_space_included: operands must have equal column counts");
  PredicateVerdict v;
  v.threshold = cfg.eq_tol;
  if (x.cols() == 0 || y.rows() == 0) {
    v.holds = true;
    return v;
  }
  const Matrix proj = Matrix::Identity(x.cols(), x.cols()) - pinv(x, cfg) * x;
  v.residual = (y * proj).norm() / (1.0 + y.norm());
  v.holds    = v.residual <= v.threshold;
  return v;
}

/// R(x) subseteq R(y), decided as ||(I - y y†) x||_F / (1 + ||x||_F) ~ 0.
inline PredicateVerdict range_included(const Matrix& x, const Matrix& y,
                                       const ToleranceConfig& cfg = {}) {
  if (x.rows() != y.rows())
    throw DimensionError("range_included: operands must have equal row counts");
  PredicateVerdict v;
  v.threshold = cfg.eq_tol;
  if (x.rows() == 0 || x.cols() == 0) {
    v.holds = true;
    return v;
  }
  const Matrix proj = Matrix::Identity(y.rows(), y.rows()) - y * pinv(y, cfg);
  v.residual = (proj * x).norm() / (1.0 + x.norm());
  v.holds    = v.residual <= v.threshold;
  return v;
}

/// Range-Hermitian (EP) test: a a† == a† a.
inline PredicateVerdict is_range_hermitian(const Matrix& a,
                                           const ToleranceConfig& cfg = {}) {
  if (a.rows() != a.cols())
    throw DimensionError("is_range_hermitian: matrix must be square");
  PredicateVerdict v;
  v.threshold = cfg.eq_tol;
  if (a.size() == 0) {
    v.holds = true;
    return v;
  }
  const Matrix ad = pinv(a, cfg);
  v.residual = equality_residual(a * ad, ad * a);
  v.holds    = v.residual <= v.threshold;
  return v;
}

/// Which of the four Penrose equations a candidate inverse satisfies:
///   (1) a g a = a   (2) g a g = g   (3) (a g)^H = a g   (4) (g a)^H = g a.
struct GinverseClass {
  bool satisfies_1 = false;
  bool satisfies_2 = false;
  bool satisfies_3 = false;
  bool satisfies_4 = false;
  std::array<double, 4> residuals{};

  bool satisfies(int k) const {
    switch (k) {
      case 1: return satisfies_1;
      case 2: return satisfies_2;
      case 3: return satisfies_3;
      case 4: return satisfies_4;
      default: return false;
    }
  }
  bool is_moore_penrose() const {
    return satisfies_1 && satisfies_2 && satisfies_3 && satisfies_4;
  }
};

inline GinverseClass classify_ginverse(const Matrix& a, const Matrix& g,
                                       const ToleranceConfig& cfg = {}) {
  if (g.rows() != a.cols() || g.cols() != a.rows())
    throw DimensionError("classify_ginverse: g must be shaped like a^H");
  GinverseClass c;
  const Matrix ag = a * g;
  const Matrix ga = g * a;
  c.residuals[0] = equality_residual(ag * a, a);
  c.residuals[1] = equality_residual(ga * g, g);
  c.residuals[2] = equality_residual(ag.adjoint(), ag);
  c.residuals[3] = equality_residual(ga.adjoint(), ga);
  c.satisfies_1  = c.residuals[0] <= cfg.eq_tol;
  c.satisfies_2  = c.residuals[1] <= cfg.eq_tol;
  c.satisfies_3  = c.residuals[2] <= cfg.eq_tol;
  c.satisfies_4  = c.residuals[3] <= cfg.eq_tol;
  return c;
}

/// Hermitian part S(a) = (a + a^H) / 2.
inline Matrix symmetric_part(const Matrix& a) {
  if (a.rows() != a.cols())
    throw DimensionError("symmetric_part: matrix must be square");
  return (a + a.adjoint()) / 2.0;
}

struct AlmostSkewVerdict {
  bool holds = false;
  Index rank_sym = 0;
};

/// Almost skew-Hermitian: the Hermitian part has rank exactly one.
inline AlmostSkewVerdict is_almost_skew_hermitian(const Matrix& a,
                                                  const ToleranceConfig& cfg = {}) {
  AlmostSkewVerdict v;
  v.rank_sym = rank(symmetric_part(a), cfg);
  v.holds    = v.rank_sym == 1;
  return v;
}

}  // namespace gppt
