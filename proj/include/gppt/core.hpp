#pragma once

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gppt {

using Complex    = std::complex<double>;
using Matrix     = Eigen::MatrixXcd;
using Vector     = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index      = Eigen::Index;

/// Tolerance policy shared by every operation.
///
/// rank_tol_rel: a singular value sigma counts as zero when
///   sigma <= rank_tol_rel * sigma_max * max(rows, cols).
/// eq_tol: two matrices are equal when max|X - Y| <= eq_tol * (1 + max(|X|, |Y|)).
/// zero_floor: optional absolute singular-value floor (0 disables). Derived
///   quantities such as Schur complements of an O(1) instance can be exact
///   zeros polluted by ~1e-17 roundoff; a purely relative cutoff would call
///   them full rank. Callers that know the ambient scale set this to
///   eq_tol * (1 + max|M|) so such blocks classify as rank zero.
struct ToleranceConfig {
  double rank_tol_rel = 64.0 * std::numeric_limits<double>::epsilon();
  double eq_tol       = 1e-9;
  double zero_floor   = 0.0;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
  int iterations = 0;
  explicit NumericError(const std::string& what, int iters = 0)
      : std::runtime_error(what), iterations(iters) {}
};

/// Thrown when a transform's validity conditions fail and the caller did not
/// force the computation. Carries the names of the failed conditions.
struct ConditionViolation : std::runtime_error {
  std::vector<std::string> failed;
  explicit ConditionViolation(const std::string& what, std::vector<std::string> conds = {})
      : std::runtime_error(what), failed(std::move(conds)) {}
};

struct SizeCapError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FieldError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double max_abs(const RealMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline void require_finite(const Matrix& a, const char* who) {
  if (!a.allFinite())
    throw NumericError(std::string(who) + ": non-finite entry in input");
}

/// max|X - Y| / (1 + max(|X|, |Y|)); the relative scale used for equality.
inline double equality_residual(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionError("equality_residual: shape mismatch");
  const double scale = 1.0 + std::max(max_abs(x), max_abs(y));
  return x.size() == 0 ? 0.0 : (x - y).cwiseAbs().maxCoeff() / scale;
}

inline bool matrices_equal(const Matrix& x, const Matrix& y,
                           const ToleranceConfig& cfg = {}) {
  return equality_residual(x, y) <= cfg.eq_tol;
}

inline bool is_real(const Matrix& a, double tol = 0.0) {
  if (a.size() == 0) return true;
  return a.imag().cwiseAbs().maxCoeff() <= tol * (1.0 + max_abs(a));
}

inline RealMatrix real_part(const Matrix& a) { return a.real(); }

inline Matrix to_complex(const RealMatrix& a) {
  return a.cast<Complex>();
}

}  // namespace gppt
