#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "partition.hpp"

namespace gppt {

/// Feasibility of { v >= 0 : a_eq v = b_eq, a_ge v >= b_ge }, decided by a
/// dense phase-1 simplex with Bland's rule (anti-cycling). Rows are scaled to
/// unit max coefficient; all-zero rows are dropped (or declared infeasible if
/// their right side is not ~0). Small enough problems only -- everything here
/// is desk scale.
struct LpResult {
  bool feasible = false;
  RealVector v;
  double infeasibility = 0.0;
  int iterations = 0;
};

inline LpResult lp_feasible(const RealMatrix& a_eq, const RealVector& b_eq,
                            const RealMatrix& a_ge, const RealVector& b_ge,
                            double feas_tol = 1e-9) {
  const Index p = a_eq.rows() > 0 ? a_eq.cols() : a_ge.cols();
  if ((a_eq.rows() > 0 && a_eq.cols() != p) || (a_ge.rows() > 0 && a_ge.cols() != p))
    throw DimensionError("lp_feasible: column counts disagree");
  if (a_eq.rows() != b_eq.size() || a_ge.rows() != b_ge.size())
    throw DimensionError("lp_feasible: right-hand side sizes disagree");

  constexpr double kDropTol  = 1e-13;
  constexpr double kPivotTol = 1e-11;
  constexpr double kCostTol  = 1e-10;
  constexpr int kIterCap     = 5000;

  // Collect rows as equalities over [v ; slack], slack coefficient -1 on
  // inequality rows, then orient every right side nonnegative.
  const Index mg = a_ge.rows();
  std::vector<RealVector> rows;
  std::vector<double> rhs;
  Index slack_idx = 0;
  for (Index i = 0; i < a_eq.rows() + mg; ++i) {
    const bool ge = i >= a_eq.rows();
    RealVector row = RealVector::Zero(p + mg);
    double b = 0.0;
    if (!ge) {
      row.head(p) = a_eq.row(i);
      b = b_eq(i);
    } else {
      row.head(p) = a_ge.row(i - a_eq.rows());
      row(p + slack_idx) = -1.0;
      b = b_ge(i - a_eq.rows());
      ++slack_idx;
    }
    double coeff_mag = row.head(p).cwiseAbs().maxCoeff();
    if (coeff_mag <= kDropTol) {
      if (!ge && std::abs(b) > feas_tol)
        return {false, RealVector::Zero(p), std::abs(b), 0};
      if (ge && b > feas_tol)
        return {false, RealVector::Zero(p), b, 0};
      continue;  // vacuous row
    }
    const double sc = std::max(coeff_mag, std::abs(b));
    row /= sc;
    b /= sc;
    if (b < 0) {
      row = -row;
      b = -b;
    }
    rows.push_back(std::move(row));
    rhs.push_back(b);
  }

  const Index mrows = static_cast<Index>(rows.size());
  if (mrows == 0) return {true, RealVector::Zero(p), 0.0, 0};

  const Index nvars = p + mg;          // structural + slack
  const Index total = nvars + mrows;   // + artificials
  RealMatrix t = RealMatrix::Zero(mrows, total + 1);
  std::vector<Index> basis(mrows);
  for (Index i = 0; i < mrows; ++i) {
    t.row(i).head(nvars) = rows[i];
    t(i, nvars + i) = 1.0;
    t(i, total) = rhs[i];
    basis[i] = nvars + i;
  }

  auto artificial_load = [&]() {
    double w = 0.0;
    for (Index i = 0; i < mrows; ++i)
      if (basis[i] >= nvars) w += t(i, total);
    return w;
  };

  int iters = 0;
  while (true) {
    if (++iters > kIterCap)
      throw NumericError("lp_feasible: iteration cap exceeded", iters);
    // Reduced costs of the phase-1 objective for structural/slack columns.
    Index enter = -1;
    for (Index j = 0; j < nvars && enter < 0; ++j) {
      bool basic = false;
      for (Index i = 0; i < mrows; ++i)
        if (basis[i] == j) { basic = true; break; }
      if (basic) continue;
      double d = 0.0;
      for (Index i = 0; i < mrows; ++i)
        if (basis[i] >= nvars) d -= t(i, j);
      if (d < -kCostTol) enter = j;  // Bland: first improving index
    }
    if (enter < 0) break;
    Index leave = -1;
    double best = 0.0;
    for (Index i = 0; i < mrows; ++i) {
      if (t(i, enter) <= kPivotTol) continue;
      const double ratio = t(i, total) / t(i, enter);
      if (leave < 0 || ratio < best - 1e-15 ||
          (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // numerically degenerate; fall through to verdict
    const double piv = t(leave, enter);
    t.row(leave) /= piv;
    for (Index i = 0; i < mrows; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[leave] = enter;
  }

  LpResult res;
  res.iterations = iters;
  res.infeasibility = artificial_load();
  res.feasible = res.infeasibility <= feas_tol * static_cast<double>(mrows);
  res.v = RealVector::Zero(p);
  if (res.feasible)
    for (Index i = 0; i < mrows; ++i)
      if (basis[i] < p) res.v(basis[i]) = std::max(0.0, t(i, total));
  return res;
}

enum class DecisionMethod { exact_enumeration, randomized_falsifier };

/// Membership decision plus the evidence: a violation witness when
/// is_member is false, and the witness's constraint values.
struct ClassVerdict {
  bool is_member = true;
  RealVector witness;     // empty when no violation was produced
  DecisionMethod method = DecisionMethod::exact_enumeration;
  RealVector residuals;   // witness products / slacks
};

/// Orthogonal projector onto the row space: m† m, symmetrized.
inline RealMatrix restricted_row_space_projector(const RealMatrix& m,
                                                 const ToleranceConfig& cfg = {}) {
  if (m.rows() != m.cols())
    throw DimensionError("restricted_row_space_projector: matrix must be square");
  const Matrix mc = to_complex(m);
  RealMatrix pr = (pinv(mc, cfg) * mc).real();
  return (pr + pr.transpose()) / 2.0;
}

namespace detail {

inline void check_classifier_input(const RealMatrix& m, Index size_cap, const char* who) {
  if (m.rows() != m.cols())
    throw DimensionError(std::string(who) + ": matrix must be square");
  if (m.rows() > size_cap)
    throw SizeCapError(std::string(who) + ": size exceeds exact-mode cap of " +
                       std::to_string(size_cap));
  if (!m.allFinite())
    throw NumericError(std::string(who) + ": non-finite entry in input");
}

}  // namespace detail

/// Is every nonzero x in R(mᵀ) sign-consistent with mx somewhere, i.e. does
/// some coordinate have x_i (mx)_i > 0? Decided exactly by enumerating the
/// 2^n sign patterns of x (one linear feasibility problem per pattern and
/// normalization pivot). The x -> -x symmetry halves the pattern count.
inline ClassVerdict is_p_dagger(const RealMatrix& m, const ToleranceConfig& cfg = {},
                                Index size_cap = 8) {
  detail::check_classifier_input(m, size_cap, "is_p_dagger");
  ClassVerdict out;
  out.method = DecisionMethod::exact_enumeration;
  const Index n = m.rows();
  if (n == 0) return out;

  const RealMatrix pr = restricted_row_space_projector(m, cfg);
  const RealMatrix e  = RealMatrix::Identity(n, n) - pr;
  const double scale  = 1.0 + max_abs(m);
  const double slack  = cfg.eq_tol * scale;

  const std::uint64_t npat = 1ULL << (n - 1);
  for (std::uint64_t bits = 0; bits < npat; ++bits) {
    RealVector s(n);
    s(0) = 1.0;
    for (Index i = 1; i < n; ++i) s(i) = (bits >> (i - 1)) & 1 ? -1.0 : 1.0;
    const RealMatrix ds   = s.asDiagonal();
    const RealMatrix a_eq = e * ds;
    const RealVector b_eq = RealVector::Zero(n);
    const RealMatrix prod = ds * m * ds;  // rows: s_i (m x)_i in u coordinates

    for (Index j = 0; j < n; ++j) {
      for (int sg : {+1, -1}) {
        if (static_cast<double>(sg) != s(j)) continue;  // u_j >= 0 forbids -u_j >= 1
        RealMatrix a_ge(n + 1, n);
        RealVector b_ge(n + 1);
        a_ge.topRows(n) = -prod;
        b_ge.head(n).setConstant(-slack);
        a_ge.row(n) = RealMatrix::Identity(n, n).row(j);
        b_ge(n) = 1.0;
        const LpResult lp = lp_feasible(a_eq, b_eq, a_ge, b_ge, cfg.eq_tol);
        if (!lp.feasible) continue;
        RealVector x = ds * lp.v;
        x = pr * x;  // snap onto the row space
        const double mag = x.cwiseAbs().maxCoeff();
        if (mag < 1e-6) continue;
        const RealVector products = x.cwiseProduct(m * x);
        const double ptol = 10.0 * slack * std::max(1.0, mag * mag);
        if ((products.array() > ptol).any()) continue;
        if ((x - pr * x).norm() > 10.0 * cfg.eq_tol * (1.0 + x.norm())) continue;
        out.is_member = false;
        out.witness   = x;
        out.residuals = products;
        return out;
      }
    }
  }
  return out;
}

/// Randomized falsifier: samples directions in R(mᵀ) and descends on the
/// largest product. Can only ever produce a violation witness; returning
/// is_member = true means "no violation found", not a proof of membership.
inline ClassVerdict is_p_dagger_falsifier(const RealMatrix& m,
                                          const ToleranceConfig& cfg = {},
                                          int samples = 10000,
                                          std::uint64_t seed = 0x517cc1b727220a95ULL) {
  if (m.rows() != m.cols())
    throw DimensionError("is_p_dagger_falsifier: matrix must be square");
  ClassVerdict out;
  out.method = DecisionMethod::randomized_falsifier;
  const Index n = m.rows();
  if (n == 0) return out;

  Eigen::JacobiSVD<RealMatrix> dec(m, Eigen::ComputeFullV);
  const double cut = rank_threshold(dec.singularValues(), n, n, cfg);
  Index r = 0;
  for (Index i = 0; i < dec.singularValues().size(); ++i)
    if (dec.singularValues()(i) > cut) ++r;
  if (r == 0) return out;
  const RealMatrix basis = dec.matrixV().leftCols(r);

  const double slack = cfg.eq_tol * (1.0 + max_abs(m));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto fval = [&](const RealVector& x) { return x.cwiseProduct(m * x).maxCoeff(); };

  for (int t = 0; t < samples; ++t) {
    RealVector c(r);
    for (Index i = 0; i < r; ++i) c(i) = gauss(rng);
    if (c.norm() < 1e-12) continue;
    c.normalize();
    RealVector x = basis * c;
    double f = fval(x);
    for (int step = 0; step < 25 && f > slack; ++step) {
      RealVector c2 = c;
      for (Index i = 0; i < r; ++i) c2(i) += 0.2 * gauss(rng);
      if (c2.norm() < 1e-12) continue;
      c2.normalize();
      const RealVector x2 = basis * c2;
      const double f2 = fval(x2);
      if (f2 < f) {
        c = c2;
        x = x2;
        f = f2;
      }
    }
    if (f <= slack) {
      out.is_member = false;
      out.witness   = x;
      out.residuals = x.cwiseProduct(m * x);
      return out;
    }
  }
  return out;
}

/// Does the homogeneous complementarity problem over R(mᵀ) admit only the
/// zero solution? Exact decision by enumerating complementary supports.
inline ClassVerdict is_r_dagger(const RealMatrix& m, const ToleranceConfig& cfg = {},
                                Index size_cap = 8) {
  detail::check_classifier_input(m, size_cap, "is_r_dagger");
  ClassVerdict out;
  out.method = DecisionMethod::exact_enumeration;
  const Index n = m.rows();
  if (n == 0) return out;

  const RealMatrix pr = restricted_row_space_projector(m, cfg);
  const RealMatrix e  = RealMatrix::Identity(n, n) - pr;
  const double scale  = 1.0 + max_abs(m);
  const double slack  = cfg.eq_tol * scale;

  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    std::vector<Index> alpha, comp;
    for (Index i = 0; i < n; ++i)
      ((mask >> i) & 1 ? alpha : comp).push_back(i);
    const Index na = static_cast<Index>(alpha.size());

    RealMatrix a_eq(n + na, na);
    for (Index j = 0; j < na; ++j) a_eq.col(j).head(n) = e.col(alpha[j]);
    for (Index i = 0; i < na; ++i)
      for (Index j = 0; j < na; ++j) a_eq(n + i, j) = m(alpha[i], alpha[j]);
    const RealVector b_eq = RealVector::Zero(n + na);

    const Index nc = static_cast<Index>(comp.size());
    RealMatrix a_ge(nc + 1, na);
    RealVector b_ge(nc + 1);
    for (Index i = 0; i < nc; ++i)
      for (Index j = 0; j < na; ++j) a_ge(i, j) = m(comp[i], alpha[j]);
    b_ge.head(nc).setConstant(-slack);
    a_ge.row(nc).setOnes();
    b_ge(nc) = 1.0;

    const LpResult lp = lp_feasible(a_eq, b_eq, a_ge, b_ge, cfg.eq_tol);
    if (!lp.feasible) continue;
    RealVector x = RealVector::Zero(n);
    for (Index j = 0; j < na; ++j) x(alpha[j]) = lp.v(j);
    const double mag = x.cwiseAbs().maxCoeff();
    if (mag < 1e-6) continue;
    const RealVector y = m * x;
    const double vtol = 10.0 * slack * std::max(1.0, mag);
    if ((x.array() < -vtol).any() || (y.array() < -vtol).any()) continue;
    if (std::abs(x.dot(y)) > vtol * (1.0 + x.norm()) * (1.0 + y.norm())) continue;
    if ((x - pr * x).norm() > 10.0 * cfg.eq_tol * (1.0 + x.norm())) continue;
    out.is_member = false;
    out.witness   = x;
    RealVector res(2 * n);
    res.head(n) = x;
    res.tail(n) = y;
    out.residuals = res;
    return out;
  }
  return out;
}

/// Independent re-check of a claimed P†-violation: x must be materially
/// nonzero, lie in R(mᵀ), and have every product x_i (m x)_i below the
/// (scaled) slack. Witnesses are validated, never compared for identity --
/// any valid violation disproves membership equally well.
inline bool is_valid_p_dagger_violation(const RealMatrix& m, const RealVector& x,
                                        const ToleranceConfig& cfg = {}) {
  if (m.rows() != m.cols() || x.size() != m.rows() || x.size() == 0) return false;
  const double mag = x.cwiseAbs().maxCoeff();
  if (mag < 1e-6) return false;
  const RealMatrix pr = restricted_row_space_projector(m, cfg);
  if ((x - pr * x).norm() > 10.0 * cfg.eq_tol * (1.0 + x.norm())) return false;
  const double slack =
      10.0 * cfg.eq_tol * (1.0 + max_abs(m)) * std::max(1.0, mag * mag);
  return (x.cwiseProduct(m * x).array() <= slack).all();
}

/// Same idea for R†: x nonzero, x >= 0, mx >= 0, x ⊥ mx, x in R(mᵀ).
inline bool is_valid_r_dagger_violation(const RealMatrix& m, const RealVector& x,
                                        const ToleranceConfig& cfg = {}) {
  if (m.rows() != m.cols() || x.size() != m.rows() || x.size() == 0) return false;
  const double mag = x.cwiseAbs().maxCoeff();
  if (mag < 1e-6) return false;
  const double slack = 10.0 * cfg.eq_tol * (1.0 + max_abs(m)) * std::max(1.0, mag);
  const RealVector y = m * x;
  if ((x.array() < -slack).any() || (y.array() < -slack).any()) return false;
  if (std::abs(x.dot(y)) > slack * (1.0 + x.norm()) * (1.0 + y.norm())) return false;
  const RealMatrix pr = restricted_row_space_projector(m, cfg);
  return (x - pr * x).norm() <= 10.0 * cfg.eq_tol * (1.0 + x.norm());
}

/// The transform-compatible companions of a partitioned matrix:
///   m0 = [ a, a a† b ; c a† a, d ],   m1 = [ a, b d† d ; d d† c, d ].
inline PartitionedMatrix build_m0(const PartitionedMatrix& pm,
                                  const ToleranceConfig& cfg = {}) {
  const Matrix ad = pinv(pm.a(), cfg);
  return make_partitioned(pm.a(), pm.a() * ad * pm.b(), pm.c() * ad * pm.a(), pm.d());
}

inline PartitionedMatrix build_m1(const PartitionedMatrix& pm,
                                  const ToleranceConfig& cfg = {}) {
  const Matrix dd = pinv(pm.d(), cfg);
  return make_partitioned(pm.a(), pm.b() * dd * pm.d(), pm.d() * dd * pm.c(), pm.d());
}

/// LCP(q_matrix, q_vector): find x >= 0 with q_matrix x + q_vector >= 0 and
/// x ⊥ (q_matrix x + q_vector).
struct LcpInstance {
  RealMatrix q_matrix;
  RealVector q_vector;
};

/// Enumerate complementary supports; one representative solution per feasible
/// support, duplicates removed. For a homogeneous instance (q = 0) nonzero
/// representatives are sought per support (the zero solution is reported
/// once). restrict_row_space additionally confines x to R(q_matrixᵀ).
inline std::vector<RealVector> solve_lcp_enumerate(const LcpInstance& inst,
                                                   const ToleranceConfig& cfg = {},
                                                   bool restrict_row_space = false,
                                                   Index size_cap = 8) {
  const RealMatrix& q = inst.q_matrix;
  detail::check_classifier_input(q, size_cap, "solve_lcp_enumerate");
  if (inst.q_vector.size() != q.rows())
    throw DimensionError("solve_lcp_enumerate: q_vector size mismatch");
  const Index n = q.rows();
  const double scale = 1.0 + max_abs(q) + (n ? inst.q_vector.cwiseAbs().maxCoeff() : 0.0);
  const double slack = cfg.eq_tol * scale;
  const bool homogeneous =
      n == 0 || inst.q_vector.cwiseAbs().maxCoeff() <= cfg.eq_tol;

  RealMatrix pr, e;
  if (restrict_row_space) {
    pr = restricted_row_space_projector(q, cfg);
    e  = RealMatrix::Identity(n, n) - pr;
  }

  std::vector<RealVector> solutions;
  auto push_unique = [&](const RealVector& x) {
    for (const auto& s : solutions)
      if ((s - x).cwiseAbs().maxCoeff() <= 1e-7 * (1.0 + x.cwiseAbs().maxCoeff()))
        return;
    solutions.push_back(x);
  };

  // Empty support: x = 0, feasible when q_vector >= 0.
  if (n == 0 || (inst.q_vector.array() >= -slack).all())
    push_unique(RealVector::Zero(n));

  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    std::vector<Index> alpha, comp;
    for (Index i = 0; i < n; ++i)
      ((mask >> i) & 1 ? alpha : comp).push_back(i);
    const Index na = static_cast<Index>(alpha.size());
    const Index nc = static_cast<Index>(comp.size());

    Index eq_rows = na + (restrict_row_space ? n : 0);
    RealMatrix a_eq(eq_rows, na);
    RealVector b_eq(eq_rows);
    for (Index i = 0; i < na; ++i) {
      for (Index j = 0; j < na; ++j) a_eq(i, j) = q(alpha[i], alpha[j]);
      b_eq(i) = -inst.q_vector(alpha[i]);
    }
    if (restrict_row_space) {
      for (Index j = 0; j < na; ++j) a_eq.col(j).tail(n) = e.col(alpha[j]);
      b_eq.tail(n).setZero();
    }

    const Index ge_rows = nc + (homogeneous ? 1 : 0);
    RealMatrix a_ge(ge_rows, na);
    RealVector b_ge(ge_rows);
    for (Index i = 0; i < nc; ++i) {
      for (Index j = 0; j < na; ++j) a_ge(i, j) = q(comp[i], alpha[j]);
      b_ge(i) = -inst.q_vector(comp[i]) - slack;
    }
    if (homogeneous) {
      a_ge.row(nc).setOnes();
      b_ge(nc) = 1.0;
    }

    const LpResult lp = lp_feasible(a_eq, b_eq, a_ge, b_ge, cfg.eq_tol);
    if (!lp.feasible) continue;
    RealVector x = RealVector::Zero(n);
    for (Index j = 0; j < na; ++j) x(alpha[j]) = lp.v(j);
    const RealVector y = q * x + inst.q_vector;
    const double vtol = 10.0 * slack * std::max(1.0, x.cwiseAbs().maxCoeff());
    if ((x.array() < -vtol).any() || (y.array() < -vtol).any()) continue;
    if (std::abs(x.dot(y)) > vtol * (1.0 + x.norm()) * (1.0 + y.norm())) continue;
    push_unique(x);
  }
  return solutions;
}

}  // namespace gppt
