#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "transforms.hpp"

namespace gppt {

enum class Field { real, complex_ };

inline std::string format_field(Field f) {
  return f == Field::real ? "real" : "complex";
}

inline Field parse_field(const std::string& s) {
  if (s == "real") return Field::real;
  if (s == "complex" || s == "complex_") return Field::complex_;
  throw ParseError("unknown field: " + s);
}

/// Structural constraints a generated partitioned matrix must satisfy.
/// Naming: null_X_in_Y is N(X) ⊆ N(Y); range_X_in_Y is R(X) ⊆ R(Y); the
/// t/star suffixes mean conjugate transpose; F and G are the two Schur
/// complements d - c a† b and a - b d† c.
enum class Constraint {
  null_A_in_C,
  null_Astar_in_Bstar,
  null_D_in_B,
  null_Dstar_in_Cstar,
  range_B_in_A,
  range_Ct_in_At,
  range_C_in_F,
  range_Bt_in_Ft,
  range_C_in_D,
  range_Bt_in_Dt,
  range_B_in_G,
  range_Ct_in_Gt,
  A_ep,
  D_ep,
  BplusCstar_in_rangeA,
  CplusBstar_in_rangeD,
};

inline const std::vector<std::pair<Constraint, std::string>>& constraint_names() {
  static const std::vector<std::pair<Constraint, std::string>> table = {
      {Constraint::null_A_in_C, "null_A_in_C"},
      {Constraint::null_Astar_in_Bstar, "null_Astar_in_Bstar"},
      {Constraint::null_D_in_B, "null_D_in_B"},
      {Constraint::null_Dstar_in_Cstar, "null_Dstar_in_Cstar"},
      {Constraint::range_B_in_A, "range_B_in_A"},
      {Constraint::range_Ct_in_At, "range_Ct_in_At"},
      {Constraint::range_C_in_F, "range_C_in_F"},
      {Constraint::range_Bt_in_Ft, "range_Bt_in_Ft"},
      {Constraint::range_C_in_D, "range_C_in_D"},
      {Constraint::range_Bt_in_Dt, "range_Bt_in_Dt"},
      {Constraint::range_B_in_G, "range_B_in_G"},
      {Constraint::range_Ct_in_Gt, "range_Ct_in_Gt"},
      {Constraint::A_ep, "A_ep"},
      {Constraint::D_ep, "D_ep"},
      {Constraint::BplusCstar_in_rangeA, "BplusCstar_in_rangeA"},
      {Constraint::CplusBstar_in_rangeD, "CplusBstar_in_rangeD"},
  };
  return table;
}

inline std::string format_constraint(Constraint c) {
  for (const auto& [k, v] : constraint_names())
    if (k == c) return v;
  return "?";
}

inline Constraint parse_constraint(const std::string& s) {
  for (const auto& [k, v] : constraint_names())
    if (v == s) return k;
  throw ParseError("unknown constraint: " + s);
}

/// Recipe for one random partitioned instance. rank_a / rank_d are
/// construction targets for the diagonal blocks (-1 picks a random nonzero
/// rank); a nonzero diag_shift adds shift·I to each diagonal block after
/// construction, which usually raises the realized rank to full — useful for
/// producing sign-definite instances. max_effective_cond rejects instances
/// whose assembled matrix or diagonal blocks are too ill-conditioned on their
/// numerical range (sigma_max over smallest kept sigma).
struct GeneratorSpec {
  Index n = 4;
  Index k = 2;
  Field field = Field::real;
  std::set<Constraint> constraints;
  Index rank_a = -1;
  Index rank_d = -1;
  std::uint64_t seed = 0;
  double diag_shift = 0.0;
  double max_effective_cond = 1e3;
  int retry_cap = 100;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t attempt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (attempt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Matrix gaussian(std::mt19937_64& rng, Index rows, Index cols, Field f) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      if (f == Field::real) {
        m(i, j) = g(rng);
      } else {
        const double re = g(rng), im = g(rng);
        m(i, j) = Complex(re, im) / std::sqrt(2.0);
      }
    }
  return m;
}

inline Matrix orthonormal_cols(std::mt19937_64& rng, Index rows, Index cols, Field f) {
  if (rows == 0 || cols == 0) return Matrix(rows, cols);
  const Matrix g = gaussian(rng, rows, std::min(rows, cols), f);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  return q.leftCols(cols);
}

/// Orthonormal columns spanning R(x), extended with random directions up to
/// target_cols total columns (QR keeps the leading span intact).
inline Matrix extended_range_basis(std::mt19937_64& rng, const Matrix& x,
                                   Index target_cols, Field f,
                                   const ToleranceConfig& cfg) {
  const Index rows = x.rows();
  if (rows == 0 || target_cols == 0) return Matrix(rows, target_cols);
  const SvdResult s = svd(x);
  const double cut = rank_threshold(s.sigma, x.rows(), x.cols(), cfg);
  Index r = 0;
  for (Index i = 0; i < s.sigma.size(); ++i)
    if (s.sigma(i) > cut) ++r;
  Matrix seed_cols(rows, r + target_cols);
  seed_cols.leftCols(r) = s.u.leftCols(r);
  seed_cols.rightCols(target_cols) = gaussian(rng, rows, target_cols, f);
  Eigen::HouseholderQR<Matrix> qr(seed_cols);
  Matrix q = qr.householderQ();
  return q.leftCols(target_cols);
}

/// Random square block of the requested rank. EP blocks are u k u^H with
/// orthonormal u and an invertible, well-conditioned (but non-Hermitian)
/// core, so the range and co-range coincide without the block being
/// Hermitian. Non-EP blocks are plain Gaussian rank factorizations.
inline Matrix square_block(std::mt19937_64& rng, Index dim, Index rank, bool ep,
                           Field f, double shift) {
  rank = std::clamp<Index>(rank, 0, dim);
  Matrix m = Matrix::Zero(dim, dim);
  if (rank > 0) {
    if (ep) {
      const Matrix u = orthonormal_cols(rng, dim, rank, f);
      const Matrix l = orthonormal_cols(rng, rank, rank, f);
      const Matrix r = orthonormal_cols(rng, rank, rank, f);
      std::uniform_real_distribution<double> sg(0.5, 2.0);
      Vector s(rank);
      for (Index i = 0; i < rank; ++i) s(i) = sg(rng);
      m = u * (l * s.asDiagonal() * r.adjoint()) * u.adjoint();
    } else {
      m = gaussian(rng, dim, rank, f) * gaussian(rng, rank, dim, f);
    }
  }
  if (shift != 0.0) m += shift * Matrix::Identity(dim, dim);
  return m;
}

/// Rank-profiled matrix l sigma r^H whose range contains R(left_seed) and
/// whose co-range contains R(right_seed) (empty seeds mean unconstrained).
inline Matrix spanning_block(std::mt19937_64& rng, Index rows, Index cols,
                             const Matrix& left_seed, const Matrix& right_seed,
                             Field f, const ToleranceConfig& cfg) {
  const auto rank_of = [&](const Matrix& x) {
    return x.size() == 0 ? Index(0) : rank(x, cfg);
  };
  const Index need = std::max(rank_of(left_seed), rank_of(right_seed));
  const Index maxr = std::min(rows, cols);
  if (maxr == 0) return Matrix::Zero(rows, cols);
  std::uniform_int_distribution<Index> rr(std::max<Index>(need, 1), maxr);
  const Index r = rr(rng);
  const Matrix l = left_seed.size() > 0
                       ? extended_range_basis(rng, left_seed, r, f, cfg)
                       : orthonormal_cols(rng, rows, r, f);
  const Matrix rt = right_seed.size() > 0
                        ? extended_range_basis(rng, right_seed, r, f, cfg)
                        : orthonormal_cols(rng, cols, r, f);
  std::uniform_real_distribution<double> sg(0.5, 2.0);
  Vector s(r);
  for (Index i = 0; i < r; ++i) s(i) = sg(rng);
  return l * s.asDiagonal() * rt.adjoint();
}

inline double effective_cond(const Matrix& m, const ToleranceConfig& cfg) {
  if (m.size() == 0) return 1.0;
  const SvdResult s = svd(m);
  const double cut = rank_threshold(s.sigma, m.rows(), m.cols(), cfg);
  double smin = 0.0, smax = 0.0;
  for (Index i = 0; i < s.sigma.size(); ++i)
    if (s.sigma(i) > cut) {
      smax = std::max(smax, s.sigma(i));
      smin = smin == 0.0 ? s.sigma(i) : std::min(smin, s.sigma(i));
    }
  return smin == 0.0 ? 1.0 : smax / smin;
}

}  // namespace detail

/// Post-generation verification: does pm satisfy the constraint at checker
/// scale? (Absolute floor keyed to the ambient matrix, so derived blocks
/// that are exact zeros up to roundoff classify as rank zero.)
inline bool constraint_satisfied(const PartitionedMatrix& pm, Constraint c,
                                 const ToleranceConfig& cfg) {
  ToleranceConfig cc = cfg;
  cc.zero_floor = std::max(cfg.zero_floor, cfg.eq_tol * (1.0 + max_abs(pm.m)));
  const auto schur_f = [&]() { return schur_complements(pm, cc).f; };
  const auto schur_g = [&]() { return schur_complements(pm, cc).g; };
  switch (c) {
    case Constraint::null_A_in_C: return null_space_included(pm.a(), pm.c(), cc).holds;
    case Constraint::null_Astar_in_Bstar:
      return null_space_included(pm.a().adjoint(), pm.b().adjoint(), cc).holds;
    case Constraint::null_D_in_B: return null_space_included(pm.d(), pm.b(), cc).holds;
    case Constraint::null_Dstar_in_Cstar:
      return null_space_included(pm.d().adjoint(), pm.c().adjoint(), cc).holds;
    case Constraint::range_B_in_A: return range_included(pm.b(), pm.a(), cc).holds;
    case Constraint::range_Ct_in_At:
      return range_included(pm.c().adjoint(), pm.a().adjoint(), cc).holds;
    case Constraint::range_C_in_F: return range_included(pm.c(), schur_f(), cc).holds;
    case Constraint::range_Bt_in_Ft:
      return range_included(pm.b().adjoint(), schur_f().adjoint(), cc).holds;
    case Constraint::range_C_in_D: return range_included(pm.c(), pm.d(), cc).holds;
    case Constraint::range_Bt_in_Dt:
      return range_included(pm.b().adjoint(), pm.d().adjoint(), cc).holds;
    case Constraint::range_B_in_G: return range_included(pm.b(), schur_g(), cc).holds;
    case Constraint::range_Ct_in_Gt:
      return range_included(pm.c().adjoint(), schur_g().adjoint(), cc).holds;
    case Constraint::A_ep: return is_range_hermitian(pm.a(), cc).holds;
    case Constraint::D_ep: return is_range_hermitian(pm.d(), cc).holds;
    case Constraint::BplusCstar_in_rangeA:
      return range_included(pm.b() + pm.c().adjoint(), pm.a(), cc).holds;
    case Constraint::CplusBstar_in_rangeD:
      return range_included(pm.c() + pm.b().adjoint(), pm.d(), cc).holds;
  }
  return false;
}

/// Draw a random partitioned matrix satisfying every requested constraint.
/// Constraints are imposed by construction (projector applications, Schur
/// seeding) and then verified numerically; failed draws are retried with a
/// fresh sub-seed up to retry_cap times. Deterministic for a fixed spec.
inline PartitionedMatrix generate(const GeneratorSpec& gs,
                                  const ToleranceConfig& cfg = {}) {
  if (gs.n < 0 || gs.k < 0 || gs.k > gs.n)
    throw DimensionError("generate: need 0 <= k <= n");
  const Index k = gs.k, l = gs.n - gs.k;
  if (gs.rank_a > k || gs.rank_d > l)
    throw DimensionError("generate: target rank exceeds block size");

  const auto& cs = gs.constraints;
  const auto has = [&](Constraint c) { return cs.count(c) > 0; };
  const bool f_path = has(Constraint::range_C_in_F) || has(Constraint::range_Bt_in_Ft);
  const bool g_path = has(Constraint::range_B_in_G) || has(Constraint::range_Ct_in_Gt);
  const bool b_from_a = has(Constraint::range_B_in_A) || has(Constraint::null_Astar_in_Bstar);
  const bool b_from_d = has(Constraint::range_Bt_in_Dt) || has(Constraint::null_D_in_B);
  const bool c_from_a = has(Constraint::range_Ct_in_At) || has(Constraint::null_A_in_C);
  const bool c_from_d = has(Constraint::range_C_in_D) || has(Constraint::null_Dstar_in_Cstar);
  const bool b_sum = has(Constraint::BplusCstar_in_rangeA);
  const bool c_sum = has(Constraint::CplusBstar_in_rangeD);

  if (f_path && g_path)
    throw GenerationError("generate: both Schur complements cannot be seeded at once");
  if (g_path && (has(Constraint::A_ep) || b_from_a || c_from_a || b_sum))
    throw GenerationError("generate: pivot-side constraints clash with a derived pivot block");
  if (f_path && (has(Constraint::D_ep) || b_from_d || c_from_d || c_sum))
    throw GenerationError("generate: trailing-side constraints clash with a derived trailing block");
  if (b_sum && (b_from_a || b_from_d))
    throw GenerationError("generate: BplusCstar_in_rangeA over-constrains b");
  if (c_sum && (c_from_d || c_from_a))
    throw GenerationError("generate: CplusBstar_in_rangeD over-constrains c");
  if (b_sum && c_sum)
    throw GenerationError("generate: the two sum-range constraints conflict");

  std::vector<std::string> last_failures;
  for (int attempt = 0; attempt < gs.retry_cap; ++attempt) {
    std::mt19937_64 rng(detail::mix_seed(gs.seed, static_cast<std::uint64_t>(attempt)));
    const auto pick_rank = [&](Index target, Index dim) {
      if (target >= 0) return std::min(target, dim);
      if (dim == 0) return Index(0);
      std::uniform_int_distribution<Index> d(1, dim);
      return d(rng);
    };

    Matrix a, b, c, d;
    if (g_path) {
      d = detail::square_block(rng, l, pick_rank(gs.rank_d, l),
                               has(Constraint::D_ep), gs.field, gs.diag_shift);
      const Matrix dd = pinv(d, cfg);
      b = detail::gaussian(rng, k, l, gs.field);
      c = detail::gaussian(rng, l, k, gs.field);
      if (b_from_d) b = b * dd * d;
      if (c_from_d) c = d * dd * c;
      const Matrix g0 = detail::spanning_block(
          rng, k, k, has(Constraint::range_B_in_G) ? b : Matrix(),
          has(Constraint::range_Ct_in_Gt) ? Matrix(c.adjoint()) : Matrix(), gs.field, cfg);
      a = b * dd * c + g0;
      if (gs.diag_shift != 0.0) a += gs.diag_shift * Matrix::Identity(k, k);
    } else {
      a = detail::square_block(rng, k, pick_rank(gs.rank_a, k),
                               has(Constraint::A_ep), gs.field, gs.diag_shift);
      const Matrix ad = pinv(a, cfg);
      if (f_path) {
        b = detail::gaussian(rng, k, l, gs.field);
        c = detail::gaussian(rng, l, k, gs.field);
        if (b_from_a) b = a * ad * b;
        if (c_from_a) c = c * ad * a;
        const Matrix f0 = detail::spanning_block(
            rng, l, l, has(Constraint::range_C_in_F) ? c : Matrix(),
            has(Constraint::range_Bt_in_Ft) ? Matrix(b.adjoint()) : Matrix(), gs.field, cfg);
        d = c * ad * b + f0;
        if (gs.diag_shift != 0.0) d += gs.diag_shift * Matrix::Identity(l, l);
      } else {
        d = detail::square_block(rng, l, pick_rank(gs.rank_d, l),
                                 has(Constraint::D_ep), gs.field, gs.diag_shift);
        const Matrix dd = pinv(d, cfg);
        c = detail::gaussian(rng, l, k, gs.field);
        if (c_from_a) c = c * ad * a;
        if (c_from_d) c = d * dd * c;
        b = detail::gaussian(rng, k, l, gs.field);
        if (b_from_a) b = a * ad * b;
        if (b_from_d) b = b * dd * d;
        if (b_sum) b = a * ad * detail::gaussian(rng, k, l, gs.field) - c.adjoint();
        if (c_sum) c = d * dd * detail::gaussian(rng, l, k, gs.field) - b.adjoint();
      }
    }

    PartitionedMatrix pm = make_partitioned(a, b, c, d);
    last_failures.clear();
    for (Constraint con : cs)
      if (!constraint_satisfied(pm, con, cfg))
        last_failures.push_back(format_constraint(con));
    const double cond_m = detail::effective_cond(pm.m, cfg);
    const double cond_a = detail::effective_cond(a, cfg);
    const double cond_d = detail::effective_cond(d, cfg);
    if (std::max({cond_m, cond_a, cond_d}) > gs.max_effective_cond)
      last_failures.push_back("conditioning");
    if (last_failures.empty()) return pm;
  }

  std::string what = "generate: retry cap reached; unsatisfied:";
  for (const auto& f : last_failures) what += " " + f;
  throw GenerationError(what);
}

}  // namespace gppt
