#pragma once

#include <string>
#include <vector>

#include "partition.hpp"

namespace gppt {

/// Principal pivot transform with respect to the leading block, using the
/// Moore-Penrose inverse:
///   gppt_a(m) = [ a†, -a† b ; c a†, d - c a† b ].
inline PartitionedMatrix gppt_a(const PartitionedMatrix& pm,
                                const ToleranceConfig& cfg = {}) {
  const Matrix ad = pinv(pm.a(), cfg);
  return {assemble(ad, -ad * pm.b(), pm.c() * ad, pm.d() - pm.c() * ad * pm.b()),
          pm.k};
}

/// Pivot on the trailing block:
///   gppt_d(m) = [ a - b d† c, b d† ; -d† c, d† ].
inline PartitionedMatrix gppt_d(const PartitionedMatrix& pm,
                                const ToleranceConfig& cfg = {}) {
  const Matrix dd = pinv(pm.d(), cfg);
  return {assemble(pm.a() - pm.b() * dd * pm.c(), pm.b() * dd, -dd * pm.c(), dd),
          pm.k};
}

/// Does gppt_a(m)† equal gppt_d(m)? True for every nonsingular pivot, but in
/// the singular case only under extra compatibility conditions.
inline PredicateVerdict gppt_dagger_equals_complement(const PartitionedMatrix& pm,
                                                      const ToleranceConfig& cfg = {}) {
  PredicateVerdict v;
  v.threshold = cfg.eq_tol;
  v.residual  = equality_residual(pinv(gppt_a(pm, cfg).m, cfg), gppt_d(pm, cfg).m);
  v.holds     = v.residual <= v.threshold;
  return v;
}

/// Apply the leading-block transform twice. The pivot of the second
/// application is a†, so the composite is [ a, a a† b ; c a† a, d ]; it
/// reproduces m exactly when N(a) ⊆ N(c) and N(a^H) ⊆ N(b^H).
inline PartitionedMatrix double_gppt_a(const PartitionedMatrix& pm,
                                       const ToleranceConfig& cfg = {}) {
  return gppt_a(gppt_a(pm, cfg), cfg);
}

/// Mirror composite through the trailing block: [ a, b d† d ; d d† c, d ].
inline PartitionedMatrix double_gppt_d(const PartitionedMatrix& pm,
                                       const ToleranceConfig& cfg = {}) {
  return gppt_d(gppt_d(pm, cfg), cfg);
}

namespace detail {

/// The four inclusion conditions under which pivoting twice through
/// complementary corners computes the Moore-Penrose inverse of m.
inline std::vector<std::pair<std::string, PredicateVerdict>>
mp_via_gppt_conditions(const PartitionedMatrix& pm, bool use_a_side,
                       const ToleranceConfig& cfg) {
  std::vector<std::pair<std::string, PredicateVerdict>> out;
  const SchurPair sc = schur_complements(pm, cfg);
  if (use_a_side) {
    out.emplace_back("N(a) subseteq N(c)", null_space_included(pm.a(), pm.c(), cfg));
    out.emplace_back("N(a^H) subseteq N(b^H)",
                     null_space_included(pm.a().adjoint(), pm.b().adjoint(), cfg));
    out.emplace_back("N(f) subseteq N(b)", null_space_included(sc.f, pm.b(), cfg));
    out.emplace_back("N(f^H) subseteq N(c^H)",
                     null_space_included(sc.f.adjoint(), pm.c().adjoint(), cfg));
  } else {
    out.emplace_back("N(d) subseteq N(b)", null_space_included(pm.d(), pm.b(), cfg));
    out.emplace_back("N(d^H) subseteq N(c^H)",
                     null_space_included(pm.d().adjoint(), pm.c().adjoint(), cfg));
    out.emplace_back("N(g) subseteq N(c)", null_space_included(sc.g, pm.c(), cfg));
    out.emplace_back("N(g^H) subseteq N(b^H)",
                     null_space_included(sc.g.adjoint(), pm.b().adjoint(), cfg));
  }
  return out;
}

}  // namespace detail

/// Compute m† by pivoting twice: first on one corner, then on the opposite
/// corner of the result (whose block there is the Schur complement). Valid
/// exactly under four null-space inclusions; throws ConditionViolation naming
/// the failed ones unless force is set (the forced result is just the raw
/// composite transform, with no m† guarantee).
inline Matrix moore_penrose_via_gppt(const PartitionedMatrix& pm, bool use_a_side,
                                     const ToleranceConfig& cfg = {},
                                     bool force = false) {
  if (!force) {
    std::vector<std::string> failed;
    for (const auto& [name, verdict] : detail::mp_via_gppt_conditions(pm, use_a_side, cfg))
      if (!verdict.holds) failed.push_back(name);
    if (!failed.empty()) {
      std::string what = "moore_penrose_via_gppt: conditions failed:";
      for (const auto& f : failed) what += " [" + f + "]";
      throw ConditionViolation(what, failed);
    }
  }
  return use_a_side ? gppt_d(gppt_a(pm, cfg), cfg).m
                    : gppt_a(gppt_d(pm, cfg), cfg).m;
}

/// Triangular factorization of the two transforms:
///   x = [ a b ; 0 I ],  z = [ a†, -a† b ; 0 I ],
///   y = [ I 0 ; c d ],  zhat = [ I 0 ; -d† c, d† ],
/// with y z = gppt_a(m) and x zhat = gppt_d(m). Both z and zhat are
/// {1,2,4}-inverses of their mates; Penrose-3 for (x, z) holds iff
/// R(b) ⊆ R(a), and for (y, zhat) iff R(c) ⊆ R(d).
struct Factorization {
  Matrix x, z, y, zhat;
};

inline Factorization gppt_factorization(const PartitionedMatrix& pm,
                                        const ToleranceConfig& cfg = {}) {
  const Index k = pm.k, l = pm.l();
  const Matrix ik = Matrix::Identity(k, k);
  const Matrix il = Matrix::Identity(l, l);
  const Matrix zk = Matrix::Zero(l, k);
  const Matrix zl = Matrix::Zero(k, l);
  const Matrix ad = pinv(pm.a(), cfg);
  const Matrix dd = pinv(pm.d(), cfg);
  Factorization f;
  f.x    = assemble(pm.a(), pm.b(), zk, il);
  f.z    = assemble(ad, -ad * pm.b(), zk, il);
  f.y    = assemble(ik, zl, pm.c(), pm.d());
  f.zhat = assemble(ik, zl, -dd * pm.c(), dd);
  return f;
}

/// Rank of the Hermitian part is preserved by the transform when the pivot is
/// range-Hermitian and R(b + c^H) ⊆ R(pivot).
struct RankSymReport {
  bool hypotheses_hold = false;
  bool pivot_ep = false;
  bool range_ok = false;
  Index rank_m = 0;
  Index rank_p = 0;
  bool preserved = false;
};

inline RankSymReport rank_sym_preserved_a(const PartitionedMatrix& pm,
                                          const ToleranceConfig& cfg = {}) {
  RankSymReport r;
  r.pivot_ep = is_range_hermitian(pm.a(), cfg).holds;
  r.range_ok = range_included(pm.b() + pm.c().adjoint(), pm.a(), cfg).holds;
  r.hypotheses_hold = r.pivot_ep && r.range_ok;
  r.rank_m    = rank(symmetric_part(pm.m), cfg);
  r.rank_p    = rank(symmetric_part(gppt_a(pm, cfg).m), cfg);
  r.preserved = r.rank_m == r.rank_p;
  return r;
}

inline RankSymReport rank_sym_preserved_d(const PartitionedMatrix& pm,
                                          const ToleranceConfig& cfg = {}) {
  RankSymReport r;
  r.pivot_ep = is_range_hermitian(pm.d(), cfg).holds;
  r.range_ok = range_included(pm.c() + pm.b().adjoint(), pm.d(), cfg).holds;
  r.hypotheses_hold = r.pivot_ep && r.range_ok;
  r.rank_m    = rank(symmetric_part(pm.m), cfg);
  r.rank_p    = rank(symmetric_part(gppt_d(pm, cfg).m), cfg);
  r.preserved = r.rank_m == r.rank_p;
  return r;
}

/// Under c a† a = d d† c and a a† b = b d† d, the matrix, both transforms,
/// and the diagonal blocks are range-Hermitian together.
struct EpEquivalence {
  bool conditions_hold = false;
  bool a_ep = false, d_ep = false, p_ep = false, q_ep = false;
  bool equivalent = false;  // p_ep == q_ep == (a_ep && d_ep)
};

inline EpEquivalence ep_equivalence_check(const PartitionedMatrix& pm,
                                          const ToleranceConfig& cfg = {}) {
  EpEquivalence e;
  const Matrix ad = pinv(pm.a(), cfg);
  const Matrix dd = pinv(pm.d(), cfg);
  e.conditions_hold =
      matrices_equal(pm.c() * ad * pm.a(), pm.d() * dd * pm.c(), cfg) &&
      matrices_equal(pm.a() * ad * pm.b(), pm.b() * dd * pm.d(), cfg);
  e.a_ep = is_range_hermitian(pm.a(), cfg).holds;
  e.d_ep = is_range_hermitian(pm.d(), cfg).holds;
  e.p_ep = is_range_hermitian(gppt_a(pm, cfg).m, cfg).holds;
  e.q_ep = is_range_hermitian(gppt_d(pm, cfg).m, cfg).holds;
  e.equivalent = (e.p_ep == e.q_ep) && (e.q_ep == (e.a_ep && e.d_ep));
  return e;
}

/// The transform exchanges part of the domain with part of the range:
///   m (a† a x1 ; x2) = (y1 ; y2)  implies  p (y1 ; x2) = (a† a x1 ; y2).
/// The reverse implication needs y1 ∈ R(a), which is automatic for vectors
/// produced by m when R(b) ⊆ R(a).
struct ExchangeReport {
  bool forward_ok = false;
  bool backward_applicable = false;  // R(b) ⊆ R(a) (resp. R(c) ⊆ R(d))
  bool backward_ok = false;
  double forward_residual = 0.0;
  double backward_residual = 0.0;
};

inline ExchangeReport domain_range_exchange_a(const PartitionedMatrix& pm,
                                              const Vector& x1, const Vector& x2,
                                              const ToleranceConfig& cfg = {}) {
  if (x1.size() != pm.k || x2.size() != pm.l())
    throw DimensionError("domain_range_exchange_a: vector sizes must match the split");
  ExchangeReport r;
  const Matrix p  = gppt_a(pm, cfg).m;
  const Matrix ad = pinv(pm.a(), cfg);
  const Index k = pm.k, n = pm.n();

  const Vector w = ad * (pm.a() * x1);
  Vector in(n);
  in.head(k) = w;
  in.tail(n - k) = x2;
  const Vector y = pm.m * in;
  Vector lhs_in(n);
  lhs_in.head(k) = y.head(k);
  lhs_in.tail(n - k) = x2;
  Vector expect(n);
  expect.head(k) = w;
  expect.tail(n - k) = y.tail(n - k);
  r.forward_residual = n == 0 ? 0.0
                              : (p * lhs_in - expect).cwiseAbs().maxCoeff() /
                                    (1.0 + expect.cwiseAbs().maxCoeff());
  r.forward_ok = r.forward_residual <= cfg.eq_tol;

  r.backward_applicable = range_included(pm.b(), pm.a(), cfg).holds;
  // Reverse: start from (y1 ; x2) with y1 ∈ R(a), push through p, and check
  // that m maps the exchanged pair back.
  const Vector y1 = pm.a() * x1;  // generic element of R(a)
  Vector rin(n);
  rin.head(k) = y1;
  rin.tail(n - k) = x2;
  const Vector z = p * rin;
  Vector back(n);
  back.head(k) = z.head(k);
  back.tail(n - k) = x2;
  Vector rexpect(n);
  rexpect.head(k) = y1;
  rexpect.tail(n - k) = z.tail(n - k);
  r.backward_residual = n == 0 ? 0.0
                               : (pm.m * back - rexpect).cwiseAbs().maxCoeff() /
                                     (1.0 + rexpect.cwiseAbs().maxCoeff());
  r.backward_ok = r.backward_residual <= cfg.eq_tol;
  return r;
}

inline ExchangeReport domain_range_exchange_d(const PartitionedMatrix& pm,
                                              const Vector& x1, const Vector& x2,
                                              const ToleranceConfig& cfg = {}) {
  if (x1.size() != pm.k || x2.size() != pm.l())
    throw DimensionError("domain_range_exchange_d: vector sizes must match the split");
  ExchangeReport r;
  const Matrix q  = gppt_d(pm, cfg).m;
  const Matrix dd = pinv(pm.d(), cfg);
  const Index k = pm.k, n = pm.n(), l = pm.l();

  const Vector w = dd * (pm.d() * x2);
  Vector in(n);
  in.head(k) = x1;
  in.tail(l) = w;
  const Vector y = pm.m * in;
  Vector lhs_in(n);
  lhs_in.head(k) = x1;
  lhs_in.tail(l) = y.tail(l);
  Vector expect(n);
  expect.head(k) = y.head(k);
  expect.tail(l) = w;
  r.forward_residual = n == 0 ? 0.0
                              : (q * lhs_in - expect).cwiseAbs().maxCoeff() /
                                    (1.0 + expect.cwiseAbs().maxCoeff());
  r.forward_ok = r.forward_residual <= cfg.eq_tol;

  r.backward_applicable = range_included(pm.c(), pm.d(), cfg).holds;
  const Vector y2 = pm.d() * x2;
  Vector rin(n);
  rin.head(k) = x1;
  rin.tail(l) = y2;
  const Vector z = q * rin;
  Vector back(n);
  back.head(k) = x1;
  back.tail(l) = z.tail(l);
  Vector rexpect(n);
  rexpect.head(k) = z.head(k);
  rexpect.tail(l) = y2;
  r.backward_residual = n == 0 ? 0.0
                               : (pm.m * back - rexpect).cwiseAbs().maxCoeff() /
                                     (1.0 + rexpect.cwiseAbs().maxCoeff());
  r.backward_ok = r.backward_residual <= cfg.eq_tol;
  return r;
}

/// For a real square m = (a | b) split after column r with R(b) ⊆ R(a), the
/// transform of the Gram matrix mᵀm pivoted on aᵀa is a {1}-inverse of mᵀm.
struct GramReport {
  Matrix k;
  bool range_ok = false;
  bool is_one_inverse = false;
  double residual = 0.0;
};

inline GramReport gram_gppt_one_inverse(const Matrix& m_wide, Index r,
                                        const ToleranceConfig& cfg = {}) {
  if (r < 0 || r > m_wide.cols())
    throw DimensionError("gram_gppt_one_inverse: column split out of range");
  if (!is_real(m_wide, cfg.eq_tol))
    throw FieldError("gram_gppt_one_inverse: matrix must be real");
  GramReport g;
  const Matrix gram = m_wide.adjoint() * m_wide;
  g.range_ok = range_included(m_wide.rightCols(m_wide.cols() - r),
                              m_wide.leftCols(r), cfg)
                   .holds;
  g.k = gppt_a(make_partitioned(gram, r), cfg).m;
  g.residual = equality_residual(gram * g.k * gram, gram);
  g.is_one_inverse = g.residual <= cfg.eq_tol;
  return g;
}

/// Block formula for m† when pivoting on a:
///   m† = [ a† + a† b f† c a†, -a† b f† ; -f† c a†, f† ],  f = d - c a† b,
/// valid iff R(c^H) ⊆ R(a^H), R(b) ⊆ R(a), R(c) ⊆ R(f), R(b^H) ⊆ R(f^H).
struct BlockPinvReport {
  Matrix formula;
  bool conditions_hold = false;
  std::array<bool, 4> conditions{};
  bool equals_pinv = false;
  double residual = 0.0;
};

inline BlockPinvReport block_pinv_a(const PartitionedMatrix& pm,
                                    const ToleranceConfig& cfg = {}) {
  BlockPinvReport r;
  const Matrix ad = pinv(pm.a(), cfg);
  const Matrix f  = pm.d() - pm.c() * ad * pm.b();
  const Matrix fd = pinv(f, cfg);
  r.conditions[0] = range_included(pm.c().adjoint(), pm.a().adjoint(), cfg).holds;
  r.conditions[1] = range_included(pm.b(), pm.a(), cfg).holds;
  r.conditions[2] = range_included(pm.c(), f, cfg).holds;
  r.conditions[3] = range_included(pm.b().adjoint(), f.adjoint(), cfg).holds;
  r.conditions_hold =
      r.conditions[0] && r.conditions[1] && r.conditions[2] && r.conditions[3];
  r.formula = assemble(ad + ad * pm.b() * fd * pm.c() * ad, -ad * pm.b() * fd,
                       -fd * pm.c() * ad, fd);
  r.residual    = equality_residual(r.formula, pinv(pm.m, cfg));
  r.equals_pinv = r.residual <= cfg.eq_tol;
  return r;
}

/// Mirror formula pivoting on d:
///   m† = [ g†, -g† b d† ; -d† c g†, d† + d† c g† b d† ],  g = a - b d† c,
/// valid iff R(b^H) ⊆ R(d^H), R(c) ⊆ R(d), R(b) ⊆ R(g), R(c^H) ⊆ R(g^H).
inline BlockPinvReport block_pinv_d(const PartitionedMatrix& pm,
                                    const ToleranceConfig& cfg = {}) {
  BlockPinvReport r;
  const Matrix dd = pinv(pm.d(), cfg);
  const Matrix g  = pm.a() - pm.b() * dd * pm.c();
  const Matrix gd = pinv(g, cfg);
  r.conditions[0] = range_included(pm.b().adjoint(), pm.d().adjoint(), cfg).holds;
  r.conditions[1] = range_included(pm.c(), pm.d(), cfg).holds;
  r.conditions[2] = range_included(pm.b(), g, cfg).holds;
  r.conditions[3] = range_included(pm.c().adjoint(), g.adjoint(), cfg).holds;
  r.conditions_hold =
      r.conditions[0] && r.conditions[1] && r.conditions[2] && r.conditions[3];
  r.formula = assemble(gd, -gd * pm.b() * dd, -dd * pm.c() * gd,
                       dd + dd * pm.c() * gd * pm.b() * dd);
  r.residual    = equality_residual(r.formula, pinv(pm.m, cfg));
  r.equals_pinv = r.residual <= cfg.eq_tol;
  return r;
}

}  // namespace gppt
