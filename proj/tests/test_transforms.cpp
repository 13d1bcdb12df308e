#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gppt/transforms.hpp"

using namespace gppt;

namespace {

Matrix mat(Index rows, Index cols, std::initializer_list<double> vals) {
  Matrix m(rows, cols);
  auto it = vals.begin();
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = *it++;
  return m;
}

Matrix randm(std::mt19937_64& rng, Index rows, Index cols, bool complex_field) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = complex_field ? Complex(g(rng), g(rng)) : Complex(g(rng), 0.0);
  return m;
}

}  // namespace

TEST_CASE("partition accessors and assembly") {
  const PartitionedMatrix pm = make_partitioned(mat(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9}), 2);
  CHECK(pm.a().rows() == 2);
  CHECK(pm.b().cols() == 1);
  CHECK(pm.c().rows() == 1);
  CHECK(pm.d()(0, 0) == Complex(9, 0));
  const PartitionedMatrix re = make_partitioned(pm.a(), pm.b(), pm.c(), pm.d());
  CHECK(equality_residual(re.m, pm.m) == 0.0);
  CHECK_THROWS_AS(make_partitioned(mat(2, 3, {1, 2, 3, 4, 5, 6}), 1), DimensionError);
  CHECK_THROWS_AS(make_partitioned(mat(2, 2, {1, 2, 3, 4}), 3), DimensionError);
}

TEST_CASE("pivot transform on an invertible pivot matches classical ppt") {
  const PartitionedMatrix pm = make_partitioned(mat(2, 2, {2, 1, 1, 3}), 1);
  const PartitionedMatrix p = gppt_a(pm);
  CHECK(equality_residual(p.m, mat(2, 2, {0.5, -0.5, 0.5, 2.5})) < 1e-12);
  const PartitionedMatrix q = gppt_d(pm);
  const double third = 1.0 / 3.0;
  CHECK(equality_residual(q.m, mat(2, 2, {2 - third, third, -third, third})) < 1e-12);
}

TEST_CASE("empty pivot blocks degenerate correctly") {
  const Matrix m = mat(2, 2, {2, 1, 1, 3});
  const PartitionedMatrix k0 = make_partitioned(m, 0);
  CHECK(equality_residual(gppt_a(k0).m, m) < 1e-12);
  CHECK(equality_residual(gppt_d(k0).m, pinv(m)) < 1e-12);
  const PartitionedMatrix kn = make_partitioned(m, 2);
  CHECK(equality_residual(gppt_a(kn).m, pinv(m)) < 1e-12);
  CHECK(equality_residual(gppt_d(kn).m, m) < 1e-12);
}

TEST_CASE("schur complements") {
  const PartitionedMatrix pm = make_partitioned(mat(2, 2, {2, 1, 1, 3}), 1);
  const SchurPair sp = schur_complements(pm);
  CHECK(sp.f(0, 0).real() == Catch::Approx(2.5));
  CHECK(sp.g(0, 0).real() == Catch::Approx(2.0 - 1.0 / 3.0));
}

TEST_CASE("transform against a refuting instance") {
  // M = [[0,0],[1,1]], k=1: complement-transform is not the pseudoinverse.
  const PartitionedMatrix pm = make_partitioned(mat(2, 2, {0, 0, 1, 1}), 1);
  CHECK(equality_residual(gppt_a(pm).m, mat(2, 2, {0, 0, 0, 1})) < 1e-12);
  CHECK(equality_residual(gppt_d(pm).m, mat(2, 2, {0, 0, -1, 1})) < 1e-12);
  const PredicateVerdict v = gppt_dagger_equals_complement(pm);
  CHECK_FALSE(v.holds);
  CHECK(v.residual > 1e-6);
}

TEST_CASE("double transform is the identity exactly when both null conditions hold") {
  // violating instance: A = 0 pivot with C = 1
  const PartitionedMatrix bad = make_partitioned(mat(2, 2, {0, 0, 1, 1}), 1);
  CHECK(equality_residual(double_gppt_a(bad).m, bad.m) > 1e-6);

  // invertible pivot: conditions hold trivially
  const PartitionedMatrix good = make_partitioned(mat(2, 2, {2, 1, 1, 3}), 1);
  CHECK(equality_residual(double_gppt_a(good).m, good.m) < 1e-9);
  CHECK(equality_residual(double_gppt_d(good).m, good.m) < 1e-9);
}

TEST_CASE("projector-stabilized matrix has the same transform") {
  std::mt19937_64 rng(31337);
  for (int t = 0; t < 60; ++t) {
    const Index n = 4, k = 2;
    const Matrix a = randm(rng, k, k, t % 2 == 1) * randm(rng, k, k, t % 2 == 1);
    const PartitionedMatrix pm = make_partitioned(
        a, randm(rng, k, n - k, t % 2 == 1), randm(rng, n - k, k, t % 2 == 1),
        randm(rng, n - k, n - k, t % 2 == 1));
    const Matrix ad = pinv(pm.a());
    const PartitionedMatrix m0 = make_partitioned(
        pm.a(), pm.a() * ad * pm.b(), pm.c() * ad * pm.a(), pm.d());
    CHECK(equality_residual(gppt_a(pm).m, gppt_a(m0).m) < 1e-8);
  }
}

TEST_CASE("moore penrose via transform under range conditions") {
  // block diagonal invertible: conditions hold, composite equals inverse
  const PartitionedMatrix pm = make_partitioned(mat(2, 2, {2, 0, 0, 3}), 1);
  const Matrix g = moore_penrose_via_gppt(pm, true);
  CHECK(equality_residual(g, pinv(pm.m)) < 1e-10);

  const auto conds = detail::mp_via_gppt_conditions(pm, true, {});
  for (const auto& [name, verdict] : conds) {
    INFO(name);
    CHECK(verdict.holds);
  }

  // violated conditions raise unless forced
  const PartitionedMatrix bad = make_partitioned(mat(2, 2, {0, 0, 1, 1}), 1);
  CHECK_THROWS_AS(moore_penrose_via_gppt(bad, true), ConditionViolation);
  const Matrix forced = moore_penrose_via_gppt(bad, true, {}, true);
  CHECK(forced.rows() == 2);
}

TEST_CASE("factorization pins") {
  const PartitionedMatrix pm = make_partitioned(mat(2, 2, {2, 1, 1, 3}), 1);
  const Factorization f = gppt_factorization(pm);
  CHECK(equality_residual(f.y * f.z, gppt_a(pm).m) < 1e-12);
  CHECK(equality_residual(f.x * f.zhat, gppt_d(pm).m) < 1e-12);

  const GinverseClass zc = classify_ginverse(f.x, f.z);
  CHECK(zc.satisfies(1));
  CHECK(zc.satisfies(2));
  CHECK(zc.satisfies(4));
  const GinverseClass hc = classify_ginverse(f.y, f.zhat);
  CHECK(hc.satisfies(1));
  CHECK(hc.satisfies(2));
  CHECK(hc.satisfies(4));
}

TEST_CASE("factorization third equation tracks the range inclusions") {
  std::mt19937_64 rng(555);
  for (int t = 0; t < 60; ++t) {
    const Index n = 4, k = 2;
    Matrix a = randm(rng, k, 1, t % 2 == 1) * randm(rng, 1, k, t % 2 == 1);
    Matrix b = randm(rng, k, n - k, t % 2 == 1);
    if (t % 3 == 0) b = a * pinv(a) * b;  // force R(b) into R(a)
    Matrix d = randm(rng, n - k, 1, t % 2 == 1) * randm(rng, 1, n - k, t % 2 == 1);
    Matrix c = randm(rng, n - k, k, t % 2 == 1);
    if (t % 3 == 1) c = d * pinv(d) * c;  // force R(c) into R(d)
    const PartitionedMatrix pm = make_partitioned(a, b, c, d);
    const Factorization f = gppt_factorization(pm);
    const GinverseClass zc = classify_ginverse(f.x, f.z);
    const GinverseClass hc = classify_ginverse(f.y, f.zhat);
    CHECK(zc.satisfies_3 == range_included(pm.b(), pm.a()).holds);
    CHECK(hc.satisfies_3 == range_included(pm.c(), pm.d()).holds);
  }
}

TEST_CASE("rank of the symmetric part is preserved under the stated hypotheses") {
  // A = [[1,1],[1,1]] EP, B+C^H in R(A)
  const PartitionedMatrix pm = make_partitioned(
      mat(2, 2, {1, 1, 1, 1}), mat(2, 1, {0, 1}), mat(1, 2, {1, 0}),
      mat(1, 1, {0}));
  const RankSymReport r = rank_sym_preserved_a(pm);
  CHECK(r.hypotheses_hold);
  CHECK(r.pivot_ep);
  CHECK(r.range_ok);
  CHECK(r.rank_m == 2);
  CHECK(r.rank_m == r.rank_p);
  CHECK(r.preserved);
}

TEST_CASE("rank preservation fails without the range hypothesis") {
  const PartitionedMatrix pm = make_partitioned(mat(2, 2, {0, -2, 1, 0}), 1);
  const RankSymReport r = rank_sym_preserved_a(pm);
  CHECK_FALSE(r.hypotheses_hold);
  CHECK(r.pivot_ep);      // zero pivot is EP
  CHECK_FALSE(r.range_ok);
  CHECK(r.rank_m == 2);
  CHECK(r.rank_p == 0);
}

TEST_CASE("ep equivalence under the four null-space conditions") {
  // invertible blocks satisfy the conditions trivially
  const PartitionedMatrix pm = make_partitioned(mat(2, 2, {2, 1, 1, 3}), 1);
  const EpEquivalence e = ep_equivalence_check(pm);
  CHECK(e.conditions_hold);
  CHECK(e.a_ep);
  CHECK(e.d_ep);
  CHECK(e.p_ep == e.q_ep);
  CHECK(e.equivalent);
}

TEST_CASE("domain range exchange") {
  const PartitionedMatrix pm = make_partitioned(mat(2, 2, {2, 1, 1, 3}), 1);
  Vector x1(1), x2(1);
  x1 << Complex(1, 0);
  x2 << Complex(-2, 0);
  const ExchangeReport ex = domain_range_exchange_a(pm, x1, x2);
  CHECK(ex.forward_ok);
  CHECK(ex.backward_applicable);  // invertible pivot: R(B) subset R(A)
  CHECK(ex.backward_ok);
  CHECK(ex.forward_residual < 1e-10);

  // R(B) outside R(A): backward direction not applicable
  const PartitionedMatrix wide = make_partitioned(mat(2, 2, {0, 1, 1, 1}), 1);
  const ExchangeReport ex2 = domain_range_exchange_a(wide, x1, x2);
  CHECK(ex2.forward_ok);
  CHECK_FALSE(ex2.backward_applicable);

  const ExchangeReport ex3 = domain_range_exchange_d(pm, x1, x2);
  CHECK(ex3.forward_ok);
  CHECK(ex3.backward_applicable);
  CHECK(ex3.backward_ok);
}

TEST_CASE("gram one-inverse pin") {
  // W = [[1,1],[1,1]] split after the first column
  const GramReport g = gram_gppt_one_inverse(mat(2, 2, {1, 1, 1, 1}), 1);
  CHECK(g.range_ok);
  CHECK(g.is_one_inverse);
  CHECK(equality_residual(g.k, mat(2, 2, {0.5, -1, 1, 0})) < 1e-12);

  // independent columns: hypothesis fails
  const GramReport h = gram_gppt_one_inverse(mat(2, 2, {1, 0, 0, 1}), 1);
  CHECK_FALSE(h.range_ok);

  CHECK_THROWS_AS(gram_gppt_one_inverse(mat(2, 2, {1, 0, 0, 1}), 3), DimensionError);
  Matrix cm = mat(2, 2, {1, 0, 0, 1});
  cm(0, 0) = Complex(0, 1);
  CHECK_THROWS_AS(gram_gppt_one_inverse(cm, 1), FieldError);
}

TEST_CASE("gram one-inverse property on engineered wide matrices") {
  std::mt19937_64 rng(8080);
  for (int t = 0; t < 40; ++t) {
    const Index rows = 4, r = 2;
    const Matrix a = randm(rng, rows, r, false);
    const Matrix w_right = a * randm(rng, r, 3, false);
    Matrix w(rows, r + 3);
    w.leftCols(r) = a;
    w.rightCols(3) = w_right;
    const GramReport g = gram_gppt_one_inverse(w, r);
    CHECK(g.range_ok);
    CHECK(g.is_one_inverse);
    CHECK(g.residual <= 1e-8);
    const Matrix gram = w.adjoint() * w;
    CHECK(equality_residual(gram * g.k * gram, gram) < 1e-8);
  }
}

TEST_CASE("block pseudoinverse formulas") {
  // block diagonal: both formulas reduce to diag of the pseudoinverses
  const PartitionedMatrix pm = make_partitioned(
      mat(2, 2, {1, 1, 1, 1}), Matrix::Zero(2, 1), Matrix::Zero(1, 2),
      mat(1, 1, {2}));
  const BlockPinvReport ra = block_pinv_a(pm);
  CHECK(ra.conditions_hold);
  CHECK(ra.equals_pinv);
  CHECK(equality_residual(ra.formula, pinv(pm.m)) < 1e-10);

  const BlockPinvReport rd = block_pinv_d(pm);
  CHECK(rd.conditions_hold);
  CHECK(rd.equals_pinv);

  // refuting instance: conditions fail and formula drifts from pinv
  const PartitionedMatrix bad = make_partitioned(mat(2, 2, {0, 0, 1, 1}), 1);
  const BlockPinvReport rb = block_pinv_a(bad);
  CHECK_FALSE(rb.conditions_hold);
}
