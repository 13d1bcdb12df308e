#include <catch2/catch_amalgamated.hpp>

#include "gppt/fixtures.hpp"
#include "gppt/theorems.hpp"

using namespace gppt;

namespace {

Matrix mat(Index rows, Index cols, std::initializer_list<double> vals) {
  Matrix m(rows, cols);
  auto it = vals.begin();
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = *it++;
  return m;
}

PartitionedMatrix p_inherit_counterexample() {
  return make_partitioned(mat(3, 3, {2, -2, 1, 2, -2, 1, -1, 1, -0.5}), 2);
}

PartitionedMatrix p_inherit_transform() {
  return make_partitioned(
      mat(3, 3, {0.125, 0.125, -0.25, -0.125, -0.125, 0.25, -0.25, -0.25, 0}), 2);
}

}  // namespace

TEST_CASE("names round-trip") {
  for (TheoremId id : all_theorem_ids())
    CHECK(parse_theorem_id(format_theorem_id(id)) == id);
  CHECK_THROWS_AS(parse_theorem_id("T_NOPE"), ParseError);
  for (const char* name : {"real", "complex"})
    CHECK(format_field(parse_field(name)) == name);
  for (const auto& [c, name] : constraint_names()) {
    CHECK(format_constraint(c) == name);
    CHECK(parse_constraint(name) == c);
  }
  CHECK_THROWS_AS(parse_constraint("bogus"), ParseError);
}

TEST_CASE("generator honors constraints by construction") {
  for (const bool complex_field : {false, true}) {
    for (const auto& [c, name] : constraint_names()) {
      GeneratorSpec gs;
      gs.n = 4;
      gs.k = 2;
      gs.field = complex_field ? Field::complex_ : Field::real;
      gs.constraints = {c};
      gs.seed = 0xFACE + static_cast<std::uint64_t>(c);
      const PartitionedMatrix pm = generate(gs);
      INFO(name << (complex_field ? " complex" : " real"));
      CHECK(constraint_satisfied(pm, c, {}));
      CHECK(pm.m.rows() == 4);
      if (!complex_field) CHECK(is_real(pm.m, 0.0));
    }
  }
}

TEST_CASE("generator honors every default campaign set") {
  for (TheoremId id : all_theorem_ids()) {
    GeneratorSpec gs = default_campaign_spec(id);
    gs.n = 6;
    gs.k = 3;
    gs.seed = 99;
    const PartitionedMatrix pm = generate(gs);
    for (Constraint c : gs.constraints) {
      INFO(format_theorem_id(id) << " / " << format_constraint(c));
      CHECK(constraint_satisfied(pm, c, {}));
    }
  }
}

TEST_CASE("generator rank targets and validation") {
  GeneratorSpec gs;
  gs.n = 5;
  gs.k = 3;
  gs.rank_a = 2;
  gs.rank_d = 1;
  gs.seed = 3;
  const PartitionedMatrix pm = generate(gs);
  CHECK(rank(pm.a()) == 2);
  CHECK(rank(pm.d()) == 1);

  GeneratorSpec bad = gs;
  bad.rank_a = 4;
  CHECK_THROWS_AS(generate(bad), DimensionError);
  bad = gs;
  bad.k = 9;
  CHECK_THROWS_AS(generate(bad), DimensionError);
  bad = gs;
  bad.constraints = {Constraint::range_C_in_F, Constraint::range_B_in_G};
  CHECK_THROWS_AS(generate(bad), GenerationError);
}

TEST_CASE("generator is deterministic in the seed") {
  GeneratorSpec gs;
  gs.n = 4;
  gs.k = 2;
  gs.constraints = {Constraint::A_ep};
  gs.seed = 2718;
  const PartitionedMatrix a = generate(gs);
  const PartitionedMatrix b = generate(gs);
  CHECK(equality_residual(a.m, b.m) == 0.0);
  gs.seed = 2719;
  const PartitionedMatrix c = generate(gs);
  CHECK(equality_residual(a.m, c.m) > 1e-6);
}

TEST_CASE("three-way equivalence on the refuting and conforming examples") {
  // refuting: all three clauses false -> confirms
  const PartitionedMatrix refute = make_partitioned(mat(2, 2, {0, 0, 1, 1}), 1);
  const TheoremReport r1 = check_theorem(TheoremId::T31_EQUIV, refute);
  CHECK(r1.classification == Classification::confirms);
  CHECK_FALSE(r1.details.at("pinv_equals_complement"));
  CHECK_FALSE(r1.details.at("projector_products"));
  CHECK_FALSE(r1.details.at("null_space_conditions"));

  // conforming: all three clauses true
  const PartitionedMatrix weaker = make_partitioned(
      mat(4, 4, {1, 1, 0, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 0, 1, 1}), 2);
  const TheoremReport r2 = check_theorem(TheoremId::T31_EQUIV, weaker);
  CHECK(r2.classification == Classification::confirms);
  CHECK(r2.details.at("pinv_equals_complement"));
  CHECK(r2.details.at("projector_products"));
  CHECK(r2.details.at("null_space_conditions"));
}

TEST_CASE("involution checker classifications") {
  const PartitionedMatrix good = make_partitioned(mat(2, 2, {2, 1, 1, 3}), 1);
  CHECK(check_theorem(TheoremId::T32_INVOLUTION, good).classification ==
        Classification::confirms);

  // single violated hypothesis: exploratory, reported as hypothesis_violated
  const PartitionedMatrix bad = make_partitioned(mat(2, 2, {0, 0, 1, 1}), 1);
  const TheoremReport r = check_theorem(TheoremId::T32_INVOLUTION, bad);
  CHECK(r.classification == Classification::hypothesis_violated);
  CHECK_FALSE(r.details.at("null_A_in_C"));
  CHECK(r.residuals.at("double_transform") > 1e-6);  // conclusion indeed fails
}

TEST_CASE("p-inheritance counterexamples classify as hypothesis_violated") {
  const TheoremReport r1 =
      check_theorem(TheoremId::T15_P_INHERIT, p_inherit_counterexample());
  CHECK(r1.classification == Classification::hypothesis_violated);
  CHECK_FALSE(r1.details.at("range_c_in_f"));
  CHECK(r1.details.at("m0_p_dagger"));
  CHECK_FALSE(r1.details.at("transform_p_dagger"));

  const TheoremReport r2 =
      check_theorem(TheoremId::T15_CONVERSE, p_inherit_transform());
  CHECK(r2.classification == Classification::hypothesis_violated);
  CHECK(r2.details.at("transform_p_dagger"));
  CHECK_FALSE(r2.details.at("m0_p_dagger"));
}

TEST_CASE("field guards on the real-only checkers") {
  Matrix m = mat(3, 3, {2, -2, 1, 2, -2, 1, -1, 1, -0.5});
  m(0, 0) = Complex(2, 1);
  const PartitionedMatrix pm = make_partitioned(m, 2);
  CHECK_THROWS_AS(check_theorem(TheoremId::T15_P_INHERIT, pm), FieldError);
  CHECK_THROWS_AS(check_theorem(TheoremId::T_GRAM, pm), FieldError);
}

TEST_CASE("almost-skew corollary on an engineered positive instance") {
  // A = [1] (EP), B + C^T = 0 in R(A); symmetric part has rank one
  const PartitionedMatrix pm = make_partitioned(mat(2, 2, {1, 1, -1, 0}), 1);
  const TheoremReport r = check_theorem(TheoremId::COR_ASKEW_A, pm);
  CHECK(r.classification == Classification::confirms);
  CHECK(r.hypotheses_satisfied);
  CHECK(r.details.at("askew_m"));
  CHECK(r.details.at("askew_transform"));
}

TEST_CASE("gram checker on engineered and raw instances") {
  // wide matrix with dependent trailing columns
  Matrix w(2, 2);
  w << 1, 2, 1, 2;
  const TheoremReport ok = check_theorem(TheoremId::T_GRAM, make_partitioned(w, 1));
  CHECK(ok.classification == Classification::confirms);
  CHECK(ok.hypotheses_satisfied);
  CHECK(ok.conclusion_holds);

  Matrix raw(2, 2);
  raw << 1, 0, 0, 1;
  const TheoremReport no = check_theorem(TheoremId::T_GRAM, make_partitioned(raw, 1));
  CHECK(no.classification == Classification::hypothesis_violated);
}

TEST_CASE("campaigns are reproducible and counterexample-free") {
  for (TheoremId id : {TheoremId::T31_EQUIV, TheoremId::T32_INVOLUTION,
                       TheoremId::T_RANK_A, TheoremId::T_EXCHANGE,
                       TheoremId::T_GRAM, TheoremId::COR_ASKEW_D}) {
    GeneratorSpec gs = default_campaign_spec(id);
    gs.seed = 42;
    const CampaignReport a = run_campaign(id, gs, 80);
    INFO(format_theorem_id(id));
    CHECK(a.counterexamples == 0);
    CHECK(a.generation_failures == 0);
    CHECK(a.trials == 80);

    const CampaignReport b = run_campaign(id, gs, 80);
    CHECK(a.confirms == b.confirms);
    CHECK(a.hypothesis_violated == b.hypothesis_violated);
    CHECK(a.worst_residuals == b.worst_residuals);
  }
}

TEST_CASE("complex campaigns stay counterexample-free") {
  for (TheoremId id : {TheoremId::T31_EQUIV, TheoremId::T33_MP_VIA_GPPT,
                       TheoremId::T_EP_EQUIV}) {
    GeneratorSpec gs = default_campaign_spec(id);
    gs.field = Field::complex_;
    gs.seed = 77;
    const CampaignReport rep = run_campaign(id, gs, 60);
    INFO(format_theorem_id(id));
    CHECK(rep.counterexamples == 0);
  }
}

TEST_CASE("paper fixtures all replay") {
  const auto frs = paper_fixtures();
  REQUIRE(frs.size() == 6);
  for (const auto& fr : frs) {
    INFO(fr.id);
    for (const auto& c : fr.checks) {
      INFO(c.name << " residual " << c.residual);
      CHECK(c.passed);
    }
    CHECK(fr.passed);
  }
}

TEST_CASE("fixture ids are the canonical six") {
  const auto frs = paper_fixtures();
  const std::vector<std::string> want = {"EX_REFUTE", "EX_WEAKER", "EX_REMARK",
                                         "EX_RANK_FAIL", "EX_P1", "EX_P2"};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(frs[i].id == want[i]);
}
