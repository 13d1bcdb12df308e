#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <random>

#include "gppt/io.hpp"

using namespace gppt;

TEST_CASE("scalar formatting and parsing") {
  CHECK(parse_scalar("1.5") == Complex(1.5, 0));
  CHECK(parse_scalar("-2") == Complex(-2, 0));
  CHECK(parse_scalar("i") == Complex(0, 1));
  CHECK(parse_scalar("-i") == Complex(0, -1));
  CHECK(parse_scalar("2i") == Complex(0, 2));
  CHECK(parse_scalar("1e+5i") == Complex(0, 1e5));
  CHECK(parse_scalar("3+4i") == Complex(3, 4));
  CHECK(parse_scalar("3-4i") == Complex(3, -4));
  CHECK(parse_scalar("  3-4i ") == Complex(3, -4));
  CHECK(parse_scalar("3 -4i") == Complex(3, -4));
  CHECK(parse_scalar("-1.5e+10-2e-3i") == Complex(-1.5e10, -2e-3));
  CHECK(parse_scalar("1+i") == Complex(1, 1));
  CHECK(parse_scalar("1-i") == Complex(1, -1));

  CHECK_THROWS_AS(parse_scalar(""), ParseError);
  CHECK_THROWS_AS(parse_scalar("abc"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1+2"), ParseError);
  CHECK_THROWS_AS(parse_scalar("1 2"), ParseError);

  CHECK(format_scalar(Complex(1.5, 0)) == "1.5");
  CHECK(parse_scalar(format_scalar(Complex(3, -4))) == Complex(3, -4));
  CHECK(parse_scalar(format_scalar(Complex(0, 2))) == Complex(0, 2));
}

TEST_CASE("scalar round trip is exact") {
  std::mt19937_64 rng(606);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const Complex z(g(rng) * std::pow(10.0, t % 17 - 8),
                    t % 3 == 0 ? 0.0 : g(rng));
    const Complex back = parse_scalar(format_scalar(z));
    CHECK(back.real() == z.real());
    CHECK(back.imag() == z.imag());
  }
}

TEST_CASE("csv parse and write") {
  const Matrix m = parse_matrix_csv("# comment\n1,2\n\n3,4\n");
  REQUIRE(m.rows() == 2);
  CHECK(m(0, 1) == Complex(2, 0));
  CHECK(m(1, 0) == Complex(3, 0));

  CHECK_THROWS_AS(parse_matrix_csv("1,2\n3\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_csv(""), ParseError);
  CHECK_THROWS_AS(parse_matrix_csv("1,x\n"), ParseError);

  Matrix c(1, 2);
  c << Complex(1, -2), Complex(0, 3);
  const Matrix back = parse_matrix_csv(write_matrix_csv(c));
  CHECK(equality_residual(back, c) == 0.0);
}

TEST_CASE("csv round trip is exact on random data") {
  std::mt19937_64 rng(707);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    Matrix m(3, 4);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 4; ++j)
        m(i, j) = t % 2 ? Complex(g(rng), g(rng)) : Complex(g(rng), 0);
    const Matrix back = parse_matrix_csv(write_matrix_csv(m));
    REQUIRE(back.rows() == m.rows());
    CHECK((back.array() == m.array()).all());
  }
}

TEST_CASE("json matrix serialization") {
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  const nlohmann::json j = json_matrix(m, Index(1));
  CHECK(j.at("rows") == 2);
  CHECK(j.at("split") == 1);
  CHECK(j.at("entries").size() == 4);
  CHECK(j.at("entries")[0].is_number());  // real matrix stays flat

  const MatrixFile round = parse_matrix_json(j);
  CHECK(round.split.value() == 1);
  CHECK((round.m.array() == m.array()).all());

  Matrix c(1, 1);
  c(0, 0) = Complex(1, -1);
  const nlohmann::json jc = json_matrix(c);
  CHECK(jc.at("entries")[0].is_array());  // complex entries as [re, im]
  const MatrixFile roundc = parse_matrix_json(jc);
  CHECK(roundc.m(0, 0) == Complex(1, -1));
  CHECK_FALSE(roundc.split.has_value());
}

TEST_CASE("json parse validation") {
  CHECK_THROWS_AS(parse_matrix_json(nlohmann::json{{"rows", 2}}), ParseError);
  CHECK_THROWS_AS(parse_matrix_json(nlohmann::json{
                      {"rows", 2}, {"cols", 1}, {"entries", {1, 2, 3}}}),
                  ParseError);
  CHECK_THROWS_AS(parse_matrix_json(nlohmann::json{
                      {"rows", -1}, {"cols", 1}, {"entries", nlohmann::json::array()}}),
                  ParseError);
  CHECK_THROWS_AS(parse_matrix_json(nlohmann::json{
                      {"rows", 1}, {"cols", 1}, {"entries", {{1, 2, 3}}}}),
                  ParseError);
}

TEST_CASE("text sniffing picks the format") {
  CHECK(parse_matrix_text("1,2\n").m(0, 1) == Complex(2, 0));
  const MatrixFile mf =
      parse_matrix_text(R"({"rows":1,"cols":1,"entries":[5],"split":0})");
  CHECK(mf.m(0, 0) == Complex(5, 0));
  CHECK(mf.split.value() == 0);
  CHECK_THROWS_AS(parse_matrix_text("{not json"), ParseError);
}

TEST_CASE("file io round trip") {
  const std::string path = "/tmp/gppt_io_test_matrix.csv";
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, Complex(0, -2.5);
  write_text_file(path, write_matrix_csv(m));
  const MatrixFile mf = read_matrix_file(path);
  CHECK((mf.m.array() == m.array()).all());
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_matrix_file("/tmp/definitely_missing_gppt.csv"), ParseError);
}

TEST_CASE("tolerance config parsing") {
  const ToleranceConfig cfg = tolerance_from_json(
      nlohmann::json{{"eq_tol", 1e-8}, {"rank_tol_rel", 1e-12}, {"zero_floor", 1e-10}});
  CHECK(cfg.eq_tol == 1e-8);
  CHECK(cfg.rank_tol_rel == 1e-12);
  CHECK(cfg.zero_floor == 1e-10);
  CHECK_THROWS_AS(tolerance_from_json(nlohmann::json{{"eq_tol", -1.0}}), ParseError);
  CHECK_THROWS_AS(tolerance_from_json(nlohmann::json{{"eq_tol", "big"}}), ParseError);
  // absent keys keep defaults
  const ToleranceConfig d = tolerance_from_json(nlohmann::json::object());
  CHECK(d.eq_tol == ToleranceConfig{}.eq_tol);
}

TEST_CASE("report serializers carry the interesting fields") {
  PredicateVerdict v{true, 1e-12, 1e-9};
  const nlohmann::json jv = json_verdict(v);
  CHECK(jv.at("holds") == true);

  ClassVerdict member;
  member.is_member = true;
  CHECK_FALSE(json_class_verdict(member).contains("witness"));

  ClassVerdict non;
  non.is_member = false;
  non.witness = RealVector::Ones(2);
  non.residuals = RealVector::Zero(2);
  const nlohmann::json jn = json_class_verdict(non);
  CHECK(jn.at("witness").size() == 2);
}
