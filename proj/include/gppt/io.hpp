#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "lcp.hpp"
#include "theorems.hpp"

namespace gppt {

/// A matrix plus an optional partition index, as read from disk. Two
/// on-disk forms: CSV (rows of comma-separated scalars, complex entries as
/// "a+bi") and JSON ({rows, cols, entries, split?}); scalars are written
/// with 17 significant digits so write-then-read is exact.
struct MatrixFile {
  Matrix m;
  std::optional<Index> split;
};

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw ParseError(std::string(what) + ": trailing junk in '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + ": cannot parse number '" + s + "'");
  }
}

}  // namespace detail

inline std::string format_scalar(const Complex& z) {
  if (z.imag() == 0.0) return detail::format_double(z.real());
  std::string out = detail::format_double(z.real());
  const std::string im = detail::format_double(z.imag());
  if (!im.empty() && im[0] != '-' && im[0] != '+') out += '+';
  out += im;
  out += 'i';
  return out;
}

/// Accepts "3", "-2.5e-3", "1+2i", "-1.5e+10-2e-3i", "2i", "i", "-i".
/// The split between real and imaginary parts is the last sign that is not
/// an exponent sign and not the leading sign.
inline Complex parse_scalar(std::string token) {
  const auto strip = [](std::string& s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  };
  strip(token);
  if (token.empty()) throw ParseError("empty scalar token");
  if (token.back() != 'i' && token.back() != 'I')
    return Complex(detail::parse_double(token, "scalar"), 0.0);

  std::string body = token.substr(0, token.size() - 1);
  std::size_t cut = std::string::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    const char ch = body[p];
    if (ch != '+' && ch != '-') continue;
    const char prev = body[p - 1];
    if (prev == 'e' || prev == 'E') continue;  // exponent sign
    cut = p;
    break;
  }
  std::string re_str, im_str;
  if (cut == std::string::npos) {
    re_str = "0";
    im_str = body;
  } else {
    re_str = body.substr(0, cut);
    im_str = body.substr(cut);
  }
  if (im_str.empty() || im_str == "+") im_str = "1";
  else if (im_str == "-") im_str = "-1";
  return Complex(detail::parse_double(re_str, "scalar (real part)"),
                 detail::parse_double(im_str, "scalar (imag part)"));
}

inline Matrix parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = line;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    if (t.empty() || t[0] == '#') continue;
    std::vector<Complex> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(parse_scalar(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("csv: ragged rows (" + std::to_string(row.size()) + " vs " +
                       std::to_string(rows.front().size()) + " cells)");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("csv: no data rows");
  const Index r = static_cast<Index>(rows.size());
  const Index c = static_cast<Index>(rows.front().size());
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

inline std::string write_matrix_csv(const Matrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_scalar(m(i, j));
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json json_matrix(const Matrix& m, std::optional<Index> split = {}) {
  nlohmann::json entries = nlohmann::json::array();
  const bool complex_entries = !is_real(m, 0.0);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      if (complex_entries)
        entries.push_back({z.real(), z.imag()});
      else
        entries.push_back(z.real());
    }
  nlohmann::json out{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
  if (split) out["split"] = *split;
  return out;
}

inline MatrixFile parse_matrix_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("json matrix: need object with rows, cols, entries");
  const Index r = j.at("rows").get<Index>();
  const Index c = j.at("cols").get<Index>();
  if (r < 0 || c < 0) throw ParseError("json matrix: negative dimensions");
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<Index>(entries.size()) != r * c)
    throw ParseError("json matrix: entries must hold rows*cols values");
  MatrixFile mf;
  mf.m = Matrix(r, c);
  Index idx = 0;
  for (const auto& e : entries) {
    Complex z;
    if (e.is_number()) {
      z = Complex(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      z = Complex(e[0].get<double>(), e[1].get<double>());
    } else {
      throw ParseError("json matrix: entry must be a number or [re, im]");
    }
    mf.m(idx / c, idx % c) = z;
    ++idx;
  }
  if (j.contains("split")) {
    const Index k = j.at("split").get<Index>();
    if (k < 0) throw ParseError("json matrix: negative split");
    mf.split = k;
  }
  return mf;
}

inline MatrixFile parse_matrix_text(const std::string& text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const std::exception& e) {
        throw ParseError(std::string("json matrix: ") + e.what());
      }
      return parse_matrix_json(j);
    }
    break;
  }
  return MatrixFile{parse_matrix_csv(text), std::nullopt};
}

inline MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str());
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

// ---- report serialization ----------------------------------------------

inline nlohmann::json json_verdict(const PredicateVerdict& v) {
  return {{"holds", v.holds}, {"residual", v.residual}, {"threshold", v.threshold}};
}

inline nlohmann::json json_ginverse(const GinverseClass& g) {
  return {{"eq1", g.satisfies_1},
          {"eq2", g.satisfies_2},
          {"eq3", g.satisfies_3},
          {"eq4", g.satisfies_4},
          {"is_moore_penrose", g.is_moore_penrose()},
          {"residuals", g.residuals}};
}

inline nlohmann::json json_real_vector(const RealVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline nlohmann::json json_class_verdict(const ClassVerdict& v) {
  nlohmann::json out{{"is_member", v.is_member},
                     {"method", v.method == DecisionMethod::exact_enumeration
                                    ? "exact_enumeration"
                                    : "randomized_falsifier"}};
  if (!v.is_member) {
    out["witness"] = json_real_vector(v.witness);
    out["residuals"] = json_real_vector(v.residuals);
  }
  return out;
}

inline nlohmann::json json_theorem_report(const TheoremReport& r) {
  return {{"theorem_id", format_theorem_id(r.id)},
          {"instance_seed", r.instance_seed},
          {"hypotheses_satisfied", r.hypotheses_satisfied},
          {"conclusion_holds", r.conclusion_holds},
          {"classification", format_classification(r.classification)},
          {"residuals", r.residuals},
          {"details", r.details}};
}

inline nlohmann::json json_campaign_report(const CampaignReport& r) {
  return {{"theorem_id", format_theorem_id(r.id)},
          {"trials", r.trials},
          {"confirms", r.confirms},
          {"hypothesis_violated", r.hypothesis_violated},
          {"counterexamples", r.counterexamples},
          {"generation_failures", r.generation_failures},
          {"worst_residuals", r.worst_residuals},
          {"counterexample_seeds", r.counterexample_seeds}};
}

inline nlohmann::json json_fixture_results(const std::vector<FixtureResult>& frs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& fr : frs) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : fr.checks)
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}});
    arr.push_back({{"id", fr.id}, {"passed", fr.passed}, {"checks", checks}});
  }
  return arr;
}

/// Tolerances (and only tolerances) from a JSON config object.
inline ToleranceConfig tolerance_from_json(const nlohmann::json& j) {
  ToleranceConfig cfg;
  try {
    if (j.contains("rank_tol_rel")) cfg.rank_tol_rel = j.at("rank_tol_rel").get<double>();
    if (j.contains("eq_tol")) cfg.eq_tol = j.at("eq_tol").get<double>();
    if (j.contains("zero_floor")) cfg.zero_floor = j.at("zero_floor").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (cfg.rank_tol_rel <= 0 || cfg.eq_tol <= 0 || cfg.zero_floor < 0)
    throw ParseError("config: tolerances must be positive (zero_floor may be 0)");
  return cfg;
}

}  // namespace gppt
