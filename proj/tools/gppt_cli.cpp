// Command-line front end: matrix I/O, pinv / transforms / Schur complements,
// predicate checks, cone-class runs, and verification campaigns.
//
// Exit codes: 0 success/confirmed, 1 counterexample or witness found,
// 2 usage/parse, 3 numeric failure, 4 size cap.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gppt/io.hpp"

namespace {

using namespace gppt;

struct RunConfig {
  ToleranceConfig tol;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 1000;
  Index size_cap = 8;
  std::string output;  // empty: stdout
};

void emit(const RunConfig& rc, const nlohmann::json& j) {
  const std::string text = j.dump(2) + "\n";
  if (rc.output.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_text_file(rc.output, text);
}

Index resolve_split(const MatrixFile& mf, std::optional<Index> flag) {
  if (flag) return *flag;
  if (mf.split) return *mf.split;
  throw ParseError("no partition given: pass --split or store a split field in the file");
}

RealMatrix as_real(const Matrix& m, const ToleranceConfig& cfg, const char* who) {
  if (!is_real(m, cfg.eq_tol))
    throw FieldError(std::string(who) + ": requires a real matrix");
  return real_part(m);
}

RealVector read_vector(const std::string& path) {
  const MatrixFile mf = read_matrix_file(path);
  if (mf.m.cols() == 1 || mf.m.rows() <= 1) {
    const Matrix v = mf.m.cols() == 1 ? mf.m : mf.m.transpose();
    RealVector out(v.rows());
    for (Index i = 0; i < v.rows(); ++i) {
      if (v(i, 0).imag() != 0.0) throw FieldError("vector file: requires real entries");
      out(i) = v(i, 0).real();
    }
    return out;
  }
  throw ParseError("vector file: expected a single row or column");
}

int cmd_pinv(const RunConfig& rc, const std::string& input) {
  const MatrixFile mf = read_matrix_file(input);
  require_finite(mf.m, "input");
  const Matrix g = pinv(mf.m, rc.tol);
  const GinverseClass cls = classify_ginverse(mf.m, g, rc.tol);
  nlohmann::json out = json_matrix(g, mf.split);
  out["penrose_residuals"] = cls.residuals;
  emit(rc, out);
  return 0;
}

int cmd_gppt(const RunConfig& rc, const std::string& input, const std::string& wrt,
             std::optional<Index> split) {
  const MatrixFile mf = read_matrix_file(input);
  require_finite(mf.m, "input");
  const PartitionedMatrix pm = make_partitioned(mf.m, resolve_split(mf, split));
  const PartitionedMatrix p = wrt == "A" ? gppt_a(pm, rc.tol) : gppt_d(pm, rc.tol);
  nlohmann::json out = json_matrix(p.m, p.k);
  out["wrt"] = wrt;
  emit(rc, out);
  return 0;
}

int cmd_schur(const RunConfig& rc, const std::string& input, std::optional<Index> split) {
  const MatrixFile mf = read_matrix_file(input);
  require_finite(mf.m, "input");
  const PartitionedMatrix pm = make_partitioned(mf.m, resolve_split(mf, split));
  const SchurPair sp = schur_complements(pm, rc.tol);
  emit(rc, nlohmann::json{{"split", pm.k},
                          {"f", json_matrix(sp.f)},
                          {"g", json_matrix(sp.g)}});
  return 0;
}

int cmd_check(const RunConfig& rc, const std::string& input, const std::string& predicate,
              const std::string& operand, const std::string& method, int samples) {
  const MatrixFile mf = read_matrix_file(input);
  require_finite(mf.m, "input");
  nlohmann::json out{{"predicate", predicate}};
  int code = 0;

  if (predicate == "ep") {
    out["verdict"] = json_verdict(is_range_hermitian(mf.m, rc.tol));
  } else if (predicate == "almost-skew") {
    const AlmostSkewVerdict v = is_almost_skew_hermitian(mf.m, rc.tol);
    out["verdict"] = {{"holds", v.holds}, {"rank_sym", v.rank_sym}};
  } else if (predicate == "p-dagger" || predicate == "r-dagger") {
    const RealMatrix m = as_real(mf.m, rc.tol, "check");
    ClassVerdict v;
    if (predicate == "p-dagger") {
      if (method == "falsifier")
        v = is_p_dagger_falsifier(m, rc.tol, samples, rc.seed);
      else
        v = is_p_dagger(m, rc.tol, rc.size_cap);
    } else {
      if (method == "falsifier")
        throw ParseError("randomized mode covers the p-dagger class only");
      v = is_r_dagger(m, rc.tol, rc.size_cap);
    }
    out["verdict"] = json_class_verdict(v);
    code = v.is_member ? 0 : 1;
  } else if (predicate == "null-included" || predicate == "range-included") {
    if (operand.empty())
      throw ParseError("inclusion predicates need --operand with the second matrix");
    const MatrixFile op = read_matrix_file(operand);
    require_finite(op.m, "operand");
    const PredicateVerdict v = predicate == "null-included"
                                   ? null_space_included(mf.m, op.m, rc.tol)
                                   : range_included(mf.m, op.m, rc.tol);
    out["verdict"] = json_verdict(v);
  } else {
    throw ParseError("unknown predicate: " + predicate);
  }
  emit(rc, out);
  return code;
}

int cmd_verify(const RunConfig& rc, std::string theorem, bool all, bool fixtures,
               const std::string& field, Index n, Index k) {
  if (theorem == "FIXTURES") {
    fixtures = true;
    theorem.clear();
  }
  if (fixtures) {
    const auto frs = paper_fixtures(rc.tol);
    bool passed = true;
    for (const auto& fr : frs) passed = passed && fr.passed;
    nlohmann::json out{{"fixtures", json_fixture_results(frs)}, {"passed", passed}};
    emit(rc, out);
    return passed ? 0 : 1;
  }

  std::vector<TheoremId> ids;
  if (all) {
    ids = all_theorem_ids();
  } else if (!theorem.empty()) {
    ids.push_back(parse_theorem_id(theorem));
  } else {
    throw ParseError("verify: pass --theorem <id>, --all, or --fixtures");
  }

  nlohmann::json reports = nlohmann::json::array();
  int counterexamples = 0;
  for (TheoremId id : ids) {
    GeneratorSpec gs = default_campaign_spec(id);
    gs.seed = rc.seed;
    if (!field.empty()) gs.field = parse_field(field);
    if (n > 0) {
      gs.n = n;
      gs.k = k >= 0 ? k : n / 2;
    }
    const CampaignReport rep = run_campaign(id, gs, rc.trials, rc.tol);
    counterexamples += rep.counterexamples;
    reports.push_back(json_campaign_report(rep));
  }
  nlohmann::json out{{"campaigns", reports}, {"counterexamples", counterexamples}};
  emit(rc, out);
  return counterexamples == 0 ? 0 : 1;
}

int cmd_lcp(const RunConfig& rc, const std::string& input, const std::string& qvec_path,
            bool restrict_rows) {
  const MatrixFile mf = read_matrix_file(input);
  require_finite(mf.m, "input");
  LcpInstance inst;
  inst.q_matrix = as_real(mf.m, rc.tol, "lcp");
  inst.q_vector = qvec_path.empty() ? RealVector(RealVector::Zero(inst.q_matrix.rows()))
                                    : read_vector(qvec_path);
  const auto sols = solve_lcp_enumerate(inst, rc.tol, restrict_rows, rc.size_cap);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : sols) arr.push_back(json_real_vector(s));
  emit(rc, nlohmann::json{{"solutions", arr},
                          {"restrict_row_space", restrict_rows}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace gppt;

  CLI::App app{"generalized principal pivot transform toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  RunConfig rc;
  std::string config_path;
  double eq_tol = -1, rank_tol_rel = -1, zero_floor = -1;
  std::uint64_t seed_flag = 0;
  bool seed_given = false;
  app.add_option("--config", config_path, "JSON config with tolerances/seed/trials");
  app.add_option("--eq-tol", eq_tol, "equality tolerance (default 1e-9)");
  app.add_option("--rank-tol-rel", rank_tol_rel, "relative rank cutoff factor");
  app.add_option("--zero-floor", zero_floor, "absolute singular value floor (default 0)");
  app.add_option("--seed", seed_flag, "RNG seed")->each([&](const std::string&) { seed_given = true; });
  app.add_option("--trials", rc.trials, "campaign trials per theorem (default 1000)");
  app.add_option("--size-cap", rc.size_cap, "exact-classifier size cap (default 8)");
  app.add_option("-o,--output", rc.output, "write output to this file instead of stdout");

  std::string input, operand, wrt = "A", predicate, method = "exact", theorem, field, qvec;
  Index split_flag = -1, size_n = 0, split_k = -1;
  bool all = false, fixtures = false, restrict_rows = false;
  int samples = 10000;

  auto* sub_pinv = app.add_subcommand("pinv", "Moore-Penrose inverse with Penrose residuals");
  sub_pinv->fallthrough();
  sub_pinv->add_option("input", input, "matrix file (csv or json)")->required();

  auto* sub_gppt = app.add_subcommand("gppt", "generalized principal pivot transform");
  sub_gppt->fallthrough();
  sub_gppt->add_option("input", input, "matrix file")->required();
  sub_gppt->add_option("--wrt", wrt, "pivot block: A or D")
      ->check(CLI::IsMember({"A", "D"}));
  sub_gppt->add_option("--split", split_flag, "partition index k");

  auto* sub_schur = app.add_subcommand("schur", "both generalized Schur complements");
  sub_schur->fallthrough();
  sub_schur->add_option("input", input, "matrix file")->required();
  sub_schur->add_option("--split", split_flag, "partition index k");

  auto* sub_check = app.add_subcommand("check", "evaluate a predicate on a matrix");
  sub_check->fallthrough();
  sub_check->add_option("input", input, "matrix file")->required();
  sub_check->add_option("--predicate", predicate,
                        "ep | almost-skew | p-dagger | r-dagger | null-included | range-included")
      ->required();
  sub_check->add_option("--operand", operand, "second matrix for inclusion predicates");
  sub_check->add_option("--method", method, "exact | falsifier")
      ->check(CLI::IsMember({"exact", "falsifier"}));
  sub_check->add_option("--samples", samples, "falsifier samples (default 10000)");

  auto* sub_verify = app.add_subcommand("verify", "replay fixtures or run campaigns");
  sub_verify->fallthrough();
  sub_verify->add_option("--theorem", theorem, "theorem id, or FIXTURES");
  sub_verify->add_flag("--all", all, "campaign over every checker");
  sub_verify->add_flag("--fixtures", fixtures, "replay the worked examples");
  sub_verify->add_option("--field", field, "real | complex (overrides default)");
  sub_verify->add_option("--size", size_n, "fixed instance size n (default: cycle)");
  sub_verify->add_option("--split", split_k, "fixed partition index k");

  auto* sub_lcp = app.add_subcommand("lcp", "enumerate LCP solutions by support");
  sub_lcp->fallthrough();
  sub_lcp->add_option("input", input, "square real matrix file")->required();
  sub_lcp->add_option("--qvec", qvec, "right-hand-side vector file (default zero)");
  sub_lcp->add_flag("--restrict-row-space", restrict_rows,
                    "confine solutions to the row space");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ParseError("cannot open config " + config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const std::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
      }
      rc.tol = tolerance_from_json(j);
      if (j.contains("seed")) {
        rc.seed = j.at("seed").get<std::uint64_t>();
        rc.seed_set = true;
      }
      if (j.contains("trials")) rc.trials = j.at("trials").get<int>();
      if (j.contains("size_cap")) rc.size_cap = j.at("size_cap").get<Index>();
    }
    if (eq_tol > 0) rc.tol.eq_tol = eq_tol;
    if (rank_tol_rel > 0) rc.tol.rank_tol_rel = rank_tol_rel;
    if (zero_floor >= 0) rc.tol.zero_floor = zero_floor;
    if (seed_given) {
      rc.seed = seed_flag;
      rc.seed_set = true;
    }
    if (!rc.seed_set) {
      if (const char* env = std::getenv("GPPT_SEED")) {
        try {
          rc.seed = std::stoull(env);
        } catch (const std::exception&) {
          throw ParseError("GPPT_SEED: not an unsigned integer");
        }
      }
    }
    if (rc.trials < 0) throw ParseError("--trials must be nonnegative");

    std::optional<Index> split;
    if (split_flag >= 0) split = split_flag;

    if (sub_pinv->parsed()) return cmd_pinv(rc, input);
    if (sub_gppt->parsed()) return cmd_gppt(rc, input, wrt, split);
    if (sub_schur->parsed()) return cmd_schur(rc, input, split);
    if (sub_check->parsed())
      return cmd_check(rc, input, predicate, operand, method, samples);
    if (sub_verify->parsed())
      return cmd_verify(rc, theorem, all, fixtures, field, size_n, split_k);
    if (sub_lcp->parsed()) return cmd_lcp(rc, input, qvec, restrict_rows);
    return 2;
  } catch (const SizeCapError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const DimensionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const FieldError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const GenerationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
