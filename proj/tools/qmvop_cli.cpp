// qmvop: evaluate the matrix polynomials and run the verification suite

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qmvop/mvop.hpp"
#include "qmvop/qdiff.hpp"
#include "qmvop/verify.hpp"
#include "record.hpp"

namespace {

using namespace qmvop;
using qmvop::cli::OutputRecord;

constexpr int exit_pass = 0, exit_fail = 1, exit_usage = 2;

struct EvalArgs {
  int two_ell = 0;
  double q = 0.5;
  int n = 0;
  int which = 1;
  std::optional<double> x;
  std::string grid;
  std::string format = "csv";
  std::string output;
};

Precision precision_from_env() {
  const char* v = std::getenv("QMVOP_PRECISION");
  if (!v || std::string(v).empty() || std::string(v) == "double") return Precision::machine_double;
  if (std::string(v) == "extended") return Precision::extended;
  throw argument_error("QMVOP_PRECISION must be 'double' or 'extended'");
}

template <class T>
MatD to_mat_d(const Mat<T>& m) {
  MatD r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
  return r;
}

std::vector<double> sample_points(const EvalArgs& a) {
  if (a.x && !a.grid.empty()) throw argument_error("give either --x or --grid, not both");
  if (a.x) return {*a.x};
  if (a.grid.empty()) throw argument_error("one of --x or --grid is required");
  return cli::parse_grid(a.grid);
}

template <class T>
OutputRecord eval_kind(const std::string& cmd, const EvalArgs& a) {
  const HalfInt ell(a.two_ell);
  const int d = ell.dim();
  const T q(a.q);
  OutputRecord r;
  r.params["two_ell"] = std::to_string(a.two_ell);
  r.params["q"] = cli::format_double(a.q);
  r.params["precision"] = std::is_same_v<T, double> ? "double" : "extended";
  if (cmd == "weight" || cmd == "poly" || cmd == "ldu") {
    r.kind = cmd;
    if (cmd == "poly") r.params["n"] = std::to_string(a.n);
    r.columns = {"x"};
    if (cmd == "ldu") {
      for (const char* pre : {"L", "T", "Linv"})
        for (auto& c : cli::matrix_columns(d, d, pre)) r.columns.push_back(c);
    } else {
      for (auto& c : cli::matrix_columns(d, d)) r.columns.push_back(c);
    }
    for (double x : sample_points(a)) {
      std::vector<double> row{x};
      const T xt(x);
      if (cmd == "weight") {
        cli::append_matrix(row, to_mat_d<T>(weight_matrix(ell, q, xt)));
      } else if (cmd == "poly") {
        cli::append_matrix(row, to_mat_d<T>(pn_eval(ell, a.n, q, xt)));
      } else {
        LDUFactors<T> f = ldu_factors(ell, q, xt);
        cli::append_matrix(row, to_mat_d<T>(f.L));
        cli::append_matrix(row, to_mat_d<T>(f.T_));
        cli::append_matrix(row, to_mat_d<T>(f.Linv));
      }
      r.data.push_back(std::move(row));
    }
  } else if (cmd == "recurrence") {
    r.kind = "recurrence";
    r.params["n"] = std::to_string(a.n);
    RecurrenceCoeffs<T> rc = recurrence_coeffs(ell, a.n, q);
    std::vector<double> row;
    for (const char* pre : {"A", "B", "C"})
      for (auto& c : cli::matrix_columns(d, d, pre)) r.columns.push_back(c);
    cli::append_matrix(row, to_mat_d<T>(rc.A));
    cli::append_matrix(row, to_mat_d<T>(rc.B));
    cli::append_matrix(row, to_mat_d<T>(rc.C));
    r.data.push_back(std::move(row));
  } else {
    // closed-form diagonal, always evaluated in double
    r.kind = "eigenvalue";
    r.params["n"] = std::to_string(a.n);
    r.params["which"] = std::to_string(a.which);
    r.params["precision"] = "double";
    r.columns = cli::matrix_columns(d, d);
    std::vector<double> row;
    cli::append_matrix(row, lambda_matrix(ell, a.n, QContext(a.q), a.which));
    r.data.push_back(std::move(row));
  }
  return r;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw argument_error("cannot write '" + path + "'");
  os << text;
}

int run_eval(const std::string& cmd, const EvalArgs& a) {
  QContext(a.q).validate();
  if (a.two_ell < 0) throw argument_error("two_ell must be nonnegative");
  if (a.n < 0) throw argument_error("n must be nonnegative");
  OutputRecord r = precision_from_env() == Precision::extended ? eval_kind<ext_real>(cmd, a)
                                                                 : eval_kind<double>(cmd, a);
  write_text(a.output, a.format == "json" ? cli::to_json(r).dump(1) + "\n" : cli::to_csv(r));
  return exit_pass;
}

struct CheckArgs {
  std::string config, report;
  bool timings = false;
};

int run_check(const CheckArgs& a) {
  precision_from_env();
  SuiteConfig cfg = default_suite_config();
  if (!a.config.empty()) {
    std::ifstream is(a.config);
    if (!is) throw argument_error("cannot read config '" + a.config + "'");
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::exception& e) {
      throw argument_error("config '" + a.config + "' is not valid JSON: " + e.what());
    }
    cfg = cli::config_from_json(j);
  }
  std::vector<CheckReport> reports = run_suite(cfg);
  size_t failed = 0;
  for (const auto& r : reports) {
    if (r.pass) continue;
    ++failed;
    std::cout << "FAIL " << r.id << " residual=" << cli::format_double(r.residual)
              << " tol=" << cli::format_double(r.tol);
    for (const auto& [k, v] : r.params) std::cout << ' ' << k << '=' << cli::format_double(v);
    if (!r.error.empty()) std::cout << " error=\"" << r.error << '"';
    std::cout << '\n';
  }
  std::cout << reports.size() << " checks, " << failed << " failed\n";
  if (!a.report.empty()) write_text(a.report, cli::reports_to_json(cfg, reports, a.timings).dump(1) + "\n");
  return failed == 0 ? exit_pass : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix-valued q-orthogonal polynomials: evaluation and verification"};
  app.require_subcommand(1);

  EvalArgs ea;
  const std::vector<std::pair<std::string, std::string>> eval_cmds = {
      {"weight", "weight matrix W(x)"},
      {"poly", "monic polynomial P_n(x)"},
      {"ldu", "LDU factors L(x), T(x), L(x)^{-1}"},
      {"recurrence", "recurrence coefficients A_n, B_n, C_n"},
      {"lambda", "eigenvalue matrix Lambda_n(which)"}};
  for (const auto& [name, help] : eval_cmds) {
    CLI::App* sc = app.add_subcommand(name, help);
    sc->add_option("--two-ell", ea.two_ell, "2l, a nonnegative integer")->required();
    sc->add_option("--q", ea.q, "deformation parameter in (0,1)")->required();
    if (name == "poly" || name == "recurrence" || name == "lambda") sc->add_option("--n", ea.n, "degree");
    if (name == "lambda") sc->add_option("--which", ea.which, "1 or 2")->check(CLI::IsMember({1, 2}));
    if (name == "weight" || name == "poly" || name == "ldu") {
      sc->add_option("--x", ea.x, "single sample point");
      sc->add_option("--grid", ea.grid, "a:b:N, N points including both ends");
    }
    sc->add_option("--format", ea.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("-o,--output", ea.output, "output file, stdout by default");
  }

  CheckArgs ca;
  CLI::App* chk = app.add_subcommand("check", "run the verification suite");
  chk->add_option("--config", ca.config, "JSON config; defaults to the desk-scale grid");
  chk->add_option("--report", ca.report, "write the JSON report here");
  chk->add_flag("--timings", ca.timings, "include per-check runtimes in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (chk->parsed()) return run_check(ca);
    for (const auto& [name, help] : eval_cmds)
      if (app.got_subcommand(name)) return run_eval(name, ea);
  } catch (const argument_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_fail;
  }
  return exit_usage;
}
