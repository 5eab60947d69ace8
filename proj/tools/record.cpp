#include "record.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace qmvop::cli {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) throw argument_error("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw argument_error("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() != 3) throw argument_error("grid must be a:b:N, got '" + text + "'");
  double a = parse_double(parts[0]), b = parse_double(parts[1]);
  int n = parse_int(parts[2]);
  if (!std::isfinite(a) || !std::isfinite(b)) throw argument_error("grid endpoints must be finite");
  if (n < 1) throw argument_error("grid needs at least one point");
  if (n > 1 && !(a < b)) throw argument_error("grid needs a < b");
  std::vector<double> xs(n);
  for (int k = 0; k < n; ++k) xs[k] = n == 1 ? a : (k == n - 1 ? b : a + (b - a) * k / (n - 1));
  return xs;
}

std::vector<std::string> matrix_columns(int rows, int cols, const std::string& prefix) {
  std::vector<std::string> c;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) c.push_back(prefix + "(" + std::to_string(i) + "," + std::to_string(j) + ")");
  return c;
}

void append_matrix(std::vector<double>& row, const MatD& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
}

std::string to_csv(const OutputRecord& r) {
  std::ostringstream os;
  os << "# kind=" << r.kind;
  for (const auto& [k, v] : r.params) os << ' ' << k << '=' << v;
  os << '\n';
  for (size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << '\n';
  for (const auto& row : r.data) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
  return os.str();
}

namespace {

// column names contain commas inside parentheses
std::vector<std::string> split_header(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : line) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

}  // namespace

OutputRecord from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  OutputRecord r;
  if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw argument_error("csv: missing header comment");
  for (const auto& tok : split(line.substr(2), ' ')) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw argument_error("csv: bad header token '" + tok + "'");
    std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
    if (k == "kind")
      r.kind = v;
    else
      r.params[k] = v;
  }
  if (!std::getline(is, line)) throw argument_error("csv: missing column line");
  r.columns = split_header(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& f : split(line, ',')) row.push_back(parse_double(f));
    if (row.size() != r.columns.size()) throw argument_error("csv: row width does not match the columns");
    r.data.push_back(std::move(row));
  }
  return r;
}

ordered_json to_json(const OutputRecord& r) {
  ordered_json j;
  j["kind"] = r.kind;
  ordered_json p = ordered_json::object();
  for (const auto& [k, v] : r.params) p[k] = v;
  p["columns"] = r.columns;
  j["params"] = p;
  ordered_json d = ordered_json::array();
  for (const auto& row : r.data) {
    ordered_json jr = ordered_json::array();
    // JSON has no inf/nan, so those travel as strings
    for (double v : row) {
      if (std::isfinite(v))
        jr.push_back(v);
      else
        jr.push_back(format_double(v));
    }
    d.push_back(jr);
  }
  j["data"] = d;
  return j;
}

OutputRecord from_json(const json& j) {
  OutputRecord r;
  r.kind = j.at("kind").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) {
    if (k == "columns")
      r.columns = v.get<std::vector<std::string>>();
    else
      r.params[k] = v.get<std::string>();
  }
  for (const auto& jr : j.at("data")) {
    std::vector<double> row;
    for (const auto& v : jr) row.push_back(v.is_string() ? parse_double(v.get<std::string>()) : v.get<double>());
    r.data.push_back(std::move(row));
  }
  return r;
}

SuiteConfig config_from_json(const json& j) {
  if (!j.is_object()) throw argument_error("config must be a JSON object");
  SuiteConfig c = default_suite_config();
  static const std::set<std::string> known = {
      "two_ells", "qs",         "max_degree", "lambda_min", "lambda_max", "quad_nodes", "ldu_grid", "poly_grid",
      "z_samples", "draws",     "asym_degree", "asym_q",    "seed",       "families",   "tolerance", "tolerances",
      "threads"};
  try {
    for (const auto& [k, v] : j.items())
      if (!known.count(k)) throw argument_error("config: unknown key '" + k + "'");
    auto get = [&](const char* k, auto& field) {
      if (j.contains(k)) field = j.at(k).get<std::decay_t<decltype(field)>>();
    };
    get("two_ells", c.two_ells);
    get("qs", c.qs);
    get("max_degree", c.max_degree);
    get("lambda_min", c.lambda_min);
    get("lambda_max", c.lambda_max);
    get("quad_nodes", c.quad_nodes);
    get("ldu_grid", c.ldu_grid);
    get("poly_grid", c.poly_grid);
    get("z_samples", c.z_samples);
    get("draws", c.draws);
    get("asym_degree", c.asym_degree);
    get("asym_q", c.asym_q);
    get("seed", c.seed);
    get("families", c.families);
    get("threads", c.threads);
    if (j.contains("tolerance")) {
      double t = j.at("tolerance").get<double>();
      for (auto& [k, v] : c.tolerances) v = t;
    }
    if (j.contains("tolerances"))
      for (const auto& [k, v] : j.at("tolerances").items()) {
        if (!c.tolerances.count(k)) throw argument_error("config: unknown check id '" + k + "'");
        c.tolerances[k] = v.get<double>();
      }
  } catch (const json::exception& e) {
    throw argument_error(std::string("config: ") + e.what());
  }
  for (int t : c.two_ells)
    if (t < 0) throw argument_error("config: two_ells must be nonnegative");
  for (double q : c.qs)
    if (!(q > 0 && q < 1)) throw argument_error("config: every q must lie in (0,1)");
  if (!(c.asym_q > 0 && c.asym_q < 1)) throw argument_error("config: asym_q must lie in (0,1)");
  if (c.max_degree < 0 || c.lambda_min > c.lambda_max || c.quad_nodes < 1 || c.ldu_grid < 2 || c.poly_grid < 2 ||
      c.z_samples < 1 || c.draws < 0 || c.asym_degree < 1 || c.threads < 0)
    throw argument_error("config: grid sizes out of range");
  const auto fams = suite_families();
  for (const auto& f : c.families) {
    bool ok = std::find(fams.begin(), fams.end(), f) != fams.end() || (f.size() == 1 && f[0] >= 'a' && f[0] <= 'j');
    if (!ok) throw argument_error("config: unknown family '" + f + "'");
  }
  for (const auto& [k, v] : c.tolerances)
    if (!(v >= 0) || !std::isfinite(v)) throw argument_error("config: tolerance for " + k + " must be finite and >= 0");
  return c;
}

ordered_json reports_to_json(const SuiteConfig& cfg, const std::vector<CheckReport>& reports, bool timings) {
  size_t failed = 0;
  for (const auto& r : reports) failed += !r.pass;
  ordered_json j;
  j["kind"] = "report";
  j["params"] = {{"seed", cfg.seed},
                 {"two_ells", cfg.two_ells},
                 {"qs", cfg.qs},
                 {"families", cfg.families},
                 {"checks", reports.size()},
                 {"failed", failed},
                 {"pass", failed == 0}};
  ordered_json d = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json e;
    e["id"] = r.id;
    e["family"] = r.family;
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : r.params) p[k] = std::isfinite(v) ? ordered_json(v) : ordered_json(format_double(v));
    e["params"] = p;
    e["residual"] = std::isfinite(r.residual) ? ordered_json(r.residual) : ordered_json(format_double(r.residual));
    e["tol"] = r.tol;
    e["pass"] = r.pass;
    if (!r.error.empty()) e["error"] = r.error;
    if (timings) e["runtime"] = r.runtime;
    d.push_back(e);
  }
  j["data"] = d;
  return j;
}

}  // namespace qmvop::cli
