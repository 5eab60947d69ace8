#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmvop/types.hpp"
#include "qmvop/verify.hpp"

namespace qmvop::cli {

// one sampled object: a header of parameters and a numeric table
struct OutputRecord {
  std::string kind;  // weight, poly, ldu, recurrence, eigenvalue, report
  std::map<std::string, std::string> params;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;

  bool operator==(const OutputRecord&) const = default;
};

// shortest decimal form that parses back to the same double (17 significant digits)
std::string format_double(double v);

// "a:b:N", N >= 1 points with both endpoints; throws argument_error
std::vector<double> parse_grid(const std::string& text);

// "prefix(i,j)" column names, row-major
std::vector<std::string> matrix_columns(int rows, int cols, const std::string& prefix = "");
void append_matrix(std::vector<double>& row, const MatD& m);

std::string to_csv(const OutputRecord& r);
OutputRecord from_csv(const std::string& text);
nlohmann::ordered_json to_json(const OutputRecord& r);
OutputRecord from_json(const nlohmann::json& j);

// config keys mirror SuiteConfig field names; "tolerance" overrides every tolerance
SuiteConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json reports_to_json(const SuiteConfig& cfg, const std::vector<CheckReport>& reports,
                                       bool timings);

}  // namespace qmvop::cli
