#ifndef REVSHARE_OUTPUT_HPP
#define REVSHARE_OUTPUT_HPP

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "revshare/bargaining.hpp"
#include "revshare/compare.hpp"
#include "revshare/model.hpp"
#include "revshare/verify.hpp"

namespace revshare::output {

using Json = nlohmann::ordered_json;

/// 12 significant digits, "%.12g".
std::string format_number(double v);
/// v rounded through format_number; non-finite values become null.
Json number(double v);

/// {contract, efforts, demand, utilities, residuals, degenerate}.
Json outcome_body(const EquilibriumOutcome& out);
Json report_json(const compare::ComparisonReport& rep);
Json shapley_json(const bargaining::ShapleyReport& rep);
Json checks_json(const std::vector<verify::CheckResult>& checks);

/// Dotted keys, arrays indexed from 1: {"c": [1, 2]} -> c.1, c.2.
std::vector<std::pair<std::string, std::string>> flatten(const Json& j);

/// Header is the union of keys in first-seen order; missing cells are empty.
std::string to_csv(const std::vector<Json>& rows);
/// Aligned columns, same layout as to_csv.
std::string to_table(const std::vector<Json>& rows);
/// One "key  value" line per flattened key.
std::string to_key_value(const Json& j);

struct Series {
  std::string name;
  std::vector<double> y;
};

/// Minimal SVG line chart, one polyline per series, linear axes.
std::string svg_plot(const std::string& title, const std::string& x_label,
                     const std::vector<double>& x, const std::vector<Series>& series);

}  // namespace revshare::output

#endif  // REVSHARE_OUTPUT_HPP
