#include "revshare/compare.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "revshare/closed_form.hpp"
#include "revshare/errors.hpp"

namespace revshare::compare {
namespace {

bool Evaluate(double gap, Relation rel, double tol) {
  switch (rel) {
    case Relation::kGreater: return gap > tol;
    case Relation::kGreaterEqual: return gap >= -tol;
    case Relation::kEqual: return std::abs(gap) <= tol;
  }
  return false;
}

ScenarioMetrics Metrics(std::string label, const EquilibriumOutcome& out) {
  ScenarioMetrics m{std::move(label), out.degenerate, {}};
  m.values = {{"total_effort", out.total_effort},
              {"total_share", out.contract.total_share()},
              {"cp_utility", out.cp_utility}};
  for (std::size_t i = 0; i < out.isp_utilities.size(); ++i) {
    m.values.emplace_back("isp" + std::to_string(i + 1) + "_utility", out.isp_utilities[i]);
  }
  return m;
}

}  // namespace

const char* to_string(Relation rel) {
  switch (rel) {
    case Relation::kGreater: return ">";
    case Relation::kGreaterEqual: return ">=";
    case Relation::kEqual: return "==";
  }
  return "?";
}

double ScenarioMetrics::get(const std::string& metric) const {
  for (const auto& [key, value] : values) {
    if (key == metric) return value;
  }
  throw std::out_of_range("no metric '" + metric + "' in scenario " + label);
}

const ScenarioMetrics& ComparisonReport::scenario(const std::string& label) const {
  for (const auto& s : scenarios) {
    if (s.label == label) return s;
  }
  throw std::out_of_range("no scenario '" + label + "' in report " + name);
}

void ComparisonReport::add_ordering(const std::string& metric, const std::string& lhs,
                                    Relation relation, const std::string& rhs,
                                    double tolerance) {
  Ordering o{metric, lhs, relation, rhs, tolerance, 0.0, false};
  o.gap = scenario(lhs).get(metric) - scenario(rhs).get(metric);
  o.holds = Evaluate(o.gap, relation, tolerance);
  orderings.push_back(std::move(o));
}

bool ComparisonReport::all_hold() const {
  return std::all_of(orderings.begin(), orderings.end(),
                     [](const Ordering& o) { return o.holds; });
}

bool ComparisonReport::consistent() const {
  return std::all_of(orderings.begin(), orderings.end(), [&](const Ordering& o) {
    const double gap = scenario(o.lhs).get(o.metric) - scenario(o.rhs).get(o.metric);
    return gap == o.gap && Evaluate(gap, o.relation, o.tolerance) == o.holds;
  });
}

ComparisonReport compare_public_private(double r, double c1, double c2) {
  if (r <= c1 + c2) throw DegenerateRegime("compare-public-private requires r > c1 + c2");
  ComparisonReport rep;
  rep.name = "compare-public-private";
  rep.params = {{"r", r}, {"c1", c1}, {"c2", c2}};
  rep.scenarios.push_back(
      Metrics("private-private", closed_form::solve_asymmetric_competitive(r, c1, c2).outcome()));
  rep.scenarios.push_back(Metrics("public-private", closed_form::solve_public_private(r, c1, c2)));
  rep.add_ordering("total_share", "private-private", Relation::kGreater, "public-private");
  rep.add_ordering("total_effort", "public-private", Relation::kGreater, "private-private");
  rep.add_ordering("cp_utility", "public-private", Relation::kGreater, "private-private");
  return rep;
}

ComparisonReport compare_coop_comp(double r, double c1, double c2,
                                   const CoopCompOptions& options) {
  if (r <= c1 + c2) throw DegenerateRegime("compare-coop-comp requires r > c1 + c2");
  ComparisonReport rep;
  rep.name = "compare-coop-comp";
  rep.params = {{"r", r}, {"c1", c1}, {"c2", c2}};
  rep.scenarios.push_back(
      Metrics("regulated-competitive", closed_form::solve_regulated_competitive(r, c1, c2)));
  const auto coop = closed_form::solve_regulated_cooperative_preferred(r, c1, c2);
  auto coop_metrics = Metrics("regulated-cooperative", coop.outcome);
  coop_metrics.values.emplace_back("branch", coop.branch == Branch::kIsp1 ? 1.0 : 2.0);
  rep.scenarios.push_back(std::move(coop_metrics));
  rep.add_ordering("total_effort", "regulated-cooperative", Relation::kGreater,
                   "regulated-competitive");
  rep.add_ordering("cp_utility", "regulated-cooperative", Relation::kGreater,
                   "regulated-competitive");

  if (options.include_nbs) {
    const auto nbs = oracle::solve_asymmetric_cooperative(r, c1, c2, options.disagreement,
                                                          options.search);
    rep.scenarios.push_back(Metrics("nbs-cooperative", nbs.outcome));
    rep.add_ordering("total_effort", "nbs-cooperative", Relation::kGreater,
                     "regulated-competitive");
    rep.add_ordering("cp_utility", "nbs-cooperative", Relation::kGreater,
                     "regulated-competitive");
  }
  return rep;
}

ComparisonReport n_scaling_report(double r, double c, const std::vector<int>& n_values) {
  if (n_values.empty()) throw DomainError("n_scaling_report: n_values must be non-empty");
  if (!std::is_sorted(n_values.begin(), n_values.end(), std::less_equal<>{})) {
    throw DomainError("n_scaling_report: n_values must be strictly increasing");
  }
  ComparisonReport rep;
  rep.name = "n-scaling";
  rep.params = {{"r", r}, {"c", c}};
  for (int n : n_values) {
    const auto out = closed_form::solve_symmetric_competitive(r, c, n);
    const double beta = out.contract.shares[0];
    const double a = out.efforts.efforts[0];
    rep.scenarios.push_back({"n=" + std::to_string(n),
                             out.degenerate,
                             {{"n", static_cast<double>(n)},
                              {"beta", beta},
                              {"n_beta", n * beta},
                              {"effort", a},
                              {"n_effort", n * a},
                              {"cp_utility", out.cp_utility},
                              {"isp_utility", out.isp_utilities[0]}}});
  }
  const bool all_degenerate = std::all_of(rep.scenarios.begin(), rep.scenarios.end(),
                                          [](const ScenarioMetrics& s) { return s.degenerate; });
  if (all_degenerate) return rep;

  const std::string first = rep.scenarios.front().label;
  for (std::size_t i = 1; i < rep.scenarios.size(); ++i) {
    const std::string& prev = rep.scenarios[i - 1].label;
    const std::string& cur = rep.scenarios[i].label;
    for (const char* metric : {"beta", "effort", "isp_utility"}) {
      rep.add_ordering(metric, prev, Relation::kGreater, cur);
    }
    for (const char* metric : {"n_beta", "n_effort", "cp_utility"}) {
      rep.add_ordering(metric, first, Relation::kEqual, cur, 1e-9);
    }
  }
  return rep;
}

}  // namespace revshare::compare
