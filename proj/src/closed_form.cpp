#include "revshare/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "revshare/errors.hpp"
#include "revshare/lambertw.hpp"

namespace revshare::closed_form {
namespace {

constexpr double kE = std::numbers::e;

// W(re/c), the quantity behind every single-cost contract.
double WOf(double r, double c) { return lambert_w0(r * kE / c); }

// CP first-order condition for max (1 - s) r log(s r / c): log(s r/c) = (1-s)/s.
double CpFoc(double s, double r, double c) {
  return std::log(s * r / c) - (1.0 - s) / s;
}

void RequirePositive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

void AddGap(EquilibriumOutcome& out, std::string name, double direct,
            double formula) {
  out.diagnostics.emplace_back(std::move(name), direct - formula);
}

// Competitive two-ISP outcome at split t without the degenerate check.
EquilibriumOutcome RegulatedSplit(const MarketParams& params, double w,
                                  double total, double t) {
  const double c1 = params.cost(0);
  const double c2 = params.cost(1);
  const double sum = c1 + c2;
  const double r = params.r();
  const double s = 1.0 / w;
  Contract contract{{c1 * s / sum, c2 * s / sum}, std::nullopt};
  const double demand_base = total + 1.0;
  double foc = std::abs(CpFoc(s, r, sum));
  for (int i = 0; i < 2; ++i) {
    foc = std::max(foc, std::abs(contract.shares[i] * r / demand_base -
                                 params.cost(i)));
  }
  return make_outcome(params, std::move(contract),
                      EffortProfile{{t * total, (1.0 - t) * total}}, foc);
}

// Joint contract pinned by cost `cb`, effort split proportional to costs.
EquilibriumOutcome RegulatedCoopBranch(const MarketParams& params, double cb) {
  const double c1 = params.cost(0);
  const double c2 = params.cost(1);
  const double sum = c1 + c2;
  const double r = params.r();
  const double w = WOf(r, cb);
  const double beta = 1.0 / w;
  const double total = r / (cb * w) - 1.0;
  Contract contract{{beta * c1 / sum, beta * c2 / sum}, beta};
  const double foc = std::max(std::abs(CpFoc(beta, r, cb)),
                              std::abs(beta * r / (total + 1.0) - cb));
  return make_outcome(params, std::move(contract),
                      EffortProfile{{c1 / sum * total, c2 / sum * total}}, foc);
}

}  // namespace

EquilibriumOutcome solve_public_private(double r, double c1, double c2) {
  const MarketParams params(r, {c1, c2});
  if (r <= c2) return degenerate_outcome(params, false);

  const double w = WOf(r, c2);
  const double beta2 = 1.0 / w;
  const double a2 = r / (c2 * w) - 1.0;
  const double foc = std::max(std::abs(CpFoc(beta2, r, c2)),
                              std::abs(beta2 * r / (a2 + 1.0) - c2));
  auto out = make_outcome(params, Contract{{0.0, beta2}, std::nullopt},
                          EffortProfile{{0.0, a2}}, foc);
  AddGap(out, "cp_utility_formula_gap", out.cp_utility, r * (w - 1) * (w - 1) / w);
  AddGap(out, "isp2_utility_formula_gap", out.isp_utilities[1],
         r * (1.0 - 2.0 / w) + c2);
  return out;
}

EquilibriumOutcome solve_public_private_regulated(double r, double c1,
                                                  double c2, double a1_bar) {
  const MarketParams params(r, {c1, c2});
  if (!(a1_bar >= 0.0) || !std::isfinite(a1_bar)) {
    throw DomainError("a1_bar must be non-negative");
  }
  if (r <= c2) {
    throw DegenerateRegime("public-private-regulated requires r > c2");
  }
  const double w = WOf(r, c2);
  const double beta2 = 1.0 / w;
  const double total = r / (c2 * w) - 1.0;
  const double a2 = total - a1_bar;
  if (a2 < 0.0) {
    throw InfeasibleEffort("public ISP effort a1_bar exceeds r/(c2 W(re/c2)) - 1");
  }
  // log(beta2 r / c2) = log(total + 1)
  const double log_demand = std::log1p(total);
  const double beta1 = a1_bar * c1 / (r * log_demand);
  Contract contract{{beta1, beta2}, std::nullopt};
  EffortProfile efforts{{a1_bar, a2}};
  const double break_even = beta1 * r * log_demand - c1 * a1_bar;
  double foc = std::max(std::abs(CpFoc(beta2, r, c2)),
                        std::abs(beta2 * r / (total + 1.0) - c2));
  foc = std::max(foc, std::abs(break_even));
  return make_outcome(params, std::move(contract), std::move(efforts), foc);
}

EquilibriumOutcome solve_symmetric_competitive(double r, double c, int n) {
  if (n < 1) throw DomainError("number of ISPs must be at least 1");
  const MarketParams params(r, std::vector<double>(n, c));
  if (r <= c) return degenerate_outcome(params, false);

  const double w = WOf(r, c);
  const double beta = 1.0 / (n * w);
  const double total = r / (c * w) - 1.0;
  const double a = total / n;
  const double nb = n * beta;
  // CP: max (1 - n beta) r log(n beta r / c); follower: n beta r/(n a + 1) = c.
  const double foc = std::max(std::abs(CpFoc(nb, r, c)),
                              std::abs(nb * r / (n * a + 1.0) - c));
  auto out = make_outcome(params, Contract{std::vector<double>(n, beta), std::nullopt},
                          EffortProfile{std::vector<double>(n, a)}, foc);
  AddGap(out, "cp_utility_formula_gap", out.cp_utility, r * (w - 1) * (w - 1) / w);
  AddGap(out, "isp_utility_formula_gap", out.isp_utilities[0],
         r * (1.0 - (n + 1.0) / (n * w)) + c / n);
  return out;
}

EquilibriumOutcome solve_symmetric_cooperative(double r, double c, int n) {
  if (n < 1) throw DomainError("number of ISPs must be at least 1");
  const MarketParams params(r, std::vector<double>(n, c));
  if (r <= c) return degenerate_outcome(params, true);

  const double w = WOf(r, c);
  const double beta = 1.0 / w;
  const double total = beta * r / c - 1.0;
  const double foc = std::max(std::abs(CpFoc(beta, r, c)),
                              std::abs(beta * r / (total + 1.0) - c));
  return make_outcome(params,
                      Contract{std::vector<double>(n, beta / n), beta},
                      EffortProfile{std::vector<double>(n, total / n)}, foc);
}

EquilibriumOutcome ContinuumEquilibrium::at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("split parameter must lie in [0, 1]");
  if (degenerate) return degenerate_outcome(params, false);
  auto out = make_outcome(params, shares,
                          EffortProfile{{t * total_effort, (1.0 - t) * total_effort}},
                          foc_residual);
  return out;
}

ContinuumEquilibrium solve_asymmetric_competitive(double r, double c1, double c2) {
  MarketParams params(r, {c1, c2});
  const double sum = c1 + c2;
  ContinuumEquilibrium eq{params, 0.0, Contract{{0.0, 0.0}, std::nullopt},
                          c1 / sum, true, false, 0.0};
  if (r <= sum) {
    eq.degenerate = true;
    return eq;
  }
  const double w = WOf(r, sum);
  eq.total_effort = r / (sum * w) - 1.0;
  const auto canonical = RegulatedSplit(params, w, eq.total_effort, eq.split_parameter);
  eq.shares = canonical.contract;
  eq.foc_residual = canonical.foc_residual;
  return eq;
}

double asymmetric_case_cp_utility(double r, double c1, double c2, double lambda) {
  RequirePositive(r, "r");
  RequirePositive(c1, "c1");
  RequirePositive(c2, "c2");
  if (!(lambda >= 0.0)) throw DomainError("multiplier must be non-negative");
  const double eff = c1 + c2 + lambda;
  if (r <= eff) return 0.0;
  const double w = WOf(r, eff);
  return r * (w - 1.0) * (w - 1.0) / w;
}

EquilibriumOutcome solve_regulated_competitive(double r, double c1, double c2) {
  const MarketParams params(r, {c1, c2});
  const double sum = c1 + c2;
  if (r <= sum) throw DegenerateRegime("regulated-competitive requires r > c1 + c2");
  const double w = WOf(r, sum);
  const double total = r / (sum * w) - 1.0;
  auto out = RegulatedSplit(params, w, total, c1 / sum);
  AddGap(out, "cp_utility_formula_gap", out.cp_utility, r * (w - 1) * (w - 1) / w);
  AddGap(out, "isp1_utility_formula_gap", out.isp_utilities[0],
         c1 / sum * (r * (1.0 - (2.0 * c1 + c2) / (sum * w)) + c1));
  AddGap(out, "isp2_utility_formula_gap", out.isp_utilities[1],
         c2 / sum * (r * (1.0 - (2.0 * c2 + c1) / (sum * w)) + c2));
  return out;
}

EquilibriumOutcome solve_regulated_cooperative(double r, double c1, double c2,
                                               Branch branch) {
  const MarketParams params(r, {c1, c2});
  if (r <= std::max(c1, c2)) {
    throw DegenerateRegime("regulated-cooperative requires r > max(c1, c2)");
  }
  return RegulatedCoopBranch(params, branch == Branch::kIsp1 ? c1 : c2);
}

BranchOutcome solve_regulated_cooperative_preferred(double r, double c1,
                                                    double c2) {
  auto first = solve_regulated_cooperative(r, c1, c2, Branch::kIsp1);
  auto second = solve_regulated_cooperative(r, c1, c2, Branch::kIsp2);
  if (second.cp_utility > first.cp_utility) {
    return {Branch::kIsp2, std::move(second)};
  }
  return {Branch::kIsp1, std::move(first)};
}

EquilibriumOutcome solve_fixed_public_effort_coop(double r, double c1,
                                                  double c2, double a1_bar) {
  const MarketParams params(r, {c1, c2});
  if (!(a1_bar >= 0.0) || !std::isfinite(a1_bar)) {
    throw DomainError("a1_bar must be non-negative");
  }
  if (r <= c2) throw DegenerateRegime("fixed-public-effort-coop requires r > c2");
  const double w = WOf(r, c2);
  const double beta = 1.0 / w;
  const double total = r / (c2 * w) - 1.0;
  const double a2 = total - a1_bar;
  if (a2 < 0.0) {
    throw InfeasibleEffort("fixed effort a1_bar exceeds r/(c2 W(re/c2)) - 1");
  }
  const double foc = std::max(std::abs(CpFoc(beta, r, c2)),
                              std::abs(beta * r / (total + 1.0) - c2));
  std::vector<double> shares{0.0, beta};
  if (total > 0.0) shares = {beta * a1_bar / total, beta * a2 / total};
  auto out = make_outcome(params, Contract{shares, beta},
                          EffortProfile{{a1_bar, a2}}, foc);
  const auto reference = solve_public_private(r, c1, c2);
  const bool same_total =
      std::abs(reference.total_effort - out.total_effort) <=
      1e-12 * std::max(1.0, reference.total_effort);
  out.diagnostics.emplace_back("total_matches_public_private", same_total ? 1.0 : 0.0);
  // With a2 clamped at zero the CP can free-ride on a1_bar alone.
  out.diagnostics.emplace_back("zero_share_advantage", r * std::log1p(a1_bar) - out.cp_utility);
  return out;
}

std::vector<EquilibriumOutcome> solve_multi_cp(double r1, double r2, double c1,
                                               double c2, MultiCpMode mode) {
  std::vector<EquilibriumOutcome> outcomes;
  for (double rate : {r1, r2}) {
    const MarketParams params(rate, {c1, c2});
    if (!mode.cooperative) {
      outcomes.push_back(solve_asymmetric_competitive(rate, c1, c2).outcome());
      continue;
    }
    const double cb = mode.branch == Branch::kIsp1 ? c1 : c2;
    if (rate <= cb) {
      outcomes.push_back(degenerate_outcome(params, true));
    } else {
      outcomes.push_back(RegulatedCoopBranch(params, cb));
    }
  }
  return outcomes;
}

}  // namespace revshare::closed_form
