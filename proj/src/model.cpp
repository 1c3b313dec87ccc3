#include "revshare/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "revshare/errors.hpp"

namespace revshare {

MarketParams::MarketParams(double r, std::vector<double> costs,
                           std::optional<double> second_cp_rate)
    : r_(r), costs_(std::move(costs)), second_cp_rate_(second_cp_rate) {
  if (!(r_ > 0.0) || !std::isfinite(r_)) {
    throw DomainError("MarketParams: r must be positive and finite");
  }
  if (costs_.empty()) throw DomainError("MarketParams: costs must be non-empty");
  for (double c : costs_) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw DomainError("MarketParams: costs must be positive and finite");
    }
  }
  if (second_cp_rate_ && !(*second_cp_rate_ > 0.0)) {
    throw DomainError("MarketParams: second CP rate must be positive");
  }
  sorted_ = std::is_sorted(costs_.begin(), costs_.end());
}

double Contract::total_share() const {
  if (joint_share) return *joint_share;
  return std::accumulate(shares.begin(), shares.end(), 0.0);
}

double EffortProfile::total() const {
  return std::accumulate(efforts.begin(), efforts.end(), 0.0);
}

std::optional<double> EquilibriumOutcome::diagnostic(
    const std::string& name) const {
  for (const auto& [key, value] : diagnostics) {
    if (key == name) return value;
  }
  return std::nullopt;
}

double demand(const EffortProfile& efforts) {
  return std::log1p(efforts.total());
}

double cp_utility(const MarketParams& params, const Contract& contract,
                  const EffortProfile& efforts) {
  if (!contract.joint_share && contract.shares.size() != params.isp_count()) {
    throw DimensionMismatch("cp_utility: share count does not match ISP count");
  }
  if (efforts.efforts.size() != params.isp_count()) {
    throw DimensionMismatch("cp_utility: effort count does not match ISP count");
  }
  return (1.0 - contract.total_share()) * params.r() * demand(efforts);
}

double isp_utility(const MarketParams& params, std::size_t i,
                   const Contract& contract, const EffortProfile& efforts) {
  if (i >= params.isp_count() || i >= contract.shares.size() ||
      i >= efforts.efforts.size()) {
    throw std::out_of_range("isp_utility: ISP index out of range");
  }
  return contract.shares[i] * params.r() * demand(efforts) -
         params.cost(i) * efforts.efforts[i];
}

ValidationReport validate(const MarketParams& params, ScenarioKind scenario) {
  ValidationReport report;
  const auto& c = params.costs();
  const double sum = std::accumulate(c.begin(), c.end(), 0.0);
  const double max_cost = *std::max_element(c.begin(), c.end());
  auto need_two = [&] {
    if (c.size() != 2) report.issues.push_back("scenario needs exactly two costs");
  };
  double rate = params.r();

  switch (scenario) {
    case ScenarioKind::kPublicPrivate:
    case ScenarioKind::kPublicPrivateRegulated:
    case ScenarioKind::kFixedPublicEffortCooperative:
      need_two();
      report.threshold = c.size() >= 2 ? c[1] : c[0];
      report.condition = "r > c2";
      break;
    case ScenarioKind::kSymmetricCompetitive:
    case ScenarioKind::kSymmetricCooperative:
      if (!std::all_of(c.begin(), c.end(), [&](double x) { return x == c[0]; })) {
        report.issues.push_back("symmetric scenario needs equal costs");
      }
      report.threshold = c[0];
      report.condition = "r > c";
      break;
    case ScenarioKind::kAsymmetricCompetitive:
    case ScenarioKind::kAsymmetricCooperative:
    case ScenarioKind::kRegulatedCompetitive:
      need_two();
      report.threshold = sum;
      report.condition = "r > c1 + c2";
      break;
    case ScenarioKind::kRegulatedCooperative:
      need_two();
      report.threshold = max_cost;
      report.condition = "r > max(c1, c2)";
      break;
    case ScenarioKind::kMultiCpCompetitive:
    case ScenarioKind::kMultiCpCooperative:
      need_two();
      if (!params.second_cp_rate()) {
        report.issues.push_back("scenario needs a second CP rate");
      } else {
        rate = std::min(rate, *params.second_cp_rate());
      }
      report.threshold =
          scenario == ScenarioKind::kMultiCpCompetitive ? sum : max_cost;
      report.condition = scenario == ScenarioKind::kMultiCpCompetitive
                             ? "min(r1, r2) > c1 + c2"
                             : "min(r1, r2) > max(c1, c2)";
      break;
  }
  report.non_degenerate = rate > report.threshold;
  return report;
}

EquilibriumOutcome make_outcome(const MarketParams& params, Contract contract,
                                EffortProfile efforts, double foc_residual) {
  EquilibriumOutcome out;
  out.contract = std::move(contract);
  out.efforts = std::move(efforts);
  out.total_effort = out.efforts.total();
  out.demand = demand(out.efforts);
  out.cp_utility = cp_utility(params, out.contract, out.efforts);
  out.isp_utilities.reserve(params.isp_count());
  for (std::size_t i = 0; i < params.isp_count(); ++i) {
    out.isp_utilities.push_back(
        isp_utility(params, i, out.contract, out.efforts));
  }
  out.foc_residual = foc_residual;
  return out;
}

EquilibriumOutcome degenerate_outcome(const MarketParams& params,
                                      bool joint_contract) {
  Contract contract{std::vector<double>(params.isp_count(), 0.0), std::nullopt};
  if (joint_contract) contract.joint_share = 0.0;
  auto out = make_outcome(params, std::move(contract),
                          EffortProfile{std::vector<double>(params.isp_count(), 0.0)},
                          0.0);
  out.degenerate = true;
  return out;
}

}  // namespace revshare
