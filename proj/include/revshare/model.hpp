#ifndef REVSHARE_MODEL_HPP
#define REVSHARE_MODEL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "revshare/scenario.hpp"

namespace revshare {

/// Exogenous inputs of the economy: CP revenue per unit demand, per-ISP cost
/// per unit effort, and the optional rate of a second CP.
class MarketParams {
 public:
  /// Throws DomainError unless r > 0, costs non-empty, all costs > 0 and
  /// any second rate > 0.
  MarketParams(double r, std::vector<double> costs,
               std::optional<double> second_cp_rate = std::nullopt);

  double r() const { return r_; }
  const std::vector<double>& costs() const { return costs_; }
  double cost(std::size_t i) const { return costs_.at(i); }
  std::size_t isp_count() const { return costs_.size(); }
  const std::optional<double>& second_cp_rate() const { return second_cp_rate_; }
  /// True when c1 <= c2 <= ... <= cn.
  bool costs_sorted() const { return sorted_; }

 private:
  double r_;
  std::vector<double> costs_;
  std::optional<double> second_cp_rate_;
  bool sorted_;
};

/// Revenue-share fractions. `joint_share` is set for joint (cooperative)
/// contracts; `shares` then holds how the joint share is split.
struct Contract {
  std::vector<double> shares;
  std::optional<double> joint_share;

  /// Share the CP gives away: the joint share if present, else sum(shares).
  double total_share() const;
};

struct EffortProfile {
  std::vector<double> efforts;

  double total() const;
};

/// Solved scenario. All utilities are recomputed from their definitions, so
/// they can be checked against the closed forms independently.
struct EquilibriumOutcome {
  Contract contract;
  EffortProfile efforts;
  double demand = 0.0;
  double cp_utility = 0.0;
  std::vector<double> isp_utilities;
  double total_effort = 0.0;
  /// Largest absolute violation among the first-order conditions that
  /// characterize this equilibrium.
  double foc_residual = 0.0;
  bool degenerate = false;
  /// Extra named diagnostics (gaps between alternative formulas, flags).
  std::vector<std::pair<std::string, double>> diagnostics;

  std::optional<double> diagnostic(const std::string& name) const;
};

struct ValidationReport {
  bool non_degenerate = false;
  /// Revenue rate the scenario needs to exceed.
  double threshold = 0.0;
  std::string condition;
  /// Structural problems (wrong number of costs, ...). Empty when the
  /// parameters fit the scenario.
  std::vector<std::string> issues;
};

/// log(sum(a) + 1), natural log.
double demand(const EffortProfile& efforts);

/// (1 - total share) * r * demand. Throws DimensionMismatch when the share
/// vector does not match the ISP count and no joint share is set.
double cp_utility(const MarketParams& params, const Contract& contract,
                  const EffortProfile& efforts);

/// beta_i * r * demand - c_i * a_i. Throws std::out_of_range for a bad index.
double isp_utility(const MarketParams& params, std::size_t i,
                   const Contract& contract, const EffortProfile& efforts);

/// Never throws; structural problems land in `issues`.
ValidationReport validate(const MarketParams& params, ScenarioKind scenario);

/// Fills demand, total effort and all utilities from the definitions.
EquilibriumOutcome make_outcome(const MarketParams& params, Contract contract,
                                EffortProfile efforts, double foc_residual);

/// The zero-share, zero-effort outcome of the degenerate regime.
EquilibriumOutcome degenerate_outcome(const MarketParams& params,
                                      bool joint_contract);

}  // namespace revshare

#endif  // REVSHARE_MODEL_HPP
