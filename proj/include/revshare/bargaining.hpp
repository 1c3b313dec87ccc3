#ifndef REVSHARE_BARGAINING_HPP
#define REVSHARE_BARGAINING_HPP

#include <utility>

#include "revshare/bargaining_types.hpp"
#include "revshare/scenario.hpp"

namespace revshare::bargaining {

struct NbsSplit {
  double beta1 = 0.0;
  double beta2 = 0.0;
  /// A participation constraint moved the split off the equal-surplus point.
  bool clamped = false;
  /// Total surplus exactly covers d1 + d2, so there is a single feasible split.
  bool both_bind = false;
};

/// Equal-surplus split of a joint share beta between two ISPs with fixed
/// efforts, where demand is log(beta r / branch_cost):
///   beta1 = beta/2 - (c2 a2 - c1 a1 + d2 - d1) / (2 r log(beta r / c_b)).
/// Clamped into the participation region. Throws DomainError on bad inputs
/// and InfeasibleBargain if beta r L - c1 a1 - c2 a2 < d1 + d2.
NbsSplit nbs_split_closed(double beta, double a1, double a2, double d1, double d2,
                          double r, double c1, double c2, double branch_cost);

/// Zero -> (0, 0); RegulatedCompetitive -> the ISP utilities of the
/// regulated competitive equilibrium (DegenerateRegime if r <= c1 + c2);
/// Custom -> as given.
std::pair<double, double> disagreement_point(const DisagreementPolicy& policy,
                                             double r, double c1, double c2);

struct ShapleyReport {
  Branch branch = Branch::kIsp1;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double brute_phi1 = 0.0;
  double brute_phi2 = 0.0;
  /// Coalition values v({1}), v({2}), v({1,2}).
  double v1 = 0.0;
  double v2 = 0.0;
  double v12 = 0.0;
  double discrepancy = 0.0;
  bool matches_brute = false;
};

/// Closed-form Shapley values for the regulated cooperative branch, next to
/// the brute-force values from the coalition game
///   v({i}) = r(1 - 2/W(re/c_i)) + c_i,
///   v({1,2}) = r(1 - 2/W(re/c_b)) + a_o (c_b - c_o) + c_b,
/// with a_o the other ISP's branch effort. Throws DegenerateRegime if
/// r <= max(c1, c2).
ShapleyReport shapley_closed(double r, double c1, double c2, Branch branch);

}  // namespace revshare::bargaining

#endif  // REVSHARE_BARGAINING_HPP
