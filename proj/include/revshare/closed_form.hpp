#ifndef REVSHARE_CLOSED_FORM_HPP
#define REVSHARE_CLOSED_FORM_HPP

#include <vector>

#include "revshare/model.hpp"
#include "revshare/scenario.hpp"

// Closed-form Stackelberg equilibria. Every solver returns an outcome whose
// utilities are re-evaluated from the model definitions; where the closed
// form also gives a utility formula, the gap between the two is attached as
// a diagnostic. Parameters outside the non-degenerate region give the
// explicit zero outcome (degenerate = true) unless noted otherwise.

namespace revshare::closed_form {

/// One public ISP (effort fixed at break-even) and one private ISP. The CP
/// gives the public ISP nothing: beta2 = 1/W(re/c2), a2 = r/(c2 W) - 1.
EquilibriumOutcome solve_public_private(double r, double c1, double c2);

/// As above, but the CP must fund the public ISP's effort a1_bar so that it
/// exactly breaks even. Throws DegenerateRegime if r <= c2 and
/// InfeasibleEffort if a1_bar would push the private effort below zero.
EquilibriumOutcome solve_public_private_regulated(double r, double c1,
                                                  double c2, double a1_bar);

/// n identical private ISPs, individual contracts. Followers respond with a
/// common effort a solving n*a + 1 = n*beta*r/c; the CP then offers
/// beta = 1/(n W(re/c)) to each.
EquilibriumOutcome solve_symmetric_competitive(double r, double c, int n);

/// n identical ISPs under one joint contract beta = 1/W(re/c), split evenly.
EquilibriumOutcome solve_symmetric_cooperative(double r, double c, int n);

/// The two-ISP competitive equilibrium pins only the total effort. Any split
/// a1 = t * total, a2 = (1 - t) * total is an equilibrium with the same
/// shares and CP utility.
struct ContinuumEquilibrium {
  MarketParams params;
  double total_effort = 0.0;
  Contract shares;
  double split_parameter = 0.0;
  bool canonical = true;
  bool degenerate = false;
  double foc_residual = 0.0;

  /// Outcome at split t in [0, 1]. Throws DomainError outside that range.
  EquilibriumOutcome at(double t) const;
  /// Outcome at the stored split parameter.
  EquilibriumOutcome outcome() const { return at(split_parameter); }
};

/// beta_i = c_i / ((c1 + c2) W(re/(c1 + c2))); canonical split
/// t = c1/(c1 + c2).
ContinuumEquilibrium solve_asymmetric_competitive(double r, double c1, double c2);

/// CP utility when the followers sit in a KKT boundary case whose multiplier
/// raises the effective cost sum to c1 + c2 + lambda. lambda = 0 is the
/// interior case.
double asymmetric_case_cp_utility(double r, double c1, double c2, double lambda);

/// Competitive equilibrium with efforts forced proportional to shares:
/// a_i = c_i/(c1 + c2) * total. Throws DegenerateRegime if r <= c1 + c2.
EquilibriumOutcome solve_regulated_competitive(double r, double c1, double c2);

/// Joint contract beta = 1/W(re/c_b) where c_b is the cost of the branch ISP,
/// efforts a_i = c_i/(c1 + c2) * (r/(c_b W) - 1). Throws DegenerateRegime if
/// r <= max(c1, c2).
EquilibriumOutcome solve_regulated_cooperative(double r, double c1, double c2,
                                               Branch branch);

struct BranchOutcome {
  Branch branch;
  EquilibriumOutcome outcome;
};

/// The branch the CP prefers (higher CP utility; ISP1 on ties).
BranchOutcome solve_regulated_cooperative_preferred(double r, double c1,
                                                    double c2);

/// ISP1 holds effort a1_bar fixed, ISP2 maximizes the joint ISP utility.
/// beta = 1/W(re/c2) and the total effort does not depend on a1_bar.
/// Throws DegenerateRegime if r <= c2 and InfeasibleEffort if a2 < 0.
/// Diagnostic "zero_share_advantage" is r log(a1_bar + 1) - U_CP; when it is
/// positive, offering nothing beats this contract.
EquilibriumOutcome solve_fixed_public_effort_coop(double r, double c1,
                                                  double c2, double a1_bar);

struct MultiCpMode {
  bool cooperative = false;
  Branch branch = Branch::kIsp1;
};

/// Two CPs sharing two ISPs. The utilities are additive over CPs, so each
/// CP's market is solved on its own with rate r_j (regulated split).
/// Degenerate CPs are reported per CP.
std::vector<EquilibriumOutcome> solve_multi_cp(double r1, double r2, double c1,
                                               double c2, MultiCpMode mode);

}  // namespace revshare::closed_form

#endif  // REVSHARE_CLOSED_FORM_HPP
