#ifndef REVSHARE_ORACLE_HPP
#define REVSHARE_ORACLE_HPP

#include <functional>
#include <vector>

#include "revshare/bargaining_types.hpp"
#include "revshare/model.hpp"

// Brute-force searches that re-derive the equilibria from the utility
// definitions alone. Nothing in here calls lambert_w0 or a closed form.

namespace revshare::oracle {

struct SearchConfig {
  int grid_points = 2001;
  double refine_tolerance = 1e-10;
  int multistart_count = 8;
  int max_simplex_iters = 5000;

  /// Throws DomainError unless grid_points >= 3, tolerance > 0, counts >= 1.
  void check() const;
};

/// Maximizer of a unimodal f on [lo, hi]. `diff(x, y)` must return
/// f(x) - f(y); passing the difference lets callers avoid cancellation.
double golden_section_max_diff(const std::function<double(double, double)>& diff,
                               double lo, double hi, double tolerance);

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tolerance);

/// argmax_{a >= 0} beta r log(others + a + 1) - c a, by golden section on
/// [0, beta r / c].
double best_response_effort(double beta, double r, double c, double others_total,
                            const SearchConfig& cfg = {});

/// Common effort a of n identical followers who pick a jointly for the
/// profile: argmax_a beta r log(n a + 1) - c a.
double symmetric_profile_response(double beta, double r, double c, int n,
                                  const SearchConfig& cfg = {});

/// Gauss-Seidel best-response iteration from zero effort. Throws
/// ConvergenceError if the profile keeps moving after 10000 sweeps.
EffortProfile follower_equilibrium(const std::vector<double>& shares, double r,
                                   const std::vector<double>& costs,
                                   const SearchConfig& cfg = {});

struct LeaderResult {
  double beta = 0.0;
  double value = 0.0;
  /// Number of strict local maxima seen on the grid.
  int grid_peaks = 0;
};

/// Grid scan of [0, 1] then golden refinement inside the best cell's
/// neighbours. Non-finite objective values count as -inf.
LeaderResult leader_optimum(const std::function<double(double)>& objective,
                            const SearchConfig& cfg = {});

enum class KktKind { kInterior, kBoundary1, kBoundary2 };

struct KktCase {
  KktKind kind = KktKind::kInterior;
  double multiplier = 0.0;
};

const char* to_string(KktKind kind);

/// Which follower constraint binds under shares (beta1, beta2).
/// Boundary1: a1 > 0, a2 = 0 (lambda = beta1 c2 / beta2 - c1).
/// Boundary2: a1 = 0, a2 > 0 (lambda = beta2 c1 / beta1 - c2).
/// Throws DomainError for negative inputs or beta1 = beta2 = 0.
KktCase kkt_classify(double beta1, double beta2, double c1, double c2);

/// Nash product (F1 F2) over efforts for a fixed joint share beta, where
/// F_i = (beta a_i/(a1+a2)) r log(a1+a2+1) - c_i a_i - d_i. Multistart
/// Nelder-Mead in log-effort coordinates, then a Newton polish. Throws
/// InfeasibleBargain if no start finds F1 > 0 and F2 > 0.
BargainingResult nash_product_maximize(double r, double c1, double c2,
                                       double beta, double d1, double d2,
                                       const SearchConfig& cfg = {});

struct CooperativeSolution {
  EquilibriumOutcome outcome;
  BargainingResult bargain;
  /// More than one local peak of the leader objective on the grid.
  bool outer_multimodal = false;
};

/// Leader picks the joint share, followers bargain over efforts. Shares are
/// split beta_i = beta a_i / (a1 + a2). Betas whose bargain is infeasible
/// score -inf; throws InfeasibleBargain when every beta does.
CooperativeSolution solve_asymmetric_cooperative(double r, double c1, double c2,
                                                 const DisagreementPolicy& policy,
                                                 const SearchConfig& cfg = {});

/// Same with the joint share fixed.
CooperativeSolution solve_asymmetric_cooperative_at(double r, double c1,
                                                    double c2, double beta,
                                                    const DisagreementPolicy& policy,
                                                    const SearchConfig& cfg = {});

struct ShapleyValues {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// Two-player Shapley value by averaging marginal contributions over both
/// join orders. `value` takes a coalition bitmask (bit 0 = ISP1, bit 1 =
/// ISP2); value(0) is taken as given, not assumed zero.
ShapleyValues shapley_brute(const std::function<double(unsigned)>& value);

}  // namespace revshare::oracle

#endif  // REVSHARE_ORACLE_HPP
