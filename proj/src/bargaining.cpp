#include "revshare/bargaining.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "revshare/closed_form.hpp"
#include "revshare/errors.hpp"
#include "revshare/lambertw.hpp"
#include "revshare/oracle.hpp"

namespace revshare {

DisagreementPolicy DisagreementPolicy::Custom(double d1, double d2) {
  if (!std::isfinite(d1) || !std::isfinite(d2)) {
    throw DomainError("custom disagreement values must be finite");
  }
  return DisagreementPolicy(Kind::kCustom, d1, d2);
}

std::string DisagreementPolicy::describe() const {
  switch (kind_) {
    case Kind::kZero: return "zero";
    case Kind::kRegulatedCompetitive: return "competitive";
    case Kind::kCustom: return "custom";
  }
  return "?";
}

namespace bargaining {

NbsSplit nbs_split_closed(double beta, double a1, double a2, double d1, double d2,
                          double r, double c1, double c2, double branch_cost) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("nbs_split_closed: beta must lie in (0, 1]");
  if (!(a1 >= 0.0 && a2 >= 0.0)) throw DomainError("nbs_split_closed: efforts must be non-negative");
  if (!(r > 0.0 && c1 > 0.0 && c2 > 0.0 && branch_cost > 0.0)) {
    throw DomainError("nbs_split_closed: r and costs must be positive");
  }
  if (!std::isfinite(d1) || !std::isfinite(d2)) {
    throw DomainError("nbs_split_closed: disagreement must be finite");
  }
  const double log_demand = std::log(beta * r / branch_cost);
  if (!(log_demand > 0.0)) throw DomainError("nbs_split_closed: log(beta r / c_b) must be positive");

  const double scale = r * log_demand;
  const double need1 = c1 * a1 + d1;
  const double need2 = c2 * a2 + d2;
  if (beta * scale - need1 - need2 < -1e-12 * std::max(1.0, beta * scale)) {
    throw InfeasibleBargain("joint surplus does not cover the disagreement point");
  }
  const double lo = std::max(0.0, need1 / scale);
  const double hi = std::min(beta, beta - need2 / scale);
  if (lo > hi + 1e-15 * beta) {
    throw InfeasibleBargain("no split meets both participation constraints");
  }

  NbsSplit split;
  const double interior = beta / 2 - (need2 - need1) / (2 * scale);
  split.beta1 = std::clamp(interior, lo, std::max(lo, hi));
  split.beta2 = beta - split.beta1;
  split.clamped = split.beta1 != interior;
  split.both_bind = hi - lo <= 1e-12 * beta;
  return split;
}

std::pair<double, double> disagreement_point(const DisagreementPolicy& policy,
                                             double r, double c1, double c2) {
  switch (policy.kind()) {
    case DisagreementPolicy::Kind::kZero:
      return {0.0, 0.0};
    case DisagreementPolicy::Kind::kCustom:
      return {policy.d1(), policy.d2()};
    case DisagreementPolicy::Kind::kRegulatedCompetitive: {
      const auto out = closed_form::solve_regulated_competitive(r, c1, c2);
      return {out.isp_utilities[0], out.isp_utilities[1]};
    }
  }
  throw DomainError("unknown disagreement policy");
}

ShapleyReport shapley_closed(double r, double c1, double c2, Branch branch) {
  const auto coop = closed_form::solve_regulated_cooperative(r, c1, c2, branch);
  const double w1 = lambert_w0(r * std::numbers::e / c1);
  const double w2 = lambert_w0(r * std::numbers::e / c2);

  ShapleyReport rep;
  rep.branch = branch;
  rep.v1 = r * (1.0 - 2.0 / w1) + c1;
  rep.v2 = r * (1.0 - 2.0 / w2) + c2;
  const bool first = branch == Branch::kIsp1;
  const double cb = first ? c1 : c2;
  const double co = first ? c2 : c1;
  const double wb = first ? w1 : w2;
  const double other_effort = coop.efforts.efforts[first ? 1 : 0];
  rep.v12 = r * (1.0 - 2.0 / wb) + other_effort * (cb - co) + cb;

  const auto brute = oracle::shapley_brute([&](unsigned s) {
    switch (s) {
      case 1u: return rep.v1;
      case 2u: return rep.v2;
      case 3u: return rep.v12;
      default: return 0.0;
    }
  });
  rep.brute_phi1 = brute.phi1;
  rep.brute_phi2 = brute.phi2;

  if (first) {
    rep.phi1 = r / 2 * (1.0 - 4.0 / w1 - 2.0 / w2) + c1;
    rep.phi2 = r / 2 * (1.0 - 2.0 / w2) + c2;
  } else {
    rep.phi1 = r / 2 * (1.0 - 2.0 / w1) + c1;
    rep.phi2 = r / 2 * (1.0 - 4.0 / w2 - 2.0 / w1) + c2;
  }
  rep.discrepancy = std::max(std::abs(rep.phi1 - rep.brute_phi1),
                             std::abs(rep.phi2 - rep.brute_phi2));
  rep.matches_brute = rep.discrepancy <= 1e-9 * std::max(1.0, std::abs(rep.v12));
  return rep;
}

}  // namespace bargaining
}  // namespace revshare
