#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "revshare/closed_form.hpp"
#include "revshare/errors.hpp"
#include "revshare/model.hpp"

using namespace revshare;
constexpr double kE = std::numbers::e;

TEST_CASE("MarketParams validation") {
  CHECK_THROWS_AS(MarketParams(0.0, {1.0}), DomainError);
  CHECK_THROWS_AS(MarketParams(1.0, {}), DomainError);
  CHECK_THROWS_AS(MarketParams(1.0, {1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(MarketParams(1.0, {1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(MarketParams(INFINITY, {1.0}), DomainError);
  const MarketParams p(10.0, {0.5, 1.0}, 5.0);
  CHECK(p.isp_count() == 2);
  CHECK(p.costs_sorted());
  CHECK_FALSE(MarketParams(10.0, {2.0, 1.0}).costs_sorted());
  CHECK(*p.second_cp_rate() == 5.0);
}

TEST_CASE("demand") {
  CHECK(demand(EffortProfile{{0.0, 0.0}}) == 0.0);
  CHECK(demand(EffortProfile{{kE - 1, 0.0}}) == doctest::Approx(1.0));
  CHECK(demand(EffortProfile{{1.2105, 1.2105}}) == doctest::Approx(std::log(3.421)));
  CHECK(std::log(3.421) == doctest::Approx(1.22993290599546763));
}

TEST_CASE("demand is permutation invariant and increasing") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 200; ++k) {
    const double a = u(rng), b = u(rng), c = u(rng);
    CHECK(demand(EffortProfile{{a, b, c}}) == doctest::Approx(demand(EffortProfile{{c, a, b}})));
    CHECK(demand(EffortProfile{{a + 0.01, b, c}}) > demand(EffortProfile{{a, b, c}}));
  }
}

TEST_CASE("cp utility") {
  const MarketParams p(10.0, {1.0, 1.0});
  const EffortProfile e{{kE - 1, 0.0}};
  CHECK(cp_utility(p, Contract{{0.0, 0.0}, std::nullopt}, e) == doctest::Approx(10.0));
  CHECK(cp_utility(p, Contract{{0.4, 0.6}, std::nullopt}, e) == doctest::Approx(0.0));
  CHECK(cp_utility(p, Contract{{0.0}, 0.5}, e) == doctest::Approx(5.0));
  CHECK_THROWS_AS(cp_utility(p, Contract{{0.1}, std::nullopt}, e), DimensionMismatch);
  CHECK_THROWS_AS(cp_utility(p, Contract{{0.1, 0.1}, std::nullopt}, EffortProfile{{1.0}}),
                  DimensionMismatch);
}

TEST_CASE("isp utility") {
  const MarketParams single(10.0, {1.0});
  CHECK(isp_utility(single, 0, Contract{{0.0}, std::nullopt}, EffortProfile{{0.0}}) == 0.0);
  CHECK(isp_utility(single, 0, Contract{{1.0}, std::nullopt}, EffortProfile{{kE - 1}}) ==
        doctest::Approx(10.0 - (kE - 1)));
  CHECK(10.0 - (kE - 1) == doctest::Approx(8.28172).epsilon(1e-5));
  CHECK_THROWS_AS(isp_utility(single, 1, Contract{{1.0}, std::nullopt}, EffortProfile{{1.0}}),
                  std::out_of_range);
}

TEST_CASE("validate reports degenerate regimes") {
  CHECK(validate(MarketParams(10, {0.5, 0.5}), ScenarioKind::kSymmetricCompetitive).non_degenerate);
  const auto sym = validate(MarketParams(1, {2}), ScenarioKind::kSymmetricCompetitive);
  CHECK_FALSE(sym.non_degenerate);
  CHECK(sym.threshold == 2.0);
  CHECK_FALSE(validate(MarketParams(10, {6, 5}), ScenarioKind::kAsymmetricCompetitive).non_degenerate);
  CHECK(validate(MarketParams(10, {6, 5}), ScenarioKind::kPublicPrivate).non_degenerate);
  CHECK(validate(MarketParams(10, {6, 5}), ScenarioKind::kRegulatedCooperative).non_degenerate);
  const auto bad = validate(MarketParams(10, {1, 2, 3}), ScenarioKind::kAsymmetricCompetitive);
  CHECK_FALSE(bad.issues.empty());
  const auto uneven = validate(MarketParams(10, {1, 2}), ScenarioKind::kSymmetricCooperative);
  CHECK_FALSE(uneven.issues.empty());
  const auto multi = validate(MarketParams(10, {1, 2}, 2.5), ScenarioKind::kMultiCpCompetitive);
  CHECK_FALSE(multi.non_degenerate);
  CHECK(validate(MarketParams(10, {1, 2}), ScenarioKind::kMultiCpCooperative).issues.size() == 1);
}

TEST_CASE("outcome invariants and accounting identity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double c1 = u(rng), c2 = u(rng), r = (c1 + c2) * (1.1 + 10 * u(rng));
    std::vector<EquilibriumOutcome> outs = {
        closed_form::solve_public_private(r, c1, c2),
        closed_form::solve_asymmetric_competitive(r, c1, c2).outcome(),
        closed_form::solve_regulated_competitive(r, c1, c2),
        closed_form::solve_regulated_cooperative(r, c1, c2, Branch::kIsp2),
        closed_form::solve_symmetric_competitive(r, c1, 3)};
    for (const auto& out : outs) {
      CHECK(out.demand == doctest::Approx(std::log(out.total_effort + 1)).epsilon(1e-12));
      CHECK(out.cp_utility ==
            doctest::Approx((1 - out.contract.total_share()) * r * out.demand).epsilon(1e-12));
      double isp_sum = 0.0, cost_sum = 0.0;
      for (std::size_t i = 0; i < out.isp_utilities.size(); ++i) {
        isp_sum += out.isp_utilities[i];
        const double ci = out.isp_utilities.size() == 3 ? c1 : (i == 0 ? c1 : c2);
        cost_sum += ci * out.efforts.efforts[i];
      }
      CHECK(out.cp_utility + isp_sum + cost_sum == doctest::Approx(r * out.demand).epsilon(1e-12));
    }
  }
}

TEST_CASE("degenerate outcome is all zeros") {
  const auto out = degenerate_outcome(MarketParams(1.0, {2.0, 3.0}), true);
  CHECK(out.degenerate);
  CHECK(out.demand == 0.0);
  CHECK(out.cp_utility == 0.0);
  CHECK(*out.contract.joint_share == 0.0);
  CHECK(out.isp_utilities == std::vector<double>{0.0, 0.0});
}

TEST_CASE("diagnostic lookup") {
  EquilibriumOutcome out;
  out.diagnostics = {{"a", 1.0}};
  CHECK(*out.diagnostic("a") == 1.0);
  CHECK_FALSE(out.diagnostic("b").has_value());
}
