#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "revshare/bargaining.hpp"
#include "revshare/closed_form.hpp"
#include "revshare/errors.hpp"
#include "revshare/oracle.hpp"

using namespace revshare;
using namespace revshare::bargaining;

TEST_CASE("disagreement policies") {
  CHECK(disagreement_point(DisagreementPolicy::Zero(), 10, 0.5, 1.0) == std::pair{0.0, 0.0});
  CHECK(disagreement_point(DisagreementPolicy::Custom(1.5, 2.0), 10, 0.5, 1.0) ==
        std::pair{1.5, 2.0});
  const auto comp = closed_form::solve_regulated_competitive(10, 0.5, 1.0);
  const auto d = disagreement_point(DisagreementPolicy::RegulatedCompetitive(), 10, 0.5, 1.0);
  CHECK(d.first == comp.isp_utilities[0]);
  CHECK(d.second == comp.isp_utilities[1]);
  CHECK_THROWS_AS(disagreement_point(DisagreementPolicy::RegulatedCompetitive(), 1.0, 0.5, 1.0),
                  DegenerateRegime);
  CHECK_THROWS_AS(DisagreementPolicy::Custom(INFINITY, 0.0), DomainError);
  CHECK(DisagreementPolicy{}.kind() == DisagreementPolicy::Kind::kRegulatedCompetitive);
}

TEST_CASE("symmetric inputs split evenly") {
  const auto s = nbs_split_closed(0.4, 2.0, 1.0, 0.3, 0.3, 10, 0.5, 1.0, 0.5);
  CHECK(s.beta1 == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(s.beta2 == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_FALSE(s.clamped);
}

TEST_CASE("equal surplus and conservation at the interior split") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double c1 = 0.1 + u(rng), c2 = 0.1 + u(rng), r = (c1 + c2) * (1.1 + 10 * u(rng));
    const Branch b = k % 2 ? Branch::kIsp1 : Branch::kIsp2;
    const double cb = b == Branch::kIsp1 ? c1 : c2;
    const auto coop = closed_form::solve_regulated_cooperative(r, c1, c2, b);
    const double beta = *coop.contract.joint_share;
    const double a1 = coop.efforts.efforts[0], a2 = coop.efforts.efforts[1];
    const double scale = r * std::log(beta * r / cb);
    const double d1 = 0.45 * beta * scale * u(rng) - c1 * a1;
    const double d2 = 0.45 * beta * scale * u(rng) - c2 * a2;
    const auto s = nbs_split_closed(beta, a1, a2, d1, d2, r, c1, c2, cb);
    CHECK(std::abs(s.beta1 + s.beta2 - beta) < 1e-12);
    const double f1 = s.beta1 * scale - c1 * a1 - d1, f2 = s.beta2 * scale - c2 * a2 - d2;
    CHECK(std::abs(f1 - f2) < 1e-9);
    CHECK(f1 >= -1e-10);
    // 1-D brute force on the product
    const double lo = (c1 * a1 + d1) / scale, hi = beta - (c2 * a2 + d2) / scale;
    const double num = testing_oracle::scan_max(
        [&](double x) { return (x * scale - c1 * a1 - d1) * ((beta - x) * scale - c2 * a2 - d2); },
        lo, hi);
    CHECK(std::abs(num - s.beta1) < 1e-8);
  }
}

TEST_CASE("split against the competitive disagreement point") {
  const double r = 10, c1 = 0.5, c2 = 1.0;
  const auto d = disagreement_point(DisagreementPolicy::RegulatedCompetitive(), r, c1, c2);
  const auto coop = closed_form::solve_regulated_cooperative(r, c1, c2, Branch::kIsp2);
  const double beta = *coop.contract.joint_share;
  const double a1 = coop.efforts.efforts[0], a2 = coop.efforts.efforts[1];
  const double surplus =
      beta * r * std::log(beta * r / c2) - c1 * a1 - c2 * a2 - d.first - d.second;
  if (surplus < 0) {
    CHECK_THROWS_AS(nbs_split_closed(beta, a1, a2, d.first, d.second, r, c1, c2, c2),
                    InfeasibleBargain);
  } else {
    const auto s = nbs_split_closed(beta, a1, a2, d.first, d.second, r, c1, c2, c2);
    CHECK(s.beta1 + s.beta2 == doctest::Approx(beta));
  }
  const auto ok = nbs_split_closed(beta, a1, a2, 0.0, 0.0, r, c1, c2, c2);
  CHECK(ok.beta1 > 0.0);
  CHECK(ok.beta2 > 0.0);
}

TEST_CASE("clamping and both-bind") {
  // negative reservation for ISP1 pushes the interior split below zero
  const auto s = nbs_split_closed(0.3, 0.0, 1.0, -50.0, 0.0, 10, 0.5, 1.0, 0.5);
  CHECK(s.clamped);
  CHECK(s.beta1 == 0.0);
  CHECK(s.beta2 == doctest::Approx(0.3));
  // total surplus exactly covers d1 + d2
  const double beta = 0.4, r = 10, cb = 0.5, a1 = 1.0, a2 = 1.0, c1 = 0.5, c2 = 1.0;
  const double total = beta * r * std::log(beta * r / cb) - c1 * a1 - c2 * a2;
  const auto tight = nbs_split_closed(beta, a1, a2, total / 2, total / 2, r, c1, c2, cb);
  CHECK(tight.both_bind);
  CHECK_THROWS_AS(nbs_split_closed(beta, a1, a2, total, total, r, c1, c2, cb), InfeasibleBargain);
  CHECK_THROWS_AS(nbs_split_closed(0.0, a1, a2, 0, 0, r, c1, c2, cb), DomainError);
  CHECK_THROWS_AS(nbs_split_closed(0.01, a1, a2, 0, 0, r, c1, c2, cb), DomainError);
  CHECK_THROWS_AS(nbs_split_closed(beta, -1, a2, 0, 0, r, c1, c2, cb), DomainError);
}

TEST_CASE("shapley: brute force axioms and reported discrepancy") {
  const auto rep = shapley_closed(10, 0.5, 1.0, Branch::kIsp2);
  CHECK(rep.brute_phi1 + rep.brute_phi2 == doctest::Approx(rep.v12).epsilon(1e-15));
  const double w1 = testing_oracle::w_of(10, 0.5), w2 = testing_oracle::w_of(10, 1.0);
  CHECK(rep.v1 == doctest::Approx(10 * (1 - 2 / w1) + 0.5).epsilon(1e-12));
  CHECK(rep.v2 == doctest::Approx(10 * (1 - 2 / w2) + 1.0).epsilon(1e-12));
  const auto coop = closed_form::solve_regulated_cooperative(10, 0.5, 1.0, Branch::kIsp2);
  CHECK(rep.v12 == doctest::Approx(10 * (1 - 2 / w2) + coop.efforts.efforts[0] * 0.5 + 1.0).epsilon(1e-12));
  CHECK(rep.brute_phi1 == doctest::Approx(0.5 * (rep.v1 + rep.v12 - rep.v2)));
  CHECK(rep.phi1 == doctest::Approx(5 * (1 - 2 / w1) + 0.5).epsilon(1e-12));
  CHECK(rep.discrepancy > 0.0);
  CHECK_FALSE(rep.matches_brute);

  for (Branch b : {Branch::kIsp1, Branch::kIsp2}) {
    const auto eq = shapley_closed(10, 0.7, 0.7, b);
    CHECK(eq.brute_phi1 == eq.brute_phi2);
  }
  CHECK_THROWS_AS(shapley_closed(0.9, 0.5, 1.0, Branch::kIsp1), DegenerateRegime);
}
