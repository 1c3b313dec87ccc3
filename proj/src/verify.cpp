#include "revshare/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>

#include "revshare/bargaining.hpp"
#include "revshare/closed_form.hpp"
#include "revshare/compare.hpp"
#include "revshare/errors.hpp"
#include "revshare/lambertw.hpp"
#include "revshare/oracle.hpp"

namespace revshare::verify {
namespace {

std::string Fmt(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

// Runs `body` and stamps the elapsed wall time on the result; a positive
// `limit` turns an overrun into a failure.
CheckResult Timed(int id, std::string name, double limit,
                  const std::function<void(CheckResult&)>& body) {
  CheckResult res{id, std::move(name), false, "", 0.0};
  const auto start = std::chrono::steady_clock::now();
  try {
    body(res);
  } catch (const std::exception& e) {
    res.passed = false;
    res.detail = std::string("exception: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0.0 && res.seconds >= limit) {
    res.passed = false;
    res.detail += Fmt("; took %.2f s (limit %.0f s)", res.seconds, limit);
  }
  return res;
}

double Rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

struct Draw {
  double r, c1, c2;
  int n;
};

// Non-degenerate for every scenario: r exceeds c1 + c2.
Draw RandomDraw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> cost(0.1, 2.0);
  std::uniform_real_distribution<double> margin(1.05, 20.0);
  std::uniform_int_distribution<int> count(1, 10);
  Draw d{};
  d.c1 = cost(rng);
  d.c2 = cost(rng);
  d.r = (d.c1 + d.c2) * margin(rng);
  d.n = count(rng);
  return d;
}

// log F1 + log F2 of the stage-2 bargain, evaluated from the definitions.
double LogNash(double r, double c1, double c2, double beta, double d1, double d2,
               double a1, double a2) {
  const double total = a1 + a2;
  const double revenue = beta * r * std::log1p(total);
  const double f1 = a1 / total * revenue - c1 * a1 - d1;
  const double f2 = a2 / total * revenue - c2 * a2 - d2;
  if (!(f1 > 0.0 && f2 > 0.0)) return -INFINITY;
  return std::log(f1) + std::log(f2);
}

}  // namespace

CheckResult check_lambert_w(const VerifyOptions& opt) {
  return Timed(1, "lambert W round trip and log identity", 1.0, [&](CheckResult& res) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> expo(1.0, std::log(1e9));
    double worst_round = 0.0;
    double worst_identity = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double x = std::exp(expo(rng));
      const double w = lambert_w0(x);
      worst_round = std::max(worst_round, std::abs(w * std::exp(w) - x) / x);
      worst_identity = std::max(worst_identity, std::abs(log_x_over_w(x) - w) / w);
    }
    res.passed = worst_round < 1e-12 && worst_identity < 1e-12;
    res.detail = Fmt("max round-trip %.3g, max identity %.3g (limit 1e-12)", worst_round,
                     worst_identity);
  });
}

CheckResult check_closed_vs_oracle(const VerifyOptions& opt) {
  return Timed(2, "closed form against leader/follower oracle", 10.0, [&](CheckResult& res) {
    std::mt19937_64 rng(opt.seed + 2);
    oracle::SearchConfig cfg;
    double beta_err = 0.0;
    double effort_err = 0.0;
    for (int k = 0; k < 100; ++k) {
      const auto [r, c1, c2, n] = RandomDraw(rng);
      const double sum = c1 + c2;

      // symmetric competitive, followers respond as a profile
      const auto sym = closed_form::solve_symmetric_competitive(r, c1, n);
      const auto sym_leader = oracle::leader_optimum(
          [&, n = n](double b) {
            const double a = oracle::symmetric_profile_response(b, r, c1, n, cfg);
            return (1.0 - n * b) * r * std::log1p(n * a);
          },
          cfg);
      beta_err = std::max(beta_err, std::abs(sym_leader.beta - sym.contract.shares[0]));
      effort_err = std::max(effort_err,
                            std::abs(oracle::symmetric_profile_response(sym.contract.shares[0], r,
                                                                        c1, n, cfg) -
                                     sym.efforts.efforts[0]));

      // symmetric cooperative, joint effort
      const auto coop = closed_form::solve_symmetric_cooperative(r, c1, n);
      const auto coop_leader = oracle::leader_optimum(
          [&](double b) {
            return (1.0 - b) * r * std::log1p(oracle::best_response_effort(b, r, c1, 0.0, cfg));
          },
          cfg);
      beta_err = std::max(beta_err, std::abs(coop_leader.beta - *coop.contract.joint_share));
      effort_err = std::max(
          effort_err, std::abs(oracle::best_response_effort(*coop.contract.joint_share, r, c1, 0.0,
                                                            cfg) -
                               coop.total_effort));

      // public/private: beta1 = 0, private ISP alone
      const auto pp = closed_form::solve_public_private(r, c1, c2);
      const auto pp_leader = oracle::leader_optimum(
          [&](double b) {
            return (1.0 - b) * r * std::log1p(oracle::best_response_effort(b, r, c2, 0.0, cfg));
          },
          cfg);
      beta_err = std::max(beta_err, std::abs(pp_leader.beta - pp.contract.shares[1]));
      effort_err = std::max(effort_err,
                            std::abs(oracle::best_response_effort(pp.contract.shares[1], r, c2,
                                                                  0.0, cfg) -
                                     pp.efforts.efforts[1]));

      // asymmetric competitive: leader along the cost-proportional ray
      const auto asym = closed_form::solve_asymmetric_competitive(r, c1, c2).outcome();
      const auto asym_leader = oracle::leader_optimum(
          [&](double s) {
            const auto e = oracle::follower_equilibrium({s * c1 / sum, s * c2 / sum}, r,
                                                        {c1, c2}, cfg);
            return (1.0 - s) * r * std::log1p(e.total());
          },
          cfg);
      beta_err = std::max(beta_err, std::abs(asym_leader.beta - asym.contract.total_share()));
      const auto& a = asym.efforts.efforts;
      effort_err = std::max(
          {effort_err,
           std::abs(oracle::best_response_effort(asym.contract.shares[0], r, c1, a[1], cfg) - a[0]),
           std::abs(oracle::best_response_effort(asym.contract.shares[1], r, c2, a[0], cfg) - a[1])});

      // fixed public effort: ISP2 tops up to the joint optimum
      // half the largest fixed effort for which a zero share is not better
      const double a1_bar = 0.5 * std::expm1(pp.cp_utility / r);
      const auto fixed = closed_form::solve_fixed_public_effort_coop(r, c1, c2, a1_bar);
      const auto fixed_leader = oracle::leader_optimum(
          [&](double b) {
            return (1.0 - b) * r *
                   std::log1p(a1_bar + oracle::best_response_effort(b, r, c2, a1_bar, cfg));
          },
          cfg);
      beta_err = std::max(beta_err, std::abs(fixed_leader.beta - *fixed.contract.joint_share));
      effort_err = std::max(
          effort_err, std::abs(oracle::best_response_effort(*fixed.contract.joint_share, r, c2,
                                                            a1_bar, cfg) -
                               fixed.efforts.efforts[1]));
    }
    res.passed = beta_err < 1e-6 && effort_err < 1e-8;
    res.detail = Fmt("max |beta - leader| %.3g (limit 1e-6), max |a - best response| %.3g "
                     "(limit 1e-8)",
                     beta_err, effort_err);
  });
}

CheckResult check_foc_residuals(const VerifyOptions& opt) {
  return Timed(3, "first-order residuals of every closed-form solve", 0.0, [&](CheckResult& res) {
    std::mt19937_64 rng(opt.seed + 3);
    double worst = 0.0;
    std::string where = "none";
    auto track = [&](const EquilibriumOutcome& out, const char* name) {
      if (out.degenerate) return;
      if (out.foc_residual > worst) {
        worst = out.foc_residual;
        where = name;
      }
    };
    for (int k = 0; k < 200; ++k) {
      const auto [r, c1, c2, n] = RandomDraw(rng);
      track(closed_form::solve_public_private(r, c1, c2), "public-private");
      const double top = closed_form::solve_public_private(r, c1, c2).total_effort;
      track(closed_form::solve_public_private_regulated(r, c1, c2, 0.3 * top),
            "public-private-regulated");
      track(closed_form::solve_symmetric_competitive(r, c1, n), "symmetric-competitive");
      track(closed_form::solve_symmetric_cooperative(r, c1, n), "symmetric-cooperative");
      track(closed_form::solve_asymmetric_competitive(r, c1, c2).outcome(),
            "asymmetric-competitive");
      track(closed_form::solve_regulated_competitive(r, c1, c2), "regulated-competitive");
      for (Branch b : {Branch::kIsp1, Branch::kIsp2}) {
        track(closed_form::solve_regulated_cooperative(r, c1, c2, b), "regulated-cooperative");
      }
      track(closed_form::solve_fixed_public_effort_coop(r, c1, c2, 0.3 * top),
            "fixed-public-effort-coop");
      for (bool coop : {false, true}) {
        for (const auto& out : closed_form::solve_multi_cp(r, 0.7 * r, c1, c2, {coop, Branch::kIsp1})) {
          track(out, coop ? "multi-cp-cooperative" : "multi-cp-competitive");
        }
      }
    }
    res.passed = worst < 1e-9;
    res.detail = Fmt("max residual %.3g in %s (limit 1e-9)", worst, where.c_str());
  });
}

CheckResult check_n_scaling(const VerifyOptions&) {
  return Timed(4, "n-scaling of the symmetric competitive equilibrium", 1.0, [&](CheckResult& res) {
    const auto rep = compare::n_scaling_report(10.0, 0.5, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    int failed = 0;
    for (const auto& o : rep.orderings) failed += o.holds ? 0 : 1;
    res.passed = rep.all_hold() && rep.consistent() && !rep.orderings.empty();
    res.detail = Fmt("%d orderings, %d failed", static_cast<int>(rep.orderings.size()), failed);
  });
}

CheckResult check_symmetric_coincidence(const VerifyOptions& opt) {
  return Timed(5, "symmetric competitive and cooperative totals coincide", 0.0, [&](CheckResult& res) {
    std::mt19937_64 rng(opt.seed + 5);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const auto [r, c1, c2, n] = RandomDraw(rng);
      (void)c2;
      const auto comp = closed_form::solve_symmetric_competitive(r, c1, n);
      const auto coop = closed_form::solve_symmetric_cooperative(r, c1, n);
      worst = std::max({worst, Rel(comp.total_effort, coop.total_effort),
                        Rel(comp.contract.total_share(), coop.contract.total_share()),
                        Rel(comp.cp_utility, coop.cp_utility)});
    }
    res.passed = worst < 1e-9;
    res.detail = Fmt("max gap %.3g (limit 1e-9)", worst);
  });
}

CheckResult check_public_private(const VerifyOptions&) {
  return Timed(6, "one public ISP against two private ISPs", 0.0, [&](CheckResult& res) {
    const double c1 = 0.5;
    int cells = 0;
    int failed = 0;
    for (int i = 0; i < 20; ++i) {
      const double ratio = std::pow(8.0, i / 19.0);
      const double c2 = c1 * ratio;
      const double sum = c1 + c2;
      for (int j = 0; j < 20; ++j) {
        const double r = sum * 1.05 * std::pow(40.0 / 1.05, j / 19.0);
        const auto rep = compare::compare_public_private(r, c1, c2);
        ++cells;
        if (!rep.all_hold() || !rep.consistent()) ++failed;
      }
    }
    res.passed = failed == 0;
    res.detail = Fmt("%d grid cells, %d with a failed ordering", cells, failed);
  });
}

CheckResult check_nbs_numeric(const VerifyOptions&) {
  return Timed(7, "numerical Nash bargaining", 30.0, [&](CheckResult& res) {
    oracle::SearchConfig cfg;
    std::vector<std::string> problems;

    // symmetric costs reproduce the symmetric cooperative split
    {
      const double r = 10.0, c = 0.5;
      const auto sym = closed_form::solve_symmetric_cooperative(r, c, 2);
      for (double d : {0.0, 0.5}) {
        const auto b = oracle::nash_product_maximize(r, c, c, *sym.contract.joint_share, d, d, cfg);
        const double err = std::max(std::abs(b.efforts.efforts[0] - sym.efforts.efforts[0]),
                                    std::abs(b.efforts.efforts[1] - sym.efforts.efforts[1]));
        if (err > 1e-4) problems.push_back(Fmt("symmetric split off by %.3g", err));
      }
    }

    // asymmetric battery
    struct Case {
      double r, c1, c2, beta, d1, d2;
    };
    std::vector<Case> cases = {{10.0, 0.5, 1.0, 0.4, 0.0, 0.0},
                               {10.0, 0.5, 1.0, 0.3, 0.0, 0.0},
                               {20.0, 0.5, 2.0, 0.35, 0.0, 0.0},
                               {5.0, 1.0, 1.5, 0.5, 0.0, 0.0}};
    const auto [dc1, dc2] = bargaining::disagreement_point(DisagreementPolicy::RegulatedCompetitive(),
                                                           10.0, 0.5, 1.0);
    cases.push_back({10.0, 0.5, 1.0, 0.44, dc1, dc2});
    double worst_agree = 0.0, worst_fd = 0.0, worst_cell = 0.0;
    for (const auto& cs : cases) {
      const auto b = oracle::nash_product_maximize(cs.r, cs.c1, cs.c2, cs.beta, cs.d1, cs.d2, cfg);
      if (b.feasible_starts != cfg.multistart_count) {
        problems.push_back(Fmt("only %d of %d starts feasible", b.feasible_starts,
                               cfg.multistart_count));
      }
      worst_agree = std::max(worst_agree, b.multistart_agreement);
      const double a1 = b.efforts.efforts[0], a2 = b.efforts.efforts[1];
      auto g = [&](double x, double y) {
        return LogNash(cs.r, cs.c1, cs.c2, cs.beta, cs.d1, cs.d2, x, y);
      };
      const double h1 = 1e-6 * std::max(1.0, a1), h2 = 1e-6 * std::max(1.0, a2);
      worst_fd = std::max({worst_fd, std::abs((g(a1 + h1, a2) - g(a1 - h1, a2)) / (2 * h1)),
                           std::abs((g(a1, a2 + h2) - g(a1, a2 - h2)) / (2 * h2))});
      // dense grid: argmax must sit within one cell of the maximizer
      const double top = cs.beta * cs.r / std::min(cs.c1, cs.c2);
      const int m = 200;
      const double step = top / m;
      double best = -INFINITY, bx = 0, by = 0;
      for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
          const double v = g(i * step, j * step);
          if (v > best) best = v, bx = i * step, by = j * step;
        }
      }
      worst_cell = std::max({worst_cell, std::abs(bx - a1) / step, std::abs(by - a2) / step});
    }
    if (worst_agree > 1e-6) problems.push_back(Fmt("multistart spread %.3g", worst_agree));
    if (worst_fd > 1e-4) problems.push_back(Fmt("stationarity %.3g", worst_fd));
    if (worst_cell > 1.0) problems.push_back(Fmt("grid argmax %.3g cells away", worst_cell));

    // nested leader with equal costs lands on the symmetric cooperative outcome
    {
      const auto sym = closed_form::solve_symmetric_cooperative(10.0, 0.5, 2);
      const auto sol = oracle::solve_asymmetric_cooperative(10.0, 0.5, 0.5,
                                                            DisagreementPolicy::Zero(), cfg);
      const double err = std::max(Rel(*sol.outcome.contract.joint_share, *sym.contract.joint_share),
                                  Rel(sol.outcome.total_effort, sym.total_effort));
      if (err > 1e-4) problems.push_back(Fmt("nested leader off symmetric coop by %.3g", err));
    }

    res.passed = problems.empty();
    res.detail = Fmt("spread %.3g, stationarity %.3g, grid %.2f cells", worst_agree, worst_fd,
                     worst_cell);
    for (const auto& p : problems) res.detail += "; " + p;
  });
}

CheckResult check_nbs_closed(const VerifyOptions& opt) {
  return Timed(8, "closed-form bargaining split", 0.0, [&](CheckResult& res) {
    std::mt19937_64 rng(opt.seed + 8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_split = 0.0, worst_equal = 0.0, worst_sum = 0.0;
    for (int k = 0; k < 100; ++k) {
      const auto [r, c1, c2, n] = RandomDraw(rng);
      (void)n;
      const Branch branch = unit(rng) < 0.5 ? Branch::kIsp1 : Branch::kIsp2;
      const double cb = branch == Branch::kIsp1 ? c1 : c2;
      const auto coop = closed_form::solve_regulated_cooperative(r, c1, c2, branch);
      const double beta = *coop.contract.joint_share;
      const double a1 = coop.efforts.efforts[0], a2 = coop.efforts.efforts[1];
      const double scale = r * std::log(beta * r / cb);
      // reservation shares inside [0, 0.45 beta] each; d may come out negative
      const double d1 = 0.45 * beta * scale * unit(rng) - c1 * a1;
      const double d2 = 0.45 * beta * scale * unit(rng) - c2 * a2;

      const auto split = bargaining::nbs_split_closed(beta, a1, a2, d1, d2, r, c1, c2, cb);
      auto f1 = [&](double x) { return x * scale - c1 * a1 - d1; };
      auto f2 = [&](double x) { return (beta - x) * scale - c2 * a2 - d2; };
      // P(x) - P(y) = scale (x - y) (F2(y) - F1(x))
      const double lo = (c1 * a1 + d1) / scale, hi = beta - (c2 * a2 + d2) / scale;
      const double numeric = oracle::golden_section_max_diff(
          [&](double x, double y) { return scale * (x - y) * (f2(y) - f1(x)); }, lo, hi, 1e-15);
      worst_split = std::max(worst_split, std::abs(numeric - split.beta1));
      worst_equal = std::max(worst_equal, std::abs(f1(split.beta1) - f2(split.beta1)));
      worst_sum = std::max(worst_sum, std::abs(split.beta1 + split.beta2 - beta));
    }
    res.passed = worst_split < 1e-8 && worst_equal < 1e-9 && worst_sum < 1e-9;
    res.detail = Fmt("split gap %.3g (1e-8), surplus gap %.3g (1e-9), conservation %.3g (1e-9)",
                     worst_split, worst_equal, worst_sum);
  });
}

CheckResult check_shapley(const VerifyOptions& opt) {
  return Timed(9, "Shapley values", 0.0, [&](CheckResult& res) {
    std::mt19937_64 rng(opt.seed + 9);
    double worst_eff = 0.0, worst_sym = 0.0, worst_disc = 0.0;
    for (int k = 0; k < 50; ++k) {
      const auto [r, c1, c2, n] = RandomDraw(rng);
      (void)n;
      for (Branch b : {Branch::kIsp1, Branch::kIsp2}) {
        const auto rep = bargaining::shapley_closed(r, c1, c2, b);
        worst_eff = std::max(worst_eff, std::abs(rep.brute_phi1 + rep.brute_phi2 - rep.v12) /
                                            std::max(1.0, std::abs(rep.v12)));
        worst_disc = std::max(worst_disc, rep.discrepancy);
        const auto same = bargaining::shapley_closed(r, c1, c1, b);
        worst_sym = std::max(worst_sym, std::abs(same.brute_phi1 - same.brute_phi2));
      }
    }
    // constructed games: symmetric and dummy player
    const auto sym = oracle::shapley_brute([](unsigned s) { return s == 3u ? 3.0 : s ? 1.0 : 0.0; });
    const auto dummy = oracle::shapley_brute([](unsigned s) { return (s & 2u) ? 2.0 : 0.0; });
    const bool axioms = sym.phi1 == 1.5 && sym.phi2 == 1.5 && dummy.phi1 == 0.0 && dummy.phi2 == 2.0;
    res.passed = worst_eff < 1e-14 && worst_sym == 0.0 && axioms;
    res.detail = Fmt("efficiency %.3g, symmetry %.3g, closed-form discrepancy up to %.4g "
                     "(reported only)",
                     worst_eff, worst_sym, worst_disc);
  });
}

CheckResult check_cooperation_dominance(const VerifyOptions&) {
  return Timed(10, "regulated cooperation beats regulated competition", 0.0, [&](CheckResult& res) {
    const double c1 = 0.5;
    int cells = 0, failed = 0;
    double min_gap = INFINITY;
    for (double ratio : {1.0, 2.0, 4.0, 8.0}) {
      for (double r : {5.0, 10.0, 20.0}) {
        const auto rep = compare::compare_coop_comp(r, c1, c1 * ratio);
        ++cells;
        for (const auto& o : rep.orderings) min_gap = std::min(min_gap, o.gap);
        if (!rep.all_hold() || !rep.consistent()) ++failed;
      }
    }
    res.passed = failed == 0;
    res.detail = Fmt("%d cells, %d failed, smallest gap %.4g", cells, failed, min_gap);
  });
}

std::vector<CheckResult> run_all(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(check_lambert_w(opt));
  out.push_back(check_closed_vs_oracle(opt));
  out.push_back(check_foc_residuals(opt));
  out.push_back(check_n_scaling(opt));
  out.push_back(check_symmetric_coincidence(opt));
  out.push_back(check_public_private(opt));
  out.push_back(check_nbs_numeric(opt));
  out.push_back(check_nbs_closed(opt));
  out.push_back(check_shapley(opt));
  out.push_back(check_cooperation_dominance(opt));
  return out;
}

}  // namespace revshare::verify
