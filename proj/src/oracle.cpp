#include "revshare/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "revshare/bargaining.hpp"
#include "revshare/errors.hpp"

namespace revshare::oracle {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt 5 - 1) / 2
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using Vec2 = std::array<double, 2>;

double Halton(int index, int base) {
  double f = 1.0;
  double h = 0.0;
  while (index > 0) {
    f /= base;
    h += f * (index % base);
    index /= base;
  }
  return h;
}

// Surpluses of the two bargainers at efforts (a1, a2).
struct Surplus {
  double f1;
  double f2;
};

struct NashProblem {
  double r, c1, c2, beta, d1, d2;

  Surplus at(double a1, double a2) const {
    const double total = a1 + a2;
    const double revenue = beta * r * std::log1p(total);
    const double w1 = total > 0.0 ? a1 / total : 0.5;
    return {w1 * revenue - c1 * a1 - d1, (1.0 - w1) * revenue - c2 * a2 - d2};
  }

  // Simplex objective over u = log a: -(log F1 + log F2), penalized outside.
  double cost(const Vec2& u) const {
    const auto s = at(std::exp(u[0]), std::exp(u[1]));
    if (s.f1 > 0.0 && s.f2 > 0.0) return -(std::log(s.f1) + std::log(s.f2));
    return 1e6 - std::min(s.f1, s.f2);
  }

  // Gradient of log F1 + log F2 in effort coordinates.
  Vec2 gradient(double a1, double a2) const {
    const double total = a1 + a2;
    const double log_d = std::log1p(total);
    const double k = beta * r;
    const double cross = 1.0 / (total * (total + 1.0)) - log_d / (total * total);
    const double f1_a1 = k * (log_d * a2 / (total * total) + a1 / (total * (total + 1.0))) - c1;
    const double f1_a2 = k * a1 * cross;
    const double f2_a2 = k * (log_d * a1 / (total * total) + a2 / (total * (total + 1.0))) - c2;
    const double f2_a1 = k * a2 * cross;
    const auto s = at(a1, a2);
    return {f1_a1 / s.f1 + f2_a1 / s.f2, f1_a2 / s.f1 + f2_a2 / s.f2};
  }

  double log_product(double a1, double a2) const {
    const auto s = at(a1, a2);
    if (!(s.f1 > 0.0 && s.f2 > 0.0)) return kNegInf;
    return std::log(s.f1) + std::log(s.f2);
  }
};

Vec2 NelderMead(const NashProblem& p, Vec2 start, int max_iters) {
  std::array<Vec2, 3> x{start, start, start};
  x[1][0] += 0.25;
  x[2][1] += 0.25;
  std::array<double, 3> f{};
  for (int i = 0; i < 3; ++i) f[i] = p.cost(x[i]);

  for (int iter = 0; iter < max_iters; ++iter) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
    const int best = idx[0], mid = idx[1], worst = idx[2];

    double diameter = 0.0;
    for (int i : {mid, worst}) {
      diameter = std::max({diameter, std::abs(x[i][0] - x[best][0]),
                           std::abs(x[i][1] - x[best][1])});
    }
    if (diameter < 1e-13) break;

    const Vec2 centroid{(x[best][0] + x[mid][0]) / 2, (x[best][1] + x[mid][1]) / 2};
    auto along = [&](double t) {
      return Vec2{centroid[0] + t * (x[worst][0] - centroid[0]),
                  centroid[1] + t * (x[worst][1] - centroid[1])};
    };
    const Vec2 xr = along(-1.0);
    const double fr = p.cost(xr);
    if (fr < f[best]) {
      const Vec2 xe = along(-2.0);
      const double fe = p.cost(xe);
      if (fe < fr) {
        x[worst] = xe, f[worst] = fe;
      } else {
        x[worst] = xr, f[worst] = fr;
      }
      continue;
    }
    if (fr < f[mid]) {
      x[worst] = xr, f[worst] = fr;
      continue;
    }
    const bool outside = fr < f[worst];
    const Vec2 xc = along(outside ? -0.5 : 0.5);
    const double fc = p.cost(xc);
    if (fc < (outside ? fr : f[worst])) {
      x[worst] = xc, f[worst] = fc;
      continue;
    }
    for (int i : {mid, worst}) {
      x[i] = {x[best][0] + 0.5 * (x[i][0] - x[best][0]),
              x[best][1] + 0.5 * (x[i][1] - x[best][1])};
      f[i] = p.cost(x[i]);
    }
  }
  const int best = static_cast<int>(std::min_element(f.begin(), f.end()) - f.begin());
  return x[best];
}

// Newton on the analytic gradient, Hessian by central differences.
Vec2 NewtonPolish(const NashProblem& p, Vec2 a) {
  for (int iter = 0; iter < 30; ++iter) {
    const Vec2 g = p.gradient(a[0], a[1]);
    std::array<Vec2, 2> h{};
    for (int j = 0; j < 2; ++j) {
      const double step = 1e-6 * std::max(1.0, a[j]);
      Vec2 up = a, down = a;
      up[j] += step;
      down[j] -= step;
      if (down[j] <= 0.0) return a;
      const Vec2 gu = p.gradient(up[0], up[1]);
      const Vec2 gd = p.gradient(down[0], down[1]);
      h[0][j] = (gu[0] - gd[0]) / (2 * step);
      h[1][j] = (gu[1] - gd[1]) / (2 * step);
    }
    const double sym = 0.5 * (h[0][1] + h[1][0]);
    const double det = h[0][0] * h[1][1] - sym * sym;
    if (!(h[0][0] < 0.0 && det > 0.0)) return a;
    const Vec2 delta{-(h[1][1] * g[0] - sym * g[1]) / det,
                     -(h[0][0] * g[1] - sym * g[0]) / det};
    const double base = p.log_product(a[0], a[1]);
    double t = 1.0;
    bool moved = false;
    for (int k = 0; k < 30; ++k, t *= 0.5) {
      const Vec2 trial{a[0] + t * delta[0], a[1] + t * delta[1]};
      if (trial[0] <= 0.0 || trial[1] <= 0.0) continue;
      if (p.log_product(trial[0], trial[1]) >= base) {
        a = trial;
        moved = true;
        break;
      }
    }
    const double size = std::max(std::abs(delta[0]), std::abs(delta[1]));
    if (!moved || size < 1e-15 * (1.0 + std::max(a[0], a[1]))) break;
  }
  return a;
}

}  // namespace

void SearchConfig::check() const {
  if (grid_points < 3) throw DomainError("grid_points must be at least 3");
  if (!(refine_tolerance > 0.0)) throw DomainError("refine_tolerance must be positive");
  if (multistart_count < 1) throw DomainError("multistart_count must be at least 1");
  if (max_simplex_iters < 1) throw DomainError("max_simplex_iters must be at least 1");
}

double golden_section_max_diff(const std::function<double(double, double)>& diff,
                               double lo, double hi, double tolerance) {
  if (!(hi > lo)) return lo;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  while (hi - lo > tolerance) {
    if (diff(x1, x2) >= 0.0) {
      hi = x2;
      x2 = x1;
      x1 = hi - kInvPhi * (hi - lo);
    } else {
      lo = x1;
      x1 = x2;
      x2 = lo + kInvPhi * (hi - lo);
    }
    if (x1 >= x2) break;  // ran out of representable points
  }
  return 0.5 * (lo + hi);
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tolerance) {
  return golden_section_max_diff([&](double x, double y) { return f(x) - f(y); },
                                 lo, hi, tolerance);
}

double best_response_effort(double beta, double r, double c, double others_total,
                            const SearchConfig& cfg) {
  if (!(c > 0.0)) throw DomainError("best_response_effort: cost must be positive");
  if (!(others_total >= 0.0)) throw DomainError("best_response_effort: negative effort");
  if (!(beta > 0.0)) return 0.0;
  const double hi = beta * r / c;
  const double base = others_total + 1.0;
  // f(x) - f(y) = beta r log1p((x - y)/(base + y)) - c (x - y)
  auto diff = [&](double x, double y) {
    return beta * r * std::log1p((x - y) / (base + y)) - c * (x - y);
  };
  const double tol = std::min(cfg.refine_tolerance, 1e-12) * std::max(1.0, hi);
  const double x = golden_section_max_diff(diff, 0.0, hi, tol);
  return diff(0.0, x) >= 0.0 ? 0.0 : x;
}

double symmetric_profile_response(double beta, double r, double c, int n,
                                  const SearchConfig& cfg) {
  if (n < 1) throw DomainError("symmetric_profile_response: n must be at least 1");
  // Substituting x = n a turns the profile problem into a single follower
  // with cost c/n.
  return best_response_effort(beta, r, c / n, 0.0, cfg) / n;
}

EffortProfile follower_equilibrium(const std::vector<double>& shares, double r,
                                   const std::vector<double>& costs,
                                   const SearchConfig& cfg) {
  if (shares.size() != costs.size()) {
    throw DimensionMismatch("follower_equilibrium: shares and costs differ in size");
  }
  std::vector<double> a(costs.size(), 0.0);
  for (int sweep = 0; sweep < 10000; ++sweep) {
    double moved = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      double others = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (j != i) others += a[j];
      }
      const double next = best_response_effort(shares[i], r, costs[i], others, cfg);
      moved = std::max(moved, std::abs(next - a[i]));
      a[i] = next;
    }
    if (moved <= 1e-13 * (1.0 + std::accumulate(a.begin(), a.end(), 0.0))) {
      return EffortProfile{a};
    }
  }
  throw ConvergenceError("follower_equilibrium: best responses did not settle");
}

LeaderResult leader_optimum(const std::function<double(double)>& objective,
                            const SearchConfig& cfg) {
  cfg.check();
  const int m = cfg.grid_points;
  std::vector<double> values(m);
  for (int i = 0; i < m; ++i) {
    const double v = objective(static_cast<double>(i) / (m - 1));
    values[i] = std::isfinite(v) ? v : kNegInf;
  }
  LeaderResult result;
  int best = 0;
  for (int i = 0; i < m; ++i) {
    if (values[i] > values[best]) best = i;
    const double left = i > 0 ? values[i - 1] : kNegInf;
    const double right = i + 1 < m ? values[i + 1] : kNegInf;
    if (values[i] > left && values[i] > right) ++result.grid_peaks;
  }
  result.beta = static_cast<double>(best) / (m - 1);
  result.value = values[best];
  if (!std::isfinite(result.value)) return result;

  const double lo = static_cast<double>(std::max(best - 1, 0)) / (m - 1);
  const double hi = static_cast<double>(std::min(best + 1, m - 1)) / (m - 1);
  auto safe = [&](double b) {
    const double v = objective(b);
    return std::isfinite(v) ? v : kNegInf;
  };
  const double refined = golden_section_max(
      [&](double b) { return safe(b); }, lo, hi, cfg.refine_tolerance);
  const double refined_value = safe(refined);
  if (refined_value > result.value) {
    result.beta = refined;
    result.value = refined_value;
  }
  return result;
}

const char* to_string(KktKind kind) {
  switch (kind) {
    case KktKind::kInterior: return "interior";
    case KktKind::kBoundary1: return "boundary1";
    case KktKind::kBoundary2: return "boundary2";
  }
  return "?";
}

KktCase kkt_classify(double beta1, double beta2, double c1, double c2) {
  if (!(beta1 >= 0.0 && beta2 >= 0.0)) throw DomainError("kkt_classify: negative share");
  if (!(c1 > 0.0 && c2 > 0.0)) throw DomainError("kkt_classify: costs must be positive");
  if (beta1 == 0.0 && beta2 == 0.0) {
    throw DomainError("kkt_classify: zero shares give the excluded (0,0) case");
  }
  if (beta2 == 0.0) return {KktKind::kBoundary1, 0.0};
  if (beta1 == 0.0) return {KktKind::kBoundary2, 0.0};
  // Compare beta1 c2 with beta2 c1 to avoid dividing.
  const double lhs = beta1 * c2;
  const double rhs = beta2 * c1;
  if (std::abs(lhs - rhs) <= 1e-12 * std::max(lhs, rhs)) return {KktKind::kInterior, 0.0};
  if (lhs < rhs) return {KktKind::kBoundary2, rhs / beta1 - c2};
  return {KktKind::kBoundary1, lhs / beta2 - c1};
}

BargainingResult nash_product_maximize(double r, double c1, double c2,
                                       double beta, double d1, double d2,
                                       const SearchConfig& cfg) {
  cfg.check();
  if (!(r > 0.0 && c1 > 0.0 && c2 > 0.0)) {
    throw DomainError("nash_product_maximize: r and costs must be positive");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("nash_product_maximize: beta must lie in (0, 1)");
  }
  if (!std::isfinite(d1) || !std::isfinite(d2)) {
    throw DomainError("nash_product_maximize: disagreement must be finite");
  }
  const NashProblem problem{r, c1, c2, beta, d1, d2};
  const double lo = std::log(1e-3);
  const double hi = std::log(std::max(beta * r / std::min(c1, c2), 1e-2));

  std::vector<Vec2> found;
  for (int k = 0; k < cfg.multistart_count; ++k) {
    const Vec2 start{lo + Halton(k + 1, 2) * (hi - lo), lo + Halton(k + 1, 3) * (hi - lo)};
    const Vec2 u = NelderMead(problem, start, cfg.max_simplex_iters);
    Vec2 a{std::exp(u[0]), std::exp(u[1])};
    const auto s = problem.at(a[0], a[1]);
    if (!(s.f1 > 0.0 && s.f2 > 0.0)) continue;
    found.push_back(NewtonPolish(problem, a));
  }
  if (found.empty()) {
    throw InfeasibleBargain("no effort pair gives both ISPs more than the disagreement point");
  }

  BargainingResult result;
  result.starts = cfg.multistart_count;
  result.feasible_starts = static_cast<int>(found.size());
  const auto best = std::max_element(found.begin(), found.end(), [&](const Vec2& x, const Vec2& y) {
    return problem.log_product(x[0], x[1]) < problem.log_product(y[0], y[1]);
  });
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = i + 1; j < found.size(); ++j) {
      result.multistart_agreement =
          std::max(result.multistart_agreement, std::hypot(found[i][0] - found[j][0],
                                                           found[i][1] - found[j][1]));
    }
  }
  const double a1 = (*best)[0];
  const double a2 = (*best)[1];
  const auto s = problem.at(a1, a2);
  const Vec2 g = problem.gradient(a1, a2);
  result.efforts = EffortProfile{{a1, a2}};
  result.joint_share = beta;
  result.share_split = {beta * a1 / (a1 + a2), beta * a2 / (a1 + a2)};
  result.surpluses = {s.f1, s.f2};
  result.disagreement = {d1, d2};
  result.stationarity = std::max(std::abs(g[0]), std::abs(g[1]));
  result.converged = result.feasible_starts == result.starts &&
                     result.multistart_agreement <= 1e-6 && result.stationarity <= 1e-6;
  return result;
}

CooperativeSolution solve_asymmetric_cooperative_at(double r, double c1,
                                                    double c2, double beta,
                                                    const DisagreementPolicy& policy,
                                                    const SearchConfig& cfg) {
  const MarketParams params(r, {c1, c2});
  const auto [d1, d2] = bargaining::disagreement_point(policy, r, c1, c2);
  CooperativeSolution sol;
  sol.bargain = nash_product_maximize(r, c1, c2, beta, d1, d2, cfg);
  Contract contract{{sol.bargain.share_split[0], sol.bargain.share_split[1]}, beta};
  sol.outcome = make_outcome(params, std::move(contract), sol.bargain.efforts,
                             sol.bargain.stationarity);
  sol.outcome.diagnostics.emplace_back("multistart_agreement",
                                       sol.bargain.multistart_agreement);
  return sol;
}

CooperativeSolution solve_asymmetric_cooperative(double r, double c1, double c2,
                                                 const DisagreementPolicy& policy,
                                                 const SearchConfig& cfg) {
  cfg.check();
  const auto [d1, d2] = bargaining::disagreement_point(policy, r, c1, c2);
  auto objective = [&, d1 = d1, d2 = d2](double beta) {
    if (!(beta > 0.0 && beta < 1.0)) return kNegInf;
    try {
      const auto b = nash_product_maximize(r, c1, c2, beta, d1, d2, cfg);
      return (1.0 - beta) * r * std::log1p(b.efforts.total());
    } catch (const InfeasibleBargain&) {
      return kNegInf;
    }
  };
  const auto leader = leader_optimum(objective, cfg);
  if (!std::isfinite(leader.value)) {
    throw InfeasibleBargain("no joint share admits a feasible bargain");
  }
  auto sol = solve_asymmetric_cooperative_at(r, c1, c2, leader.beta, policy, cfg);
  sol.outer_multimodal = leader.grid_peaks > 1;
  sol.outcome.diagnostics.emplace_back("leader_grid_peaks", leader.grid_peaks);
  return sol;
}

ShapleyValues shapley_brute(const std::function<double(unsigned)>& value) {
  const double v0 = value(0u);
  const double v1 = value(1u);
  const double v2 = value(2u);
  const double v12 = value(3u);
  // Orders (1, 2) and (2, 1), each with weight one half.
  return {0.5 * ((v1 - v0) + (v12 - v2)), 0.5 * ((v12 - v1) + (v2 - v0))};
}

}  // namespace revshare::oracle
