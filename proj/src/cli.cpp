#include "revshare/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "revshare/bargaining.hpp"
#include "revshare/closed_form.hpp"
#include "revshare/compare.hpp"
#include "revshare/errors.hpp"
#include "revshare/oracle.hpp"
#include "revshare/output.hpp"
#include "revshare/verify.hpp"

namespace revshare::cli {
namespace {

using output::Json;

const std::vector<std::string> kCompareNames = {"compare-public-private", "compare-coop-comp",
                                                "n-scaling"};
const std::vector<std::string> kSweepParams = {"r", "r2", "c", "c1", "c2", "n", "a1_bar"};

bool IsCompare(const std::string& s) {
  return std::find(kCompareNames.begin(), kCompareNames.end(), s) != kCompareNames.end();
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double ParseNumber(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw UsageError(flag + ": malformed number '" + text + "'");
  }
  return v;
}

std::vector<double> ParseCosts(const std::string& text) {
  std::vector<double> costs;
  for (const auto& part : Split(text, ',')) costs.push_back(ParseNumber(part, "--c"));
  if (costs.empty()) throw UsageError("--c: expected a comma-separated list of costs");
  return costs;
}

DisagreementPolicy ParseDisagreement(const std::string& text) {
  if (text == "zero") return DisagreementPolicy::Zero();
  if (text == "competitive") return DisagreementPolicy::RegulatedCompetitive();
  const auto parts = Split(text, ',');
  if (parts.size() != 2) {
    throw UsageError("--disagreement: expected zero, competitive or d1,d2; got '" + text + "'");
  }
  return DisagreementPolicy::Custom(ParseNumber(parts[0], "--disagreement"),
                                    ParseNumber(parts[1], "--disagreement"));
}

SweepAxis ParseSweep(const std::string& text) {
  const auto parts = Split(text, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw UsageError("--sweep: expected param:from:to:steps, got '" + text + "'");
  }
  SweepAxis axis;
  axis.param = parts[0] == "a1-bar" ? "a1_bar" : parts[0];
  if (std::find(kSweepParams.begin(), kSweepParams.end(), axis.param) == kSweepParams.end()) {
    throw UsageError("--sweep: unknown parameter '" + parts[0] + "'");
  }
  axis.from = ParseNumber(parts[1], "--sweep");
  axis.to = ParseNumber(parts[2], "--sweep");
  if (parts.size() == 4) {
    const double steps = ParseNumber(parts[3], "--sweep");
    if (steps != std::floor(steps) || steps < 2 || steps > 100000) {
      throw UsageError("--sweep: steps must be an integer >= 2");
    }
    axis.steps = static_cast<int>(steps);
  } else if (axis.param == "n") {
    if (axis.from != std::floor(axis.from) || axis.to != std::floor(axis.to) || axis.to <= axis.from) {
      throw UsageError("--sweep: n range needs integers with from < to");
    }
    axis.steps = static_cast<int>(axis.to - axis.from) + 1;
  } else {
    throw UsageError("--sweep: steps missing in '" + text + "'");
  }
  return axis;
}

Format ParseFormat(const std::string& text) {
  if (text == "table") return Format::kTable;
  if (text == "csv") return Format::kCsv;
  if (text == "json") return Format::kJson;
  throw UsageError("--format: expected table, csv or json; got '" + text + "'");
}

Branch ParseBranchFlag(const std::string& text) {
  const auto b = parse_branch(text);
  if (!b) throw UsageError("--branch: expected isp1 or isp2; got '" + text + "'");
  return *b;
}

ScenarioKind ScenarioOf(const std::string& name) {
  const auto k = parse_scenario(name);
  if (!k) throw UsageError("--scenario: unknown scenario '" + name + "'");
  return *k;
}

// Config values may be numbers or strings; both go through the flag parsers.
std::string ConfigText(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return output::format_number(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + ConfigText(v[i], key);
    return s;
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  throw UsageError("--config: bad value for '" + key + "'");
}

struct RawFlags {
  std::optional<std::string> scenario, r, c, n, a1_bar, r2, branch, disagreement, sweep, format,
      plot, out, config;
  bool nbs = false;
};

void ApplyConfig(const std::string& path, RawFlags& raw) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const std::exception& e) {
    throw UsageError("--config: invalid JSON in '" + path + "': " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("--config: top level must be an object");
  auto fill = [&](std::optional<std::string>& slot, const Json& v, const std::string& key) {
    if (!slot) slot = ConfigText(v, key);
  };
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string& k = it.key();
    if (k == "command") continue;
    if (k == "scenario") fill(raw.scenario, *it, k);
    else if (k == "r") fill(raw.r, *it, k);
    else if (k == "c") fill(raw.c, *it, k);
    else if (k == "n") fill(raw.n, *it, k);
    else if (k == "a1_bar" || k == "a1-bar") fill(raw.a1_bar, *it, k);
    else if (k == "r2") fill(raw.r2, *it, k);
    else if (k == "branch") fill(raw.branch, *it, k);
    else if (k == "disagreement") fill(raw.disagreement, *it, k);
    else if (k == "sweep") fill(raw.sweep, *it, k);
    else if (k == "format") fill(raw.format, *it, k);
    else if (k == "plot") fill(raw.plot, *it, k);
    else if (k == "out") fill(raw.out, *it, k);
    else if (k == "nbs") raw.nbs = raw.nbs || (it->is_boolean() && it->get<bool>());
    else throw UsageError("--config: unknown key '" + k + "'");
  }
}

void RequirePositive(const std::optional<double>& v, const char* flag) {
  if (v && !(*v > 0.0)) throw UsageError(std::string(flag) + ": must be positive");
}

// Scenario-specific required flags.
void CheckScenarioParams(const RunSpec& s, ScenarioKind kind) {
  const std::string name(to_string(kind));
  if (!s.r) throw UsageError("--r: required for scenario " + name);
  if (s.costs.empty()) throw UsageError("--c: required for scenario " + name);
  switch (kind) {
    case ScenarioKind::kSymmetricCompetitive:
    case ScenarioKind::kSymmetricCooperative:
      if (s.costs.size() == 1 && !s.n) throw UsageError("--n: required for scenario " + name);
      if (std::any_of(s.costs.begin(), s.costs.end(), [&](double c) { return c != s.costs[0]; })) {
        throw UsageError("--c: scenario " + name + " needs equal costs");
      }
      if (s.costs.size() > 1 && s.n && *s.n != static_cast<int>(s.costs.size())) {
        throw UsageError("--n: does not match the number of costs given in --c");
      }
      break;
    default:
      if (s.costs.size() != 2) throw UsageError("--c: scenario " + name + " needs two costs c1,c2");
  }
  if ((kind == ScenarioKind::kPublicPrivateRegulated ||
       kind == ScenarioKind::kFixedPublicEffortCooperative) && !s.a1_bar) {
    throw UsageError("--a1-bar: required for scenario " + name);
  }
  if ((kind == ScenarioKind::kMultiCpCompetitive || kind == ScenarioKind::kMultiCpCooperative) &&
      !s.r2) {
    throw UsageError("--r2: required for scenario " + name);
  }
}

void CheckCompareParams(const RunSpec& s) {
  if (!s.r) throw UsageError("--r: required for " + s.scenario);
  if (s.scenario == "n-scaling") {
    if (s.costs.empty()) throw UsageError("--c: required for n-scaling");
    if (!s.n) throw UsageError("--n: required for n-scaling (largest n)");
  } else if (s.costs.size() != 2) {
    throw UsageError("--c: " + s.scenario + " needs two costs c1,c2");
  }
}

Json ParamsJson(const RunSpec& s) {
  Json p;
  p["r"] = output::number(*s.r);
  Json c = Json::array();
  for (double v : s.costs) c.push_back(output::number(v));
  p["c"] = c;
  if (s.n) p["n"] = *s.n;
  if (s.a1_bar) p["a1_bar"] = output::number(*s.a1_bar);
  if (s.r2) p["r2"] = output::number(*s.r2);
  return p;
}

int SymmetricCount(const RunSpec& s) {
  return s.n ? *s.n : static_cast<int>(s.costs.size());
}

Json SolveJson(const RunSpec& s) {
  const ScenarioKind kind = ScenarioOf(s.scenario);
  CheckScenarioParams(s, kind);
  const double r = *s.r;
  const double c1 = s.costs[0];
  const double c2 = s.costs.size() > 1 ? s.costs[1] : c1;
  Json j;
  j["scenario"] = to_string(kind);
  j["params"] = ParamsJson(s);

  if (kind == ScenarioKind::kMultiCpCompetitive || kind == ScenarioKind::kMultiCpCooperative) {
    closed_form::MultiCpMode mode{kind == ScenarioKind::kMultiCpCooperative,
                                  s.branch.value_or(Branch::kIsp1)};
    if (mode.cooperative) j["params"]["branch"] = to_string(mode.branch);
    const auto outs = closed_form::solve_multi_cp(r, *s.r2, c1, c2, mode);
    for (const char* key : {"contract", "efforts", "demand", "utilities", "residuals", "degenerate"}) {
      j[key] = Json::object();
    }
    for (std::size_t k = 0; k < outs.size(); ++k) {
      const auto body = output::outcome_body(outs[k]);
      const std::string cp = "cp" + std::to_string(k + 1);
      for (auto it = body.begin(); it != body.end(); ++it) j[it.key()][cp] = *it;
    }
    return j;
  }

  const MarketParams params(r, s.costs.size() > 1 ? s.costs
                                                  : std::vector<double>(
                                                        kind == ScenarioKind::kSymmetricCompetitive ||
                                                                kind == ScenarioKind::kSymmetricCooperative
                                                            ? SymmetricCount(s)
                                                            : 1,
                                                        c1));
  const auto report = validate(params, kind);
  EquilibriumOutcome out;
  const bool joint = kind == ScenarioKind::kSymmetricCooperative ||
                     kind == ScenarioKind::kAsymmetricCooperative ||
                     kind == ScenarioKind::kRegulatedCooperative ||
                     kind == ScenarioKind::kFixedPublicEffortCooperative;
  if (!report.non_degenerate) {
    out = degenerate_outcome(params, joint);
  } else {
    switch (kind) {
      case ScenarioKind::kPublicPrivate:
        out = closed_form::solve_public_private(r, c1, c2);
        break;
      case ScenarioKind::kPublicPrivateRegulated:
        out = closed_form::solve_public_private_regulated(r, c1, c2, *s.a1_bar);
        break;
      case ScenarioKind::kSymmetricCompetitive:
        out = closed_form::solve_symmetric_competitive(r, c1, SymmetricCount(s));
        break;
      case ScenarioKind::kSymmetricCooperative:
        out = closed_form::solve_symmetric_cooperative(r, c1, SymmetricCount(s));
        break;
      case ScenarioKind::kAsymmetricCompetitive: {
        const auto eq = closed_form::solve_asymmetric_competitive(r, c1, c2);
        out = eq.outcome();
        j["params"]["split"] = output::number(eq.split_parameter);
        break;
      }
      case ScenarioKind::kAsymmetricCooperative: {
        j["params"]["disagreement"] = s.disagreement.describe();
        out = oracle::solve_asymmetric_cooperative(r, c1, c2, s.disagreement).outcome;
        break;
      }
      case ScenarioKind::kRegulatedCompetitive:
        out = closed_form::solve_regulated_competitive(r, c1, c2);
        break;
      case ScenarioKind::kRegulatedCooperative: {
        Branch b;
        if (s.branch) {
          b = *s.branch;
          out = closed_form::solve_regulated_cooperative(r, c1, c2, b);
        } else {
          auto pref = closed_form::solve_regulated_cooperative_preferred(r, c1, c2);
          b = pref.branch;
          out = std::move(pref.outcome);
        }
        j["params"]["branch"] = to_string(b);
        break;
      }
      case ScenarioKind::kFixedPublicEffortCooperative:
        out = closed_form::solve_fixed_public_effort_coop(r, c1, c2, *s.a1_bar);
        break;
      default:
        throw UsageError("--scenario: unsupported scenario");
    }
  }
  const auto body = output::outcome_body(out);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = *it;
  return j;
}

Json CompareJson(const RunSpec& s) {
  CheckCompareParams(s);
  const double r = *s.r;
  if (s.scenario == "n-scaling") {
    std::vector<int> ns;
    for (int k = 1; k <= *s.n; ++k) ns.push_back(k);
    return output::report_json(compare::n_scaling_report(r, s.costs[0], ns));
  }
  if (s.scenario == "compare-public-private") {
    return output::report_json(compare::compare_public_private(r, s.costs[0], s.costs[1]));
  }
  compare::CoopCompOptions opt;
  opt.include_nbs = s.include_nbs;
  opt.disagreement = s.disagreement;
  auto j = output::report_json(compare::compare_coop_comp(r, s.costs[0], s.costs[1], opt));
  return j;
}

Json PointJson(const RunSpec& s) { return IsCompare(s.scenario) ? CompareJson(s) : SolveJson(s); }

RunSpec AtSweepPoint(RunSpec s, const SweepAxis& axis, int i) {
  const double t = axis.steps == 1 ? 0.0 : static_cast<double>(i) / (axis.steps - 1);
  const double v = axis.from + t * (axis.to - axis.from);
  const auto& p = axis.param;
  if (p == "r") s.r = v;
  else if (p == "r2") s.r2 = v;
  else if (p == "a1_bar") s.a1_bar = v;
  else if (p == "n") s.n = static_cast<int>(std::lround(v));
  else if (p == "c") std::fill(s.costs.begin(), s.costs.end(), v);
  else {
    const std::size_t idx = p == "c1" ? 0 : 1;
    if (s.costs.size() <= idx) throw UsageError("--sweep: " + p + " needs two costs in --c");
    s.costs[idx] = v;
  }
  return s;
}

double SweepValue(const RunSpec& s, const std::string& p) {
  if (p == "r") return *s.r;
  if (p == "r2") return *s.r2;
  if (p == "a1_bar") return *s.a1_bar;
  if (p == "n") return *s.n;
  if (p == "c" || p == "c1") return s.costs[0];
  return s.costs[1];
}

bool Plotted(const std::string& key) {
  auto ends = [&](const std::string& suffix) {
    return key.size() >= suffix.size() &&
           key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return key == "utilities.cp" || key == "efforts.total" || ends(".cp_utility") ||
         ends(".total_effort") || (key.rfind("utilities.cp.", 0) == 0) ||
         (key.rfind("efforts.total.", 0) == 0);
}

void Emit(const RunSpec& s, const std::string& text, std::ostream& out) {
  if (s.out) {
    std::ofstream f(*s.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + *s.out + "'");
    f << text;
  } else {
    out << text;
  }
}

std::string Render(Format f, const std::vector<Json>& rows, bool single) {
  switch (f) {
    case Format::kJson:
      return (single ? rows.front() : Json(rows)).dump(2) + "\n";
    case Format::kCsv:
      return output::to_csv(rows);
    case Format::kTable:
      return single ? output::to_key_value(rows.front()) : output::to_table(rows);
  }
  return "";
}

int RunSweep(const RunSpec& s, std::ostream& out, std::ostream& err) {
  const SweepAxis& axis = *s.sweep;
  // the scenario's parameter checks see the first point
  std::vector<Json> rows(axis.steps);
  std::vector<double> xs(axis.steps);
  std::atomic<int> next{0};
  const int workers =
      std::max(1, std::min<int>(axis.steps, static_cast<int>(std::thread::hardware_concurrency())));
  std::vector<std::string> usage(axis.steps);
  auto work = [&] {
    for (int i = next++; i < axis.steps; i = next++) {
      Json row;
      try {
        const RunSpec point = AtSweepPoint(s, axis, i);
        xs[i] = SweepValue(point, axis.param);
        row["sweep"] = {{axis.param, output::number(xs[i])}};
        const Json body = PointJson(point);
        for (auto it = body.begin(); it != body.end(); ++it) row[it.key()] = *it;
      } catch (const UsageError& e) {
        usage[i] = e.what();
      } catch (const std::exception& e) {
        row["scenario"] = s.scenario;
        row["error"] = e.what();
      }
      rows[i] = std::move(row);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (const auto& u : usage) {
    if (!u.empty()) throw UsageError(u);
  }

  Emit(s, Render(s.format, rows, false), out);
  if (s.plot) {
    std::vector<output::Series> series;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& [k, v] : output::flatten(rows[i])) {
        if (!Plotted(k)) continue;
        auto it = std::find_if(series.begin(), series.end(),
                               [&](const output::Series& x) { return x.name == k; });
        if (it == series.end()) {
          series.push_back({k, std::vector<double>(rows.size(), NAN)});
          it = series.end() - 1;
        }
        it->y[i] = v.empty() ? NAN : std::strtod(v.c_str(), nullptr);
      }
    }
    std::ofstream f(*s.plot, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + *s.plot + "'");
    f << output::svg_plot(s.scenario, axis.param, xs, series);
  }
  int failed = 0;
  for (const auto& row : rows) failed += row.contains("error") ? 1 : 0;
  if (failed) {
    err << "sweep: " << failed << " of " << rows.size() << " points failed\n";
    return 2;
  }
  return 0;
}

int RunVerify(const RunSpec& s, std::ostream& out) {
  const auto checks = verify::run_all();
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.passed;
  std::string text;
  if (s.format == Format::kJson) {
    text = Json{{"checks", output::checks_json(checks)}, {"passed", ok}}.dump(2) + "\n";
  } else if (s.format == Format::kCsv) {
    std::vector<Json> rows;
    for (const auto& j : output::checks_json(checks)) rows.push_back(j);
    text = output::to_csv(rows);
  } else {
    std::ostringstream os;
    for (const auto& c : checks) {
      os << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " ("
         << output::format_number(std::round(c.seconds * 1000) / 1000) << " s): " << c.detail << '\n';
    }
    os << (ok ? "all checks passed\n" : "verification FAILED\n");
    text = os.str();
  }
  Emit(s, text, out);
  return ok ? 0 : 2;
}

int RunShapley(const RunSpec& s, std::ostream& out) {
  if (!s.r) throw UsageError("--r: required for shapley");
  if (s.costs.size() != 2) throw UsageError("--c: shapley needs two costs c1,c2");
  std::vector<Branch> branches =
      s.branch ? std::vector<Branch>{*s.branch} : std::vector<Branch>{Branch::kIsp1, Branch::kIsp2};
  std::vector<Json> rows;
  for (Branch b : branches) {
    Json row;
    row["params"] = ParamsJson(s);
    const auto body = output::shapley_json(bargaining::shapley_closed(*s.r, s.costs[0], s.costs[1], b));
    for (auto it = body.begin(); it != body.end(); ++it) row[it.key()] = *it;
    rows.push_back(row);
  }
  Emit(s, Render(s.format, rows, rows.size() == 1), out);
  return 0;
}

int RunNbs(const RunSpec& s, std::ostream& out) {
  if (!s.r) throw UsageError("--r: required for nbs");
  if (s.costs.size() != 2) throw UsageError("--c: nbs needs two costs c1,c2");
  const double r = *s.r, c1 = s.costs[0], c2 = s.costs[1];
  Branch branch;
  EquilibriumOutcome coop;
  if (s.branch) {
    branch = *s.branch;
    coop = closed_form::solve_regulated_cooperative(r, c1, c2, branch);
  } else {
    auto pref = closed_form::solve_regulated_cooperative_preferred(r, c1, c2);
    branch = pref.branch;
    coop = std::move(pref.outcome);
  }
  const double beta = *coop.contract.joint_share;
  const auto [d1, d2] = bargaining::disagreement_point(s.disagreement, r, c1, c2);
  const double a1 = coop.efforts.efforts[0], a2 = coop.efforts.efforts[1];

  Json j;
  j["params"] = ParamsJson(s);
  j["params"]["branch"] = to_string(branch);
  j["params"]["disagreement"] = s.disagreement.describe();
  j["joint_share"] = output::number(beta);
  j["disagreement"] = {output::number(d1), output::number(d2)};
  j["efforts"] = {output::number(a1), output::number(a2)};
  int status = 0;
  try {
    const auto split = bargaining::nbs_split_closed(beta, a1, a2, d1, d2, r, c1, c2,
                                                    branch == Branch::kIsp1 ? c1 : c2);
    j["closed"] = {{"beta1", output::number(split.beta1)},
                   {"beta2", output::number(split.beta2)},
                   {"clamped", split.clamped},
                   {"both_bind", split.both_bind}};
  } catch (const InfeasibleBargain& e) {
    j["closed"] = {{"error", e.what()}};
    status = 2;
  }
  try {
    const auto b = oracle::nash_product_maximize(r, c1, c2, beta, d1, d2);
    j["numeric"] = {{"efforts", {output::number(b.efforts.efforts[0]),
                                 output::number(b.efforts.efforts[1])}},
                    {"share_split", {output::number(b.share_split[0]),
                                     output::number(b.share_split[1])}},
                    {"surpluses", {output::number(b.surpluses[0]), output::number(b.surpluses[1])}},
                    {"converged", b.converged},
                    {"multistart_agreement", output::number(b.multistart_agreement)}};
  } catch (const InfeasibleBargain& e) {
    j["numeric"] = {{"error", e.what()}};
    status = 2;
  }
  Emit(s, Render(s.format, {j}, true), out);
  return status;
}

}  // namespace

RunSpec parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Revenue-sharing equilibria between content providers and ISPs", "revshare"};
  app.require_subcommand(1);
  RawFlags raw;
  auto add_common = [&](CLI::App* sub, bool scenario_params) {
    if (scenario_params) {
      sub->add_option("--scenario", raw.scenario, "scenario or comparison name");
      sub->add_option("--r", raw.r, "CP revenue per unit demand");
      sub->add_option("--c", raw.c, "ISP costs, comma separated");
      sub->add_option("--n", raw.n, "number of symmetric ISPs");
      sub->add_option("--a1-bar", raw.a1_bar, "fixed effort of ISP1");
      sub->add_option("--r2", raw.r2, "revenue rate of the second CP");
      sub->add_option("--branch", raw.branch, "isp1 or isp2");
      sub->add_option("--disagreement", raw.disagreement, "zero, competitive or d1,d2");
      sub->add_option("--config", raw.config, "JSON file with the same fields");
    }
    sub->add_option("--format", raw.format, "table, csv or json");
    sub->add_option("--out", raw.out, "write output to this file");
  };
  auto* solve = app.add_subcommand("solve", "solve one scenario");
  add_common(solve, true);
  auto* sweep = app.add_subcommand("sweep", "solve along one parameter");
  add_common(sweep, true);
  sweep->add_option("--sweep", raw.sweep, "param:from:to:steps");
  sweep->add_option("--plot", raw.plot, "SVG output path");
  sweep->add_flag("--nbs", raw.nbs, "include the bargained outcome in compare-coop-comp");
  auto* cmp = app.add_subcommand("compare", "compare scenarios");
  add_common(cmp, true);
  cmp->add_flag("--nbs", raw.nbs, "include the bargained outcome in compare-coop-comp");
  auto* ver = app.add_subcommand("verify", "check closed forms against the oracles");
  add_common(ver, false);
  auto* shap = app.add_subcommand("shapley", "Shapley values of the regulated cooperative game");
  add_common(shap, true);
  auto* nbs = app.add_subcommand("nbs", "bargaining split of the regulated cooperative share");
  add_common(nbs, true);

  std::vector<const char*> args;
  for (const auto& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    if (code == 0) throw HelpRequested(o.str());
    throw UsageError(er.str().empty() ? e.what() : er.str());
  }

  RunSpec spec;
  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "solve") spec.command = Command::kSolve;
  else if (name == "sweep") spec.command = Command::kSweep;
  else if (name == "compare") spec.command = Command::kCompare;
  else if (name == "verify") spec.command = Command::kVerify;
  else if (name == "shapley") spec.command = Command::kShapley;
  else spec.command = Command::kNbs;

  if (raw.config) ApplyConfig(*raw.config, raw);

  if (raw.scenario) spec.scenario = *raw.scenario;
  if (raw.r) spec.r = ParseNumber(*raw.r, "--r");
  if (raw.c) spec.costs = ParseCosts(*raw.c);
  if (raw.n) {
    const double n = ParseNumber(*raw.n, "--n");
    if (n != std::floor(n) || n < 1 || n > 1e6) throw UsageError("--n: must be a positive integer");
    spec.n = static_cast<int>(n);
  }
  if (raw.a1_bar) spec.a1_bar = ParseNumber(*raw.a1_bar, "--a1-bar");
  if (raw.r2) spec.r2 = ParseNumber(*raw.r2, "--r2");
  if (raw.branch) spec.branch = ParseBranchFlag(*raw.branch);
  if (raw.disagreement) spec.disagreement = ParseDisagreement(*raw.disagreement);
  if (raw.sweep) spec.sweep = ParseSweep(*raw.sweep);
  if (raw.format) spec.format = ParseFormat(*raw.format);
  spec.plot = raw.plot;
  spec.out = raw.out;
  spec.include_nbs = raw.nbs;

  RequirePositive(spec.r, "--r");
  RequirePositive(spec.r2, "--r2");
  if (std::any_of(spec.costs.begin(), spec.costs.end(), [](double c) { return !(c > 0.0); })) {
    throw UsageError("--c: costs must be positive");
  }
  if (spec.a1_bar && *spec.a1_bar < 0.0) throw UsageError("--a1-bar: must be non-negative");

  switch (spec.command) {
    case Command::kSolve:
    case Command::kSweep:
    case Command::kCompare: {
      if (spec.scenario.empty()) throw UsageError("--scenario: required for " + name);
      const bool cmp_name = IsCompare(spec.scenario);
      if (!cmp_name) ScenarioOf(spec.scenario);
      if (spec.command == Command::kCompare) {
        if (!cmp_name) {
          throw UsageError("--scenario: compare needs compare-public-private, compare-coop-comp "
                           "or n-scaling");
        }
        CheckCompareParams(spec);
      } else if (spec.command == Command::kSolve) {
        if (cmp_name) throw UsageError("--scenario: use the compare command for " + spec.scenario);
        CheckScenarioParams(spec, ScenarioOf(spec.scenario));
      } else {
        if (!spec.sweep) throw UsageError("--sweep: required for sweep");
        const RunSpec first = AtSweepPoint(spec, *spec.sweep, 0);
        if (cmp_name) CheckCompareParams(first);
        else CheckScenarioParams(first, ScenarioOf(first.scenario));
      }
      break;
    }
    default:
      break;
  }
  return spec;
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    switch (spec.command) {
      case Command::kSolve: {
        const Json j = SolveJson(spec);
        Emit(spec, Render(spec.format, {j}, true), out);
        return 0;
      }
      case Command::kCompare: {
        const Json j = CompareJson(spec);
        Emit(spec, Render(spec.format, {j}, true), out);
        return j.value("all_hold", true) ? 0 : 2;
      }
      case Command::kSweep:
        return RunSweep(spec, out, err);
      case Command::kVerify:
        return RunVerify(spec, out);
      case Command::kShapley:
        return RunShapley(spec, out);
      case Command::kNbs:
        return RunNbs(spec, out);
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    const RunSpec spec = parse_args(args);
    return run(spec, std::cout, std::cerr);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return 0;
  } catch (const UsageError& e) {
    std::string msg = e.what();
    if (!msg.empty() && msg.back() == '\n') msg.pop_back();
    std::cerr << "usage error: " << msg << '\n';
    return 1;
  }
}

}  // namespace revshare::cli
