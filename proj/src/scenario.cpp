#include "revshare/scenario.hpp"

#include <array>
#include <utility>

namespace revshare {
namespace {

constexpr std::array<std::pair<ScenarioKind, std::string_view>, 11> kNames{{
    {ScenarioKind::kPublicPrivate, "public-private"},
    {ScenarioKind::kPublicPrivateRegulated, "public-private-regulated"},
    {ScenarioKind::kSymmetricCompetitive, "symmetric-competitive"},
    {ScenarioKind::kSymmetricCooperative, "symmetric-cooperative"},
    {ScenarioKind::kAsymmetricCompetitive, "asymmetric-competitive"},
    {ScenarioKind::kAsymmetricCooperative, "asymmetric-cooperative"},
    {ScenarioKind::kRegulatedCompetitive, "regulated-competitive"},
    {ScenarioKind::kRegulatedCooperative, "regulated-cooperative"},
    {ScenarioKind::kFixedPublicEffortCooperative, "fixed-public-effort-coop"},
    {ScenarioKind::kMultiCpCompetitive, "multi-cp-competitive"},
    {ScenarioKind::kMultiCpCooperative, "multi-cp-cooperative"},
}};

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::string_view to_string(Branch branch) {
  return branch == Branch::kIsp1 ? "isp1" : "isp2";
}

std::optional<ScenarioKind> parse_scenario(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::optional<Branch> parse_branch(std::string_view name) {
  if (name == "isp1" || name == "1") return Branch::kIsp1;
  if (name == "isp2" || name == "2") return Branch::kIsp2;
  return std::nullopt;
}

const std::vector<ScenarioKind>& all_scenarios() {
  static const std::vector<ScenarioKind> kAll = [] {
    std::vector<ScenarioKind> v;
    for (const auto& entry : kNames) v.push_back(entry.first);
    return v;
  }();
  return kAll;
}

}  // namespace revshare
