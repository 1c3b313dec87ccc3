#ifndef REVSHARE_SCENARIO_HPP
#define REVSHARE_SCENARIO_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace revshare {

/// Which ISP's first-order condition pins the joint contract in the
/// cooperative regulated scenarios.
enum class Branch { kIsp1, kIsp2 };

enum class ScenarioKind {
  kPublicPrivate,
  kPublicPrivateRegulated,
  kSymmetricCompetitive,
  kSymmetricCooperative,
  kAsymmetricCompetitive,
  kAsymmetricCooperative,  // numerical NBS, no closed form
  kRegulatedCompetitive,
  kRegulatedCooperative,
  kFixedPublicEffortCooperative,
  kMultiCpCompetitive,
  kMultiCpCooperative,
};

/// Kebab-case name used on the command line and in outputs.
std::string_view to_string(ScenarioKind kind);
std::string_view to_string(Branch branch);

std::optional<ScenarioKind> parse_scenario(std::string_view name);
std::optional<Branch> parse_branch(std::string_view name);

const std::vector<ScenarioKind>& all_scenarios();

}  // namespace revshare

#endif  // REVSHARE_SCENARIO_HPP
