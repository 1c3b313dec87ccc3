#ifndef REVSHARE_COMPARE_HPP
#define REVSHARE_COMPARE_HPP

#include <string>
#include <utility>
#include <vector>

#include "revshare/bargaining_types.hpp"
#include "revshare/oracle.hpp"

namespace revshare::compare {

enum class Relation { kGreater, kGreaterEqual, kEqual };

const char* to_string(Relation rel);

struct ScenarioMetrics {
  std::string label;
  bool degenerate = false;
  std::vector<std::pair<std::string, double>> values;

  /// Throws std::out_of_range for an unknown metric.
  double get(const std::string& metric) const;
};

struct Ordering {
  std::string metric;
  std::string lhs;
  Relation relation = Relation::kGreater;
  std::string rhs;
  double tolerance = 0.0;
  /// lhs - rhs.
  double gap = 0.0;
  bool holds = false;
};

struct ComparisonReport {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
  std::vector<ScenarioMetrics> scenarios;
  std::vector<Ordering> orderings;

  const ScenarioMetrics& scenario(const std::string& label) const;
  /// Evaluates the ordering from the stored metrics and appends it.
  void add_ordering(const std::string& metric, const std::string& lhs,
                    Relation relation, const std::string& rhs,
                    double tolerance = 0.0);
  bool all_hold() const;
  /// True when every stored ordering agrees with a fresh evaluation.
  bool consistent() const;
};

/// Both ISPs private (asymmetric competitive, canonical split) against ISP1
/// public. Orderings: total share private > public, total effort public >
/// private, CP utility public > private. Throws DegenerateRegime if
/// r <= c1 + c2.
ComparisonReport compare_public_private(double r, double c1, double c2);

struct CoopCompOptions {
  bool include_nbs = false;
  DisagreementPolicy disagreement = DisagreementPolicy::RegulatedCompetitive();
  oracle::SearchConfig search{};
};

/// Regulated competitive against the CP-preferred regulated cooperative
/// branch and, optionally, the numerically bargained cooperative outcome.
/// Throws DegenerateRegime if r <= c1 + c2.
ComparisonReport compare_coop_comp(double r, double c1, double c2,
                                   const CoopCompOptions& options = {});

/// Symmetric competitive outcome across strictly increasing n. Labels are "n=<k>". Orderings:
/// beta, effort and ISP utility strictly decreasing between consecutive n;
/// n beta, n a and CP utility equal to the first n within 1e-9.
ComparisonReport n_scaling_report(double r, double c, const std::vector<int>& n_values);

}  // namespace revshare::compare

#endif  // REVSHARE_COMPARE_HPP
