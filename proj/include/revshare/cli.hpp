#ifndef REVSHARE_CLI_HPP
#define REVSHARE_CLI_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "revshare/bargaining_types.hpp"
#include "revshare/scenario.hpp"

namespace revshare::cli {

enum class Command { kSolve, kSweep, kCompare, kVerify, kShapley, kNbs };
enum class Format { kTable, kCsv, kJson };

/// Bad command line or config; exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help was given; the text is the help screen.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepAxis {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 2;
};

struct RunSpec {
  Command command = Command::kSolve;
  /// A scenario name, or compare-public-private / compare-coop-comp /
  /// n-scaling for compare and sweep.
  std::string scenario;
  std::optional<double> r;
  std::vector<double> costs;
  std::optional<int> n;
  std::optional<double> a1_bar;
  std::optional<double> r2;
  std::optional<Branch> branch;
  DisagreementPolicy disagreement = DisagreementPolicy::RegulatedCompetitive();
  std::optional<SweepAxis> sweep;
  Format format = Format::kTable;
  std::optional<std::string> plot;
  std::optional<std::string> out;
  /// compare-coop-comp: add the numerically bargained outcome.
  bool include_nbs = false;
};

/// argv[0] is the program name. Throws UsageError (message names the flag)
/// or HelpRequested.
RunSpec parse_args(const std::vector<std::string>& argv);

/// Exit status: 0 success, 2 numerical or verification failure.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// parse_args + run with exit status 1 on usage errors.
int main_entry(int argc, char** argv);

}  // namespace revshare::cli

#endif  // REVSHARE_CLI_HPP
