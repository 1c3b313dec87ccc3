#ifndef REVSHARE_VERIFY_HPP
#define REVSHARE_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

// Closed form against oracle, property by property. Shared by the CLI
// `verify` command and the acceptance binary.

namespace revshare::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
};

CheckResult check_lambert_w(const VerifyOptions& opt = {});
CheckResult check_closed_vs_oracle(const VerifyOptions& opt = {});
CheckResult check_foc_residuals(const VerifyOptions& opt = {});
CheckResult check_n_scaling(const VerifyOptions& opt = {});
CheckResult check_symmetric_coincidence(const VerifyOptions& opt = {});
CheckResult check_public_private(const VerifyOptions& opt = {});
CheckResult check_nbs_numeric(const VerifyOptions& opt = {});
CheckResult check_nbs_closed(const VerifyOptions& opt = {});
CheckResult check_shapley(const VerifyOptions& opt = {});
CheckResult check_cooperation_dominance(const VerifyOptions& opt = {});

/// Checks 1 to 10 in order.
std::vector<CheckResult> run_all(const VerifyOptions& opt = {});

}  // namespace revshare::verify

#endif  // REVSHARE_VERIFY_HPP
