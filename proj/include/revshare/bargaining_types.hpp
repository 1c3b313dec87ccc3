#ifndef REVSHARE_BARGAINING_TYPES_HPP
#define REVSHARE_BARGAINING_TYPES_HPP

#include <array>
#include <string>

#include "revshare/model.hpp"

namespace revshare {

/// Outcome of the stage-2 bargain between two ISPs over a joint share beta.
struct BargainingResult {
  EffortProfile efforts;
  double joint_share = 0.0;
  std::array<double, 2> share_split{};
  std::array<double, 2> surpluses{};
  std::array<double, 2> disagreement{};
  bool converged = false;
  /// Largest pairwise effort distance among the multistart results.
  double multistart_agreement = 0.0;
  int starts = 0;
  int feasible_starts = 0;
  /// Max |d(log F1 + log F2)/da_i| at the returned point.
  double stationarity = 0.0;
};

/// Where the ISPs end up if they fail to agree.
class DisagreementPolicy {
 public:
  enum class Kind { kZero, kRegulatedCompetitive, kCustom };

  static DisagreementPolicy Zero() { return DisagreementPolicy(Kind::kZero, 0, 0); }
  static DisagreementPolicy RegulatedCompetitive() {
    return DisagreementPolicy(Kind::kRegulatedCompetitive, 0, 0);
  }
  /// Throws DomainError for non-finite values.
  static DisagreementPolicy Custom(double d1, double d2);

  DisagreementPolicy() : DisagreementPolicy(Kind::kRegulatedCompetitive, 0, 0) {}

  Kind kind() const { return kind_; }
  double d1() const { return d1_; }
  double d2() const { return d2_; }
  std::string describe() const;

 private:
  DisagreementPolicy(Kind kind, double d1, double d2)
      : kind_(kind), d1_(d1), d2_(d2) {}

  Kind kind_;
  double d1_;
  double d2_;
};

}  // namespace revshare

#endif  // REVSHARE_BARGAINING_TYPES_HPP
