#pragma once

// Alpha-fairness social welfare and the per-individual welfare differential.
//
//   W(u) = 1/(1-alpha) * sum u_i^(1-alpha)     alpha != 1
//   W(u) = sum log(u_i)                        alpha == 1
//
// The differential of an individual with selection benefit a and baseline b
// is the welfare gained by selecting them: W contribution at (a + b) minus the
// contribution at b.

#include <span>

namespace alphafair {

// Below this distance from 1 the logarithmic branch is used.
inline constexpr double kLogBranchTolerance = 1e-9;

// Inequality-aversion parameter. 0 is utilitarian, 1 proportional fairness,
// large values approach maximin.
class Alpha {
 public:
  explicit Alpha(double value);

  double value() const { return value_; }
  bool is_log_branch() const;

 private:
  double value_;
};

// Selection benefit `a` (may be negative) and baseline utility `b` > 0.
//
// a + b == 0 is admitted as the closed boundary of the domain so that the
// continuous group model may end exactly at zero utility; the differential
// there is the limit value (-inf for alpha >= 1). Anything below is a
// DomainError.
struct UtilityPair {
  double benefit = 0.0;
  double baseline = 1.0;

  UtilityPair() = default;
  UtilityPair(double benefit, double baseline);

  double selected_utility() const { return benefit + baseline; }
};

double alpha_welfare(std::span<const double> utilities, Alpha alpha);

double welfare_differential(const UtilityPair& u, Alpha alpha);

}  // namespace alphafair
