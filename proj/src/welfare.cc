#include "alphafair/welfare.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "alphafair/errors.h"

namespace alphafair {

Alpha::Alpha(double value) : value_(value) {
  if (!(value >= 0.0) || std::isinf(value)) {
    throw std::invalid_argument("alpha must be a finite nonnegative number, got " +
                                std::to_string(value));
  }
}

bool Alpha::is_log_branch() const { return std::abs(value_ - 1.0) <= kLogBranchTolerance; }

UtilityPair::UtilityPair(double benefit, double baseline) : benefit(benefit), baseline(baseline) {
  if (!std::isfinite(benefit) || !std::isfinite(baseline)) {
    throw DomainError("utility parameters must be finite");
  }
  if (!(baseline > 0.0)) {
    throw DomainError("baseline utility must be positive");
  }
  if (benefit + baseline < 0.0) {
    throw DomainError("alpha fairness is not defined for nonpositive utilities");
  }
}

double alpha_welfare(std::span<const double> utilities, Alpha alpha) {
  if (utilities.empty()) {
    throw DomainError("welfare of an empty utility vector is undefined");
  }
  double total = 0.0;
  if (alpha.is_log_branch()) {
    for (double u : utilities) {
      if (!(u > 0.0)) throw DomainError("alpha fairness is not defined for nonpositive utilities");
      total += std::log(u);
    }
    return total;
  }
  const double exponent = 1.0 - alpha.value();
  for (double u : utilities) {
    if (!(u > 0.0)) throw DomainError("alpha fairness is not defined for nonpositive utilities");
    total += std::pow(u, exponent);
  }
  return total / exponent;
}

double welfare_differential(const UtilityPair& u, Alpha alpha) {
  if (u.benefit == 0.0) return 0.0;
  if (alpha.value() == 0.0) return u.benefit;
  // b^(1-alpha) * ((1 + a/b)^(1-alpha) - 1) / (1-alpha), written with
  // log1p/expm1 so that small benefits and alpha near 1 keep full precision.
  const double log_ratio = std::log1p(u.benefit / u.baseline);
  if (alpha.is_log_branch()) return log_ratio;
  const double exponent = 1.0 - alpha.value();
  return std::pow(u.baseline, exponent) * std::expm1(exponent * log_ratio) / exponent;
}

}  // namespace alphafair
