#pragma once

// Continuous two-group model. Within each group, selection benefits are spread
// uniformly from benefit_max down to benefit_min and everyone shares one
// baseline. Selecting the top fraction `rate` of a group leaves a marginal
// individual whose benefit is (1 - rate) * benefit_max + rate * benefit_min.
//
// With nonprotected rate S, protected rate s, protected population share beta
// and overall selection rate sigma, the quota is (1 - beta) S + beta s = sigma.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "alphafair/selection.h"
#include "alphafair/welfare.h"

namespace alphafair {

struct GroupParams {
  double benefit_max = 1.0;
  double benefit_min = 0.0;
  double baseline = 1.0;

  GroupParams() = default;
  // Requires benefit_min < benefit_max, baseline > 0 and
  // benefit_min + baseline >= 0 (zero utility only at the closed end).
  GroupParams(double benefit_max, double benefit_min, double baseline);

  // Rate at which the marginal benefit crosses zero, if it does inside (0, 1).
  std::optional<double> harm_onset_rate() const;
};

// Fractions of each group that are qualified.
struct QualificationRates {
  double nonprotected = 1.0;
  double protected_group = 1.0;

  QualificationRates() = default;
  QualificationRates(double nonprotected, double protected_group);
};

struct TwoGroupModel {
  GroupParams nonprotected;
  GroupParams protected_group;
  double beta = 0.5;   // protected share of the population
  double sigma = 0.5;  // overall selection rate

  TwoGroupModel() = default;
  // Requires 0 < beta < 1, 0 < sigma < 1 and a strictly lower protected
  // baseline.
  TwoGroupModel(GroupParams nonprotected, GroupParams protected_group, double beta, double sigma);

  TwoGroupModel with_sigma(double new_sigma) const;
};

// A: nonprotected differential dominates on the whole feasible range.
// B: protected differential dominates.
// C: the differentials cross inside the range.
enum class Regime { A, B, C };

char regime_letter(Regime r);

struct RateRange {
  double min = 0.0;
  double max = 1.0;
};

struct RateSolution {
  double nonprotected_rate = 0.0;  // S*
  double protected_rate = 0.0;     // s*
  Regime regime = Regime::C;
};

// Endpoint differential ties within this tolerance count as ties.
inline constexpr double kCaseTieTolerance = 1e-12;
inline constexpr double kRateBisectionTolerance = 1e-10;
inline constexpr int kBisectionIterationCap = 200;

double marginal_benefit(const GroupParams& group, double rate);

double group_differential(const GroupParams& group, double rate, Alpha alpha);

RateRange feasible_rate_range(const TwoGroupModel& model);

// Protected rate s(S) that meets the quota for nonprotected rate S.
double complement_rate(const TwoGroupModel& model, double nonprotected_rate);

// Nonprotected minus protected differential along the quota line.
double differential_gap(const TwoGroupModel& model, double nonprotected_rate, Alpha alpha);

Regime classify_case(const TwoGroupModel& model, Alpha alpha);

RateSolution alpha_fair_rates(const TwoGroupModel& model, Alpha alpha);

// Throws std::logic_error if `rates` breaks the quota or the feasible range.
void check_rate_solution(const TwoGroupModel& model, const RateSolution& rates);

// Deterministic discretization of the model into n individuals:
// round(beta * n) protected, benefits on an equally spaced grid (endpoints
// included) per group. The seed only permutes the ids. With `qual`, the top
// fraction of each group by benefit is flagged qualified.
std::vector<Individual> sample_population(const TwoGroupModel& model, std::size_t n,
                                          std::uint64_t seed,
                                          const std::optional<QualificationRates>& qual = std::nullopt);

}  // namespace alphafair
