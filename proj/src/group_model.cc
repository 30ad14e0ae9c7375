#include "alphafair/group_model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "alphafair/errors.h"

namespace alphafair {

namespace {

constexpr double kRangeSlack = 1e-12;

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

GroupParams::GroupParams(double benefit_max, double benefit_min, double baseline)
    : benefit_max(benefit_max), benefit_min(benefit_min), baseline(baseline) {
  if (!std::isfinite(benefit_max) || !std::isfinite(benefit_min) || !std::isfinite(baseline)) {
    throw std::invalid_argument("group parameters must be finite");
  }
  if (!(benefit_min < benefit_max)) {
    throw std::invalid_argument("group benefit_min must be below benefit_max");
  }
  if (!(baseline > 0.0)) throw DomainError("group baseline utility must be positive");
  if (benefit_min + baseline < 0.0) {
    throw DomainError("alpha fairness is not defined for nonpositive utilities");
  }
}

std::optional<double> GroupParams::harm_onset_rate() const {
  if (benefit_min >= 0.0 || benefit_max <= 0.0) return std::nullopt;
  return benefit_max / (benefit_max - benefit_min);
}

QualificationRates::QualificationRates(double nonprotected, double protected_group)
    : nonprotected(nonprotected), protected_group(protected_group) {
  if (!(nonprotected > 0.0 && nonprotected <= 1.0) ||
      !(protected_group > 0.0 && protected_group <= 1.0)) {
    throw std::invalid_argument("qualification rates must lie in (0, 1]");
  }
}

TwoGroupModel::TwoGroupModel(GroupParams nonprotected, GroupParams protected_group, double beta,
                             double sigma)
    : nonprotected(nonprotected), protected_group(protected_group), beta(beta), sigma(sigma) {
  if (!in_open_unit(beta)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (!in_open_unit(sigma)) throw std::invalid_argument("sigma must lie in (0, 1)");
  if (!(nonprotected.baseline > protected_group.baseline)) {
    throw std::invalid_argument("nonprotected baseline must exceed protected baseline");
  }
}

TwoGroupModel TwoGroupModel::with_sigma(double new_sigma) const {
  return TwoGroupModel(nonprotected, protected_group, beta, new_sigma);
}

char regime_letter(Regime r) {
  switch (r) {
    case Regime::A: return 'A';
    case Regime::B: return 'B';
    case Regime::C: return 'C';
  }
  return '?';
}

double marginal_benefit(const GroupParams& group, double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("selection rate must lie in [0, 1], got " + std::to_string(rate));
  }
  return (1.0 - rate) * group.benefit_max + rate * group.benefit_min;
}

double group_differential(const GroupParams& group, double rate, Alpha alpha) {
  return welfare_differential(UtilityPair(marginal_benefit(group, rate), group.baseline), alpha);
}

RateRange feasible_rate_range(const TwoGroupModel& model) {
  const double rest = 1.0 - model.beta;
  return {std::max(0.0, (model.sigma - model.beta) / rest), std::min(1.0, model.sigma / rest)};
}

double complement_rate(const TwoGroupModel& model, double nonprotected_rate) {
  const RateRange range = feasible_rate_range(model);
  if (!(nonprotected_rate >= range.min - kRangeSlack && nonprotected_rate <= range.max + kRangeSlack)) {
    throw std::invalid_argument("nonprotected rate " + std::to_string(nonprotected_rate) +
                                " is outside the feasible range");
  }
  const double s = (model.sigma - (1.0 - model.beta) * nonprotected_rate) / model.beta;
  return std::clamp(s, 0.0, 1.0);
}

double differential_gap(const TwoGroupModel& model, double nonprotected_rate, Alpha alpha) {
  const double s = complement_rate(model, nonprotected_rate);
  const double S = std::clamp(nonprotected_rate, 0.0, 1.0);
  return group_differential(model.nonprotected, S, alpha) -
         group_differential(model.protected_group, s, alpha);
}

Regime classify_case(const TwoGroupModel& model, Alpha alpha) {
  const RateRange range = feasible_rate_range(model);
  const double at_min = differential_gap(model, range.min, alpha);
  const double at_max = differential_gap(model, range.max, alpha);

  const bool min_np = at_min > kCaseTieTolerance;
  const bool min_p = at_min < -kCaseTieTolerance;
  const bool max_np = at_max > kCaseTieTolerance;
  const bool max_p = at_max < -kCaseTieTolerance;

  if (min_np && max_p) return Regime::C;
  if (min_np && !max_p) return Regime::A;
  if (max_p && !min_np) return Regime::B;
  if (!min_p && !max_np) return Regime::C;  // ties at both ends
  // The gap is nonincreasing in S, so it cannot rise from negative to positive.
  throw std::logic_error("differential gap increases along the quota line");
}

RateSolution alpha_fair_rates(const TwoGroupModel& model, Alpha alpha) {
  const double sigma = model.sigma;
  const double beta = model.beta;
  RateSolution out;
  out.regime = classify_case(model, alpha);
  switch (out.regime) {
    case Regime::A:
      out.nonprotected_rate = std::min(1.0, sigma / (1.0 - beta));
      out.protected_rate = (sigma / beta) * (1.0 - std::min(1.0, (1.0 - beta) / sigma));
      break;
    case Regime::B:
      out.nonprotected_rate = (sigma / (1.0 - beta)) * (1.0 - std::min(1.0, beta / sigma));
      out.protected_rate = std::min(1.0, sigma / beta);
      break;
    case Regime::C: {
      const RateRange range = feasible_rate_range(model);
      double lo = range.min;
      double hi = range.max;
      // Runs past the interval tolerance down to floating-point resolution.
      for (int it = 0; it < kBisectionIterationCap; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gap = differential_gap(model, mid, alpha);
        if (gap == 0.0) {
          lo = hi = mid;
          break;
        }
        (gap > 0.0 ? lo : hi) = mid;
      }
      out.nonprotected_rate = 0.5 * (lo + hi);
      out.protected_rate = complement_rate(model, out.nonprotected_rate);
      break;
    }
  }
  return out;
}

void check_rate_solution(const TwoGroupModel& model, const RateSolution& rates) {
  const RateRange range = feasible_rate_range(model);
  const double quota =
      (1.0 - model.beta) * rates.nonprotected_rate + model.beta * rates.protected_rate;
  if (std::abs(quota - model.sigma) > 1e-8) {
    throw std::logic_error("rate solution violates the selection quota");
  }
  if (rates.nonprotected_rate < range.min - 1e-9 || rates.nonprotected_rate > range.max + 1e-9) {
    throw std::logic_error("rate solution is outside the feasible range");
  }
}

std::vector<Individual> sample_population(const TwoGroupModel& model, std::size_t n,
                                          std::uint64_t seed,
                                          const std::optional<QualificationRates>& qual) {
  if (n < 2) throw std::invalid_argument("population size must be at least 2");
  const auto n_protected =
      static_cast<std::size_t>(std::llround(model.beta * static_cast<double>(n)));
  if (n_protected == 0 || n_protected >= n) {
    throw std::invalid_argument("population size " + std::to_string(n) +
                                " cannot represent both groups");
  }

  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);

  std::vector<Individual> people;
  people.reserve(n);
  auto emit_group = [&](const GroupParams& group, std::size_t count, bool is_protected,
                        std::optional<double> qualified_rate) {
    const std::size_t n_qualified =
        qualified_rate ? static_cast<std::size_t>(std::llround(*qualified_rate * static_cast<double>(count)))
                       : 0;
    for (std::size_t k = 0; k < count; ++k) {
      const double t = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
      Individual person;
      person.id = std::to_string(ids[people.size()]);
      person.utility = UtilityPair(marginal_benefit(group, t), group.baseline);
      person.is_protected = is_protected;
      person.qualified = k < n_qualified;
      people.push_back(std::move(person));
    }
  };
  emit_group(model.nonprotected, n - n_protected, false,
             qual ? std::optional<double>(qual->nonprotected) : std::nullopt);
  emit_group(model.protected_group, n_protected, true,
             qual ? std::optional<double>(qual->protected_group) : std::nullopt);
  return people;
}

}  // namespace alphafair
