#include "alphafair/parity.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "alphafair/parallel.h"

namespace alphafair {

namespace {

constexpr int kCeilingScanSteps = 512;
constexpr double kAlphaBisectionTolerance = 1e-12;

int sign(double x) { return (x > 0.0) - (x < 0.0); }

// "2/3" when x is a fraction with a small denominator, decimal otherwise.
std::string format_rate(double x) {
  for (int den = 1; den <= 12; ++den) {
    const double num = std::round(x * den);
    if (std::abs(x * den - num) <= 1e-9) {
      char buf[32];
      if (den == 1) {
        std::snprintf(buf, sizeof buf, "%d", static_cast<int>(num));
      } else {
        std::snprintf(buf, sizeof buf, "%d/%d", static_cast<int>(num), den);
      }
      return buf;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Gap normalized into [-1, 1] so that its trend is comparable across alpha,
// where the raw differentials change scale by orders of magnitude.
double relative_gap(const TwoGroupModel& model, Alpha alpha) {
  const double np = group_differential(model.nonprotected, model.sigma, alpha);
  const double p = group_differential(model.protected_group, model.sigma, alpha);
  const double scale = std::abs(np) + std::abs(p);
  return scale == 0.0 ? 0.0 : (np - p) / scale;
}

template <typename Fn>
double bisect_alpha(Fn&& gap, double lo, double hi, int lo_sign) {
  for (int it = 0; it < kBisectionIterationCap && hi - lo > kAlphaBisectionTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    const int s = sign(gap(mid));
    if (s == 0) return mid;
    (s == lo_sign ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* metric_name(ParityMetric metric) {
  switch (metric) {
    case ParityMetric::Demographic: return "demographic";
    case ParityMetric::EqualizedOdds: return "equalized_odds";
    case ParityMetric::PredictiveRate: return "predictive_rate";
  }
  return "unknown";
}

double rho(const TwoGroupModel& model, const QualificationRates& qual) {
  return model.sigma /
         ((1.0 - model.beta) * qual.nonprotected + model.beta * qual.protected_group);
}

double odds_ratio(double selection_rate, double qualified_rate) {
  return std::min(1.0, selection_rate / qualified_rate);
}

double predictive_rate(double selection_rate, double qualified_rate) {
  if (selection_rate <= 0.0) return 1.0;
  return std::min(qualified_rate / selection_rate, 1.0);
}

double metric_gap(const RateSolution& rates, const QualificationRates& qual, ParityMetric metric) {
  const double S = rates.nonprotected_rate;
  const double s = rates.protected_rate;
  switch (metric) {
    case ParityMetric::Demographic:
      return S - s;
    case ParityMetric::EqualizedOdds:
      return odds_ratio(S, qual.nonprotected) - odds_ratio(s, qual.protected_group);
    case ParityMetric::PredictiveRate:
      return predictive_rate(S, qual.nonprotected) - predictive_rate(s, qual.protected_group);
  }
  throw std::invalid_argument("unknown parity metric");
}

ParityReport parity_report(const TwoGroupModel& model, const QualificationRates& qual, Alpha alpha,
                           double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("parity tolerance must be positive");
  ParityReport r;
  r.rates = alpha_fair_rates(model, alpha);
  const double S = r.rates.nonprotected_rate;
  const double s = r.rates.protected_rate;
  r.odds_ratio_nonprotected = odds_ratio(S, qual.nonprotected);
  r.odds_ratio_protected = odds_ratio(s, qual.protected_group);
  r.predictive_rate_nonprotected = predictive_rate(S, qual.nonprotected);
  r.predictive_rate_protected = predictive_rate(s, qual.protected_group);
  r.vacuous_predictive_rate = S <= 0.0 || s <= 0.0;
  r.demographic_parity = std::abs(S - s) <= tol;
  r.equalized_odds = std::abs(r.odds_ratio_nonprotected - r.odds_ratio_protected) <= tol;
  r.predictive_rate_parity =
      std::abs(r.predictive_rate_nonprotected - r.predictive_rate_protected) <= tol;
  r.rho = rho(model, qual);
  return r;
}

std::string DemographicParityAlpha::describe() const {
  char buf[96];
  switch (status) {
    case Status::Found:
      std::snprintf(buf, sizeof buf, "alpha=%.12g", alpha.value_or(0.0));
      return buf;
    case Status::Structural: {
      std::string out = "none (structural: harm cap at ";
      out += harmed_group_is_protected ? "s=" : "S=";
      out += harm_onset_rate ? format_rate(*harm_onset_rate) : std::string("?");
      return out + ")";
    }
    case Status::BelowCeiling:
      std::snprintf(buf, sizeof buf, "none below ceiling (alpha_max=%.12g)", ceiling);
      return buf;
    case Status::NoRoot:
      return "none";
  }
  return "none";
}

double demographic_gap(const TwoGroupModel& model, Alpha alpha) {
  return group_differential(model.nonprotected, model.sigma, alpha) -
         group_differential(model.protected_group, model.sigma, alpha);
}

DemographicParityAlpha demographic_parity_alpha(const TwoGroupModel& model, double alpha_ceiling,
                                                int max_doublings) {
  if (!(alpha_ceiling > 0.0) || !std::isfinite(alpha_ceiling)) {
    throw std::invalid_argument("alpha ceiling must be positive and finite");
  }
  DemographicParityAlpha out;
  out.ceiling = alpha_ceiling;

  // A differential has the sign of its benefit for every alpha, so opposite
  // benefit signs at sigma rule parity out entirely.
  const double np_benefit = marginal_benefit(model.nonprotected, model.sigma);
  const double p_benefit = marginal_benefit(model.protected_group, model.sigma);
  if (np_benefit == 0.0 && p_benefit == 0.0) {
    out.status = DemographicParityAlpha::Status::Found;
    out.alpha = 0.0;
    return out;
  }
  if (sign(np_benefit) != sign(p_benefit)) {
    out.status = DemographicParityAlpha::Status::Structural;
    out.harmed_group_is_protected = p_benefit <= 0.0;
    const GroupParams& harmed = out.harmed_group_is_protected ? model.protected_group : model.nonprotected;
    out.harm_onset_rate = harmed.harm_onset_rate();
    if (!out.harm_onset_rate && harmed.benefit_max <= 0.0) out.harm_onset_rate = 0.0;
    return out;
  }

  auto gap = [&](double a) { return demographic_gap(model, Alpha(a)); };
  double lo = 0.0;
  double ceiling = alpha_ceiling;
  int prev_sign = sign(gap(0.0));
  if (prev_sign == 0) {
    out.status = DemographicParityAlpha::Status::Found;
    out.alpha = 0.0;
    return out;
  }

  for (int round = 0; round <= max_doublings; ++round) {
    // Scan for the first sign change, then refine it.
    const double start = lo;
    for (int k = 1; k <= kCeilingScanSteps; ++k) {
      const double a = start + (ceiling - start) * k / kCeilingScanSteps;
      const int s = sign(gap(a));
      if (s == 0) {
        out.status = DemographicParityAlpha::Status::Found;
        out.alpha = a;
        out.ceiling = ceiling;
        return out;
      }
      if (s != prev_sign) {
        out.status = DemographicParityAlpha::Status::Found;
        out.alpha = bisect_alpha(gap, lo, a, prev_sign);
        out.ceiling = ceiling;
        return out;
      }
      lo = a;
    }
    out.ceiling = ceiling;
    const double closing = std::abs(relative_gap(model, Alpha(ceiling)));
    const double opening = std::abs(relative_gap(model, Alpha(0.0)));
    if (!(closing < opening)) {
      out.status = DemographicParityAlpha::Status::NoRoot;
      return out;
    }
    out.status = DemographicParityAlpha::Status::BelowCeiling;
    ceiling *= 2.0;
  }
  return out;
}

std::vector<GapPoint> parity_alpha_curve(const TwoGroupModel& model, const QualificationRates& qual,
                                         ParityMetric metric, const std::vector<double>& alpha_grid) {
  if (!std::is_sorted(alpha_grid.begin(), alpha_grid.end())) {
    throw std::invalid_argument("alpha grid must be sorted ascending");
  }
  std::vector<GapPoint> curve;
  curve.reserve(alpha_grid.size());
  for (double a : alpha_grid) {
    curve.push_back({a, metric_gap(alpha_fair_rates(model, Alpha(a)), qual, metric)});
  }
  return curve;
}

std::vector<AlphaInterval> parity_alpha_sets(const TwoGroupModel& model,
                                             const QualificationRates& qual, ParityMetric metric,
                                             const std::vector<double>& alpha_grid, double tol) {
  const std::vector<GapPoint> curve = parity_alpha_curve(model, qual, metric, alpha_grid);
  auto gap_at = [&](double a) { return metric_gap(alpha_fair_rates(model, Alpha(a)), qual, metric); };

  std::vector<AlphaInterval> sets;
  bool in_run = false;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const bool zero = std::abs(curve[i].gap) <= tol;
    if (zero) {
      if (in_run) {
        sets.back().hi = curve[i].alpha;
      } else {
        sets.push_back({curve[i].alpha, curve[i].alpha});
        in_run = true;
      }
      continue;
    }
    if (i > 0 && !in_run && sign(curve[i - 1].gap) != sign(curve[i].gap)) {
      const double root = bisect_alpha(gap_at, curve[i - 1].alpha, curve[i].alpha, sign(curve[i - 1].gap));
      sets.push_back({root, root});
    }
    in_run = false;
  }
  return sets;
}

std::vector<SigmaParityRow> sweep_sigma_parity(const TwoGroupModel& model_template,
                                               const std::vector<double>& sigma_grid,
                                               double alpha_ceiling, unsigned threads) {
  std::vector<SigmaParityRow> rows(sigma_grid.size());
  parallel_for(sigma_grid.size(), threads, [&](std::size_t i) {
    rows[i].sigma = sigma_grid[i];
    try {
      rows[i].outcome =
          demographic_parity_alpha(model_template.with_sigma(sigma_grid[i]), alpha_ceiling);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

}  // namespace alphafair
