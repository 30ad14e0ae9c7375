#pragma once

// Group parity of alpha-fair rate solutions in the continuous model, and the
// inverse problem of finding the alpha values that achieve it.
//
// With qualification rates (Q, q), and assuming qualified individuals are the
// ones with the largest benefits, a group selected at rate S has
//   odds ratio       min{1, S/Q}
//   predictive rate  min{Q/S, 1}   (1 when nobody is selected)

#include <optional>
#include <string>
#include <vector>

#include "alphafair/group_model.h"

namespace alphafair {

inline constexpr double kDefaultParityTolerance = 1e-6;
inline constexpr double kDefaultAlphaCeiling = 64.0;

struct ParityReport {
  RateSolution rates;
  double odds_ratio_nonprotected = 1.0;
  double odds_ratio_protected = 1.0;
  double predictive_rate_nonprotected = 1.0;
  double predictive_rate_protected = 1.0;
  bool demographic_parity = false;
  bool equalized_odds = false;
  bool predictive_rate_parity = false;
  double rho = 1.0;
  // Set when a predictive rate was defined as 1 because its group has no
  // selections.
  bool vacuous_predictive_rate = false;
};

enum class ParityMetric { Demographic, EqualizedOdds, PredictiveRate };

const char* metric_name(ParityMetric metric);

// Selected fraction over qualified fraction of the whole population.
double rho(const TwoGroupModel& model, const QualificationRates& qual);

double odds_ratio(double selection_rate, double qualified_rate);
double predictive_rate(double selection_rate, double qualified_rate);

ParityReport parity_report(const TwoGroupModel& model, const QualificationRates& qual, Alpha alpha,
                           double tol = kDefaultParityTolerance);

// Nonprotected metric minus protected metric at the given rates.
double metric_gap(const RateSolution& rates, const QualificationRates& qual, ParityMetric metric);

struct DemographicParityAlpha {
  enum class Status {
    Found,         // alpha holds the root
    Structural,    // parity would select people harmed by selection
    BelowCeiling,  // gap still closing at the ceiling; a larger ceiling may find it
    NoRoot,        // gap does not change sign and is not closing
  };
  Status status = Status::NoRoot;
  std::optional<double> alpha;
  double ceiling = kDefaultAlphaCeiling;
  // For Structural: the group whose marginal individual would be harmed and
  // the rate where its benefit turns nonpositive.
  bool harmed_group_is_protected = true;
  std::optional<double> harm_onset_rate;

  bool found() const { return status == Status::Found; }
  std::string describe() const;
};

// Nonprotected minus protected differential at S = s = sigma.
double demographic_gap(const TwoGroupModel& model, Alpha alpha);

// Alpha in [0, alpha_ceiling] at which the alpha-fair policy selects both
// groups at rate sigma. While the gap is still closing at the ceiling, the
// ceiling is doubled up to `max_doublings` times.
DemographicParityAlpha demographic_parity_alpha(const TwoGroupModel& model,
                                                double alpha_ceiling = kDefaultAlphaCeiling,
                                                int max_doublings = 0);

struct GapPoint {
  double alpha = 0.0;
  double gap = 0.0;
};

std::vector<GapPoint> parity_alpha_curve(const TwoGroupModel& model, const QualificationRates& qual,
                                         ParityMetric metric, const std::vector<double>& alpha_grid);

struct AlphaInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Parity-achieving alpha sets along an ascending grid: runs of grid points
// with |gap| <= tol become intervals, and sign changes between neighbours are
// refined by bisection into single-point intervals.
std::vector<AlphaInterval> parity_alpha_sets(const TwoGroupModel& model,
                                             const QualificationRates& qual, ParityMetric metric,
                                             const std::vector<double>& alpha_grid,
                                             double tol = kDefaultParityTolerance);

struct SigmaParityRow {
  double sigma = 0.0;
  DemographicParityAlpha outcome;
  std::string error;  // nonempty when this sigma could not be evaluated
};

// One demographic-parity search per sigma; rows come back in grid order
// regardless of `threads`.
std::vector<SigmaParityRow> sweep_sigma_parity(const TwoGroupModel& model_template,
                                               const std::vector<double>& sigma_grid,
                                               double alpha_ceiling = kDefaultAlphaCeiling,
                                               unsigned threads = 1);

}  // namespace alphafair
