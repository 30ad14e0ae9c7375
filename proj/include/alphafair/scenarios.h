#pragma once

// The three named utility scenarios and the sweep tables built on them.
//
//   1: protected individuals benefit somewhat less from selection
//   2: some protected individuals benefit more than anyone else
//   3: a third of the protected group is harmed by selection
//
// Defaults shared by all three: beta = 1/3, B = 1, b = 0.5, (Q, q) = (0.65, 0.5).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alphafair/group_model.h"
#include "alphafair/parity.h"
#include "alphafair/table.h"

namespace alphafair {

struct ScenarioSpec {
  std::string name;
  int id = 0;
  TwoGroupModel model;
  QualificationRates qual;
  std::vector<double> alpha_grid;
  std::vector<double> sigma_list;
};

// Keys: beta, B, b, A-min, A-max, a-min, a-max, Q, q.
using ScenarioOverrides = std::map<std::string, double>;

inline constexpr double kDefaultBeta = 1.0 / 3.0;
inline constexpr double kDefaultNonprotectedBaseline = 1.0;
inline constexpr double kDefaultProtectedBaseline = 0.5;
inline constexpr double kDefaultQualifiedNonprotected = 0.65;
inline constexpr double kDefaultQualifiedProtected = 0.5;

// 0, 0.05, ..., 10
std::vector<double> default_alpha_grid();
// 0.05, 0.06, ..., 0.95
std::vector<double> default_sigma_grid();

ScenarioSpec builtin_scenario(int which, double sigma, const ScenarioOverrides& overrides = {});

struct AlphaSweepRow {
  double alpha = 0.0;
  std::optional<ParityReport> report;
  std::string error;
};

std::vector<AlphaSweepRow> sweep_alpha_rows(const ScenarioSpec& spec, unsigned threads = 1);

// Columns: alpha, S_star, s_star, case, odds_np, odds_p, pred_np, pred_p, error
Table sweep_alpha_table(const ScenarioSpec& spec, unsigned threads = 1);

struct Figure5Row {
  std::string scenario;
  SigmaParityRow row;
};

std::vector<Figure5Row> figure5_rows(const std::vector<ScenarioSpec>& specs,
                                     const std::vector<double>& sigma_grid,
                                     double alpha_ceiling = kDefaultAlphaCeiling,
                                     unsigned threads = 1);

// Columns: scenario, sigma, status, parity_alpha, result
Table figure5_table(const std::vector<ScenarioSpec>& specs, const std::vector<double>& sigma_grid,
                    double alpha_ceiling = kDefaultAlphaCeiling, unsigned threads = 1);

const char* status_name(DemographicParityAlpha::Status status);

}  // namespace alphafair
