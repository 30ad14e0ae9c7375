#include "alphafair/scenarios.h"

#include <stdexcept>

#include "alphafair/parallel.h"

namespace alphafair {

namespace {

struct BenefitRanges {
  double np_min, np_max, p_min, p_max;
};

BenefitRanges scenario_ranges(int which) {
  switch (which) {
    case 1: return {0.5, 1.5, 0.2, 1.0};
    case 2: return {0.5, 0.8, 0.2, 1.0};
    case 3: return {0.5, 1.0, -0.5, 1.0};
  }
  throw std::invalid_argument("unknown scenario id " + std::to_string(which) + " (expected 1, 2 or 3)");
}

}  // namespace

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 200; ++k) grid.push_back(k * 0.05);
  return grid;
}

std::vector<double> default_sigma_grid() {
  std::vector<double> grid;
  for (int k = 5; k <= 95; ++k) grid.push_back(k / 100.0);
  return grid;
}

ScenarioSpec builtin_scenario(int which, double sigma, const ScenarioOverrides& overrides) {
  const BenefitRanges r = scenario_ranges(which);
  std::map<std::string, double> p = {
      {"beta", kDefaultBeta},
      {"B", kDefaultNonprotectedBaseline},
      {"b", kDefaultProtectedBaseline},
      {"A-min", r.np_min},
      {"A-max", r.np_max},
      {"a-min", r.p_min},
      {"a-max", r.p_max},
      {"Q", kDefaultQualifiedNonprotected},
      {"q", kDefaultQualifiedProtected},
  };
  for (const auto& [key, value] : overrides) {
    auto it = p.find(key);
    if (it == p.end()) throw std::invalid_argument("unknown scenario override '" + key + "'");
    it->second = value;
  }

  ScenarioSpec spec;
  spec.id = which;
  spec.name = "scenario" + std::to_string(which);
  spec.model = TwoGroupModel(GroupParams(p["A-max"], p["A-min"], p["B"]),
                             GroupParams(p["a-max"], p["a-min"], p["b"]), p["beta"], sigma);
  spec.qual = QualificationRates(p["Q"], p["q"]);
  spec.alpha_grid = default_alpha_grid();
  spec.sigma_list = {0.25, 0.6, 0.8};
  return spec;
}

std::vector<AlphaSweepRow> sweep_alpha_rows(const ScenarioSpec& spec, unsigned threads) {
  std::vector<AlphaSweepRow> rows(spec.alpha_grid.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    rows[i].alpha = spec.alpha_grid[i];
    try {
      rows[i].report = parity_report(spec.model, spec.qual, Alpha(spec.alpha_grid[i]));
    } catch (const std::exception& e) {
      rows[i].error = e.what();
      return;
    }
    check_rate_solution(spec.model, rows[i].report->rates);
  });
  return rows;
}

Table sweep_alpha_table(const ScenarioSpec& spec, unsigned threads) {
  Table table;
  table.columns = {"alpha", "S_star", "s_star", "case", "odds_np", "odds_p", "pred_np", "pred_p", "error"};
  for (const AlphaSweepRow& row : sweep_alpha_rows(spec, threads)) {
    if (!row.report) {
      table.add_row({row.alpha, {}, {}, {}, {}, {}, {}, {}, row.error});
      continue;
    }
    const ParityReport& r = *row.report;
    table.add_row({row.alpha, r.rates.nonprotected_rate, r.rates.protected_rate,
                   std::string(1, regime_letter(r.rates.regime)), r.odds_ratio_nonprotected,
                   r.odds_ratio_protected, r.predictive_rate_nonprotected,
                   r.predictive_rate_protected, std::string()});
  }
  return table;
}

const char* status_name(DemographicParityAlpha::Status status) {
  switch (status) {
    case DemographicParityAlpha::Status::Found: return "found";
    case DemographicParityAlpha::Status::Structural: return "structural";
    case DemographicParityAlpha::Status::BelowCeiling: return "below_ceiling";
    case DemographicParityAlpha::Status::NoRoot: return "none";
  }
  return "none";
}

std::vector<Figure5Row> figure5_rows(const std::vector<ScenarioSpec>& specs,
                                     const std::vector<double>& sigma_grid, double alpha_ceiling,
                                     unsigned threads) {
  std::vector<Figure5Row> out;
  for (const ScenarioSpec& spec : specs) {
    for (SigmaParityRow& row : sweep_sigma_parity(spec.model, sigma_grid, alpha_ceiling, threads)) {
      out.push_back({spec.name, std::move(row)});
    }
  }
  return out;
}

Table figure5_table(const std::vector<ScenarioSpec>& specs, const std::vector<double>& sigma_grid,
                    double alpha_ceiling, unsigned threads) {
  Table table;
  table.columns = {"scenario", "sigma", "status", "parity_alpha", "result"};
  for (const Figure5Row& f : figure5_rows(specs, sigma_grid, alpha_ceiling, threads)) {
    if (!f.row.error.empty()) {
      table.add_row({f.scenario, f.row.sigma, std::string("error"), {}, f.row.error});
      continue;
    }
    const DemographicParityAlpha& o = f.row.outcome;
    Cell alpha_cell;
    if (o.alpha) alpha_cell = *o.alpha;
    table.add_row({f.scenario, f.row.sigma, std::string(status_name(o.status)), alpha_cell, o.describe()});
  }
  return table;
}

}  // namespace alphafair
