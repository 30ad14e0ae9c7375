#include "alphafair/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "alphafair/errors.h"
#include "alphafair/group_model.h"
#include "alphafair/parity.h"
#include "alphafair/population_io.h"
#include "alphafair/scenarios.h"
#include "alphafair/selection.h"
#include "alphafair/table.h"

namespace alphafair {

namespace {

const std::vector<std::string> kCommands = {"select", "rates", "parity-alpha", "report", "sweep", "scenario"};
const std::vector<std::string> kScenarioCommands = {"sweep",  "figure5",      "rates",
                                                    "report", "parity-alpha", "population"};

struct RunConfig {
  std::string command;
  std::string scenario_cmd = "sweep";
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::string output_format = "csv";

  std::optional<int> scenario;
  std::optional<double> beta, sigma;
  std::optional<double> np_min, np_max, np_baseline;
  std::optional<double> p_min, p_max, p_baseline;
  std::optional<double> qual_np, qual_p;
  std::optional<double> alpha;
  double alpha_ceiling = kDefaultAlphaCeiling;
  int max_doublings = 0;
  double tol = kDefaultParityTolerance;
  std::optional<std::size_t> m;
  std::uint64_t seed = 0;
  std::size_t n = 1000;
  double grid_max = 10.0;
  double grid_step = 0.05;
  unsigned threads = 1;
};

// Raised for missing or inconsistent options after parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename T>
const T& need(const std::optional<T>& v, const char* flag, const std::string& command) {
  if (!v) throw UsageError("'" + command + "' requires --" + flag);
  return *v;
}

TwoGroupModel build_model(const RunConfig& cfg, QualificationRates* qual) {
  const double sigma = need(cfg.sigma, "sigma", cfg.command);
  ScenarioOverrides overrides;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) overrides[key] = *v;
  };
  put("beta", cfg.beta);
  put("B", cfg.np_baseline);
  put("b", cfg.p_baseline);
  put("A-min", cfg.np_min);
  put("A-max", cfg.np_max);
  put("a-min", cfg.p_min);
  put("a-max", cfg.p_max);
  put("Q", cfg.qual_np);
  put("q", cfg.qual_p);

  if (cfg.scenario) {
    ScenarioSpec spec = builtin_scenario(*cfg.scenario, sigma, overrides);
    if (qual) *qual = spec.qual;
    return spec.model;
  }
  const std::string& c = cfg.command;
  TwoGroupModel model(
      GroupParams(need(cfg.np_max, "A-max", c), need(cfg.np_min, "A-min", c),
                  cfg.np_baseline.value_or(kDefaultNonprotectedBaseline)),
      GroupParams(need(cfg.p_max, "a-max", c), need(cfg.p_min, "a-min", c),
                  cfg.p_baseline.value_or(kDefaultProtectedBaseline)),
      cfg.beta.value_or(kDefaultBeta), sigma);
  if (qual) {
    *qual = QualificationRates(cfg.qual_np.value_or(kDefaultQualifiedNonprotected),
                               cfg.qual_p.value_or(kDefaultQualifiedProtected));
  }
  return model;
}

std::vector<double> alpha_grid(const RunConfig& cfg) {
  if (!(cfg.grid_step > 0.0) || !(cfg.grid_max >= 0.0)) {
    throw UsageError("--alpha-step must be positive and --alpha-grid-max nonnegative");
  }
  std::vector<double> grid;
  const auto steps = static_cast<long>(std::floor(cfg.grid_max / cfg.grid_step + 1e-9));
  for (long k = 0; k <= steps; ++k) grid.push_back(static_cast<double>(k) * cfg.grid_step);
  return grid;
}

Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return {};
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : json_(cfg.output_format == "json") {
    if (cfg.output_path) {
      file_.open(*cfg.output_path);
      if (!file_) throw InputError("cannot open output file '" + *cfg.output_path + "'");
      os_ = &file_;
    } else {
      os_ = &out;
    }
  }

  void table(const Table& t) {
    if (json_) {
      write_json(*os_, t);
    } else {
      write_csv(*os_, t);
    }
  }

  // Several named tables: a JSON object, or CSV blocks separated by blank lines.
  void sections(const std::vector<std::pair<std::string, Table>>& parts) {
    if (json_) {
      nlohmann::json doc = nlohmann::json::object();
      for (const auto& [name, t] : parts) doc[name] = to_json(t);
      *os_ << doc.dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) *os_ << '\n';
      write_csv(*os_, parts[i].second);
    }
  }

  std::ostream& stream() { return *os_; }

 private:
  bool json_;
  std::ofstream file_;
  std::ostream* os_;
};

Table rates_table(double alpha, const TwoGroupModel& model, const RateSolution& r) {
  const RateRange range = feasible_rate_range(model);
  Table t;
  t.columns = {"alpha", "sigma", "S_star", "s_star", "case", "S_min", "S_max"};
  t.add_row({alpha, model.sigma, r.nonprotected_rate, r.protected_rate,
             std::string(1, regime_letter(r.regime)), range.min, range.max});
  return t;
}

Table report_table(double alpha, const ParityReport& r) {
  Table t;
  t.columns = {"metric", "value"};
  auto row = [&](const char* name, Cell v) { t.add_row({std::string(name), std::move(v)}); };
  row("alpha", alpha);
  row("S_star", r.rates.nonprotected_rate);
  row("s_star", r.rates.protected_rate);
  row("case", std::string(1, regime_letter(r.rates.regime)));
  row("rho", r.rho);
  row("odds_np", r.odds_ratio_nonprotected);
  row("odds_p", r.odds_ratio_protected);
  row("pred_np", r.predictive_rate_nonprotected);
  row("pred_p", r.predictive_rate_protected);
  row("demographic_parity", r.demographic_parity);
  row("equalized_odds", r.equalized_odds);
  row("predictive_rate_parity", r.predictive_rate_parity);
  row("vacuous_predictive_rate", r.vacuous_predictive_rate);
  return t;
}

Table parity_alpha_table(const std::vector<SigmaParityRow>& rows) {
  Table t;
  t.columns = {"sigma", "status", "parity_alpha", "result"};
  for (const SigmaParityRow& r : rows) {
    if (!r.error.empty()) {
      t.add_row({r.sigma, std::string("error"), {}, r.error});
      continue;
    }
    t.add_row({r.sigma, std::string(status_name(r.outcome.status)), optional_cell(r.outcome.alpha),
               r.outcome.describe()});
  }
  return t;
}

void run_select(const RunConfig& cfg, Emitter& emit) {
  const std::string& c = cfg.command;
  const auto population = read_population_file(need(cfg.input_path, "input", c));
  const Alpha alpha(need(cfg.alpha, "alpha", c));
  const SelectionResult result = greedy_select(population, need(cfg.m, "m", c), alpha);
  const EmpiricalParityReport rep = audit(population, result);

  std::map<std::string, const Individual*> by_id;
  for (const Individual& p : population) by_id.emplace(p.id, &p);
  Table selected;
  selected.columns = {"rank", "id", "a", "b", "z", "y"};
  std::int64_t rank = 0;
  for (const std::string& id : result.selected_ids) {
    const Individual& p = *by_id.at(id);
    selected.add_row({++rank, id, p.utility.benefit, p.utility.baseline,
                      std::int64_t{p.is_protected}, std::int64_t{p.qualified}});
  }

  Table summary;
  summary.columns = {"metric", "value"};
  auto row = [&](const char* name, Cell v) { summary.add_row({std::string(name), std::move(v)}); };
  row("alpha", alpha.value());
  row("m", static_cast<std::int64_t>(result.quota));
  row("welfare", result.welfare);
  row("selection_rate_protected", optional_cell(rep.selection_rate_protected));
  row("selection_rate_nonprotected", optional_cell(rep.selection_rate_nonprotected));
  row("odds_ratio_protected", optional_cell(rep.odds_ratio_protected));
  row("odds_ratio_nonprotected", optional_cell(rep.odds_ratio_nonprotected));
  row("predictive_rate_protected", optional_cell(rep.predictive_rate_protected));
  row("predictive_rate_nonprotected", optional_cell(rep.predictive_rate_nonprotected));
  emit.sections({{"selected", selected}, {"audit", summary}});
}

void dispatch(const RunConfig& cfg, const std::string& action, Emitter& emit) {
  const std::string& c = cfg.command;
  if (action == "select") {
    run_select(cfg, emit);
    return;
  }
  if (action == "figure5") {
    std::vector<ScenarioSpec> specs;
    if (cfg.scenario) {
      specs.push_back(builtin_scenario(*cfg.scenario, 0.5));
    } else {
      for (int id = 1; id <= 3; ++id) specs.push_back(builtin_scenario(id, 0.5));
    }
    emit.table(figure5_table(specs, default_sigma_grid(), cfg.alpha_ceiling, cfg.threads));
    return;
  }

  QualificationRates qual;
  const TwoGroupModel model = build_model(cfg, &qual);
  if (action == "rates") {
    const double alpha = need(cfg.alpha, "alpha", c);
    emit.table(rates_table(alpha, model, alpha_fair_rates(model, Alpha(alpha))));
  } else if (action == "parity-alpha") {
    SigmaParityRow row;
    row.sigma = model.sigma;
    row.outcome = demographic_parity_alpha(model, cfg.alpha_ceiling, cfg.max_doublings);
    emit.table(parity_alpha_table({row}));
  } else if (action == "report") {
    const double alpha = need(cfg.alpha, "alpha", c);
    emit.table(report_table(alpha, parity_report(model, qual, Alpha(alpha), cfg.tol)));
  } else if (action == "sweep") {
    ScenarioSpec spec;
    spec.name = cfg.scenario ? "scenario" + std::to_string(*cfg.scenario) : "custom";
    spec.id = cfg.scenario.value_or(0);
    spec.model = model;
    spec.qual = qual;
    spec.alpha_grid = alpha_grid(cfg);
    emit.table(sweep_alpha_table(spec, cfg.threads));
  } else if (action == "population") {
    const auto people = sample_population(model, cfg.n, cfg.seed, qual);
    if (cfg.output_format == "json") {
      write_population_json(emit.stream(), people);
    } else {
      write_population_csv(emit.stream(), people);
    }
  } else {
    throw UsageError("unknown action '" + action + "'");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Alpha-fair selection policies and their group parity"};
  app.name("alphafair");
  app.set_config("--config", "", "Flat `key = value` file with option names as keys; flags win");

  app.add_option("command", cfg.command, "select | rates | parity-alpha | report | sweep | scenario")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--cmd", cfg.scenario_cmd, "Action for the scenario command")
      ->check(CLI::IsMember(kScenarioCommands));
  app.add_option("--input", cfg.input_path, "Population file (.csv or .json)");
  app.add_option("--output", cfg.output_path, "Output file (default stdout)");
  app.add_option("--format", cfg.output_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--scenario,--id", cfg.scenario, "Built-in scenario 1, 2 or 3");
  app.add_option("--beta", cfg.beta, "Protected population share");
  app.add_option("--sigma", cfg.sigma, "Overall selection rate");
  app.add_option("--A-min", cfg.np_min, "Nonprotected minimum benefit");
  app.add_option("--A-max", cfg.np_max, "Nonprotected maximum benefit");
  app.add_option("--B", cfg.np_baseline, "Nonprotected baseline utility");
  app.add_option("--a-min", cfg.p_min, "Protected minimum benefit");
  app.add_option("--a-max", cfg.p_max, "Protected maximum benefit");
  app.add_option("--b", cfg.p_baseline, "Protected baseline utility");
  app.add_option("--Q", cfg.qual_np, "Nonprotected qualified fraction");
  app.add_option("--q", cfg.qual_p, "Protected qualified fraction");
  app.add_option("--alpha", cfg.alpha, "Inequality aversion");
  app.add_option("--alpha-max", cfg.alpha_ceiling, "Ceiling for the parity alpha search");
  app.add_option("--max-doublings", cfg.max_doublings, "Times the ceiling may double");
  app.add_option("--tol", cfg.tol, "Parity tolerance");
  app.add_option("--m", cfg.m, "Number of individuals to select");
  app.add_option("--seed", cfg.seed, "Id permutation seed for sampled populations");
  app.add_option("--n", cfg.n, "Sampled population size");
  app.add_option("--alpha-grid-max", cfg.grid_max, "Largest alpha in sweeps");
  app.add_option("--alpha-step", cfg.grid_step, "Alpha step in sweeps");
  app.add_option("--threads", cfg.threads, "Worker threads for sweeps");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : (dynamic_cast<const CLI::FileError*>(&e) ? kExitInput : kExitUsage);
  }

  try {
    if (cfg.command == "scenario" && !cfg.scenario && cfg.scenario_cmd != "figure5") {
      throw UsageError("'scenario' requires --id");
    }
    Emitter emit(cfg, out);
    dispatch(cfg, cfg.command == "scenario" ? cfg.scenario_cmd : cfg.command, emit);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace alphafair
