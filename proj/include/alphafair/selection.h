#pragma once

// Discrete selection: pick m individuals maximizing alpha-fairness welfare,
// plus an exhaustive oracle and an empirical group-parity audit.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alphafair/welfare.h"

namespace alphafair {

struct Individual {
  std::string id;
  UtilityPair utility;
  bool is_protected = false;  // Z
  bool qualified = false;     // Y
};

struct SelectionResult {
  std::vector<std::string> selected_ids;  // in selection order
  std::size_t quota = 0;
  double welfare = 0.0;
};

// Empirical conditional rates. nullopt marks a zero denominator.
struct EmpiricalParityReport {
  std::optional<double> selection_rate_protected;     // P(D|Z)
  std::optional<double> selection_rate_nonprotected;  // P(D|~Z)
  std::optional<double> odds_ratio_protected;
  std::optional<double> odds_ratio_nonprotected;
  std::optional<double> predictive_rate_protected;
  std::optional<double> predictive_rate_nonprotected;
};

// Welfare of the utility vector induced by a 0/1 selection mask.
double selection_welfare(std::span<const Individual> population,
                         const std::vector<bool>& selected, Alpha alpha);

// The m individuals with largest welfare differential. Equal differentials
// keep input order.
SelectionResult greedy_select(std::span<const Individual> population, std::size_t m,
                              Alpha alpha);

inline constexpr std::size_t kBruteForceMaxPopulation = 20;

// Enumerates every m-subset. Test oracle; populations above
// kBruteForceMaxPopulation are rejected.
SelectionResult brute_force_select(std::span<const Individual> population, std::size_t m,
                                   Alpha alpha);

EmpiricalParityReport audit(std::span<const Individual> population,
                            const SelectionResult& result);

}  // namespace alphafair
