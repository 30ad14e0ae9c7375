#include "alphafair/selection.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace alphafair {

namespace {

void check_quota(std::span<const Individual> population, std::size_t m) {
  if (m > population.size()) {
    throw std::invalid_argument("quota m=" + std::to_string(m) + " exceeds population size " +
                                std::to_string(population.size()));
  }
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double selection_welfare(std::span<const Individual> population,
                         const std::vector<bool>& selected, Alpha alpha) {
  std::vector<double> utilities(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    const UtilityPair& u = population[i].utility;
    utilities[i] = selected[i] ? u.selected_utility() : u.baseline;
  }
  return alpha_welfare(utilities, alpha);
}

SelectionResult greedy_select(std::span<const Individual> population, std::size_t m,
                              Alpha alpha) {
  check_quota(population, m);
  std::vector<double> delta(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    delta[i] = welfare_differential(population[i].utility, alpha);
  }
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t lhs, std::size_t rhs) { return delta[lhs] > delta[rhs]; });

  SelectionResult result;
  result.quota = m;
  std::vector<bool> selected(population.size(), false);
  for (std::size_t k = 0; k < m; ++k) {
    selected[order[k]] = true;
    result.selected_ids.push_back(population[order[k]].id);
  }
  result.welfare = selection_welfare(population, selected, alpha);
  return result;
}

SelectionResult brute_force_select(std::span<const Individual> population, std::size_t m,
                                   Alpha alpha) {
  const std::size_t n = population.size();
  if (n > kBruteForceMaxPopulation) {
    throw std::invalid_argument("brute force selection is limited to " +
                                std::to_string(kBruteForceMaxPopulation) + " individuals");
  }
  check_quota(population, m);

  std::uint32_t best_mask = 0;
  double best = 0.0;
  bool have_best = false;
  std::vector<bool> selected(n);
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != m) continue;
    for (std::size_t i = 0; i < n; ++i) selected[i] = (mask >> i) & 1u;
    const double w = selection_welfare(population, selected, alpha);
    if (!have_best || w > best) {
      best = w;
      best_mask = mask;
      have_best = true;
    }
  }

  SelectionResult result;
  result.quota = m;
  result.welfare = best;
  for (std::size_t i = 0; i < n; ++i) {
    if ((best_mask >> i) & 1u) result.selected_ids.push_back(population[i].id);
  }
  return result;
}

EmpiricalParityReport audit(std::span<const Individual> population,
                            const SelectionResult& result) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < population.size(); ++i) index.emplace(population[i].id, i);
  std::vector<bool> selected(population.size(), false);
  for (const std::string& id : result.selected_ids) {
    auto it = index.find(id);
    if (it == index.end()) throw std::invalid_argument("selected id '" + id + "' is not in the population");
    selected[it->second] = true;
  }

  // [group] counts: 0 = nonprotected, 1 = protected
  std::size_t members[2] = {0, 0}, chosen[2] = {0, 0}, qualified[2] = {0, 0}, hits[2] = {0, 0};
  for (std::size_t i = 0; i < population.size(); ++i) {
    const int g = population[i].is_protected ? 1 : 0;
    ++members[g];
    if (selected[i]) ++chosen[g];
    if (population[i].qualified) ++qualified[g];
    if (selected[i] && population[i].qualified) ++hits[g];
  }

  EmpiricalParityReport report;
  report.selection_rate_nonprotected = ratio(chosen[0], members[0]);
  report.selection_rate_protected = ratio(chosen[1], members[1]);
  report.odds_ratio_nonprotected = ratio(hits[0], qualified[0]);
  report.odds_ratio_protected = ratio(hits[1], qualified[1]);
  report.predictive_rate_nonprotected = ratio(hits[0], chosen[0]);
  report.predictive_rate_protected = ratio(hits[1], chosen[1]);
  return report;
}

}  // namespace alphafair
