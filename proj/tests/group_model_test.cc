#include "alphafair/group_model.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "alphafair/errors.h"
#include "alphafair/scenarios.h"

namespace alphafair {
namespace {

constexpr double kThird = 1.0 / 3.0;

TwoGroupModel scenario_model(int which, double sigma) { return builtin_scenario(which, sigma).model; }

// Independent route to the alpha-fair rates: maximize the continuous welfare
//   (1-beta) * int_0^S D(r) dr + beta * int_0^s(S) D'(r) dr
// over the feasible range by golden-section search (the objective is concave).
double integrate(const GroupParams& g, double upper, Alpha alpha) {
  const int n = 2000;
  const double h = upper / n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    sum += w * group_differential(g, std::min(1.0, k * h), alpha);
  }
  return sum * h / 3.0;
}

double continuous_welfare(const TwoGroupModel& m, double S, Alpha alpha) {
  const double s = (m.sigma - (1.0 - m.beta) * S) / m.beta;
  return (1.0 - m.beta) * integrate(m.nonprotected, S, alpha) +
         m.beta * integrate(m.protected_group, std::clamp(s, 0.0, 1.0), alpha);
}

double oracle_nonprotected_rate(const TwoGroupModel& m, Alpha alpha) {
  const RateRange r = feasible_rate_range(m);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = r.min, hi = r.max;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = continuous_welfare(m, x1, alpha), f2 = continuous_welfare(m, x2, alpha);
  while (hi - lo > 1e-9) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = continuous_welfare(m, x2, alpha);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = continuous_welfare(m, x1, alpha);
    }
  }
  return 0.5 * (lo + hi);
}

// Utilitarian solution: everyone with benefit above a common threshold t.
std::pair<double, double> utilitarian_threshold_rates(const TwoGroupModel& m) {
  auto rate = [](const GroupParams& g, double t) {
    return std::clamp((g.benefit_max - t) / (g.benefit_max - g.benefit_min), 0.0, 1.0);
  };
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double t = 0.5 * (lo + hi);
    const double selected = (1.0 - m.beta) * rate(m.nonprotected, t) + m.beta * rate(m.protected_group, t);
    (selected > m.sigma ? lo : hi) = t;
  }
  const double t = 0.5 * (lo + hi);
  return {rate(m.nonprotected, t), rate(m.protected_group, t)};
}

TEST(MarginalBenefit, LinearBetweenEndpoints) {
  const GroupParams g(1.5, 0.5, 1.0);
  EXPECT_DOUBLE_EQ(marginal_benefit(g, 0.0), 1.5);
  EXPECT_DOUBLE_EQ(marginal_benefit(g, 1.0), 0.5);
  EXPECT_NEAR(marginal_benefit(g, 0.6), 0.9, 1e-15);
  EXPECT_THROW(marginal_benefit(g, -0.01), std::invalid_argument);
  EXPECT_THROW(marginal_benefit(g, 1.01), std::invalid_argument);
}

TEST(GroupDifferential, Examples) {
  const GroupParams g(1.5, 0.5, 1.0);
  for (double r : {0.0, 0.3, 0.8}) {
    EXPECT_DOUBLE_EQ(group_differential(g, r, Alpha(0.0)), marginal_benefit(g, r));
  }
  EXPECT_NEAR(group_differential(g, 0.0, Alpha(1.0)), 0.916290731874155, 1e-14);
  for (double alpha : {0.0, 0.5, 1.0, 4.0}) {
    EXPECT_GT(group_differential(g, 0.2, Alpha(alpha)), group_differential(g, 0.7, Alpha(alpha)));
  }
}

TEST(GroupParams, Invariants) {
  EXPECT_THROW(GroupParams(0.5, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(GroupParams(1.0, -1.5, 1.0), DomainError);
  EXPECT_THROW(GroupParams(1.0, 0.0, 0.0), DomainError);
  EXPECT_NO_THROW(GroupParams(1.0, -0.5, 0.5));
  EXPECT_NEAR(*GroupParams(1.0, -0.5, 0.5).harm_onset_rate(), 2.0 / 3.0, 1e-15);
  EXPECT_FALSE(GroupParams(1.0, 0.2, 0.5).harm_onset_rate().has_value());
}

TEST(TwoGroupModel, Invariants) {
  const GroupParams np(1.5, 0.5, 1.0), p(1.0, 0.2, 0.5);
  EXPECT_THROW(TwoGroupModel(np, p, 0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(TwoGroupModel(np, p, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(TwoGroupModel(p, np, 0.5, 0.5), std::invalid_argument);  // B must exceed b
}

TEST(FeasibleRateRange, Examples) {
  const RateRange low = feasible_rate_range(scenario_model(1, 0.25));
  EXPECT_DOUBLE_EQ(low.min, 0.0);
  EXPECT_NEAR(low.max, 0.375, 1e-15);
  const RateRange high = feasible_rate_range(scenario_model(1, 0.8));
  EXPECT_NEAR(high.min, 0.7, 1e-15);
  EXPECT_DOUBLE_EQ(high.max, 1.0);
  for (double sigma : {0.05, 0.2, kThird}) {
    EXPECT_EQ(feasible_rate_range(scenario_model(2, sigma)).min, 0.0);
  }
}

TEST(ComplementRate, Examples) {
  const TwoGroupModel m = scenario_model(1, 0.25);
  EXPECT_NEAR(complement_rate(m, 0.25), 0.25, 1e-15);
  EXPECT_NEAR(complement_rate(m, 0.375), 0.0, 1e-15);
  EXPECT_NEAR(complement_rate(scenario_model(1, 0.6), 0.65), 0.5, 1e-14);
  EXPECT_THROW(complement_rate(m, 0.5), std::invalid_argument);
}

TEST(ClassifyCase, LowProtectedBaselineDominatesAtLargeAlpha) {
  const TwoGroupModel m(GroupParams(1.5, 0.5, 1.0), GroupParams(1.5, 0.5, 0.5), kThird, 0.25);
  EXPECT_EQ(classify_case(m, Alpha(8.0)), Regime::B);
  EXPECT_EQ(classify_case(m, Alpha(0.0)), Regime::C);
}

TEST(ClassifyCase, ScenarioOneUtilitarian) {
  EXPECT_EQ(classify_case(scenario_model(1, 0.25), Alpha(0.0)), Regime::A);
  // At sigma = 0.6 the protected top benefit 1.0 beats A(S_max) = 0.6.
  EXPECT_EQ(classify_case(scenario_model(1, 0.6), Alpha(0.0)), Regime::C);
}

TEST(AlphaFairRates, ScenarioOneUtilitarianClosedForm) {
  const RateSolution r = alpha_fair_rates(scenario_model(1, 0.25), Alpha(0.0));
  EXPECT_EQ(r.regime, Regime::A);
  EXPECT_NEAR(r.nonprotected_rate, 0.375, 1e-12);
  EXPECT_NEAR(r.protected_rate, 0.0, 1e-12);
}

TEST(AlphaFairRates, ScenarioTwoUtilitarianThreshold) {
  const TwoGroupModel m = scenario_model(2, 0.25);
  const auto [S, s] = utilitarian_threshold_rates(m);
  EXPECT_NEAR(S, 0.21053, 1e-5);
  EXPECT_NEAR(s, 0.32895, 1e-5);
  const RateSolution r = alpha_fair_rates(m, Alpha(0.0));
  EXPECT_EQ(r.regime, Regime::C);
  EXPECT_NEAR(r.nonprotected_rate, S, 1e-9);
  EXPECT_NEAR(r.protected_rate, s, 1e-9);
}

TEST(AlphaFairRates, UtilitarianMatchesThresholdOracle) {
  for (int which = 1; which <= 3; ++which) {
    for (double sigma : {0.1, 0.25, 0.4, 0.6, 0.8, 0.95}) {
      const TwoGroupModel m = scenario_model(which, sigma);
      const auto [S, s] = utilitarian_threshold_rates(m);
      const RateSolution r = alpha_fair_rates(m, Alpha(0.0));
      EXPECT_NEAR(r.nonprotected_rate, S, 1e-9) << which << " " << sigma;
      EXPECT_NEAR(r.protected_rate, s, 1e-9) << which << " " << sigma;
    }
  }
}

TEST(AlphaFairRates, ScenarioThreeApproachesHarmCap) {
  const RateSolution r = alpha_fair_rates(scenario_model(3, 0.8), Alpha(50.0));
  EXPECT_LE(r.protected_rate, 2.0 / 3.0 + 0.01);
  EXPECT_GE(r.protected_rate, 2.0 / 3.0 - 0.01);
}

TEST(AlphaFairRates, MatchesContinuousWelfareMaximum) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double B = 0.6 + u(rng);
    const double b = 0.2 + 0.9 * u(rng) * (B - 0.2);
    const double A_min = -0.5 * B + u(rng);
    const double a_min = -0.5 * b + u(rng) * 0.8;
    const TwoGroupModel m(GroupParams(A_min + 0.1 + u(rng), A_min, B),
                          GroupParams(a_min + 0.1 + u(rng), a_min, b), 0.1 + 0.8 * u(rng),
                          0.05 + 0.9 * u(rng));
    const Alpha alpha(std::vector<double>{0.0, 0.5, 1.0, 2.0, 5.0}[trial % 5]);
    const RateSolution r = alpha_fair_rates(m, alpha);
    EXPECT_NEAR(r.nonprotected_rate, oracle_nonprotected_rate(m, alpha), 1e-6) << "trial " << trial;
  }
}

TEST(AlphaFairRates, ConservesQuotaAndRange) {
  for (int which = 1; which <= 3; ++which) {
    for (double sigma : {0.05, 0.25, 0.5, 0.6, 0.8, 0.95}) {
      const TwoGroupModel m = scenario_model(which, sigma);
      for (int k = 0; k <= 100; ++k) {
        const RateSolution r = alpha_fair_rates(m, Alpha(k * 0.1));
        EXPECT_NEAR((1.0 - m.beta) * r.nonprotected_rate + m.beta * r.protected_rate, sigma, 1e-8);
        EXPECT_NO_THROW(check_rate_solution(m, r));
      }
    }
  }
}

TEST(AlphaFairRates, CrossingRootEqualizesDifferentials) {
  for (int which = 1; which <= 3; ++which) {
    for (double sigma : {0.25, 0.6, 0.8}) {
      const TwoGroupModel m = scenario_model(which, sigma);
      for (int k = 0; k <= 100; ++k) {
        const Alpha alpha(k * 0.1);
        const RateSolution r = alpha_fair_rates(m, alpha);
        if (r.regime != Regime::C) continue;
        const double np = group_differential(m.nonprotected, r.nonprotected_rate, alpha);
        const double p = group_differential(m.protected_group, r.protected_rate, alpha);
        EXPECT_LE(std::abs(np - p), 1e-8) << which << " " << sigma << " " << alpha.value();
      }
    }
  }
}

TEST(DifferentialGap, MonotoneAlongQuotaLine) {
  for (int which = 1; which <= 3; ++which) {
    for (double sigma : {0.25, 0.6, 0.8}) {
      const TwoGroupModel m = scenario_model(which, sigma);
      const RateRange range = feasible_rate_range(m);
      for (double alpha : {0.0, 0.5, 1.0, 2.0, 6.0}) {
        double prev_np = INFINITY, prev_p = -INFINITY;
        for (int k = 0; k <= 50; ++k) {
          const double S = range.min + (range.max - range.min) * k / 50.0;
          const double np = group_differential(m.nonprotected, S, Alpha(alpha));
          const double p = group_differential(m.protected_group, complement_rate(m, S), Alpha(alpha));
          if (k > 0) {
            EXPECT_LT(np, prev_np);
            EXPECT_GT(p, prev_p);
          }
          prev_np = np;
          prev_p = p;
        }
      }
    }
  }
}

TEST(AlphaFairRates, ProtectedRateGrowsWithAlpha) {
  for (int which = 1; which <= 3; ++which) {
    for (double sigma : {0.25, 0.6, 0.8}) {
      const TwoGroupModel m = scenario_model(which, sigma);
      RateSolution prev = alpha_fair_rates(m, Alpha(0.0));
      for (int k = 1; k <= 100; ++k) {
        const RateSolution r = alpha_fair_rates(m, Alpha(k * 0.1));
        EXPECT_GE(r.protected_rate, prev.protected_rate - 1e-12);
        EXPECT_LE(r.nonprotected_rate, prev.nonprotected_rate + 1e-12);
        prev = r;
      }
    }
  }
}

TEST(AlphaFairRates, ScenarioThreeNeverSelectsHarmed) {
  for (double sigma : {0.25, 0.6, 0.8}) {
    const TwoGroupModel m = scenario_model(3, sigma);
    for (int k = 0; k <= 100; ++k) {
      EXPECT_LE(alpha_fair_rates(m, Alpha(k * 0.1)).protected_rate, 2.0 / 3.0 + 1e-9);
    }
  }
}

TEST(SamplePopulation, GroupSizesAndGrid) {
  const auto three = sample_population(scenario_model(1, 0.5), 3, 0);
  EXPECT_EQ(std::count_if(three.begin(), three.end(), [](const auto& p) { return p.is_protected; }), 1);

  const TwoGroupModel m(GroupParams(2.0, 1.0, 1.0), GroupParams(1.0, 0.0, 0.5), 0.5, 0.5);
  const auto people = sample_population(m, 6, 0);
  std::vector<double> protected_benefits;
  for (const auto& p : people) {
    if (p.is_protected) protected_benefits.push_back(p.utility.benefit);
  }
  EXPECT_EQ(protected_benefits, (std::vector<double>{1.0, 0.5, 0.0}));
}

TEST(SamplePopulation, TooSmallForBothGroups) {
  const TwoGroupModel m(GroupParams(2.0, 1.0, 1.0), GroupParams(1.0, 0.0, 0.5), 0.1, 0.5);
  EXPECT_THROW(sample_population(m, 2, 0), std::invalid_argument);
  EXPECT_THROW(sample_population(m, 1, 0), std::invalid_argument);
}

TEST(SamplePopulation, SeedOnlyPermutesIds) {
  const TwoGroupModel m = scenario_model(2, 0.5);
  const auto a = sample_population(m, 50, 1);
  const auto b = sample_population(m, 50, 2);
  ASSERT_EQ(a.size(), b.size());
  bool ids_differ = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].utility.benefit, b[i].utility.benefit);
    EXPECT_EQ(a[i].is_protected, b[i].is_protected);
    ids_differ = ids_differ || a[i].id != b[i].id;
  }
  EXPECT_TRUE(ids_differ);
}

TEST(SamplePopulation, QualifiedAreTopByBenefit) {
  const auto people = sample_population(scenario_model(1, 0.5), 300, 4, QualificationRates(0.65, 0.5));
  int q_np = 0, q_p = 0;
  for (const auto& p : people) {
    (p.is_protected ? q_p : q_np) += p.qualified;
    for (const auto& other : people) {
      if (other.is_protected == p.is_protected && p.qualified && !other.qualified) {
        EXPECT_GT(p.utility.benefit, other.utility.benefit);
      }
    }
  }
  EXPECT_EQ(q_np, 130);
  EXPECT_EQ(q_p, 50);
}

TEST(SamplePopulation, GreedyConvergesToContinuousRates) {
  const TwoGroupModel m = scenario_model(1, 0.6);
  const auto people = sample_population(m, 100000, 17);
  for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
    const SelectionResult sel = greedy_select(people, 60000, Alpha(alpha));
    const auto rep = audit(people, sel);
    const RateSolution r = alpha_fair_rates(m, Alpha(alpha));
    EXPECT_NEAR(*rep.selection_rate_nonprotected, r.nonprotected_rate, 0.01);
    EXPECT_NEAR(*rep.selection_rate_protected, r.protected_rate, 0.01);
  }
}

}  // namespace
}  // namespace alphafair
