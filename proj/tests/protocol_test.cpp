// Copyright 2026 The kcbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kcbs/protocol.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "kcbs/analysis.h"

namespace kcbs {
namespace {

const double kSqrt5 = std::sqrt(5.0);

ExperimentConfig noiseless(std::uint64_t trials, std::uint64_t seed = 1) {
  ExperimentConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.noise = NoiseModel::ideal();
  return cfg;
}

double three_sigma(double p, std::uint64_t n) { return 3 * std::sqrt(p * (1 - p) / n); }

TEST(Contexts, ForwardAndReverse) {
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_TRUE(is_forward_context(kForwardContexts[k]));
    EXPECT_TRUE(is_reverse_context(kReverseContexts[k]));
    EXPECT_EQ(kForwardContexts[k].reversed(), kReverseContexts[k]);
  }
  EXPECT_FALSE(is_valid_context({1, 3}));
  EXPECT_FALSE(is_valid_context({1, 1}));
  EXPECT_FALSE(is_valid_context({0, 1}));
}

TEST(ExperimentConfig, ContextsAndValidation) {
  ExperimentConfig cfg;
  EXPECT_EQ(cfg.contexts().size(), 10u);
  cfg.include_reversed = false;
  EXPECT_EQ(cfg.contexts().size(), 5u);
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg.trials = 10;
  cfg.workers = 0;
  EXPECT_THROW(cfg.validate(), DomainError);
  EXPECT_EQ(parse_schedule_mode("cycle"), ScheduleMode::kCycle);
  EXPECT_EQ(parse_post_selection(to_string(PostSelection::kFlag)), PostSelection::kFlag);
  EXPECT_THROW(parse_schedule_mode("sometimes"), DomainError);
}

TEST(RunExperiment, CycleScheduleCoversEachContextOnce) {
  ExperimentConfig cfg = noiseless(5);
  cfg.schedule = ScheduleMode::kCycle;
  cfg.include_reversed = false;
  const TrialLog log = run_experiment(cfg);
  ASSERT_EQ(log.records.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(log.records[k].trial, k);
    EXPECT_EQ(log.records[k].context, kForwardContexts[k]);
  }
}

TEST(RunExperiment, SameSeedSameLogForAnyWorkerCount) {
  ExperimentConfig cfg;
  cfg.trials = 20000;
  cfg.seed = 77;
  const TrialLog one = run_experiment(cfg);
  for (unsigned workers : {2u, 3u, 8u}) {
    cfg.workers = workers;
    const TrialLog many = run_experiment(cfg);
    EXPECT_EQ(many.records, one.records) << workers << " workers";
    EXPECT_EQ(many.rejected_inits, one.rejected_inits);
  }
  cfg.seed = 78;
  EXPECT_NE(run_experiment(cfg).records, one.records);
}

TEST(RunExperiment, UniformScheduleCoverage) {
  const std::uint64_t n = 200000;
  const TrialLog log = run_experiment(noiseless(n, 3));
  std::map<std::pair<int, int>, std::uint64_t> counts;
  for (const TrialRecord& r : log.records) ++counts[{r.context.first, r.context.second}];
  ASSERT_EQ(counts.size(), 10u);
  for (const auto& [ctx, count] : counts) {
    EXPECT_NEAR(count / double(n), 0.1, three_sigma(0.1, n));
  }
}

TEST(RunExperiment, NoiselessReproducesIdealStatistics) {
  const std::uint64_t n = 1000000;
  const TrialLog log = run_experiment(noiseless(n, 11));
  EXPECT_EQ(log.rejected_inits, 0u);
  std::uint64_t wins = 0;
  for (const TrialRecord& r : log.records) wins += r.a1 != r.a2;
  const double p_win = 2 / kSqrt5;
  EXPECT_NEAR(wins / double(n), p_win, three_sigma(p_win, n));

  const CorrelationReport report = analyze_log(log);
  ASSERT_TRUE(report.forward.has_value());
  EXPECT_NEAR(report.forward->correlator_sum.value, 5 - 4 * kSqrt5,
              3 * report.forward->correlator_sum.std_error);
  for (const PairStatistics& p : report.pairs) {
    EXPECT_NEAR(p.correlator.value, 1 - 4 / kSqrt5, 3 * p.correlator.std_error);
    ASSERT_TRUE(p.epsilon.has_value());
    EXPECT_LE(p.epsilon->value, 3 * p.epsilon->std_error);
  }
}

TEST(RunPairTrial, NoiselessOutcomesNeverBothProjector) {
  // |l_i> and |l_j> are orthogonal, so both projector outcomes cannot occur.
  const ExperimentConfig cfg = noiseless(1);
  for (std::uint64_t t = 0; t < 20000; ++t) {
    Rng rng = Rng::for_trial(4, 0, t);
    const TrialRecord r = run_pair_trial(kForwardContexts[t % 5], cfg, rng);
    EXPECT_FALSE(r.a1 == -1 && r.a2 == -1);
  }
}

TEST(ExactDistribution, NoiselessMatchesIdeal) {
  const ExperimentConfig cfg = noiseless(1);
  for (Context c : cfg.contexts()) {
    const ContextDistribution d = exact_context_distribution(c, cfg);
    EXPECT_NEAR(d.correlator(), 1 - 4 / kSqrt5, 1e-12);
    EXPECT_NEAR(d.first_mean(), 1 - 2 / kSqrt5, 1e-12);
    EXPECT_NEAR(d.second_mean(), 1 - 2 / kSqrt5, 1e-12);
    EXPECT_NEAR(d.joint[1][1], 0, 1e-12);
    EXPECT_EQ(d.acceptance, 1);
  }
}

TEST(ExactDistribution, MisassignmentOnlyFlipsOutcomesIndependently) {
  ExperimentConfig cfg = noiseless(1);
  cfg.noise.contrast_eps_up = 0.03;
  cfg.noise.contrast_eps_down = 0.07;
  const double e_up = 0.03;
  const double e_down = 0.07;
  // Ideal joint over (projector?, projector?) for an orthogonal pair on |0>.
  const double pp = 0;
  const double pc = 1 / kSqrt5;
  const double cp = 1 / kSqrt5;
  const double cc = 1 - 2 / kSqrt5;
  // Complement-positive: projector branch is raw ground, recorded -1 unless flipped.
  const double proj_to_plus = e_up;
  const double comp_to_plus = 1 - e_down;
  auto prob = [](double plus, int a) { return a == 1 ? plus : 1 - plus; };
  for (Context c : kForwardContexts) {
    const ContextDistribution d = exact_context_distribution(c, cfg);
    // The init readout of |0> is rejected with probability e_up; accepted state is |0>.
    EXPECT_NEAR(d.acceptance, 1 - e_up, 1e-12);
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        const int a1 = x == 0 ? 1 : -1;
        const int a2 = y == 0 ? 1 : -1;
        const double expected = pp * prob(proj_to_plus, a1) * prob(proj_to_plus, a2) +
                                pc * prob(proj_to_plus, a1) * prob(comp_to_plus, a2) +
                                cp * prob(comp_to_plus, a1) * prob(proj_to_plus, a2) +
                                cc * prob(comp_to_plus, a1) * prob(comp_to_plus, a2);
        EXPECT_NEAR(d.joint[x][y], expected, 1e-12);
      }
    }
  }
}

TEST(ExactDistribution, MonteCarloAgreesWithEnumeration) {
  ExperimentConfig cfg;
  cfg.trials = 1000000;
  cfg.seed = 2025;
  const TrialLog log = run_experiment(cfg);
  std::map<std::pair<int, int>, std::array<std::array<std::uint64_t, 2>, 2>> counts;
  std::map<std::pair<int, int>, std::uint64_t> totals;
  for (const TrialRecord& r : log.records) {
    ++counts[{r.context.first, r.context.second}][r.a1 == 1 ? 0 : 1][r.a2 == 1 ? 0 : 1];
    ++totals[{r.context.first, r.context.second}];
  }
  for (Context c : cfg.contexts()) {
    const ContextDistribution d = exact_context_distribution(c, cfg);
    const auto n = totals[{c.first, c.second}];
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        const double p = d.joint[x][y];
        const double observed = counts[{c.first, c.second}][x][y] / double(n);
        EXPECT_NEAR(observed, p, three_sigma(p, n))
            << "context (" << c.first << "," << c.second << ") cell " << x << y;
      }
    }
  }
}

TEST(RunExperiment, CalibratedNoiseRejectsAboutTenPercent) {
  ExperimentConfig cfg;
  cfg.trials = 200000;
  const TrialLog log = run_experiment(cfg);
  const double attempts = double(log.rejected_inits + log.records.size());
  EXPECT_NEAR(log.rejection_fraction(), 0.10, three_sigma(0.10, std::uint64_t(attempts)));
  EXPECT_NEAR(exact_context_distribution({1, 2}, cfg).acceptance, 0.90, 1e-12);
}

TEST(RunExperiment, FlagModeKeepsRejectedTrials) {
  ExperimentConfig cfg;
  cfg.trials = 100000;
  cfg.post_selection = PostSelection::kFlag;
  const TrialLog log = run_experiment(cfg);
  ASSERT_EQ(log.records.size(), cfg.trials);
  std::uint64_t rejected = 0;
  for (const TrialRecord& r : log.records) rejected += !r.accepted;
  EXPECT_EQ(rejected, log.rejected_inits);
  EXPECT_NEAR(rejected / double(cfg.trials), 0.10, three_sigma(0.10, cfg.trials));
}

TEST(RunExperiment, SecondSlotMeanExceedsFirstSlotUnderNoise) {
  ExperimentConfig cfg;
  for (Context c : cfg.contexts()) {
    const ContextDistribution d = exact_context_distribution(c, cfg);
    EXPECT_GT(d.second_mean(), d.first_mean());
  }
  cfg.trials = 1000000;
  const CorrelationReport report = analyze_log(run_experiment(cfg));
  double first = 0;
  double second = 0;
  for (const PairStatistics& p : report.pairs) {
    first += p.first_mean.value;
    second += p.second_mean.value;
  }
  EXPECT_GT(second, first);
}

}  // namespace
}  // namespace kcbs
