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

#include "kcbs/game.h"

#include <ostream>

namespace kcbs {

namespace {

// Rejected initialisations are always redrawn in the game; a flagged round
// has no meaningful score.
ExperimentConfig game_config(const ExperimentConfig& cfg) {
  ExperimentConfig out = cfg;
  out.post_selection = PostSelection::kRetry;
  out.validate();
  return out;
}

}  // namespace

GameScoreLog run_incompatibility_game(const ExperimentConfig& cfg) {
  const ExperimentConfig game = game_config(cfg);
  const TrialSimulator sim(game);
  GameScoreLog log;
  log.trials.reserve(game.trials);
  std::int64_t total = 0;
  for (std::uint64_t l = 0; l < game.trials; ++l) {
    Rng rng = Rng::for_trial(game.seed, 1, l);
    const Context ij = kForwardContexts[static_cast<std::size_t>(rng.uniform() * 5)];
    const int x = rng.bernoulli(0.5) ? 1 : -1;
    GameTrial t;
    t.trial = l;
    t.context = ij;
    t.x = x;
    if (x == 1) {
      t.a_j = sim.run(ij.reversed(), l, rng, &log.rejected_inits).a1;
    } else {
      t.a_j = sim.run(ij, l, rng, &log.rejected_inits).a2;
    }
    t.score = game_score(x, t.a_j);
    total += t.score;
    log.trials.push_back(t);
  }
  log.g_avg = game.trials ? static_cast<double>(total) / static_cast<double>(game.trials) : 0.0;
  return log;
}

double order_marginal_difference_sum(const ExperimentConfig& cfg) {
  const ExperimentConfig game = game_config(cfg);
  double sum = 0;
  for (Context ij : kForwardContexts) {
    sum += exact_context_distribution(ij.reversed(), game).prob_first(+1) -
           exact_context_distribution(ij, game).prob_second(+1);
  }
  return sum;
}

double exact_game_expectation(const ExperimentConfig& cfg) {
  const ExperimentConfig game = game_config(cfg);
  double expectation = 0;
  for (Context ij : kForwardContexts) {
    for (int x : {1, -1}) {
      const ContextDistribution d =
          exact_context_distribution(x == 1 ? ij.reversed() : ij, game);
      const double p_plus = x == 1 ? d.prob_first(+1) : d.prob_second(+1);
      expectation += 0.1 * (p_plus * game_score(x, 1) + (1 - p_plus) * game_score(x, -1));
    }
  }
  return expectation;
}

void write_game_log_csv(std::ostream& out, const GameScoreLog& log) {
  out << "trial,first,second,x,a_j,score\n";
  for (const GameTrial& t : log.trials) {
    out << t.trial << ',' << t.context.first << ',' << t.context.second << ',' << t.x << ','
        << t.a_j << ',' << t.score << '\n';
  }
}

}  // namespace kcbs
