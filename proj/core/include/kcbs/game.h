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

#ifndef KCBS_GAME_H_
#define KCBS_GAME_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "kcbs/protocol.h"

namespace kcbs {

/// One round of the incompatibility-estimation game.
struct GameTrial {
  std::uint64_t trial = 0;
  Context context;  // (i, j) from the forward contexts
  int x = 1;        // +1: j measured first; -1: i then j
  int a_j = 1;
  int score = 0;    // +2 (x = +1, a_j = +1), -2 (x = -1, a_j = +1), else 0
};

constexpr int game_score(int x, int a_j) {
  if (a_j != 1) return 0;
  return x == 1 ? 2 : -2;
}

struct GameScoreLog {
  std::vector<GameTrial> trials;
  std::uint64_t rejected_inits = 0;
  double g_avg = 0;
};

/// cfg.trials rounds. Round l draws from Rng::for_trial(seed, 1, l), so the
/// game is independent of a run_experiment log with the same seed.
GameScoreLog run_incompatibility_game(const ExperimentConfig& cfg);

/// E[G] obtained by enumerating context, order bit and outcome with exact
/// context distributions.
double exact_game_expectation(const ExperimentConfig& cfg);

/// sum over forward (i,j) of Pr(A_j = +1 | j first) - Pr(A_j = +1 | i then j).
/// Equals 5 E[G].
double order_marginal_difference_sum(const ExperimentConfig& cfg);

/// CSV with header `trial,first,second,x,a_j,score`.
void write_game_log_csv(std::ostream& out, const GameScoreLog& log);

}  // namespace kcbs

#endif  // KCBS_GAME_H_
