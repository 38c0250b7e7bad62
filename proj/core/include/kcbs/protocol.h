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

#ifndef KCBS_PROTOCOL_H_
#define KCBS_PROTOCOL_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kcbs/channels.h"
#include "kcbs/frame.h"
#include "kcbs/rng.h"

namespace kcbs {

/// An ordered measurement context: A_first is measured, then A_second.
struct Context {
  int first = 1;
  int second = 2;

  Context reversed() const { return {second, first}; }
  bool operator==(const Context&) const = default;
};

/// The ordered contexts of the extended inequality.
inline constexpr std::array<Context, 5> kForwardContexts{{{1, 2}, {3, 2}, {3, 4}, {5, 4}, {5, 1}}};
inline constexpr std::array<Context, 5> kReverseContexts{{{2, 1}, {2, 3}, {4, 3}, {4, 5}, {1, 5}}};

bool is_forward_context(Context ctx);
bool is_reverse_context(Context ctx);
/// Forward or reverse.
bool is_valid_context(Context ctx);

enum class ScheduleMode { kUniformRandom, kCycle };
enum class PostSelection {
  kRetry,  // rejected initialisations are redrawn; every record is accepted
  kFlag,   // the trial continues and is recorded with accepted = false
};

std::string_view to_string(ScheduleMode mode);
std::string_view to_string(PostSelection mode);
ScheduleMode parse_schedule_mode(std::string_view text);
PostSelection parse_post_selection(std::string_view text);

struct ExperimentConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  ScheduleMode schedule = ScheduleMode::kUniformRandom;
  bool include_reversed = true;
  PostSelection post_selection = PostSelection::kRetry;
  SignConvention sign = SignConvention::kComplementPositive;
  unsigned workers = 1;
  NoiseModel noise = NoiseModel::calibrated();

  /// Throws DomainError.
  void validate() const;
  /// Contexts the schedule draws from, forward first.
  std::vector<Context> contexts() const;

  bool operator==(const ExperimentConfig&) const = default;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  Context context;
  std::int8_t a1 = 0;  // outcome of A_first
  std::int8_t a2 = 0;  // outcome of A_second
  bool accepted = true;

  bool operator==(const TrialRecord&) const = default;
};

struct TrialLog {
  ExperimentConfig config;
  std::uint64_t rejected_inits = 0;  // initialisation readouts that did not report ground
  std::vector<TrialRecord> records;

  /// rejected_inits / (rejected_inits + accepted initialisations).
  double rejection_fraction() const;
};

/// Runs single trials of one configuration. Rotations and decoherence
/// channels are precomputed once.
class TrialSimulator {
 public:
  explicit TrialSimulator(const ExperimentConfig& cfg);

  /// Initialisation with post-selection, then the two measurement blocks.
  /// Adds rejected initialisation attempts to *rejections when non-null.
  TrialRecord run(Context ctx, std::uint64_t trial, Rng& rng,
                  std::uint64_t* rejections = nullptr) const;

  /// Context for trial l under the configured schedule. Uniform schedules
  /// consume one draw from rng.
  Context schedule(std::uint64_t trial, Rng& rng) const;

  const ExperimentConfig& config() const { return cfg_; }
  const KcbsFrame& frame() const { return frame_; }

 private:
  struct Readout {
    Matrix3 to_readout;    // V_i
    Matrix3 from_readout;  // V_i^dagger
  };

  DensityMatrix initialise(Rng& rng, bool& accepted, std::uint64_t* rejections) const;
  int measure(int observable, DensityMatrix& rho, Rng& rng, bool restore) const;

  ExperimentConfig cfg_;
  KcbsFrame frame_;
  std::vector<Context> contexts_;
  std::array<Readout, 5> readouts_;
  DensityMatrix thermal_;
  DecoherenceChannel after_init_;
  DecoherenceChannel after_readout_;
};

/// One trial of ctx drawn from rng.
TrialRecord run_pair_trial(Context ctx, const ExperimentConfig& cfg, Rng& rng);

/// cfg.trials records, trial l drawing from Rng::for_trial(seed, 0, l).
/// Output is identical for any worker count.
TrialLog run_experiment(const ExperimentConfig& cfg);

/// Exact distribution of recorded outcomes for one context, obtained by
/// enumerating measurement branches of the same pipeline the simulator
/// samples from.
struct ContextDistribution {
  Context context;
  /// joint[x][y]: x = 0 for a1 = +1, 1 for a1 = -1; same for y and a2.
  std::array<std::array<double, 2>, 2> joint{};
  double acceptance = 1;  // probability the initialisation reports ground

  double prob_first(int outcome) const;
  double prob_second(int outcome) const;
  double correlator() const;
  double first_mean() const { return prob_first(+1) - prob_first(-1); }
  double second_mean() const { return prob_second(+1) - prob_second(-1); }
  double win_probability() const { return joint[0][1] + joint[1][0]; }
};

ContextDistribution exact_context_distribution(Context ctx, const ExperimentConfig& cfg);

}  // namespace kcbs

#endif  // KCBS_PROTOCOL_H_
