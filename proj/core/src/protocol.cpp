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

#include <algorithm>
#include <string>
#include <thread>

namespace kcbs {

bool is_forward_context(Context ctx) {
  return std::find(kForwardContexts.begin(), kForwardContexts.end(), ctx) != kForwardContexts.end();
}

bool is_reverse_context(Context ctx) {
  return std::find(kReverseContexts.begin(), kReverseContexts.end(), ctx) != kReverseContexts.end();
}

bool is_valid_context(Context ctx) { return is_forward_context(ctx) || is_reverse_context(ctx); }

std::string_view to_string(ScheduleMode mode) {
  return mode == ScheduleMode::kCycle ? "cycle" : "random";
}

std::string_view to_string(PostSelection mode) {
  return mode == PostSelection::kFlag ? "flag" : "retry";
}

ScheduleMode parse_schedule_mode(std::string_view text) {
  if (text == "random") return ScheduleMode::kUniformRandom;
  if (text == "cycle") return ScheduleMode::kCycle;
  throw DomainError("unknown schedule '" + std::string(text) + "' (expected random or cycle)");
}

PostSelection parse_post_selection(std::string_view text) {
  if (text == "retry") return PostSelection::kRetry;
  if (text == "flag") return PostSelection::kFlag;
  throw DomainError("unknown post_selection '" + std::string(text) +
                    "' (expected retry or flag)");
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (workers < 1) throw DomainError("workers must be >= 1");
  noise.validate();
  if (post_selection == PostSelection::kRetry && !(noise.init_rejection_probability() < 1.0)) {
    throw DomainError("initialisation never reports ground; post-selection cannot succeed");
  }
}

std::vector<Context> ExperimentConfig::contexts() const {
  std::vector<Context> out(kForwardContexts.begin(), kForwardContexts.end());
  if (include_reversed) out.insert(out.end(), kReverseContexts.begin(), kReverseContexts.end());
  return out;
}

double TrialLog::rejection_fraction() const {
  std::uint64_t accepted = 0;
  for (const auto& r : records) accepted += r.accepted ? 1 : 0;
  const std::uint64_t attempts = rejected_inits + accepted;
  return attempts ? static_cast<double>(rejected_inits) / static_cast<double>(attempts) : 0.0;
}

TrialSimulator::TrialSimulator(const ExperimentConfig& cfg)
    : cfg_(cfg),
      frame_(build_kcbs_frame(cfg.sign)),
      contexts_(cfg.contexts()),
      thermal_(thermal_state(cfg.noise.thermal_p1, cfg.noise.thermal_p2)),
      after_init_(cfg.noise, cfg.noise.readout_ns + cfg.noise.init_delay_ns),
      after_readout_(cfg.noise, cfg.noise.readout_ns + cfg.noise.ringdown_ns) {
  cfg_.validate();
  for (int i = 1; i <= 5; ++i) {
    const Matrix3 v = unitary_to_readout_basis(frame_, i).matrix();
    readouts_[i - 1] = {v, v.adjoint()};
  }
}

Context TrialSimulator::schedule(std::uint64_t trial, Rng& rng) const {
  const std::size_t n = contexts_.size();
  if (cfg_.schedule == ScheduleMode::kCycle) return contexts_[trial % n];
  const auto pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
  return contexts_[std::min(pick, n - 1)];
}

DensityMatrix TrialSimulator::initialise(Rng& rng, bool& accepted,
                                         std::uint64_t* rejections) const {
  for (;;) {
    LudersResult init = luders_measure_ground(thermal_, rng);
    const bool ground = reported_ground(init.branch, cfg_.noise, rng);
    if (ground || cfg_.post_selection == PostSelection::kFlag) {
      accepted = ground;
      if (!ground && rejections) ++*rejections;
      return after_init_.apply(init.state);
    }
    if (rejections) ++*rejections;
  }
}

int TrialSimulator::measure(int observable, DensityMatrix& rho, Rng& rng, bool restore) const {
  const Readout& r = readouts_[observable - 1];
  const DensityMatrix rotated =
      DensityMatrix::unchecked(r.to_readout * rho.matrix() * r.from_readout);
  const LudersResult result = luders_measure_ground(rotated, rng);
  const MeasurementOutcome outcome = misassign(result.branch, cfg_.noise, cfg_.sign, rng);
  if (restore) {
    const Matrix3 relaxed = after_readout_.apply(result.state.matrix());
    rho = DensityMatrix::unchecked(r.from_readout * relaxed * r.to_readout);
  }
  return outcome.recorded;
}

TrialRecord TrialSimulator::run(Context ctx, std::uint64_t trial, Rng& rng,
                                std::uint64_t* rejections) const {
  TrialRecord record;
  record.trial = trial;
  record.context = ctx;
  DensityMatrix rho = initialise(rng, record.accepted, rejections);
  record.a1 = static_cast<std::int8_t>(measure(ctx.first, rho, rng, true));
  // The state after the second readout is never observed.
  record.a2 = static_cast<std::int8_t>(measure(ctx.second, rho, rng, false));
  return record;
}

TrialRecord run_pair_trial(Context ctx, const ExperimentConfig& cfg, Rng& rng) {
  if (!is_valid_context(ctx)) {
    throw DomainError("context (" + std::to_string(ctx.first) + "," +
                      std::to_string(ctx.second) + ") is not an ordered KCBS context");
  }
  return TrialSimulator(cfg).run(ctx, 0, rng);
}

TrialLog run_experiment(const ExperimentConfig& cfg) {
  const TrialSimulator sim(cfg);
  TrialLog log;
  log.config = cfg;
  log.records.resize(cfg.trials);

  const std::uint64_t workers = std::min<std::uint64_t>(cfg.workers, cfg.trials);
  std::vector<std::uint64_t> rejections(workers, 0);
  auto run_range = [&](std::uint64_t worker) {
    const std::uint64_t begin = cfg.trials * worker / workers;
    const std::uint64_t end = cfg.trials * (worker + 1) / workers;
    for (std::uint64_t l = begin; l < end; ++l) {
      Rng rng = Rng::for_trial(cfg.seed, 0, l);
      const Context ctx = sim.schedule(l, rng);
      log.records[l] = sim.run(ctx, l, rng, &rejections[worker]);
    }
  };

  if (workers == 1) {
    run_range(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(run_range, w);
  }
  for (auto r : rejections) log.rejected_inits += r;
  return log;
}

double ContextDistribution::prob_first(int outcome) const {
  const int x = outcome == 1 ? 0 : 1;
  return joint[x][0] + joint[x][1];
}

double ContextDistribution::prob_second(int outcome) const {
  const int y = outcome == 1 ? 0 : 1;
  return joint[0][y] + joint[1][y];
}

double ContextDistribution::correlator() const {
  return joint[0][0] + joint[1][1] - joint[0][1] - joint[1][0];
}

ContextDistribution exact_context_distribution(Context ctx, const ExperimentConfig& cfg) {
  cfg.validate();
  const NoiseModel& noise = cfg.noise;
  const KcbsFrame frame = build_kcbs_frame(cfg.sign);
  const Matrix3 v1 = unitary_to_readout_basis(frame, ctx.first).matrix();
  const Matrix3 v2 = unitary_to_readout_basis(frame, ctx.second).matrix();
  const DecoherenceChannel after_init(noise, noise.readout_ns + noise.init_delay_ns);
  const DecoherenceChannel after_readout(noise, noise.readout_ns + noise.ringdown_ns);

  // Initialisation conditioned on a "ground" report.
  const Matrix3 thermal = thermal_state(noise.thermal_p1, noise.thermal_p2).matrix();
  Matrix3 accepted = (1.0 - noise.contrast_eps_up) * ground_block(thermal) +
                     noise.contrast_eps_down * excited_block(thermal);
  ContextDistribution dist;
  dist.context = ctx;
  dist.acceptance = accepted.trace().real();
  const Matrix3 rho = after_init.apply(accepted / dist.acceptance);

  // raw[b1][b2], b = 0 ground branch, 1 excited branch of the rotated readout.
  std::array<std::array<double, 2>, 2> raw{};
  const Matrix3 rotated1 = v1 * rho * v1.adjoint();
  const std::array<Matrix3, 2> first_blocks{ground_block(rotated1), excited_block(rotated1)};
  for (int b1 = 0; b1 < 2; ++b1) {
    const Matrix3 restored = v1.adjoint() * after_readout.apply(first_blocks[b1]) * v1;
    const Matrix3 rotated2 = v2 * restored * v2.adjoint();
    raw[b1][0] = rotated2(0, 0).real();
    raw[b1][1] = excited_block(rotated2).trace().real();
  }

  // Classical misassignment: probability that the readout reports ground.
  const std::array<double, 2> report_ground{1.0 - noise.contrast_eps_up, noise.contrast_eps_down};
  auto index = [&](bool ground) { return outcome_label(ground, cfg.sign) == 1 ? 0 : 1; };
  for (int b1 = 0; b1 < 2; ++b1) {
    for (int b2 = 0; b2 < 2; ++b2) {
      for (int r1 = 0; r1 < 2; ++r1) {
        for (int r2 = 0; r2 < 2; ++r2) {
          const double q1 = r1 == 0 ? report_ground[b1] : 1.0 - report_ground[b1];
          const double q2 = r2 == 0 ? report_ground[b2] : 1.0 - report_ground[b2];
          dist.joint[index(r1 == 0)][index(r2 == 0)] += raw[b1][b2] * q1 * q2;
        }
      }
    }
  }
  return dist;
}

}  // namespace kcbs
