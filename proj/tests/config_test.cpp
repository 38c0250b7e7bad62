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

#include "kcbs/config.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

namespace kcbs {
namespace {

std::string error_of(std::string_view text) {
  try {
    parse_config(text, "test.ini");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, EmptyTextGivesDefaults) {
  const ExperimentConfig cfg = parse_config("");
  EXPECT_EQ(cfg, ExperimentConfig{});
  EXPECT_EQ(cfg.noise, NoiseModel::calibrated());
}

TEST(Config, ParsesAllSections) {
  const ExperimentConfig cfg = parse_config(R"(
# comment
[run]
trials = 5000
seed = 42
schedule = cycle
include_reversed = false
post_selection = flag
sign_convention = projector_positive
workers = 3

[noise]
preset = ideal
t1_1_us = 20
contrast_eps_up = 0.01
thermal_p1 = 0.05

[timing]
readout_ns = 300
ringdown_ns = 0
)");
  EXPECT_EQ(cfg.trials, 5000u);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.schedule, ScheduleMode::kCycle);
  EXPECT_FALSE(cfg.include_reversed);
  EXPECT_EQ(cfg.post_selection, PostSelection::kFlag);
  EXPECT_EQ(cfg.sign, SignConvention::kProjectorPositive);
  EXPECT_EQ(cfg.workers, 3u);
  EXPECT_EQ(cfg.noise.t1_1_us, 20);
  EXPECT_TRUE(std::isinf(cfg.noise.t1_2to1_us));  // from the ideal preset
  EXPECT_EQ(cfg.noise.contrast_eps_up, 0.01);
  EXPECT_EQ(cfg.noise.thermal_p1, 0.05);
  EXPECT_EQ(cfg.noise.readout_ns, 300);
  EXPECT_EQ(cfg.noise.ringdown_ns, 0);
}

TEST(Config, TargetRejectionRefitsThermalPopulations) {
  const ExperimentConfig cfg = parse_config("[noise]\ntarget_rejection = 0.2\n");
  EXPECT_NEAR(cfg.noise.init_rejection_probability(), 0.2, 1e-12);
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_of("[run]\ntrials = 10\nbogus = 1\n"), "test.ini:3: unknown key 'bogus' in [run]");
  EXPECT_EQ(error_of("[oops]\n"), "test.ini:1: unknown section [oops]");
  EXPECT_EQ(error_of("seed = 1\n"), "test.ini:1: key 'seed' appears before any section");
  EXPECT_EQ(error_of("[run]\n\nseed 1\n"), "test.ini:3: expected 'key = value'");
  EXPECT_EQ(error_of("[run]\nseed = 1\nseed = 2\n"), "test.ini:3: duplicate key 'seed' in [run]");
  EXPECT_EQ(error_of("[noise]\nt1_1_us = fast\n"),
            "test.ini:2: 't1_1_us' expects a number, got 'fast'");
  EXPECT_EQ(error_of("[run]\nschedule = sometimes\n").rfind("test.ini:2:", 0), 0u);
  EXPECT_EQ(error_of("[noise]\ntarget_rejection = 0.1\nthermal_p1 = 0.1\n").rfind("test.ini:3:", 0),
            0u);
  EXPECT_NE(error_of("[run]\ntrials = 0\n"), "");
  EXPECT_NE(error_of("[noise]\nt1_1_us = -3\n"), "");
}

TEST(Config, TextRoundTrip) {
  ExperimentConfig cfg;
  cfg.trials = 123;
  cfg.seed = 9;
  cfg.schedule = ScheduleMode::kCycle;
  cfg.noise.t2s_12_us = 4.6000000000000014;
  cfg.noise.t1_2to0_us = std::numeric_limits<double>::infinity();
  const ExperimentConfig back = parse_config(config_to_text(cfg));
  EXPECT_EQ(back, cfg);
}

TEST(Config, TextOmitsWorkerCount) {
  ExperimentConfig a;
  ExperimentConfig b;
  b.workers = 7;
  EXPECT_EQ(config_to_text(a), config_to_text(b));
}

TEST(Config, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "kcbs_config_test.ini";
  {
    std::ofstream out(path);
    out << "[run]\nseed = 5\n";
  }
  EXPECT_EQ(load_config(path).seed, 5u);
  std::filesystem::remove(path);
  EXPECT_THROW(load_config(path), InputError);
}

}  // namespace
}  // namespace kcbs
