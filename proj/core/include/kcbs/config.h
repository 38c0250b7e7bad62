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

#ifndef KCBS_CONFIG_H_
#define KCBS_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "kcbs/protocol.h"

namespace kcbs {

/// Parses the flat `key = value` experiment config.
///
///   [run]     trials, seed, schedule, include_reversed, post_selection,
///             sign_convention, workers
///   [noise]   preset, t1_1_us, t1_2to1_us, t1_2to0_us, t2s_01_us, t2s_12_us,
///             contrast_eps_up, contrast_eps_down, thermal_p1, thermal_p2,
///             target_rejection
///   [timing]  readout_ns, ringdown_ns, init_delay_ns
///
/// `preset` (ideal | device) is applied before the other noise keys, whatever
/// its position. `target_rejection` refits the thermal populations after all
/// keys are read. Lines starting with '#' or ';' are comments. Errors carry
/// "<source>:<line>:".
ExperimentConfig parse_config(std::string_view text, std::string_view source = "<config>");

/// Reads and parses a file; throws InputError when it cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form. `workers` is an execution setting and is left out,
/// so logs do not depend on it; otherwise parse_config(config_to_text(c)) == c.
std::string config_to_text(const ExperimentConfig& cfg);

}  // namespace kcbs

#endif  // KCBS_CONFIG_H_
