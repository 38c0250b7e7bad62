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

#ifndef KCBS_TRIAL_LOG_IO_H_
#define KCBS_TRIAL_LOG_IO_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>

#include "kcbs/protocol.h"

namespace kcbs {

/// CSV trial log.
///
/// A block of `# `-prefixed lines carries the canonical config text and the
/// rejected-initialisation count, followed by the header line
/// `trial,first,second,a1,a2,accepted` and one row per record.
void write_trial_log_csv(std::ostream& out, const TrialLog& log);
/// Throws InputError naming the row number of the first malformed row.
TrialLog read_trial_log_csv(std::istream& in);

/// Binary trial log, little-endian:
///   magic "KCBSLOG1" | u64 header length | header text (as the CSV comment
///   block without the `# ` prefixes) | u64 record count | 16-byte records
/// Record: u64 trial | u8 first | u8 second | i8 a1 | i8 a2 | u8 accepted |
/// 3 zero bytes.
inline constexpr std::size_t kBinaryRecordSize = 16;
void write_trial_log_binary(std::ostream& out, const TrialLog& log);
TrialLog read_trial_log_binary(std::istream& in);

enum class LogFormat { kCsv, kBinary };

/// Throws InputError with the path (and trial index for write failures).
void save_trial_log(const std::filesystem::path& path, const TrialLog& log,
                    LogFormat format = LogFormat::kCsv);
/// Detects the binary magic, otherwise reads CSV.
TrialLog load_trial_log(const std::filesystem::path& path);

}  // namespace kcbs

#endif  // KCBS_TRIAL_LOG_IO_H_
