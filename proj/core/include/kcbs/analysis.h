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

#ifndef KCBS_ANALYSIS_H_
#define KCBS_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kcbs/protocol.h"

namespace kcbs {

struct Estimate {
  double value = 0;
  double std_error = 0;
};

struct PairStatistics {
  Context context;
  std::uint64_t count = 0;
  Estimate correlator;   // <A_i A_j>
  Estimate first_mean;   // <A_i>, slot 1
  Estimate second_mean;  // <A_j>, slot 2
  /// |<A_j> in slot 1 of (j,i)  -  <A_j> in slot 2 of (i,j)|. Needs the
  /// reversed context in the log.
  std::optional<Estimate> epsilon;
};

/// Sum of correlators over one order of the five contexts, tested against
/// -3 - sum(epsilon).
struct InequalityTest {
  Estimate correlator_sum;
  std::optional<Estimate> epsilon_sum;
  double bound = -3;  // -3 - epsilon_sum, or -3 without epsilons
  /// (bound - sum) / combined standard error; +inf when the error is zero.
  double violation_sigma = 0;
  bool violated() const { return correlator_sum.value < bound; }
};

struct CorrelationReport {
  std::vector<PairStatistics> pairs;  // table order: (1,2) (2,1) (2,3) (3,2) ...
  std::optional<InequalityTest> forward;
  std::optional<InequalityTest> reverse;
  std::uint64_t accepted_trials = 0;
  std::uint64_t rejected_trials = 0;  // records with accepted = false
  std::uint64_t wins = 0;

  const PairStatistics* find(Context ctx) const;
  double win_fraction() const {
    return accepted_trials ? static_cast<double>(wins) / static_cast<double>(accepted_trials) : 0;
  }
};

/// Correlations, marginals and incompatibility bounds of the accepted
/// records. Standard errors assume independent +-1 samples; sums combine
/// errors in quadrature.
///
/// Throws DomainError when no accepted record exists or when an order is
/// partially present (some but not all five of its contexts).
CorrelationReport analyze_records(std::span<const TrialRecord> records);
CorrelationReport analyze_log(const TrialLog& log);

/// Table with one row per ordered context, sums and verdicts.
std::string format_report_table(const CorrelationReport& report);
/// Machine-readable form; non-finite numbers become null.
std::string report_to_json(const CorrelationReport& report, int indent = 2);

}  // namespace kcbs

#endif  // KCBS_ANALYSIS_H_
