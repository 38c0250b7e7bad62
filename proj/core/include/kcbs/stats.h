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

#ifndef KCBS_STATS_H_
#define KCBS_STATS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "kcbs/protocol.h"

namespace kcbs {

/// A non-negative probability held as its base-10 logarithm, so values far
/// below the double range (1e-575 and smaller) stay representable.
class LogProb {
 public:
  static LogProb zero() { return LogProb(true, 0); }
  static LogProb one() { return LogProb(false, 0); }
  static LogProb from_log10(double log10_value);
  static LogProb from_ln(double ln_value);
  /// Throws DomainError for negative or non-finite values.
  static LogProb from_value(double value);
  /// Parses "m.dde-k", "m.dd x 10^-k" or "0"; throws DomainError.
  static LogProb parse(std::string_view text);

  bool is_zero() const { return zero_; }
  /// -inf for zero.
  double log10() const;
  double ln() const;
  /// The plain double; underflows to 0 below ~1e-308.
  double value() const;

  /// "2.95e-575" style, mantissa rounded to `digits` significant digits.
  std::string to_string(int digits = 3) const;
  /// "2.95 x 10^-575" style.
  std::string to_display(int digits = 3) const;

  LogProb operator*(const LogProb& rhs) const;
  LogProb pow(double exponent) const;
  LogProb min(const LogProb& rhs) const { return *this < rhs ? *this : rhs; }

  friend bool operator<(const LogProb& a, const LogProb& b);
  friend bool operator==(const LogProb& a, const LogProb& b) = default;

 private:
  LogProb(bool zero, double log10_value) : zero_(zero), log10_(log10_value) {}

  bool zero_;
  double log10_;
};

/// min(4/5 + epsilon, 1). Throws DomainError unless epsilon is in [0, 1].
double beta_win(double epsilon);

/// Pr(X >= k) for X ~ Binomial(n, p), summed in the log domain from the
/// term next to the mode outward. Throws DomainError unless 0 <= k and
/// p in [0,1]; k > n gives zero.
LogProb log_binomial_tail(std::uint64_t n, std::uint64_t k, double p);

/// Geometric interpolation between the integer tails around y, for
/// X ~ Binomial(n, 1/2):
///   (1 - f) log P_{n,floor y} + f log P_{n,ceil y},  f = y - floor y.
/// y > n gives zero; throws DomainError for y < 0.
LogProb interpolated_tail(std::uint64_t n, double y);

struct HypothesisInputs {
  std::uint64_t trials = 0;  // n
  std::uint64_t wins = 0;    // c
  double epsilon = 0;

  /// Throws DomainError.
  void validate() const;
};

/// log_binomial_tail(n, c, beta_win(epsilon)).
LogProb pvalue_bound(const HypothesisInputs& inputs);

/// Two-sided bound on Pr(|mean - E mean| >= t) for n i.i.d. samples in
/// [-a, a]:  2e * interpolated_tail(n, n (t + 2a) / (4a)), capped at 1.
/// Throws DomainError unless n >= 1, t > 0, a > 0.
LogProb bentkus_deviation_bound(std::uint64_t n, double t, double a);

struct EpsilonEstimate {
  double observed = 0;  // |g_avg|
  double margin = 0;    // t
  double bound = 0;     // |g_avg| + t
  LogProb failure_probability = LogProb::one();
};

/// epsilon <= |g_avg| + t except with probability bentkus_deviation_bound(n, t, a).
EpsilonEstimate epsilon_upper_bound(double g_avg, double t, std::uint64_t n, double a = 2);

/// Exhaustive search over the 32 deterministic +-1 assignments for the
/// largest fraction of forward contexts with unequal outcomes, plus epsilon,
/// capped at 1.
double nchv_max_win(double epsilon);

/// Smallest sum_i a_i a_{i+1} over the 32 deterministic assignments.
int nchv_min_correlator_sum();

struct WinCount {
  std::uint64_t wins = 0;
  std::uint64_t trials = 0;
};

/// Accepted records with a1 != a2.
WinCount win_count(std::span<const TrialRecord> records);
WinCount win_count(const TrialLog& log);

}  // namespace kcbs

#endif  // KCBS_STATS_H_
