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

#include "kcbs/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <regex>
#include <string>

namespace kcbs {

namespace {

constexpr double kLn10 = std::numbers::ln10;

double ln_binomial_term(std::uint64_t n, std::uint64_t m, double ln_p, double ln_q) {
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return std::lgamma(dn + 1) - std::lgamma(dm + 1) - std::lgamma(dn - dm + 1) + dm * ln_p +
         (dn - dm) * ln_q;
}

// ln of sum_{m=from}^{n} Pr(X = m); terms decrease from `from` upward.
double ln_upper_sum(std::uint64_t n, std::uint64_t from, double p, double ln_p, double ln_q) {
  const double odds = p / (1 - p);
  double term = 1;
  double sum = 1;
  for (std::uint64_t m = from; m < n; ++m) {
    term *= static_cast<double>(n - m) / static_cast<double>(m + 1) * odds;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return ln_binomial_term(n, from, ln_p, ln_q) + std::log(sum);
}

// ln of sum_{m=0}^{from} Pr(X = m); terms decrease from `from` downward.
double ln_lower_sum(std::uint64_t n, std::uint64_t from, double p, double ln_p, double ln_q) {
  const double odds = (1 - p) / p;
  double term = 1;
  double sum = 1;
  for (std::uint64_t m = from; m > 0; --m) {
    term *= static_cast<double>(m) / static_cast<double>(n - m + 1) * odds;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return ln_binomial_term(n, from, ln_p, ln_q) + std::log(sum);
}

std::string format_scientific(double log10_value, int digits, const char* separator,
                              bool caret) {
  if (digits < 1 || digits > 17) throw DomainError("digit count must lie in [1, 17]");
  double exponent = std::floor(log10_value);
  char mantissa[32];
  std::snprintf(mantissa, sizeof mantissa, "%.*f", digits - 1,
                std::pow(10.0, log10_value - exponent));
  if (mantissa[0] == '1' && mantissa[1] == '0') {
    exponent += 1;
    std::snprintf(mantissa, sizeof mantissa, "%.*f", digits - 1, 1.0);
  }
  const long long e = static_cast<long long>(exponent);
  char out[64];
  if (caret) {
    std::snprintf(out, sizeof out, "%s%s%lld", mantissa, separator, e);
  } else {
    std::snprintf(out, sizeof out, "%s%s%c%02lld", mantissa, separator, e < 0 ? '-' : '+',
                  e < 0 ? -e : e);
  }
  return out;
}

}  // namespace

LogProb LogProb::from_log10(double log10_value) {
  if (std::isnan(log10_value) || log10_value == std::numeric_limits<double>::infinity()) {
    throw DomainError("invalid log-probability");
  }
  if (log10_value == -std::numeric_limits<double>::infinity()) return zero();
  return LogProb(false, log10_value);
}

LogProb LogProb::from_ln(double ln_value) { return from_log10(ln_value / kLn10); }

LogProb LogProb::from_value(double value) {
  if (!std::isfinite(value) || value < 0) {
    throw DomainError("probability must be finite and non-negative");
  }
  if (value == 0) return zero();
  return LogProb(false, std::log10(value));
}

LogProb LogProb::parse(std::string_view text) {
  static const std::regex pattern(
      R"(\s*([0-9]+(?:\.[0-9]*)?)\s*(?:[eE]|x\s*10\^)\s*([+-]?[0-9]+)\s*)");
  static const std::regex plain(R"(\s*([0-9]+(?:\.[0-9]*)?)\s*)");
  const std::string s(text);
  std::smatch m;
  double mantissa = 0;
  double exponent = 0;
  if (std::regex_match(s, m, pattern)) {
    mantissa = std::stod(m[1].str());
    exponent = std::stod(m[2].str());
  } else if (std::regex_match(s, m, plain)) {
    mantissa = std::stod(m[1].str());
  } else {
    throw DomainError("cannot parse probability '" + s + "'");
  }
  if (mantissa == 0) return zero();
  return from_log10(std::log10(mantissa) + exponent);
}

double LogProb::log10() const {
  return zero_ ? -std::numeric_limits<double>::infinity() : log10_;
}

double LogProb::ln() const { return log10() * kLn10; }

double LogProb::value() const { return zero_ ? 0.0 : std::pow(10.0, log10_); }

std::string LogProb::to_string(int digits) const {
  if (zero_) return "0";
  return format_scientific(log10_, digits, "e", false);
}

std::string LogProb::to_display(int digits) const {
  if (zero_) return "0";
  return format_scientific(log10_, digits, " x 10^", true);
}

LogProb LogProb::operator*(const LogProb& rhs) const {
  if (zero_ || rhs.zero_) return zero();
  return from_log10(log10_ + rhs.log10_);
}

LogProb LogProb::pow(double exponent) const {
  if (!std::isfinite(exponent)) throw DomainError("exponent must be finite");
  if (zero_) {
    if (exponent < 0) throw DomainError("zero raised to a negative power");
    return exponent == 0 ? one() : zero();
  }
  return from_log10(log10_ * exponent);
}

bool operator<(const LogProb& a, const LogProb& b) {
  if (a.zero_) return !b.zero_;
  if (b.zero_) return false;
  return a.log10_ < b.log10_;
}

double beta_win(double epsilon) {
  if (!(epsilon >= 0 && epsilon <= 1)) throw DomainError("epsilon must lie in [0, 1]");
  return std::min(0.8 + epsilon, 1.0);
}

LogProb log_binomial_tail(std::uint64_t n, std::uint64_t k, double p) {
  if (!(p >= 0 && p <= 1)) throw DomainError("binomial probability must lie in [0, 1]");
  if (k == 0) return LogProb::one();
  if (k > n) return LogProb::zero();
  if (p == 0) return LogProb::zero();
  if (p == 1) return LogProb::one();

  const double ln_p = std::log(p);
  const double ln_q = std::log1p(-p);
  const auto mode = static_cast<std::uint64_t>(std::floor((static_cast<double>(n) + 1) * p));
  if (k > mode) return LogProb::from_ln(std::min(0.0, ln_upper_sum(n, k, p, ln_p, ln_q)));
  const double lower = std::exp(ln_lower_sum(n, k - 1, p, ln_p, ln_q));
  if (lower >= 1) return LogProb::zero();
  return LogProb::from_ln(std::log1p(-lower));
}

LogProb interpolated_tail(std::uint64_t n, double y) {
  if (!(y >= 0)) throw DomainError("tail position must be non-negative");
  if (y > static_cast<double>(n)) return LogProb::zero();
  const double lo = std::floor(y);
  const double f = y - lo;
  const LogProb below = log_binomial_tail(n, static_cast<std::uint64_t>(lo), 0.5);
  if (f == 0) return below;
  const LogProb above = log_binomial_tail(n, static_cast<std::uint64_t>(lo) + 1, 0.5);
  return below.pow(1 - f) * above.pow(f);
}

void HypothesisInputs::validate() const {
  if (trials == 0) throw DomainError("number of trials must be positive");
  if (wins > trials) throw DomainError("wins exceed trials");
  beta_win(epsilon);
}

LogProb pvalue_bound(const HypothesisInputs& inputs) {
  inputs.validate();
  return log_binomial_tail(inputs.trials, inputs.wins, beta_win(inputs.epsilon));
}

LogProb bentkus_deviation_bound(std::uint64_t n, double t, double a) {
  if (n == 0) throw DomainError("sample count must be positive");
  if (!(t > 0) || !std::isfinite(t)) throw DomainError("deviation t must be positive");
  if (!(a > 0) || !std::isfinite(a)) throw DomainError("range a must be positive");
  const double y = static_cast<double>(n) * (t + 2 * a) / (4 * a);
  const LogProb tail = interpolated_tail(n, y);
  return (LogProb::from_value(2 * std::numbers::e) * tail).min(LogProb::one());
}

EpsilonEstimate epsilon_upper_bound(double g_avg, double t, std::uint64_t n, double a) {
  if (!std::isfinite(g_avg)) throw DomainError("average score must be finite");
  EpsilonEstimate out;
  out.observed = std::abs(g_avg);
  out.margin = t;
  out.bound = out.observed + t;
  out.failure_probability = bentkus_deviation_bound(n, t, a);
  return out;
}

double nchv_max_win(double epsilon) {
  if (!(epsilon >= 0 && epsilon <= 1)) throw DomainError("epsilon must lie in [0, 1]");
  int best = 0;
  for (unsigned bits = 0; bits < 32; ++bits) {
    int unequal = 0;
    for (Context c : kForwardContexts) {
      unequal += ((bits >> (c.first - 1)) & 1u) != ((bits >> (c.second - 1)) & 1u);
    }
    best = std::max(best, unequal);
  }
  return std::min(best / 5.0 + epsilon, 1.0);
}

int nchv_min_correlator_sum() {
  int best = 5;
  for (unsigned bits = 0; bits < 32; ++bits) {
    int sum = 0;
    for (int i = 0; i < 5; ++i) {
      const int a = (bits >> i) & 1u ? -1 : 1;
      const int b = (bits >> ((i + 1) % 5)) & 1u ? -1 : 1;
      sum += a * b;
    }
    best = std::min(best, sum);
  }
  return best;
}

WinCount win_count(std::span<const TrialRecord> records) {
  WinCount out;
  for (const TrialRecord& r : records) {
    if (!r.accepted) continue;
    ++out.trials;
    if (r.a1 != r.a2) ++out.wins;
  }
  return out;
}

WinCount win_count(const TrialLog& log) { return win_count(log.records); }

}  // namespace kcbs
