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

#include "kcbs/analysis.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace kcbs {

namespace {

// Row order of the printed table: each forward context next to its reverse,
// in observable order.
constexpr std::array<Context, 10> kTableOrder{
    {{1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 4}, {4, 3}, {4, 5}, {5, 4}, {5, 1}, {1, 5}}};

struct Tally {
  std::uint64_t count = 0;
  std::int64_t product = 0;
  std::int64_t first = 0;
  std::int64_t second = 0;
};

Estimate mean_of_signs(std::int64_t sum, std::uint64_t count) {
  const double n = static_cast<double>(count);
  const double m = static_cast<double>(sum) / n;
  return {m, std::sqrt(std::max(0.0, 1.0 - m * m) / n)};
}

Estimate add(const Estimate& a, const Estimate& b) {
  return {a.value + b.value, std::hypot(a.std_error, b.std_error)};
}

std::string context_name(Context c) {
  return "(" + std::to_string(c.first) + "," + std::to_string(c.second) + ")";
}

std::optional<InequalityTest> test_order(const CorrelationReport& report,
                                         const std::array<Context, 5>& order,
                                         const char* label) {
  std::string missing;
  int present = 0;
  for (Context c : order) {
    if (report.find(c)) {
      ++present;
    } else {
      missing += (missing.empty() ? "" : " ") + context_name(c);
    }
  }
  if (present == 0) return std::nullopt;
  if (present < 5) {
    throw DomainError(std::string("log is missing ") + label + " contexts: " + missing);
  }

  InequalityTest test;
  bool all_epsilon = true;
  Estimate eps_sum;
  for (Context c : order) {
    const PairStatistics* p = report.find(c);
    test.correlator_sum = add(test.correlator_sum, p->correlator);
    if (p->epsilon) {
      eps_sum = add(eps_sum, *p->epsilon);
    } else {
      all_epsilon = false;
    }
  }
  if (all_epsilon) test.epsilon_sum = eps_sum;
  test.bound = -3.0 - (test.epsilon_sum ? test.epsilon_sum->value : 0.0);
  const double margin = test.bound - test.correlator_sum.value;
  const double error =
      std::hypot(test.correlator_sum.std_error, test.epsilon_sum ? test.epsilon_sum->std_error : 0.0);
  if (error > 0.0) {
    test.violation_sigma = margin / error;
  } else if (margin != 0.0) {
    test.violation_sigma = std::copysign(std::numeric_limits<double>::infinity(), margin);
  }
  return test;
}

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json estimate_json(const Estimate& e) {
  return {{"value", number(e.value)}, {"std_error", number(e.std_error)}};
}

nlohmann::json test_json(const std::optional<InequalityTest>& t) {
  if (!t) return nullptr;
  nlohmann::json j;
  j["correlator_sum"] = estimate_json(t->correlator_sum);
  j["epsilon_sum"] = t->epsilon_sum ? estimate_json(*t->epsilon_sum) : nlohmann::json(nullptr);
  j["bound"] = number(t->bound);
  j["violation_sigma"] = number(t->violation_sigma);
  j["violated"] = t->violated();
  return j;
}

std::string fmt(const Estimate& e) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.4f(%.4f)", e.value, e.std_error);
  return buf;
}

void print_test(std::ostringstream& out, const char* label, const InequalityTest& t) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s order: sum <AiAj> = %s", label,
                fmt(t.correlator_sum).c_str());
  out << buf;
  if (t.epsilon_sum) out << "   sum eps = " << fmt(*t.epsilon_sum);
  std::snprintf(buf, sizeof buf, "   bound = %+.4f   ", t.bound);
  out << buf;
  if (t.violated()) {
    if (std::isinf(t.violation_sigma)) {
      out << "VIOLATED (zero standard error)\n";
    } else {
      std::snprintf(buf, sizeof buf, "VIOLATED by %.1f standard errors\n", t.violation_sigma);
      out << buf;
    }
  } else {
    out << "not violated\n";
  }
}

}  // namespace

const PairStatistics* CorrelationReport::find(Context ctx) const {
  for (const auto& p : pairs) {
    if (p.context == ctx) return &p;
  }
  return nullptr;
}

CorrelationReport analyze_records(std::span<const TrialRecord> records) {
  std::map<std::pair<int, int>, Tally> tallies;
  CorrelationReport report;
  for (const TrialRecord& r : records) {
    if (!r.accepted) {
      ++report.rejected_trials;
      continue;
    }
    if (!is_valid_context(r.context)) {
      throw DomainError("record for trial " + std::to_string(r.trial) + " has invalid context " +
                        context_name(r.context));
    }
    Tally& t = tallies[{r.context.first, r.context.second}];
    ++t.count;
    t.product += r.a1 * r.a2;
    t.first += r.a1;
    t.second += r.a2;
    ++report.accepted_trials;
    if (r.a1 != r.a2) ++report.wins;
  }
  if (report.accepted_trials == 0) throw DomainError("trial log has no accepted trials");

  for (Context c : kTableOrder) {
    const auto it = tallies.find({c.first, c.second});
    if (it == tallies.end()) continue;
    const Tally& t = it->second;
    PairStatistics p;
    p.context = c;
    p.count = t.count;
    p.correlator = mean_of_signs(t.product, t.count);
    p.first_mean = mean_of_signs(t.first, t.count);
    p.second_mean = mean_of_signs(t.second, t.count);
    report.pairs.push_back(p);
  }
  // epsilon_ij compares A_j measured first, in (j,i), with A_j measured after A_i.
  for (PairStatistics& p : report.pairs) {
    const PairStatistics* reverse = report.find(p.context.reversed());
    if (!reverse) continue;
    p.epsilon = Estimate{std::abs(reverse->first_mean.value - p.second_mean.value),
                         std::hypot(reverse->first_mean.std_error, p.second_mean.std_error)};
  }

  report.forward = test_order(report, kForwardContexts, "forward");
  report.reverse = test_order(report, kReverseContexts, "reverse");
  return report;
}

CorrelationReport analyze_log(const TrialLog& log) { return analyze_records(log.records); }

std::string format_report_table(const CorrelationReport& report) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-7s %10s  %18s  %18s  %18s  %18s\n", "(i,j)", "trials",
                "<AiAj>", "<Ai>", "<Aj>", "eps_ij");
  out << buf;
  for (const PairStatistics& p : report.pairs) {
    std::snprintf(buf, sizeof buf, "%-7s %10llu  %18s  %18s  %18s  %18s\n",
                  context_name(p.context).c_str(), static_cast<unsigned long long>(p.count),
                  fmt(p.correlator).c_str(), fmt(p.first_mean).c_str(),
                  fmt(p.second_mean).c_str(), p.epsilon ? fmt(*p.epsilon).c_str() : "-");
    out << buf;
  }
  out << '\n';
  if (report.forward) print_test(out, "forward", *report.forward);
  if (report.reverse) print_test(out, "reverse", *report.reverse);
  std::snprintf(buf, sizeof buf, "accepted trials: %llu   wins: %llu   win fraction: %.6f\n",
                static_cast<unsigned long long>(report.accepted_trials),
                static_cast<unsigned long long>(report.wins), report.win_fraction());
  out << buf;
  return out.str();
}

std::string report_to_json(const CorrelationReport& report, int indent) {
  nlohmann::json j;
  j["accepted_trials"] = report.accepted_trials;
  j["rejected_trials"] = report.rejected_trials;
  j["wins"] = report.wins;
  j["win_fraction"] = number(report.win_fraction());
  j["pairs"] = nlohmann::json::array();
  for (const PairStatistics& p : report.pairs) {
    j["pairs"].push_back({
        {"first", p.context.first},
        {"second", p.context.second},
        {"count", p.count},
        {"correlator", estimate_json(p.correlator)},
        {"first_mean", estimate_json(p.first_mean)},
        {"second_mean", estimate_json(p.second_mean)},
        {"epsilon", p.epsilon ? estimate_json(*p.epsilon) : nlohmann::json(nullptr)},
    });
  }
  j["forward"] = test_json(report.forward);
  j["reverse"] = test_json(report.reverse);
  return j.dump(indent);
}

}  // namespace kcbs
