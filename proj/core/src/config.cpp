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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace kcbs {

namespace {

struct Entry {
  std::size_t line;
  std::string section;
  std::string key;
  std::string value;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(std::size_t line, const std::string& message) const {
    std::ostringstream out;
    out << source_ << ':' << line << ": " << message;
    throw InputError(out.str());
  }

  std::vector<Entry> tokenize(std::string_view text) const {
    static const std::map<std::string, std::set<std::string>> kKeys{
        {"run",
         {"trials", "seed", "schedule", "include_reversed", "post_selection", "sign_convention",
          "workers"}},
        {"noise",
         {"preset", "t1_1_us", "t1_2to1_us", "t1_2to0_us", "t2s_01_us", "t2s_12_us",
          "contrast_eps_up", "contrast_eps_down", "thermal_p1", "thermal_p2",
          "target_rejection"}},
        {"timing", {"readout_ns", "ringdown_ns", "init_delay_ns"}},
    };

    std::vector<Entry> entries;
    std::set<std::pair<std::string, std::string>> seen;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = std::min(text.find('\n', pos), text.size());
      const std::string_view line = trim(text.substr(pos, end - pos));
      ++line_no;
      pos = end + 1;
      if (line.empty() || line.front() == '#' || line.front() == ';') {
        if (end == text.size()) break;
        continue;
      }
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "unterminated section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (!kKeys.contains(section)) fail(line_no, "unknown section [" + section + "]");
      } else {
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (section.empty()) fail(line_no, "key '" + key + "' appears before any section");
        if (!kKeys.at(section).contains(key)) {
          fail(line_no, "unknown key '" + key + "' in [" + section + "]");
        }
        if (value.empty()) fail(line_no, "missing value for '" + key + "'");
        if (!seen.insert({section, key}).second) {
          fail(line_no, "duplicate key '" + key + "' in [" + section + "]");
        }
        entries.push_back({line_no, section, key, value});
      }
      if (end == text.size()) break;
    }
    return entries;
  }

  double number(const Entry& e) const {
    double v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || std::isnan(v)) {
      fail(e.line, "'" + e.key + "' expects a number, got '" + e.value + "'");
    }
    return v;
  }

  std::uint64_t integer(const Entry& e) const {
    std::uint64_t v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
      fail(e.line, "'" + e.key + "' expects a non-negative integer, got '" + e.value + "'");
    }
    return v;
  }

  bool boolean(const Entry& e) const {
    if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
    if (e.value == "false" || e.value == "no" || e.value == "0") return false;
    fail(e.line, "'" + e.key + "' expects true or false, got '" + e.value + "'");
  }

  template <typename F>
  auto keyword(const Entry& e, F parse) const {
    try {
      return parse(e.value);
    } catch (const DomainError& err) {
      fail(e.line, err.what());
    }
  }

 private:
  std::string_view source_;
};

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
  const Parser parser(source);
  const std::vector<Entry> entries = parser.tokenize(text);

  ExperimentConfig cfg;
  for (const Entry& e : entries) {
    if (e.key != "preset") continue;
    if (e.value == "ideal") {
      cfg.noise = NoiseModel::ideal();
    } else if (e.value == "device") {
      cfg.noise = NoiseModel::calibrated();
    } else {
      parser.fail(e.line, "unknown preset '" + e.value + "' (expected ideal or device)");
    }
  }

  std::optional<Entry> target;
  std::optional<std::size_t> explicit_thermal_line;
  NoiseModel& n = cfg.noise;
  const std::map<std::string, double*> noise_numbers{
      {"t1_1_us", &n.t1_1_us},
      {"t1_2to1_us", &n.t1_2to1_us},
      {"t1_2to0_us", &n.t1_2to0_us},
      {"t2s_01_us", &n.t2s_01_us},
      {"t2s_12_us", &n.t2s_12_us},
      {"contrast_eps_up", &n.contrast_eps_up},
      {"contrast_eps_down", &n.contrast_eps_down},
      {"thermal_p1", &n.thermal_p1},
      {"thermal_p2", &n.thermal_p2},
      {"readout_ns", &n.readout_ns},
      {"ringdown_ns", &n.ringdown_ns},
      {"init_delay_ns", &n.init_delay_ns},
  };

  for (const Entry& e : entries) {
    if (e.key == "preset") continue;
    if (e.key == "trials") {
      cfg.trials = parser.integer(e);
    } else if (e.key == "seed") {
      cfg.seed = parser.integer(e);
    } else if (e.key == "workers") {
      cfg.workers = static_cast<unsigned>(parser.integer(e));
    } else if (e.key == "include_reversed") {
      cfg.include_reversed = parser.boolean(e);
    } else if (e.key == "schedule") {
      cfg.schedule = parser.keyword(e, parse_schedule_mode);
    } else if (e.key == "post_selection") {
      cfg.post_selection = parser.keyword(e, parse_post_selection);
    } else if (e.key == "sign_convention") {
      cfg.sign = parser.keyword(e, parse_sign_convention);
    } else if (e.key == "target_rejection") {
      target = e;
    } else {
      *noise_numbers.at(e.key) = parser.number(e);
      if (e.key == "thermal_p1" || e.key == "thermal_p2") explicit_thermal_line = e.line;
    }
  }

  if (target) {
    if (explicit_thermal_line) {
      parser.fail(*explicit_thermal_line,
                  "thermal populations conflict with target_rejection on line " +
                      std::to_string(target->line));
    }
    try {
      cfg.noise = cfg.noise.with_thermal_fit(parser.number(*target));
    } catch (const DomainError& err) {
      parser.fail(target->line, err.what());
    }
  }

  try {
    cfg.validate();
  } catch (const DomainError& err) {
    throw InputError(std::string(source) + ": " + err.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string config_to_text(const ExperimentConfig& cfg) {
  const NoiseModel& n = cfg.noise;
  std::ostringstream out;
  out << "[run]\n"
      << "trials = " << cfg.trials << '\n'
      << "seed = " << cfg.seed << '\n'
      << "schedule = " << to_string(cfg.schedule) << '\n'
      << "include_reversed = " << (cfg.include_reversed ? "true" : "false") << '\n'
      << "post_selection = " << to_string(cfg.post_selection) << '\n'
      << "sign_convention = " << to_string(cfg.sign) << '\n'
      << "[noise]\n"
      << "t1_1_us = " << format_double(n.t1_1_us) << '\n'
      << "t1_2to1_us = " << format_double(n.t1_2to1_us) << '\n'
      << "t1_2to0_us = " << format_double(n.t1_2to0_us) << '\n'
      << "t2s_01_us = " << format_double(n.t2s_01_us) << '\n'
      << "t2s_12_us = " << format_double(n.t2s_12_us) << '\n'
      << "contrast_eps_up = " << format_double(n.contrast_eps_up) << '\n'
      << "contrast_eps_down = " << format_double(n.contrast_eps_down) << '\n'
      << "thermal_p1 = " << format_double(n.thermal_p1) << '\n'
      << "thermal_p2 = " << format_double(n.thermal_p2) << '\n'
      << "[timing]\n"
      << "readout_ns = " << format_double(n.readout_ns) << '\n'
      << "ringdown_ns = " << format_double(n.ringdown_ns) << '\n'
      << "init_delay_ns = " << format_double(n.init_delay_ns) << '\n';
  return out.str();
}

}  // namespace kcbs
