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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kcbs/analysis.h"
#include "kcbs/config.h"
#include "kcbs/dispersive.h"
#include "kcbs/frame.h"
#include "kcbs/game.h"
#include "kcbs/stats.h"
#include "kcbs/trial_log_io.h"

namespace kcbs::cli {

namespace {

using Json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string fixed(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

// ---- ideal ---------------------------------------------------------------

struct IdealOptions {
  std::string state = "ground";
  std::string sign = "complement_positive";
  bool json = false;
};

DensityMatrix named_state(const std::string& name) {
  if (name == "ground") return DensityMatrix::basis(0);
  if (name == "mixed") return DensityMatrix::maximally_mixed();
  if (name == "basis1") return DensityMatrix::basis(1);
  if (name == "basis2") return DensityMatrix::basis(2);
  throw UsageError("unknown state '" + name + "' (expected ground, mixed, basis1 or basis2)");
}

void cmd_ideal(const IdealOptions& o, std::ostream& out) {
  const KcbsFrame frame = build_kcbs_frame(parse_sign_convention(o.sign));
  const IdealReport report = ideal_statistics(frame, named_state(o.state));
  if (o.json) {
    Json j;
    j["state"] = o.state;
    j["sign_convention"] = o.sign;
    j["frame"] = Json::array();
    for (const Complex3Vector& v : frame.vectors()) {
      Json vec = Json::array();
      for (int k = 0; k < 3; ++k) vec.push_back({v(k).real(), v(k).imag()});
      j["frame"].push_back(vec);
    }
    j["contexts"] = Json::array();
    for (const IdealPairStatistics& p : report.contexts) {
      j["contexts"].push_back({{"first", p.first},
                               {"second", p.second},
                               {"correlator", p.correlator},
                               {"first_mean", p.first_mean},
                               {"second_mean", p.second_mean},
                               {"win_probability", p.win_probability}});
    }
    j["correlator_sum"] = report.correlator_sum;
    j["nchv_bound"] = -3;
    j["win_probability"] = report.win_probability;
    out << j.dump(2) << '\n';
    return;
  }
  out << "pentagram vectors (components along |0>, |1>, |2>):\n" << frame.to_text() << '\n';
  out << "context    <AiAj>        <Ai>          <Aj>          Pr(win)\n";
  for (const IdealPairStatistics& p : report.contexts) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "(%d,%d)     %+.10f  %+.10f  %+.10f  %.10f\n", p.first, p.second,
                  p.correlator, p.first_mean, p.second_mean, p.win_probability);
    out << buf;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "sum <A_i A_i+1> = %.12f   (noncontextual bound -3)\n",
                report.correlator_sum);
  out << buf;
  std::snprintf(buf, sizeof buf, "win probability = %.12f   (noncontextual bound 0.8)\n",
                report.win_probability);
  out << buf;
}

// ---- simulate ------------------------------------------------------------

struct SimulateOptions {
  std::string config;
  std::string output;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<unsigned> workers;
  bool json = false;
};

ExperimentConfig resolve_config(const std::string& path, std::optional<std::uint64_t> seed,
                                std::optional<std::uint64_t> trials,
                                std::optional<unsigned> workers) {
  ExperimentConfig cfg = path.empty() ? ExperimentConfig{} : load_config(path);
  if (seed) cfg.seed = *seed;
  if (trials) cfg.trials = *trials;
  if (workers) cfg.workers = *workers;
  cfg.validate();
  return cfg;
}

void cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  LogFormat format;
  if (o.format == "csv") {
    format = LogFormat::kCsv;
  } else if (o.format == "binary") {
    format = LogFormat::kBinary;
  } else {
    throw UsageError("unknown log format '" + o.format + "' (expected csv or binary)");
  }
  const ExperimentConfig cfg = resolve_config(o.config, o.seed, o.trials, o.workers);
  const TrialLog log = run_experiment(cfg);
  save_trial_log(o.output, log, format);

  std::optional<CorrelationReport> report;
  std::string unavailable;
  try {
    report = analyze_log(log);
  } catch (const DomainError& e) {
    unavailable = e.what();
  }

  if (o.json) {
    Json j;
    j["output"] = o.output;
    j["trials"] = log.records.size();
    j["seed"] = cfg.seed;
    j["rejected_inits"] = log.rejected_inits;
    j["rejection_fraction"] = number(log.rejection_fraction());
    j["report"] = report ? Json::parse(report_to_json(*report)) : Json(nullptr);
    out << j.dump(2) << '\n';
    return;
  }
  out << "wrote " << log.records.size() << " trials to " << o.output << " (seed " << cfg.seed
      << ")\n";
  out << "initialisation rejections: " << log.rejected_inits << " ("
      << fixed(100 * log.rejection_fraction(), 2) << "%)\n";
  if (report) {
    out << '\n' << format_report_table(*report);
  } else {
    out << "summary unavailable: " << unavailable << '\n';
  }
}

// ---- analyze -------------------------------------------------------------

struct AnalyzeOptions {
  std::string log;
  bool json = false;
};

void cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
  const TrialLog log = load_trial_log(o.log);
  const CorrelationReport report = analyze_log(log);
  if (o.json) {
    out << report_to_json(report, 2) << '\n';
  } else {
    out << format_report_table(report);
  }
}

// ---- game ----------------------------------------------------------------

struct GameOptions {
  std::string config;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  double t = 0.005;
  double a = 2;
  bool json = false;
};

void cmd_game(const GameOptions& o, std::ostream& out) {
  const ExperimentConfig cfg = resolve_config(o.config, o.seed, o.trials, std::nullopt);
  const GameScoreLog log = run_incompatibility_game(cfg);
  if (!o.output.empty()) {
    std::ofstream file(o.output);
    if (!file) throw InputError("cannot open '" + o.output + "' for writing");
    write_game_log_csv(file, log);
    if (!file) throw InputError("write failed for '" + o.output + "'");
  }
  const EpsilonEstimate eps = epsilon_upper_bound(log.g_avg, o.t, log.trials.size(), o.a);
  if (o.json) {
    Json j;
    j["trials"] = log.trials.size();
    j["seed"] = cfg.seed;
    j["rejected_inits"] = log.rejected_inits;
    j["g_avg"] = log.g_avg;
    j["epsilon_bound"] = eps.bound;
    j["confidence_t"] = eps.margin;
    j["bentkus_prob"] = number(eps.failure_probability.value());
    j["bentkus_log10"] = number(eps.failure_probability.log10());
    out << j.dump(2) << '\n';
    return;
  }
  out << "rounds: " << log.trials.size() << " (seed " << cfg.seed << ")\n";
  out << "g_avg = " << fixed(log.g_avg) << '\n';
  out << "epsilon <= |g_avg| + t = " << fixed(eps.bound) << "  (t = " << eps.margin
      << ", failure probability <= " << eps.failure_probability.to_string(2) << ")\n";
}

// ---- pvalue --------------------------------------------------------------

struct PvalueOptions {
  std::uint64_t n = 0;
  std::uint64_t c = 0;
  std::optional<double> epsilon;
  std::optional<double> g_avg;
  std::optional<double> t;
  std::optional<std::uint64_t> game_n;
  double a = 2;
  int digits = 3;
  bool json = false;
};

void cmd_pvalue(const PvalueOptions& o, std::ostream& out) {
  if (o.epsilon.has_value() == o.g_avg.has_value()) {
    throw UsageError("pvalue needs exactly one of --epsilon or --g-avg");
  }
  if (o.g_avg && !o.t) throw UsageError("--g-avg requires --t");
  if (o.epsilon && (o.t || o.game_n)) throw UsageError("--t and --game-n go with --g-avg");

  double epsilon = 0;
  std::optional<EpsilonEstimate> estimate;
  if (o.epsilon) {
    epsilon = *o.epsilon;
  } else {
    estimate = epsilon_upper_bound(*o.g_avg, *o.t, o.game_n.value_or(o.n), o.a);
    epsilon = estimate->bound;
  }
  const HypothesisInputs inputs{o.n, o.c, epsilon};
  const LogProb p = pvalue_bound(inputs);
  const double beta = beta_win(epsilon);

  if (o.json) {
    Json j;
    j["n"] = o.n;
    j["c"] = o.c;
    j["epsilon_bound"] = epsilon;
    j["beta_win"] = beta;
    j["p_value_log10"] = number(p.log10());
    j["p_value"] = p.to_string(o.digits);
    j["bentkus_prob"] = estimate ? number(estimate->failure_probability.value()) : Json(nullptr);
    j["confidence_t"] = estimate ? Json(estimate->margin) : Json(nullptr);
    out << j.dump(2) << '\n';
    return;
  }
  out << "trials n = " << o.n << ", wins c = " << o.c << " (" << fixed(double(o.c) / o.n)
      << ")\n";
  if (estimate) {
    out << "epsilon <= " << fixed(epsilon) << " (|g_avg| " << fixed(estimate->observed)
        << " + t " << estimate->margin << ", failure probability <= "
        << estimate->failure_probability.to_string(2) << ")\n";
  } else {
    out << "epsilon = " << fixed(epsilon) << '\n';
  }
  out << "beta_win = " << fixed(beta) << '\n';
  out << "p-value <= " << p.to_string(o.digits) << "  (log10 = " << fixed(p.log10(), 8)
      << ")\n";
}

// ---- bentkus -------------------------------------------------------------

struct BentkusOptions {
  std::uint64_t n = 0;
  double t = 0;
  double a = 2;
  bool json = false;
};

void cmd_bentkus(const BentkusOptions& o, std::ostream& out) {
  const LogProb bound = bentkus_deviation_bound(o.n, o.t, o.a);
  const double y = static_cast<double>(o.n) * (o.t + 2 * o.a) / (4 * o.a);
  if (o.json) {
    Json j;
    j["n"] = o.n;
    j["t"] = o.t;
    j["a"] = o.a;
    j["y"] = y;
    j["bound"] = number(bound.value());
    j["bound_log10"] = number(bound.log10());
    out << j.dump(2) << '\n';
    return;
  }
  out << "y = n (t + 2a) / (4a) = " << fixed(y) << '\n';
  out << "Pr(|mean - E mean| >= " << o.t << ") <= " << bound.to_string(2) << "  ("
      << bound.to_string(6) << ")\n";
}

// ---- shifts --------------------------------------------------------------

struct ShiftOptions {
  double g = 0;
  double nu_c = 0;
  double nu01 = 0;
  double nu12 = 0;
  double nu23 = 0;
  bool json = false;
};

void cmd_shifts(const ShiftOptions& o, std::ostream& out) {
  const DispersiveShiftSet s = dispersive_shifts(o.g, o.nu_c, o.nu01, o.nu12, o.nu23);
  const double ratio = s.degeneracy_ratio();
  if (o.json) {
    Json j;
    j["coupling"] = s.coupling;
    j["cavity"] = s.cavity;
    j["transitions"] = s.transitions;
    j["chi"] = s.chi;
    j["shifts"] = s.shifts;
    j["degeneracy_ratio"] = number(ratio);
    j["near_degenerate"] = s.near_degenerate();
    out << j.dump(2) << '\n';
    return;
  }
  out << "level   chi (MHz)         shift s (MHz)\n";
  for (int k = 0; k < 3; ++k) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d       %+.9f    %+.9f\n", k, s.chi[k] + 0.0, s.shifts[k] + 0.0);
    out << buf;
  }
  out << "|s1 - s2| / |s0 - s1| = " << (std::isfinite(ratio) ? fixed(ratio) : "inf")
      << (s.near_degenerate() ? "  -> s1, s2 near-degenerate: |1> and |2> share one readout\n"
                              : "\n");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and certification tools for the KCBS contextuality test", "kcbs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  IdealOptions ideal;
  auto* ideal_cmd = app.add_subcommand("ideal", "Ideal quantum predictions for the pentagram");
  ideal_cmd->add_option("--state", ideal.state, "ground, mixed, basis1 or basis2")
      ->capture_default_str();
  ideal_cmd->add_option("--sign", ideal.sign, "complement_positive or projector_positive")
      ->capture_default_str();
  ideal_cmd->add_flag("--json", ideal.json, "Machine-readable output");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate the sequential-measurement protocol");
  sim_cmd->add_option("--config", sim.config, "Config file (defaults: calibrated device noise model)")
      ->check(CLI::ExistingFile);
  sim_cmd->add_option("-o,--output", sim.output, "Trial log to write")->required();
  sim_cmd->add_option("--format", sim.format, "csv or binary")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Overrides the config seed");
  sim_cmd->add_option("--trials", sim.trials, "Overrides the config trial count");
  sim_cmd->add_option("--workers", sim.workers, "Worker threads (output does not depend on it)");
  sim_cmd->add_flag("--json", sim.json, "Machine-readable summary");

  AnalyzeOptions an;
  auto* an_cmd = app.add_subcommand("analyze", "Correlation table and inequality test for a log");
  an_cmd->add_option("log", an.log, "Trial log (CSV or binary)")->required();
  an_cmd->add_flag("--json", an.json, "Machine-readable report");

  GameOptions game;
  auto* game_cmd = app.add_subcommand("game", "Incompatibility-estimation game");
  game_cmd->add_option("--config", game.config, "Config file")->check(CLI::ExistingFile);
  game_cmd->add_option("-o,--output", game.output, "Optional per-round CSV");
  game_cmd->add_option("--seed", game.seed, "Overrides the config seed");
  game_cmd->add_option("--trials", game.trials, "Overrides the config trial count");
  game_cmd->add_option("--t", game.t, "Confidence margin t")->capture_default_str();
  game_cmd->add_option("--a", game.a, "Score range a")->capture_default_str();
  game_cmd->add_flag("--json", game.json, "Machine-readable output");

  PvalueOptions pv;
  auto* pv_cmd = app.add_subcommand("pvalue", "P-value bound for c wins in n trials");
  pv_cmd->add_option("--n", pv.n, "Trials")->required();
  pv_cmd->add_option("--c", pv.c, "Wins")->required();
  pv_cmd->add_option("--epsilon", pv.epsilon, "Incompatibility bound");
  pv_cmd->add_option("--g-avg", pv.g_avg, "Average game score (bound becomes |g_avg| + t)");
  pv_cmd->add_option("--t", pv.t, "Confidence margin for --g-avg");
  pv_cmd->add_option("--game-n", pv.game_n, "Game rounds behind --g-avg (default n)");
  pv_cmd->add_option("--a", pv.a, "Score range a")->capture_default_str();
  pv_cmd->add_option("--digits", pv.digits, "Significant digits")
      ->capture_default_str()
      ->check(CLI::Range(1, 17));
  pv_cmd->add_flag("--json", pv.json, "Machine-readable output");

  BentkusOptions bk;
  auto* bk_cmd = app.add_subcommand("bentkus", "Bentkus deviation bound for n bounded samples");
  bk_cmd->add_option("--n", bk.n, "Samples")->required();
  bk_cmd->add_option("--t", bk.t, "Deviation")->required();
  bk_cmd->add_option("--a", bk.a, "Samples lie in [-a, a]")->capture_default_str();
  bk_cmd->add_flag("--json", bk.json, "Machine-readable output");

  ShiftOptions sh;
  auto* sh_cmd = app.add_subcommand("shifts", "Dispersive cavity shifts of the lowest levels");
  sh_cmd->add_option("--g", sh.g, "Coupling (MHz)")->required();
  sh_cmd->add_option("--nu-c", sh.nu_c, "Cavity frequency (MHz)")->required();
  sh_cmd->add_option("--nu01", sh.nu01, "0-1 transition (MHz)")->required();
  sh_cmd->add_option("--nu12", sh.nu12, "1-2 transition (MHz)")->required();
  sh_cmd->add_option("--nu23", sh.nu23, "2-3 transition (MHz)")->required();
  sh_cmd->add_flag("--json", sh.json, "Machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*ideal_cmd) cmd_ideal(ideal, out);
    if (*sim_cmd) cmd_simulate(sim, out);
    if (*an_cmd) cmd_analyze(an, out);
    if (*game_cmd) cmd_game(game, out);
    if (*pv_cmd) cmd_pvalue(pv, out);
    if (*bk_cmd) cmd_bentkus(bk, out);
    if (*sh_cmd) cmd_shifts(sh, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace kcbs::cli
