#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "fairscope/audit.hpp"
#include "fairscope/error.hpp"
#include "fairscope/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitGate = 2;

bool use_color() { return std::getenv("FAIRSCOPE_NO_COLOR") == nullptr && isatty(STDERR_FILENO); }

void diagnose(const std::string& msg) {
  if (use_color()) {
    std::cerr << "\033[1;31mfairscope: error:\033[0m " << msg << "\n";
  } else {
    std::cerr << "fairscope: error: " << msg << "\n";
  }
}

void warn(const std::string& msg) {
  if (use_color()) {
    std::cerr << "\033[1;33mfairscope:\033[0m " << msg << "\n";
  } else {
    std::cerr << "fairscope: " << msg << "\n";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fairscope::Error(fairscope::ErrorKind::InputUnavailable, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fairscope::Error(fairscope::ErrorKind::InputUnavailable, "cannot write '" + path + "'");
  out << text;
}

struct CommonOptions {
  std::string input;
  std::string config;
  std::string output;
  std::optional<std::string> group_col;
  std::optional<std::string> truth_col;
  std::optional<std::string> pred_col;
  std::optional<std::string> groups;
  std::optional<std::string> format;
  std::optional<std::string> select_rate;
  std::optional<std::string> rates;
  bool gate = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--input,-i", o.input, "CSV with subject, group, score, rater and feature columns");
  cmd->add_option("--config,-c", o.config, "key = value configuration file (or JSON object)");
  cmd->add_option("--output,-o", o.output, "write the report here instead of stdout");
  cmd->add_option("--group-col", o.group_col, "group membership column");
  cmd->add_option("--truth-col", o.truth_col, "ground-truth score column");
  cmd->add_option("--pred-col", o.pred_col, "prediction column");
  cmd->add_option("--groups", o.groups, "reference and focal group labels, A,B");
  cmd->add_option("--format", o.format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
  cmd->add_option("--select-rate", o.select_rate, "top-k select rate in (0, 1]");
}

// Defaults < config file < command-line flags.
fairscope::AuditConfig build_config(const CommonOptions& o) {
  fairscope::AuditConfig cfg;
  if (!o.config.empty()) cfg.apply(fairscope::parse_key_values(read_file(o.config)));
  if (!o.input.empty()) cfg.set("input", o.input);
  if (o.group_col) cfg.set("group_col", *o.group_col);
  if (o.truth_col) cfg.set("truth_col", *o.truth_col);
  if (o.pred_col) cfg.set("pred_col", *o.pred_col);
  if (o.groups) cfg.set("groups", *o.groups);
  if (o.format) cfg.set("format", *o.format);
  if (o.select_rate) cfg.set("select_rate", *o.select_rate);
  if (o.rates) cfg.set("rates", *o.rates);
  if (o.gate) cfg.set("gate", "true");
  cfg.validate();
  return cfg;
}

fairscope::AuditTable load(const fairscope::AuditConfig& cfg) {
  try {
    return fairscope::load_input(cfg);
  } catch (const fairscope::Error& e) {
    if (e.kind() == fairscope::ErrorKind::InputUnavailable) throw;
    throw std::runtime_error(cfg.input + ": " + e.what());
  }
}

int count_violations(const fairscope::AuditReport& rep) {
  int n = 0;
  for (const auto& r : rep.results) n += r.flag == fairscope::Flag::Violation;
  return n;
}

int cmd_audit(const CommonOptions& o) {
  const auto cfg = build_config(o);
  const auto table = load(cfg);
  const auto rep = fairscope::run_audit(table, cfg);
  write_output(o.output, fairscope::render(rep, cfg.format));
  if (cfg.gate && rep.has_violation()) {
    warn("compliance gate failed: " + std::to_string(count_violations(rep)) + " violation flag(s)");
    return kExitGate;
  }
  return kExitOk;
}

int cmd_sweep(const CommonOptions& o) {
  const auto cfg = build_config(o);
  const auto table = load(cfg);
  write_output(o.output, fairscope::render(fairscope::run_sweep(table, cfg), cfg.format));
  return kExitOk;
}

int cmd_screen(const CommonOptions& o) {
  const auto cfg = build_config(o);
  const auto table = load(cfg);
  write_output(o.output, fairscope::render(fairscope::run_screen(table, cfg), cfg.format));
  return kExitOk;
}

int cmd_synth(const std::string& spec_path, const std::string& output, const std::optional<std::string>& seed) {
  std::string text = read_file(spec_path);
  if (seed) {
    // A seed given on the command line replaces the one in the file.
    std::string rebuilt;
    for (const auto& [k, v] : fairscope::parse_key_values(text)) {
      if (k != "seed") rebuilt += k + " = " + v + "\n";
    }
    text = rebuilt + "seed = " + *seed + "\n";
  }
  const fairscope::SynthSpec spec = fairscope::parse_synth_spec(text);
  fairscope::SynthStats stats;
  const auto table = fairscope::generate(spec, &stats);
  std::ostringstream csv;
  fairscope::write_audit_csv(csv, table);
  const std::string bytes = csv.str();
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(fairscope::fnv1a64(bytes)));
  if (output.empty() || output == "-") {
    std::cout << bytes;
    std::cerr << "fnv1a64 " << hex << "\n";
  } else {
    write_output(output, bytes);
    std::cout << "wrote " << output << ": " << table.size() << " rows, fnv1a64 " << hex << "\n";
  }
  if (stats.clamped_true + stats.clamped_pred + stats.clamped_ratings > 0) {
    warn("clamped to scale: " + std::to_string(stats.clamped_true) + " y_true, " + std::to_string(stats.clamped_pred) +
         " y_pred, " + std::to_string(stats.clamped_ratings) + " ratings");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairscope: staged bias and fairness audit for assessment scores"};
  app.set_version_flag("--version", std::string(fairscope::tool_version()));
  app.require_subcommand(1);

  CommonOptions audit_opts, sweep_opts, screen_opts;
  auto* audit = app.add_subcommand("audit", "full staged audit report");
  add_common(audit, audit_opts);
  audit->add_flag("--gate", audit_opts.gate, "exit 2 when any violation flag fires");

  auto* sweep = app.add_subcommand("sweep", "adverse impact across select rates");
  add_common(sweep, sweep_opts);
  sweep->add_option("--rates", sweep_opts.rates, "comma-separated select rates");

  auto* screen = app.add_subcommand("screen", "feature-stage screen only");
  add_common(screen, screen_opts);

  std::string spec_path, synth_out;
  std::optional<std::string> synth_seed;
  auto* synth = app.add_subcommand("synth", "generate a synthetic audit table");
  synth->add_option("--spec", spec_path, "synth spec file")->required();
  synth->add_option("--output,-o", synth_out, "CSV destination (stdout when omitted)");
  synth->add_option("--seed", synth_seed, "override the spec seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*audit) return cmd_audit(audit_opts);
    if (*sweep) return cmd_sweep(sweep_opts);
    if (*screen) return cmd_screen(screen_opts);
    if (*synth) return cmd_synth(spec_path, synth_out, synth_seed);
  } catch (const fairscope::Error& e) {
    diagnose(e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    diagnose(e.what());
    return kExitInput;
  }
  return kExitInput;
}
