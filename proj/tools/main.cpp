#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "urllc/experiments.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct CommonOpts {
  std::string config_path;
  std::optional<uint64_t> trials;
  std::optional<uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::string> format;
  std::string out_path;
  int trace = 0;
};

void add_common(CLI::App* cmd, CommonOpts* o, bool with_sim_flags) {
  cmd->add_option("--config", o->config_path, "scenario file")->required();
  cmd->add_option("--out", o->out_path, "output CSV path (default: stdout)");
  if (with_sim_flags) {
    cmd->add_option("--trials", o->trials, "number of Monte Carlo trials");
    cmd->add_option("--seed", o->seed, "master seed");
    cmd->add_option("--mode", o->mode, "override slot mode (conventional|flexible)");
    cmd->add_option("--format", o->format, "override slot format (catalog name)");
  }
}

// Flag overrides beat file values.
urllc::ScenarioDoc load(const CommonOpts& o) {
  urllc::ScenarioDoc doc = urllc::parse_scenario_file(o.config_path);
  if (o.trials) doc.trials = *o.trials;
  if (o.seed) doc.seed = *o.seed;
  if (o.mode) {
    if (*o.mode == "conventional") doc.scenario.mode = urllc::SlotMode::Conventional;
    else if (*o.mode == "flexible") doc.scenario.mode = urllc::SlotMode::Flexible;
    else throw urllc::ConfigError("invalid --mode '" + *o.mode + "'");
  }
  if (o.format) {
    if (!urllc::slot_format_exists(*o.format)) {
      throw urllc::ConfigError("unknown slot format '" + *o.format + "'");
    }
    doc.scenario.slot_format = *o.format;
  }
  return doc;
}

void write_output(const std::string& csv, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
  out << csv;
}

uint64_t trials_or_default(const urllc::ScenarioDoc& doc) {
  return doc.trials.value_or(10000);
}

uint64_t seed_or_default(const urllc::ScenarioDoc& doc) {
  return doc.seed.value_or(1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Control-channel reliability analysis and slot-level HARQ simulation"};
  app.require_subcommand(1);

  CommonOpts analytic_opts, region_opts, sim_opts, cmp_opts;
  CLI::App* analytic = app.add_subcommand("analytic", "closed-form delivery probabilities");
  add_common(analytic, &analytic_opts, false);
  CLI::App* region = app.add_subcommand("region", "reliability-region boundary sweep");
  add_common(region, &region_opts, false);
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo over one scenario");
  add_common(simulate, &sim_opts, true);
  simulate->add_option("--trace", sim_opts.trace, "print the first K trial traces");
  CLI::App* compare = app.add_subcommand("compare", "conventional vs flexible, paired trials");
  add_common(compare, &cmp_opts, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analytic->parsed()) {
      const auto doc = load(analytic_opts);
      write_output(urllc::analytic_report_csv(doc), analytic_opts.out_path);
    } else if (region->parsed()) {
      const auto doc = load(region_opts);
      write_output(urllc::region_report_csv(doc), region_opts.out_path);
    } else if (simulate->parsed()) {
      const auto doc = load(sim_opts);
      const auto result = urllc::simulate_report(doc, trials_or_default(doc),
                                                 seed_or_default(doc), sim_opts.trace);
      if (!result.traces.empty()) std::cout << result.traces;
      write_output(result.csv, sim_opts.out_path);
    } else if (compare->parsed()) {
      const auto doc = load(cmp_opts);
      const auto result =
          urllc::compare_report(doc, trials_or_default(doc), seed_or_default(doc));
      write_output(result.csv, cmp_opts.out_path);
    }
  } catch (const urllc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
