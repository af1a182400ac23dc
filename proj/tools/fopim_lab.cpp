// fopim_lab: command-line driver for the FOPIM experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fopim/harness/presets.hpp"
#include "fopim/harness/result_table.hpp"
#include "fopim/harness/runner.hpp"
#include "fopim/kernels/kernels.hpp"

namespace {

using namespace fopim;
using namespace fopim::harness;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> workers;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "experiment file (INI)");
  cmd->add_option("--preset", o.preset, "built-in experiment: fig3b fig4 fig5 fig6a fig6b fig7 fig8 fig9 fig10");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--out", o.out, "CSV output path (a .json sidecar is written next to it)");
  cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
}

ExperimentSpec resolve(const CommonOptions& o) {
  if (o.config.empty() == o.preset.empty()) throw ConfigError("give exactly one of --config or --preset");
  ExperimentSpec s = o.config.empty() ? preset(o.preset) : load_spec_file(o.config);
  if (o.seed) s.seed = *o.seed;
  if (o.workers) s.workers = *o.workers;
  if (!o.out.empty()) s.output = o.out;
  s.validate();
  return s;
}

void emit(const ResultTable& t, const ExperimentSpec& s) {
  if (s.output.empty()) {
    write_csv(t, std::cout);
    return;
  }
  std::ofstream csv(s.output);
  if (!csv) throw ConfigError("cannot write '" + s.output + "'");
  write_csv(t, csv);
  std::ofstream json(s.output + ".json");
  if (!json) throw ConfigError("cannot write '" + s.output + ".json'");
  write_json(t, s, json);
  std::fprintf(stderr, "wrote %s (%zu rows)\n", s.output.c_str(), t.rows.size());
}

bool is_ber(ExperimentKind k) { return k == ExperimentKind::BerSweep || k == ExperimentKind::BoundValidation; }
bool is_rmse(ExperimentKind k) { return k == ExperimentKind::RmseVsSnr || k == ExperimentKind::RmseVsSnapshots; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FOPIM FDA-MIMO ISAC experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  CommonOptions ber_o, rmse_o, rate_o, val_o, crb_o;
  auto* ber = app.add_subcommand("ber", "Monte Carlo BER sweep with the analytic bound");
  auto* rmse = app.add_subcommand("rmse", "angle/range RMSE sweep with root-CRB columns");
  auto* rate = app.add_subcommand("rate", "bits-per-pulse table");
  auto* val = app.add_subcommand("validate-bounds", "MLTSD BER and offset-set error against the bound chain");
  auto* crb = app.add_subcommand("crb", "mean CRBs over random scenarios");
  add_common(ber, ber_o);
  add_common(rmse, rmse_o);
  add_common(rate, rate_o);
  add_common(val, val_o);
  add_common(crb, crb_o);

  std::string preset_name;
  auto* pre = app.add_subcommand("preset", "print a built-in experiment file");
  pre->add_option("name", preset_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (pre->parsed()) {
      std::cout << preset_text(preset_name);
      return 0;
    }
    std::fprintf(stderr, "kernels: %s\n", std::string(kernels::backend_name(kernels::active_backend())).c_str());
    if (ber->parsed()) {
      const auto s = resolve(ber_o);
      if (!is_ber(s.kind)) throw ConfigError("ber needs a ber_sweep or bound_validation experiment");
      emit(s.kind == ExperimentKind::BerSweep ? run_ber_experiment(s) : run_bound_validation(s), s);
    } else if (rmse->parsed()) {
      const auto s = resolve(rmse_o);
      if (!is_rmse(s.kind)) throw ConfigError("rmse needs an rmse_vs_snr or rmse_vs_snapshots experiment");
      emit(run_rmse_experiment(s), s);
    } else if (rate->parsed()) {
      const auto s = resolve(rate_o);
      if (s.kind != ExperimentKind::RateTable) throw ConfigError("rate needs a rate_table experiment");
      emit(run_rate_table(s), s);
    } else if (val->parsed()) {
      const auto s = resolve(val_o);
      if (!is_ber(s.kind)) throw ConfigError("validate-bounds needs a ber_sweep or bound_validation experiment");
      emit(run_bound_validation(s), s);
    } else if (crb->parsed()) {
      const auto s = resolve(crb_o);
      if (!is_rmse(s.kind)) throw ConfigError("crb needs an rmse_vs_snr or rmse_vs_snapshots experiment");
      emit(run_crb_table(s), s);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
