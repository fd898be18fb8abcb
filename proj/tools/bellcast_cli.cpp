// Copyright 2026 The bellcast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// bellcast: command-line front end for the teleportation simulator.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellcast/harness.hpp"
#include "bellcast/observables.hpp"

namespace {

using namespace bellcast;

struct RunFlags {
  std::string config_path;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::optional<unsigned> threads;
  std::string csv_path;
  std::optional<double> eta_abs, eta_det, p_in, p_pdc;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool photon) {
  cmd->add_option("--config", f.config_path, "key=value configuration file");
  cmd->add_option("--trials", f.trials, "number of trials");
  cmd->add_option("--seed", f.seed, "master seed (overrides config and BELLCAST_SEED)");
  cmd->add_option("--input", f.input, "haar-random | fixed:a,b | fixed:a_re,a_im,b_re,b_im");
  cmd->add_option("--output", f.output, "JSON-lines output path");
  cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--csv", f.csv_path, "also write the per-outcome summary as CSV");
  if (photon) {
    cmd->add_option("--eta-abs", f.eta_abs, "two-photon absorption efficiency")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--eta-det", f.eta_det, "detector efficiency")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--p-in", f.p_in, "input photon availability")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--p-pdc", f.p_pdc, "down-converted pair availability")->check(CLI::Range(0.0, 1.0));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw harness::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Precedence: config file < BELLCAST_SEED < command-line flags.
harness::RunConfig resolve(const RunFlags& f, harness::Mode mode) {
  harness::RunConfig cfg;
  if (!f.config_path.empty()) cfg = harness::parse_config(read_file(f.config_path));
  cfg.mode = mode;
  if (const char* env = std::getenv("BELLCAST_SEED")) {
    cfg.master_seed = harness::parse_unsigned("BELLCAST_SEED", env);
  }
  if (f.trials) cfg.trials = *f.trials;
  if (f.seed) cfg.master_seed = *f.seed;
  if (f.input) cfg.fixed_input = harness::parse_input_spec(*f.input);
  if (f.output) cfg.output_path = *f.output;
  if (f.threads) cfg.threads = *f.threads;
  if (f.eta_abs) cfg.efficiency.eta_abs = *f.eta_abs;
  if (f.eta_det) cfg.efficiency.eta_det = *f.eta_det;
  if (f.p_in) cfg.efficiency.p_in = *f.p_in;
  if (f.p_pdc) cfg.efficiency.p_pdc = *f.p_pdc;
  cfg.validate();
  return cfg;
}

std::vector<std::string> invariant_violations(const harness::RunConfig& cfg,
                                              const std::vector<harness::TrialRow>& rows) {
  std::vector<std::string> bad;
  for (const auto& r : rows) {
    if (!r.fidelity) continue;
    bool must_be_exact = false;
    switch (cfg.mode) {
      case harness::Mode::Spin:
      case harness::Mode::Swap: must_be_exact = true; break;
      case harness::Mode::Baseline:
        must_be_exact = r.message_bits.has_value();  // only successes are corrected
        break;
      case harness::Mode::Photon:
        // A lossy absorber can let a pair through to D3 under the wrong label.
        must_be_exact = cfg.efficiency.eta_abs == 1.0;
        break;
    }
    if (must_be_exact && *r.fidelity < harness::kSuccessFidelity) {
      bad.push_back("trial " + std::to_string(r.trial) + ": fidelity " + harness::format12(*r.fidelity));
      if (bad.size() >= 10) break;
    }
  }
  return bad;
}

int run_mode(const RunFlags& f, harness::Mode mode) {
  const harness::RunConfig cfg = resolve(f, mode);
  std::vector<harness::TrialRow> rows;
  const harness::BatchSummary summary = harness::run_batch(cfg, rows);
  std::cout << harness::to_json(summary).dump(2) << '\n';
  if (!f.csv_path.empty()) {
    std::ofstream csv(f.csv_path, std::ios::binary | std::ios::trunc);
    if (!(csv << harness::summary_csv(summary))) {
      std::cerr << "error: cannot write " << f.csv_path << '\n';
      return 1;
    }
  }
  const auto bad = invariant_violations(cfg, rows);
  for (const auto& msg : bad) std::cerr << "invariant violation: " << msg << '\n';
  return bad.empty() ? 0 : 2;
}

int verify_observables() {
  using namespace bellcast::observables;
  const SpinObservableSet obs = build_spin_observables();
  bool ok = true;

  std::cout << "Joint eigenvalues (units of hbar^2)\n";
  std::cout << "state      S^2   Sx^2  Sy^2  Sz^2\n";
  EigenTable table;
  try {
    table = verify_eigen_table(obs);
  } catch (const TableViolation& e) {
    std::cerr << "eigen table violation: " << e.what() << '\n';
    return 1;
  }
  for (BellLabel l : kAllBellLabels) {
    std::printf("%-9s", std::string(to_string(l)).c_str());
    for (double v : table.row(l)) std::printf("  %4s", harness::format12(v + 0.0).c_str());
    std::printf("\n");
  }
  if (!tables_match(table, reference_eigen_table())) {
    std::cerr << "eigen table differs from the reference spectrum\n";
    ok = false;
  }

  std::cout << "\nCommutator max |entry|\n";
  for (std::size_t i = 0; i < kAllObservables.size(); ++i) {
    for (std::size_t j = i + 1; j < kAllObservables.size(); ++j) {
      const auto& a = obs.get(kAllObservables[i]).matrix();
      const auto& b = obs.get(kAllObservables[j]).matrix();
      const double norm = qcore::max_abs(a * b - b * a);
      std::printf("[%s, %s] = %s\n", std::string(to_string(kAllObservables[i])).c_str(),
                  std::string(to_string(kAllObservables[j])).c_str(), harness::format12(norm).c_str());
      if (norm >= qcore::kAlgebraTol) ok = false;
    }
  }
  const qcore::Matrix sxsy = obs.sx.matrix() * obs.sy.matrix() - obs.sy.matrix() * obs.sx.matrix();
  const double algebra = qcore::max_abs(sxsy - qcore::Complex(0, 1) * obs.sz.matrix());
  std::printf("[Sx, Sy] = %s (nonzero), |[Sx, Sy] - i Sz| = %s\n", harness::format12(qcore::max_abs(sxsy)).c_str(),
              harness::format12(algebra).c_str());
  if (algebra >= qcore::kAlgebraTol || qcore::max_abs(sxsy) < 0.5) ok = false;

  std::cout << "\nMinimal commuting pairs\n";
  for (const auto& pair : minimal_pairs()) {
    const bool distinct = distinguishes_bell_states(table, pair);
    std::printf("(%s, %s): %s\n", std::string(to_string(pair.first)).c_str(),
                std::string(to_string(pair.second)).c_str(), distinct ? "complete" : "NOT complete");
    ok = ok && distinct;
  }
  const double route = projector_route_discrepancy(obs);
  std::printf("\nRank-1 vs joint-eigenspace Bell projectors: max |diff| = %s\n", harness::format12(route).c_str());
  if (route >= qcore::kAlgebraTol) ok = false;

  std::cout << (ok ? "\nOK\n" : "\nFAILED\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bellcast: total teleportation simulator"};
  app.require_subcommand(1);

  app.add_subcommand("verify-observables", "print the spin eigenvalue table and commutator norms");

  RunFlags spin, photon, baseline, swap;
  add_run_flags(app.add_subcommand("run-spin", "Bell measurement via commuting spin observables"), spin, false);
  add_run_flags(app.add_subcommand("run-photon", "two-photon absorption cascade"), photon, true);
  add_run_flags(app.add_subcommand("run-baseline", "computational-basis baseline"), baseline, false);
  add_run_flags(app.add_subcommand("run-swap", "entanglement swapping"), swap, false);

  auto* sweep = app.add_subcommand("sweep-efficiency", "CSV of analytic cascade event probabilities");
  std::string param = "eta_det";
  double from = 0.5, to = 1.0;
  unsigned steps = 11;
  RunFlags sweep_flags;
  std::string sweep_input = "fixed:1,0";
  sweep->add_option("--param", param, "eta_abs | eta_det | p_in | p_pdc");
  sweep->add_option("--from", from);
  sweep->add_option("--to", to);
  sweep->add_option("--steps", steps)->check(CLI::PositiveNumber);
  sweep->add_option("--input", sweep_input, "fixed:a,b input state");
  sweep->add_option("--output", sweep_flags.csv_path, "CSV path (default stdout)");
  sweep->add_option("--eta-abs", sweep_flags.eta_abs)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--eta-det", sweep_flags.eta_det)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--p-in", sweep_flags.p_in)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--p-pdc", sweep_flags.p_pdc)->check(CLI::Range(0.0, 1.0));

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("verify-observables")) return verify_observables();
    if (app.got_subcommand("run-spin")) return run_mode(spin, harness::Mode::Spin);
    if (app.got_subcommand("run-photon")) return run_mode(photon, harness::Mode::Photon);
    if (app.got_subcommand("run-baseline")) return run_mode(baseline, harness::Mode::Baseline);
    if (app.got_subcommand("run-swap")) return run_mode(swap, harness::Mode::Swap);
    if (app.got_subcommand("sweep-efficiency")) {
      photonic::EfficiencyConfig base;
      if (sweep_flags.eta_abs) base.eta_abs = *sweep_flags.eta_abs;
      if (sweep_flags.eta_det) base.eta_det = *sweep_flags.eta_det;
      if (sweep_flags.p_in) base.p_in = *sweep_flags.p_in;
      if (sweep_flags.p_pdc) base.p_pdc = *sweep_flags.p_pdc;
      const auto input = harness::parse_input_spec(sweep_input);
      if (!input) throw harness::ConfigError("sweep-efficiency needs a fixed input");
      const std::string csv = harness::sweep_efficiency(base, param, from, to, steps, *input);
      if (sweep_flags.csv_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(sweep_flags.csv_path, std::ios::binary | std::ios::trunc);
        if (!(out << csv)) throw qcore::Error("cannot write " + sweep_flags.csv_path);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
