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

#include "bellcast/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "bellcast/random.hpp"

namespace bellcast::harness {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Haar inputs come from a stream separate from the protocol's own samples.
teleport::UnknownState input_for(const RunConfig& cfg, std::uint64_t trial_seed) {
  if (cfg.fixed_input) return *cfg.fixed_input;
  TrialRng rng(splitmix64(trial_seed));
  return teleport::UnknownState::haar_random(rng);
}

qcore::Complex round12c(qcore::Complex z) { return {harness::round12(z.real()), harness::round12(z.imag())}; }

ordered_json optional_json(const std::optional<std::string>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

std::optional<double> optional_number(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::vector<std::string> categories(Mode mode) {
  std::vector<std::string> out;
  switch (mode) {
    case Mode::Spin:
    case Mode::Swap:
      for (auto l : observables::kAllBellLabels) out.emplace_back(observables::to_string(l));
      break;
    case Mode::Baseline:
      for (auto o : {teleport::ProductOutcome::UpUp, teleport::ProductOutcome::DownDown,
                     teleport::ProductOutcome::Symmetric, teleport::ProductOutcome::Antisymmetric}) {
        out.emplace_back(teleport::to_string(o));
      }
      break;
    case Mode::Photon:
      for (auto k : photonic::kAllEventKinds) out.emplace_back(photonic::to_string(k));
      break;
  }
  return out;
}

std::optional<teleport::UnknownState> row_input(const TrialRow& row) {
  if (!row.a || !row.b) return std::nullopt;
  const double n = std::sqrt(std::norm(*row.a) + std::norm(*row.b));
  return teleport::UnknownState(*row.a / n, *row.b / n);
}

std::vector<double> expected_for(const TrialRow& row, Mode mode, const photonic::EfficiencyConfig& eff) {
  if (mode == Mode::Swap) {
    const auto p = observables::bell_probabilities(teleport::swap_initial_state(), {1, 2});
    return {p.begin(), p.end()};
  }
  const auto input = row_input(row);
  if (!input) throw qcore::Error("trial " + std::to_string(row.trial) + " has no input amplitudes");
  switch (mode) {
    case Mode::Spin: {
      const auto p = observables::bell_probabilities(teleport::three_particle_state(*input), {0, 1});
      return {p.begin(), p.end()};
    }
    case Mode::Baseline: {
      const auto p = teleport::baseline_probabilities(*input);
      return {p.begin(), p.end()};
    }
    case Mode::Photon: {
      const auto p = photonic::analytic_distribution(*input, eff);
      return {p.begin(), p.end()};
    }
    case Mode::Swap: break;
  }
  return {};
}

const std::string& category_of(const TrialRow& row, Mode mode) {
  static const std::string kMissing;
  const auto& field = mode == Mode::Photon ? row.event : row.outcome;
  return field ? *field : kMissing;
}

bool is_success(const TrialRow& row, Mode mode) {
  if (mode == Mode::Baseline) {
    return row.outcome && *row.outcome == teleport::to_string(teleport::ProductOutcome::Antisymmetric);
  }
  return row.fidelity && *row.fidelity >= kSuccessFidelity;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  return std::strtod(format12(x).c_str(), nullptr);
}

std::string format12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

TrialRow run_one(const RunConfig& cfg, std::uint64_t trial_index) {
  const std::uint64_t seed = derive_trial_seed(cfg.master_seed, trial_index);
  TrialRow row;
  row.trial = trial_index;
  row.seed = seed;

  switch (cfg.mode) {
    case Mode::Spin: {
      const auto input = input_for(cfg, seed);
      const auto rec = teleport::run_trial(input, seed);
      row.outcome = std::string(observables::to_string(rec.outcome.label));
      row.message_bits = rec.message.to_string();
      row.fidelity = round12(rec.fidelity_value);
      row.a = round12c(input.a());
      row.b = round12c(input.b());
      break;
    }
    case Mode::Baseline: {
      const auto input = input_for(cfg, seed);
      const auto rec = teleport::run_baseline_computational(input, seed);
      row.outcome = std::string(teleport::to_string(rec.product));
      if (rec.success) row.message_bits = teleport::ClassicalMessage::encode(observables::BellLabel::PsiMinus).to_string();
      row.fidelity = round12(rec.fidelity_value);
      row.a = round12c(input.a());
      row.b = round12c(input.b());
      break;
    }
    case Mode::Swap: {
      const auto rec = teleport::run_entangled_input(seed);
      row.outcome = std::string(observables::to_string(rec.outcome.label));
      row.message_bits = teleport::ClassicalMessage::encode(rec.outcome.label).to_string();
      row.fidelity = round12(rec.fidelity_value);
      break;
    }
    case Mode::Photon: {
      const auto input = input_for(cfg, seed);
      const auto rec = photonic::run_cascade(input, cfg.efficiency, seed);
      row.event = std::string(photonic::to_string(rec.event.kind));
      if (rec.event.original) {
        row.outcome = std::string(photonic::to_string(*rec.event.original));
        row.message_bits =
            teleport::ClassicalMessage::encode(photonic::spin_analog(*rec.event.original)).to_string();
      }
      if (rec.fidelity_value) row.fidelity = round12(*rec.fidelity_value);
      row.a = round12c(input.a());
      row.b = round12c(input.b());
      break;
    }
  }
  return row;
}

ordered_json to_json(const TrialRow& row, Mode mode) {
  ordered_json j;
  j["trial"] = row.trial;
  j["seed"] = row.seed;
  j["outcome"] = optional_json(row.outcome);
  j["message_bits"] = optional_json(row.message_bits);
  j["fidelity"] = optional_json(row.fidelity);
  if (mode == Mode::Photon) j["event"] = optional_json(row.event);
  j["a_re"] = row.a ? ordered_json(row.a->real()) : ordered_json(nullptr);
  j["a_im"] = row.a ? ordered_json(row.a->imag()) : ordered_json(nullptr);
  j["b_re"] = row.b ? ordered_json(row.b->real()) : ordered_json(nullptr);
  j["b_im"] = row.b ? ordered_json(row.b->imag()) : ordered_json(nullptr);
  return j;
}

TrialRow row_from_json(const json& j) {
  TrialRow row;
  row.trial = j.at("trial").get<std::uint64_t>();
  row.seed = j.at("seed").get<std::uint64_t>();
  row.outcome = optional_string(j, "outcome");
  row.message_bits = optional_string(j, "message_bits");
  row.fidelity = optional_number(j, "fidelity");
  row.event = optional_string(j, "event");
  const auto a_re = optional_number(j, "a_re");
  const auto a_im = optional_number(j, "a_im");
  const auto b_re = optional_number(j, "b_re");
  const auto b_im = optional_number(j, "b_im");
  if (a_re && a_im) row.a = qcore::Complex(*a_re, *a_im);
  if (b_re && b_im) row.b = qcore::Complex(*b_re, *b_im);
  return row;
}

std::vector<TrialRow> read_rows(std::istream& in) {
  std::vector<TrialRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      rows.push_back(row_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw qcore::Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

BatchSummary summarize(std::span<const TrialRow> rows, Mode mode, const photonic::EfficiencyConfig& efficiency) {
  if (rows.empty()) throw qcore::Error("cannot summarize an empty record stream");
  const std::vector<std::string> labels = categories(mode);
  std::vector<std::uint64_t> counts(labels.size(), 0);
  std::vector<double> expected(labels.size(), 0.0);

  double fid_sum = 0.0;
  double fid_min = std::numeric_limits<double>::infinity();
  std::uint64_t fid_count = 0;
  std::uint64_t successes = 0;

  for (const TrialRow& row : rows) {
    const std::string& cat = category_of(row, mode);
    std::size_t k = 0;
    while (k < labels.size() && labels[k] != cat) ++k;
    if (k == labels.size()) {
      throw qcore::Error("trial " + std::to_string(row.trial) + ": unknown outcome '" + cat + "' for mode " +
                         std::string(to_string(mode)));
    }
    ++counts[k];
    const std::vector<double> p = expected_for(row, mode, efficiency);
    for (std::size_t i = 0; i < expected.size(); ++i) expected[i] += p[i];
    if (row.fidelity) {
      fid_sum += *row.fidelity;
      fid_min = std::min(fid_min, *row.fidelity);
      ++fid_count;
    }
    if (is_success(row, mode)) ++successes;
  }

  BatchSummary s;
  s.mode = mode;
  s.trials = rows.size();
  const double n = static_cast<double>(rows.size());
  double chi = 0.0;
  int used = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    const double freq = static_cast<double>(counts[k]) / n;
    s.outcomes.push_back(OutcomeStat{labels[k], counts[k], freq, expected[k] / n});
    if (expected[k] > 1e-12) {
      const double d = static_cast<double>(counts[k]) - expected[k];
      chi += d * d / expected[k];
      ++used;
    } else if (counts[k] > 0) {
      chi = std::numeric_limits<double>::infinity();
    }
  }
  if (fid_count > 0) {
    s.mean_fidelity = fid_sum / static_cast<double>(fid_count);
    s.min_fidelity = fid_min;
  }
  s.success_rate = static_cast<double>(successes) / n;
  s.chi_square = chi;
  s.chi_square_dof = std::max(used - 1, 0);
  if (!std::isfinite(chi)) {
    s.chi_square_p_value = 0.0;
  } else if (s.chi_square_dof > 0) {
    boost::math::chi_squared_distribution<double> dist(s.chi_square_dof);
    s.chi_square_p_value = boost::math::cdf(boost::math::complement(dist, chi));
  }
  return s;
}

BatchSummary run_batch(const RunConfig& cfg, std::vector<TrialRow>& rows_out) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();

  std::ofstream out;
  if (!cfg.output_path.empty()) {
    out.open(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw qcore::Error("cannot open output file '" + cfg.output_path + "'");
  }

  std::vector<std::optional<TrialRow>> rows(cfg.trials);
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(cfg.threads, cfg.trials));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t i = w; i < cfg.trials; i += workers) rows[i] = run_one(cfg, i);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  rows_out.clear();
  rows_out.reserve(rows.size());
  for (auto& r : rows) rows_out.push_back(std::move(*r));

  if (out.is_open()) {
    for (const TrialRow& r : rows_out) out << to_json(r, cfg.mode).dump() << '\n';
    out.flush();
    if (!out) throw qcore::Error("failed writing output file '" + cfg.output_path + "'");
  }

  BatchSummary s = summarize(rows_out, cfg.mode, cfg.efficiency);
  s.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return s;
}

BatchSummary run_batch(const RunConfig& cfg) {
  std::vector<TrialRow> rows;
  return run_batch(cfg, rows);
}

ordered_json to_json(const BatchSummary& s) {
  ordered_json j;
  j["mode"] = std::string(to_string(s.mode));
  j["trials"] = s.trials;
  ordered_json outcomes = ordered_json::array();
  for (const OutcomeStat& o : s.outcomes) {
    ordered_json e;
    e["outcome"] = o.label;
    e["count"] = o.count;
    e["frequency"] = round12(o.frequency);
    e["expected_probability"] = round12(o.expected_probability);
    outcomes.push_back(std::move(e));
  }
  j["outcomes"] = std::move(outcomes);
  j["mean_fidelity"] = s.mean_fidelity ? ordered_json(round12(*s.mean_fidelity)) : ordered_json(nullptr);
  j["min_fidelity"] = s.min_fidelity ? ordered_json(round12(*s.min_fidelity)) : ordered_json(nullptr);
  j["success_rate"] = round12(s.success_rate);
  // JSON has no infinity.
  j["chi_square"] = std::isfinite(s.chi_square) ? ordered_json(round12(s.chi_square)) : ordered_json(nullptr);
  j["chi_square_dof"] = s.chi_square_dof;
  j["chi_square_p_value"] = round12(s.chi_square_p_value);
  j["duration_seconds"] = round12(s.duration_seconds);
  return j;
}

std::string summary_csv(const BatchSummary& s) {
  std::ostringstream out;
  out << "outcome,count,frequency,expected_probability\n";
  for (const OutcomeStat& o : s.outcomes) {
    out << o.label << ',' << o.count << ',' << format12(o.frequency) << ',' << format12(o.expected_probability)
        << '\n';
  }
  return out.str();
}

std::string sweep_efficiency(const photonic::EfficiencyConfig& base, const std::string& param, double from,
                             double to, unsigned steps, const teleport::UnknownState& input) {
  static const std::map<std::string, double photonic::EfficiencyConfig::*> kParams = {
      {"eta_abs", &photonic::EfficiencyConfig::eta_abs},
      {"eta_det", &photonic::EfficiencyConfig::eta_det},
      {"p_in", &photonic::EfficiencyConfig::p_in},
      {"p_pdc", &photonic::EfficiencyConfig::p_pdc}};
  const auto it = kParams.find(param);
  if (it == kParams.end()) throw ConfigError("unknown sweep parameter '" + param + "'");
  if (steps == 0) throw ConfigError("steps must be >= 1");

  std::ostringstream out;
  out << param;
  for (auto k : photonic::kAllEventKinds) out << ',' << photonic::to_string(k);
  out << '\n';
  for (unsigned i = 0; i < steps; ++i) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
    photonic::EfficiencyConfig cfg = base;
    cfg.*(it->second) = from + (to - from) * t;
    try {
      cfg.validate();
    } catch (const qcore::Error& e) {
      throw ConfigError(e.what());
    }
    const auto dist = photonic::analytic_distribution(input, cfg);
    out << format12(cfg.*(it->second));
    for (double p : dist) out << ',' << format12(p);
    out << '\n';
  }
  return out.str();
}

}  // namespace bellcast::harness
