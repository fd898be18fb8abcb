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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellcast/config.hpp"

/**
 * Monte Carlo batches over the four protocols.
 *
 * Every trial gets seed derive_trial_seed(master_seed, index) and is
 * independent of all others, so batches may be split across threads; records
 * are always emitted in trial order.
 */
namespace bellcast::harness {

/// One JSON-lines record. Optional fields serialize as null.
///
/// Field order on the wire: trial, seed, outcome, message_bits, fidelity,
/// event (photon mode only), a_re, a_im, b_re, b_im. Reals are rounded to 12
/// significant digits when the record is built.
struct TrialRow {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> outcome;
  std::optional<std::string> message_bits;
  std::optional<double> fidelity;
  std::optional<std::string> event;
  std::optional<qcore::Complex> a;
  std::optional<qcore::Complex> b;

  friend bool operator==(const TrialRow&, const TrialRow&) = default;
};

/// Rounds to 12 significant digits (the precision of all numeric output).
double round12(double x);

/// printf("%.12g").
std::string format12(double x);

TrialRow run_one(const RunConfig& cfg, std::uint64_t trial_index);

nlohmann::ordered_json to_json(const TrialRow& row, Mode mode);
TrialRow row_from_json(const nlohmann::json& j);

/// Reads a JSON-lines stream; throws qcore::Error with the line number on a
/// malformed record.
std::vector<TrialRow> read_rows(std::istream& in);

struct OutcomeStat {
  std::string label;
  std::uint64_t count = 0;
  double frequency = 0.0;
  double expected_probability = 0.0;
};

struct BatchSummary {
  Mode mode = Mode::Spin;
  std::uint64_t trials = 0;
  std::vector<OutcomeStat> outcomes;
  std::optional<double> mean_fidelity;  // over records that carry a fidelity
  std::optional<double> min_fidelity;
  double success_rate = 0.0;
  double chi_square = 0.0;
  int chi_square_dof = 0;
  double chi_square_p_value = 1.0;
  double duration_seconds = 0.0;
};

/// A trial counts as a success when Bob holds the input state after
/// correction: fidelity >= 1 - 1e-10 for spin/swap/photon; the singlet
/// outcome for the baseline.
inline constexpr double kSuccessFidelity = 1.0 - 1e-10;

/// Aggregates rows. The expected distribution for the chi-square is the
/// analytic one of each row's input (photon mode uses `efficiency`). Throws
/// qcore::Error on an empty span.
BatchSummary summarize(std::span<const TrialRow> rows, Mode mode,
                       const photonic::EfficiencyConfig& efficiency = {});

/// Runs the batch, writes JSON lines to cfg.output_path when set, and returns
/// the summary. Throws qcore::Error when the output cannot be written.
BatchSummary run_batch(const RunConfig& cfg);

/// Same as run_batch but also hands back the rows.
BatchSummary run_batch(const RunConfig& cfg, std::vector<TrialRow>& rows_out);

nlohmann::ordered_json to_json(const BatchSummary& s);

/// One row per outcome: outcome,count,frequency,expected_probability.
std::string summary_csv(const BatchSummary& s);

/// Analytic event probabilities while one efficiency parameter moves
/// linearly from `from` to `to` in `steps` points. Returns CSV with header
/// `<param>,D1,D2,D4,D3C,D3ST,D3SL,NONE`.
std::string sweep_efficiency(const photonic::EfficiencyConfig& base, const std::string& param, double from,
                             double to, unsigned steps, const teleport::UnknownState& input);

}  // namespace bellcast::harness
