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
#include <optional>
#include <string>
#include <string_view>

#include "bellcast/photonic.hpp"
#include "bellcast/qcore.hpp"
#include "bellcast/teleport.hpp"

namespace bellcast::harness {

enum class Mode { Spin, Photon, Baseline, Swap };

std::string_view to_string(Mode m);
std::optional<Mode> mode_from_string(std::string_view name);

/// Batch configuration.
///
/// Text form: one `key=value` per line, `#` starts a comment, blank lines are
/// ignored. Keys: mode (spin|photon|baseline|swap), trials, master_seed,
/// eta_abs, eta_det, p_in, p_pdc, input (haar-random | fixed:a,b |
/// fixed:a_re,a_im,b_re,b_im), output, threads.
struct RunConfig {
  Mode mode = Mode::Spin;
  std::uint64_t trials = 10000;
  std::uint64_t master_seed = 42;
  photonic::EfficiencyConfig efficiency;
  std::optional<teleport::UnknownState> fixed_input;  // empty: Haar-random per trial
  std::string output_path;                             // empty: no JSON-lines file
  unsigned threads = 1;

  /// Throws ConfigError on trials == 0, threads == 0 or an efficiency
  /// outside [0, 1].
  void validate() const;
};

class ConfigError : public qcore::Error {
 public:
  using qcore::Error::Error;
};

/// Parses the key=value format. Errors carry "line N: " prefixes and name the
/// offending key.
RunConfig parse_config(std::string_view text);

/// Parses the value of an `input=` line ("haar-random" or "fixed:...").
std::optional<teleport::UnknownState> parse_input_spec(std::string_view value);

/// Strict number parsing shared with the CLI; throws ConfigError.
double parse_real(std::string_view key, std::string_view value);
std::uint64_t parse_unsigned(std::string_view key, std::string_view value);

}  // namespace bellcast::harness
