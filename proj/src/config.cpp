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

#include "bellcast/config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <vector>

namespace bellcast::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_probability(std::string_view key, std::string_view value) {
  const double v = parse_real(key, value);
  if (v < 0.0 || v > 1.0) {
    throw ConfigError(std::string(key) + "=" + std::string(value) + " is out of range [0, 1]");
  }
  return v;
}

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Spin: return "spin";
    case Mode::Photon: return "photon";
    case Mode::Baseline: return "baseline";
    case Mode::Swap: return "swap";
  }
  return "?";
}

std::optional<Mode> mode_from_string(std::string_view name) {
  for (Mode m : {Mode::Spin, Mode::Photon, Mode::Baseline, Mode::Swap}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

void RunConfig::validate() const {
  if (trials == 0) throw ConfigError("trials must be >= 1");
  if (threads == 0) throw ConfigError("threads must be >= 1");
  try {
    efficiency.validate();
  } catch (const qcore::Error& e) {
    throw ConfigError(e.what());
  }
}

double parse_real(std::string_view key, std::string_view value) {
  double v = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (value.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("malformed number for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (value.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("malformed integer for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return v;
}

std::optional<teleport::UnknownState> parse_input_spec(std::string_view value) {
  if (value == "haar-random") return std::nullopt;
  constexpr std::string_view prefix = "fixed:";
  if (!value.starts_with(prefix)) {
    throw ConfigError("input must be 'haar-random' or 'fixed:...', got '" + std::string(value) + "'");
  }
  const auto parts = split(value.substr(prefix.size()), ',');
  std::vector<double> nums;
  for (std::string_view p : parts) nums.push_back(parse_real("input", p));
  qcore::Complex a, b;
  if (nums.size() == 2) {
    a = nums[0];
    b = nums[1];
  } else if (nums.size() == 4) {
    a = {nums[0], nums[1]};
    b = {nums[2], nums[3]};
  } else {
    throw ConfigError("input=fixed expects 2 (real) or 4 (complex) numbers");
  }
  try {
    return teleport::UnknownState(a, b);
  } catch (const qcore::Error& e) {
    throw ConfigError(std::string("input: ") + e.what());
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    try {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ConfigError("expected key=value, got '" + std::string(line) + "'");
      const std::string_view key = trim(line.substr(0, eq));
      const std::string_view value = trim(line.substr(eq + 1));
      if (!seen.insert(std::string(key)).second) throw ConfigError("duplicate key " + std::string(key));

      if (key == "mode") {
        const auto m = mode_from_string(value);
        if (!m) throw ConfigError("unknown mode '" + std::string(value) + "'");
        cfg.mode = *m;
      } else if (key == "trials") {
        cfg.trials = parse_unsigned(key, value);
        if (cfg.trials == 0) throw ConfigError("trials must be >= 1");
      } else if (key == "master_seed") {
        cfg.master_seed = parse_unsigned(key, value);
      } else if (key == "eta_abs") {
        cfg.efficiency.eta_abs = parse_probability(key, value);
      } else if (key == "eta_det") {
        cfg.efficiency.eta_det = parse_probability(key, value);
      } else if (key == "p_in") {
        cfg.efficiency.p_in = parse_probability(key, value);
      } else if (key == "p_pdc") {
        cfg.efficiency.p_pdc = parse_probability(key, value);
      } else if (key == "input") {
        cfg.fixed_input = parse_input_spec(value);
      } else if (key == "output") {
        cfg.output_path = std::string(value);
      } else if (key == "threads") {
        const auto t = parse_unsigned(key, value);
        if (t == 0 || t > 1024) throw ConfigError("threads must be in [1, 1024]");
        cfg.threads = static_cast<unsigned>(t);
      } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

}  // namespace bellcast::harness
