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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "bellcast/harness.hpp"
#include "bellcast/random.hpp"

using namespace bellcast::harness;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("bellcast_test_" + std::to_string(::getpid()) + "_" + name);
}

void check_same(const BatchSummary& x, const BatchSummary& y) {
  CHECK(x.mode == y.mode);
  CHECK(x.trials == y.trials);
  REQUIRE(x.outcomes.size() == y.outcomes.size());
  for (std::size_t k = 0; k < x.outcomes.size(); ++k) {
    CHECK(x.outcomes[k].label == y.outcomes[k].label);
    CHECK(x.outcomes[k].count == y.outcomes[k].count);
    CHECK(x.outcomes[k].expected_probability == doctest::Approx(y.outcomes[k].expected_probability).epsilon(1e-12));
  }
  CHECK(x.mean_fidelity == y.mean_fidelity);
  CHECK(x.min_fidelity == y.min_fidelity);
  CHECK(x.success_rate == y.success_rate);
  CHECK(x.chi_square == doctest::Approx(y.chi_square).epsilon(1e-9));
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse_config("mode=photon\ntrials=1000");
  CHECK(c.mode == Mode::Photon);
  CHECK(c.trials == 1000);
  CHECK(c.master_seed == 42);
  CHECK(c.efficiency.ideal());
  CHECK_FALSE(c.fixed_input.has_value());

  CHECK_THROWS_WITH_AS(parse_config("eta_det=1.7"), doctest::Contains("eta_det"), ConfigError);

  const RunConfig f = parse_config("# comment\ninput=fixed:0.6,0.8\n\nthreads = 4\n");
  REQUIRE(f.fixed_input.has_value());
  CHECK(f.fixed_input->a().real() == doctest::Approx(0.6));
  CHECK(f.fixed_input->b().real() == doctest::Approx(0.8));
  CHECK(f.threads == 4);

  const RunConfig g = parse_config("input=fixed:0,0.6,0,0.8");
  CHECK(g.fixed_input->a().imag() == doctest::Approx(0.6));

  CHECK_THROWS_AS(parse_config("input=fixed:0.6,0.7"), ConfigError);
  CHECK_THROWS_AS(parse_config("mode=teleport"), ConfigError);
  CHECK_THROWS_AS(parse_config("trials=0"), ConfigError);
  CHECK_THROWS_AS(parse_config("trials=-3"), ConfigError);
  CHECK_THROWS_AS(parse_config("trials=ten"), ConfigError);
  CHECK_THROWS_AS(parse_config("colour=blue"), ConfigError);
  CHECK_THROWS_AS(parse_config("mode=spin\nmode=photon"), ConfigError);
  CHECK_THROWS_WITH(parse_config("mode=spin\nnonsense"), doctest::Contains("line 2"));
  CHECK_FALSE(parse_input_spec("haar-random").has_value());
}

TEST_CASE("twelve significant digits") {
  CHECK(format12(1.0 / 3.0) == "0.333333333333");
  CHECK(round12(1.0 / 3.0) == 0.333333333333);
  CHECK(round12(0.0) == 0.0);
  CHECK(format12(0.25) == "0.25");
}

TEST_CASE("spin batch statistics") {
  RunConfig cfg;
  cfg.trials = 10000;
  const BatchSummary s = run_batch(cfg);
  REQUIRE(s.min_fidelity.has_value());
  CHECK(*s.min_fidelity >= 1.0 - 1e-10);
  CHECK(s.success_rate == 1.0);
  for (const OutcomeStat& o : s.outcomes) {
    CHECK(std::abs(o.frequency - 0.25) < 0.02);
    CHECK(std::abs(o.expected_probability - 0.25) < 1e-12);
  }
}

TEST_CASE("baseline batch succeeds on a quarter of trials") {
  RunConfig cfg;
  cfg.mode = Mode::Baseline;
  const BatchSummary s = run_batch(cfg);
  CHECK(std::abs(s.success_rate - 0.25) < 0.02);
}

TEST_CASE("photon batch passes a chi-square test against the analytic table") {
  RunConfig cfg;
  cfg.mode = Mode::Photon;
  cfg.trials = 100000;
  cfg.threads = 4;
  const BatchSummary s = run_batch(cfg);
  CHECK(s.chi_square_dof == 3);
  CHECK(s.chi_square_p_value > 0.001);
  CHECK(*s.min_fidelity >= 1.0 - 1e-10);
}

TEST_CASE("lossy photon batch matches its table") {
  RunConfig cfg;
  cfg.mode = Mode::Photon;
  cfg.trials = 20000;
  cfg.efficiency.eta_abs = 0.5;
  cfg.efficiency.eta_det = 0.8;
  cfg.efficiency.p_in = 0.9;
  cfg.efficiency.p_pdc = 0.95;
  const BatchSummary s = run_batch(cfg);
  CHECK(s.chi_square_p_value > 0.001);
  for (const OutcomeStat& o : s.outcomes) {
    const double sd = std::sqrt(o.expected_probability * (1 - o.expected_probability) / 20000.0);
    CHECK(std::abs(o.frequency - o.expected_probability) < 5 * sd + 1e-12);
  }
}

TEST_CASE("output is reproducible and independent of the thread count") {
  const fs::path p1 = temp_file("a.jsonl");
  const fs::path p2 = temp_file("b.jsonl");
  const fs::path p3 = temp_file("c.jsonl");
  for (Mode m : {Mode::Spin, Mode::Photon, Mode::Baseline, Mode::Swap}) {
    RunConfig cfg;
    cfg.mode = m;
    cfg.trials = 500;
    cfg.master_seed = 1234;
    cfg.efficiency.eta_det = 0.7;
    cfg.output_path = p1.string();
    run_batch(cfg);
    cfg.output_path = p2.string();
    run_batch(cfg);
    cfg.output_path = p3.string();
    cfg.threads = 3;
    run_batch(cfg);
    const std::string first = slurp(p1);
    CHECK_FALSE(first.empty());
    CHECK(first == slurp(p2));
    CHECK(first == slurp(p3));
  }
  fs::remove(p1);
  fs::remove(p2);
  fs::remove(p3);
}

TEST_CASE("different seeds give different streams") {
  RunConfig a;
  RunConfig b;
  b.master_seed = 43;
  CHECK_FALSE(run_one(a, 0) == run_one(b, 0));
  CHECK(run_one(a, 7) == run_one(a, 7));
  CHECK(run_one(a, 7).seed == bellcast::derive_trial_seed(42, 7));
}

TEST_CASE("JSON lines round trip and re-summarize") {
  const fs::path p = temp_file("rt.jsonl");
  for (Mode m : {Mode::Spin, Mode::Photon, Mode::Baseline, Mode::Swap}) {
    RunConfig cfg;
    cfg.mode = m;
    cfg.trials = 300;
    cfg.output_path = p.string();
    std::vector<TrialRow> rows;
    const BatchSummary direct = run_batch(cfg, rows);
    std::ifstream in(p);
    const std::vector<TrialRow> back = read_rows(in);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(back[i] == rows[i]);
    check_same(summarize(back, m, cfg.efficiency), direct);
  }
  fs::remove(p);
}

TEST_CASE("JSON field order") {
  RunConfig cfg;
  cfg.mode = Mode::Photon;
  const std::string line = to_json(run_one(cfg, 0), Mode::Photon).dump();
  const std::vector<std::string> keys = {"trial", "seed", "outcome", "message_bits", "fidelity",
                                         "event", "a_re", "a_im", "b_re", "b_im"};
  std::size_t at = 0;
  for (const std::string& k : keys) {
    const std::size_t pos = line.find("\"" + k + "\"");
    REQUIRE(pos != std::string::npos);
    CHECK(pos >= at);
    at = pos;
  }
  CHECK(to_json(run_one(cfg, 0), Mode::Spin).dump().find("\"event\"") == std::string::npos);
}

TEST_CASE("summaries of trivial streams") {
  TrialRow row;
  row.outcome = "PsiMinus";
  row.message_bits = "00";
  row.fidelity = 1.0;
  row.a = 1.0;
  row.b = 0.0;
  const std::vector<TrialRow> one = {row};
  const BatchSummary s = summarize(one, Mode::Spin);
  CHECK(s.trials == 1);
  for (const OutcomeStat& o : s.outcomes) CHECK(o.count == (o.label == "PsiMinus" ? 1U : 0U));

  const std::vector<TrialRow> same(5, row);
  const BatchSummary t = summarize(same, Mode::Spin);
  CHECK(*t.mean_fidelity == 1.0);
  CHECK(*t.min_fidelity == 1.0);

  TrialRow bad = row;
  bad.outcome = "Psi?";
  const std::vector<TrialRow> odd = {bad};
  CHECK_THROWS(summarize(odd, Mode::Spin));
  CHECK_THROWS(summarize(std::vector<TrialRow>{}, Mode::Spin));
}

TEST_CASE("unwritable output is an error") {
  RunConfig cfg;
  cfg.trials = 10;
  cfg.output_path = "/nonexistent-dir/x.jsonl";
  CHECK_THROWS(run_batch(cfg));
}

TEST_CASE("efficiency sweep") {
  const std::string csv = sweep_efficiency(bellcast::photonic::EfficiencyConfig{}, "eta_det", 0.5, 1.0, 11,
                                           bellcast::teleport::UnknownState(1, 0));
  std::istringstream in(csv);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 12);
  CHECK(csv.find("eta_det") != std::string::npos);
  CHECK_THROWS(sweep_efficiency(bellcast::photonic::EfficiencyConfig{}, "gain", 0.5, 1.0, 3,
                                bellcast::teleport::UnknownState(1, 0)));
}
