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

#include "bellcast/photonic.hpp"

#include <cmath>
#include <string>

namespace bellcast::photonic {

using qcore::Complex;
using qcore::Matrix;
using qcore::Vector;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr std::array<std::size_t, 2> kPair = {0, 1};
constexpr std::size_t kModeK2 = 1;

std::size_t event_index(EventKind k) { return static_cast<std::size_t>(k); }

Matrix pair_projector(PhotonBell b) {
  const Vector v = photon_bell_state(b).amplitudes();
  return qcore::embed(Operator(v * v.adjoint(), true), kPair, 3);
}

// Kraus operator for a pair that was not absorbed.
Matrix pass_operator(const Matrix& projector, double eta_abs) {
  const Matrix id = Matrix::Identity(projector.rows(), projector.cols());
  return (id - projector) + std::sqrt(1.0 - eta_abs) * projector;
}

void check_sample(double u) {
  if (!(u >= 0.0 && u < 1.0)) throw qcore::Error("rng_sample outside [0, 1)");
}

}  // namespace

std::string_view to_string(PhotonBell b) {
  switch (b) {
    case PhotonBell::ChiPlus: return "chi+";
    case PhotonBell::ChiMinus: return "chi-";
    case PhotonBell::GammaPlus: return "gamma+";
    case PhotonBell::GammaMinus: return "gamma-";
  }
  return "?";
}

StateVector photon_bell_state(PhotonBell b) {
  const double h = kInvSqrt2;
  switch (b) {
    case PhotonBell::ChiPlus: return StateVector{0.0, h, h, 0.0};
    case PhotonBell::ChiMinus: return StateVector{0.0, h, -h, 0.0};
    case PhotonBell::GammaPlus: return StateVector{h, 0.0, 0.0, h};
    case PhotonBell::GammaMinus: return StateVector{h, 0.0, 0.0, -h};
  }
  throw qcore::Error("unknown photon Bell state");
}

observables::BellLabel spin_analog(PhotonBell b) {
  using observables::BellLabel;
  switch (b) {
    case PhotonBell::ChiPlus: return BellLabel::PsiPlus;
    case PhotonBell::ChiMinus: return BellLabel::PsiMinus;
    case PhotonBell::GammaPlus: return BellLabel::PhiPlus;
    case PhotonBell::GammaMinus: return BellLabel::PhiMinus;
  }
  throw qcore::Error("unknown photon Bell state");
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::D1: return "D1";
    case EventKind::D2: return "D2";
    case EventKind::D4: return "D4";
    case EventKind::D3Coincidence: return "D3C";
    case EventKind::D3SingleTop: return "D3ST";
    case EventKind::D3SingleLower: return "D3SL";
    case EventKind::NoEvent: return "NONE";
  }
  return "?";
}

std::optional<EventKind> event_kind_from_string(std::string_view name) {
  for (EventKind k : kAllEventKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

bool is_identifying(EventKind k) { return original_bell(k).has_value(); }

std::optional<PhotonBell> original_bell(EventKind k) {
  switch (k) {
    case EventKind::D1: return PhotonBell::ChiMinus;
    case EventKind::D2: return PhotonBell::GammaPlus;
    case EventKind::D4: return PhotonBell::GammaMinus;
    case EventKind::D3Coincidence: return PhotonBell::ChiPlus;
    default: return std::nullopt;
  }
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::C: return "C";
    case Stage::E: return "E";
    case Stage::F: return "F";
  }
  return "?";
}

void EfficiencyConfig::validate() const {
  auto check = [](const char* name, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw qcore::Error(std::string(name) + " = " + std::to_string(v) + " is outside [0, 1]");
    }
  };
  check("eta_abs", eta_abs);
  check("eta_det", eta_det);
  check("p_in", p_in);
  check("p_pdc", p_pdc);
}

StateVector pdc_state() { return photon_bell_state(PhotonBell::GammaMinus); }

Operator waveplate_operator() { return Operator({{0.0, -1.0}, {1.0, 0.0}}); }

StateVector waveplate(const StateVector& s, std::size_t mode) {
  const std::array<std::size_t, 1> target = {mode};
  return qcore::apply(waveplate_operator(), s, target);
}

StateVector build_three_mode(const UnknownState& input) {
  const StateVector pair = waveplate(pdc_state(), 0);  // k2 is the first mode of the pair
  return qcore::tensor(input.state(), pair);
}

Vector bob_branch(const StateVector& s, PhotonBell b) {
  return qcore::contract(s, kPair, photon_bell_state(b));
}

std::array<double, 4> photon_bell_probabilities(const StateVector& three_mode) {
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < kAllPhotonBells.size(); ++i) {
    out[i] = bob_branch(three_mode, kAllPhotonBells[i]).squaredNorm();
  }
  return out;
}

StageResult absorption_stage(const StateVector& s, double eta_abs, double rng_sample, PhotonBell target) {
  check_sample(rng_sample);
  if (!(eta_abs >= 0.0 && eta_abs <= 1.0)) throw qcore::Error("eta_abs outside [0, 1]");
  if (s.n_qubits() != 3) throw qcore::DimensionError("absorption stage expects three modes");
  const Matrix p = pair_projector(target);
  const Vector projected = p * s.amplitudes();
  const double weight = projected.squaredNorm();
  const double absorb = eta_abs * weight;
  if (rng_sample < absorb) return StageResult{true, absorb, StateVector(projected)};
  if (absorb == 0.0) return StageResult{false, absorb, s};
  return StageResult{false, absorb, StateVector(Vector(pass_operator(p, eta_abs) * s.amplitudes()))};
}

StageFResult stage_F(const StateVector& s, double eta_abs, double rng_sample) {
  StageResult r = absorption_stage(s, eta_abs, rng_sample, PhotonBell::ChiPlus);
  return StageFResult{r.absorbed ? EventKind::D4 : EventKind::D3Coincidence, std::move(r.post)};
}

Operator correction_for_photonic(PhotonBell original) {
  switch (original) {
    case PhotonBell::ChiPlus: return Operator::identity(1);
    case PhotonBell::ChiMinus: return qcore::gates::pauli_z();
    case PhotonBell::GammaPlus: return qcore::gates::pauli_x();
    case PhotonBell::GammaMinus: return Operator({{0.0, 1.0}, {-1.0, 0.0}});
  }
  throw qcore::Error("unknown photon Bell state");
}

namespace {

struct BobReadout {
  StateVector pre;
  StateVector post;
  double fidelity;
};

BobReadout read_bob(const StateVector& post_pair, PhotonBell original, const UnknownState& input) {
  const std::array<std::size_t, 1> bob = {2};
  const qcore::DensityMatrix rho = qcore::partial_trace(post_pair, bob);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
  StateVector pre = StateVector(Vector(solver.eigenvectors().col(1))).canonical();
  const Operator u = correction_for_photonic(original);
  const std::array<std::size_t, 1> only = {0};
  StateVector post = qcore::apply(u, pre, only);
  const Vector phi = input.state().amplitudes();
  const Vector u_dag_phi = u.matrix().adjoint() * phi;
  const double f = std::clamp(u_dag_phi.dot(rho.matrix() * u_dag_phi).real(), 0.0, 1.0);
  return BobReadout{std::move(pre), std::move(post), f};
}

}  // namespace

CascadeRecord run_cascade(const UnknownState& input, const EfficiencyConfig& cfg, std::uint64_t rng_seed) {
  cfg.validate();
  TrialRng rng(rng_seed);
  CascadeRecord rec{input, CascadeEvent{}, std::nullopt, std::nullopt, std::nullopt, rng_seed};

  const bool have_input = rng.uniform() < cfg.p_in;
  const bool have_pair = rng.uniform() < cfg.p_pdc;
  if (!have_input || !have_pair) {
    // A lone photon traverses the cascade untouched and reaches its D3.
    if (have_input) rec.event = {EventKind::D3SingleTop, Stage::F, std::nullopt};
    if (have_pair) rec.event = {EventKind::D3SingleLower, Stage::F, std::nullopt};
    if (rec.event.kind != EventKind::NoEvent && !(rng.uniform() < cfg.eta_det)) rec.event = CascadeEvent{};
    return rec;
  }

  StateVector s = build_three_mode(input);
  StateVector final_state = s;
  StageResult c = absorption_stage(s, cfg.eta_abs, rng.uniform());
  if (c.absorbed) {
    rec.event = {EventKind::D1, Stage::C, PhotonBell::ChiMinus};
    final_state = std::move(c.post);
  } else {
    StageResult e = absorption_stage(waveplate(c.post, kModeK2), cfg.eta_abs, rng.uniform());
    if (e.absorbed) {
      rec.event = {EventKind::D2, Stage::E, PhotonBell::GammaPlus};
      final_state = std::move(e.post);
    } else {
      StageFResult f = stage_F(e.post, cfg.eta_abs, rng.uniform());
      rec.event = {f.kind, Stage::F, original_bell(f.kind)};
      final_state = std::move(f.post);
    }
  }

  if (!(rng.uniform() < cfg.eta_det)) {
    rec.event = CascadeEvent{};
    return rec;
  }
  BobReadout bob = read_bob(final_state, *rec.event.original, input);
  rec.bob_pre = std::move(bob.pre);
  rec.bob_post = std::move(bob.post);
  rec.fidelity_value = bob.fidelity;
  return rec;
}

EventDistribution analytic_distribution(const UnknownState& input, const EfficiencyConfig& cfg) {
  cfg.validate();
  EventDistribution dist{};
  const double both = cfg.p_in * cfg.p_pdc;
  const double det = cfg.eta_det;

  // Both photons present: follow the unnormalized surviving amplitude.
  Vector v = build_three_mode(input).amplitudes();
  const Matrix chi_minus = pair_projector(PhotonBell::ChiMinus);
  const Matrix chi_plus = pair_projector(PhotonBell::ChiPlus);
  const Matrix plate = qcore::embed(waveplate_operator(), std::array<std::size_t, 1>{kModeK2}, 3);

  const double p_c = cfg.eta_abs * (chi_minus * v).squaredNorm();
  v = pass_operator(chi_minus, cfg.eta_abs) * v;
  v = plate * v;
  const double p_e = cfg.eta_abs * (chi_minus * v).squaredNorm();
  v = pass_operator(chi_minus, cfg.eta_abs) * v;
  const double p_f = cfg.eta_abs * (chi_plus * v).squaredNorm();
  v = pass_operator(chi_plus, cfg.eta_abs) * v;
  const double p_coinc = v.squaredNorm();

  dist[event_index(EventKind::D1)] = both * p_c * det;
  dist[event_index(EventKind::D2)] = both * p_e * det;
  dist[event_index(EventKind::D4)] = both * p_f * det;
  dist[event_index(EventKind::D3Coincidence)] = both * p_coinc * det;
  dist[event_index(EventKind::D3SingleTop)] = cfg.p_in * (1.0 - cfg.p_pdc) * det;
  dist[event_index(EventKind::D3SingleLower)] = (1.0 - cfg.p_in) * cfg.p_pdc * det;

  const double would_fire = both * (p_c + p_e + p_f + p_coinc) + cfg.p_in * (1.0 - cfg.p_pdc) +
                            (1.0 - cfg.p_in) * cfg.p_pdc;
  dist[event_index(EventKind::NoEvent)] = (1.0 - cfg.p_in) * (1.0 - cfg.p_pdc) + (1.0 - det) * would_fire;
  return dist;
}

}  // namespace bellcast::photonic
