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

#include "bellcast/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bellcast::teleport {

using qcore::Matrix;
using qcore::Vector;

namespace {

constexpr std::array<std::size_t, 2> kAlice = {0, 1};

}  // namespace

// ---------------------------------------------------------------------------
// UnknownState

UnknownState::UnknownState(Complex a, Complex b) : a_(a), b_(b) {
  const double norm_sq = std::norm(a) + std::norm(b);
  if (!std::isfinite(norm_sq) || std::abs(norm_sq - 1.0) > qcore::kAlgebraTol) {
    throw qcore::Error("unknown state is not normalized: |a|^2+|b|^2 = " + std::to_string(norm_sq));
  }
}

UnknownState UnknownState::haar_random(TrialRng& rng) {
  const double cos_theta = 2.0 * rng.uniform() - 1.0;
  const double phase = 2.0 * std::numbers::pi * rng.uniform();
  const double half = 0.5 * std::acos(std::clamp(cos_theta, -1.0, 1.0));
  const Complex a(std::cos(half), 0.0);
  const Complex b = std::polar(std::sin(half), phase);
  // cos^2 + sin^2 can drift from 1 by an ulp; renormalize before validating.
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return UnknownState(a / n, b / n);
}

// ---------------------------------------------------------------------------
// ClassicalMessage

ClassicalMessage ClassicalMessage::encode(BellLabel label) {
  switch (label) {
    case BellLabel::PsiMinus: return ClassicalMessage(0b00);
    case BellLabel::PsiPlus: return ClassicalMessage(0b01);
    case BellLabel::PhiMinus: return ClassicalMessage(0b10);
    case BellLabel::PhiPlus: return ClassicalMessage(0b11);
  }
  throw qcore::Error("unknown Bell label");
}

ClassicalMessage ClassicalMessage::from_bits(std::uint8_t bits) {
  if (bits > 0b11) throw qcore::Error("classical message has more than two bits");
  return ClassicalMessage(bits);
}

BellLabel ClassicalMessage::decode() const {
  static constexpr std::array<BellLabel, 4> kTable = {BellLabel::PsiMinus, BellLabel::PsiPlus,
                                                      BellLabel::PhiMinus, BellLabel::PhiPlus};
  return kTable[bits_];
}

std::string ClassicalMessage::to_string() const {
  return {static_cast<char>('0' + ((bits_ >> 1) & 1U)), static_cast<char>('0' + (bits_ & 1U))};
}

// ---------------------------------------------------------------------------
// Protocol

StateVector prepare_singlet() { return observables::bell_state(BellLabel::PsiMinus); }

StateVector three_particle_state(const UnknownState& input) {
  return qcore::tensor(input.state(), prepare_singlet());
}

std::vector<Eq4Branch> decompose_eq4(const UnknownState& input) {
  const Complex a = input.a();
  const Complex b = input.b();
  return {
      {BellLabel::PsiMinus, StateVector{-a, -b}, 0.5},
      {BellLabel::PsiPlus, StateVector{-a, b}, 0.5},
      {BellLabel::PhiMinus, StateVector{b, a}, 0.5},
      {BellLabel::PhiPlus, StateVector{-b, a}, 0.5},
  };
}

Operator correction_for(BellLabel label) {
  switch (label) {
    case BellLabel::PsiMinus: return Operator::identity(1);
    case BellLabel::PsiPlus: return qcore::gates::pauli_z();
    case BellLabel::PhiMinus: return qcore::gates::pauli_x();
    case BellLabel::PhiPlus: return qcore::gates::pauli_x() * qcore::gates::pauli_z();
  }
  throw qcore::Error("unknown Bell label");
}

StateVector bob_state_after(const StateVector& post, BellLabel label) {
  return StateVector(qcore::contract(post, kAlice, observables::bell_state(label)));
}

TrialRecord run_trial(const UnknownState& input, std::uint64_t rng_seed) {
  TrialRng rng(rng_seed);
  const StateVector xi = three_particle_state(input);
  observables::BellMeasurement m = observables::bell_measure(xi, kAlice, rng.uniform());
  const ClassicalMessage message = ClassicalMessage::encode(m.outcome.label);

  // Bob only sees the two bits.
  StateVector bob_pre = bob_state_after(m.post_state, m.outcome.label);
  const std::array<std::size_t, 1> bob_only = {0};
  StateVector bob_post = qcore::apply(correction_for(message.decode()), bob_pre, bob_only);
  const double f = qcore::fidelity(bob_post, input.state());
  return TrialRecord{input,  m.outcome, message, std::move(bob_pre), std::move(bob_post),
                     f,      rng_seed,  m.probability};
}

qcore::DensityMatrix bob_average_density(const UnknownState& input) {
  const StateVector xi = three_particle_state(input);
  Matrix rho = Matrix::Zero(2, 2);
  for (BellLabel l : observables::kAllBellLabels) {
    const Vector unnormalized = qcore::contract(xi, kAlice, observables::bell_state(l));
    rho += unnormalized * unnormalized.adjoint();
  }
  return qcore::DensityMatrix(std::move(rho));
}

// ---------------------------------------------------------------------------
// Entanglement swapping

StateVector swap_initial_state() { return qcore::tensor(prepare_singlet(), prepare_singlet()); }

SwapResult run_entangled_input(std::uint64_t rng_seed) {
  TrialRng rng(rng_seed);
  constexpr std::array<std::size_t, 2> middle = {1, 2};
  constexpr std::array<std::size_t, 1> far = {3};
  observables::BellMeasurement m = observables::bell_measure(swap_initial_state(), middle, rng.uniform());
  const StateVector corrected = qcore::apply(correction_for(m.outcome.label), m.post_state, far);
  StateVector pair(qcore::contract(corrected, middle, observables::bell_state(m.outcome.label)));
  const double f = qcore::fidelity(pair, prepare_singlet());
  return SwapResult{m.outcome, m.probability, std::move(pair), f, rng_seed};
}

// ---------------------------------------------------------------------------
// Computational-basis baseline

std::string_view to_string(ProductOutcome o) {
  switch (o) {
    case ProductOutcome::UpUp: return "sigma++";
    case ProductOutcome::DownDown: return "sigma--";
    case ProductOutcome::Symmetric: return "antiparallel-symmetric";
    case ProductOutcome::Antisymmetric: return "antiparallel-singlet";
  }
  return "?";
}

std::array<Operator, 4> baseline_projectors() {
  auto proj = [](const StateVector& s) {
    return Operator(s.amplitudes() * s.amplitudes().adjoint(), true);
  };
  return {proj(StateVector::basis(2, 0b00)), proj(StateVector::basis(2, 0b11)),
          proj(observables::bell_state(BellLabel::PsiPlus)),
          proj(observables::bell_state(BellLabel::PsiMinus))};
}

namespace {

std::vector<Operator> embedded_baseline_projectors() {
  std::vector<Operator> out;
  for (const Operator& p : baseline_projectors()) out.emplace_back(qcore::embed(p, kAlice, 3), true);
  return out;
}

}  // namespace

std::array<double, 4> baseline_probabilities(const UnknownState& input) {
  const auto p = qcore::outcome_probabilities(three_particle_state(input), embedded_baseline_projectors());
  return {p[0], p[1], p[2], p[3]};
}

BaselineResult run_baseline_computational(const UnknownState& input, std::uint64_t rng_seed) {
  TrialRng rng(rng_seed);
  const auto projectors = embedded_baseline_projectors();
  qcore::MeasurementResult m = qcore::measure_projective(three_particle_state(input), projectors, rng.uniform());
  const auto product = static_cast<ProductOutcome>(m.outcome_index);

  // Every analyzer outcome leaves Alice's pair in a known pure state.
  static const std::array<StateVector, 4> kAlicePost = {
      StateVector::basis(2, 0b00), StateVector::basis(2, 0b11),
      observables::bell_state(BellLabel::PsiPlus), observables::bell_state(BellLabel::PsiMinus)};
  StateVector bob_pre(qcore::contract(m.post_state, kAlice, kAlicePost[m.outcome_index]));

  const bool success = product == ProductOutcome::Antisymmetric;
  const std::array<std::size_t, 1> bob_only = {0};
  StateVector bob_post =
      success ? qcore::apply(correction_for(BellLabel::PsiMinus), bob_pre, bob_only) : bob_pre;
  const double f = qcore::fidelity(bob_post, input.state());
  return BaselineResult{success,  product,        input, std::move(bob_pre), std::move(bob_post), f,
                        rng_seed, m.probability};
}

}  // namespace bellcast::teleport
