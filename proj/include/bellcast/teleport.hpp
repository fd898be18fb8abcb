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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bellcast/observables.hpp"
#include "bellcast/qcore.hpp"
#include "bellcast/random.hpp"

/**
 * Spin-1/2 teleportation: Alice holds qubits 0 (the unknown particle) and 1
 * (her half of the singlet), Bob holds qubit 2.
 */
namespace bellcast::teleport {

using observables::BellLabel;
using observables::BellOutcome;
using qcore::Complex;
using qcore::Operator;
using qcore::StateVector;

/// a|up> + b|down> with |a|^2 + |b|^2 = 1.
class UnknownState {
 public:
  /// Throws qcore::Error unless |a|^2 + |b|^2 is 1 within 1e-12.
  UnknownState(Complex a, Complex b);

  /// Uniform on the Bloch sphere: a = cos(t/2), b = e^{i p} sin(t/2) with
  /// cos t uniform on [-1, 1] and p uniform on [0, 2 pi). Draws two samples.
  static UnknownState haar_random(TrialRng& rng);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  StateVector state() const { return StateVector{a_, b_}; }

 private:
  Complex a_, b_;
};

/// Two classical bits: PsiMinus=00, PsiPlus=01, PhiMinus=10, PhiPlus=11.
class ClassicalMessage {
 public:
  static ClassicalMessage encode(BellLabel label);
  /// Throws qcore::Error for bits > 3.
  static ClassicalMessage from_bits(std::uint8_t bits);

  BellLabel decode() const;
  std::uint8_t bits() const { return bits_; }
  /// "00", "01", "10" or "11".
  std::string to_string() const;

  friend bool operator==(const ClassicalMessage&, const ClassicalMessage&) = default;

 private:
  explicit ClassicalMessage(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_ = 0;
};

struct TrialRecord {
  UnknownState input;
  BellOutcome outcome;
  ClassicalMessage message;
  StateVector bob_pre;
  StateVector bob_post;
  double fidelity_value = 0.0;
  std::uint64_t rng_seed = 0;
  double outcome_probability = 0.0;
};

struct Eq4Branch {
  BellLabel label;
  StateVector bob_branch;
  double coefficient = 0.5;
};

/// (|ud> - |du>)/sqrt2.
StateVector prepare_singlet();

/// |phi>_0 (x) singlet_{1,2}.
StateVector three_particle_state(const UnknownState& input);

/// The four Bell-basis branches of |phi> (x) singlet, written in closed form:
///   Psi- : -a|u> - b|d>      Psi+ : -a|u> + b|d>
///   Phi- :  b|u> + a|d>      Phi+ : -b|u> + a|d>
/// each with coefficient 1/2.
std::vector<Eq4Branch> decompose_eq4(const UnknownState& input);

/// Pauli correction that maps Bob's branch back to the input up to phase:
/// Psi- -> I, Psi+ -> Z, Phi- -> X, Phi+ -> X Z.
Operator correction_for(BellLabel label);

/// Bob's qubit after Alice's measurement projected `post` onto `label`.
StateVector bob_state_after(const StateVector& post, BellLabel label);

/// One full protocol run driven by TrialRng(rng_seed).
TrialRecord run_trial(const UnknownState& input, std::uint64_t rng_seed);

/// Sum_k p_k |bob_k><bob_k| over the four branches, computed exactly.
qcore::DensityMatrix bob_average_density(const UnknownState& input);

struct SwapResult {
  BellOutcome outcome;
  double outcome_probability = 0.0;
  StateVector final_pair;  // qubits (0, 3)
  double fidelity_value = 0.0;
  std::uint64_t rng_seed = 0;
};

/// |singlet>_{01} (x) |singlet>_{23} as a 4-qubit state.
StateVector swap_initial_state();

/// Entanglement swapping: Bell-measure qubits (1, 2), correct qubit 3, report
/// the (0, 3) pair and its fidelity with the singlet.
SwapResult run_entangled_input(std::uint64_t rng_seed);

/// Outcome of the linear (interaction-free) analyzer on Alice's pair.
enum class ProductOutcome {
  UpUp,        // |uu>
  DownDown,    // |dd>
  Symmetric,   // antiparallel pair, symmetric part (not identified)
  Antisymmetric  // antiparallel pair, singlet part (identified)
};

std::string_view to_string(ProductOutcome o);

/// Projectors of the linear analyzer, ordered like ProductOutcome.
std::array<Operator, 4> baseline_projectors();

struct BaselineResult {
  bool success = false;
  ProductOutcome product;
  UnknownState input;
  StateVector bob_pre;
  StateVector bob_post;
  double fidelity_value = 0.0;
  std::uint64_t rng_seed = 0;
  double outcome_probability = 0.0;
};

/// Computational-basis baseline. Parallel outcomes collapse onto |uu>/|dd>;
/// the antiparallel subspace can only be split into its symmetric and
/// antisymmetric parts, and only the antisymmetric (singlet) outcome is
/// accepted. On success Bob applies the Psi- correction; otherwise his state
/// is recorded uncorrected.
BaselineResult run_baseline_computational(const UnknownState& input, std::uint64_t rng_seed);

/// Exact outcome probabilities of the baseline analyzer (ProductOutcome order).
std::array<double, 4> baseline_probabilities(const UnknownState& input);

}  // namespace bellcast::teleport
