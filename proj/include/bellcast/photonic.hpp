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
#include <string_view>

#include "bellcast/qcore.hpp"
#include "bellcast/teleport.hpp"

/**
 * Photonic Bell analyzer built from two-photon absorption stages.
 *
 * Modes k1, k2, k3 are qubits 0, 1, 2. |R> is basis index 0 and |L> index 1.
 * k1 carries the photon to teleport, (k2, k3) the down-converted pair; k3
 * goes to Bob.
 *
 * The cascade: stage C absorbs the (k1,k2) pair only in the zero-spin state
 * chi-, a half-wave plate on k2 then permutes the remaining Bell analogs,
 * stage E repeats C, and stage F (Zeeman configuration) absorbs only the
 * Sz = 0 state chi+. A pair that survives F reaches both D3 detectors.
 */
namespace bellcast::photonic {

using qcore::Operator;
using qcore::StateVector;
using teleport::UnknownState;

/// Two-photon polarization Bell analogs:
///   chi+- = (|RL> +- |LR>)/sqrt2,  gamma+- = (|RR> +- |LL>)/sqrt2.
enum class PhotonBell { ChiPlus, ChiMinus, GammaPlus, GammaMinus };

inline constexpr std::array<PhotonBell, 4> kAllPhotonBells = {PhotonBell::ChiPlus, PhotonBell::ChiMinus,
                                                              PhotonBell::GammaPlus, PhotonBell::GammaMinus};

std::string_view to_string(PhotonBell b);
StateVector photon_bell_state(PhotonBell b);

/// chi <-> Psi and gamma <-> Phi under R = up, L = down.
observables::BellLabel spin_analog(PhotonBell b);

enum class EventKind { D1, D2, D4, D3Coincidence, D3SingleTop, D3SingleLower, NoEvent };

inline constexpr std::array<EventKind, 7> kAllEventKinds = {
    EventKind::D1,          EventKind::D2,            EventKind::D4,     EventKind::D3Coincidence,
    EventKind::D3SingleTop, EventKind::D3SingleLower, EventKind::NoEvent};

/// Wire names: "D1", "D2", "D4", "D3C", "D3ST", "D3SL", "NONE".
std::string_view to_string(EventKind k);
std::optional<EventKind> event_kind_from_string(std::string_view name);

/// Whether the event pins down the (k1,k2) Bell state.
bool is_identifying(EventKind k);

/// The pair state (in the labeling before any cascade wave plate) that an
/// identifying event selects: D1 chi-, D2 gamma+, D4 gamma-, D3C chi+.
std::optional<PhotonBell> original_bell(EventKind k);

enum class Stage { C, E, F };
std::string_view to_string(Stage s);

struct CascadeEvent {
  EventKind kind = EventKind::NoEvent;
  std::optional<Stage> stage;
  std::optional<PhotonBell> original;
};

struct EfficiencyConfig {
  double eta_abs = 1.0;  // two-photon absorption probability for a resonant pair
  double eta_det = 1.0;  // probability that a fired event is registered
  double p_in = 1.0;     // input photon present in the trial window
  double p_pdc = 1.0;    // down-converted pair present in the trial window

  /// Throws qcore::Error naming the first parameter outside [0, 1].
  void validate() const;
  bool ideal() const { return eta_abs == 1.0 && eta_det == 1.0 && p_in == 1.0 && p_pdc == 1.0; }
};

struct CascadeRecord {
  UnknownState input;
  CascadeEvent event;
  // Present only for identifying events. bob_pre is the dominant eigenvector
  // of Bob's reduced state (exact when that state is pure).
  std::optional<StateVector> bob_pre;
  std::optional<StateVector> bob_post;
  // <phi| U rho_bob U^dagger |phi>, which equals |<phi|bob_post>|^2 when
  // Bob's state is pure.
  std::optional<double> fidelity_value;
  std::uint64_t rng_seed = 0;
};

/// Down-converted pair on (k2, k3): (|RR> - |LL>)/sqrt2.
StateVector pdc_state();

/// Half-wave plate: |R> -> |L>, |L> -> -|R>.
Operator waveplate_operator();

/// Applies the wave plate to `mode` of `s`.
StateVector waveplate(const StateVector& s, std::size_t mode);

/// |phi>_{k1} (x) (pdc state with the k2 wave plate applied) = |phi> (x) chi+_{k2,k3}.
StateVector build_three_mode(const UnknownState& input);

/// <b|_{k1,k2} s: Bob's unnormalized conditional branch.
qcore::Vector bob_branch(const StateVector& s, PhotonBell b);

struct StageResult {
  bool absorbed = false;
  double absorb_probability = 0.0;
  StateVector post;
};

/// Two-photon absorption on (k1, k2) selecting `target`.
///
/// Absorbs with probability eta_abs * |<target|s>|^2 when rng_sample falls
/// below it; the post state is then the target-projected state. Otherwise the
/// pair passes with Kraus operator (1 - P) + sqrt(1 - eta_abs) P, so an ideal
/// stage removes the target component entirely and a lossy one attenuates it.
StageResult absorption_stage(const StateVector& s, double eta_abs, double rng_sample,
                             PhotonBell target = PhotonBell::ChiMinus);

struct StageFResult {
  EventKind kind;  // D4 or D3Coincidence
  StateVector post;
};

/// Zeeman stage: absorbs only chi+ (Sz = 0) -> D4; a surviving pair exits to
/// both D3 detectors -> D3Coincidence.
StageFResult stage_F(const StateVector& s, double eta_abs, double rng_sample);

/// Bob's correction for the state an identifying event selected (original
/// labeling): chi+ -> I, chi- -> diag(1,-1), gamma+ -> swap R/L,
/// gamma- -> (|L> -> |R>, |R> -> -|L>).
Operator correction_for_photonic(PhotonBell original);

/// One trial driven by TrialRng(rng_seed).
CascadeRecord run_cascade(const UnknownState& input, const EfficiencyConfig& cfg, std::uint64_t rng_seed);

/// Probability of each EventKind (kAllEventKinds order).
using EventDistribution = std::array<double, 7>;

/// Exact event probabilities by propagating the unnormalized state through
/// the stage chain.
EventDistribution analytic_distribution(const UnknownState& input, const EfficiencyConfig& cfg);

/// |<b|_{k1,k2} (three-mode state)|^2 for every Bell analog (kAllPhotonBells order).
std::array<double, 4> photon_bell_probabilities(const StateVector& three_mode);

}  // namespace bellcast::photonic
