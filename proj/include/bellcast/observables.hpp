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
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "bellcast/qcore.hpp"

/**
 * Two-particle spin observables and the Bell measurement they define.
 *
 * All spin quantities are in units with hbar = 1, so an eigenvalue of
 * 2 hbar^2 is the number 2.0.
 */
namespace bellcast::observables {

using qcore::Operator;
using qcore::StateVector;

enum class BellLabel { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

inline constexpr std::array<BellLabel, 4> kAllBellLabels = {BellLabel::PsiPlus, BellLabel::PsiMinus,
                                                            BellLabel::PhiPlus, BellLabel::PhiMinus};

std::string_view to_string(BellLabel label);
std::optional<BellLabel> bell_label_from_string(std::string_view name);

/// Joint eigenvalues of (Sz^2, Sx^2).
struct Signature {
  int sz_sq = 0;
  int sx_sq = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct BellOutcome {
  BellLabel label = BellLabel::PsiMinus;
  Signature signature;
  friend bool operator==(const BellOutcome&, const BellOutcome&) = default;
};

/// The fixed (Sz^2, Sx^2) signature of each Bell state.
Signature signature_of(BellLabel label);

/// Inverse of signature_of. Throws qcore::Error on a pair outside
/// {(0,1), (0,0), (1,1), (1,0)}.
BellLabel label_from_signature(Signature sig);

BellOutcome make_outcome(BellLabel label);

enum class Observable { STotalSq, SxSq, SySq, SzSq };

inline constexpr std::array<Observable, 4> kAllObservables = {Observable::STotalSq, Observable::SxSq,
                                                              Observable::SySq, Observable::SzSq};

std::string_view to_string(Observable o);

struct SpinObservableSet {
  Operator sx, sy, sz;
  Operator s_total_sq, sx_sq, sy_sq, sz_sq;

  const Operator& get(Observable o) const;
};

/// S_i = (sigma_i (x) I + I (x) sigma_i) / 2; squares by matrix product.
SpinObservableSet build_spin_observables();

/// Bell states with the sign convention
///   Psi+- = (|ud> +- |du>)/sqrt2,  Phi+- = (|uu> +- |dd>)/sqrt2.
StateVector bell_state(BellLabel label);

/// Per Bell state: eigenvalues of (S^2, Sx^2, Sy^2, Sz^2).
struct EigenTable {
  std::array<std::array<double, 4>, 4> rows{};  // indexed by BellLabel
  const std::array<double, 4>& row(BellLabel label) const {
    return rows[static_cast<std::size_t>(label)];
  }
};

/// The reference spectrum: Psi+ (2,1,1,0), Psi- (0,0,0,0), Phi+ (2,1,0,1),
/// Phi- (2,0,1,1).
EigenTable reference_eigen_table();

class TableViolation : public qcore::Error {
 public:
  using qcore::Error::Error;
};

/// Checks that every Bell state is an eigenvector of every observable
/// (residual below 1e-10) and returns the eigenvalues. Throws TableViolation.
EigenTable verify_eigen_table(const SpinObservableSet& obs);

/// True when every entry of `got` is within 1e-9 of `expected`.
bool tables_match(const EigenTable& got, const EigenTable& expected);

using ObservablePair = std::pair<Observable, Observable>;

/// The three minimal complete commuting pairs: (Sx^2,Sy^2), (Sy^2,Sz^2), (Sz^2,Sx^2).
std::vector<ObservablePair> minimal_pairs();

/// Joint eigenvalue pair of each Bell state under `pair`, read off `table`.
std::array<std::pair<double, double>, 4> pair_signatures(const EigenTable& table, ObservablePair pair);

/// Whether `pair` separates all four Bell states.
bool distinguishes_bell_states(const EigenTable& table, ObservablePair pair);

/// Rank-1 projectors |beta><beta| in kAllBellLabels order.
std::array<Operator, 4> bell_projectors();

/// Projector onto the eigenspace of `op` with eigenvalue `value` (hermitian op).
Operator eigenspace_projector(const Operator& op, double value);

/// Projectors onto the joint eigenspaces of (Sz^2, Sx^2), built from
/// spectral decomposition rather than from the Bell states. Ordered like
/// kAllBellLabels.
std::array<Operator, 4> joint_eigenspace_projectors(const SpinObservableSet& obs);

/// Largest entrywise difference between the two projector constructions.
double projector_route_discrepancy(const SpinObservableSet& obs);

struct BellMeasurement {
  BellOutcome outcome;
  double probability = 0.0;
  StateVector post_state;
};

/// Bell measurement on `alice_qubits`, identity elsewhere. The label is read
/// back from the post-measurement expectation values of (Sz^2, Sx^2).
BellMeasurement bell_measure(const StateVector& s, std::array<std::size_t, 2> alice_qubits,
                             double rng_sample);

/// Exact probability of each Bell outcome (kAllBellLabels order).
std::array<double, 4> bell_probabilities(const StateVector& s, std::array<std::size_t, 2> alice_qubits);

}  // namespace bellcast::observables
