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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

/**
 * Exact dense linear algebra for small (1-4 qubit) registers.
 *
 * Qubit 0 is the leftmost tensor factor: basis index i has qubit k in state
 * (i >> (n - 1 - k)) & 1. |up> (or |R>) is (1,0), |down> (or |L>) is (0,1).
 */
namespace bellcast::qcore {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Tolerance for algebraic identities (norms, commutators, reconstruction).
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for eigenvalue, idempotence and PSD checks.
inline constexpr double kSpectralTol = 1e-10;
/// Two eigenvalues are considered equal within this distance.
inline constexpr double kEigenMatchTol = 1e-9;
/// Below this every outcome is treated as impossible.
inline constexpr double kDegenerateProb = 1e-15;

/// Base class for all errors raised by the simulator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class MeasurementError : public Error {
 public:
  using Error::Error;
};

/// Normalized amplitude vector over n qubits.
class StateVector {
 public:
  /// Builds a state from raw amplitudes; normalizes. Throws on a length that
  /// is not a power of two, non-finite entries, or a zero vector.
  explicit StateVector(Vector amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes);

  /// Computational basis state |index> on n qubits.
  static StateVector basis(std::size_t n_qubits, std::size_t index);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  /// Global-phase canonical form: first amplitude above 1e-12 in modulus is
  /// made real and positive.
  StateVector canonical() const;

 private:
  std::size_t n_qubits_ = 0;
  Vector amps_;
};

/// Square matrix acting on k qubits.
class Operator {
 public:
  explicit Operator(Matrix entries, bool hermitian_hint = false);
  Operator(std::initializer_list<std::initializer_list<Complex>> rows,
           bool hermitian_hint = false);

  static Operator identity(std::size_t n_qubits);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t n_qubits() const { return n_qubits_; }
  const Matrix& matrix() const { return m_; }
  bool hermitian_hint() const { return hermitian_; }

  bool is_unitary(double tol = kAlgebraTol) const;
  bool is_hermitian(double tol = kAlgebraTol) const;

  Operator adjoint() const { return Operator(m_.adjoint(), hermitian_); }

 private:
  std::size_t n_qubits_ = 0;
  Matrix m_;
  bool hermitian_ = false;
};

Operator operator*(const Operator& lhs, const Operator& rhs);
Operator operator+(const Operator& lhs, const Operator& rhs);
Operator operator-(const Operator& lhs, const Operator& rhs);
Operator operator*(Complex scale, const Operator& op);

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Validates the invariants; throws Error when any fails.
  explicit DensityMatrix(Matrix entries);

  static DensityMatrix pure(const StateVector& s);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  double min_eigenvalue() const;

 private:
  Matrix m_;
};

struct MeasurementResult {
  std::size_t outcome_index = 0;
  double probability = 0.0;
  StateVector post_state;
};

/// Largest absolute entry of a matrix (0 for an empty one).
double max_abs(const Matrix& m);

/// Kronecker product of two matrices with lhs as the leftmost factor.
Matrix kron(const Matrix& lhs, const Matrix& rhs);

/// |a> (x) |b>.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Full-space matrix of `op` acting on `targets` of an n-qubit register.
/// targets[j] receives the j-th (leftmost first) factor of `op`.
Matrix embed(const Operator& op, std::span<const std::size_t> targets, std::size_t n_qubits);

/// Applies `op` to `targets`, identity elsewhere. The result is renormalized;
/// throws DimensionError when op's size does not match the target count or an
/// index is invalid, and Error when op annihilates the state.
StateVector apply(const Operator& op, const StateVector& s, std::span<const std::size_t> targets);

/// Born-rule sampling over a complete projector set.
///
/// Outcome k is the first index whose cumulative probability strictly exceeds
/// `rng_sample`, so a sample exactly on a boundary resolves upward.
MeasurementResult measure_projective(const StateVector& s, std::span<const Operator> projectors,
                                     double rng_sample);

/// <s|P|s> for every projector, without sampling or validation.
std::vector<double> outcome_probabilities(const StateVector& s, std::span<const Operator> projectors);

/// Reduced density matrix over `keep` (in the listed order).
DensityMatrix partial_trace(const StateVector& s, std::span<const std::size_t> keep);

/// <factor|_{qubits} s, an unnormalized vector over the remaining qubits in
/// ascending order.
Vector contract(const StateVector& s, std::span<const std::size_t> qubits, const StateVector& factor);

/// |<s|t>|^2, clamped to [0, 1].
double fidelity(const StateVector& s, const StateVector& t);

/// <s|t>.
Complex inner(const StateVector& s, const StateVector& t);

namespace gates {
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
}  // namespace gates

}  // namespace bellcast::qcore
