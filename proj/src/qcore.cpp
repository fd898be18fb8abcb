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

#include "bellcast/qcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace bellcast::qcore {

namespace {

std::size_t qubits_for_dim(std::size_t dim) {
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return static_cast<std::size_t>(std::countr_zero(dim));
}

bool all_finite(const Matrix& m) {
  return m.array().real().allFinite() && m.array().imag().allFinite();
}

void check_targets(std::span<const std::size_t> targets, std::size_t n_qubits) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= n_qubits) {
      throw DimensionError("qubit index " + std::to_string(targets[i]) + " out of range for " +
                           std::to_string(n_qubits) + " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[j] == targets[i]) {
        throw DimensionError("qubit index " + std::to_string(targets[i]) + " repeated");
      }
    }
  }
}

// Bit position (from the least significant end) of qubit k in an n-qubit index.
inline std::size_t shift_of(std::size_t k, std::size_t n) { return n - 1 - k; }

// Gathers the sub-index formed by `qubits` (leftmost first) out of a full index.
std::size_t gather(std::size_t index, std::span<const std::size_t> qubits, std::size_t n) {
  std::size_t sub = 0;
  for (std::size_t q : qubits) sub = (sub << 1) | ((index >> shift_of(q, n)) & 1U);
  return sub;
}

// Writes `sub` into the bits of `qubits` of `index`.
std::size_t scatter(std::size_t index, std::size_t sub, std::span<const std::size_t> qubits,
                    std::size_t n) {
  const std::size_t k = qubits.size();
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t bit = (sub >> (k - 1 - j)) & 1U;
    const std::size_t pos = shift_of(qubits[j], n);
    index = (index & ~(std::size_t{1} << pos)) | (bit << pos);
  }
  return index;
}

std::vector<std::size_t> complement(std::span<const std::size_t> qubits, std::size_t n) {
  std::vector<std::size_t> rest;
  for (std::size_t q = 0; q < n; ++q) {
    if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) rest.push_back(q);
  }
  return rest;
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
  n_qubits_ = qubits_for_dim(static_cast<std::size_t>(amps_.size()));
  if (!all_finite(amps_)) throw Error("state has non-finite amplitude");
  const double norm = amps_.norm();
  if (norm < kDegenerateProb) throw Error("cannot normalize a zero state");
  amps_ /= norm;
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(Vector(Eigen::Map<const Vector>(amplitudes.begin(),
                                                  static_cast<Eigen::Index>(amplitudes.size())))) {}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::canonical() const {
  Vector v = amps_;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kAlgebraTol) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return StateVector(std::move(v));
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(Matrix entries, bool hermitian_hint)
    : m_(std::move(entries)), hermitian_(hermitian_hint) {
  if (m_.rows() != m_.cols()) throw DimensionError("operator is not square");
  n_qubits_ = qubits_for_dim(static_cast<std::size_t>(m_.rows()));
  if (!all_finite(m_)) throw Error("operator has non-finite entry");
  if (hermitian_ && !is_hermitian()) throw Error("operator flagged Hermitian is not");
}

Operator::Operator(std::initializer_list<std::initializer_list<Complex>> rows, bool hermitian_hint)
    : Operator(
          [&] {
            const auto n = static_cast<Eigen::Index>(rows.size());
            Matrix m(n, n);
            Eigen::Index r = 0;
            for (const auto& row : rows) {
              if (static_cast<Eigen::Index>(row.size()) != n) {
                throw DimensionError("ragged operator rows");
              }
              Eigen::Index c = 0;
              for (const Complex& x : row) m(r, c++) = x;
              ++r;
            }
            return m;
          }(),
          hermitian_hint) {}

Operator Operator::identity(std::size_t n_qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  return Operator(Matrix::Identity(dim, dim), true);
}

bool Operator::is_unitary(double tol) const {
  return max_abs(m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols())) < tol;
}

bool Operator::is_hermitian(double tol) const { return max_abs(m_ - m_.adjoint()) < tol; }

Operator operator*(const Operator& lhs, const Operator& rhs) {
  if (lhs.dim() != rhs.dim()) throw DimensionError("operator product dimension mismatch");
  Matrix m = lhs.matrix() * rhs.matrix();
  // A product of Hermitian operators is Hermitian only if they commute.
  const bool herm = lhs.hermitian_hint() && rhs.hermitian_hint() && max_abs(m - m.adjoint()) < kAlgebraTol;
  return Operator(std::move(m), herm);
}

Operator operator+(const Operator& lhs, const Operator& rhs) {
  if (lhs.dim() != rhs.dim()) throw DimensionError("operator sum dimension mismatch");
  return Operator(lhs.matrix() + rhs.matrix(), lhs.hermitian_hint() && rhs.hermitian_hint());
}

Operator operator-(const Operator& lhs, const Operator& rhs) {
  if (lhs.dim() != rhs.dim()) throw DimensionError("operator difference dimension mismatch");
  return Operator(lhs.matrix() - rhs.matrix(), lhs.hermitian_hint() && rhs.hermitian_hint());
}

Operator operator*(Complex scale, const Operator& op) {
  return Operator(scale * op.matrix(), op.hermitian_hint() && scale.imag() == 0.0);
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw DimensionError("density matrix is not square");
  if (!all_finite(m_)) throw Error("density matrix has non-finite entry");
  if (max_abs(m_ - m_.adjoint()) > kAlgebraTol) throw Error("density matrix is not Hermitian");
  if (std::abs(m_.trace() - Complex(1.0)) > kAlgebraTol) throw Error("density matrix trace is not 1");
  if (min_eigenvalue() < -kSpectralTol) throw Error("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const StateVector& s) {
  return DensityMatrix(s.amplitudes() * s.amplitudes().adjoint());
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Free functions

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index r = 0; r < lhs.rows(); ++r) {
    for (Eigen::Index c = 0; c < lhs.cols(); ++c) {
      out.block(r * rhs.rows(), c * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(r, c) * rhs;
    }
  }
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  return StateVector(Vector(kron(a.amplitudes(), b.amplitudes())));
}

Matrix embed(const Operator& op, std::span<const std::size_t> targets, std::size_t n_qubits) {
  check_targets(targets, n_qubits);
  if (op.n_qubits() != targets.size()) {
    throw DimensionError("operator acts on " + std::to_string(op.n_qubits()) + " qubits but " +
                         std::to_string(targets.size()) + " targets given");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t sub_dim = op.dim();
  Matrix full = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const Matrix& m = op.matrix();
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t sub_col = gather(col, targets, n_qubits);
    for (std::size_t sub_row = 0; sub_row < sub_dim; ++sub_row) {
      const std::size_t row = scatter(col, sub_row, targets, n_qubits);
      full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          m(static_cast<Eigen::Index>(sub_row), static_cast<Eigen::Index>(sub_col));
    }
  }
  return full;
}

StateVector apply(const Operator& op, const StateVector& s, std::span<const std::size_t> targets) {
  check_targets(targets, s.n_qubits());
  if (op.n_qubits() != targets.size()) {
    throw DimensionError("operator acts on " + std::to_string(op.n_qubits()) + " qubits but " +
                         std::to_string(targets.size()) + " targets given");
  }
  const std::size_t n = s.n_qubits();
  const std::size_t sub_dim = op.dim();
  const Matrix& m = op.matrix();
  Vector out = Vector::Zero(s.amplitudes().size());
  for (std::size_t col = 0; col < s.dim(); ++col) {
    const Complex amp = s[col];
    if (amp == Complex(0.0)) continue;
    const std::size_t sub_col = gather(col, targets, n);
    for (std::size_t sub_row = 0; sub_row < sub_dim; ++sub_row) {
      const std::size_t row = scatter(col, sub_row, targets, n);
      out(static_cast<Eigen::Index>(row)) +=
          m(static_cast<Eigen::Index>(sub_row), static_cast<Eigen::Index>(sub_col)) * amp;
    }
  }
  if (out.norm() < kDegenerateProb) throw Error("operator annihilates the state");
  return StateVector(std::move(out));
}

std::vector<double> outcome_probabilities(const StateVector& s, std::span<const Operator> projectors) {
  std::vector<double> probs;
  probs.reserve(projectors.size());
  for (const Operator& p : projectors) {
    if (p.dim() != s.dim()) throw DimensionError("projector dimension does not match state");
    const Vector projected = p.matrix() * s.amplitudes();
    probs.push_back(projected.squaredNorm());
  }
  return probs;
}

MeasurementResult measure_projective(const StateVector& s, std::span<const Operator> projectors,
                                     double rng_sample) {
  if (projectors.empty()) throw MeasurementError("empty projector set");
  if (!(rng_sample >= 0.0 && rng_sample < 1.0)) throw MeasurementError("rng_sample outside [0, 1)");
  const auto dim = static_cast<Eigen::Index>(s.dim());
  Matrix sum = Matrix::Zero(dim, dim);
  for (const Operator& p : projectors) {
    if (p.dim() != s.dim()) throw DimensionError("projector dimension does not match state");
    const Matrix& m = p.matrix();
    if (max_abs(m - m.adjoint()) > kSpectralTol) throw MeasurementError("projector is not Hermitian");
    if (max_abs(m * m - m) > kSpectralTol) throw MeasurementError("projector is not idempotent");
    sum += m;
  }
  if (max_abs(sum - Matrix::Identity(dim, dim)) > kSpectralTol) {
    throw MeasurementError("projector set is incomplete (sum differs from identity)");
  }

  const std::vector<double> probs = outcome_probabilities(s, projectors);
  if (std::all_of(probs.begin(), probs.end(), [](double p) { return p < kDegenerateProb; })) {
    throw MeasurementError("all outcome probabilities are degenerate");
  }

  std::size_t chosen = probs.size();
  std::size_t last_possible = 0;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] < kDegenerateProb) continue;
    last_possible = k;
    cumulative += probs[k];
    if (chosen == probs.size() && rng_sample < cumulative) chosen = k;
  }
  // Rounding can leave the total a hair below 1.
  if (chosen == probs.size()) chosen = last_possible;

  Vector post = projectors[chosen].matrix() * s.amplitudes();
  return MeasurementResult{chosen, probs[chosen], StateVector(std::move(post))};
}

DensityMatrix partial_trace(const StateVector& s, std::span<const std::size_t> keep) {
  if (keep.empty()) throw DimensionError("partial trace must keep at least one qubit");
  const std::size_t n = s.n_qubits();
  check_targets(keep, n);
  const std::vector<std::size_t> traced = complement(keep, n);
  const std::size_t keep_dim = std::size_t{1} << keep.size();
  const std::size_t env_dim = std::size_t{1} << traced.size();

  // Reshape into a keep_dim x env_dim matrix A; rho = A A^dagger.
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(keep_dim), static_cast<Eigen::Index>(env_dim));
  for (std::size_t i = 0; i < s.dim(); ++i) {
    a(static_cast<Eigen::Index>(gather(i, keep, n)), static_cast<Eigen::Index>(gather(i, traced, n))) =
        s[i];
  }
  Matrix rho = a * a.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

Vector contract(const StateVector& s, std::span<const std::size_t> qubits, const StateVector& factor) {
  const std::size_t n = s.n_qubits();
  check_targets(qubits, n);
  if (factor.n_qubits() != qubits.size()) throw DimensionError("factor size does not match qubit list");
  if (qubits.size() >= n) throw DimensionError("contraction must leave at least one qubit");
  const std::vector<std::size_t> rest = complement(qubits, n);
  Vector out = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << rest.size()));
  for (std::size_t i = 0; i < s.dim(); ++i) {
    out(static_cast<Eigen::Index>(gather(i, rest, n))) += std::conj(factor[gather(i, qubits, n)]) * s[i];
  }
  return out;
}

Complex inner(const StateVector& s, const StateVector& t) {
  if (s.dim() != t.dim()) throw DimensionError("inner product dimension mismatch");
  return s.amplitudes().dot(t.amplitudes());
}

double fidelity(const StateVector& s, const StateVector& t) {
  return std::clamp(std::norm(inner(s, t)), 0.0, 1.0);
}

namespace gates {
Operator pauli_x() { return Operator({{0.0, 1.0}, {1.0, 0.0}}, true); }
Operator pauli_y() { return Operator({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}, true); }
Operator pauli_z() { return Operator({{1.0, 0.0}, {0.0, -1.0}}, true); }
}  // namespace gates

}  // namespace bellcast::qcore
