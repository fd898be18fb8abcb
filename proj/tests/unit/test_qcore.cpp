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

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "bellcast/qcore.hpp"
#include "oracles.hpp"

using namespace bellcast::qcore;
namespace T = bellcast::testing;

namespace {

const double h = T::kInvSqrt2;

Operator projector(const StateVector& s) { return Operator(s.amplitudes() * s.amplitudes().adjoint(), true); }

std::vector<Operator> z_projectors() { return {projector(StateVector{1, 0}), projector(StateVector{0, 1})}; }

}  // namespace

TEST_CASE("tensor products of basis and superposition states") {
  const StateVector ud = tensor(StateVector{1, 0}, StateVector{0, 1});
  CHECK(max_abs(ud.amplitudes() - StateVector::basis(2, 1).amplitudes()) < kAlgebraTol);

  const StateVector singlet{0, h, -h, 0};
  const StateVector xi = tensor(StateVector{1, 0}, singlet);
  Vector expected = Vector::Zero(8);
  expected(0b001) = h;
  expected(0b010) = -h;
  CHECK(max_abs(xi.amplitudes() - expected) < kAlgebraTol);

  const StateVector plus{h, h};
  const StateVector pp = tensor(plus, plus);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(pp[i] - Complex(0.5)) < kAlgebraTol);
}

TEST_CASE("state construction validates its input") {
  CHECK_THROWS_AS(StateVector(Vector::Zero(4)), Error);
  CHECK_THROWS_AS(StateVector(Vector::Ones(3)), DimensionError);
  Vector nan = Vector::Ones(2);
  nan(0) = std::nan("");
  CHECK_THROWS_AS(StateVector(std::move(nan)), Error);
  CHECK(std::abs(StateVector{3, 4}[0] - Complex(0.6)) < kAlgebraTol);
  CHECK_THROWS(StateVector::basis(2, 4));
}

TEST_CASE("apply on named qubits") {
  const std::array<std::size_t, 1> q0 = {0};
  const StateVector flipped = apply(gates::pauli_x(), StateVector::basis(2, 0b01), q0);
  CHECK(max_abs(flipped.amplitudes() - StateVector::basis(2, 0b11).amplitudes()) < kAlgebraTol);

  // Wave plate on the second mode of (|RR> - |LL>)/sqrt2.
  const Operator w{{0, -1}, {1, 0}};
  const std::array<std::size_t, 1> q1 = {1};
  const StateVector out = apply(w, StateVector{h, 0, 0, -h}, q1);
  const StateVector expected{0, h, h, 0};
  CHECK(max_abs(out.amplitudes() - expected.amplitudes()) < 1e-13);

  std::mt19937_64 gen(7);
  const StateVector s(T::random_vector(gen, 8));
  const std::array<std::size_t, 1> q2 = {2};
  CHECK(max_abs(apply(Operator::identity(1), s, q2).amplitudes() - s.amplitudes()) < 1e-15);
}

TEST_CASE("apply and embed agree with an explicit Kronecker embedding") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    const StateVector s(T::random_vector(gen, Eigen::Index(1) << n));
    const Matrix u = T::random_unitary(gen, 2);
    for (std::size_t k = 0; k < n; ++k) {
      const std::array<std::size_t, 1> target = {k};
      const Vector oracle = T::embed_single(u, k, n) * s.amplitudes();
      CHECK(max_abs(apply(Operator(u), s, target).amplitudes() - oracle) < kAlgebraTol);
      CHECK(max_abs(embed(Operator(u), target, n) - T::embed_single(u, k, n)) < kAlgebraTol);
    }
    if (n >= 2) {
      const Matrix u2 = T::random_unitary(gen, 4);
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const std::array<std::size_t, 2> target = {k, k + 1};
        CHECK(max_abs(embed(Operator(u2), target, n) - T::embed_block(u2, k, n)) < kAlgebraTol);
      }
    }
  }
}

TEST_CASE("non-adjacent and reversed targets follow the qubit ordering") {
  // CNOT-like permutation with control on the first listed target.
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  const std::array<std::size_t, 2> ctl0_tgt2 = {0, 2};
  const StateVector out = apply(Operator(cnot), StateVector::basis(3, 0b100), ctl0_tgt2);
  CHECK(std::abs(out[0b101] - Complex(1)) < kAlgebraTol);
  const std::array<std::size_t, 2> ctl2_tgt0 = {2, 0};
  const StateVector out2 = apply(Operator(cnot), StateVector::basis(3, 0b001), ctl2_tgt0);
  CHECK(std::abs(out2[0b101] - Complex(1)) < kAlgebraTol);
}

TEST_CASE("unitaries preserve the norm") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    const StateVector s(T::random_vector(gen, 8));
    const Vector raw = embed(Operator(T::random_unitary(gen, 4)), std::array<std::size_t, 2>{2, 0}, 3) *
                       s.amplitudes();
    CHECK(std::abs(raw.norm() - 1.0) < kAlgebraTol);
  }
}

TEST_CASE("apply rejects bad targets") {
  const StateVector s = StateVector::basis(2, 0);
  CHECK_THROWS_AS(apply(gates::pauli_x(), s, std::array<std::size_t, 1>{2}), DimensionError);
  CHECK_THROWS_AS(apply(gates::pauli_x(), s, std::array<std::size_t, 2>{0, 1}), DimensionError);
  CHECK_THROWS_AS(apply(Operator::identity(2), s, std::array<std::size_t, 2>{1, 1}), DimensionError);
}

TEST_CASE("projective measurement") {
  const auto zp = z_projectors();
  for (double r : {0.0, 0.3, 0.999999}) {
    const MeasurementResult m = measure_projective(StateVector{1, 0}, zp, r);
    CHECK(m.outcome_index == 0);
    CHECK(m.probability == doctest::Approx(1.0).epsilon(1e-15));
  }

  // Cumulative sampling: outcome 0 covers [0, p0), so 0.7 and a sample sitting
  // exactly on the boundary p0 land on outcome 1.
  const StateVector plus{h, h};
  const double p0 = outcome_probabilities(plus, zp)[0];
  CHECK(measure_projective(plus, zp, 0.7).outcome_index == 1);
  CHECK(measure_projective(plus, zp, p0).outcome_index == 1);
  CHECK(measure_projective(plus, zp, std::nextafter(p0, 0.0)).outcome_index == 0);
  const MeasurementResult m = measure_projective(plus, zp, 0.7);
  CHECK(std::abs(m.post_state[1] - Complex(1)) < kAlgebraTol);

  // A zero-probability outcome is never chosen, even at the end of the range.
  CHECK(measure_projective(StateVector{1, 0}, zp, std::nextafter(1.0, 0.0)).outcome_index == 0);
}

TEST_CASE("measurement validates projectors and the sample") {
  const auto zp = z_projectors();
  CHECK_THROWS_AS(measure_projective(StateVector{1, 0}, zp, 1.0), MeasurementError);
  CHECK_THROWS_AS(measure_projective(StateVector{1, 0}, zp, -0.1), MeasurementError);
  const std::vector<Operator> incomplete = {zp[0]};
  CHECK_THROWS_AS(measure_projective(StateVector{1, 0}, incomplete, 0.1), MeasurementError);
  const std::vector<Operator> not_idempotent = {Operator(Matrix(2.0 * zp[0].matrix()), true), zp[1]};
  CHECK_THROWS_AS(measure_projective(StateVector{1, 0}, not_idempotent, 0.1), MeasurementError);
  const std::vector<Operator> wrong_dim = {Operator::identity(2)};
  CHECK_THROWS_AS(measure_projective(StateVector{1, 0}, wrong_dim, 0.1), DimensionError);
}

TEST_CASE("outcome probabilities sum to one") {
  std::mt19937_64 gen(17);
  std::vector<Operator> basis;
  for (std::size_t i = 0; i < 8; ++i) basis.push_back(projector(StateVector::basis(3, i)));
  for (int trial = 0; trial < 1000; ++trial) {
    const StateVector s(T::random_vector(gen, 8));
    double total = 0.0;
    for (double p : outcome_probabilities(s, basis)) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(std::abs(total - 1.0) < kAlgebraTol);
  }
}

TEST_CASE("partial trace examples") {
  const StateVector singlet{0, h, -h, 0};
  const DensityMatrix r = partial_trace(singlet, std::array<std::size_t, 1>{0});
  CHECK(max_abs(r.matrix() - 0.5 * Matrix::Identity(2, 2)) < kAlgebraTol);

  const StateVector xi = tensor(StateVector{1, 0}, singlet);
  const DensityMatrix bob = partial_trace(xi, std::array<std::size_t, 1>{2});
  const Matrix oracle = T::trace_to_last(xi.amplitudes() * xi.amplitudes().adjoint());
  CHECK(max_abs(oracle - 0.5 * Matrix::Identity(2, 2)) < kAlgebraTol);
  CHECK(max_abs(bob.matrix() - oracle) < kAlgebraTol);

  const DensityMatrix up = partial_trace(tensor(StateVector{1, 0}, StateVector{0, 1}), std::array<std::size_t, 1>{0});
  CHECK(std::abs(up(0, 0) - Complex(1)) < kAlgebraTol);
  CHECK(std::abs(up(1, 1)) < kAlgebraTol);
}

TEST_CASE("partial trace of random states is a density matrix matching the oracle") {
  std::mt19937_64 gen(19);
  for (int trial = 0; trial < 200; ++trial) {
    const StateVector s(T::random_vector(gen, 16));
    const DensityMatrix last = partial_trace(s, std::array<std::size_t, 1>{3});
    CHECK(max_abs(last.matrix() - T::trace_to_last(s.amplitudes() * s.amplitudes().adjoint())) < kAlgebraTol);
    CHECK(max_abs(last.matrix() - last.matrix().adjoint()) < kAlgebraTol);
    CHECK(std::abs(last.matrix().trace() - Complex(1)) < kAlgebraTol);
    CHECK(last.min_eigenvalue() > -kAlgebraTol);

    const DensityMatrix pair = partial_trace(s, std::array<std::size_t, 2>{0, 2});
    CHECK(std::abs(pair.matrix().trace() - Complex(1)) < kAlgebraTol);
    CHECK(pair.min_eigenvalue() > -kAlgebraTol);
  }
}

TEST_CASE("tensor then trace recovers each factor") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    const StateVector a(T::random_vector(gen, 2));
    const StateVector b(T::random_vector(gen, 4));
    const StateVector ab = tensor(a, b);
    const DensityMatrix ra = partial_trace(ab, std::array<std::size_t, 1>{0});
    const DensityMatrix rb = partial_trace(ab, std::array<std::size_t, 2>{1, 2});
    CHECK(max_abs(ra.matrix() - a.amplitudes() * a.amplitudes().adjoint()) < kAlgebraTol);
    CHECK(max_abs(rb.matrix() - b.amplitudes() * b.amplitudes().adjoint()) < kAlgebraTol);
  }
}

TEST_CASE("partial trace rejects bad qubit lists") {
  const StateVector s = StateVector::basis(2, 0);
  CHECK_THROWS_AS(partial_trace(s, std::array<std::size_t, 1>{2}), DimensionError);
  CHECK_THROWS_AS(partial_trace(s, std::array<std::size_t, 2>{0, 0}), DimensionError);
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix(Matrix::Identity(2, 2)), Error);  // trace 2
  Matrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, Error);
  Matrix nonherm(2, 2);
  nonherm << 0.5, 0.3, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix{nonherm}, Error);
  CHECK_NOTHROW(DensityMatrix(0.5 * Matrix::Identity(2, 2)));
}

TEST_CASE("contract matches a brute-force overlap") {
  std::mt19937_64 gen(29);
  const StateVector s(T::random_vector(gen, 8));
  const StateVector f(T::random_vector(gen, 4));
  const Vector got = contract(s, std::array<std::size_t, 2>{0, 1}, f);
  Vector oracle = Vector::Zero(2);
  for (Eigen::Index i = 0; i < 8; ++i) oracle(i & 1) += std::conj(f.amplitudes()(i >> 1)) * s.amplitudes()(i);
  CHECK(max_abs(got - oracle) < kAlgebraTol);
}

TEST_CASE("fidelity") {
  std::mt19937_64 gen(31);
  const StateVector s(T::random_vector(gen, 4));
  CHECK(fidelity(s, s) == doctest::Approx(1.0).epsilon(1e-12));
  for (double theta : {0.3, 1.7, -2.9}) {
    const StateVector t(Vector(std::polar(1.0, theta) * s.amplitudes()));
    CHECK(fidelity(s, t) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(fidelity(StateVector{1, 0}, StateVector{h, h}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fidelity(StateVector{1, 0}, StateVector{0, 1}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(fidelity(StateVector{1, 0}, StateVector::basis(2, 0)), DimensionError);
}

TEST_CASE("operators") {
  CHECK(gates::pauli_x().is_unitary());
  CHECK(gates::pauli_y().is_hermitian());
  const Operator xy = gates::pauli_x() * gates::pauli_y();
  CHECK(max_abs(xy.matrix() - (Complex(0, 1) * gates::pauli_z()).matrix()) < kAlgebraTol);
  CHECK_THROWS_AS(Operator(Matrix::Identity(3, 3)), DimensionError);
  Matrix nonherm(2, 2);
  nonherm << 0, 1, 0, 0;
  CHECK_THROWS_AS(Operator(nonherm, true), Error);
}
