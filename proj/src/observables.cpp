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

#include "bellcast/observables.hpp"

#include <cmath>
#include <string>

namespace bellcast::observables {

using qcore::Complex;
using qcore::Matrix;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t idx(BellLabel l) { return static_cast<std::size_t>(l); }

Operator two_particle_component(const Operator& pauli) {
  const Matrix& s = pauli.matrix();
  const Matrix id = Matrix::Identity(2, 2);
  return Operator(0.5 * (qcore::kron(s, id) + qcore::kron(id, s)), true);
}

int rounded_eigenvalue(double value) {
  const double r = std::round(value);
  if (std::abs(value - r) > qcore::kEigenMatchTol) {
    throw qcore::Error("eigenvalue " + std::to_string(value) + " is not an integer");
  }
  return static_cast<int>(r);
}

}  // namespace

std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PsiPlus: return "PsiPlus";
    case BellLabel::PsiMinus: return "PsiMinus";
    case BellLabel::PhiPlus: return "PhiPlus";
    case BellLabel::PhiMinus: return "PhiMinus";
  }
  return "?";
}

std::optional<BellLabel> bell_label_from_string(std::string_view name) {
  for (BellLabel l : kAllBellLabels) {
    if (to_string(l) == name) return l;
  }
  return std::nullopt;
}

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::STotalSq: return "S^2";
    case Observable::SxSq: return "Sx^2";
    case Observable::SySq: return "Sy^2";
    case Observable::SzSq: return "Sz^2";
  }
  return "?";
}

Signature signature_of(BellLabel label) {
  switch (label) {
    case BellLabel::PsiPlus: return {0, 1};
    case BellLabel::PsiMinus: return {0, 0};
    case BellLabel::PhiPlus: return {1, 1};
    case BellLabel::PhiMinus: return {1, 0};
  }
  throw qcore::Error("unknown Bell label");
}

BellLabel label_from_signature(Signature sig) {
  for (BellLabel l : kAllBellLabels) {
    if (signature_of(l) == sig) return l;
  }
  throw qcore::Error("no Bell state has signature (Sz^2=" + std::to_string(sig.sz_sq) +
                     ", Sx^2=" + std::to_string(sig.sx_sq) + ")");
}

BellOutcome make_outcome(BellLabel label) { return BellOutcome{label, signature_of(label)}; }

const Operator& SpinObservableSet::get(Observable o) const {
  switch (o) {
    case Observable::STotalSq: return s_total_sq;
    case Observable::SxSq: return sx_sq;
    case Observable::SySq: return sy_sq;
    case Observable::SzSq: return sz_sq;
  }
  throw qcore::Error("unknown observable");
}

SpinObservableSet build_spin_observables() {
  Operator sx = two_particle_component(qcore::gates::pauli_x());
  Operator sy = two_particle_component(qcore::gates::pauli_y());
  Operator sz = two_particle_component(qcore::gates::pauli_z());
  Operator sx_sq(sx.matrix() * sx.matrix(), true);
  Operator sy_sq(sy.matrix() * sy.matrix(), true);
  Operator sz_sq(sz.matrix() * sz.matrix(), true);
  Operator total(sx_sq.matrix() + sy_sq.matrix() + sz_sq.matrix(), true);
  return SpinObservableSet{std::move(sx), std::move(sy), std::move(sz), std::move(total),
                           std::move(sx_sq), std::move(sy_sq), std::move(sz_sq)};
}

StateVector bell_state(BellLabel label) {
  const double h = kInvSqrt2;
  switch (label) {
    case BellLabel::PsiPlus: return StateVector{0.0, h, h, 0.0};
    case BellLabel::PsiMinus: return StateVector{0.0, h, -h, 0.0};
    case BellLabel::PhiPlus: return StateVector{h, 0.0, 0.0, h};
    case BellLabel::PhiMinus: return StateVector{h, 0.0, 0.0, -h};
  }
  throw qcore::Error("unknown Bell label");
}

EigenTable reference_eigen_table() {
  EigenTable t;
  t.rows[idx(BellLabel::PsiPlus)] = {2, 1, 1, 0};
  t.rows[idx(BellLabel::PsiMinus)] = {0, 0, 0, 0};
  t.rows[idx(BellLabel::PhiPlus)] = {2, 1, 0, 1};
  t.rows[idx(BellLabel::PhiMinus)] = {2, 0, 1, 1};
  return t;
}

EigenTable verify_eigen_table(const SpinObservableSet& obs) {
  EigenTable table;
  for (BellLabel l : kAllBellLabels) {
    const qcore::Vector beta = bell_state(l).amplitudes();
    for (std::size_t j = 0; j < kAllObservables.size(); ++j) {
      const Observable o = kAllObservables[j];
      const qcore::Vector image = obs.get(o).matrix() * beta;
      const double lambda = beta.dot(image).real();
      const double residual = (image - lambda * beta).norm();
      if (residual > qcore::kSpectralTol) {
        throw TableViolation(std::string(to_string(l)) + " is not an eigenvector of " +
                             std::string(to_string(o)) + " (residual " + std::to_string(residual) +
                             ")");
      }
      table.rows[idx(l)][j] = lambda;
    }
  }
  return table;
}

bool tables_match(const EigenTable& got, const EigenTable& expected) {
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (std::abs(got.rows[r][c] - expected.rows[r][c]) > qcore::kEigenMatchTol) return false;
    }
  }
  return true;
}

std::vector<ObservablePair> minimal_pairs() {
  return {{Observable::SxSq, Observable::SySq},
          {Observable::SySq, Observable::SzSq},
          {Observable::SzSq, Observable::SxSq}};
}

std::array<std::pair<double, double>, 4> pair_signatures(const EigenTable& table, ObservablePair pair) {
  std::array<std::pair<double, double>, 4> out{};
  for (BellLabel l : kAllBellLabels) {
    const auto& row = table.row(l);
    out[idx(l)] = {row[static_cast<std::size_t>(pair.first)], row[static_cast<std::size_t>(pair.second)]};
  }
  return out;
}

bool distinguishes_bell_states(const EigenTable& table, ObservablePair pair) {
  const auto sigs = pair_signatures(table, pair);
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(sigs[i].first - sigs[j].first) < qcore::kEigenMatchTol &&
          std::abs(sigs[i].second - sigs[j].second) < qcore::kEigenMatchTol) {
        return false;
      }
    }
  }
  return true;
}

std::array<Operator, 4> bell_projectors() {
  auto proj = [](BellLabel l) {
    const qcore::Vector v = bell_state(l).amplitudes();
    return Operator(v * v.adjoint(), true);
  };
  return {proj(BellLabel::PsiPlus), proj(BellLabel::PsiMinus), proj(BellLabel::PhiPlus),
          proj(BellLabel::PhiMinus)};
}

Operator eigenspace_projector(const Operator& op, double value) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
  const auto dim = static_cast<Eigen::Index>(op.dim());
  Matrix p = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (std::abs(solver.eigenvalues()(k) - value) < qcore::kEigenMatchTol) {
      const qcore::Vector v = solver.eigenvectors().col(k);
      p += v * v.adjoint();
    }
  }
  return Operator(0.5 * (p + p.adjoint()), true);
}

std::array<Operator, 4> joint_eigenspace_projectors(const SpinObservableSet& obs) {
  auto joint = [&](BellLabel l) {
    const Signature sig = signature_of(l);
    const Operator pz = eigenspace_projector(obs.sz_sq, sig.sz_sq);
    const Operator px = eigenspace_projector(obs.sx_sq, sig.sx_sq);
    return Operator(pz.matrix() * px.matrix(), false);
  };
  return {joint(BellLabel::PsiPlus), joint(BellLabel::PsiMinus), joint(BellLabel::PhiPlus),
          joint(BellLabel::PhiMinus)};
}

double projector_route_discrepancy(const SpinObservableSet& obs) {
  const auto rank_one = bell_projectors();
  const auto joint = joint_eigenspace_projectors(obs);
  double worst = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    worst = std::max(worst, qcore::max_abs(rank_one[k].matrix() - joint[k].matrix()));
  }
  return worst;
}

namespace {

std::vector<Operator> embedded_bell_projectors(std::size_t n_qubits, std::array<std::size_t, 2> alice) {
  std::vector<Operator> out;
  for (const Operator& p : bell_projectors()) {
    out.emplace_back(qcore::embed(p, alice, n_qubits), true);
  }
  return out;
}

}  // namespace

std::array<double, 4> bell_probabilities(const StateVector& s, std::array<std::size_t, 2> alice_qubits) {
  if (s.n_qubits() < 2) throw qcore::DimensionError("Bell measurement needs at least 2 qubits");
  const auto projectors = embedded_bell_projectors(s.n_qubits(), alice_qubits);
  const auto probs = qcore::outcome_probabilities(s, projectors);
  return {probs[0], probs[1], probs[2], probs[3]};
}

BellMeasurement bell_measure(const StateVector& s, std::array<std::size_t, 2> alice_qubits,
                             double rng_sample) {
  if (s.n_qubits() < 2) throw qcore::DimensionError("Bell measurement needs at least 2 qubits");
  const auto projectors = embedded_bell_projectors(s.n_qubits(), alice_qubits);
  qcore::MeasurementResult r = qcore::measure_projective(s, projectors, rng_sample);

  // Read the outcome from the observables, not from the projector index.
  static const SpinObservableSet obs = build_spin_observables();
  auto expectation = [&](const Operator& o) {
    const Matrix full = qcore::embed(o, alice_qubits, s.n_qubits());
    return r.post_state.amplitudes().dot(full * r.post_state.amplitudes()).real();
  };
  const Signature sig{rounded_eigenvalue(expectation(obs.sz_sq)), rounded_eigenvalue(expectation(obs.sx_sq))};
  const BellLabel label = label_from_signature(sig);
  if (label != kAllBellLabels[r.outcome_index]) {
    throw qcore::Error("signature readout disagrees with the projector outcome");
  }
  return BellMeasurement{BellOutcome{label, sig}, r.probability, std::move(r.post_state)};
}

}  // namespace bellcast::observables
