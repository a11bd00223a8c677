// Copyright 2026 The mpemba-reset Authors
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

#include "mpemba/protocol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace mpemba {

namespace {

ComplexMatrix projector(int k) {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(k, k) = 1.0;
  return p;
}

void require_angle(double a, const char* name) {
  if (!std::isfinite(a) || a < 0.0 || a >= 2.0 * std::numbers::pi) {
    std::ostringstream msg;
    msg << "perturbed_cry: " << name << " = " << a << " outside [0, 2 pi)";
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

void ControlledGate::validate() const {
  if (v0.rows() != 2 || v0.cols() != 2 || v1.rows() != 2 || v1.cols() != 2) {
    throw DimensionError("ControlledGate: branches must be 2x2");
  }
  if (!is_unitary(v0) || !is_unitary(v1)) throw InvalidArgument("ControlledGate: branches must be unitary");
}

ComplexMatrix ControlledGate::unitary() const {
  validate();
  return kron(projector(0), v0) + kron(projector(1), v1);
}

void AncillaState::validate() const {
  if (!std::isfinite(p0) || p0 < 0.0 || p0 > 1.0) throw InvalidArgument("AncillaState: p0 outside [0, 1]");
  if (std::abs(coherence) > std::sqrt(p0 * (1.0 - p0)) + 1e-12) {
    throw InvalidArgument("AncillaState: |coherence| exceeds sqrt(p0 p1)");
  }
}

DensityMatrix AncillaState::density() const {
  validate();
  ComplexMatrix m(2, 2);
  m << p0, coherence, std::conj(coherence), 1.0 - p0;
  return DensityMatrix::hermitized(m, {2}, 1e-12, 1e-12);
}

ControlledGate identity_gate() { return {ops::identity(2), ops::identity(2)}; }

ControlledGate cry_pi() {
  ComplexMatrix v1(2, 2);
  v1 << 0.0, -1.0, 1.0, 0.0;
  return {ops::identity(2), v1};
}

ControlledGate cnot() { return {ops::identity(2), ops::sigma_x()}; }

ControlledGate perturbed_cry(double dtheta_x, double dtheta_y, ErrorOrder order) {
  require_angle(dtheta_x, "dtheta_x");
  require_angle(dtheta_y, "dtheta_y");
  const ComplexMatrix rx = ops::rx(dtheta_x);
  const ComplexMatrix ry = ops::ry(std::numbers::pi + dtheta_y);
  return {ops::identity(2), order == ErrorOrder::kXAfterY ? ComplexMatrix(rx * ry) : ComplexMatrix(ry * rx)};
}

Complex kappa(const DensityMatrix& rho2, const ControlledGate& gate) {
  gate.validate();
  if (rho2.dim() != 2) throw DimensionError("kappa: ancilla must be a qubit");
  return (rho2.matrix() * gate.v0.adjoint() * gate.v1).trace();
}

Complex kappa(const AncillaState& rho2, const ControlledGate& gate) { return kappa(rho2.density(), gate); }

Complex kappa_bloch(double phi, double theta, double n_z, double r) {
  return std::exp(kI * phi) * Complex(std::cos(theta / 2.0), r * std::sin(theta / 2.0) * n_z);
}

ComplexMatrix relative_unitary(double phi, double theta, double n_x, double n_y, double n_z) {
  const double norm = std::sqrt(n_x * n_x + n_y * n_y + n_z * n_z);
  if (!(norm > 0.0)) throw InvalidArgument("relative_unitary: rotation axis must be nonzero");
  const ComplexMatrix axis = (n_x * ops::sigma_x() + n_y * ops::sigma_y() + n_z * ops::sigma_z()) / norm;
  return std::exp(kI * phi) * (std::cos(theta / 2.0) * ops::identity(2) + kI * std::sin(theta / 2.0) * axis);
}

ComplexMatrix embed_gate(const ControlledGate& gate, const Dims& dims, std::size_t control, std::size_t target) {
  gate.validate();
  if (control >= dims.size() || target >= dims.size() || control == target) {
    throw InvalidArgument("embed_gate: invalid control/target sites");
  }
  if (dims[control] != 2 || dims[target] != 2) throw DimensionError("embed_gate: control and target must be qubits");
  return ops::embed(projector(0), control, dims) * ops::embed(gate.v0, target, dims) +
         ops::embed(projector(1), control, dims) * ops::embed(gate.v1, target, dims);
}

DensityMatrix apply_gate(const ControlledGate& gate, const DensityMatrix& rho, std::size_t control,
                         std::size_t target) {
  const ComplexMatrix u = embed_gate(gate, rho.dims(), control, target);
  return DensityMatrix::hermitized(u * rho.matrix() * u.adjoint(), rho.dims());
}

DensityMatrix apply_gate(const ControlledGate& gate, const DensityMatrix& rho12) {
  if (rho12.dims() != Dims{2, 2}) throw DimensionError("apply_gate: expected a two-qubit state with dims [2, 2]");
  return apply_gate(gate, rho12, 0, 1);
}

}  // namespace mpemba
