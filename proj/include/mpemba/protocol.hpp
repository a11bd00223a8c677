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

#pragma once

#include <cstddef>

#include "mpemba/core.hpp"

namespace mpemba {

/// U = |0><0| (x) V0 + |1><1| (x) V1, control first.
struct ControlledGate {
  ComplexMatrix v0;
  ComplexMatrix v1;

  void validate() const;
  ComplexMatrix unitary() const;
};

/// Ancilla density matrix [[p0, c], [c*, 1 - p0]].
struct AncillaState {
  double p0 = 1.0;
  Complex coherence = 0.0;

  void validate() const;
  DensityMatrix density() const;
  static AncillaState ground() { return {1.0, 0.0}; }
  static AncillaState excited() { return {0.0, 0.0}; }
};

ControlledGate identity_gate();
/// V1 = Ry(pi) = [[0, -1], [1, 0]].
ControlledGate cry_pi();
/// V1 = X.
ControlledGate cnot();

/// Where the spurious x rotation sits relative to the intended y rotation.
enum class ErrorOrder {
  kXAfterY,  // V1 = Rx(dx) Ry(pi + dy)
  kYAfterX,  // V1 = Ry(pi + dy) Rx(dx)
};

/// Controlled rotation with systematic errors; angles in [0, 2 pi).
ControlledGate perturbed_cry(double dtheta_x, double dtheta_y, ErrorOrder order = ErrorOrder::kXAfterY);

/// Tr[rho2 V0^dag V1]: the factor multiplying the control qubit's coherence.
Complex kappa(const AncillaState& rho2, const ControlledGate& gate);
Complex kappa(const DensityMatrix& rho2, const ControlledGate& gate);

/// Closed form for a diagonal ancilla with r = p0 - p1 and relative unitary
/// W = e^{i phi}(cos(theta/2) 1 + i sin(theta/2) n.sigma).
Complex kappa_bloch(double phi, double theta, double n_z, double r);
/// W assembled from (phi, theta, n).
ComplexMatrix relative_unitary(double phi, double theta, double n_x, double n_y, double n_z);

/// U rho U^dag on a two-qubit state with dims [2, 2].
DensityMatrix apply_gate(const ControlledGate& gate, const DensityMatrix& rho12);
/// Same, acting on subsystems `control` and `target` of a larger register.
DensityMatrix apply_gate(const ControlledGate& gate, const DensityMatrix& rho, std::size_t control,
                         std::size_t target);

/// Full-register unitary of a controlled gate between two qubit subsystems.
ComplexMatrix embed_gate(const ControlledGate& gate, const Dims& dims, std::size_t control, std::size_t target);

}  // namespace mpemba
