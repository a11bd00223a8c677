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
#include <optional>
#include <vector>

#include "mpemba/core.hpp"

namespace mpemba {

/// One dissipator rate * D[op].
struct JumpTerm {
  ComplexMatrix op;
  double rate = 0.0;
};

/// Hamiltonian plus jump terms of a Lindblad master equation.
struct LindbladSpec {
  ComplexMatrix hamiltonian;
  std::vector<JumpTerm> jumps;
  Dims dims;

  int dim() const { return static_cast<int>(hamiltonian.rows()); }
  /// Throws DimensionError / InvalidArgument when an invariant is broken.
  void validate() const;
};

/// d^2 x d^2 generator acting on column-stacked density matrices.
struct Superoperator {
  ComplexMatrix matrix;
  int dim = 0;  // Hilbert-space dimension d
  Dims dims;

  ComplexVector apply(const ComplexVector& v) const { return matrix * v; }
  ComplexMatrix apply(const ComplexMatrix& rho) const;
};

/// Builds the vectorized generator
///   L = -i (1 (x) H) + i (H^T (x) 1)
///       + sum_l rate_l [ L_l^* (x) L_l - 1/2 1 (x) L_l^dag L_l - 1/2 (L_l^dag L_l)^T (x) 1 ]
/// which is the column-stacking form of -i[H, rho] + sum_l rate_l D[L_l](rho).
Superoperator build_liouvillian(const LindbladSpec& spec);

/// Eigen-decomposition L = sum_k lambda_k |r_k>><<l_k|.
///
/// Ordering: the zero eigenvalue first, then ascending |Re(lambda)|. Ties in
/// |Re| are ordered by |Im| then Im, with conjugate partners interleaved, and
/// finally by the (phase-fixed) right eigenvector. Left vectors satisfy
/// <<l_j|r_k>> = delta_jk; l_1 is the vectorized identity because r_1 has unit
/// trace.
struct SpectralDecomposition {
  std::vector<Complex> eigenvalues;
  ComplexMatrix right;  // column k = |r_k>>
  ComplexMatrix left;   // column k = |l_k>>
  int dim = 0;
  Dims dims;
  bool defective = false;
  double condition_number = 1.0;

  std::size_t size() const { return eigenvalues.size(); }
  VectorizedState right_vector(std::size_t k) const { return {right.col(k), dim}; }
  VectorizedState left_vector(std::size_t k) const { return {left.col(k), dim}; }
};

inline constexpr double kZeroEigenvalueTol = 1e-9;
inline constexpr double kPairingTol = 1e-7;
inline constexpr double kDefectiveCondition = 1e10;

SpectralDecomposition spectral_decompose(const Superoperator& l);

/// Eigenvalues only, unsorted. Used where eigenvectors are not needed.
std::vector<Complex> eigenvalues(const Superoperator& l);

/// Devectorized r_1 with unit trace. Throws NumericalError when the zero
/// eigenvalue is missing or degenerate.
DensityMatrix steady_state(const SpectralDecomposition& dec);

/// <<left|rho>> = sum conj(left_i) vec(rho)_i.
Complex overlap(const VectorizedState& left, const DensityMatrix& rho);

/// Indices of the decomposition grouped by equal Re(lambda), slowest first.
/// The zero eigenvalue forms the first group.
std::vector<std::vector<std::size_t>> decay_groups(const SpectralDecomposition& dec);

/// Half trace norm of the component of rho carried by the listed modes,
/// || sum_k <<l_k|rho>> r_k ||_1 / 2. Invariant under basis changes inside
/// degenerate eigenspaces, unlike a single raw overlap.
double mode_amplitude(const SpectralDecomposition& dec, const std::vector<std::size_t>& modes,
                      const ComplexMatrix& rho);

struct PopulatedMode {
  double rate = 0.0;       // |Re(lambda)|
  double amplitude = 0.0;  // mode_amplitude of its decay group
  std::size_t group = 0;   // index into decay_groups
};

/// Slowest decay group whose amplitude in rho exceeds `threshold`.
std::optional<PopulatedMode> slowest_populated_mode(const SpectralDecomposition& dec,
                                                    const ComplexMatrix& rho,
                                                    double threshold = 1e-10);

/// True when the devectorized right eigenvector is dominated by its diagonal.
bool is_population_mode(const SpectralDecomposition& dec, std::size_t k);

/// |Re(lambda_3)| / |Re(lambda_2)|, where lambda_2 is the slowest decaying
/// mode and lambda_3 the slowest population (diagonal) mode, i.e. the slowest
/// mode a coherence-removing operation cannot eliminate. Returns 1 when the
/// slowest mode is itself a population mode.
double asymptotic_speedup(const SpectralDecomposition& dec);

}  // namespace mpemba
