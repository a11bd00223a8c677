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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "mpemba/errors.hpp"

namespace mpemba {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
/// Subsystem dimensions, first entry = most significant tensor factor.
using Dims = std::vector<int>;

inline constexpr Complex kI{0.0, 1.0};

namespace ops {
ComplexMatrix identity(int d);
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
/// diag(1, -1) in the {|0>, |1>} basis.
ComplexMatrix sigma_z();
/// |0><1|: lowers |1> to the ground state |0>.
ComplexMatrix sigma_minus();
ComplexMatrix sigma_plus();
/// exp(-i angle X / 2)
ComplexMatrix rx(double angle);
/// exp(-i angle Y / 2); ry(pi) = [[0, -1], [1, 0]].
ComplexMatrix ry(double angle);
/// Places `op` on subsystem `site`, identities elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, std::size_t site, const Dims& dims);
}  // namespace ops

int total_dimension(const Dims& dims);

/// Hermitian, unit-trace, positive semidefinite matrix with a subsystem layout.
///
/// Construction validates the invariants; every instance is a physical state
/// up to the stated tolerances.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPsdTol = 1e-10;

  /// Validates `mat`. An empty `dims` means a single subsystem of full size.
  explicit DensityMatrix(ComplexMatrix mat, Dims dims = {});

  /// Symmetrizes and renormalizes `mat` before validation. Rejects inputs
  /// whose anti-Hermitian part or trace defect exceeds `tol`, and inputs with
  /// eigenvalues below -`psd_tol`.
  static DensityMatrix hermitized(const ComplexMatrix& mat, Dims dims = {}, double tol = 1e-9,
                                  double psd_tol = 1e-9);
  static DensityMatrix from_pure(const ComplexVector& psi, Dims dims = {});
  /// |index><index| in dimension d.
  static DensityMatrix basis_state(int d, int index, Dims dims = {});
  static DensityMatrix maximally_mixed(int d, Dims dims = {});

  const ComplexMatrix& matrix() const { return mat_; }
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix mat, Dims dims, Unchecked);

  ComplexMatrix mat_;
  Dims dims_;

  friend DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
  friend DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep);
};

/// |rho>> of a d x d operator, column stacked: vec[i + d*j] = rho(i, j).
struct VectorizedState {
  ComplexVector vec;
  int dim = 0;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// rho_a (x) rho_b with concatenated subsystem layouts.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

VectorizedState vectorize(const DensityMatrix& rho);
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix devectorize(const VectorizedState& v);
ComplexMatrix devectorize(const ComplexVector& v, int d);

/// Reduced state on the subsystems listed in `keep` (order-insensitive).
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, std::vector<std::size_t> keep);

/// Half the trace norm of a - b (sum of singular values).
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
/// Half the trace norm of a Hermitian matrix, via its eigenvalues.
double hermitian_half_trace_norm(const ComplexMatrix& m);

double purity(const DensityMatrix& rho);
/// Sum of |rho_ij| over i != j in the computational basis.
double l1_coherence(const DensityMatrix& rho);
double l1_coherence(const ComplexMatrix& m);

ComplexMatrix matrix_exponential(const ComplexMatrix& m);

double min_hermitian_eigenvalue(const ComplexMatrix& m);
double max_abs_entry(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-12);

}  // namespace mpemba
