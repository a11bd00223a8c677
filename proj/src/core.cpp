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

#include "mpemba/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace mpemba {

namespace ops {

ComplexMatrix identity(int d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix sigma_minus() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  return m;
}

ComplexMatrix sigma_plus() { return sigma_minus().adjoint(); }

ComplexMatrix rx(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  ComplexMatrix m(2, 2);
  m << c, -kI * s, -kI * s, c;
  return m;
}

ComplexMatrix ry(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  ComplexMatrix m(2, 2);
  m << c, -s, s, c;
  return m;
}

ComplexMatrix embed(const ComplexMatrix& op, std::size_t site, const Dims& dims) {
  if (site >= dims.size()) throw DimensionError("embed: site index out of range");
  if (op.rows() != dims[site] || op.cols() != dims[site]) {
    throw DimensionError("embed: operator does not match subsystem dimension");
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < dims.size(); ++k) {
    out = kron(out, k == site ? op : identity(dims[k]));
  }
  return out;
}

}  // namespace ops

int total_dimension(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

namespace {

Dims normalize_dims(const Dims& dims, Eigen::Index d) {
  if (dims.empty()) return {static_cast<int>(d)};
  for (int n : dims) {
    if (n <= 0) throw DimensionError("subsystem dimensions must be positive");
  }
  if (total_dimension(dims) != d) {
    throw DimensionError("subsystem dimensions do not multiply to the matrix dimension");
  }
  return dims;
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": matrix must be square and non-empty");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat, Dims dims, Unchecked)
    : mat_(std::move(mat)), dims_(std::move(dims)) {}

DensityMatrix::DensityMatrix(ComplexMatrix mat, Dims dims) : mat_(std::move(mat)) {
  require_square(mat_, "DensityMatrix");
  dims_ = normalize_dims(dims, mat_.rows());
  if (!mat_.allFinite()) throw InvalidArgument("DensityMatrix: non-finite entries");
  const double herm = max_abs_entry(mat_ - mat_.adjoint());
  if (herm > kHermitianTol) {
    std::ostringstream msg;
    msg << "DensityMatrix: not Hermitian (deviation " << herm << ")";
    throw InvalidArgument(msg.str());
  }
  const Complex tr = mat_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace " << tr << " differs from 1";
    throw InvalidArgument(msg.str());
  }
  const double lo = min_hermitian_eigenvalue(mat_);
  if (lo < -kPsdTol) {
    std::ostringstream msg;
    msg << "DensityMatrix: negative eigenvalue " << lo;
    throw InvalidArgument(msg.str());
  }
}

DensityMatrix DensityMatrix::hermitized(const ComplexMatrix& mat, Dims dims, double tol,
                                        double psd_tol) {
  require_square(mat, "DensityMatrix::hermitized");
  dims = normalize_dims(dims, mat.rows());
  if (!mat.allFinite()) throw NumericalError("hermitized: non-finite entries");
  const double herm = max_abs_entry(mat - mat.adjoint()) / 2.0;
  if (herm > tol) {
    std::ostringstream msg;
    msg << "hermitized: anti-Hermitian part " << herm << " exceeds tolerance " << tol;
    throw NumericalError(msg.str());
  }
  ComplexMatrix sym = (mat + mat.adjoint()) / 2.0;
  const double tr = sym.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    std::ostringstream msg;
    msg << "hermitized: trace " << tr << " differs from 1 by more than " << tol;
    throw NumericalError(msg.str());
  }
  sym /= tr;
  const double lo = min_hermitian_eigenvalue(sym);
  if (lo < -psd_tol) {
    std::ostringstream msg;
    msg << "hermitized: negative eigenvalue " << lo;
    throw NumericalError(msg.str());
  }
  return DensityMatrix(std::move(sym), std::move(dims), Unchecked{});
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& psi, Dims dims) {
  const double n = psi.norm();
  if (n == 0.0) throw InvalidArgument("from_pure: zero vector");
  const ComplexVector u = psi / n;
  ComplexMatrix m = u * u.adjoint();
  m = (m + m.adjoint()) / 2.0;
  return DensityMatrix(std::move(m), std::move(dims));
}

DensityMatrix DensityMatrix::basis_state(int d, int index, Dims dims) {
  if (index < 0 || index >= d) throw InvalidArgument("basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m), std::move(dims));
}

DensityMatrix DensityMatrix::maximally_mixed(int d, Dims dims) {
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d), std::move(dims));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(dims), DensityMatrix::Unchecked{});
}

ComplexVector vectorize(const ComplexMatrix& m) {
  require_square(m, "vectorize");
  const Eigen::Index d = m.rows();
  ComplexVector v(d * d);
  for (Eigen::Index j = 0; j < d; ++j) v.segment(j * d, d) = m.col(j);
  return v;
}

VectorizedState vectorize(const DensityMatrix& rho) { return {vectorize(rho.matrix()), rho.dim()}; }

ComplexMatrix devectorize(const ComplexVector& v, int d) {
  if (d <= 0 || v.size() != static_cast<Eigen::Index>(d) * d) {
    throw DimensionError("devectorize: vector length is not d^2");
  }
  ComplexMatrix m(d, d);
  for (int j = 0; j < d; ++j) m.col(j) = v.segment(static_cast<Eigen::Index>(j) * d, d);
  return m;
}

ComplexMatrix devectorize(const VectorizedState& v) { return devectorize(v.vec, v.dim); }

ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, std::vector<std::size_t> keep) {
  require_square(m, "partial_trace");
  const Dims full = normalize_dims(dims, m.rows());
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.back() >= full.size()) throw DimensionError("partial_trace: invalid subsystem index");

  const std::size_t n = full.size();
  std::vector<bool> kept(n, false);
  for (std::size_t k : keep) kept[k] = true;

  int dk = 1;
  for (std::size_t k : keep) dk *= full[k];
  const int d = static_cast<int>(m.rows());

  // For each full index: its kept-subsystem index and traced-subsystem index.
  std::vector<int> kept_index(d), traced_index(d);
  for (int i = 0; i < d; ++i) {
    int rem = i, ki = 0, ti = 0, kstride = 1, tstride = 1;
    for (std::size_t s = n; s-- > 0;) {
      const int digit = rem % full[s];
      rem /= full[s];
      if (kept[s]) {
        ki += digit * kstride;
        kstride *= full[s];
      } else {
        ti += digit * tstride;
        tstride *= full[s];
      }
    }
    kept_index[i] = ki;
    traced_index[i] = ti;
  }

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  ComplexMatrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  Dims dims;
  for (std::size_t k : keep) dims.push_back(rho.dims()[k]);
  return DensityMatrix(std::move(reduced), std::move(dims), DensityMatrix::Unchecked{});
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("trace_distance: dimension mismatch");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a - b);
  return 0.5 * svd.singularValues().sum();
}

double hermitian_half_trace_norm(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace_distance: dimension mismatch");
  return hermitian_half_trace_norm(a.matrix() - b.matrix());
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double l1_coherence(const ComplexMatrix& m) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) sum += std::abs(m(i, j));
    }
  }
  return sum;
}

double l1_coherence(const DensityMatrix& rho) { return l1_coherence(rho.matrix()); }

ComplexMatrix matrix_exponential(const ComplexMatrix& m) {
  require_square(m, "matrix_exponential");
  return m.exp();
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs_entry(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())) <= tol;
}

}  // namespace mpemba
