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

#include "mpemba/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mpemba {

void LindbladSpec::validate() const {
  if (hamiltonian.rows() == 0 || hamiltonian.rows() != hamiltonian.cols()) {
    throw DimensionError("LindbladSpec: Hamiltonian must be square and non-empty");
  }
  if (max_abs_entry(hamiltonian - hamiltonian.adjoint()) > 1e-12) {
    throw InvalidArgument("LindbladSpec: Hamiltonian is not Hermitian");
  }
  if (!dims.empty() && total_dimension(dims) != dim()) {
    throw DimensionError("LindbladSpec: subsystem dimensions do not match the Hamiltonian");
  }
  for (const JumpTerm& j : jumps) {
    if (j.op.rows() != dim() || j.op.cols() != dim()) {
      throw DimensionError("LindbladSpec: jump operator dimension differs from the Hamiltonian");
    }
    if (!(j.rate >= 0.0) || !std::isfinite(j.rate)) {
      throw InvalidArgument("LindbladSpec: jump rates must be finite and non-negative");
    }
  }
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
  return devectorize(ComplexVector(matrix * vectorize(rho)), dim);
}

Superoperator build_liouvillian(const LindbladSpec& spec) {
  spec.validate();
  const int d = spec.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix& h = spec.hamiltonian;

  ComplexMatrix l = -kI * kron(id, h) + kI * kron(h.transpose(), id);
  for (const JumpTerm& j : spec.jumps) {
    if (j.rate == 0.0) continue;
    const ComplexMatrix ldl = j.op.adjoint() * j.op;
    l += j.rate * (kron(j.op.conjugate(), j.op) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
  }
  Dims dims = spec.dims.empty() ? Dims{d} : spec.dims;
  return Superoperator{std::move(l), d, std::move(dims)};
}

std::vector<Complex> eigenvalues(const Superoperator& l) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(l.matrix, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalues: eigensolver did not converge");
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

namespace {

double tie_tol(double x) { return 1e-9 * std::max(1.0, std::abs(x)); }

// Rotates v so its first largest-magnitude entry is real and positive.
void fix_phase(Eigen::Ref<ComplexVector> v) {
  const double big = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= big * (1.0 - 1e-9)) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return;
    }
  }
}

bool lex_less(const ComplexVector& a, const ComplexVector& b) {
  auto q = [](double x) { return std::llround(x * 1e9); };
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const auto ar = q(a[i].real()), br = q(b[i].real());
    if (ar != br) return ar < br;
    const auto ai = q(a[i].imag()), bi = q(b[i].imag());
    if (ai != bi) return ai < bi;
  }
  return false;
}

// Splits [first, last) of an index list into runs whose key differs by less
// than the tie tolerance from the previous element.
template <typename Key>
std::vector<std::pair<std::size_t, std::size_t>> tie_runs(const std::vector<std::size_t>& idx,
                                                         std::size_t first, std::size_t last,
                                                         Key key) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t start = first;
  for (std::size_t p = first + 1; p <= last; ++p) {
    if (p == last || std::abs(key(idx[p]) - key(idx[p - 1])) > tie_tol(key(idx[p - 1]))) {
      runs.emplace_back(start, p);
      start = p;
    }
  }
  return runs;
}

std::vector<std::size_t> sorted_order(const ComplexVector& lambda, const ComplexMatrix& vecs) {
  const std::size_t n = static_cast<std::size_t>(lambda.size());
  std::vector<std::size_t> zero, rest;
  for (std::size_t k = 0; k < n; ++k) {
    (std::abs(lambda[k]) < kZeroEigenvalueTol ? zero : rest).push_back(k);
  }
  std::sort(zero.begin(), zero.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(lambda[a]) < std::abs(lambda[b]); });

  auto abs_re = [&](std::size_t k) { return std::abs(lambda[k].real()); };
  auto abs_im = [&](std::size_t k) { return std::abs(lambda[k].imag()); };
  auto by_vector = [&](std::size_t a, std::size_t b) {
    return lex_less(vecs.col(a), vecs.col(b));
  };
  std::stable_sort(rest.begin(), rest.end(),
                   [&](std::size_t a, std::size_t b) { return abs_re(a) < abs_re(b); });

  std::vector<std::size_t> out = zero;
  for (auto [b, e] : tie_runs(rest, 0, rest.size(), abs_re)) {
    std::vector<std::size_t> run(rest.begin() + b, rest.begin() + e);
    std::stable_sort(run.begin(), run.end(),
                     [&](std::size_t x, std::size_t y) { return abs_im(x) < abs_im(y); });
    for (auto [ib, ie] : tie_runs(run, 0, run.size(), abs_im)) {
      std::vector<std::size_t> neg, real, pos;
      for (std::size_t p = ib; p < ie; ++p) {
        const double im = lambda[run[p]].imag();
        (std::abs(im) <= tie_tol(im) ? real : (im < 0 ? neg : pos)).push_back(run[p]);
      }
      std::sort(real.begin(), real.end(), by_vector);
      std::sort(neg.begin(), neg.end(), by_vector);
      std::sort(pos.begin(), pos.end(), by_vector);
      out.insert(out.end(), real.begin(), real.end());
      const std::size_t m = std::max(neg.size(), pos.size());
      for (std::size_t i = 0; i < m; ++i) {
        if (i < neg.size()) out.push_back(neg[i]);
        if (i < pos.size()) out.push_back(pos[i]);
      }
    }
  }
  return out;
}

Complex vec_trace(const ComplexVector& v, int d) {
  Complex tr = 0.0;
  for (int i = 0; i < d; ++i) tr += v[i + static_cast<Eigen::Index>(d) * i];
  return tr;
}

// Left vectors from the inverse of the right-vector matrix; used when pairing
// through the adjoint eigenproblem breaks down.
ComplexMatrix left_from_inverse(const ComplexMatrix& right) {
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(right);
  return ComplexMatrix(cod.pseudoInverse()).adjoint();
}

}  // namespace

SpectralDecomposition spectral_decompose(const Superoperator& l) {
  const Eigen::Index n = l.matrix.rows();
  if (n == 0 || n != l.matrix.cols()) throw DimensionError("spectral_decompose: square input required");
  if (!l.matrix.allFinite()) throw NumericalError("spectral_decompose: non-finite generator");

  Eigen::ComplexEigenSolver<ComplexMatrix> right_es(l.matrix, true);
  if (right_es.info() != Eigen::Success) {
    throw NumericalError("spectral_decompose: eigensolver failed on the generator");
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> left_es(l.matrix.adjoint(), true);
  if (left_es.info() != Eigen::Success) {
    throw NumericalError("spectral_decompose: eigensolver failed on the adjoint generator");
  }

  ComplexVector lambda = right_es.eigenvalues();
  ComplexMatrix vecs = right_es.eigenvectors();
  if (!lambda.allFinite() || !vecs.allFinite()) {
    throw NumericalError("spectral_decompose: eigensolver returned non-finite values");
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    vecs.col(k).normalize();
    fix_phase(vecs.col(k));
  }
  const std::vector<std::size_t> order = sorted_order(lambda, vecs);

  SpectralDecomposition dec;
  dec.dim = l.dim;
  dec.dims = l.dims;
  dec.eigenvalues.resize(n);
  dec.right.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    dec.eigenvalues[k] = lambda[order[k]];
    dec.right.col(k) = vecs.col(order[k]);
  }

  {
    Eigen::JacobiSVD<ComplexMatrix> svd(dec.right);
    const auto& s = svd.singularValues();
    const double smin = s[s.size() - 1];
    dec.condition_number = smin > 0.0 ? s[0] / smin : std::numeric_limits<double>::infinity();
    dec.defective = !(dec.condition_number <= kDefectiveCondition);
  }

  // Steady-state candidate carries unit trace; its dual is then vec(identity).
  if (std::abs(dec.eigenvalues[0]) < kZeroEigenvalueTol) {
    const Complex tr = vec_trace(dec.right.col(0), l.dim);
    if (std::abs(tr) > 1e-12) dec.right.col(0) /= tr;
  }

  // Pair left vectors cluster by cluster and biorthonormalize inside each
  // (degenerate) cluster.
  const ComplexVector& mu = left_es.eigenvalues();
  const ComplexMatrix& wvecs = left_es.eigenvectors();
  dec.left.resize(n, n);
  std::vector<bool> right_done(n, false), left_used(n, false);
  bool pairing_ok = true;
  for (Eigen::Index k = 0; k < n && pairing_ok; ++k) {
    if (right_done[k]) continue;
    std::vector<Eigen::Index> cluster{k};
    right_done[k] = true;
    for (std::size_t c = 0; c < cluster.size(); ++c) {
      const Complex lc = dec.eigenvalues[cluster[c]];
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!right_done[j] && std::abs(dec.eigenvalues[j] - lc) <= kPairingTol * std::max(1.0, std::abs(lc))) {
          right_done[j] = true;
          cluster.push_back(j);
        }
      }
    }
    std::vector<Eigen::Index> partners;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (left_used[i]) continue;
      for (Eigen::Index j : cluster) {
        const Complex lj = dec.eigenvalues[j];
        if (std::abs(std::conj(mu[i]) - lj) <= kPairingTol * std::max(1.0, std::abs(lj))) {
          partners.push_back(i);
          left_used[i] = true;
          break;
        }
      }
    }
    if (partners.size() != cluster.size()) {
      pairing_ok = false;
      break;
    }
    const Eigen::Index m = static_cast<Eigen::Index>(cluster.size());
    ComplexMatrix rc(n, m), wc(n, m);
    for (Eigen::Index c = 0; c < m; ++c) {
      rc.col(c) = dec.right.col(cluster[c]);
      wc.col(c) = wvecs.col(partners[c]);
    }
    const ComplexMatrix gram = wc.adjoint() * rc;
    Eigen::FullPivLU<ComplexMatrix> lu(gram);
    if (!lu.isInvertible() || lu.rcond() < 1.0 / kDefectiveCondition) {
      pairing_ok = false;
      break;
    }
    const ComplexMatrix lc = wc * ComplexMatrix(lu.inverse()).adjoint();
    for (Eigen::Index c = 0; c < m; ++c) dec.left.col(cluster[c]) = lc.col(c);
  }
  if (!pairing_ok) {
    dec.defective = true;
    dec.left = left_from_inverse(dec.right);
  }
  if (!dec.left.allFinite()) throw NumericalError("spectral_decompose: left eigenvectors are not finite");
  return dec;
}

DensityMatrix steady_state(const SpectralDecomposition& dec) {
  std::size_t zeros = 0;
  for (const Complex& z : dec.eigenvalues) {
    if (std::abs(z) < kZeroEigenvalueTol) ++zeros;
  }
  if (zeros == 0) throw NumericalError("steady_state: no zero eigenvalue (|lambda| < 1e-9)");
  if (zeros > 1) {
    std::ostringstream msg;
    msg << "steady_state: zero eigenvalue has multiplicity " << zeros << "; steady state not unique";
    throw NumericalError(msg.str());
  }
  ComplexMatrix rho = devectorize(ComplexVector(dec.right.col(0)), dec.dim);
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12) throw NumericalError("steady_state: zero mode is traceless");
  rho /= tr;
  return DensityMatrix::hermitized(rho, dec.dims, 1e-8);
}

Complex overlap(const VectorizedState& left, const DensityMatrix& rho) {
  if (left.dim != rho.dim()) throw DimensionError("overlap: dimension mismatch");
  return left.vec.dot(vectorize(rho.matrix()));
}

std::vector<std::vector<std::size_t>> decay_groups(const SpectralDecomposition& dec) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < dec.size(); ++k) {
    const double re = dec.eigenvalues[k].real();
    const bool zero = std::abs(dec.eigenvalues[k]) < kZeroEigenvalueTol;
    if (!groups.empty()) {
      const std::size_t prev = groups.back().front();
      const bool prev_zero = std::abs(dec.eigenvalues[prev]) < kZeroEigenvalueTol;
      const double pre = dec.eigenvalues[prev].real();
      if (zero == prev_zero && std::abs(re - pre) <= 1e-8 * std::max(1.0, std::abs(pre))) {
        groups.back().push_back(k);
        continue;
      }
    }
    groups.push_back({k});
  }
  return groups;
}

double mode_amplitude(const SpectralDecomposition& dec, const std::vector<std::size_t>& modes,
                      const ComplexMatrix& rho) {
  if (rho.rows() != dec.dim) throw DimensionError("mode_amplitude: dimension mismatch");
  const ComplexVector v = vectorize(rho);
  ComplexVector proj = ComplexVector::Zero(v.size());
  for (std::size_t k : modes) proj += dec.right.col(k) * dec.left.col(k).dot(v);
  return trace_distance(devectorize(proj, dec.dim), ComplexMatrix::Zero(dec.dim, dec.dim));
}

std::optional<PopulatedMode> slowest_populated_mode(const SpectralDecomposition& dec,
                                                    const ComplexMatrix& rho, double threshold) {
  const auto groups = decay_groups(dec);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::size_t k = groups[g].front();
    if (std::abs(dec.eigenvalues[k]) < kZeroEigenvalueTol) continue;
    const double amp = mode_amplitude(dec, groups[g], rho);
    if (amp > threshold) return PopulatedMode{std::abs(dec.eigenvalues[k].real()), amp, g};
  }
  return std::nullopt;
}

bool is_population_mode(const SpectralDecomposition& dec, std::size_t k) {
  const ComplexMatrix m = devectorize(ComplexVector(dec.right.col(k)), dec.dim);
  const double diag = m.diagonal().squaredNorm();
  return diag >= m.squaredNorm() - diag;
}

double asymptotic_speedup(const SpectralDecomposition& dec) {
  if (dec.size() < 3) throw InvalidArgument("asymptotic_speedup: need at least three eigenvalues");
  const auto groups = decay_groups(dec);
  if (groups.size() < 2) throw NumericalError("asymptotic_speedup: spectrum has no decaying mode");
  const Complex l2 = dec.eigenvalues[groups[1].front()];
  if (std::abs(l2.real()) < kZeroEigenvalueTol) {
    throw NumericalError("asymptotic_speedup: Re(lambda_2) = 0, no decay");
  }
  for (std::size_t g = 1; g < groups.size(); ++g) {
    for (std::size_t k : groups[g]) {
      if (is_population_mode(dec, k)) return dec.eigenvalues[k].real() / l2.real();
    }
  }
  throw NumericalError("asymptotic_speedup: no population mode in the spectrum");
}

}  // namespace mpemba
