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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mpemba/experiments.hpp"

namespace mpemba {

namespace {

ComplexMatrix random_matrix(std::mt19937_64& g, int d) {
  std::normal_distribution<double> n;
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = Complex(n(g), n(g));
  }
  return m;
}

DensityMatrix random_state(std::mt19937_64& g, Dims dims) {
  const int d = total_dimension(dims);
  const ComplexMatrix a = random_matrix(g, d);
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::hermitized(rho, std::move(dims));
}

ComplexMatrix dissipator(const ComplexMatrix& l, const ComplexMatrix& rho) {
  const ComplexMatrix ldl = l.adjoint() * l;
  return l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
}

ValidationCheck make(std::string name, double dev, double tol) { return {std::move(name), dev <= tol, dev, tol}; }

ValidationCheck check_liouvillian(std::mt19937_64& g) {
  const LindbladSpec spec = two_qubit_markovian({1.3, 0.7, 0.25});
  const Superoperator l = build_liouvillian(spec);
  double dev = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix rho = random_state(g, {2, 2}).matrix();
    ComplexMatrix rhs = -kI * (spec.hamiltonian * rho - rho * spec.hamiltonian);
    for (const auto& j : spec.jumps) rhs += j.rate * dissipator(j.op, rho);
    dev = std::max(dev, max_abs_entry(l.apply(rho) - rhs));
  }
  return make("liouvillian_vs_direct_rhs", dev, 1e-12);
}

ValidationCheck check_vectorization(std::mt19937_64& g) {
  double dev = 0.0;
  for (int d : {2, 3, 4}) {
    const ComplexMatrix a = random_matrix(g, d);
    const ComplexMatrix x = random_matrix(g, d);
    const ComplexMatrix b = random_matrix(g, d);
    const ComplexVector lhs = vectorize(ComplexMatrix(a * x * b));
    const ComplexVector rhs = kron(b.transpose(), a) * vectorize(x);
    dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
    dev = std::max(dev, max_abs_entry(devectorize(vectorize(x), d) - x));
  }
  return make("vectorization_identity", dev, 1e-12);
}

std::vector<ValidationCheck> check_backends(std::mt19937_64& g) {
  const Superoperator l = build_liouvillian(two_qubit_markovian({1.0, 1.0, 1.0 / 6.0}));
  const SpectralDecomposition dec = spectral_decompose(l);
  const std::vector<double> grid{0.0, 0.1, 0.5, 1.0, 3.0, 7.0};
  double spec_dev = 0.0;
  double rk_dev = 0.0;
  IntegratorOptions opts;
  opts.verify_step = false;
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = random_state(g, {2, 2});
    const auto rk = propagate_time_dependent(constant_generator(l), rho, grid, opts);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const ComplexMatrix ex = propagate_expm(l, rho, grid[i]).matrix();
      spec_dev = std::max(spec_dev, max_abs_entry(propagate(dec, rho, grid[i]).matrix() - ex));
      rk_dev = std::max(rk_dev, max_abs_entry(rk[i].matrix() - ex));
    }
  }
  return {make("propagation_spectral_vs_expm", spec_dev, 1e-8), make("propagation_integrator_vs_expm", rk_dev, 1e-8)};
}

ValidationCheck check_kappa(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double dev = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / 20.0;
    for (int j = 0; j < 20; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / 20.0;
      for (int k = 0; k < 10; ++k) {
        const double r = -1.0 + 2.0 * k / 9.0;
        const double nx = u(g), ny = u(g), nz = u(g);
        const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
        const ControlledGate gate{ops::identity(2), relative_unitary(phi, theta, nx, ny, nz)};
        const AncillaState anc{(1.0 + r) / 2.0, 0.0};
        dev = std::max(dev, std::abs(kappa(anc, gate) - kappa_bloch(phi, theta, nz / norm, r)));
      }
    }
  }
  return make("kappa_bloch_vs_direct_trace", dev, 1e-12);
}

std::vector<ValidationCheck> check_redfield() {
  const EmbeddingParams p{1.0, 2.0, 0.6, 1.0, 1.0 / 6.0, 0.3};
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.1 * i);
  double dev_state = 0.0;
  double dev_dist = 0.0;
  const DensityMatrix ground = DensityMatrix::basis_state(2, 0, {2});
  for (const auto& [theta, phi] : {std::pair{1.1, 0.4}, std::pair{2.5, 4.0}, std::pair{0.3, 2.2}}) {
    const DensityMatrix rho0 = bloch_state(theta, phi);
    const auto states = propagate_time_dependent(time_dependent(RedfieldGenerator(p)), rho0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      dev_state = std::max(dev_state, max_abs_entry(states[i].matrix() -
                                                    analytic_redfield_state(grid[i], rho0, p).matrix()));
      dev_dist = std::max(dev_dist,
                          std::abs(trace_distance(states[i], ground) - analytic_redfield_distance(grid[i], rho0, p)));
    }
  }
  return {make("redfield_closed_form_state_vs_integrator", dev_state, 1e-8),
          make("redfield_closed_form_distance_vs_trace_distance", dev_dist, 1e-8)};
}

ValidationCheck check_steady_state() {
  LindbladSpec spec;
  spec.hamiltonian = ComplexMatrix::Zero(2, 2);
  spec.jumps.push_back({ops::sigma_minus(), 0.7});
  spec.jumps.push_back({ops::sigma_plus(), 0.7});
  spec.dims = {2};
  const Superoperator l = build_liouvillian(spec);
  Eigen::FullPivLU<ComplexMatrix> lu(l.matrix);
  ComplexMatrix k = lu.kernel();
  double dev = 1.0;
  if (k.cols() == 1) {
    const ComplexMatrix null = devectorize(ComplexVector(k.col(0)), 2);
    const ComplexMatrix ref = null / null.trace();
    dev = max_abs_entry(steady_state(spectral_decompose(l)).matrix() - ref);
  }
  return make("steady_state_vs_null_space", dev, 1e-10);
}

ValidationCheck check_partial_trace(std::mt19937_64& g) {
  const DensityMatrix a = random_state(g, {2});
  const DensityMatrix b = random_state(g, {3});
  const DensityMatrix ab = tensor(a, b);
  const double dev = std::max(max_abs_entry(partial_trace(ab, {0}).matrix() - a.matrix()),
                              max_abs_entry(partial_trace(ab, {1}).matrix() - b.matrix()));
  return make("partial_trace_of_product", dev, 1e-12);
}

}  // namespace

std::vector<ValidationCheck> run_validation() {
  std::mt19937_64 g(20260101);
  std::vector<ValidationCheck> out;
  out.push_back(check_liouvillian(g));
  out.push_back(check_vectorization(g));
  for (auto& c : check_backends(g)) out.push_back(std::move(c));
  out.push_back(check_kappa(g));
  for (auto& c : check_redfield()) out.push_back(std::move(c));
  out.push_back(check_steady_state());
  out.push_back(check_partial_trace(g));
  return out;
}

}  // namespace mpemba
