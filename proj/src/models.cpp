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

#include "mpemba/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mpemba {

namespace {

void require_nonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    std::ostringstream msg;
    msg << name << " must be finite and nonnegative, got " << v;
    throw InvalidArgument(msg.str());
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << name << " must be finite, got " << v;
    throw InvalidArgument(msg.str());
  }
}

// Davies terms for `n` identical qubits occupying sites 0..n-1 of `dims`.
void add_qubit_terms(LindbladSpec& spec, int n, double omega, double down, double up, double dephasing) {
  for (int q = 0; q < n; ++q) {
    const auto site = static_cast<std::size_t>(q);
    spec.hamiltonian += omega * ops::embed(ops::sigma_z(), site, spec.dims);
    if (down > 0.0) spec.jumps.push_back({ops::embed(ops::sigma_minus(), site, spec.dims), down});
    if (up > 0.0) spec.jumps.push_back({ops::embed(ops::sigma_plus(), site, spec.dims), up});
    if (dephasing > 0.0) spec.jumps.push_back({ops::embed(ops::sigma_z(), site, spec.dims), dephasing});
  }
}

LindbladSpec empty_spec(Dims dims) {
  LindbladSpec spec;
  spec.dims = std::move(dims);
  const int d = total_dimension(spec.dims);
  spec.hamiltonian = ComplexMatrix::Zero(d, d);
  return spec;
}

LindbladSpec markovian(const MarkovParams& p, int n) {
  p.validate();
  LindbladSpec spec = empty_spec(Dims(static_cast<std::size_t>(n), 2));
  add_qubit_terms(spec, n, p.omega_q, p.gamma1, 0.0, p.gamma_phi / 2.0);
  return spec;
}

LindbladSpec thermal(const ThermalParams& p, int n) {
  p.validate();
  LindbladSpec spec = empty_spec(Dims(static_cast<std::size_t>(n), 2));
  add_qubit_terms(spec, n, p.omega, p.gamma_down(), p.gamma_up(), p.gamma_phi / 2.0);
  return spec;
}

}  // namespace

void MarkovParams::validate() const {
  require_finite(omega_q, "omega_q");
  require_nonnegative(gamma1, "gamma1");
  require_nonnegative(gamma_phi, "gamma_phi");
}

MarkovParams MarkovParams::from_times(double t1, double t2, double omega_q) {
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw InvalidArgument("from_times: T1 and T2 must be positive");
  const double gamma_phi = 1.0 / t2 - 0.5 / t1;
  if (gamma_phi < -1e-12 * (1.0 / t2)) {
    std::ostringstream msg;
    msg << "from_times: T2 = " << t2 << " exceeds 2 T1 = " << 2.0 * t1;
    throw InvalidArgument(msg.str());
  }
  MarkovParams p{omega_q, 1.0 / t1, std::max(gamma_phi, 0.0)};
  p.validate();
  return p;
}

void ThermalParams::validate() const {
  require_finite(omega, "omega");
  require_nonnegative(gamma, "gamma");
  require_nonnegative(nbar, "nbar");
  require_nonnegative(gamma_phi, "gamma_phi");
}

void EmbeddingParams::validate() const {
  require_finite(omega_q, "omega_q");
  require_finite(omega_t, "omega_t");
  require_nonnegative(nu_zx, "nu_zx");
  require_nonnegative(gamma1, "gamma1");
  require_nonnegative(gamma_phi, "gamma_phi");
  require_nonnegative(kappa, "kappa");
}

LindbladSpec single_qubit_markovian(const MarkovParams& p) { return markovian(p, 1); }
LindbladSpec two_qubit_markovian(const MarkovParams& p) { return markovian(p, 2); }
LindbladSpec single_qubit_thermal(const ThermalParams& p) { return thermal(p, 1); }
LindbladSpec two_qubit_thermal(const ThermalParams& p) { return thermal(p, 2); }

double thermal_speedup(const ThermalParams& p) {
  p.validate();
  if (p.gamma == 0.0) throw InvalidArgument("thermal_speedup: gamma must be positive");
  const double a = 2.0 * p.nbar + 1.0;
  return 2.0 * a / (a + 2.0 * p.gamma_phi / p.gamma);
}

LindbladSpec embedding_model(const EmbeddingParams& p, int n_qubits) {
  p.validate();
  if (n_qubits != 1 && n_qubits != 2) throw InvalidArgument("embedding_model: n_qubits must be 1 or 2");
  LindbladSpec spec = empty_spec(Dims(static_cast<std::size_t>(2 * n_qubits), 2));
  add_qubit_terms(spec, n_qubits, p.omega_q, p.gamma1, 0.0, p.gamma_phi / 2.0);
  for (int q = 0; q < n_qubits; ++q) {
    const auto qs = static_cast<std::size_t>(q);
    const auto ts = static_cast<std::size_t>(q + n_qubits);
    spec.hamiltonian += p.omega_t * ops::embed(ops::sigma_z(), ts, spec.dims);
    spec.hamiltonian +=
        p.nu_zx * ops::embed(ops::sigma_z(), qs, spec.dims) * ops::embed(ops::sigma_x(), ts, spec.dims);
    if (p.kappa > 0.0) spec.jumps.push_back({ops::embed(ops::sigma_minus(), ts, spec.dims), p.kappa});
  }
  return spec;
}

RedfieldGenerator::RedfieldGenerator(const EmbeddingParams& p, int n_qubits) : params_(p), n_qubits_(n_qubits) {
  p.validate();
  if (n_qubits != 1 && n_qubits != 2) throw InvalidArgument("redfield_generator: n_qubits must be 1 or 2");
  LindbladSpec base = empty_spec(Dims(static_cast<std::size_t>(n_qubits), 2));
  add_qubit_terms(base, n_qubits, p.omega_q, p.gamma1, 0.0, 0.0);
  static_part_ = build_liouvillian(base);

  LindbladSpec deph = empty_spec(base.dims);
  for (int q = 0; q < n_qubits; ++q) {
    deph.jumps.push_back({ops::embed(ops::sigma_z(), static_cast<std::size_t>(q), deph.dims), 1.0});
  }
  dephasing_part_ = build_liouvillian(deph).matrix;
}

double RedfieldGenerator::dephasing_rate(double t) const {
  const auto& p = params_;
  const double denom = p.kappa * p.kappa / 4.0 + 4.0 * p.omega_t * p.omega_t;
  double extra = 0.0;
  if (p.nu_zx != 0.0 && denom > 0.0) {
    const double w = 2.0 * p.omega_t * t;
    extra = p.nu_zx * p.nu_zx / denom *
            (-p.kappa * std::exp(-p.kappa * t) +
             std::exp(-p.kappa * t / 2.0) * (p.kappa * std::cos(w) + 4.0 * p.omega_t * std::sin(w)));
  }
  return p.gamma_phi / 2.0 + extra;
}

Superoperator RedfieldGenerator::operator()(double t) const {
  Superoperator l = static_part_;
  l.matrix += dephasing_rate(t) * dephasing_part_;
  return l;
}

double RedfieldGenerator::max_frequency() const {
  return std::max(2.0 * n_qubits_ * std::abs(params_.omega_q), 2.0 * std::abs(params_.omega_t));
}

double RedfieldGenerator::rate_scale() const {
  const auto& p = params_;
  const double denom = p.kappa * p.kappa / 4.0 + 4.0 * p.omega_t * p.omega_t;
  const double swing =
      denom > 0.0 ? p.nu_zx * p.nu_zx / denom * (2.0 * p.kappa + 4.0 * std::abs(p.omega_t)) : 0.0;
  return std::max({p.gamma1, p.gamma_phi + 2.0 * swing, p.kappa});
}

RedfieldGenerator redfield_generator(const EmbeddingParams& p, int n_qubits) {
  return RedfieldGenerator(p, n_qubits);
}

double redfield_speedup(double t, const EmbeddingParams& p) {
  p.validate();
  if (!(t >= 0.0)) throw InvalidArgument("redfield_speedup: t must be nonnegative");
  const double s = p.kappa * p.kappa + 16.0 * p.omega_t * p.omega_t;
  const double w = 2.0 * p.omega_t * t;
  const double h = std::exp(-p.kappa * t / 2.0);
  const double denom = -(p.gamma1 + 2.0 * p.gamma_phi) * s +
                       16.0 * p.nu_zx * p.nu_zx * h * (p.kappa * (h - std::cos(w)) - 4.0 * p.omega_t * std::sin(w));
  if (std::abs(denom) < 1e-14) throw NumericalError("redfield_speedup: vanishing denominator");
  return std::abs(2.0 * p.gamma1 * s) / std::abs(denom);
}

EmbeddingSpeedup embedding_speedup(const EmbeddingParams& p) {
  p.validate();
  if (p.omega_t == 0.0) throw InvalidArgument("embedding_speedup: omega_t must be nonzero");
  const double k = p.kappa;
  const double n2 = p.nu_zx * p.nu_zx;
  const double w2 = p.omega_t * p.omega_t;
  const double denom = k * k * k * n2 * n2 / (8.0 * w2 * w2 * w2) -
                       k * n2 * (k * k + 16.0 * n2) / (32.0 * w2 * w2) + k * n2 / (2.0 * w2) -
                       (p.gamma1 + 2.0 * p.gamma_phi + k);
  const double simple_denom = p.gamma1 + 2.0 * p.gamma_phi + k;
  if (std::abs(denom) < 1e-14 || simple_denom < 1e-14) {
    throw NumericalError("embedding_speedup: vanishing denominator");
  }
  return {std::abs(2.0 * p.gamma1) / std::abs(denom), 2.0 * p.gamma1 / simple_denom};
}

Complex redfield_coherence_factor(double t, const EmbeddingParams& p, std::optional<double> delta) {
  p.validate();
  const double d = delta.value_or(std::abs(p.omega_q - p.omega_t));
  const double s = p.kappa * p.kappa + 16.0 * p.omega_t * p.omega_t;
  if (s == 0.0) throw InvalidArgument("redfield_coherence_factor: kappa and omega_t both vanish");
  const double n2 = p.nu_zx * p.nu_zx;
  const Complex num = 16.0 * (1.0 + std::exp(-p.kappa * t)) * n2 +
                      t * Complex(p.gamma1 + 2.0 * p.gamma_phi, 4.0 * (p.omega_t - d)) * s -
                      32.0 * std::exp(-p.kappa * t / 2.0) * n2 * std::cos(2.0 * p.omega_t * t);
  return std::exp(-num / (2.0 * s));
}

DensityMatrix analytic_redfield_state(double t, const DensityMatrix& rho0, const EmbeddingParams& p,
                                      std::optional<double> delta) {
  if (rho0.dim() != 2) throw DimensionError("analytic_redfield_state: single-qubit state required");
  if (!(t >= 0.0)) throw InvalidArgument("analytic_redfield_state: t must be nonnegative");
  const Complex lam = redfield_coherence_factor(t, p, delta);
  const double decay = std::exp(-p.gamma1 * t);
  ComplexMatrix m(2, 2);
  m(1, 1) = decay * rho0(1, 1).real();
  m(0, 0) = 1.0 - m(1, 1).real();
  m(0, 1) = lam * rho0(0, 1);
  m(1, 0) = std::conj(m(0, 1));
  return DensityMatrix::hermitized(m, rho0.dims());
}

double analytic_redfield_distance(double t, const DensityMatrix& rho0, const EmbeddingParams& p,
                                  std::optional<double> delta) {
  if (rho0.dim() != 2) throw DimensionError("analytic_redfield_distance: single-qubit state required");
  const double c = std::abs(redfield_coherence_factor(t, p, delta) * rho0(0, 1));
  const double e = std::exp(-p.gamma1 * t) * rho0(1, 1).real();
  return std::sqrt(c * c + e * e);
}

DensityMatrix t1t2_fit_model(double t, const DensityMatrix& rho0, double t1, double t2) {
  if (rho0.dim() != 2) throw DimensionError("t1t2_fit_model: single-qubit state required");
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw InvalidArgument("t1t2_fit_model: T1 and T2 must be positive");
  ComplexMatrix m(2, 2);
  m(1, 1) = std::exp(-t / t1) * rho0(1, 1).real();
  m(0, 0) = 1.0 - m(1, 1).real();
  m(0, 1) = rho0(0, 1) * std::exp(-t / t2);
  m(1, 0) = std::conj(m(0, 1));
  return DensityMatrix::hermitized(m, rho0.dims());
}

namespace {

// Greedy nearest-neighbour matching of `targets` into `pool` without reuse.
std::vector<Complex> match_nearest(const std::vector<Complex>& targets, const std::vector<Complex>& pool) {
  std::vector<bool> used(pool.size(), false);
  std::vector<Complex> out;
  out.reserve(targets.size());
  for (const Complex& z : targets) {
    std::size_t best = pool.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(pool[i] - z);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best == pool.size()) throw NumericalError("continue_embedding_modes: ran out of eigenvalues");
    used[best] = true;
    out.push_back(pool[best]);
  }
  return out;
}

}  // namespace

std::vector<Complex> continue_embedding_modes(const EmbeddingParams& p, const std::vector<Complex>& seeds,
                                              int steps) {
  if (steps < 1) throw InvalidArgument("continue_embedding_modes: steps must be positive");
  EmbeddingParams q = p;
  q.nu_zx = 0.0;
  std::vector<Complex> tracked = match_nearest(seeds, eigenvalues(build_liouvillian(embedding_model(q, 1))));
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (std::abs(tracked[i] - seeds[i]) > 1e-8 * std::max(1.0, std::abs(seeds[i]))) {
      std::ostringstream msg;
      msg << "continue_embedding_modes: seed " << seeds[i] << " is not an eigenvalue of the decoupled model";
      throw NumericalError(msg.str());
    }
  }
  for (int s = 1; s <= steps; ++s) {
    q.nu_zx = p.nu_zx * static_cast<double>(s) / steps;
    tracked = match_nearest(tracked, eigenvalues(build_liouvillian(embedding_model(q, 1))));
  }
  return tracked;
}

QubitModes embedding_qubit_modes(const EmbeddingParams& p, int steps) {
  const double coh = p.gamma1 / 2.0 + p.gamma_phi;
  const std::vector<Complex> seeds{
      Complex(-p.gamma1, 0.0),
      Complex(-coh, 2.0 * p.omega_q),
      Complex(-coh - p.kappa / 2.0, 2.0 * (p.omega_q - p.omega_t)),
  };
  const auto out = continue_embedding_modes(p, seeds, steps);
  return {out[0], out[1], out[2]};
}

}  // namespace mpemba
