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

#include <optional>
#include <vector>

#include "mpemba/core.hpp"
#include "mpemba/liouvillian.hpp"

namespace mpemba {

/// Zero-temperature Davies map with local pure dephasing, per qubit.
struct MarkovParams {
  double omega_q = 1.0;
  double gamma1 = 1.0;
  double gamma_phi = 1.0 / 6.0;

  void validate() const;
  double t1() const { return 1.0 / gamma1; }
  /// 1/T2 = gamma1/2 + gamma_phi.
  double t2() const { return 1.0 / (gamma1 / 2.0 + gamma_phi); }
  /// Parameters realizing the given (T1, T2); requires T2 <= 2 T1.
  static MarkovParams from_times(double t1, double t2, double omega_q = 1.0);
};

/// Finite-temperature Davies map: gamma_down = gamma (nbar + 1), gamma_up = gamma nbar.
struct ThermalParams {
  double omega = 1.0;
  double gamma = 1.0;
  double nbar = 0.0;
  double gamma_phi = 0.0;

  void validate() const;
  double gamma_down() const { return gamma * (nbar + 1.0); }
  double gamma_up() const { return gamma * nbar; }
  double t1() const { return 1.0 / (gamma * (2.0 * nbar + 1.0)); }
  double t2() const { return 1.0 / (0.5 / t1() + gamma_phi); }
  /// nbar / (2 nbar + 1)
  double excited_population() const { return nbar / (2.0 * nbar + 1.0); }
};

/// Qubit coupled through sigma_z (x) sigma_x to a damped two-level defect.
struct EmbeddingParams {
  double omega_q = 1.0;
  double omega_t = 1.0;
  double nu_zx = 0.0;
  double gamma1 = 1.0;
  double gamma_phi = 1.0 / 6.0;
  double kappa = 0.0;

  void validate() const;
  /// 4 nu^2 > kappa^2 / 16: the reduced qubit dynamics shows purity oscillations.
  bool non_markovian() const { return 4.0 * nu_zx * nu_zx > kappa * kappa / 16.0; }
  MarkovParams markov() const { return {omega_q, gamma1, gamma_phi}; }
};

LindbladSpec single_qubit_markovian(const MarkovParams& p);
/// H = omega_q (Z1 + Z2); sigma_- on each qubit at gamma1; sigma_z at gamma_phi / 2.
LindbladSpec two_qubit_markovian(const MarkovParams& p);

LindbladSpec single_qubit_thermal(const ThermalParams& p);
LindbladSpec two_qubit_thermal(const ThermalParams& p);
/// 2 (2 nbar + 1) / ((2 nbar + 1) + 2 gamma_phi / gamma), bounded by 2.
double thermal_speedup(const ThermalParams& p);

/// Qubit(s) plus one defect each. Subsystem order: qubits first, then the
/// defects in the same order, i.e. (q) (TLS) or (q1, q2, TLS1, TLS2).
LindbladSpec embedding_model(const EmbeddingParams& p, int n_qubits);

/// Time-dependent reduced generator obtained by tracing out the defect:
/// a Davies map whose sigma_z dissipator rate oscillates and relaxes back to
/// gamma_phi / 2. With n_qubits = 2 the two qubits carry identical,
/// independent generators.
class RedfieldGenerator {
 public:
  RedfieldGenerator(const EmbeddingParams& p, int n_qubits = 1);

  /// gamma_phi/2 + nu^2/(kappa^2/4 + 4 w_t^2) [-kappa e^{-kappa t}
  ///   + e^{-kappa t/2} (kappa cos 2 w_t t + 4 w_t sin 2 w_t t)]
  double dephasing_rate(double t) const;
  Superoperator operator()(double t) const;

  int dim() const { return static_cast<int>(static_part_.dim); }
  const Dims& dims() const { return static_part_.dims; }
  /// Largest angular frequency present in the generated dynamics.
  double max_frequency() const;
  /// Largest relaxation rate, used to bound integrator steps.
  double rate_scale() const;
  const EmbeddingParams& params() const { return params_; }

 private:
  EmbeddingParams params_;
  int n_qubits_;
  Superoperator static_part_;
  ComplexMatrix dephasing_part_;
};

RedfieldGenerator redfield_generator(const EmbeddingParams& p, int n_qubits = 1);

/// Closed-form |Re lambda_3(t)| / |Re lambda_2(t)| of the reduced generator.
double redfield_speedup(double t, const EmbeddingParams& p);

struct EmbeddingSpeedup {
  double fourth_order = 0.0;
  /// (T2/T1) / (1 + kappa T2 / 2)
  double simplified = 0.0;
};
EmbeddingSpeedup embedding_speedup(const EmbeddingParams& p);

/// Coherence factor Lambda(t) of the reduced dynamics; `delta` defaults to
/// |omega_q - omega_t|.
Complex redfield_coherence_factor(double t, const EmbeddingParams& p, std::optional<double> delta = {});
DensityMatrix analytic_redfield_state(double t, const DensityMatrix& rho0, const EmbeddingParams& p,
                                      std::optional<double> delta = {});
/// sqrt(|Lambda rho01|^2 + e^{-2 gamma1 t} rho11^2)
double analytic_redfield_distance(double t, const DensityMatrix& rho0, const EmbeddingParams& p,
                                  std::optional<double> delta = {});

/// Exponential T1/T2 relaxation of a single qubit toward |0>.
DensityMatrix t1t2_fit_model(double t, const DensityMatrix& rho0, double t1, double t2);

/// Eigenvalues of the single-pair embedding tracked from nu_zx = 0 to the
/// target coupling by nearest-neighbour continuation.
struct QubitModes {
  Complex population;         // continues -gamma1
  Complex coherence;          // continues -(gamma1/2 + gamma_phi) + 2i omega_q
  Complex dressed_coherence;  // continues -(gamma1/2 + gamma_phi + kappa/2) + 2i (omega_q - omega_t)
  /// |Re population| / |Re dressed_coherence|, the embedding speedup.
  double speedup() const { return population.real() / dressed_coherence.real(); }
};

/// Follows `seeds` (eigenvalues at nu_zx = 0) through `steps` equal coupling
/// increments. Throws NumericalError if a seed is not an eigenvalue at nu_zx = 0.
std::vector<Complex> continue_embedding_modes(const EmbeddingParams& p, const std::vector<Complex>& seeds,
                                              int steps = 10);
QubitModes embedding_qubit_modes(const EmbeddingParams& p, int steps = 10);

}  // namespace mpemba
