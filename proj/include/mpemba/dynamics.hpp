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
#include <functional>
#include <string>
#include <vector>

#include "mpemba/core.hpp"
#include "mpemba/liouvillian.hpp"
#include "mpemba/models.hpp"
#include "mpemba/protocol.hpp"

namespace mpemba {

/// Trace distance to the steady state sampled on a time grid.
struct TraceDistanceCurve {
  std::vector<double> times;
  std::vector<double> values;
  std::string meta;

  void validate() const;
};

/// rho_ss + sum_k e^{lambda_k t} <<l_k|rho0>> r_k. Throws NumericalError on a
/// defective decomposition.
DensityMatrix propagate(const SpectralDecomposition& dec, const DensityMatrix& rho0, double t);
/// e^{L t} vec(rho0).
DensityMatrix propagate_expm(const Superoperator& l, const DensityMatrix& rho0, double t);

/// A generator L(t) together with the scales that bound the integrator step.
struct TimeDependentGenerator {
  std::function<Superoperator(double)> at;
  int dim = 0;
  Dims dims;
  double max_frequency = 0.0;
  double rate_scale = 0.0;
};

TimeDependentGenerator constant_generator(const Superoperator& l);
TimeDependentGenerator time_dependent(const RedfieldGenerator& gen);

struct IntegratorOptions {
  /// 0 selects min(1e-3 / rate_scale, 2 pi / (40 max_frequency)), tightened
  /// further so the accumulated RK4 error over the grid stays near 1e-10.
  double max_step = 0.0;
  /// Repeat with half the step and require agreement below `halving_tol`.
  bool verify_step = true;
  double halving_tol = 1e-8;
};

/// Fixed-step RK4 on vec(rho). `t_grid` must start at 0 and increase.
std::vector<DensityMatrix> propagate_time_dependent(const TimeDependentGenerator& gen, const DensityMatrix& rho0,
                                                    const std::vector<double>& t_grid,
                                                    const IntegratorOptions& opts = {});

/// t = 0 followed by `n` log-spaced points over [lo, hi] * t1.
std::vector<double> default_time_grid(double t1 = 1.0, std::size_t n = 2000, double lo = 1e-3, double hi = 50.0);

enum class CrossingMode {
  kLast,   // smallest t* with D(t) < eps at every later sample
  kFirst,  // first sample below eps
};

/// Reset time from a sampled curve, log-linearly interpolated inside the
/// bracketing interval. Throws NumericalError when the curve ends above eps.
double reset_time(const TraceDistanceCurve& curve, double epsilon, CrossingMode mode = CrossingMode::kLast);

/// Exponential envelope A e^{-rate t} through the local maxima of a curve.
struct Envelope {
  double amplitude = 0.0;
  double rate = 0.0;
  std::size_t peaks = 0;

  double crossing(double epsilon) const;
};
Envelope envelope_fit(const TraceDistanceCurve& curve);

/// A Lindblad model prepared for repeated reset-time evaluation. Distances are
/// measured on the reduced state of the `observed` subsystems; the remaining
/// subsystems are traced out. Initial states are product states with the
/// unobserved subsystems in their ground state.
class ResetModel {
 public:
  ResetModel(const LindbladSpec& spec, std::vector<std::size_t> observed);

  const Superoperator& generator() const { return generator_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  const Dims& dims() const { return generator_.dims; }
  const std::vector<std::size_t>& observed() const { return observed_; }
  const ComplexMatrix& target() const { return target_; }

  /// rho1 (x) rho2 (x) |0...0><0...0| over the full register.
  DensityMatrix prepare(const DensityMatrix& rho1, const DensityMatrix& rho2) const;

  /// Reduced trace distance to the steady state at time t.
  double distance(const DensityMatrix& rho0, double t) const;
  TraceDistanceCurve curve(const DensityMatrix& rho0, const std::vector<double>& times) const;

  /// Expansion coefficients of rho0; feed to distance(coeffs, t) for repeated
  /// evaluation without re-projecting the state.
  ComplexVector coefficients(const DensityMatrix& rho0) const;
  double distance(const ComplexVector& coeffs, double t) const;

 private:

  Superoperator generator_;
  SpectralDecomposition spectrum_;
  std::vector<std::size_t> observed_;
  int reduced_dim_ = 0;
  ComplexMatrix target_;
  // Reduced images of the decaying right eigenvectors that survive the
  // partial trace, with their eigenvalues and left vectors.
  std::vector<std::size_t> active_;
  ComplexMatrix reduced_right_;
  Eigen::VectorXcd active_eigenvalues_;
  ComplexMatrix active_left_;
};

struct ResetOptions {
  std::vector<double> times = default_time_grid();
  CrossingMode mode = CrossingMode::kLast;
  /// Bisect the bracketing interval on the exact distance instead of interpolating.
  bool refine = true;
};

/// Reset time of rho0 under the model.
double reset_time(const ResetModel& model, const DensityMatrix& rho0, double epsilon, const ResetOptions& opts = {});

struct SpeedupRecord {
  double t_plain = 0.0;
  double t_gated = 0.0;
  double speedup = 1.0;
  double epsilon = 0.0;
  /// Amplitudes of the slowest decaying mode before and after the gate.
  double overlap_l2_before = 0.0;
  double overlap_l2_after = 0.0;
  /// (Re l3 / Re l2) (ln eps - ln|c2|) / (ln eps - ln|c3'|), using the
  /// slowest populated modes of the two states.
  double estimate = 0.0;
};

/// Gate on subsystems (0, 1) of rho_i at t = 0, then relaxation.
SpeedupRecord speedup(const ResetModel& model, const DensityMatrix& rho_i, const ControlledGate& gate, double epsilon,
                      const ResetOptions& opts = {});

/// t(eps, exact gate) / t(eps, perturbed gate) for input rho1 and the given ancilla.
double robustness(const ResetModel& model, const DensityMatrix& rho1, const AncillaState& ancilla, double dtheta_x,
                  double dtheta_y, double epsilon, ErrorOrder order = ErrorOrder::kXAfterY,
                  const ResetOptions& opts = {});
/// Mean of robustness over the supplied inputs.
double robustness(const ResetModel& model, const std::vector<DensityMatrix>& rho1s, const AncillaState& ancilla,
                  double dtheta_x, double dtheta_y, double epsilon, ErrorOrder order = ErrorOrder::kXAfterY,
                  const ResetOptions& opts = {});

}  // namespace mpemba
