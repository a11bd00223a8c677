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

#include "mpemba/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mpemba {

void TraceDistanceCurve::validate() const {
  if (times.size() != values.size()) throw DimensionError("TraceDistanceCurve: times/values length mismatch");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw InvalidArgument("TraceDistanceCurve: values must be finite and nonnegative");
    }
    if (i > 0 && !(times[i] > times[i - 1])) throw InvalidArgument("TraceDistanceCurve: times must increase strictly");
  }
}

DensityMatrix propagate(const SpectralDecomposition& dec, const DensityMatrix& rho0, double t) {
  if (dec.defective) {
    throw NumericalError("propagate: decomposition is defective; use propagate_expm instead");
  }
  if (!(t >= 0.0)) throw InvalidArgument("propagate: t must be nonnegative");
  if (rho0.dim() != dec.dim) throw DimensionError("propagate: state dimension does not match the generator");
  const ComplexVector c = dec.left.adjoint() * vectorize(rho0).vec;
  ComplexVector w(c.size());
  for (Eigen::Index k = 0; k < c.size(); ++k) w(k) = std::exp(dec.eigenvalues[k] * t) * c(k);
  return DensityMatrix::hermitized(devectorize(ComplexVector(dec.right * w), dec.dim), rho0.dims());
}

DensityMatrix propagate_expm(const Superoperator& l, const DensityMatrix& rho0, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("propagate_expm: t must be nonnegative");
  if (rho0.dim() != l.dim) throw DimensionError("propagate_expm: state dimension does not match the generator");
  const ComplexMatrix e = matrix_exponential(l.matrix * t);
  return DensityMatrix::hermitized(devectorize(ComplexVector(e * vectorize(rho0).vec), l.dim), rho0.dims());
}

TimeDependentGenerator constant_generator(const Superoperator& l) {
  double rate = 0.0;
  double freq = 0.0;
  for (const Complex& z : eigenvalues(l)) {
    rate = std::max(rate, std::abs(z.real()));
    freq = std::max(freq, std::abs(z.imag()));
  }
  return {[l](double) { return l; }, l.dim, l.dims, freq, rate};
}

TimeDependentGenerator time_dependent(const RedfieldGenerator& gen) {
  return {[gen](double t) { return gen(t); }, gen.dim(), gen.dims(), gen.max_frequency(), gen.rate_scale()};
}

namespace {

std::vector<ComplexVector> integrate_rk4(const TimeDependentGenerator& gen, const ComplexVector& v0,
                                         const std::vector<double>& t_grid, double h_max) {
  std::vector<ComplexVector> out;
  out.reserve(t_grid.size());
  ComplexVector v = v0;
  out.push_back(v);
  for (std::size_t j = 1; j < t_grid.size(); ++j) {
    const double span = t_grid[j] - t_grid[j - 1];
    const auto steps = std::isfinite(h_max) ? static_cast<long>(std::ceil(span / h_max - 1e-12)) : 1L;
    const long n = std::max(1L, steps);
    const double h = span / static_cast<double>(n);
    for (long s = 0; s < n; ++s) {
      const double t = t_grid[j - 1] + static_cast<double>(s) * h;
      const ComplexMatrix l0 = gen.at(t).matrix;
      const ComplexMatrix lm = gen.at(t + h / 2.0).matrix;
      const ComplexMatrix l1 = gen.at(t + h).matrix;
      const ComplexVector k1 = l0 * v;
      const ComplexVector k2 = lm * (v + (h / 2.0) * k1);
      const ComplexVector k3 = lm * (v + (h / 2.0) * k2);
      const ComplexVector k4 = l1 * (v + h * k3);
      v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!v.allFinite()) throw NumericalError("propagate_time_dependent: integration diverged");
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<DensityMatrix> propagate_time_dependent(const TimeDependentGenerator& gen, const DensityMatrix& rho0,
                                                    const std::vector<double>& t_grid,
                                                    const IntegratorOptions& opts) {
  if (!gen.at) throw InvalidArgument("propagate_time_dependent: empty generator");
  if (rho0.dim() != gen.dim) throw DimensionError("propagate_time_dependent: state dimension mismatch");
  if (t_grid.empty() || t_grid.front() != 0.0) {
    throw InvalidArgument("propagate_time_dependent: time grid must start at 0");
  }
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw InvalidArgument("propagate_time_dependent: time grid must increase");
  }
  double h = opts.max_step;
  if (!(h > 0.0)) {
    h = std::numeric_limits<double>::infinity();
    if (gen.rate_scale > 0.0) h = std::min(h, 1e-3 / gen.rate_scale);
    if (gen.max_frequency > 0.0) h = std::min(h, 2.0 * std::numbers::pi / (40.0 * gen.max_frequency));
    // RK4 accumulates about T (f h)^5 / (120 h) over the grid; keep it near 1e-10.
    const double f = gen.max_frequency + gen.rate_scale;
    if (f > 0.0 && t_grid.back() > 0.0) h = std::min(h, std::pow(120.0 * 1e-10 / (t_grid.back() * std::pow(f, 5)), 0.25));
  }
  const ComplexVector v0 = vectorize(rho0).vec;
  const auto coarse = integrate_rk4(gen, v0, t_grid, h);
  if (opts.verify_step && std::isfinite(h)) {
    const auto fine = integrate_rk4(gen, v0, t_grid, h / 2.0);
    double dev = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) dev = std::max(dev, (coarse[i] - fine[i]).cwiseAbs().maxCoeff());
    if (dev >= opts.halving_tol) {
      std::ostringstream msg;
      msg << "propagate_time_dependent: halving the step " << h << " changed the result by " << dev
          << "; use a smaller max_step";
      throw NumericalError(msg.str());
    }
  }
  std::vector<DensityMatrix> states;
  states.reserve(coarse.size());
  for (const auto& v : coarse) states.push_back(DensityMatrix::hermitized(devectorize(v, gen.dim), rho0.dims(), 1e-8));
  return states;
}

std::vector<double> default_time_grid(double t1, std::size_t n, double lo, double hi) {
  if (!(t1 > 0.0) || !(lo > 0.0) || !(hi > lo) || n < 2) throw InvalidArgument("default_time_grid: invalid range");
  std::vector<double> t;
  t.reserve(n + 1);
  t.push_back(0.0);
  const double ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back(t1 * lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  return t;
}

namespace {

double log_linear(double ta, double da, double tb, double db, double eps) {
  if (da > 0.0 && db > 0.0 && da != db) {
    const double f = (std::log(da) - std::log(eps)) / (std::log(da) - std::log(db));
    return ta + (tb - ta) * std::clamp(f, 0.0, 1.0);
  }
  if (da == db) return tb;
  return ta + (tb - ta) * std::clamp((da - eps) / (da - db), 0.0, 1.0);
}

// Locates the bracket [i-1, i] holding the reset crossing on a sampled curve.
// Returns 0 when the curve is already below eps from its first sample.
template <typename Sample>
std::size_t find_bracket(std::size_t n, double epsilon, CrossingMode mode, Sample&& sample) {
  if (n == 0) throw InvalidArgument("reset_time: empty curve");
  if (mode == CrossingMode::kLast) {
    const double last = sample(n - 1);
    if (last >= epsilon) {
      std::ostringstream msg;
      msg << "reset_time: curve never stays below epsilon = " << epsilon << " (final value " << last << ")";
      throw NumericalError(msg.str());
    }
    for (std::size_t i = n - 1; i-- > 0;) {
      if (sample(i) >= epsilon) return i + 1;
    }
    return 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sample(i) < epsilon) return i;
  }
  std::ostringstream msg;
  msg << "reset_time: curve never drops below epsilon = " << epsilon << " (final value " << sample(n - 1) << ")";
  throw NumericalError(msg.str());
}

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("reset_time: epsilon must be positive");
}

}  // namespace

double reset_time(const TraceDistanceCurve& curve, double epsilon, CrossingMode mode) {
  require_epsilon(epsilon);
  curve.validate();
  const std::size_t i = find_bracket(curve.times.size(), epsilon, mode, [&](std::size_t k) { return curve.values[k]; });
  if (i == 0) return curve.times.front();
  return log_linear(curve.times[i - 1], curve.values[i - 1], curve.times[i], curve.values[i], epsilon);
}

double Envelope::crossing(double epsilon) const {
  require_epsilon(epsilon);
  if (!(rate > 0.0)) throw NumericalError("Envelope::crossing: envelope does not decay");
  return std::max(0.0, std::log(amplitude / epsilon) / rate);
}

Envelope envelope_fit(const TraceDistanceCurve& curve) {
  curve.validate();
  std::vector<double> ts;
  std::vector<double> ys;
  const auto& v = curve.values;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] > 0.0) {
      ts.push_back(curve.times[i]);
      ys.push_back(std::log(v[i]));
    }
  }
  if (ts.size() < 2) throw NumericalError("envelope_fit: fewer than two peaks");
  const double n = static_cast<double>(ts.size());
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sy += ys[i];
    stt += ts[i] * ts[i];
    sty += ts[i] * ys[i];
  }
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  const double intercept = (sy - slope * st) / n;
  return {std::exp(intercept), -slope, ts.size()};
}

ResetModel::ResetModel(const LindbladSpec& spec, std::vector<std::size_t> observed)
    : generator_(build_liouvillian(spec)), spectrum_(spectral_decompose(generator_)), observed_(std::move(observed)) {
  std::sort(observed_.begin(), observed_.end());
  observed_.erase(std::unique(observed_.begin(), observed_.end()), observed_.end());
  if (observed_.empty() || observed_.back() >= generator_.dims.size()) {
    throw InvalidArgument("ResetModel: observed subsystems out of range");
  }
  reduced_dim_ = 1;
  for (std::size_t s : observed_) reduced_dim_ *= generator_.dims[s];
  target_ = partial_trace(steady_state(spectrum_).matrix(), generator_.dims, observed_);
  if (spectrum_.defective) return;

  const double scale = spectrum_.right.cwiseAbs().maxCoeff();
  std::vector<ComplexVector> cols;
  for (std::size_t k = 0; k < spectrum_.size(); ++k) {
    if (std::abs(spectrum_.eigenvalues[k]) < kZeroEigenvalueTol) continue;
    const ComplexMatrix r = devectorize(ComplexVector(spectrum_.right.col(k)), spectrum_.dim);
    ComplexVector red = vectorize(partial_trace(r, generator_.dims, observed_));
    if (red.cwiseAbs().maxCoeff() <= 1e-13 * scale) continue;
    active_.push_back(k);
    cols.push_back(std::move(red));
  }
  reduced_right_.resize(reduced_dim_ * reduced_dim_, static_cast<Eigen::Index>(active_.size()));
  active_left_.resize(spectrum_.left.rows(), static_cast<Eigen::Index>(active_.size()));
  active_eigenvalues_.resize(static_cast<Eigen::Index>(active_.size()));
  for (std::size_t j = 0; j < active_.size(); ++j) {
    const auto c = static_cast<Eigen::Index>(j);
    reduced_right_.col(c) = cols[j];
    active_left_.col(c) = spectrum_.left.col(active_[j]);
    active_eigenvalues_(c) = spectrum_.eigenvalues[active_[j]];
  }
}

DensityMatrix ResetModel::prepare(const DensityMatrix& rho1, const DensityMatrix& rho2) const {
  DensityMatrix rho = tensor(rho1, rho2);
  const auto& dims = generator_.dims;
  if (rho.dim() > spectrum_.dim || spectrum_.dim % rho.dim() != 0) {
    throw DimensionError("ResetModel::prepare: input states do not fit the register");
  }
  for (std::size_t s = 2; s < dims.size(); ++s) rho = tensor(rho, DensityMatrix::basis_state(dims[s], 0));
  if (rho.dim() != spectrum_.dim) throw DimensionError("ResetModel::prepare: input states do not fit the register");
  return DensityMatrix(rho.matrix(), dims);
}

ComplexVector ResetModel::coefficients(const DensityMatrix& rho0) const {
  if (rho0.dim() != spectrum_.dim) throw DimensionError("ResetModel: state dimension does not match the model");
  const ComplexVector v = vectorize(rho0).vec;
  if (spectrum_.defective) return v;
  return active_left_.adjoint() * v;
}

double ResetModel::distance(const ComplexVector& coeffs, double t) const {
  ComplexMatrix diff;
  if (spectrum_.defective) {
    const ComplexVector v = matrix_exponential(generator_.matrix * t) * coeffs;
    diff = partial_trace(devectorize(v, spectrum_.dim), generator_.dims, observed_) - target_;
  } else {
    ComplexVector w(coeffs.size());
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) w(k) = std::exp(active_eigenvalues_(k) * t) * coeffs(k);
    diff = devectorize(ComplexVector(reduced_right_ * w), reduced_dim_);
  }
  return hermitian_half_trace_norm((diff + diff.adjoint()) / 2.0);
}

double ResetModel::distance(const DensityMatrix& rho0, double t) const { return distance(coefficients(rho0), t); }

TraceDistanceCurve ResetModel::curve(const DensityMatrix& rho0, const std::vector<double>& times) const {
  const ComplexVector c = coefficients(rho0);
  TraceDistanceCurve out;
  out.times = times;
  out.values.reserve(times.size());
  for (double t : times) out.values.push_back(distance(c, t));
  out.validate();
  return out;
}

double reset_time(const ResetModel& model, const DensityMatrix& rho0, double epsilon, const ResetOptions& opts) {
  require_epsilon(epsilon);
  const auto& times = opts.times;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidArgument("reset_time: time grid must increase");
  }
  const ComplexVector c = model.coefficients(rho0);
  std::vector<double> cache(times.size(), -1.0);
  auto sample = [&](std::size_t k) {
    if (cache[k] < 0.0) cache[k] = model.distance(c, times[k]);
    return cache[k];
  };
  const std::size_t i = find_bracket(times.size(), epsilon, opts.mode, sample);
  if (i == 0) return times.front();
  double ta = times[i - 1];
  double tb = times[i];
  if (!opts.refine) return log_linear(ta, sample(i - 1), tb, sample(i), epsilon);
  for (int it = 0; it < 200 && tb - ta > 1e-14 * std::max(1.0, tb); ++it) {
    const double tm = 0.5 * (ta + tb);
    (model.distance(c, tm) >= epsilon ? ta : tb) = tm;
  }
  return 0.5 * (ta + tb);
}

namespace {

double leading_amplitude(const SpectralDecomposition& dec, const std::vector<std::vector<std::size_t>>& groups,
                         const DensityMatrix& rho) {
  if (dec.defective || groups.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return mode_amplitude(dec, groups[1], rho.matrix());
}

}  // namespace

SpeedupRecord speedup(const ResetModel& model, const DensityMatrix& rho_i, const ControlledGate& gate, double epsilon,
                      const ResetOptions& opts) {
  if (rho_i.dims() != model.dims()) throw DimensionError("speedup: state layout does not match the model");
  const DensityMatrix rho_g = apply_gate(gate, rho_i, 0, 1);
  SpeedupRecord rec;
  rec.epsilon = epsilon;
  rec.t_plain = reset_time(model, rho_i, epsilon, opts);
  rec.t_gated = reset_time(model, rho_g, epsilon, opts);
  if (rec.t_gated > 0.0) {
    rec.speedup = rec.t_plain / rec.t_gated;
  } else {
    rec.speedup = rec.t_plain > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  const auto& dec = model.spectrum();
  const auto groups = decay_groups(dec);
  rec.overlap_l2_before = leading_amplitude(dec, groups, rho_i);
  rec.overlap_l2_after = leading_amplitude(dec, groups, rho_g);
  rec.estimate = std::numeric_limits<double>::quiet_NaN();
  if (!dec.defective) {
    const auto plain = slowest_populated_mode(dec, rho_i.matrix());
    const auto gated = slowest_populated_mode(dec, rho_g.matrix());
    if (plain && gated) {
      const double le = std::log(epsilon);
      rec.estimate = (gated->rate / plain->rate) * (le - std::log(plain->amplitude)) / (le - std::log(gated->amplitude));
    }
  }
  return rec;
}

double robustness(const ResetModel& model, const DensityMatrix& rho1, const AncillaState& ancilla, double dtheta_x,
                  double dtheta_y, double epsilon, ErrorOrder order, const ResetOptions& opts) {
  const DensityMatrix rho = model.prepare(rho1, ancilla.density());
  const double t_ex = reset_time(model, apply_gate(cry_pi(), rho, 0, 1), epsilon, opts);
  const double t_err = reset_time(model, apply_gate(perturbed_cry(dtheta_x, dtheta_y, order), rho, 0, 1), epsilon, opts);
  if (t_err == 0.0) return t_ex == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return t_ex / t_err;
}

double robustness(const ResetModel& model, const std::vector<DensityMatrix>& rho1s, const AncillaState& ancilla,
                  double dtheta_x, double dtheta_y, double epsilon, ErrorOrder order, const ResetOptions& opts) {
  if (rho1s.empty()) throw InvalidArgument("robustness: empty input sample");
  double sum = 0.0;
  for (const auto& r : rho1s) sum += robustness(model, r, ancilla, dtheta_x, dtheta_y, epsilon, order, opts);
  return sum / static_cast<double>(rho1s.size());
}

}  // namespace mpemba
