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

#include <doctest.h>

#include "mpemba/dynamics.hpp"
#include "mpemba/experiments.hpp"
#include "test_util.hpp"

using namespace mpemba;
using std::numbers::pi;

namespace {

const MarkovParams kMarkov{1.0, 1.0, 1.0 / 6.0};

TraceDistanceCurve sampled(double t_max, std::size_t n, const std::function<double(double)>& f) {
  TraceDistanceCurve c;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(n);
    c.times.push_back(t);
    c.values.push_back(f(t));
  }
  return c;
}

// Last time the exact joint distance exceeds eps, from a dense uniform scan.
double dense_scan_reset_time(const Superoperator& l, const DensityMatrix& rho0, double eps, double t_max, double dt) {
  const ComplexMatrix step = matrix_exponential(l.matrix * dt);
  const DensityMatrix ss = steady_state(spectral_decompose(l));
  ComplexVector v = vectorize(rho0.matrix());
  double last_above = 0.0, d_prev = trace_distance(rho0, ss), t_prev = 0.0;
  for (double t = dt; t <= t_max; t += dt) {
    v = step * v;
    const double d = trace_distance(devectorize(v, rho0.dim()), ss.matrix());
    if (d_prev > eps && d <= eps) last_above = t_prev + dt * (d_prev - eps) / (d_prev - d);
    d_prev = d;
    t_prev = t;
  }
  return last_above;
}

}  // namespace

TEST_CASE("spectral propagation agrees with the matrix exponential") {
  std::mt19937_64 g(41);
  const Superoperator l = build_liouvillian(two_qubit_markovian(kMarkov));
  const SpectralDecomposition dec = spectral_decompose(l);
  const DensityMatrix rho = test::random_state(g, {2, 2});
  for (double t : {0.0, 0.1, 1.0, 7.5}) {
    CHECK(max_abs_entry(propagate(dec, rho, t).matrix() - propagate_expm(l, rho, t).matrix()) < 1e-10);
  }
  CHECK_THROWS_AS(propagate(dec, rho, -1.0), InvalidArgument);
  CHECK_THROWS_AS(propagate(dec, DensityMatrix::basis_state(2, 0), 1.0), DimensionError);
}

TEST_CASE("defective generators propagate through the exponential") {
  // Equal-rate cascade |2> -> |1> -> |0>: a Jordan block at -1.
  LindbladSpec spec;
  spec.hamiltonian = ComplexMatrix::Zero(3, 3);
  spec.dims = {3};
  ComplexMatrix down21 = ComplexMatrix::Zero(3, 3), down10 = ComplexMatrix::Zero(3, 3);
  down21(1, 2) = 1.0;
  down10(0, 1) = 1.0;
  spec.jumps = {{down21, 1.0}, {down10, 1.0}};
  const Superoperator l = build_liouvillian(spec);
  const SpectralDecomposition dec = spectral_decompose(l);
  CHECK(dec.defective);
  const DensityMatrix rho = DensityMatrix::basis_state(3, 2, {3});
  CHECK_THROWS_AS(propagate(dec, rho, 1.0), NumericalError);
  const double t = 1.3;
  const DensityMatrix out = propagate_expm(l, rho, t);
  CHECK(std::abs(out(2, 2) - std::exp(-t)) < 1e-14);
  CHECK(std::abs(out(1, 1) - t * std::exp(-t)) < 1e-14);
}

TEST_CASE("RK4 integrator") {
  std::mt19937_64 g(42);
  SUBCASE("constant generator matches the exponential") {
    const Superoperator l = build_liouvillian(two_qubit_markovian({3.0, 1.0, 0.2}));
    const DensityMatrix rho = test::random_state(g, {2, 2});
    const std::vector<double> grid{0.0, 0.5, 1.0, 2.5};
    const auto out = propagate_time_dependent(constant_generator(l), rho, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(max_abs_entry(out[i].matrix() - propagate_expm(l, rho, grid[i]).matrix()) < 1e-8);
    }
  }
  SUBCASE("Redfield generator matches the closed form") {
    const EmbeddingParams p{1.0, 1.5, 0.4, 1.0, 0.2, 0.3};
    const DensityMatrix rho = test::random_state(g, {2});
    std::vector<double> grid;
    for (int i = 0; i <= 50; ++i) grid.push_back(0.1 * i);
    const auto out = propagate_time_dependent(time_dependent(RedfieldGenerator(p)), rho, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(max_abs_entry(out[i].matrix() - analytic_redfield_state(grid[i], rho, p).matrix()) < 1e-8);
    }
  }
  SUBCASE("grid validation") {
    const TimeDependentGenerator gen = constant_generator(build_liouvillian(single_qubit_markovian(kMarkov)));
    const DensityMatrix rho = DensityMatrix::basis_state(2, 1);
    CHECK_THROWS_AS(propagate_time_dependent(gen, rho, {0.1, 0.2}), InvalidArgument);
    CHECK_THROWS_AS(propagate_time_dependent(gen, rho, {0.0, 0.2, 0.2}), InvalidArgument);
    CHECK_THROWS_AS(propagate_time_dependent(gen, DensityMatrix::basis_state(4, 0), {0.0}), DimensionError);
  }
}

TEST_CASE("default time grid") {
  const auto t = default_time_grid(2.0, 100);
  REQUIRE(t.size() == 101);
  CHECK(t[0] == 0.0);
  CHECK(t[1] == doctest::Approx(2e-3));
  CHECK(t.back() == doctest::Approx(100.0));
  CHECK(t[2] / t[1] == doctest::Approx(t[100] / t[99]));
  CHECK_THROWS_AS(default_time_grid(0.0), InvalidArgument);
}

TEST_CASE("reset time from sampled curves") {
  SUBCASE("pure exponential is interpolated exactly") {
    const auto c = sampled(20.0, 200, [](double t) { return std::exp(-t); });
    CHECK(reset_time(c, 1e-3) == doctest::Approx(std::log(1e3)).epsilon(1e-12));
    CHECK(reset_time(c, 2.0) == 0.0);
  }
  SUBCASE("damped oscillation: last crossing versus a dense scan") {
    auto f = [](double t) { return std::exp(-t) * std::abs(std::cos(3.0 * t)) + 1e-6; };
    const double eps = 1e-3;
    double oracle = 0.0;
    const double dt = 1e-6;
    for (double t = 0.0; t < 12.0; t += dt) {
      if (f(t) > eps) oracle = t;
    }
    const auto c = sampled(12.0, 20000, f);
    const double last = reset_time(c, eps, CrossingMode::kLast);
    const double first = reset_time(c, eps, CrossingMode::kFirst);
    CHECK(last == doctest::Approx(oracle).epsilon(1e-4));
    CHECK(first < last);
    CHECK(first == doctest::Approx(pi / 6.0).epsilon(1e-3));
  }
  SUBCASE("curves that never settle") {
    const auto c = sampled(1.0, 10, [](double t) { return std::exp(-t); });
    CHECK_THROWS_AS(reset_time(c, 1e-3), NumericalError);
    CHECK_THROWS_AS(reset_time(c, 0.0), InvalidArgument);
    TraceDistanceCurve bad{{0.0, 1.0}, {1.0}, ""};
    CHECK_THROWS_AS(bad.validate(), DimensionError);
  }
}

TEST_CASE("envelope fit") {
  const auto c = sampled(15.0, 30000, [](double t) { return 0.7 * std::exp(-0.5 * t) * std::abs(std::cos(2.0 * t)); });
  const Envelope e = envelope_fit(c);
  CHECK(e.rate == doctest::Approx(0.5).epsilon(1e-5));
  // Peaks of e^{-a t}|cos 2t| sit where |cos 2t| = 1 / sqrt(1 + a^2 / 4).
  const double a = 0.7 / std::sqrt(1.0625);
  CHECK(e.amplitude == doctest::Approx(a).epsilon(1e-4));
  CHECK(e.crossing(1e-3) == doctest::Approx(std::log(a / 1e-3) / 0.5).epsilon(1e-4));
  CHECK(e.peaks > 5);
}

TEST_CASE("ResetModel distances agree with direct evaluation") {
  std::mt19937_64 g(43);
  SUBCASE("joint two-qubit distance") {
    const LindbladSpec spec = two_qubit_markovian(kMarkov);
    const Superoperator l = build_liouvillian(spec);
    const ResetModel m(spec, {0, 1});
    const DensityMatrix rho = test::random_state(g, {2, 2});
    const DensityMatrix ss = steady_state(spectral_decompose(l));
    CHECK(max_abs_entry(m.target() - ss.matrix()) < 1e-12);
    const ComplexVector c = m.coefficients(rho);
    for (double t : {0.0, 0.3, 2.0, 9.0}) {
      const double direct = trace_distance(propagate_expm(l, rho, t), ss);
      CHECK(m.distance(rho, t) == doctest::Approx(direct).epsilon(1e-9));
      CHECK(m.distance(c, t) == doctest::Approx(direct).epsilon(1e-9));
    }
  }
  SUBCASE("reduced distance in the embedding model") {
    const LindbladSpec spec = embedding_model({1.0, 1.2, 0.5, 1.0, 0.2, 0.4}, 1);
    const Superoperator l = build_liouvillian(spec);
    const ResetModel m(spec, {0});
    const DensityMatrix rho1 = test::random_state(g, {2});
    const DensityMatrix full = m.prepare(rho1, DensityMatrix::basis_state(2, 0, {2}));
    CHECK(trace_distance(partial_trace(full, {0}), rho1) < 1e-14);
    const DensityMatrix ss = partial_trace(steady_state(spectral_decompose(l)), {0});
    for (double t : {0.0, 0.8, 4.0}) {
      const double direct = trace_distance(partial_trace(propagate_expm(l, full, t), {0}), ss);
      CHECK(m.distance(full, t) == doctest::Approx(direct).epsilon(1e-9));
    }
    CHECK_THROWS_AS(ResetModel(spec, {5}), InvalidArgument);
    CHECK_THROWS_AS(m.distance(rho1, 1.0), DimensionError);
  }
}

TEST_CASE("model reset time") {
  const LindbladSpec one = single_qubit_markovian(kMarkov);
  const ResetModel m1(one, {0});
  CHECK(reset_time(m1, DensityMatrix::basis_state(2, 1, {2}), 1e-3) == doctest::Approx(std::log(1e3)).epsilon(1e-9));

  const LindbladSpec spec = two_qubit_markovian(kMarkov);
  const ResetModel m(spec, {0, 1});
  const Superoperator l = build_liouvillian(spec);
  for (std::uint64_t i = 0; i < 3; ++i) {
    const DensityMatrix rho = m.prepare(haar_state(7, i).state, DensityMatrix::basis_state(2, 1, {2}));
    const double oracle = dense_scan_reset_time(l, rho, 1e-3, 20.0, 1e-3);
    CHECK(reset_time(m, rho, 1e-3) == doctest::Approx(oracle).epsilon(1e-5));
  }
}

TEST_CASE("gate-assisted speedup") {
  const ResetModel m(two_qubit_markovian(kMarkov), {0, 1});
  const DensityMatrix excited = DensityMatrix::basis_state(2, 1, {2});
  const DensityMatrix ground = DensityMatrix::basis_state(2, 0, {2});

  SUBCASE("incoherent ground input is unchanged") {
    const SpeedupRecord r = speedup(m, m.prepare(bloch_state(0.0, 0.0), excited), cry_pi(), 1e-3);
    CHECK(r.speedup == doctest::Approx(1.0));
  }
  SUBCASE("excited ancilla: never slower, slowest mode removed") {
    for (std::uint64_t i = 0; i < 40; ++i) {
      const SpeedupRecord r = speedup(m, m.prepare(haar_state(3, i).state, excited), cry_pi(), 1e-3);
      CHECK(r.speedup >= 1.0 - 1e-9);
      CHECK(r.overlap_l2_after < 1e-12);
    }
  }
  SUBCASE("reset time decreases as the tolerance loosens") {
    const DensityMatrix rho = m.prepare(haar_state(5, 0).state, excited);
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {1e-6, 1e-4, 1e-3, 1e-2}) {
      const SpeedupRecord r = speedup(m, rho, cry_pi(), eps);
      CHECK(r.t_plain < prev);
      prev = r.t_plain;
    }
  }
  SUBCASE("mode-based estimate tracks the measured speedup") {
    std::vector<double> measured, estimated;
    std::size_t close = 0;
    const std::size_t n = 200;
    for (std::uint64_t i = 0; i < n; ++i) {
      for (const DensityMatrix& anc : {excited, ground}) {
        const SpeedupRecord r = speedup(m, m.prepare(haar_state(11, i).state, anc), cry_pi(), 1e-4);
        measured.push_back(r.speedup);
        estimated.push_back(r.estimate);
        if (std::abs(r.estimate - r.speedup) <= 0.1 * r.speedup) ++close;
      }
    }
    CHECK(median(estimated) == doctest::Approx(median(measured)).epsilon(0.02));
    CHECK(static_cast<double>(close) >= 0.95 * static_cast<double>(measured.size()));
  }
  SUBCASE("layout mismatch") {
    CHECK_THROWS_AS(speedup(m, haar_state(1, 0).state, cry_pi(), 1e-3), DimensionError);
  }
}

TEST_CASE("robustness ratio") {
  const ResetModel m(two_qubit_markovian(kMarkov), {0, 1});
  std::vector<DensityMatrix> inputs;
  for (std::uint64_t i = 0; i < 5; ++i) inputs.push_back(haar_state(9, i).state);
  const AncillaState anc = AncillaState::ground();
  CHECK(robustness(m, inputs, anc, 0.0, 0.0, 1e-3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(robustness(m, inputs, anc, pi, pi, 1e-3) == doctest::Approx(1.0).epsilon(1e-9));
  double sum = 0.0;
  for (const auto& s : inputs) sum += robustness(m, s, anc, 0.7, 1.9, 1e-3);
  CHECK(robustness(m, inputs, anc, 0.7, 1.9, 1e-3) == doctest::Approx(sum / 5.0).epsilon(1e-12));
  CHECK_THROWS_AS(robustness(m, std::vector<DensityMatrix>{}, anc, 0.0, 0.0, 1e-3), InvalidArgument);

  // Small rotation errors barely matter.
  const ResetModel fast(two_qubit_markovian({7.0, 1.0, 1.0 / 6.0}), {0, 1});
  std::vector<DensityMatrix> many;
  for (std::uint64_t i = 0; i < 50; ++i) many.push_back(haar_state(2025, i).state);
  for (ErrorOrder order : {ErrorOrder::kXAfterY, ErrorOrder::kYAfterX}) {
    CHECK(std::abs(robustness(fast, many, anc, 0.1, 0.1, 1e-3, order) - 1.0) <= 0.05);
  }
}

// Known deviation: near-incoherent inputs with the ancilla in |0> are slowed
// down (theta = pi gives S of about 0.91).
TEST_CASE("ground ancilla never slows the reset" * doctest::may_fail()) {
  const ResetModel m(two_qubit_markovian(kMarkov), {0, 1});
  const DensityMatrix ground = DensityMatrix::basis_state(2, 0, {2});
  for (std::uint64_t i = 0; i < 100; ++i) {
    const SpeedupRecord r = speedup(m, m.prepare(haar_state(3, i).state, ground), cry_pi(), 1e-3);
    CHECK(r.speedup >= 1.0 - 1e-9);
  }
  const SpeedupRecord r = speedup(m, m.prepare(bloch_state(pi, 0.0), ground), cry_pi(), 1e-3);
  CHECK(r.speedup >= 1.0 - 1e-9);
}

// Known deviation: a few percent of states sit near theta = 0 or pi, where
// the logarithmic estimate misjudges crossings of comparable modes.
TEST_CASE("mode-based estimate within 10% for every state" * doctest::may_fail()) {
  const ResetModel m(two_qubit_markovian(kMarkov), {0, 1});
  const DensityMatrix excited = DensityMatrix::basis_state(2, 1, {2});
  const DensityMatrix ground = DensityMatrix::basis_state(2, 0, {2});
  for (std::uint64_t i = 0; i < 300; ++i) {
    for (const DensityMatrix& anc : {excited, ground}) {
      const SpeedupRecord r = speedup(m, m.prepare(haar_state(11, i).state, anc), cry_pi(), 1e-4);
      CHECK(std::abs(r.estimate - r.speedup) <= 0.1 * r.speedup);
    }
  }
}
