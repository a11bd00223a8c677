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

// Acceptance checks. Usage: acceptance <criterion 1..12 | all>. Prints one
// PASS/FAIL line per criterion and exits nonzero if any selected check fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mpemba/experiments.hpp"

using namespace mpemba;

namespace {

constexpr double kGammaPhi = 1.0 / 6.0;

// Shared parameter set of the non-Markovian runs: T2/T1 = 1.5, kappa/nu = 0.05.
EmbeddingParams tls_params(double omega) { return {omega, omega, 2.11, 1.0, kGammaPhi, 0.05 * 2.11}; }

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    passed = passed && ok;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [violated]");
  }
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

ExperimentConfig haar_config(ModelKind model, AncillaState ancilla, double eps) {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::kHaarEnsemble;
  cfg.model = model;
  cfg.markov = {1.0, 1.0, kGammaPhi};
  cfg.embedding = tls_params(7.0);
  cfg.count = 1000;
  cfg.seed = 2025;
  cfg.epsilon = eps;
  cfg.ancilla = ancilla;
  return cfg;
}

void spectral_formulas(Outcome& o) {
  const MarkovParams p{1.0, 1.0, kGammaPhi};
  const SpectralDecomposition dec = spectral_decompose(build_liouvillian(two_qubit_markovian(p)));
  const auto groups = decay_groups(dec);
  const double l2 = dec.eigenvalues[groups[1].front()].real();
  const double l3 = dec.eigenvalues[groups[2].front()].real();
  const double e2 = std::abs(l2 + (p.gamma1 / 2 + p.gamma_phi)) / (p.gamma1 / 2 + p.gamma_phi);
  const double e3 = std::abs(l3 + p.gamma1) / p.gamma1;
  o.require(e2 <= 1e-10, "Re(l2) rel err " + num(e2));
  o.require(e3 <= 1e-10, "Re(l3) rel err " + num(e3));
  // Modes with weight on |00><11| (vec index 12) or |11><00| (vec index 3).
  double worst = 0.0;
  int found = 0;
  for (std::size_t k = 0; k < dec.size(); ++k) {
    if (std::abs(dec.right(12, k)) > 0.5 || std::abs(dec.right(3, k)) > 0.5) {
      const double rate = -dec.eigenvalues[k].real();
      worst = std::max(worst, std::abs(rate - (p.gamma1 + 2 * p.gamma_phi)) / (p.gamma1 + 2 * p.gamma_phi));
      ++found;
    }
  }
  o.require(found == 2 && worst <= 1e-10, "|00><11| modes " + std::to_string(found) + ", rel err " + num(worst));
}

void overlap_suppression(Outcome& o) {
  const SpectralDecomposition dec = spectral_decompose(build_liouvillian(two_qubit_markovian({1.0, 1.0, kGammaPhi})));
  ComplexVector plus(2);
  plus << 1.0, 1.0;
  const DensityMatrix rho = tensor(DensityMatrix::from_pure(plus, {2}), DensityMatrix::basis_state(2, 0, {2}));
  const DensityMatrix rho_g = apply_gate(cry_pi(), rho);
  const auto slow = decay_groups(dec)[1];
  double before = 0.0, after = 0.0;
  for (std::size_t k : slow) {
    before = std::max(before, std::abs(overlap(dec.left_vector(k), rho)));
    after = std::max(after, std::abs(overlap(dec.left_vector(k), rho_g)));
  }
  o.require(after <= 1e-12, "max |<<l2|rho'>>| " + num(after) + " (before " + num(before) + ")");
  o.require(mode_amplitude(dec, slow, rho_g.matrix()) <= 1e-12, "l2 amplitude after gate " +
                                                                    num(mode_amplitude(dec, slow, rho_g.matrix())));
}

void asymptotic_speedup_check(Outcome& o) {
  const ExperimentResult r = run(haar_config(ModelKind::kMarkov, AncillaState::excited(), 1e-6));
  const double med = r.summary_value("speedup_median");
  const auto s = r.records.column("speedup");
  const double within = static_cast<double>(std::count_if(s.begin(), s.end(), [](double v) {
                          return std::abs(v - 1.5) <= 0.015;
                        })) /
                        static_cast<double>(s.size());
  o.require(std::abs(med - 1.5) <= 0.015, "median S(1e-6) " + num(med) + " vs 1.5 +- 1%");
  o.detail << "; fraction of states within 1%: " << num(within) << "; asymptotic ratio "
           << num(r.summary_value("asymptotic_speedup"));
}

void haar_median(Outcome& o) {
  for (const auto& [label, anc] : {std::pair{"ancilla |1>", AncillaState::excited()},
                                   std::pair{"ancilla |0>", AncillaState::ground()}}) {
    const double med = run(haar_config(ModelKind::kMarkov, anc, 1e-3)).summary_value("speedup_median");
    o.require(med >= 1.35 && med <= 1.45, std::string(label) + " median " + num(med) + " in [1.35, 1.45]");
  }
}

void speedup_map(Outcome& o) {
  double above = 0.0, below = 0.0;
  std::size_t n = 0;
  for (double t1 = 0.5; t1 <= 2.0 + 1e-12; t1 += 0.125) {
    for (double t2 = 0.25; t2 <= 2.0 * t1 + 1e-12; t2 += 0.125) {
      const MarkovParams p = MarkovParams::from_times(t1, t2);
      const double s = asymptotic_speedup(spectral_decompose(build_liouvillian(two_qubit_markovian(p))));
      (t2 >= t1 ? above : below) = std::max(t2 >= t1 ? above : below, std::abs(s - std::max(1.0, t2 / t1)));
      ++n;
    }
  }
  o.require(above <= 1e-8, "max |S - T2/T1| (T2 >= T1) " + num(above));
  o.require(below <= 1e-8, "max |S - 1| (T2 < T1) " + num(below));
  o.detail << "; grid points " << n;
}

void non_markovian_ensemble(Outcome& o) {
  const EmbeddingParams p = tls_params(7.0);
  const double simplified = embedding_speedup(p).simplified;
  o.require(std::abs(simplified - 1.39) <= 0.01, "simplified S_emb " + num(simplified));
  const ExperimentResult r = run(haar_config(ModelKind::kEmbedding, AncillaState::excited(), 1e-3));
  const double med = r.summary_value("speedup_median");
  o.require(med >= 1.25 && med <= 1.35, "two-pair embedding median " + num(med) + " in [1.25, 1.35]");
  o.detail << "; fourth-order S_emb " << num(embedding_speedup(p).fourth_order);
}

void redfield_validation(Outcome& o) {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::kRedfieldValidate;
  cfg.embedding = tls_params(50.0);
  cfg.theta = std::numbers::pi / 2;
  cfg.curve_t_max = 10.0;
  cfg.curve_points = 1001;
  const ExperimentResult r = run(cfg);
  const double a = r.summary_value("max_analytic_vs_integrator");
  const double pu = r.summary_value("max_purity_embedding_vs_redfield");
  const double co = r.summary_value("max_coherence_embedding_vs_redfield");
  o.require(a <= 1e-8, "analytic vs integrator " + num(a));
  o.require(pu <= 2e-2, "purity embedding vs Redfield " + num(pu));
  o.require(co <= 2e-2, "coherence embedding vs Redfield " + num(co));
}

void redfield_spectrum(Outcome& o) {
  const EmbeddingParams p = tls_params(1e4);
  const QubitModes modes = embedding_qubit_modes(p);
  const std::vector<Complex> subset{0.0, modes.population, modes.coherence, std::conj(modes.coherence)};
  const RedfieldGenerator gen(p);
  double worst = 0.0;
  for (double t = 40.0 / p.kappa; t <= 80.0 / p.kappa; t += 4.0 / p.kappa) {
    for (const Complex& z : eigenvalues(gen(t))) {
      double d = INFINITY;
      for (const Complex& w : subset) d = std::min(d, std::abs(z - w));
      worst = std::max(worst, d);
    }
  }
  o.require(worst <= 1e-6, "max distance of Redfield eigenvalues to embedding qubit modes " + num(worst));
}

void finite_temperature(Outcome& o) {
  double max_s = 0.0, at_zero = 0.0, spectral = 0.0;
  bool monotone = true;
  for (double ratio = 0.0; ratio <= 1.0 + 1e-12; ratio += 0.05) {
    double prev = -INFINITY;
    for (double nbar = 0.0; nbar <= 2.0 + 1e-12; nbar += 0.1) {
      const ThermalParams p{1.0, 1.0, nbar, ratio};
      const double s = thermal_speedup(p);
      max_s = std::max(max_s, s);
      if (ratio == 0.0) at_zero = std::max(at_zero, std::abs(s - 2.0));
      if (ratio > 0.0 && !(s > prev)) monotone = false;
      prev = s;
      if (ratio <= 0.5) {
        const double ev = asymptotic_speedup(spectral_decompose(build_liouvillian(two_qubit_thermal(p))));
        spectral = std::max(spectral, std::abs(ev - s));
      }
    }
  }
  o.require(max_s <= 2.0, "max S " + num(max_s));
  o.require(at_zero <= 1e-12, "|S - 2| at zero dephasing " + num(at_zero));
  o.require(monotone, "strictly increasing in nbar");
  o.require(spectral <= 1e-8, "closed form vs spectrum " + num(spectral));
}

void robustness_check(Outcome& o) {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::kRobustnessMap;
  cfg.markov = {7.0, 1.0, kGammaPhi};
  cfg.embedding = tls_params(7.0);
  cfg.seed = 2025;
  cfg.ancilla = AncillaState::ground();
  cfg.error_points = 8;
  cfg.robustness_samples = 50;
  const ExperimentResult r = run(cfg);
  for (const std::string m : {"markov", "embedding"}) {
    const double r0 = r.summary_value(m + "_r_zero");
    const double rpp = r.summary_value(m + "_r_pi_pi");
    o.require(r0 == 1.0, m + " R(0,0) " + num(r0));
    o.require(std::abs(rpp - r0) <= 0.1 * r0, m + " R(pi,pi) " + num(rpp));
  }
  const double diff = r.summary_value("mean_abs_difference");
  const double rm = r.summary_value("markov_r_mean");
  const double re = r.summary_value("embedding_r_mean");
  o.require(diff <= 0.05, "mean |R_M - R_E| " + num(diff));
  o.require(re <= rm, "mean R embedding " + num(re) + " <= Markov " + num(rm));
}

void oracle_battery(Outcome& o) {
  for (const auto& c : run_validation()) o.require(c.passed, c.name + " " + num(c.deviation));
}

void determinism(Outcome& o) {
  std::vector<std::string> outputs;
  for (std::size_t threads : {1, 2, 4, 1}) {
    ExperimentConfig cfg = haar_config(ModelKind::kMarkov, AncillaState::excited(), 1e-3);
    cfg.threads = threads;
    std::ostringstream out;
    write_csv(run(cfg).records, out);
    outputs.push_back(out.str());
  }
  bool same = std::all_of(outputs.begin(), outputs.end(), [&](const std::string& s) { return s == outputs[0]; });
  o.require(same, "CSV bytes identical for threads 1, 2, 4 and a repeat (" + std::to_string(outputs[0].size()) +
                      " bytes)");
}

const std::map<int, std::pair<std::string, std::function<void(Outcome&)>>> kCriteria{
    {1, {"spectral_formulas", spectral_formulas}},
    {2, {"overlap_suppression", overlap_suppression}},
    {3, {"asymptotic_speedup", asymptotic_speedup_check}},
    {4, {"haar_ensemble_median", haar_median}},
    {5, {"speedup_map", speedup_map}},
    {6, {"non_markovian_ensemble", non_markovian_ensemble}},
    {7, {"redfield_validation", redfield_validation}},
    {8, {"redfield_spectrum_embedding", redfield_spectrum}},
    {9, {"finite_temperature", finite_temperature}},
    {10, {"robustness", robustness_check}},
    {11, {"oracle_battery", oracle_battery}},
    {12, {"determinism", determinism}},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  const std::string arg = argc > 1 ? argv[1] : "all";
  if (arg == "all") {
    for (const auto& [n, c] : kCriteria) selected.push_back(n);
  } else {
    const int n = std::atoi(arg.c_str());
    if (!kCriteria.count(n)) {
      std::cerr << "usage: acceptance <1..12|all>\n";
      return 2;
    }
    selected.push_back(n);
  }
  bool all_passed = true;
  for (int n : selected) {
    const auto& [name, fn] = kCriteria.at(n);
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.passed ? "PASS " : "FAIL ") << n << " " << name << ": " << o.detail.str() << std::endl;
    all_passed = all_passed && o.passed;
  }
  return all_passed ? 0 : 1;
}
