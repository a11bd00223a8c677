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
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mpemba/dynamics.hpp"
#include "mpemba/models.hpp"
#include "mpemba/protocol.hpp"

namespace mpemba {

enum class Experiment {
  kSpectrumOverlaps,
  kSpeedupMap,
  kHaarEnsemble,
  kNmCompare,
  kRedfieldValidate,
  kRobustnessMap,
  kFiniteTemperature,
  kAncillaSweep,
};

std::string to_string(Experiment e);
/// Throws ConfigError for unknown names.
Experiment parse_experiment(const std::string& name);

enum class OutputFormat { kCsv, kJson };
enum class ModelKind { kMarkov, kEmbedding, kThermal };

std::string to_string(ModelKind m);
ModelKind parse_model(const std::string& name);

struct GridRange {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t points = 2;

  /// `points` evenly spaced values including both ends.
  std::vector<double> values() const;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::kHaarEnsemble;
  ModelKind model = ModelKind::kMarkov;
  MarkovParams markov;
  EmbeddingParams embedding{1.0, 1.0, 2.11, 1.0, 1.0 / 6.0, 0.1055};
  ThermalParams thermal;

  std::size_t count = 1000;
  std::uint64_t seed = 0;
  double epsilon = 1e-3;
  std::size_t threads = 1;

  AncillaState ancilla = AncillaState::excited();
  ErrorOrder error_order = ErrorOrder::kXAfterY;
  bool use_cnot = false;

  // Reset-time grid, in units of T1 = 1/gamma1 of the chosen model.
  double t_min = 1e-3;
  double t_max = 50.0;
  std::size_t time_points = 2000;
  CrossingMode crossing = CrossingMode::kLast;

  // Single-state experiments (spectrum-overlaps, nm-compare, redfield-validate).
  double theta = 1.5707963267948966;
  double phi = 0.0;
  double curve_t_max = 10.0;
  std::size_t curve_points = 400;

  // speedup-map
  GridRange t1_range{1.0, 2.0, 50};
  GridRange t2_range{0.5, 4.0, 50};
  // robustness-map: errors on a uniform n x n grid over [0, 2 pi)
  std::size_t error_points = 8;
  std::size_t robustness_samples = 50;
  // finite-temperature
  GridRange nbar_range{0.0, 2.0, 21};
  GridRange dephasing_ratio_range{0.0, 1.0, 21};
  // ancilla-sweep
  std::vector<double> populations{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<double> coherences{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  // speedup histograms
  std::size_t histogram_bins = 50;
  double histogram_lo = 1.0;
  double histogram_hi = 2.0;

  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::kCsv;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  ResetOptions reset_options(double t1) const;
  ControlledGate gate() const { return use_cnot ? cnot() : cry_pi(); }
};

/// Parses an INI-style configuration. Errors carry the source name and the
/// line or [section] key at fault.
ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Pure single-qubit state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> with
/// cos(theta) and phi uniform.
struct HaarSample {
  double theta = 0.0;
  double phi = 0.0;
  DensityMatrix state = DensityMatrix::basis_state(2, 0);
};

/// Counter-based: sample i depends only on (seed, i).
class HaarSampler {
 public:
  explicit HaarSampler(std::uint64_t seed) : seed_(seed) {}
  HaarSample operator()(std::uint64_t index) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

HaarSample haar_state(std::uint64_t seed, std::uint64_t index);
DensityMatrix bloch_state(double theta, double phi);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
/// by index is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  /// Values of a numeric column.
  std::vector<double> column(const std::string& name) const;
};

struct ExperimentResult {
  std::string experiment;
  Table records;
  std::vector<Table> extra;
  std::vector<std::pair<std::string, double>> summary;

  double summary_value(const std::string& key) const;
  const Table& table(const std::string& name) const;
};

ExperimentResult run(const ExperimentConfig& cfg);

/// Histogram with `bins` equal bins over [lo, hi]; hi itself falls in the last bin.
Table histogram(const std::vector<double>& values, std::size_t bins, double lo, double hi);
double median(std::vector<double> values);

/// Shortest round-trip decimal form; NaN and infinities as nan / inf / -inf.
std::string format_number(double v);
void write_csv(const Table& table, std::ostream& out);
void write_json(const ExperimentResult& result, const ExperimentConfig& cfg, std::ostream& out);
/// Writes to cfg.output (or `out` when empty). CSV output places extra
/// tables next to the main file as <output>.<table>.csv.
void write_result(const ExperimentResult& result, const ExperimentConfig& cfg, std::ostream& out);

/// Eigenvalue listing for the named model: markov, markov1, thermal,
/// embedding (one pair) or embedding2.
Table spectrum_table(const std::string& model, const ExperimentConfig& cfg);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double deviation = 0.0;
  double tolerance = 0.0;
};

/// Oracle-equivalence battery behind `mpemba-reset validate`.
std::vector<ValidationCheck> run_validation();

}  // namespace mpemba
