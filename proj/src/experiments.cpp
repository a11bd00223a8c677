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

#include "mpemba/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

namespace mpemba {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const std::array<std::pair<Experiment, const char*>, 8> kExperimentNames{{
    {Experiment::kSpectrumOverlaps, "spectrum-overlaps"},
    {Experiment::kSpeedupMap, "speedup-map"},
    {Experiment::kHaarEnsemble, "haar-ensemble"},
    {Experiment::kNmCompare, "nm-compare"},
    {Experiment::kRedfieldValidate, "redfield-validate"},
    {Experiment::kRobustnessMap, "robustness-map"},
    {Experiment::kFiniteTemperature, "finite-temperature"},
    {Experiment::kAncillaSweep, "ancilla-sweep"},
}};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_double(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [k, name] : kExperimentNames) {
    if (k == e) return name;
  }
  return "unknown";
}

Experiment parse_experiment(const std::string& name) {
  for (const auto& [k, n] : kExperimentNames) {
    if (name == n) return k;
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::kMarkov: return "markov";
    case ModelKind::kEmbedding: return "embedding";
    case ModelKind::kThermal: return "thermal";
  }
  return "unknown";
}

ModelKind parse_model(const std::string& name) {
  if (name == "markov") return ModelKind::kMarkov;
  if (name == "embedding") return ModelKind::kEmbedding;
  if (name == "thermal") return ModelKind::kThermal;
  throw ConfigError("unknown model '" + name + "' (expected markov, embedding or thermal)");
}

std::vector<double> GridRange::values() const {
  if (points == 1) return {lo};
  std::vector<double> v(points);
  for (std::size_t i = 0; i < points; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  v.back() = hi;
  return v;
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

void check(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field + ": " + what);
}

void check_range(const GridRange& r, const std::string& field, bool positive) {
  check(r.points >= 1, field, "points must be at least 1");
  check(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi, field, "requires finite lo <= hi");
  if (positive) check(r.lo > 0.0, field, "values must be positive");
}

template <typename F>
void check_params(F&& f, const std::string& section) {
  try {
    f();
  } catch (const InvalidArgument& e) {
    throw ConfigError("[" + section + "] " + e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  check_params([&] { markov.validate(); }, "markov");
  check_params([&] { embedding.validate(); }, "embedding");
  check_params([&] { thermal.validate(); }, "thermal");
  check_params([&] { ancilla.validate(); }, "ancilla");
  check(markov.gamma1 > 0.0, "[markov] gamma1", "must be positive");
  check(embedding.gamma1 > 0.0, "[embedding] gamma1", "must be positive");
  check(thermal.gamma > 0.0, "[thermal] gamma", "must be positive");
  check(count >= 1, "[experiment] count", "must be at least 1");
  check(epsilon > 0.0 && epsilon < 1.0, "[experiment] epsilon", "must lie in (0, 1)");
  check(threads >= 1, "[experiment] threads", "must be at least 1");
  check(t_min > 0.0 && t_max > t_min, "[time]", "requires 0 < t_min < t_max");
  check(time_points >= 2, "[time] points", "must be at least 2");
  check(curve_t_max > 0.0, "[state] t_max", "must be positive");
  check(curve_points >= 2, "[state] points", "must be at least 2");
  check_range(t1_range, "[speedup_map] t1", true);
  check_range(t2_range, "[speedup_map] t2", true);
  check(error_points >= 1, "[robustness_map] points", "must be at least 1");
  check(robustness_samples >= 1, "[robustness_map] samples", "must be at least 1");
  check_range(nbar_range, "[finite_temperature] nbar", false);
  check(nbar_range.lo >= 0.0, "[finite_temperature] nbar", "must be nonnegative");
  check_range(dephasing_ratio_range, "[finite_temperature] ratio", false);
  check(dephasing_ratio_range.lo >= 0.0, "[finite_temperature] ratio", "must be nonnegative");
  for (double p : populations) check(p >= 0.0 && p <= 1.0, "[ancilla_sweep] populations", "values must lie in [0, 1]");
  for (double c : coherences) check(c >= 0.0 && c <= 0.5, "[ancilla_sweep] coherences", "values must lie in [0, 0.5]");
  check(histogram_bins >= 1, "[histogram] bins", "must be at least 1");
  check(histogram_lo < histogram_hi, "[histogram]", "requires lo < hi");
}

ResetOptions ExperimentConfig::reset_options(double t1) const {
  ResetOptions o;
  o.times = default_time_grid(t1, time_points, t_min, t_max);
  o.mode = crossing;
  return o;
}

namespace {

namespace pt = boost::property_tree;

class ConfigReader {
 public:
  ConfigReader(const pt::ptree& tree, std::string source) : tree_(tree), source_(std::move(source)) {}

  bool has(const std::string& section, const std::string& key) const {
    const auto s = tree_.get_child_optional(section);
    return s && s->get_child_optional(pt::ptree::path_type(key, '\0'));
  }

  std::string text(const std::string& section, const std::string& key) const {
    return tree_.get_child(section).get<std::string>(pt::ptree::path_type(key, '\0'));
  }

  void real(const std::string& section, const std::string& key, double& out) const {
    if (!has(section, key)) return;
    out = parse_real(section, key, text(section, key));
  }

  template <typename Int>
  void integer(const std::string& section, const std::string& key, Int& out) const {
    if (!has(section, key)) return;
    const std::string s = trim(text(section, key));
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(section, key, "expected a nonnegative integer, got '" + s + "'");
    out = v;
  }

  void list(const std::string& section, const std::string& key, std::vector<double>& out) const {
    if (!has(section, key)) return;
    out.clear();
    std::stringstream ss(text(section, key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(section, key, item));
    if (out.empty()) fail(section, key, "empty list");
  }

  void range(const std::string& section, const std::string& prefix, GridRange& r) const {
    real(section, prefix + "_min", r.lo);
    real(section, prefix + "_max", r.hi);
    integer(section, prefix + "_points", r.points);
  }

  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& what) const {
    throw ConfigError(source_ + ": [" + section + "] " + key + ": " + what);
  }

  void reject_unknown(const std::map<std::string, std::set<std::string>>& allowed) const {
    for (const auto& [section, body] : tree_) {
      const auto it = allowed.find(section);
      if (it == allowed.end()) throw ConfigError(source_ + ": unknown section [" + section + "]");
      if (!body.data().empty()) throw ConfigError(source_ + ": key '" + section + "' outside a section");
      for (const auto& [key, value] : body) {
        if (!it->second.count(key)) fail(section, key, "unknown key");
      }
    }
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
  }

  double parse_real(const std::string& section, const std::string& key, const std::string& raw) const {
    const std::string s = trim(raw);
    if (s == "pi") return std::numbers::pi;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(section, key, "expected a number, got '" + s + "'");
    }
    return v;
  }

  const pt::ptree& tree_;
  std::string source_;
};

const std::map<std::string, std::set<std::string>> kAllowedKeys{
    {"experiment",
     {"name", "model", "epsilon", "seed", "count", "threads", "output", "format", "crossing", "gate", "error_order"}},
    {"markov", {"omega_q", "gamma1", "gamma_phi", "t1", "t2"}},
    {"embedding", {"omega_q", "omega_t", "nu_zx", "gamma1", "gamma_phi", "kappa", "kappa_over_nu"}},
    {"thermal", {"omega", "gamma", "nbar", "gamma_phi"}},
    {"ancilla", {"state", "p0", "coherence", "coherence_phase"}},
    {"time", {"t_min", "t_max", "points"}},
    {"state", {"theta", "phi", "t_max", "points"}},
    {"speedup_map", {"t1_min", "t1_max", "t1_points", "t2_min", "t2_max", "t2_points"}},
    {"robustness_map", {"points", "samples"}},
    {"finite_temperature", {"nbar_min", "nbar_max", "nbar_points", "ratio_min", "ratio_max", "ratio_points"}},
    {"ancilla_sweep", {"populations", "coherences"}},
    {"histogram", {"bins", "lo", "hi"}},
};

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    std::ostringstream msg;
    msg << source << ":" << e.line() << ": " << e.message();
    throw ConfigError(msg.str());
  }
  const ConfigReader r(tree, source);
  r.reject_unknown(kAllowedKeys);

  ExperimentConfig cfg;
  if (!r.has("experiment", "name")) throw ConfigError(source + ": [experiment] name is required");
  try {
    cfg.experiment = parse_experiment(r.text("experiment", "name"));
    if (r.has("experiment", "model")) cfg.model = parse_model(r.text("experiment", "model"));
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": [experiment] " + e.what());
  }
  r.real("experiment", "epsilon", cfg.epsilon);
  r.integer("experiment", "seed", cfg.seed);
  r.integer("experiment", "count", cfg.count);
  r.integer("experiment", "threads", cfg.threads);
  if (r.has("experiment", "output")) cfg.output = r.text("experiment", "output");
  if (r.has("experiment", "format")) {
    const std::string f = r.text("experiment", "format");
    if (f == "csv") cfg.format = OutputFormat::kCsv;
    else if (f == "json") cfg.format = OutputFormat::kJson;
    else r.fail("experiment", "format", "expected csv or json, got '" + f + "'");
  }
  if (r.has("experiment", "crossing")) {
    const std::string c = r.text("experiment", "crossing");
    if (c == "last") cfg.crossing = CrossingMode::kLast;
    else if (c == "first") cfg.crossing = CrossingMode::kFirst;
    else r.fail("experiment", "crossing", "expected last or first, got '" + c + "'");
  }
  if (r.has("experiment", "gate")) {
    const std::string g = r.text("experiment", "gate");
    if (g == "cry") cfg.use_cnot = false;
    else if (g == "cnot") cfg.use_cnot = true;
    else r.fail("experiment", "gate", "expected cry or cnot, got '" + g + "'");
  }
  if (r.has("experiment", "error_order")) {
    const std::string o = r.text("experiment", "error_order");
    if (o == "x_after_y") cfg.error_order = ErrorOrder::kXAfterY;
    else if (o == "y_after_x") cfg.error_order = ErrorOrder::kYAfterX;
    else r.fail("experiment", "error_order", "expected x_after_y or y_after_x, got '" + o + "'");
  }

  r.real("markov", "omega_q", cfg.markov.omega_q);
  r.real("markov", "gamma1", cfg.markov.gamma1);
  r.real("markov", "gamma_phi", cfg.markov.gamma_phi);
  if (r.has("markov", "t1") || r.has("markov", "t2")) {
    if (!r.has("markov", "t1") || !r.has("markov", "t2")) r.fail("markov", "t1", "t1 and t2 must be given together");
    if (r.has("markov", "gamma1") || r.has("markov", "gamma_phi")) {
      r.fail("markov", "t1", "give either (t1, t2) or (gamma1, gamma_phi), not both");
    }
    double t1 = 0.0, t2 = 0.0;
    r.real("markov", "t1", t1);
    r.real("markov", "t2", t2);
    try {
      cfg.markov = MarkovParams::from_times(t1, t2, cfg.markov.omega_q);
    } catch (const InvalidArgument& e) {
      r.fail("markov", "t2", e.what());
    }
  }

  auto& e = cfg.embedding;
  r.real("embedding", "omega_q", e.omega_q);
  r.real("embedding", "omega_t", e.omega_t);
  r.real("embedding", "nu_zx", e.nu_zx);
  r.real("embedding", "gamma1", e.gamma1);
  r.real("embedding", "gamma_phi", e.gamma_phi);
  r.real("embedding", "kappa", e.kappa);
  if (r.has("embedding", "kappa_over_nu")) {
    if (r.has("embedding", "kappa")) r.fail("embedding", "kappa_over_nu", "conflicts with kappa");
    double ratio = 0.0;
    r.real("embedding", "kappa_over_nu", ratio);
    e.kappa = ratio * e.nu_zx;
  }

  r.real("thermal", "omega", cfg.thermal.omega);
  r.real("thermal", "gamma", cfg.thermal.gamma);
  r.real("thermal", "nbar", cfg.thermal.nbar);
  r.real("thermal", "gamma_phi", cfg.thermal.gamma_phi);

  if (r.has("ancilla", "state")) {
    const std::string s = r.text("ancilla", "state");
    if (s == "ground") cfg.ancilla = AncillaState::ground();
    else if (s == "excited") cfg.ancilla = AncillaState::excited();
    else r.fail("ancilla", "state", "expected ground or excited, got '" + s + "'");
    if (r.has("ancilla", "p0")) r.fail("ancilla", "p0", "conflicts with state");
  }
  double c_abs = 0.0, c_phase = 0.0;
  r.real("ancilla", "p0", cfg.ancilla.p0);
  r.real("ancilla", "coherence", c_abs);
  r.real("ancilla", "coherence_phase", c_phase);
  cfg.ancilla.coherence = std::polar(c_abs, c_phase);

  r.real("time", "t_min", cfg.t_min);
  r.real("time", "t_max", cfg.t_max);
  r.integer("time", "points", cfg.time_points);
  r.real("state", "theta", cfg.theta);
  r.real("state", "phi", cfg.phi);
  r.real("state", "t_max", cfg.curve_t_max);
  r.integer("state", "points", cfg.curve_points);
  r.range("speedup_map", "t1", cfg.t1_range);
  r.range("speedup_map", "t2", cfg.t2_range);
  r.integer("robustness_map", "points", cfg.error_points);
  r.integer("robustness_map", "samples", cfg.robustness_samples);
  r.range("finite_temperature", "nbar", cfg.nbar_range);
  r.range("finite_temperature", "ratio", cfg.dephasing_ratio_range);
  r.list("ancilla_sweep", "populations", cfg.populations);
  r.list("ancilla_sweep", "coherences", cfg.coherences);
  r.integer("histogram", "bins", cfg.histogram_bins);
  r.real("histogram", "lo", cfg.histogram_lo);
  r.real("histogram", "hi", cfg.histogram_hi);

  try {
    cfg.validate();
  } catch (const ConfigError& err) {
    throw ConfigError(source + ": " + err.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open configuration file");
  return parse_config(in, path);
}

// ---------------------------------------------------------------------------
// Sampling and scheduling

DensityMatrix bloch_state(double theta, double phi) {
  ComplexVector psi(2);
  psi << std::cos(theta / 2.0), std::exp(kI * phi) * std::sin(theta / 2.0);
  return DensityMatrix::from_pure(psi, {2});
}

HaarSample HaarSampler::operator()(std::uint64_t index) const {
  std::mt19937_64 g(splitmix64(seed_) ^ splitmix64(~index));
  const double u = unit_double(g);
  const double v = unit_double(g);
  HaarSample s;
  s.theta = std::acos(std::clamp(2.0 * u - 1.0, -1.0, 1.0));
  s.phi = kTwoPi * v;
  s.state = bloch_state(s.theta, s.phi);
  return s;
}

HaarSample haar_state(std::uint64_t seed, std::uint64_t index) { return HaarSampler(seed)(index); }

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, n));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------------------
// Tables and output

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw DimensionError("Table::add: row width does not match the header");
  rows.push_back(std::move(row));
}

std::vector<double> Table::column(const std::string& col) const {
  const auto it = std::find(columns.begin(), columns.end(), col);
  if (it == columns.end()) throw InvalidArgument("Table::column: no column '" + col + "'");
  const auto j = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::string>) {
            throw InvalidArgument("Table::column: column '" + col + "' is not numeric");
          } else {
            out.push_back(static_cast<double>(v));
          }
        },
        row[j]);
  }
  return out;
}

double ExperimentResult::summary_value(const std::string& key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  throw InvalidArgument("summary has no entry '" + key + "'");
}

const Table& ExperimentResult::table(const std::string& name) const {
  if (records.name == name) return records;
  for (const auto& t : extra) {
    if (t.name == name) return t;
  }
  throw InvalidArgument("result has no table '" + name + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

namespace {

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, double>) return format_number(v);
        else return std::to_string(v);
      },
      c);
}

nlohmann::json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      c);
}

nlohmann::json table_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  return {{"columns", t.columns}, {"rows", std::move(rows)}};
}

nlohmann::json config_json(const ExperimentConfig& c) {
  const auto& m = c.markov;
  const auto& e = c.embedding;
  const auto& th = c.thermal;
  return {
      {"experiment", to_string(c.experiment)},
      {"model", to_string(c.model)},
      {"seed", c.seed},
      {"count", c.count},
      {"epsilon", c.epsilon},
      {"gate", c.use_cnot ? "cnot" : "cry"},
      {"error_order", c.error_order == ErrorOrder::kXAfterY ? "x_after_y" : "y_after_x"},
      {"crossing", c.crossing == CrossingMode::kLast ? "last" : "first"},
      {"ancilla", {{"p0", c.ancilla.p0}, {"coherence_re", c.ancilla.coherence.real()},
                   {"coherence_im", c.ancilla.coherence.imag()}}},
      {"markov", {{"omega_q", m.omega_q}, {"gamma1", m.gamma1}, {"gamma_phi", m.gamma_phi}}},
      {"embedding", {{"omega_q", e.omega_q}, {"omega_t", e.omega_t}, {"nu_zx", e.nu_zx}, {"gamma1", e.gamma1},
                     {"gamma_phi", e.gamma_phi}, {"kappa", e.kappa}}},
      {"thermal", {{"omega", th.omega}, {"gamma", th.gamma}, {"nbar", th.nbar}, {"gamma_phi", th.gamma_phi}}},
      {"time", {{"t_min", c.t_min}, {"t_max", c.t_max}, {"points", c.time_points}}},
  };
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << table.columns[j];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << cell_text(row[j]);
    out << '\n';
  }
}

void write_json(const ExperimentResult& result, const ExperimentConfig& cfg, std::ostream& out) {
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [k, v] : result.summary) summary[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  nlohmann::json tables = nlohmann::json::object();
  tables[result.records.name] = table_json(result.records);
  for (const auto& t : result.extra) tables[t.name] = table_json(t);
  const nlohmann::json doc{{"experiment", result.experiment},
                           {"schema_version", 1},
                           {"config", config_json(cfg)},
                           {"summary", std::move(summary)},
                           {"tables", std::move(tables)}};
  out << doc.dump(2) << '\n';
}

void write_result(const ExperimentResult& result, const ExperimentConfig& cfg, std::ostream& out) {
  auto emit = [&](std::ostream& os) {
    if (cfg.format == OutputFormat::kJson) write_json(result, cfg, os);
    else write_csv(result.records, os);
  };
  if (cfg.output.empty()) {
    emit(out);
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + cfg.output + "'");
  emit(file);
  if (cfg.format == OutputFormat::kCsv) {
    for (const auto& t : result.extra) {
      std::ofstream side(cfg.output + "." + t.name + ".csv", std::ios::binary);
      if (!side) throw ConfigError("cannot open output file '" + cfg.output + "." + t.name + ".csv'");
      write_csv(t, side);
    }
  }
}

Table histogram(const std::vector<double>& values, std::size_t bins, double lo, double hi) {
  if (bins == 0 || !(hi > lo)) throw InvalidArgument("histogram: invalid binning");
  std::vector<std::uint64_t> counts(bins, 0);
  std::uint64_t inside = 0;
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    if (!(v >= lo && v <= hi)) continue;
    const auto b = std::min(bins - 1, static_cast<std::size_t>((v - lo) / width));
    ++counts[b];
    ++inside;
  }
  Table t{"histogram", {"bin_lo", "bin_hi", "count", "density"}, {}};
  for (std::size_t b = 0; b < bins; ++b) {
    const double density = inside ? static_cast<double>(counts[b]) / (static_cast<double>(inside) * width) : 0.0;
    t.add({lo + width * static_cast<double>(b), lo + width * static_cast<double>(b + 1), counts[b], density});
  }
  return t;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median: empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

struct Stats {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= sorted.size()) return sorted.back();
  return sorted[i] + (pos - static_cast<double>(i)) * (sorted[i + 1] - sorted[i]);
}

Stats stats(std::vector<double> v) {
  Stats s;
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.stddev = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  s.median = median(v);
  s.q10 = quantile(v, 0.1);
  s.q90 = quantile(v, 0.9);
  s.min = v.front();
  s.max = v.back();
  return s;
}

void add_stats(ExperimentResult& r, const std::string& prefix, const Stats& s) {
  r.summary.emplace_back(prefix + "mean", s.mean);
  r.summary.emplace_back(prefix + "median", s.median);
  r.summary.emplace_back(prefix + "stddev", s.stddev);
  r.summary.emplace_back(prefix + "q10", s.q10);
  r.summary.emplace_back(prefix + "q90", s.q90);
  r.summary.emplace_back(prefix + "min", s.min);
  r.summary.emplace_back(prefix + "max", s.max);
}

LindbladSpec reset_spec(const ExperimentConfig& cfg, ModelKind kind) {
  switch (kind) {
    case ModelKind::kMarkov: return two_qubit_markovian(cfg.markov);
    case ModelKind::kEmbedding: return embedding_model(cfg.embedding, 2);
    case ModelKind::kThermal: return two_qubit_thermal(cfg.thermal);
  }
  throw ConfigError("unknown model");
}

double model_t1(const ExperimentConfig& cfg, ModelKind kind) {
  switch (kind) {
    case ModelKind::kMarkov: return cfg.markov.t1();
    case ModelKind::kEmbedding: return 1.0 / cfg.embedding.gamma1;
    case ModelKind::kThermal: return cfg.thermal.t1();
  }
  return 1.0;
}

std::vector<double> linear_times(double t_max, std::size_t points) {
  return GridRange{0.0, t_max, points}.values();
}

ExperimentResult run_haar_ensemble(const ExperimentConfig& cfg) {
  const ResetModel model(reset_spec(cfg, cfg.model), {0, 1});
  const ResetOptions opts = cfg.reset_options(model_t1(cfg, cfg.model));
  const HaarSampler sampler(cfg.seed);
  const DensityMatrix rho2 = cfg.ancilla.density();
  const ControlledGate gate = cfg.gate();

  std::vector<HaarSample> samples(cfg.count);
  std::vector<SpeedupRecord> recs(cfg.count);
  parallel_for(cfg.count, cfg.threads, [&](std::size_t i) {
    samples[i] = sampler(i);
    recs[i] = speedup(model, model.prepare(samples[i].state, rho2), gate, cfg.epsilon, opts);
  });

  ExperimentResult r;
  r.experiment = to_string(cfg.experiment);
  r.records = {"records",
               {"experiment", "seed", "state_index", "theta", "phi", "t_plain", "t_gated", "speedup",
                "overlap_l2_before", "overlap_l2_after"},
               {}};
  std::vector<double> s(cfg.count);
  std::vector<double> est(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const auto& rec = recs[i];
    r.records.add({r.experiment, cfg.seed, static_cast<std::uint64_t>(i), samples[i].theta, samples[i].phi,
                   rec.t_plain, rec.t_gated, rec.speedup, rec.overlap_l2_before, rec.overlap_l2_after});
    s[i] = rec.speedup;
    est[i] = rec.estimate;
  }
  add_stats(r, "speedup_", stats(s));
  std::vector<double> finite_est;
  for (double e : est) {
    if (std::isfinite(e)) finite_est.push_back(e);
  }
  r.summary.emplace_back("estimate_median", finite_est.empty() ? std::nan("") : median(finite_est));
  r.summary.emplace_back("asymptotic_speedup", asymptotic_speedup(model.spectrum()));
  r.extra.push_back(histogram(s, cfg.histogram_bins, cfg.histogram_lo, cfg.histogram_hi));
  return r;
}

ExperimentResult run_spectrum_overlaps(const ExperimentConfig& cfg) {
  const ResetModel model(reset_spec(cfg, cfg.model), {0, 1});
  const auto& dec = model.spectrum();
  const DensityMatrix rho = model.prepare(bloch_state(cfg.theta, cfg.phi), cfg.ancilla.density());
  const DensityMatrix rho_g = apply_gate(cfg.gate(), rho, 0, 1);
  const auto groups = decay_groups(dec);

  ExperimentResult r;
  r.experiment = to_string(cfg.experiment);
  r.records = {"records",
               {"experiment", "model", "mode", "re_lambda", "im_lambda", "kind", "group", "overlap_before",
                "overlap_after", "group_amplitude_before", "group_amplitude_after"},
               {}};
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double before = mode_amplitude(dec, groups[g], rho.matrix());
    const double after = mode_amplitude(dec, groups[g], rho_g.matrix());
    for (std::size_t k : groups[g]) {
      r.records.add({r.experiment, to_string(cfg.model), static_cast<std::uint64_t>(k + 1), dec.eigenvalues[k].real(),
                     dec.eigenvalues[k].imag(), std::string(is_population_mode(dec, k) ? "population" : "coherence"),
                     static_cast<std::uint64_t>(g), std::abs(overlap(dec.left_vector(k), rho)),
                     std::abs(overlap(dec.left_vector(k), rho_g)), before, after});
    }
  }
  Table curves{"curves", {"t", "distance_plain", "distance_gated"}, {}};
  const auto times = linear_times(cfg.curve_t_max, cfg.curve_points);
  const auto plain = model.curve(rho, times);
  const auto gated = model.curve(rho_g, times);
  for (std::size_t i = 0; i < times.size(); ++i) curves.add({times[i], plain.values[i], gated.values[i]});
  r.extra.push_back(std::move(curves));
  r.summary.emplace_back("asymptotic_speedup", asymptotic_speedup(dec));
  r.summary.emplace_back("l2_amplitude_before", mode_amplitude(dec, groups.at(1), rho.matrix()));
  r.summary.emplace_back("l2_amplitude_after", mode_amplitude(dec, groups.at(1), rho_g.matrix()));
  return r;
}

ExperimentResult run_speedup_map(const ExperimentConfig& cfg) {
  const auto t1s = cfg.t1_range.values();
  const auto t2s = cfg.t2_range.values();
  const std::size_t n = t1s.size() * t2s.size();
  std::vector<std::array<double, 3>> out(n);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    const double t1 = t1s[i / t2s.size()];
    const double t2 = t2s[i % t2s.size()];
    if (t2 > 2.0 * t1 * (1.0 + 1e-12)) {
      out[i] = {std::nan(""), std::nan(""), std::nan("")};
      return;
    }
    const MarkovParams p = MarkovParams::from_times(t1, t2, cfg.markov.omega_q);
    out[i] = {p.gamma1, p.gamma_phi, asymptotic_speedup(spectral_decompose(build_liouvillian(two_qubit_markovian(p))))};
  });
  ExperimentResult r;
  r.experiment = to_string(cfg.experiment);
  r.records = {"records",
               {"experiment", "t1", "t2", "gamma1", "gamma_phi", "t2_over_t1", "asymptotic_speedup"},
               {}};
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t1 = t1s[i / t2s.size()];
    const double t2 = t2s[i % t2s.size()];
    r.records.add({r.experiment, t1, t2, out[i][0], out[i][1], t2 / t1, out[i][2]});
    if (std::isfinite(out[i][2])) worst = std::max(worst, std::abs(out[i][2] - std::max(1.0, t2 / t1)));
  }
  r.summary.emplace_back("max_deviation_from_max_1_t2_over_t1", worst);
  return r;
}

ExperimentResult run_nm_compare(const ExperimentConfig& cfg) {
  ExperimentConfig mcfg = cfg;
  mcfg.markov = cfg.embedding.markov();
  const ResetModel markov(reset_spec(mcfg, ModelKind::kMarkov), {0, 1});
  const ResetModel embedding(reset_spec(cfg, ModelKind::kEmbedding), {0, 1});
  const ResetOptions opts = cfg.reset_options(1.0 / cfg.embedding.gamma1);
  const auto times = linear_times(cfg.curve_t_max, cfg.curve_points);
  const DensityMatrix rho1 = bloch_state(cfg.theta, cfg.phi);
  const DensityMatrix rho2 = cfg.ancilla.density();

  ExperimentResult r;
  r.experiment = to_string(cfg.experiment);
  r.records = {"records", {"experiment", "model", "gated", "t", "distance"}, {}};
  Table resets{"reset_times",
               {"model", "gated", "t_reset_last", "t_reset_first", "envelope_rate", "envelope_crossing"},
               {}};
  for (const auto& [name, model] : {std::pair<std::string, const ResetModel*>{"markov", &markov},
                                    std::pair<std::string, const ResetModel*>{"embedding", &embedding}}) {
    const DensityMatrix rho = model->prepare(rho1, rho2);
    double t_reset[2] = {0.0, 0.0};
    for (int gated = 0; gated < 2; ++gated) {
      const DensityMatrix state = gated ? apply_gate(cfg.gate(), rho, 0, 1) : rho;
      const auto curve = model->curve(state, times);
      for (std::size_t i = 0; i < times.size(); ++i) {
        r.records.add({r.experiment, name, static_cast<std::int64_t>(gated), times[i], curve.values[i]});
      }
      ResetOptions first = opts;
      first.mode = CrossingMode::kFirst;
      const double t_last = reset_time(*model, state, cfg.epsilon, opts);
      const double t_first = reset_time(*model, state, cfg.epsilon, first);
      double rate = std::nan("");
      double crossing = std::nan("");
      try {
        const Envelope env = envelope_fit(curve);
        rate = env.rate;
        crossing = env.crossing(cfg.epsilon);
      } catch (const NumericalError&) {
      }
      resets.add({name, static_cast<std::int64_t>(gated), t_last, t_first, rate, crossing});
      t_reset[gated] = t_last;
    }
    r.summary.emplace_back(name + "_speedup", t_reset[0] / t_reset[1]);
  }
  r.extra.push_back(std::move(resets));

  const RedfieldGenerator gen(cfg.embedding);
  Table traj{"trajectories", {"t", "k", "re_lambda", "im_lambda"}, {}};
  for (double t : times) {
    auto ev = eigenvalues(gen(t));
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() > b.real() : a.imag() < b.imag();
    });
    for (std::size_t k = 0; k < ev.size(); ++k) traj.add({t, static_cast<std::uint64_t>(k), ev[k].real(), ev[k].imag()});
  }
  r.extra.push_back(std::move(traj));
  const EmbeddingSpeedup se = embedding_speedup(cfg.embedding);
  const QubitModes qm = embedding_qubit_modes(cfg.embedding);
  r.summary.emplace_back("s_emb_fourth_order", se.fourth_order);
  r.summary.emplace_back("s_emb_simplified", se.simplified);
  r.summary.emplace_back("s_emb_spectral", qm.speedup());
  r.summary.emplace_back("qubit_population_re", qm.population.real());
  r.summary.emplace_back("qubit_coherence_re", qm.coherence.real());
  r.summary.emplace_back("qubit_coherence_im", qm.coherence.imag());
  r.summary.emplace_back("dressed_coherence_re", qm.dressed_coherence.real());
  r.summary.emplace_back("dressed_coherence_im", qm.dressed_coherence.imag());
  r.summary.emplace_back("non_markovian", cfg.embedding.non_markovian() ? 1.0 : 0.0);
  return r;
}

ExperimentResult run_redfield_validate(const ExperimentConfig& cfg) {
  const auto& p = cfg.embedding;
  const auto times = linear_times(cfg.curve_t_max / p.gamma1, cfg.curve_points);
  const DensityMatrix rho0 = bloch_state(cfg.theta, cfg.phi);

  const Superoperator l = build_liouvillian(embedding_model(p, 1));
  const SpectralDecomposition dec = spectral_decompose(l);
  const DensityMatrix full0 = tensor(rho0, DensityMatrix::basis_state(2, 0, {2}));
  const auto redfield = propagate_time_dependent(time_dependent(RedfieldGenerator(p)), rho0, times);

  ExperimentResult r;
  r.experiment = to_string(cfg.experiment);
  r.records = {"records",
               {"experiment", "t", "purity_embedding", "purity_redfield", "purity_analytic", "coherence_embedding",
                "coherence_redfield", "coherence_analytic", "distance_redfield", "distance_analytic"},
               {}};
  double dev_analytic = 0.0, dev_purity = 0.0, dev_coherence = 0.0, dev_distance = 0.0;
  const DensityMatrix ground = DensityMatrix::basis_state(2, 0, {2});
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const DensityMatrix full = dec.defective ? propagate_expm(l, full0, t) : propagate(dec, full0, t);
    const DensityMatrix emb = partial_trace(full, {0});
    const DensityMatrix& red = redfield[i];
    const DensityMatrix ana = analytic_redfield_state(t, rho0, p);
    const double d_red = trace_distance(red, ground);
    const double d_ana = analytic_redfield_distance(t, rho0, p);
    r.records.add({r.experiment, t, purity(emb), purity(red), purity(ana), l1_coherence(emb), l1_coherence(red),
                   l1_coherence(ana), d_red, d_ana});
    dev_analytic = std::max(dev_analytic, max_abs_entry(ana.matrix() - red.matrix()));
    dev_purity = std::max(dev_purity, std::abs(purity(emb) - purity(red)));
    dev_coherence = std::max(dev_coherence, std::abs(l1_coherence(emb) - l1_coherence(red)));
    dev_distance = std::max(dev_distance, std::abs(d_red - d_ana));
  }
  r.summary.emplace_back("max_analytic_vs_integrator", dev_analytic);
  r.summary.emplace_back("max_purity_embedding_vs_redfield", dev_purity);
  r.summary.emplace_back("max_coherence_embedding_vs_redfield", dev_coherence);
  r.summary.emplace_back("max_distance_closed_form_vs_integrator", dev_distance);
  return r;
}

ExperimentResult run_robustness_map(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.error_points;
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) angles[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
  std::vector<DensityMatrix> inputs;
  const HaarSampler sampler(cfg.seed);
  for (std::size_t i = 0; i < cfg.robustness_samples; ++i) inputs.push_back(sampler(i).state);

  ExperimentResult r;
  r.experiment = to_string(cfg.experiment);
  r.records = {"records", {"experiment", "model", "dtheta_x", "dtheta_y", "robustness", "samples", "seed"}, {}};
  std::map<std::string, std::vector<double>> maps;
  for (const ModelKind kind : {ModelKind::kMarkov, ModelKind::kEmbedding}) {
    const ResetModel model(reset_spec(cfg, kind), {0, 1});
    const ResetOptions opts = cfg.reset_options(model_t1(cfg, kind));
    std::vector<double> values(n * n);
    parallel_for(n * n, cfg.threads, [&](std::size_t i) {
      values[i] = robustness(model, inputs, cfg.ancilla, angles[i / n], angles[i % n], cfg.epsilon, cfg.error_order,
                             opts);
    });
    for (std::size_t i = 0; i < n * n; ++i) {
      r.records.add({r.experiment, to_string(kind), angles[i / n], angles[i % n], values[i],
                     static_cast<std::uint64_t>(cfg.robustness_samples), cfg.seed});
    }
    const std::string name = to_string(kind);
    r.summary.emplace_back(name + "_r_zero", values[0]);
    if (n % 2 == 0) r.summary.emplace_back(name + "_r_pi_pi", values[(n / 2) * n + n / 2]);
    r.summary.emplace_back(name + "_r_mean", std::accumulate(values.begin(), values.end(), 0.0) / values.size());
    maps[name] = std::move(values);
  }
  double diff = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) diff += std::abs(maps["markov"][i] - maps["embedding"][i]);
  r.summary.emplace_back("mean_abs_difference", diff / static_cast<double>(n * n));
  return r;
}

ExperimentResult run_finite_temperature(const ExperimentConfig& cfg) {
  const auto nbars = cfg.nbar_range.values();
  const auto ratios = cfg.dephasing_ratio_range.values();
  const std::size_t n = nbars.size() * ratios.size();
  std::vector<std::array<double, 2>> out(n);
  parallel_for(n, cfg.threads, [&](std::size_t i) {
    ThermalParams p = cfg.thermal;
    p.nbar = nbars[i / ratios.size()];
    p.gamma_phi = ratios[i % ratios.size()] * p.gamma;
    out[i] = {thermal_speedup(p), asymptotic_speedup(spectral_decompose(build_liouvillian(two_qubit_thermal(p))))};
  });
  ExperimentResult r;
  r.experiment = to_string(cfg.experiment);
  r.records = {"records",
               {"experiment", "omega", "gamma", "nbar", "gamma_phi_over_gamma", "t1", "t2", "excited_population",
                "thermal_speedup", "spectral_speedup"},
               {}};
  double max_s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ThermalParams p = cfg.thermal;
    p.nbar = nbars[i / ratios.size()];
    p.gamma_phi = ratios[i % ratios.size()] * p.gamma;
    r.records.add({r.experiment, p.omega, p.gamma, p.nbar, ratios[i % ratios.size()], p.t1(), p.t2(),
                   p.excited_population(), out[i][0], out[i][1]});
    max_s = std::max(max_s, out[i][0]);
  }
  r.summary.emplace_back("max_thermal_speedup", max_s);
  return r;
}

ExperimentResult run_ancilla_sweep(const ExperimentConfig& cfg) {
  const ResetModel model(reset_spec(cfg, cfg.model), {0, 1});
  const ResetOptions opts = cfg.reset_options(model_t1(cfg, cfg.model));
  const HaarSampler sampler(cfg.seed);
  const ControlledGate gate = cfg.gate();

  struct Point {
    std::string sweep;
    AncillaState ancilla;
  };
  std::vector<Point> points;
  for (double p0 : cfg.populations) points.push_back({"population", {p0, 0.0}});
  for (double c : cfg.coherences) points.push_back({"coherence", {0.5, c}});

  std::vector<HaarSample> samples(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) samples[i] = sampler(i);
  const std::size_t total = points.size() * cfg.count;
  std::vector<SpeedupRecord> recs(total);
  parallel_for(total, cfg.threads, [&](std::size_t i) {
    const Point& pt = points[i / cfg.count];
    const HaarSample& s = samples[i % cfg.count];
    recs[i] = speedup(model, model.prepare(s.state, pt.ancilla.density()), gate, cfg.epsilon, opts);
  });

  ExperimentResult r;
  r.experiment = to_string(cfg.experiment);
  r.records = {"records",
               {"experiment", "sweep", "p0", "coherence", "seed", "state_index", "theta", "phi", "t_plain", "t_gated",
                "speedup"},
               {}};
  Table dist{"distributions", {"sweep", "p0", "coherence", "mean", "median", "stddev", "q10", "q90"}, {}};
  Table hist{"histograms", {"sweep", "p0", "coherence", "bin_lo", "bin_hi", "count", "density"}, {}};
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto& pt = points[p];
    const double c = std::abs(pt.ancilla.coherence);
    std::vector<double> s(cfg.count);
    for (std::size_t i = 0; i < cfg.count; ++i) {
      const auto& rec = recs[p * cfg.count + i];
      r.records.add({r.experiment, pt.sweep, pt.ancilla.p0, c, cfg.seed, static_cast<std::uint64_t>(i),
                     samples[i].theta, samples[i].phi, rec.t_plain, rec.t_gated, rec.speedup});
      s[i] = rec.speedup;
    }
    const Stats st = stats(s);
    dist.add({pt.sweep, pt.ancilla.p0, c, st.mean, st.median, st.stddev, st.q10, st.q90});
    const Table h = histogram(s, cfg.histogram_bins, cfg.histogram_lo, cfg.histogram_hi);
    for (const auto& row : h.rows) hist.add({pt.sweep, pt.ancilla.p0, c, row[0], row[1], row[2], row[3]});
  }
  r.extra.push_back(std::move(dist));
  r.extra.push_back(std::move(hist));
  return r;
}

}  // namespace

ExperimentResult run(const ExperimentConfig& cfg) {
  cfg.validate();
  switch (cfg.experiment) {
    case Experiment::kSpectrumOverlaps: return run_spectrum_overlaps(cfg);
    case Experiment::kSpeedupMap: return run_speedup_map(cfg);
    case Experiment::kHaarEnsemble: return run_haar_ensemble(cfg);
    case Experiment::kNmCompare: return run_nm_compare(cfg);
    case Experiment::kRedfieldValidate: return run_redfield_validate(cfg);
    case Experiment::kRobustnessMap: return run_robustness_map(cfg);
    case Experiment::kFiniteTemperature: return run_finite_temperature(cfg);
    case Experiment::kAncillaSweep: return run_ancilla_sweep(cfg);
  }
  throw ConfigError("unknown experiment");
}

Table spectrum_table(const std::string& model, const ExperimentConfig& cfg) {
  LindbladSpec spec;
  if (model == "markov") spec = two_qubit_markovian(cfg.markov);
  else if (model == "markov1") spec = single_qubit_markovian(cfg.markov);
  else if (model == "thermal") spec = two_qubit_thermal(cfg.thermal);
  else if (model == "embedding") spec = embedding_model(cfg.embedding, 1);
  else if (model == "embedding2") spec = embedding_model(cfg.embedding, 2);
  else throw ConfigError("unknown model '" + model + "' (expected markov, markov1, thermal, embedding, embedding2)");
  const SpectralDecomposition dec = spectral_decompose(build_liouvillian(spec));
  const auto groups = decay_groups(dec);
  std::vector<std::size_t> group_of(dec.size(), 0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t k : groups[g]) group_of[k] = g;
  }
  Table t{"spectrum", {"model", "mode", "re_lambda", "im_lambda", "kind", "group"}, {}};
  for (std::size_t k = 0; k < dec.size(); ++k) {
    t.add({model, static_cast<std::uint64_t>(k + 1), dec.eigenvalues[k].real(), dec.eigenvalues[k].imag(),
           std::string(is_population_mode(dec, k) ? "population" : "coherence"),
           static_cast<std::uint64_t>(group_of[k])});
  }
  return t;
}

}  // namespace mpemba
