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

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpemba/experiments.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace mpemba;

namespace {

py::object cell_to_py(const Cell& c) {
  return std::visit([](const auto& v) -> py::object { return py::cast(v); }, c);
}

// Column name -> list of values.
py::dict table_to_dict(const Table& t) {
  py::dict d;
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    py::list col;
    for (const auto& row : t.rows) col.append(cell_to_py(row[j]));
    d[py::str(t.columns[j])] = col;
  }
  return d;
}

py::dict result_to_dict(const ExperimentResult& r) {
  py::dict summary;
  for (const auto& [k, v] : r.summary) summary[py::str(k)] = v;
  py::dict tables;
  for (const auto& t : r.extra) tables[py::str(t.name)] = table_to_dict(t);
  return py::dict("experiment"_a = r.experiment, "records"_a = table_to_dict(r.records), "summary"_a = summary,
                  "tables"_a = tables);
}

ExperimentConfig config_with_overrides(ExperimentConfig cfg, std::optional<std::uint64_t> seed,
                                       std::optional<std::size_t> threads, std::optional<std::size_t> count) {
  if (seed) cfg.seed = *seed;
  if (threads) cfg.threads = *threads;
  if (count) cfg.count = *count;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mpemba-accelerated qubit reset: Lindblad spectra, gates, reset times and experiments.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  // States
  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<ComplexMatrix, Dims>(), "matrix"_a, "dims"_a = Dims{})
      .def_static("from_pure", &DensityMatrix::from_pure, "psi"_a, "dims"_a = Dims{})
      .def_static("basis_state", &DensityMatrix::basis_state, "d"_a, "index"_a, "dims"_a = Dims{})
      .def_static("maximally_mixed", &DensityMatrix::maximally_mixed, "d"_a, "dims"_a = Dims{})
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def_property_readonly("dims", &DensityMatrix::dims)
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def("__repr__", [](const DensityMatrix& r) {
        std::ostringstream s;
        s << "DensityMatrix(dim=" << r.dim() << ")";
        return s.str();
      });

  m.def("tensor", py::overload_cast<const DensityMatrix&, const DensityMatrix&>(&tensor));
  m.def("partial_trace", py::overload_cast<const DensityMatrix&, std::vector<std::size_t>>(&partial_trace), "rho"_a,
        "keep"_a);
  m.def("trace_distance", py::overload_cast<const DensityMatrix&, const DensityMatrix&>(&trace_distance));
  m.def("purity", &purity);
  m.def("l1_coherence", py::overload_cast<const DensityMatrix&>(&l1_coherence));
  m.def("bloch_state", &bloch_state, "theta"_a, "phi"_a);
  m.def("haar_state", [](std::uint64_t seed, std::uint64_t index) {
    const HaarSample s = haar_state(seed, index);
    return py::make_tuple(s.theta, s.phi, s.state);
  }, "seed"_a, "index"_a, "(theta, phi, state) of sample `index` in stream `seed`.");

  // Models
  py::class_<MarkovParams>(m, "MarkovParams")
      .def(py::init([](double omega_q, double gamma1, double gamma_phi) {
             return MarkovParams{omega_q, gamma1, gamma_phi};
           }),
           "omega_q"_a = 1.0, "gamma1"_a = 1.0, "gamma_phi"_a = 1.0 / 6.0)
      .def_readwrite("omega_q", &MarkovParams::omega_q)
      .def_readwrite("gamma1", &MarkovParams::gamma1)
      .def_readwrite("gamma_phi", &MarkovParams::gamma_phi)
      .def_property_readonly("t1", &MarkovParams::t1)
      .def_property_readonly("t2", &MarkovParams::t2)
      .def_static("from_times", &MarkovParams::from_times, "t1"_a, "t2"_a, "omega_q"_a = 1.0);

  py::class_<ThermalParams>(m, "ThermalParams")
      .def(py::init([](double omega, double gamma, double nbar, double gamma_phi) {
             return ThermalParams{omega, gamma, nbar, gamma_phi};
           }),
           "omega"_a = 1.0, "gamma"_a = 1.0, "nbar"_a = 0.0, "gamma_phi"_a = 0.0)
      .def_readwrite("omega", &ThermalParams::omega)
      .def_readwrite("gamma", &ThermalParams::gamma)
      .def_readwrite("nbar", &ThermalParams::nbar)
      .def_readwrite("gamma_phi", &ThermalParams::gamma_phi);

  py::class_<EmbeddingParams>(m, "EmbeddingParams")
      .def(py::init([](double omega_q, double omega_t, double nu_zx, double gamma1, double gamma_phi, double kappa) {
             return EmbeddingParams{omega_q, omega_t, nu_zx, gamma1, gamma_phi, kappa};
           }),
           "omega_q"_a = 1.0, "omega_t"_a = 1.0, "nu_zx"_a = 0.0, "gamma1"_a = 1.0, "gamma_phi"_a = 1.0 / 6.0,
           "kappa"_a = 0.0)
      .def_readwrite("omega_q", &EmbeddingParams::omega_q)
      .def_readwrite("omega_t", &EmbeddingParams::omega_t)
      .def_readwrite("nu_zx", &EmbeddingParams::nu_zx)
      .def_readwrite("gamma1", &EmbeddingParams::gamma1)
      .def_readwrite("gamma_phi", &EmbeddingParams::gamma_phi)
      .def_readwrite("kappa", &EmbeddingParams::kappa)
      .def_property_readonly("non_markovian", &EmbeddingParams::non_markovian);

  py::class_<LindbladSpec>(m, "LindbladSpec")
      .def_readonly("hamiltonian", &LindbladSpec::hamiltonian)
      .def_readonly("dims", &LindbladSpec::dims)
      .def_property_readonly("jumps", [](const LindbladSpec& s) {
        py::list out;
        for (const auto& j : s.jumps) out.append(py::make_tuple(j.op, j.rate));
        return out;
      });

  m.def("single_qubit_markovian", &single_qubit_markovian, "params"_a);
  m.def("two_qubit_markovian", &two_qubit_markovian, "params"_a);
  m.def("single_qubit_thermal", &single_qubit_thermal, "params"_a);
  m.def("two_qubit_thermal", &two_qubit_thermal, "params"_a);
  m.def("embedding_model", &embedding_model, "params"_a, "n_qubits"_a = 1);
  m.def("thermal_speedup", &thermal_speedup, "params"_a);
  m.def("redfield_speedup", &redfield_speedup, "t"_a, "params"_a);
  m.def("embedding_speedup", [](const EmbeddingParams& p) {
    const EmbeddingSpeedup s = embedding_speedup(p);
    return py::dict("fourth_order"_a = s.fourth_order, "simplified"_a = s.simplified);
  }, "params"_a);
  m.def("analytic_redfield_state", [](double t, const DensityMatrix& rho0, const EmbeddingParams& p) {
    return analytic_redfield_state(t, rho0, p);
  }, "t"_a, "rho0"_a, "params"_a);

  // Spectra
  py::class_<Superoperator>(m, "Superoperator")
      .def_readonly("matrix", &Superoperator::matrix)
      .def_readonly("dim", &Superoperator::dim)
      .def_readonly("dims", &Superoperator::dims);
  m.def("build_liouvillian", &build_liouvillian, "spec"_a);

  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_readonly("eigenvalues", &SpectralDecomposition::eigenvalues)
      .def_readonly("right", &SpectralDecomposition::right)
      .def_readonly("left", &SpectralDecomposition::left)
      .def_readonly("defective", &SpectralDecomposition::defective)
      .def_readonly("condition_number", &SpectralDecomposition::condition_number)
      .def("__len__", &SpectralDecomposition::size);
  m.def("spectral_decompose", &spectral_decompose, "generator"_a);
  m.def("steady_state", &steady_state, "decomposition"_a);
  m.def("decay_groups", &decay_groups, "decomposition"_a);
  m.def("mode_amplitude", [](const SpectralDecomposition& d, const std::vector<std::size_t>& modes,
                             const DensityMatrix& rho) { return mode_amplitude(d, modes, rho.matrix()); },
        "decomposition"_a, "modes"_a, "rho"_a);
  m.def("asymptotic_speedup", &asymptotic_speedup, "decomposition"_a);

  // Gates
  py::class_<ControlledGate>(m, "ControlledGate")
      .def(py::init<ComplexMatrix, ComplexMatrix>(), "v0"_a, "v1"_a)
      .def_readonly("v0", &ControlledGate::v0)
      .def_readonly("v1", &ControlledGate::v1)
      .def("unitary", &ControlledGate::unitary);
  py::enum_<ErrorOrder>(m, "ErrorOrder")
      .value("X_AFTER_Y", ErrorOrder::kXAfterY)
      .value("Y_AFTER_X", ErrorOrder::kYAfterX);
  py::class_<AncillaState>(m, "AncillaState")
      .def(py::init([](double p0, Complex c) { return AncillaState{p0, c}; }), "p0"_a = 1.0, "coherence"_a = 0.0)
      .def_readwrite("p0", &AncillaState::p0)
      .def_readwrite("coherence", &AncillaState::coherence)
      .def("density", &AncillaState::density)
      .def_static("ground", &AncillaState::ground)
      .def_static("excited", &AncillaState::excited);
  m.def("cry_pi", &cry_pi);
  m.def("cnot", &cnot);
  m.def("identity_gate", &identity_gate);
  m.def("perturbed_cry", &perturbed_cry, "dtheta_x"_a, "dtheta_y"_a, "order"_a = ErrorOrder::kXAfterY);
  m.def("kappa", py::overload_cast<const DensityMatrix&, const ControlledGate&>(&kappa), "ancilla"_a, "gate"_a);
  m.def("apply_gate", py::overload_cast<const ControlledGate&, const DensityMatrix&>(&apply_gate), "gate"_a,
        "rho"_a);

  // Dynamics
  m.def("propagate", &propagate, "decomposition"_a, "rho0"_a, "t"_a);
  m.def("propagate_expm", &propagate_expm, "generator"_a, "rho0"_a, "t"_a);
  m.def("default_time_grid", &default_time_grid, "t1"_a = 1.0, "n"_a = 2000, "lo"_a = 1e-3, "hi"_a = 50.0);

  py::class_<ResetModel>(m, "ResetModel")
      .def(py::init<const LindbladSpec&, std::vector<std::size_t>>(), "spec"_a, "observed"_a)
      .def_property_readonly("spectrum", &ResetModel::spectrum)
      .def("prepare", &ResetModel::prepare, "rho1"_a, "rho2"_a)
      .def("distance", py::overload_cast<const DensityMatrix&, double>(&ResetModel::distance, py::const_), "rho0"_a,
           "t"_a)
      .def("curve", [](const ResetModel& model, const DensityMatrix& rho0, const std::vector<double>& times) {
        return model.curve(rho0, times).values;
      }, "rho0"_a, "times"_a);
  m.def("reset_time", [](const ResetModel& model, const DensityMatrix& rho0, double eps, bool first) {
    ResetOptions opts;
    opts.mode = first ? CrossingMode::kFirst : CrossingMode::kLast;
    return reset_time(model, rho0, eps, opts);
  }, "model"_a, "rho0"_a, "epsilon"_a, "first_crossing"_a = false);

  py::class_<SpeedupRecord>(m, "SpeedupRecord")
      .def_readonly("t_plain", &SpeedupRecord::t_plain)
      .def_readonly("t_gated", &SpeedupRecord::t_gated)
      .def_readonly("speedup", &SpeedupRecord::speedup)
      .def_readonly("epsilon", &SpeedupRecord::epsilon)
      .def_readonly("overlap_l2_before", &SpeedupRecord::overlap_l2_before)
      .def_readonly("overlap_l2_after", &SpeedupRecord::overlap_l2_after)
      .def_readonly("estimate", &SpeedupRecord::estimate);
  m.def("speedup", [](const ResetModel& model, const DensityMatrix& rho, const ControlledGate& gate, double eps) {
    return speedup(model, rho, gate, eps);
  }, "model"_a, "rho"_a, "gate"_a, "epsilon"_a);
  m.def("robustness", [](const ResetModel& model, const std::vector<DensityMatrix>& inputs,
                         const AncillaState& ancilla, double dx, double dy, double eps, ErrorOrder order) {
    return robustness(model, inputs, ancilla, dx, dy, eps, order);
  }, "model"_a, "inputs"_a, "ancilla"_a, "dtheta_x"_a, "dtheta_y"_a, "epsilon"_a, "order"_a = ErrorOrder::kXAfterY);

  // Experiments
  m.def("run_config_file", [](const std::string& path, std::optional<std::uint64_t> seed,
                              std::optional<std::size_t> threads, std::optional<std::size_t> count) {
    const ExperimentConfig cfg = config_with_overrides(load_config(path), seed, threads, count);
    ExperimentResult r;
    {
      py::gil_scoped_release release;
      r = run(cfg);
    }
    return result_to_dict(r);
  }, "path"_a, "seed"_a = py::none(), "threads"_a = py::none(), "count"_a = py::none());
  m.def("run_config_text", [](const std::string& text, std::optional<std::uint64_t> seed,
                              std::optional<std::size_t> threads, std::optional<std::size_t> count) {
    std::istringstream in(text);
    const ExperimentConfig cfg = config_with_overrides(parse_config(in, "<string>"), seed, threads, count);
    ExperimentResult r;
    {
      py::gil_scoped_release release;
      r = run(cfg);
    }
    return result_to_dict(r);
  }, "text"_a, "seed"_a = py::none(), "threads"_a = py::none(), "count"_a = py::none());
  m.def("validate", [] {
    py::list out;
    for (const auto& c : run_validation()) {
      out.append(py::dict("name"_a = c.name, "passed"_a = c.passed, "deviation"_a = c.deviation,
                          "tolerance"_a = c.tolerance));
    }
    return out;
  });
}
