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

// Command-line front end: run experiment configs, dump spectra, self-test.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mpemba/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

mpemba::OutputFormat parse_format(const std::string& f) {
  if (f == "csv") return mpemba::OutputFormat::kCsv;
  if (f == "json") return mpemba::OutputFormat::kJson;
  throw mpemba::ConfigError("--format must be csv or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mpemba-accelerated qubit reset: experiments, spectra and self-tests"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the experiment described by a configuration file");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;
  std::optional<std::string> format;
  std::optional<std::size_t> threads;
  run->add_option("--config", config_path, "INI configuration file")->required();
  run->add_option("--seed", seed, "Override the ensemble seed");
  run->add_option("--out", out_path, "Output path (standard output when omitted)");
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* spectrum = app.add_subcommand("spectrum", "Print the Liouvillian spectrum of a model");
  std::string model = "markov";
  std::string spectrum_format = "csv";
  mpemba::ExperimentConfig sc;
  double omega_q = 1.0, gamma1 = 1.0, gamma_phi = 1.0 / 6.0;
  spectrum->add_option("--model", model, "markov, markov1, thermal, embedding or embedding2")->required();
  spectrum->add_option("--omega-q", omega_q, "Qubit frequency");
  spectrum->add_option("--gamma1", gamma1, "Qubit relaxation rate");
  spectrum->add_option("--gamma-phi", gamma_phi, "Qubit pure dephasing rate");
  spectrum->add_option("--omega-t", sc.embedding.omega_t, "Defect frequency");
  spectrum->add_option("--nu-zx", sc.embedding.nu_zx, "Qubit-defect coupling");
  spectrum->add_option("--kappa", sc.embedding.kappa, "Defect relaxation rate");
  spectrum->add_option("--gamma", sc.thermal.gamma, "Thermal bare coupling");
  spectrum->add_option("--nbar", sc.thermal.nbar, "Thermal occupation");
  spectrum->add_option("--format", spectrum_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* validate = app.add_subcommand("validate", "Run the oracle-equivalence self-test battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      mpemba::ExperimentConfig cfg = mpemba::load_config(config_path);
      if (seed) cfg.seed = *seed;
      if (out_path) cfg.output = *out_path;
      if (format) cfg.format = parse_format(*format);
      if (threads) cfg.threads = *threads;
      const auto result = mpemba::run(cfg);
      mpemba::write_result(result, cfg, std::cout);
      for (const auto& [k, v] : result.summary) std::cerr << k << " = " << mpemba::format_number(v) << '\n';
      return 0;
    }
    if (*spectrum) {
      sc.markov = {omega_q, gamma1, gamma_phi};
      sc.embedding.omega_q = omega_q;
      sc.embedding.gamma1 = gamma1;
      sc.embedding.gamma_phi = gamma_phi;
      sc.thermal.omega = omega_q;
      sc.thermal.gamma_phi = gamma_phi;
      mpemba::ExperimentResult r;
      r.experiment = "spectrum";
      r.records = mpemba::spectrum_table(model, sc);
      if (spectrum_format == "json") {
        sc.format = mpemba::OutputFormat::kJson;
        mpemba::write_json(r, sc, std::cout);
      } else {
        mpemba::write_csv(r.records, std::cout);
      }
      return 0;
    }
    if (*validate) {
      bool ok = true;
      for (const auto& c : mpemba::run_validation()) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " deviation=" << mpemba::format_number(c.deviation)
                  << " tolerance=" << mpemba::format_number(c.tolerance) << '\n';
        ok = ok && c.passed;
      }
      return ok ? 0 : kExitNumerical;
    }
  } catch (const mpemba::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mpemba::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mpemba::DimensionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mpemba::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
