# Copyright 2026 The mpemba-reset Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import mpemba_reset as mr

HAAR_HEADER = [
    "experiment", "seed", "state_index", "theta", "phi", "t_plain", "t_gated", "speedup",
    "overlap_l2_before", "overlap_l2_after",
]


def markov_model():
    return mr.ResetModel(mr.two_qubit_markovian(mr.MarkovParams(1.0, 1.0, 1.0 / 6.0)), [0, 1])


def test_density_matrix_roundtrip():
    rho = mr.DensityMatrix(np.diag([0.25, 0.75]).astype(complex), [2])
    assert rho.dim == 2
    np.testing.assert_allclose(rho.matrix, np.diag([0.25, 0.75]))
    assert mr.purity(rho) == pytest.approx(0.625)
    with pytest.raises(mr.InvalidArgument):
        mr.DensityMatrix(np.diag([0.5, 0.6]).astype(complex))


def test_spectrum_and_asymptotic_speedup():
    dec = mr.spectral_decompose(mr.build_liouvillian(mr.two_qubit_markovian(mr.MarkovParams())))
    assert len(dec) == 16
    assert abs(dec.eigenvalues[0]) < 1e-12
    groups = mr.decay_groups(dec)
    assert dec.eigenvalues[groups[1][0]].real == pytest.approx(-2.0 / 3.0)
    assert mr.asymptotic_speedup(dec) == pytest.approx(1.5)
    np.testing.assert_allclose(dec.left.conj().T @ dec.right, np.eye(16), atol=1e-8)


def test_gate_removes_slow_mode():
    plus = mr.DensityMatrix.from_pure(np.array([1, 1], dtype=complex), [2])
    rho = mr.tensor(plus, mr.DensityMatrix.basis_state(2, 0, [2]))
    rho_g = mr.apply_gate(mr.cry_pi(), rho)
    dec = mr.spectral_decompose(mr.build_liouvillian(mr.two_qubit_markovian(mr.MarkovParams())))
    slow = mr.decay_groups(dec)[1]
    assert mr.mode_amplitude(dec, slow, rho_g) < 1e-12
    assert mr.mode_amplitude(dec, slow, rho) > 0.1
    assert abs(mr.kappa(mr.AncillaState.ground().density(), mr.cry_pi())) < 1e-15


def test_reset_and_speedup():
    model = markov_model()
    excited = mr.DensityMatrix.basis_state(2, 1, [2])
    theta, phi, state = mr.haar_state(1, 0)
    rec = mr.speedup(model, model.prepare(state, excited), mr.cry_pi(), 1e-3)
    assert rec.speedup >= 1.0
    assert rec.t_gated < rec.t_plain
    single = mr.ResetModel(mr.single_qubit_markovian(mr.MarkovParams()), [0])
    t = mr.reset_time(single, mr.DensityMatrix.basis_state(2, 1, [2]), 1e-3)
    assert t == pytest.approx(math.log(1e3), rel=1e-9)


def test_closed_forms():
    p = mr.EmbeddingParams(7.0, 7.0, 2.11, 1.0, 1.0 / 6.0, 0.1055)
    assert p.non_markovian
    assert mr.embedding_speedup(p)["simplified"] == pytest.approx(1.39, abs=0.01)
    assert mr.thermal_speedup(mr.ThermalParams(1.0, 1.0, 0.5, 0.0)) == pytest.approx(2.0)


def test_run_haar_ensemble_is_deterministic():
    text = "[experiment]\nname = haar-ensemble\ncount = 8\nseed = 3\n"
    a = mr.run_config_text(text, threads=1)
    b = mr.run_config_text(text, threads=2)
    assert list(a["records"].keys()) == HAAR_HEADER
    assert a["records"] == b["records"]
    assert a["summary"]["asymptotic_speedup"] == pytest.approx(1.5)
    assert "histogram" in a["tables"]


def test_config_errors_are_raised():
    with pytest.raises(mr.ConfigError, match="bogus"):
        mr.run_config_text("[experiment]\nname = haar-ensemble\nbogus = 1\n")


def test_validation_battery():
    checks = mr.validate()
    assert checks and all(c["passed"] for c in checks)
