import math

import numpy as np
import pytest

import fringelab as fl


def numpy_probability(photons, input_diff, output_diff, phi):
    """|<m|exp(-i phi J3)|m_psi>|^2 in the J1 basis, built from scratch."""
    l = photons / 2
    m3 = l - np.arange(photons + 1)
    jp = np.zeros((photons + 1, photons + 1))
    for k in range(1, photons + 1):
        jp[k - 1, k] = math.sqrt(l * (l + 1) - m3[k] * (m3[k] + 1))
    j1 = 0.5 * (jp + jp.T)
    vals, vecs = np.linalg.eigh(j1)
    col = {round(2 * v): vecs[:, i] for i, v in enumerate(vals)}
    ket = col[input_diff]
    bra = col[output_diff]
    amp = bra.conj() @ (np.exp(-1j * phi * m3) * ket)
    return abs(amp) ** 2


@pytest.mark.parametrize("photons,input_diff,output_diff", [(1, 1, -1), (4, 0, 2), (7, 3, -1), (8, 4, 4)])
def test_probability_matches_numpy(photons, input_diff, output_diff):
    config = fl.TwoModeConfig(photons, input_diff, output_diff)
    for phi in np.linspace(-3.0, 3.0, 13):
        expected = numpy_probability(photons, input_diff, output_diff, phi)
        assert abs(abs(fl.amplitude(config, phi)) ** 2 - expected) < 1e-12


def test_distribution_normalized():
    p = fl.probability_distribution(12, 2, 0.7)
    assert len(p) == 13
    assert abs(sum(p) - 1.0) < 1e-12


def test_trace_is_realized():
    config = fl.TwoModeConfig(8, 0, 4)
    phases = list(np.linspace(0.1, 3.0, 50))
    amps, unit, realized = fl.amplitude_trace(config, phases)
    assert abs(abs(unit) - 1.0) < 1e-15
    for a, r in zip(amps, realized):
        assert abs(a - unit * r) < 1e-9


def test_fringe_zeros_eight_photons():
    report = fl.analyze_fringes(fl.TwoModeConfig(8, 0, 4))
    assert report["zeros"] == pytest.approx([1.183, 1.958], abs=1e-3)
    assert report["j3_exp"][0] == pytest.approx(math.pi / (report["zeros"][1] - report["zeros"][0]))


def test_weak_value_identity():
    config = fl.TwoModeConfig(10, 2, -4)
    assert fl.verify_weak_identity(config, 1.1) < 1e-8 * 100
    assert abs(fl.weak_value_j3(fl.TwoModeConfig(10, 0, 0), 0.9).real) < 1e-8


def test_invalid_config_raises_value_error():
    with pytest.raises(ValueError, match="parity"):
        fl.TwoModeConfig(8, 1, 0)
    with pytest.raises(ValueError):
        fl.TwoModeConfig(8, 10, 0)


def test_monte_carlo_is_deterministic():
    a = fl.classical_envelope_oracle(16, 0, math.pi / 2, 20000, 7)
    b = fl.classical_envelope_oracle(16, 0, math.pi / 2, 20000, 7)
    assert a["counts"] == b["counts"]
    assert sum(a["counts"]) == 20000


def test_equal_case_prediction():
    p = fl.equal_case_predictions(8)
    assert p["total_count"] == 8
    assert p["minima"][0] == pytest.approx(math.pi / 6)
