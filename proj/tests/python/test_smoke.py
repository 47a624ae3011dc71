"""Smoke tests for the Python bindings: surface sanity, not re-verification
(the C++ suites carry the numerical checks)."""

import math

import pytest

import casimirlab as cl


@pytest.fixture(scope="module")
def theory():
    return cl.Theory()


def test_version_and_exports():
    assert cl.__version__ == "1.0.0"
    assert {a.name for a in cl.Approach.__members__.values()} == {
        "drude",
        "ideal_metal",
        "plasma",
        "impedance",
    }


def test_pressure_breakdown(theory):
    p = theory.pressure(cl.Approach.impedance, 300e-9)
    assert p.total < 0.0
    assert p.total == pytest.approx(p.zero_freq + p.positive_sum, rel=1e-12)
    assert p.truncation_order > 36
    # attraction weakens with distance
    assert abs(theory.pressure(cl.Approach.impedance, 500e-9).total) < abs(p.total)
    assert "PressureResult" in repr(p)


def test_prescriptions_differ_only_at_zero_frequency(theory):
    p1 = theory.pressure(cl.Approach.drude, 300e-9)
    p2 = theory.pressure(cl.Approach.ideal_metal, 300e-9)
    assert p2.zero_freq == pytest.approx(2.0 * p1.zero_freq, rel=1e-12)
    assert p2.positive_sum == pytest.approx(p1.positive_sum, rel=1e-9)
    assert abs(p2.total) > abs(p1.total)


def test_zero_frequency_closed_form():
    got = cl.zero_frequency_pressure(cl.Approach.drude, 300e-9)
    # -kT zeta(3) / (8 pi z^3)
    want = -1.38065e-23 * 300.0 * 1.2020569031595943 / (8 * math.pi * 300e-9**3)
    assert got == pytest.approx(want, rel=1e-12)


def test_correction_stack(theory):
    z = 300e-9
    assert theory.eta_roughness(z) > 1.0
    assert theory.patch(z) < 0.0
    want = theory.bare(cl.Approach.impedance, z) * theory.eta_roughness(z) + theory.patch(z)
    assert theory.corrected(cl.Approach.impedance, z) == pytest.approx(want, rel=1e-12)
    assert theory.sigma_v2() == pytest.approx(6.5333e-3, rel=1e-3)


def test_synthesis_deterministic(theory):
    a = theory.synthesize(n_sets=3, seed=11, outlier_set=0)
    b = theory.synthesize(n_sets=3, seed=11, outlier_set=0)
    c = theory.synthesize(n_sets=3, seed=12, outlier_set=0)
    assert a == b
    assert a != c
    assert len(a) == 3
    assert all(len(s) >= 288 for s in a)


def test_verdicts(theory):
    good = theory.compare(cl.Approach.impedance)
    assert not good["excluded"]
    assert good["consistent"]
    assert good["dropped_sets"] == [7]
    assert 0.03 <= good["fraction_points_outside"] <= 0.07
    assert {row["z_nm"] for row in good["rows"]} == set(cl.published_grid())

    bad = theory.compare(cl.Approach.drude)
    assert bad["excluded"]
    assert all(not row["inside"] for row in bad["rows"])


def test_error_composition():
    assert cl.compose_uniform(0.2, 0.5) == pytest.approx(0.5924, abs=1e-4)
    assert cl.total_experimental_error(2.4, 2.0, 1.0) == pytest.approx(3.52)


def test_constrain():
    pts = cl.constrain([40.0, 100.0, 370.0])
    assert [p["lambda_nm"] for p in pts] == pytest.approx([40.0, 100.0, 370.0])
    alphas = [p["alpha_max"] for p in pts]
    assert all(math.isfinite(a) and a > 0 for a in alphas)
    assert alphas == sorted(alphas, reverse=True)
    assert pts[0]["z_star_nm"] <= pts[-1]["z_star_nm"]


def test_input_errors():
    with pytest.raises(ValueError):
        cl.constrain([100.0], data_dir="/nonexistent")
