import numpy as np
import pytest

from psg import (
    GaussianDiagState,
    beamsplit_with_vacuum,
    from_exp2s,
    subtract_single_photon,
    subtract_threshold,
    trace_out_mode2,
)
from psg import fock_oracle as fo
from psg.conditioning import Detector, herald_no_click, single_photon_norm, threshold_norm
from psg.errors import ZeroProbabilityHerald

from conftest import random_disk


@pytest.fixture(scope="module")
def oracle_states():
    rho2 = fo.beamsplitter_apply(fo.squeezed_thermal_rho(0.5 * np.log(2.36), 0.0, 40), 0.88)
    return {o: fo.condition_mode2(rho2, o) for o in fo.Outcome}


def test_vacuum_input_has_nothing_to_subtract():
    V = beamsplit_with_vacuum(GaussianDiagState(1.0, 1.0), 0.6)
    with pytest.raises(ZeroProbabilityHerald):
        subtract_single_photon(V)
    with pytest.raises(ZeroProbabilityHerald):
        subtract_threshold(V)


def test_single_photon_reference_rates(ref_V):
    c = subtract_single_photon(ref_V)
    (term,) = c.char.terms
    assert term.a == pytest.approx(0.474719, abs=1e-6)
    assert term.b == pytest.approx(2.106508, abs=1e-6)
    assert c.char(0, 0) == pytest.approx(1, abs=1e-12)
    assert c.detector is Detector.SINGLE_PHOTON


def test_single_photon_matches_oracle(ref_V, oracle_states, rng):
    c = subtract_single_photon(ref_V)
    r1, p1 = oracle_states[fo.Outcome.ONE]
    zr, zi = random_disk(rng, 20, 3.0)
    for a, b in zip(zr, zi):
        assert fo.char_value(r1, complex(a, b)) == pytest.approx(c.char(a, b), abs=1e-4)
    assert c.success_prob == pytest.approx(p1, abs=1e-5)


def test_closed_form_one_photon_normalization_agrees_with_oracle(ref_V, oracle_states):
    # the [(m1+1)(m2+1)]^(3/2) / (2(m1 m2 - 1)) normalization is checked, not assumed
    _, p1 = oracle_states[fo.Outcome.ONE]
    assert 1 / single_photon_norm(ref_V) == pytest.approx(p1, abs=1e-12)


def test_threshold_reference_numbers(ref_V, oracle_states, rng):
    c = subtract_threshold(ref_V)
    assert threshold_norm(ref_V) == pytest.approx(46.74, abs=0.01)
    assert c.success_prob == pytest.approx(0.02139, abs=1e-5)
    ra, pa = oracle_states[fo.Outcome.AT_LEAST_ONE]
    assert c.success_prob == pytest.approx(pa, abs=1e-5)
    assert c.char(0, 0) == pytest.approx(1, abs=1e-12)
    zr, zi = random_disk(rng, 20, 3.0)
    for a, b in zip(zr, zi):
        assert fo.char_value(ra, complex(a, b)) == pytest.approx(c.char(a, b), abs=1e-4)


def test_trace_out(ref_V, oracle_states, rng):
    t = trace_out_mode2(ref_V)
    (term,) = t.terms
    assert (term.a, term.b) == pytest.approx((0.492881, 2.1968), abs=1e-6)
    rt, _ = oracle_states[fo.Outcome.NONE]
    zr, zi = random_disk(rng, 20, 3.0)
    for a, b in zip(zr, zi):
        assert fo.char_value(rt, complex(a, b)) == pytest.approx(t(a, b), abs=1e-6)


def test_trace_out_limits(ref_state):
    vac = trace_out_mode2(beamsplit_with_vacuum(GaussianDiagState(1, 1), 0.3))
    assert (vac.terms[0].a, vac.terms[0].b) == (1, 1)
    near = trace_out_mode2(beamsplit_with_vacuum(ref_state, 1 - 1e-9)).terms[0]
    assert (near.a, near.b) == pytest.approx((ref_state.A, ref_state.B), abs=1e-8)


def test_small_T_gives_single_photon(ref_state):
    c = subtract_single_photon(beamsplit_with_vacuum(ref_state, 0.02))
    # Fock |1> has e^{-1/2}(1 - 1) = 0 at z = 1
    assert abs(c.char(1.0, 0.0)) < 0.05
    rho2 = fo.beamsplitter_apply(fo.squeezed_thermal_rho(0.5 * np.log(2.36), 0.0, 40), 0.02)
    r1, _ = fo.condition_mode2(rho2, fo.Outcome.ONE)
    assert fo.char_value(r1, 1.0) == pytest.approx(c.char(1.0, 0.0), abs=1e-6)


def test_probability_inclusion(rng):
    for _ in range(100):
        A = rng.uniform(0.1, 3)
        B = rng.uniform(max(1 / A, 0.1), 4 / A)
        T = rng.uniform(0.02, 0.98)
        V = beamsplit_with_vacuum(GaussianDiagState(A, B), T)
        if V.m1 * V.m2 - 1 < 1e-6:
            continue
        assert subtract_single_photon(V).success_prob <= subtract_threshold(V).success_prob + 1e-15


def test_mixture_identity(ref_V, rng):
    a = subtract_threshold(ref_V)
    z = herald_no_click(ref_V)
    t = trace_out_mode2(ref_V)
    assert a.success_prob + z.success_prob == pytest.approx(1, abs=1e-14)
    zr, zi = random_disk(rng, 50, 4.0)
    lhs = a.success_prob * a.char(zr, zi) + z.success_prob * z.char(zr, zi)
    np.testing.assert_allclose(lhs, t(zr, zi), atol=1e-10)


def test_first_principles_vs_closed_form_probabilities(rng):
    for _ in range(20):
        A = rng.uniform(0.2, 0.9)
        st_ = GaussianDiagState(A, rng.uniform(1 / A, 5 / A))
        V = beamsplit_with_vacuum(st_, rng.uniform(0.05, 0.95))
        for c in (subtract_single_photon(V), subtract_threshold(V)):
            assert c.success_prob == pytest.approx(c.closed_form_prob, rel=1e-10)
