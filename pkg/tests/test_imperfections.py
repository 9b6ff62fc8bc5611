import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psg import (
    GaussianDiagState,
    LossConvention,
    QuadGaussSum,
    apply_loss,
    beamsplit_with_vacuum,
    efficiency_threshold,
    detected_wigner,
    from_exp2s,
    modal_mixture,
    purity,
    subtract_single_photon,
    subtract_threshold,
    trace_out_mode2,
    wigner_eval,
)
from psg import fock_oracle as fo
from psg.errors import NoThresholdBelowOne
from psg.imperfections import (
    efficiency_threshold_formula,
    approx_loss_origin_bracket,
    pure_efficiency_threshold,
)

from conftest import random_disk

REF = from_exp2s(2.36)
SUB = subtract_threshold(beamsplit_with_vacuum(REF, 0.88)).char


@pytest.mark.parametrize("conv", list(LossConvention))
def test_unit_efficiency_identity(conv):
    assert apply_loss(SUB, 1.0, conv) is SUB


def test_vacuum_fixed_point(rng):
    vac = QuadGaussSum.gaussian(1, 1)
    zr, zi = random_disk(rng, 20, 3)
    for eta in (0.1, 0.5, 0.9):
        np.testing.assert_allclose(apply_loss(vac, eta)(zr, zi), vac(zr, zi), rtol=1e-14)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 1.0), st.floats(0.05, 1.0))
def test_loss_composition(e1, e2):
    rng = np.random.default_rng(0)
    zr, zi = random_disk(rng, 20, 3)
    np.testing.assert_allclose(apply_loss(apply_loss(SUB, e1), e2)(zr, zi),
                               apply_loss(SUB, e1 * e2)(zr, zi), atol=1e-12)


def test_rescaled_is_stretched_physical(rng):
    eta = 0.75
    phys = apply_loss(SUB, eta, "physical")
    resc = apply_loss(SUB, eta, "rescaled")
    zr, zi = random_disk(rng, 20, 3)
    np.testing.assert_allclose(resc(zr, zi), phys(zr / np.sqrt(eta), zi / np.sqrt(eta)), atol=1e-13)


def test_loss_matches_kraus_oracle(rng):
    rho2 = fo.beamsplitter_apply(fo.squeezed_thermal_rho(0.5 * np.log(2.36), 0.0, 40), 0.88)
    ra, _ = fo.condition_mode2(rho2, fo.Outcome.AT_LEAST_ONE)
    for eta in (0.5, 0.75):
        lossy = fo.loss_apply(ra, eta)
        an = apply_loss(SUB, eta)
        zr, zi = random_disk(rng, 10, 3)
        for a, b in zip(zr, zi):
            assert fo.char_value(lossy, complex(a, b)) == pytest.approx(an(a, b), abs=1e-4)


def test_loss_maps_states_to_states(rng):
    for _ in range(10):
        A = rng.uniform(0.3, 0.9)
        V = beamsplit_with_vacuum(GaussianDiagState(A, rng.uniform(1 / A, 3 / A)), rng.uniform(0.2, 0.95))
        c = subtract_single_photon(V).char
        eta = rng.uniform(0.1, 1)
        out = apply_loss(c, eta)
        assert out(0.0, 0.0) == pytest.approx(1, abs=1e-10)
        assert 0 < purity(out) <= 1 + 1e-10
        x, p = rng.normal(size=(2, 50))
        assert np.all(np.abs(wigner_eval(out, x, p)) <= 2 / np.pi + 1e-12)


def test_mixture_endpoints_and_linearity(rng):
    sq = trace_out_mode2(beamsplit_with_vacuum(REF, 0.88))
    assert modal_mixture(SUB, sq, 1.0) is SUB
    assert modal_mixture(SUB, sq, 0.0) is sq
    mix = modal_mixture(SUB, sq, 0.7)
    assert mix(0.0, 0.0) == pytest.approx(1, abs=1e-14)
    x, p = rng.normal(size=(2, 20))
    np.testing.assert_allclose(wigner_eval(mix, x, p),
                               0.7 * wigner_eval(SUB, x, p) + 0.3 * wigner_eval(sq, x, p), atol=1e-12)


def test_loss_mixture_commute(rng):
    sq = trace_out_mode2(beamsplit_with_vacuum(REF, 0.88))
    zr, zi = random_disk(rng, 20, 3)
    a = apply_loss(modal_mixture(SUB, sq, 0.6), 0.8)
    b = modal_mixture(apply_loss(SUB, 0.8), apply_loss(sq, 0.8), 0.6)
    np.testing.assert_allclose(a(zr, zi), b(zr, zi), atol=1e-12)


def test_efficiency_threshold_reference():
    assert efficiency_threshold(REF, 0.88) == pytest.approx(0.534, abs=0.002)


def test_efficiency_threshold_boundary_and_half():
    assert efficiency_threshold(REF, 1 / 3) == 1.0
    assert efficiency_threshold(REF, 0.5) == pytest.approx(0.75, abs=1e-6)


def test_efficiency_threshold_closed_form(rng):
    for T in rng.uniform(1 / 3 + 1e-3, 0.999, 20):
        assert efficiency_threshold(REF, T) == pytest.approx(pure_efficiency_threshold(T), abs=1e-6)
        assert efficiency_threshold_formula(REF, T) == pytest.approx(pure_efficiency_threshold(T), rel=1e-12)


def test_no_threshold_below_one():
    with pytest.raises(NoThresholdBelowOne):
        efficiency_threshold(REF, 0.2)


def test_lossy_origin_signs():
    def origin(eta, xi, conv="physical"):
        return detected_wigner(REF, 0.88, "threshold", eta, xi, conv, 0.0, 0.0)

    assert origin(1, 1) == pytest.approx(-0.52, abs=0.01)
    assert origin(0.75, 1) < 0 and origin(0.75, 1, "rescaled") < 0
    assert origin(0.75, 0.7) > 0 and origin(0.75, 0.7, "rescaled") > 0
    assert origin(0.9, 0.7) < 0
    assert origin(0.75, 0.9) < 0


def test_mixed_lossy_surface_nonnegative():
    g = np.linspace(-3, 3, 61)
    X, P = np.meshgrid(g, g, indexing="ij")
    W = detected_wigner(REF, 0.88, "threshold", 0.75, 0.7, "physical", X, P)
    assert W.min() > -1e-12


def test_approx_bracket_disagrees_with_exact():
    assert approx_loss_origin_bracket(REF, 0.88, 0.75) > 0
    assert detected_wigner(REF, 0.88, "threshold", 0.75, 1.0, "physical", 0.0, 0.0) < 0
