import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from psg import (
    GaussianDiagState,
    beamsplit_with_vacuum,
    char_fn,
    from_exp2s,
    from_squeezed_thermal,
    from_squeezing,
)
from psg.errors import DegenerateSplitter, InvalidState


def test_vacuum_from_zero_squeezing():
    st_ = from_squeezing(0.0)
    assert (st_.A, st_.B) == (1.0, 1.0)


def test_reference_squeezing():
    st_ = from_exp2s(2.36)
    assert st_.B == pytest.approx(2.36)
    assert st_.A == pytest.approx(0.423729, abs=1e-6)
    assert from_squeezing(0.5 * np.log(2.36)).A == pytest.approx(st_.A, rel=1e-14)


def test_pure_product():
    st_ = from_squeezing(0.3)
    assert abs(st_.A * st_.B - 1) < 1e-15
    assert st_.is_pure


def test_squeezed_thermal_product():
    st_ = from_squeezed_thermal(0.3466, 0.059)
    assert st_.A * st_.B == pytest.approx(1.118**2, rel=1e-12)
    assert from_squeezed_thermal(0, 0) == GaussianDiagState(1.0, 1.0)


def test_squeezed_thermal_inverse_map():
    s, nbar = GaussianDiagState(0.5, 2.5).squeezed_thermal_params()
    assert s == pytest.approx(0.25 * np.log(5), abs=1e-15)
    assert s == pytest.approx(0.4024, abs=1e-4)
    assert nbar == pytest.approx(0.0590, abs=1e-4)
    back = from_squeezed_thermal(s, nbar)
    assert (back.A, back.B) == pytest.approx((0.5, 2.5), rel=1e-14)


def test_invalid_states_rejected():
    with pytest.raises(InvalidState):
        GaussianDiagState(0.5, 1.5)
    with pytest.raises(InvalidState):
        GaussianDiagState(-1.0, 2.0)
    with pytest.raises(InvalidState):
        from_squeezed_thermal(0.1, -0.1)


def test_char_fn_values():
    c = char_fn(from_exp2s(2.36))
    assert c(1.0, 0.0) == pytest.approx(np.exp(-0.5 / 2.36), abs=1e-15)
    assert c(1.0, 0.0) == pytest.approx(0.80908, abs=1e-5)
    assert c(0.0, 0.0) == 1
    vac = char_fn(GaussianDiagState(1.0, 1.0))
    assert vac(0.6, -0.8) == pytest.approx(np.exp(-0.5))


@given(st.floats(0.05, 5), st.floats(1.0, 4.0))
def test_char_fn_real_even_bounded(A, prod):
    c = char_fn(GaussianDiagState(A, prod / A))
    g = np.linspace(-5, 5, 21)
    zr, zi = np.meshgrid(g, g)
    v = c(zr, zi)
    assert np.all(np.abs(v.imag) == 0)
    np.testing.assert_allclose(v, c(-zr, -zi))
    assert np.all(np.abs(v) <= 1)


def test_beamsplit_reference_numbers(ref_state):
    V = beamsplit_with_vacuum(ref_state, 0.88)
    assert V.n1 == pytest.approx(0.492881, abs=1e-6)
    assert V.n2 == pytest.approx(2.1968, abs=1e-12)
    assert V.c1 == pytest.approx(-0.187266, abs=1e-6)
    assert V.c2 == pytest.approx(0.441948, abs=1e-6)
    assert V.m1 == pytest.approx(0.930847, abs=1e-6)
    assert V.m2 == pytest.approx(1.1632, abs=1e-12)


def test_beamsplit_vacuum_invariant():
    V = beamsplit_with_vacuum(GaussianDiagState(1.0, 1.0), 0.37)
    assert (V.n1, V.n2, V.m1, V.m2, V.c1, V.c2) == pytest.approx((1, 1, 1, 1, 0, 0), abs=1e-15)


@pytest.mark.parametrize("T", [0.0, 1.0, -0.1, 1.5])
def test_degenerate_splitter(ref_state, T):
    with pytest.raises(DegenerateSplitter):
        beamsplit_with_vacuum(ref_state, T)


@given(st.floats(0.05, 3), st.floats(1.0, 4.0), st.floats(0.01, 0.99))
def test_beamsplit_invariants(A, prod, T):
    state = GaussianDiagState(A, prod / A)
    V = beamsplit_with_vacuum(state, T)
    W = beamsplit_with_vacuum(state, 1 - T)
    assert V.n1 + V.m1 == pytest.approx(state.A + 1, rel=1e-13)
    assert V.n2 + V.m2 == pytest.approx(state.B + 1, rel=1e-13)
    assert V.m1 * V.m2 >= 1 - 1e-12
    # T <-> R swaps the output modes
    assert (W.n1, W.n2, W.m1, W.m2) == pytest.approx((V.m1, V.m2, V.n1, V.n2), rel=1e-12)
    assert (abs(W.c1), abs(W.c2)) == pytest.approx((abs(V.c1), abs(V.c2)), rel=1e-12)
