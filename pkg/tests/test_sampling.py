import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from rsosc.dispersion import Branch, ModeKind, make_mode, reciprocity_product
from rsosc.errors import MismatchError, ParityError
from rsosc.sampling import (
    DisplacementFamily,
    agreement_check,
    classical_displacement,
    default_t_grid,
    family_displacement,
    family_sample,
    sub_resolution_divergence,
)


def fam(twos, a=1.0, w=1.0, d=0.1):
    return DisplacementFamily.for_twos(a, w, d, twos)


def test_classical_examples():
    assert classical_displacement(1.0, 1.0, 0.0) == 0.0
    assert classical_displacement(2.0, math.pi, 0.5) == 2.0
    assert abs(classical_displacement(1.0, 1.0, math.pi)) < 1e-15


def test_family_validation():
    with pytest.raises(ParityError):
        DisplacementFamily(1.0, 1.0, 0.1, Branch.PLUS, 1)
    assert fam(3).branch is Branch.MINUS
    assert fam(2).kind is ModeKind.ALIAS
    assert fam(1).omega == pytest.approx(math.pi / 0.1 - 1.0, rel=1e-15)


@given(t=st.floats(-50.0, 50.0))
def test_plus_zero_is_classical(t):
    assert family_displacement(fam(0), t) == pytest.approx(classical_displacement(1.0, 1.0, t), abs=1e-15)


@given(
    twos=st.integers(-40, 40),
    t=st.floats(-20.0, 20.0),
    w=st.floats(0.0, 20.0),
    d=st.floats(0.05, 5.0),
)
def test_family_displacement_high_precision(twos, t, w, d):
    f = DisplacementFamily.for_twos(1.5, w, d, twos)
    with mpmath.workdps(50):
        omega = mpmath.pi * twos / mpmath.mpf(d) + f.branch.sign * mpmath.mpf(w)
        expected = 1.5 * mpmath.sin(omega * mpmath.mpf(t))
    assert abs(family_displacement(f, t) - float(expected)) <= 1e-12 * max(1.0, abs(twos * t / d))


def test_agreement_at_first_sample():
    w, d = 1.0, 0.1
    assert family_displacement(fam(2), d) == pytest.approx(math.sin(w * d), abs=1e-12)
    assert family_displacement(fam(1), d) == pytest.approx(math.sin(w * d), abs=1e-12)
    assert family_sample(fam(1), 1) == math.sin(w * d)


def test_minus_sign_flip_at_even_samples():
    assert family_sample(fam(1), 2) == pytest.approx(-math.sin(0.2), abs=1e-15)


def test_agreement_check_report():
    fams = [fam(4), fam(0), fam(1), fam(-3)]
    rep = agreement_check(1.0, 1.0, 0.1, fams, 10)
    assert rep.passed
    assert rep.labels == ("plus4", "plus0", "minus1", "minus-3")
    assert rep.rows[10].deviations[0] <= 1e-12
    assert rep.rows[1].values[2] == math.sin(0.1)
    assert rep.rows[2].values[2] == pytest.approx(-math.sin(0.2), abs=1e-15)
    with pytest.raises(MismatchError):
        agreement_check(1.0, 1.0, 0.2, fams, 3)


@given(
    twos=st.integers(-200, 200),
    a=st.floats(0.1, 10.0),
    w=st.floats(0.0, 50.0),
    d=st.floats(0.01, 5.0),
    n=st.integers(0, 1000),
)
def test_grid_identities(twos, a, w, d, n):
    f = DisplacementFamily.for_twos(a, w, d, twos)
    # same sample time t = n*d as the observation; the phase itself can be ~1e5 rad
    classical = classical_displacement(a, w, n * d)
    expected = classical if f.branch is Branch.PLUS else (-1) ** (n + 1) * classical
    assert abs(family_sample(f, n) - expected) <= 1e-12 * a


def test_sub_resolution_examples():
    a, w, d = 1.0, 1.0, 0.1
    rep = sub_resolution_divergence(a, w, d, [fam(0), fam(2)], [d / 2])
    assert rep.values[0][0] == pytest.approx(a * math.sin(w * d / 2), abs=1e-15)
    assert rep.values[0][1] == pytest.approx(-a * math.sin(w * d / 2), abs=1e-14)
    assert rep.spreads[0] == pytest.approx(2 * a * math.sin(w * d / 2), abs=1e-14)

    single = sub_resolution_divergence(a, w, d, [fam(0)], [1e-9, d / 3])
    assert single.max_spread == 0.0

    fams = [fam(0), fam(2), fam(1), fam(-1)]
    agree = agreement_check(a, w, d, fams, 4)
    spread = sub_resolution_divergence(a, w, d, fams)
    assert spread.spread_at_d <= 2 * agree.max_deviation + 1e-15
    assert spread.max_spread > 1.0


def test_sub_resolution_grid():
    grid = default_t_grid(0.1)
    assert len(grid) == 32
    assert all(0.0 < t < 0.1 for t in grid)
    with pytest.raises(ValueError):
        sub_resolution_divergence(1.0, 1.0, 0.1, [fam(0)], [0.1])
    with pytest.raises(ValueError):
        sub_resolution_divergence(1.0, 1.0, 0.1, [fam(0)], [0.0])


@given(k_plus=st.integers(-10, 10), k_minus=st.integers(-10, 10), n=st.integers(0, 10**4))
def test_alias_modes_reciprocal_at_grid_times(k_plus, k_minus, n):
    plus = make_mode(1.0, 0.1, Branch.PLUS, 2 * k_plus, ModeKind.ALIAS)
    minus = make_mode(1.0, 0.1, Branch.MINUS, 2 * k_minus + 1, ModeKind.ALIAS)
    assert abs(reciprocity_product(plus, minus, n) - (-1) ** n) <= 1e-9
