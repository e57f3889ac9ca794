import math

import pytest
from hypothesis import given, strategies as st

from rsosc.dispersion import Branch, OscillatorParams, dispersion_frequency
from rsosc.errors import NyquistViolation, ParityError
from rsosc.spectrum import (
    QuantumConfig,
    Variant,
    classical_energy,
    combined_well_spectrum,
    correspondence_report,
    paired_well_sum,
    planck_mean_energy,
    qm_oscillator_energy,
    qm_square_well_energy,
    rayleigh_jeans_report,
    rs_energy_decomposition,
    rs_middle_term,
    spectrum_table,
    square_well_rs_energy,
    well_unit,
)

PI = math.pi


@pytest.mark.parametrize("m, a, w, expected", [(1, 1, 2, 2.0), (1, 1, 0, 0.0), (2, 3, 1, 9.0)])
def test_classical_energy(m, a, w, expected):
    assert classical_energy(OscillatorParams(w=w, d=0.1, m=m, a=a)) == expected


@pytest.mark.parametrize("variant", list(Variant))
def test_plus_ground_is_classical(variant):
    p = OscillatorParams(w=2.0, d=0.1)
    e = rs_energy_decomposition(p, Branch.PLUS, 0, Variant.PAPER)
    assert e.total == classical_energy(p) == 2.0
    exact = rs_energy_decomposition(p, Branch.PLUS, 0, variant)
    assert exact.leading == 0.0 and exact.cross == 0.0


def test_minus_bare_frequency_substitution():
    e = rs_energy_decomposition(OscillatorParams(w=1.0, d=1.0), Branch.MINUS, 1, Variant.PAPER)
    assert e.leading == pytest.approx(PI**2 / 2, rel=1e-15)
    assert e.cross == pytest.approx(-PI, rel=1e-15)
    assert e.quadratic == 0.5
    assert e.total == pytest.approx(PI**2 / 2 - PI + 0.5, rel=1e-15)


def test_exact_form_total_two_ways():
    p = OscillatorParams(w=1.0, d=0.1)
    e = rs_energy_decomposition(p, Branch.PLUS, 2, Variant.EXACT)
    omega = dispersion_frequency(1.0, 0.1, Branch.PLUS, 2)
    assert e.total == 0.5 * omega**2
    assert e.total == pytest.approx(0.5 * (2 * PI / 0.1 + math.asin(0.1) / 0.1) ** 2, rel=1e-14)
    assert abs(e.leading + e.cross + e.quadratic - e.total) <= 1e-14 * e.total


def test_decomposition_errors():
    p = OscillatorParams(w=1.0, d=1.5)
    with pytest.raises(NyquistViolation):
        rs_energy_decomposition(p, Branch.PLUS, 0, Variant.EXACT)
    # the bare-w expansion has no Nyquist bound
    assert rs_energy_decomposition(p, Branch.PLUS, 0, Variant.PAPER).total == 0.5
    with pytest.raises(ParityError):
        rs_energy_decomposition(OscillatorParams(w=1.0, d=0.1), Branch.MINUS, 2)


@given(
    wd=st.floats(0.0, 1.0),
    d=st.floats(0.01, 10.0),
    m=st.floats(0.1, 10.0),
    a=st.floats(0.1, 10.0),
    twos=st.integers(-20, 20),
    variant=st.sampled_from(list(Variant)),
)
def test_decomposition_closure(wd, d, m, a, twos, variant):
    p = OscillatorParams(w=wd / d, d=d, m=m, a=a)
    e = rs_energy_decomposition(p, Branch.for_twos(twos), twos, variant)
    assert e.closure_error <= 1e-14 * e.total or e.closure_error == 0.0
    if twos != 0:
        assert (e.cross > 0) == (twos * Branch.for_twos(twos).sign > 0) or e.cross == 0.0


def test_exact_form_converges_to_classical_at_second_order():
    p = lambda d: OscillatorParams(w=1.0, d=d)  # noqa: E731
    gaps = [rs_energy_decomposition(p(d), Branch.PLUS, 0).total - classical_energy(p(d)) for d in (1e-1, 1e-2)]
    # gap ~ m a^2 w^4 d^2 / 6
    assert gaps[0] / gaps[1] == pytest.approx(100.0, rel=0.01)
    assert gaps[1] == pytest.approx(1e-4 / 6, rel=1e-3)


@pytest.mark.parametrize("twos", [1, 2, 3, -1, -2, -3])
def test_variant_agreement(twos):
    # C = 0.04/|twos| bounds the measured worst case (0.037, 0.017, 0.011) with margin
    c = 0.04 / abs(twos)
    for i in range(1, 31):
        x = 0.3 * i / 30
        for d in (0.01, 0.1, 1.0):
            p = OscillatorParams(w=x / d, d=d)
            b = Branch.for_twos(twos)
            exact = rs_energy_decomposition(p, b, twos, Variant.EXACT).total
            paper = rs_energy_decomposition(p, b, twos, Variant.PAPER).total
            assert abs(paper - exact) / exact <= c * x**2


def test_middle_term_examples():
    assert rs_middle_term(OscillatorParams(w=1.0, d=1.0), 1) == pytest.approx(-PI, rel=1e-15)
    assert rs_middle_term(OscillatorParams(w=0.0, d=1.0), 1) == 0.0
    assert rs_middle_term(OscillatorParams(w=2.0, d=0.5), 3) == pytest.approx(-12 * PI, rel=1e-15)
    with pytest.raises(ParityError):
        rs_middle_term(OscillatorParams(w=1.0, d=1.0), 2)


@given(wd=st.floats(0.0, 3.0), d=st.floats(0.01, 10.0), k=st.integers(-10, 10))
def test_middle_term_is_minus_cross(wd, d, k):
    p = OscillatorParams(w=wd / d, d=d, m=1.3, a=0.7)
    twos = 2 * k + 1
    assert rs_middle_term(p, twos) == rs_energy_decomposition(p, Branch.MINUS, twos, Variant.PAPER).cross


def test_qm_oscillator_examples():
    assert qm_oscillator_energy(QuantumConfig(1.0), 1, 1.0) == 1.0
    assert qm_oscillator_energy(QuantumConfig(1.0), 3, 2.0) == 6.0
    assert qm_oscillator_energy(QuantumConfig(5.0), 7, 0.0) == 0.0
    with pytest.raises(ParityError):
        qm_oscillator_energy(QuantumConfig(), 2, 1.0)


def test_square_well_rs_examples():
    p = OscillatorParams(w=0.0, d=1.0)
    assert square_well_rs_energy(p, Branch.PLUS, 2) == pytest.approx(2 * PI**2, rel=1e-15)
    assert square_well_rs_energy(p, Branch.MINUS, 1) == pytest.approx(PI**2 / 2, rel=1e-15)
    assert square_well_rs_energy(p, Branch.PLUS, 0) == 0.0


@given(d=st.floats(0.01, 10.0), m=st.floats(0.1, 10.0), a=st.floats(0.1, 10.0), twos=st.integers(-30, 30))
def test_zero_frequency_is_well(d, m, a, twos):
    p = OscillatorParams(w=0.0, d=d, m=m, a=a)
    b = Branch.for_twos(twos)
    for variant in Variant:
        assert rs_energy_decomposition(p, b, twos, variant).total == square_well_rs_energy(p, b, twos)


def test_combined_spectrum():
    levels = combined_well_spectrum(OscillatorParams(w=0.0, d=1.0), 3)
    assert [lv.branch for lv in levels] == [Branch.MINUS, Branch.PLUS, Branch.MINUS]
    assert [lv.energy for lv in levels] == pytest.approx([PI**2 / 2 * k for k in (1, 4, 9)], rel=1e-15)
    levels = combined_well_spectrum(OscillatorParams(w=0.0, d=0.3, m=2.0), 40)
    assert all(lv.n_squared == lv.n**2 for lv in levels)
    assert all((lv.branch is Branch.PLUS) == (lv.n % 2 == 0) for lv in levels)
    assert all(lv.energy / levels[0].energy == pytest.approx(lv.n**2, rel=1e-15) for lv in levels)
    with pytest.raises(ValueError):
        combined_well_spectrum(OscillatorParams(w=0.0, d=1.0), 0)


def test_combined_spectrum_matches_branch_levels():
    p = OscillatorParams(w=0.0, d=0.25, m=3.0, a=0.5)
    for lv in combined_well_spectrum(p, 12):
        assert lv.energy == pytest.approx(square_well_rs_energy(p, lv.branch, lv.n), rel=1e-15)


def test_paired_sum():
    rows = paired_well_sum(OscillatorParams(w=0.0, d=1.0), 3)
    assert [r[2] for r in rows] == [1, 13, 41]
    assert rows[1][3] == pytest.approx(13 * well_unit(OscillatorParams(w=0.0, d=1.0)), rel=1e-15)


def test_qm_square_well_examples():
    qc = QuantumConfig(eta=1.0)
    assert qm_square_well_energy(qc, 1.0, 1.0, 1) == pytest.approx(PI**2 / 8, rel=1e-15)
    ratio = qm_square_well_energy(qc, 1.0, 1.0, 2) / qm_square_well_energy(qc, 1.0, 1.0, 1)
    assert ratio == pytest.approx(4.0, rel=1e-15)
    assert qm_square_well_energy(QuantumConfig(eta=2.0), 1.0, 1.0, 1) == pytest.approx(PI**2 / 2, rel=1e-15)
    with pytest.raises(ValueError):
        qm_square_well_energy(qc, 1.0, 1.0, 0)


def test_planck_examples():
    # frozen from mpmath: 1/(e - 1), 1e-8/expm1(1e-8), 20/(e^20 - 1)
    assert planck_mean_energy(QuantumConfig(1.0, 1.0), 1.0) == pytest.approx(0.5819767068693264, rel=1e-15)
    assert planck_mean_energy(QuantumConfig(1e-8, 1.0), 1.0) == pytest.approx(1 - 5e-9, rel=1e-12)
    assert planck_mean_energy(QuantumConfig(20.0, 1.0), 1.0) == pytest.approx(20 * math.exp(-20), rel=1e-6)
    assert planck_mean_energy(QuantumConfig(20.0, 1.0), 1.0) == pytest.approx(4.122307253373824e-08, rel=1e-14)
    # past expm1 overflow: positive until exp(-x) underflows, never an exception
    assert planck_mean_energy(QuantumConfig(710.0, 1.0), 1.0) > 0.0
    assert planck_mean_energy(QuantumConfig(800.0, 1.0), 1.0) == 0.0
    with pytest.raises(ValueError):
        planck_mean_energy(QuantumConfig(), 0.0)


@given(x1=st.floats(1e-10, 50.0), x2=st.floats(1e-10, 50.0))
def test_planck_monotone_and_bounded(x1, x2):
    lo, hi = sorted((x1, x2))
    e_lo = planck_mean_energy(QuantumConfig(lo, 1.0), 1.0)
    e_hi = planck_mean_energy(QuantumConfig(hi, 1.0), 1.0)
    assert e_lo <= 1.0 and e_hi <= 1.0
    if hi > lo * (1 + 1e-9):
        assert e_hi < e_lo


def test_rayleigh_jeans_report():
    rep = rayleigh_jeans_report(QuantumConfig(1.0, 1.0), 1.0, etas=[1e-3, 1e-4, 5e-5, 1e-12])
    by_eta = {r.eta: r for r in rep.rows}
    assert 4e-5 <= by_eta[1e-4].relative_deviation <= 6e-5
    assert by_eta[5e-5].relative_deviation / by_eta[1e-4].relative_deviation == pytest.approx(0.5, rel=0.01)
    assert by_eta[1e-12].relative_deviation < 1e-11
    assert rep.converges
    with pytest.raises(ValueError):
        rayleigh_jeans_report(QuantumConfig(), 1.0, etas=[1e-3, 1e-2])


def test_correspondence_report_examples():
    p = OscillatorParams(w=1.0, d=0.1)
    rep = correspondence_report(p, QuantumConfig(1.0), 1, etas=[1.0, 0.1, 0.01])
    assert [q for _, q in rep.qm_vs_eta] == pytest.approx([1.0, 0.1, 0.01], rel=1e-15)
    assert rep.classical_energy == 0.5
    assert rep.qm_eta_to_zero == pytest.approx(0.0, abs=1e-15)
    assert rep.claims["qm_classical_correspondence_fails"]
    assert rep.qm_vs_w[-1] == (0.0, 0.0)
    assert rep.well_level == pytest.approx(PI**2 / 8, rel=1e-15)
    assert rep.claims["oscillator_to_well_fails"]
    assert rep.claims["rs_unifies_well_limit"]
    assert all(total == level for _, _, _, total, level in rep.rs_well_rows)
    assert rep.middle_term < 0 < rep.qm_comparator
    assert rep.claims["middle_term_sign_differs"]


def test_spectrum_table_layout():
    p = OscillatorParams(w=1.0, d=0.1)
    table = spectrum_table(p, QuantumConfig(), 5)
    keys = [(r.branch, r.twos) for r in table.rows]
    assert len(keys) == len(set(keys)) == 11
    totals = [r.energy.total for r in table.rows]
    assert totals == sorted(totals)
    assert table.rows[0].twos == 0
    assert all((r.qm_comparator is None) == (r.branch is Branch.PLUS) for r in table.rows)
