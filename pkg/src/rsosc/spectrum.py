"""Energy spectra of the reciprocal-symmetric oscillator and their limits.

Every mode frequency splits as omega = pi*twos/d + sign * w_eff, so the
energy 1/2 m (a omega)^2 has three terms: a leading alias term, a cross term
linear in w_eff and the quadratic term.  ``Variant.PAPER`` uses w_eff = w
(the expansion written with the bare base frequency); ``Variant.EXACT`` uses
w_eff = asin(w d)/d, consistent with the exact dispersion roots.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from rsosc.dispersion import (
    Branch,
    OscillatorParams,
    check_nyquist,
    check_parity,
    dispersion_frequency,
)


class Variant(enum.Enum):
    PAPER = "paper"
    EXACT = "exact"


@dataclass(frozen=True)
class QuantumConfig:
    eta: float = 1.0
    kT: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.eta) and self.eta > 0):
            raise ValueError(f"eta must be finite and > 0, got {self.eta}")
        if not (math.isfinite(self.kT) and self.kT > 0):
            raise ValueError(f"kT must be finite and > 0, got {self.kT}")


@dataclass(frozen=True)
class EnergyDecomposition:
    leading: float
    cross: float
    quadratic: float
    total: float
    variant: Variant
    omega: float

    @property
    def closure_error(self) -> float:
        return abs(self.leading + self.cross + self.quadratic - self.total)


def _alias_rate(twos: int, d: float) -> float:
    return math.pi * twos / d


def _cross_term(m: float, a: float, twos: int, d: float, w_eff: float) -> float:
    # unsigned; rs_middle_term and the Minus-branch cross term both negate this value
    return m * a * a * _alias_rate(twos, d) * w_eff


def _kinetic(m: float, a: float, omega: float) -> float:
    return 0.5 * m * (a * omega) ** 2


def classical_energy(params: OscillatorParams) -> float:
    return 0.5 * params.m * (params.a * params.w) ** 2


def effective_frequency(params: OscillatorParams, variant: Variant) -> float:
    if variant is Variant.EXACT:
        x = check_nyquist(params.w, params.d)
        return math.asin(x) / params.d
    return params.w


def rs_energy_decomposition(
    params: OscillatorParams, branch: Branch, twos: int, variant: Variant = Variant.EXACT
) -> EnergyDecomposition:
    """Three-term split of 1/2 m (a omega)^2 for one mode.

    The total is evaluated from omega directly, not from the sum of the terms,
    so the closure ``leading + cross + quadratic == total`` is a real check.
    """
    check_parity(branch, twos)
    m, a, d = params.m, params.a, params.d
    w_eff = effective_frequency(params, variant)
    if variant is Variant.EXACT:
        omega = dispersion_frequency(params.w, d, branch, twos)
    else:
        omega = _alias_rate(twos, d) + branch.sign * params.w
    leading = _kinetic(m, a, _alias_rate(twos, d))
    cross = branch.sign * _cross_term(m, a, twos, d, w_eff)
    quadratic = _kinetic(m, a, w_eff)
    return EnergyDecomposition(
        leading=leading,
        cross=cross,
        quadratic=quadratic,
        total=_kinetic(m, a, omega),
        variant=variant,
        omega=omega,
    )


def rs_middle_term(params: OscillatorParams, twos_minus: int) -> float:
    """Minus-branch cross term, -m a^2 (pi/d) twos w, with the bare w."""
    check_parity(Branch.MINUS, twos_minus)
    return -_cross_term(params.m, params.a, twos_minus, params.d, params.w)


def qm_oscillator_energy(qc: QuantumConfig, twos_minus: int, w: float) -> float:
    """eta * twos * w.  With twos = 2n + 1 this is twice the usual eta w (n + 1/2)."""
    check_parity(Branch.MINUS, twos_minus)
    if not w >= 0:
        raise ValueError(f"w must be >= 0, got {w}")
    return qc.eta * twos_minus * w


def square_well_rs_energy(params: OscillatorParams, branch: Branch, twos: int) -> float:
    """1/2 m (a/d)^2 (pi twos)^2, the w = 0 level of either branch."""
    check_parity(branch, twos)
    return _kinetic(params.m, params.a, _alias_rate(twos, params.d))


@dataclass(frozen=True)
class WellLevel:
    n: int
    branch: Branch
    n_squared: int
    energy: float


def well_unit(params: OscillatorParams) -> float:
    """1/2 m (a/d)^2 pi^2, the energy of level n = 1."""
    return 0.5 * params.m * (params.a / params.d) ** 2 * math.pi**2


def combined_well_spectrum(params: OscillatorParams, max_twos: int) -> list[WellLevel]:
    """Union of Plus (even) and Minus (odd) well levels for n = 1..max_twos.

    Level n carries the exact integer n**2; its energy is well_unit * n**2.
    """
    if max_twos < 1:
        raise ValueError(f"max_twos must be >= 1, got {max_twos}")
    unit = well_unit(params)
    return [
        WellLevel(n=n, branch=Branch.for_twos(n), n_squared=n * n, energy=unit * (n * n))
        for n in range(1, max_twos + 1)
    ]


def paired_well_sum(params: OscillatorParams, max_pairs: int) -> list[tuple[int, int, int, float]]:
    """Literal per-pair sums (twos+)^2 + (twos-)^2 over pairs (2k, 2k + 1).

    Returns (twos_plus, twos_minus, integer sum of squares, energy) rows.
    """
    unit = well_unit(params)
    rows = []
    for k in range(max_pairs):
        tp, tm = 2 * k, 2 * k + 1
        sq = tp * tp + tm * tm
        rows.append((tp, tm, sq, unit * sq))
    return rows


def qm_square_well_energy(qc: QuantumConfig, m: float, a: float, twos: int) -> float:
    if isinstance(twos, bool) or int(twos) != twos or twos < 1:
        raise ValueError(f"twos must be an integer >= 1, got {twos!r}")
    return (1.0 / (2.0 * m)) * (qc.eta / (2.0 * a)) ** 2 * (math.pi * twos) ** 2


def planck_mean_energy(qc: QuantumConfig, w: float) -> float:
    """eta w / (exp(eta w / kT) - 1), written as kT * x / expm1(x)."""
    if not w > 0:
        raise ValueError(f"w must be > 0, got {w}")
    x = qc.eta * w / qc.kT
    if x > 700.0:
        # expm1 overflows near 709.8; exp(-x) already carries the full answer
        return qc.eta * w * math.exp(-x)
    return qc.kT * x / math.expm1(x)


@dataclass(frozen=True)
class RayleighJeansRow:
    eta: float
    x: float
    planck: float
    relative_deviation: float
    first_order: float

    @property
    def ratio(self) -> float:
        """Observed deviation over the first-order prediction x/2."""
        return self.relative_deviation / self.first_order


@dataclass(frozen=True)
class RayleighJeansReport:
    w: float
    kT: float
    rows: tuple[RayleighJeansRow, ...]
    converges: bool


DEFAULT_ETA_SWEEP = tuple(10.0**-k for k in range(0, 9))


def rayleigh_jeans_report(
    qc: QuantumConfig, w: float, etas: Sequence[float] | None = None
) -> RayleighJeansReport:
    """Planck mean energy over a decreasing eta sweep, against kT.

    ``converges`` requires the relative deviation to shrink monotonically and
    the last row to match the first-order term eta w / (2 kT) within 1%.
    """
    etas = tuple(etas) if etas is not None else tuple(qc.eta * e for e in DEFAULT_ETA_SWEEP)
    if any(b >= a for a, b in zip(etas, etas[1:])):
        raise ValueError("eta sweep must be strictly decreasing")
    rows = []
    for eta in etas:
        sub = QuantumConfig(eta=eta, kT=qc.kT)
        p = planck_mean_energy(sub, w)
        x = eta * w / qc.kT
        rows.append(
            RayleighJeansRow(
                eta=eta, x=x, planck=p, relative_deviation=(qc.kT - p) / qc.kT, first_order=0.5 * x
            )
        )
    devs = [r.relative_deviation for r in rows]
    monotone = all(b < a for a, b in zip(devs, devs[1:]))
    converges = monotone and abs(rows[-1].ratio - 1.0) < 0.01
    return RayleighJeansReport(w=w, kT=qc.kT, rows=tuple(rows), converges=converges)


@dataclass(frozen=True)
class CorrespondenceReport:
    """Three limit checks with their supporting numbers.

    ``claims`` maps claim names to booleans; the evidence tuples hold the rows
    each claim was decided from.
    """

    claims: dict[str, bool]
    classical_energy: float
    qm_vs_eta: tuple[tuple[float, float], ...]
    qm_eta_to_zero: float
    qm_vs_w: tuple[tuple[float, float], ...]
    well_level: float
    rs_well_rows: tuple[tuple[str, int, str, float, float], ...]
    middle_term: float
    qm_comparator: float


DEFAULT_W_SWEEP = (1.0, 0.1, 0.01, 0.001, 0.0)


def correspondence_report(
    params: OscillatorParams,
    qc: QuantumConfig,
    twos_minus: int = 1,
    etas: Sequence[float] | None = None,
    w_factors: Sequence[float] = DEFAULT_W_SWEEP,
    twos_max: int = 5,
) -> CorrespondenceReport:
    check_parity(Branch.MINUS, twos_minus)
    etas = tuple(etas) if etas is not None else tuple(qc.eta * e for e in (1.0, 0.1, 0.01, 0.001))

    # (i) eta -> 0: the comparator is linear in eta, so its limit is exactly 0
    classical = classical_energy(params)
    qm_eta = tuple((e, qm_oscillator_energy(QuantumConfig(e, qc.kT), twos_minus, params.w)) for e in etas)
    (e1, q1), (e2, q2) = qm_eta[-1], qm_eta[-2]
    qm_limit = q1 - e1 * (q2 - q1) / (e2 - e1)
    qm_classical_fails = classical > 0 and abs(qm_limit - classical) > 1e-12 * classical

    # (ii) w -> 0: oscillator comparator vanishes, the well level does not
    qm_w = tuple((params.w * f, qm_oscillator_energy(qc, twos_minus, params.w * f)) for f in w_factors)
    well = qm_square_well_energy(qc, params.m, params.a, abs(twos_minus))
    qm_at_zero = qm_oscillator_energy(qc, twos_minus, 0.0)
    osc_to_well_fails = well > 0 and abs(qm_at_zero - well) > 1e-12 * well

    # (iii) RS energies at w = 0 are the RS well levels, term for term
    free = OscillatorParams(w=0.0, d=params.d, m=params.m, a=params.a)
    rs_rows = []
    unified = True
    for twos in range(-twos_max, twos_max + 1):
        branch = Branch.for_twos(twos)
        level = square_well_rs_energy(free, branch, twos)
        for variant in Variant:
            total = rs_energy_decomposition(free, branch, twos, variant).total
            unified = unified and total == level
            rs_rows.append((branch.value, twos, variant.value, total, level))

    middle = rs_middle_term(params, twos_minus)
    comparator = qm_oscillator_energy(qc, twos_minus, params.w)
    claims = {
        "qm_classical_correspondence_fails": qm_classical_fails,
        "oscillator_to_well_fails": osc_to_well_fails,
        "rs_unifies_well_limit": unified,
        "middle_term_sign_differs": (middle < 0) != (comparator < 0) and middle != 0,
    }
    return CorrespondenceReport(
        claims=claims,
        classical_energy=classical,
        qm_vs_eta=qm_eta,
        qm_eta_to_zero=qm_limit,
        qm_vs_w=qm_w,
        well_level=well,
        rs_well_rows=tuple(rs_rows),
        middle_term=middle,
        qm_comparator=comparator,
    )


@dataclass(frozen=True)
class SpectrumRow:
    branch: Branch
    twos: int
    omega: float
    energy: EnergyDecomposition
    qm_comparator: float | None

    def as_record(self) -> dict:
        return {
            "branch": self.branch.value,
            "twos": self.twos,
            "omega": self.omega,
            "leading": self.energy.leading,
            "cross": self.energy.cross,
            "quadratic": self.energy.quadratic,
            "total": self.energy.total,
            "qm_comparator": self.qm_comparator,
        }


SPECTRUM_FIELDS = ("branch", "twos", "omega", "leading", "cross", "quadratic", "total", "qm_comparator")


@dataclass(frozen=True)
class SpectrumTable:
    params: OscillatorParams
    rows: tuple[SpectrumRow, ...]
    variant: Variant

    def records(self) -> list[dict]:
        return [row.as_record() for row in self.rows]


def spectrum_table(
    params: OscillatorParams,
    qc: QuantumConfig,
    twos_max: int,
    variant: Variant = Variant.EXACT,
) -> SpectrumTable:
    """Both branches for twos in [-twos_max, twos_max], sorted by total energy.

    The quantum comparator eta*twos*w is only defined for Minus rows.
    """
    if twos_max < 0:
        raise ValueError(f"twos_max must be >= 0, got {twos_max}")
    rows = []
    for twos in range(-twos_max, twos_max + 1):
        branch = Branch.for_twos(twos)
        energy = rs_energy_decomposition(params, branch, twos, variant)
        comparator = qm_oscillator_energy(qc, twos, params.w) if branch is Branch.MINUS else None
        rows.append(SpectrumRow(branch, twos, energy.omega, energy, comparator))
    rows.sort(key=lambda r: (r.energy.total, r.twos))
    return SpectrumTable(params=params, rows=tuple(rows), variant=variant)


__all__ = [
    "Variant",
    "QuantumConfig",
    "EnergyDecomposition",
    "classical_energy",
    "rs_energy_decomposition",
    "rs_middle_term",
    "qm_oscillator_energy",
    "square_well_rs_energy",
    "combined_well_spectrum",
    "paired_well_sum",
    "qm_square_well_energy",
    "planck_mean_energy",
    "rayleigh_jeans_report",
    "correspondence_report",
    "spectrum_table",
]
