"""Displacement families that agree with a sampled sinusoid at t = n*d.

Observing x = a sin(w t) only at multiples of d cannot distinguish it from

    x(t) = a sin((pi*twos/d + sign * w) t)

Plus families (twos even) reproduce every sample; Minus families (twos odd)
reproduce odd samples, including t = d, and flip sign at even ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from rsosc.dispersion import Branch, ModeKind, check_parity
from rsosc.errors import MismatchError

GRID_TOL = 1e-12
DEFAULT_T_POINTS = 32


@dataclass(frozen=True)
class DisplacementFamily:
    a: float
    w: float
    d: float
    branch: Branch
    twos: int

    def __post_init__(self) -> None:
        if not self.d > 0:
            raise ValueError(f"d must be > 0, got {self.d}")
        check_parity(self.branch, self.twos)

    @classmethod
    def for_twos(cls, a: float, w: float, d: float, twos: int) -> "DisplacementFamily":
        return cls(a=a, w=w, d=d, branch=Branch.for_twos(twos), twos=twos)

    @property
    def kind(self) -> ModeKind:
        return ModeKind.ALIAS

    @property
    def omega(self) -> float:
        return math.pi * self.twos / self.d + self.branch.sign * self.w

    @property
    def label(self) -> str:
        return f"{self.branch.value}{self.twos}"


def classical_displacement(a: float, w: float, t: float) -> float:
    return a * math.sin(w * t)


def _reduced_sin(twos: int, cycles: int, frac: float, base_phase: float) -> float:
    # sin(pi*twos*(cycles + frac) + base) with the integer part folded into a sign
    sign = -1.0 if (twos * cycles) % 2 else 1.0
    return sign * math.sin(math.pi * twos * frac + base_phase)


def family_displacement(fam: DisplacementFamily, t: float) -> float:
    """a sin(omega t), with the alias part of the phase reduced by whole half-turns."""
    q = t / fam.d
    cycles = math.floor(q)
    return fam.a * _reduced_sin(fam.twos, cycles, q - cycles, fam.branch.sign * fam.w * t)


def family_sample(fam: DisplacementFamily, n: int) -> float:
    """Displacement at the measurable time t = n*d."""
    return fam.a * _reduced_sin(fam.twos, n, 0.0, fam.branch.sign * fam.w * (n * fam.d))


def grid_expectation(fam: DisplacementFamily, n: int) -> float:
    """What the family must equal at t = n*d: the classical sample, sign-flipped at even n for Minus."""
    x = classical_displacement(fam.a, fam.w, n * fam.d)
    if fam.branch is Branch.MINUS and n % 2 == 0:
        return -x
    return x


def _check_shared(a: float, w: float, d: float, families: Sequence[DisplacementFamily]) -> None:
    for fam in families:
        if (fam.a, fam.w, fam.d) != (a, w, d):
            raise MismatchError(f"family {fam.label} has (a, w, d)={(fam.a, fam.w, fam.d)}, expected {(a, w, d)}")


@dataclass(frozen=True)
class AgreementRow:
    n: int
    t: float
    classical: float
    values: tuple[float, ...]
    deviations: tuple[float, ...]


@dataclass(frozen=True)
class AgreementReport:
    labels: tuple[str, ...]
    rows: tuple[AgreementRow, ...]
    max_deviation: float
    tolerance: float
    first_sample_agrees: bool

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance and self.first_sample_agrees


def agreement_check(
    a: float, w: float, d: float, families: Sequence[DisplacementFamily], n_max: int
) -> AgreementReport:
    """Per-sample deviation of each family from its grid expectation for n in [0, n_max].

    Also records whether every family matches a sin(w d) at n = 1.
    """
    _check_shared(a, w, d, families)
    tol = GRID_TOL * a
    rows = []
    worst = 0.0
    for n in range(n_max + 1):
        values = tuple(family_sample(f, n) for f in families)
        devs = tuple(abs(v - grid_expectation(f, n)) for f, v in zip(families, values))
        worst = max(worst, *devs) if devs else worst
        rows.append(AgreementRow(n, n * d, classical_displacement(a, w, n * d), values, devs))
    observed = classical_displacement(a, w, d)
    first = all(abs(family_sample(f, 1) - observed) <= tol for f in families)
    return AgreementReport(
        labels=tuple(f.label for f in families),
        rows=tuple(rows),
        max_deviation=worst,
        tolerance=tol,
        first_sample_agrees=first,
    )


@dataclass(frozen=True)
class DivergenceReport:
    labels: tuple[str, ...]
    times: tuple[float, ...]
    values: tuple[tuple[float, ...], ...]
    spreads: tuple[float, ...]
    max_spread: float
    spread_at_d: float


def default_t_grid(d: float, points: int = DEFAULT_T_POINTS) -> list[float]:
    return [d * j / (points + 1) for j in range(1, points + 1)]


def sub_resolution_divergence(
    a: float,
    w: float,
    d: float,
    families: Sequence[DisplacementFamily],
    t_grid: Sequence[float] | None = None,
) -> DivergenceReport:
    """Tabulate the families strictly between samples, where nothing was measured."""
    _check_shared(a, w, d, families)
    times = tuple(t_grid) if t_grid is not None else tuple(default_t_grid(d))
    for t in times:
        if not 0.0 < t < d:
            raise ValueError(f"t={t} is not strictly inside (0, d={d})")
    values = tuple(tuple(family_displacement(f, t) for f in families) for t in times)
    spreads = tuple((max(v) - min(v)) if v else 0.0 for v in values)
    at_d = [family_sample(f, 1) for f in families]
    return DivergenceReport(
        labels=tuple(f.label for f in families),
        times=times,
        values=values,
        spreads=spreads,
        max_spread=max(spreads, default=0.0),
        spread_at_d=(max(at_d) - min(at_d)) if at_d else 0.0,
    )
