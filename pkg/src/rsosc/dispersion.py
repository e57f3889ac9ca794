"""Symmetric difference operator and the modes that solve it exactly.

A grid function g(t) with t = n*d solves

    (g(t + d) - g(t - d)) / (2 d) = i w g(t)

when g = exp(i omega t) and sin(omega d) = w d.  For every w*d <= 1 the roots
come in two families, labelled here by the doubled index ``twos = 2 s``:

    Plus  (twos even):  omega = (pi*twos + asin(w d)) / d
    Minus (twos odd):   omega = (pi*twos - asin(w d)) / d

The alias-family variant replaces asin(w d)/d with w itself; it matches the
exact dispersion only to O((w d)^3) and is kept as a separate ``ModeKind``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import bisect

from rsosc.errors import (
    DegenerateRoot,
    MismatchError,
    NyquistViolation,
    ParityError,
)

TWO_PI = 2.0 * math.pi


class Branch(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1

    @classmethod
    def for_twos(cls, twos: int) -> "Branch":
        """Branch implied by the parity of a doubled index."""
        return cls.PLUS if twos % 2 == 0 else cls.MINUS


class ModeKind(enum.Enum):
    EXACT = "exact_dispersion"
    ALIAS = "alias_family"


def check_parity(branch: Branch, twos: int) -> None:
    if isinstance(twos, bool) or int(twos) != twos:
        raise ParityError(f"twos must be an integer, got {twos!r}")
    if (twos % 2 == 0) != (branch is Branch.PLUS):
        raise ParityError(
            f"twos={twos} is {'even' if twos % 2 == 0 else 'odd'}, "
            f"incompatible with branch {branch.value}"
        )


def check_nyquist(w: float, d: float) -> float:
    """Return w*d, raising if it leaves the real-frequency domain."""
    if not d > 0:
        raise ValueError(f"time quantum d must be > 0, got {d}")
    if not w >= 0:
        raise ValueError(f"base frequency w must be >= 0, got {w}")
    x = w * d
    if x > 1.0:
        raise NyquistViolation(
            f"w*d = {x!r} exceeds the Nyquist bound w*d <= 1; asin(w*d) is undefined"
        )
    return x


@dataclass(frozen=True)
class OscillatorParams:
    """Physical configuration of the oscillator.

    ``k`` is optional; when given it must agree with ``w = sqrt(k/m)``.
    Use :meth:`from_spring` to derive ``w`` from ``k``.
    """

    w: float
    d: float
    m: float = 1.0
    a: float = 1.0
    k: float | None = None

    def __post_init__(self) -> None:
        for name in ("w", "d", "m", "a"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
        if not self.d > 0:
            raise ValueError(f"d must be > 0, got {self.d}")
        if not self.m > 0:
            raise ValueError(f"m must be > 0, got {self.m}")
        if not self.a > 0:
            raise ValueError(f"a must be > 0, got {self.a}")
        if not self.w >= 0:
            raise ValueError(f"w must be >= 0, got {self.w}")
        if self.k is not None:
            expected = angular_frequency_from_spring(self.k, self.m)
            if not math.isclose(self.w, expected, rel_tol=1e-15):
                raise ValueError(f"w={self.w} inconsistent with sqrt(k/m)={expected}")

    @classmethod
    def from_spring(cls, k: float, d: float, m: float = 1.0, a: float = 1.0) -> "OscillatorParams":
        return cls(w=angular_frequency_from_spring(k, m), d=d, m=m, a=a, k=k)

    @property
    def wd(self) -> float:
        return self.w * self.d

    @property
    def nyquist_ok(self) -> bool:
        """True when exact-dispersion modes exist (w*d <= 1)."""
        return self.wd <= 1.0


@dataclass(frozen=True)
class Mode:
    """One solution branch: g(n d) = exp(i omega n d)."""

    branch: Branch
    twos: int
    w: float
    d: float
    omega: float
    kind: ModeKind = ModeKind.EXACT

    @property
    def offset_phase(self) -> float:
        """Signed non-alias part of the per-step phase, +-asin(w d) or +-w d."""
        x = self.w * self.d
        base = math.asin(x) if self.kind is ModeKind.EXACT else x
        return self.branch.sign * base


@dataclass(frozen=True)
class SampledSeries:
    """Complex samples on t = n*d for n = origin_n, origin_n + 1, ..."""

    d: float
    values: tuple[complex, ...]
    origin_n: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> complex:
        idx = n - self.origin_n
        if idx < 0 or idx >= len(self.values):
            raise IndexError(f"grid index {n} not stored")
        return self.values[idx]

    @property
    def indices(self) -> range:
        return range(self.origin_n, self.origin_n + len(self.values))

    @property
    def times(self) -> list[float]:
        return [n * self.d for n in self.indices]

    @classmethod
    def from_mode(cls, mode: Mode, n_start: int, n_stop: int) -> "SampledSeries":
        """Sample ``mode`` on n_start <= n < n_stop."""
        return cls(
            d=mode.d,
            values=tuple(mode_value(mode, n) for n in range(n_start, n_stop)),
            origin_n=n_start,
        )


def angular_frequency_from_spring(k: float, m: float) -> float:
    if not k >= 0:
        raise ValueError(f"spring constant must be >= 0, got {k}")
    if not m > 0:
        raise ValueError(f"mass must be > 0, got {m}")
    return math.sqrt(k / m)


def dispersion_frequency(w: float, d: float, branch: Branch, twos: int) -> float:
    """Exact root omega of sin(omega d) = w d on the given branch.

    At the tangency w*d == 1 this returns (pi*twos +- pi/2)/d, and Plus/Minus
    frequencies coincide pairwise.
    """
    x = check_nyquist(w, d)
    check_parity(branch, twos)
    return (math.pi * twos + branch.sign * math.asin(x)) / d


def make_mode(w: float, d: float, branch: Branch, twos: int, kind: ModeKind = ModeKind.EXACT) -> Mode:
    if kind is ModeKind.EXACT:
        omega = dispersion_frequency(w, d, branch, twos)
    else:
        if not d > 0:
            raise ValueError(f"time quantum d must be > 0, got {d}")
        check_parity(branch, twos)
        omega = math.pi * twos / d + branch.sign * w
    return Mode(branch=branch, twos=int(twos), w=w, d=d, omega=omega, kind=kind)


def _twos_candidates(lo: float, hi: float, d: float, offset: float) -> range:
    # integers k with pi*k + offset possibly inside [lo*d, hi*d]
    k_lo = math.floor((lo * d - offset) / math.pi) - 2
    k_hi = math.ceil((hi * d - offset) / math.pi) + 2
    return range(k_lo, k_hi + 1)


def default_window(d: float) -> tuple[float, float]:
    """First four alias bands, |omega| <= 4 pi / d."""
    return (-4.0 * math.pi / d, 4.0 * math.pi / d)


def enumerate_modes(
    w: float,
    d: float,
    omega_window: tuple[float, float] | None = None,
    kind: ModeKind = ModeKind.EXACT,
) -> list[Mode]:
    """All modes of both branches with omega inside the closed window, ascending."""
    if kind is ModeKind.EXACT:
        check_nyquist(w, d)
    elif not d > 0:
        raise ValueError(f"time quantum d must be > 0, got {d}")
    lo, hi = omega_window if omega_window is not None else default_window(d)
    if not lo < hi:
        raise ValueError(f"empty window [{lo}, {hi}]")

    modes = []
    for branch in Branch:
        probe = make_mode(w, d, branch, 0 if branch is Branch.PLUS else 1, kind)
        for k in _twos_candidates(lo, hi, d, probe.offset_phase):
            if (k % 2 == 0) != (branch is Branch.PLUS):
                continue
            mode = make_mode(w, d, branch, k, kind)
            if lo <= mode.omega <= hi:
                modes.append(mode)
    modes.sort(key=lambda m: (m.omega, m.branch is Branch.MINUS, m.twos))
    return modes


def mode_value(mode: Mode, n: int) -> complex:
    """exp(i omega n d) with the phase reduced per step.

    omega*d mod 2 pi is split into an exact multiple of pi (from the parity of
    twos) and the small offset phase, so rounding grows with n*|offset| only.
    """
    sign = -1.0 if (mode.twos * n) % 2 else 1.0
    phase = math.fmod(n * mode.offset_phase, TWO_PI)
    return sign * cmath.exp(1j * phase)


def symmetric_quotient(g_next: complex, g_prev: complex, d: float) -> complex:
    """(g(t + d) - g(t - d)) / (2 d); swapping the samples and negating d is a no-op."""
    return (g_next - g_prev) / (2.0 * d)


def central_difference(series: SampledSeries, n: int) -> complex:
    return symmetric_quotient(series[n + 1], series[n - 1], series.d)


def residual(mode: Mode, w: float, n: int) -> float:
    """|D g(n) - i w g(n)| for the mode sampled at n-1, n, n+1."""
    series = SampledSeries.from_mode(mode, n - 1, n + 2)
    return abs(central_difference(series, n) - 1j * w * series[n])


def reciprocity_product(mode_plus: Mode, mode_minus: Mode, n: int) -> complex:
    """g+(n d) * g-(n d); equals (-1)^n for every valid branch pair."""
    if (mode_plus.w, mode_plus.d, mode_plus.kind) != (mode_minus.w, mode_minus.d, mode_minus.kind):
        raise MismatchError("reciprocal pair must share w, d and kind")
    if mode_plus.branch is not Branch.PLUS or mode_minus.branch is not Branch.MINUS:
        raise MismatchError("expected (Plus, Minus) modes in that order")
    return mode_value(mode_plus, n) * mode_value(mode_minus, n)


def continuum_limit_error(w: float, d: float) -> float:
    """|omega_plus(twos=0) - w|, which falls off as w^3 d^2 / 6."""
    return abs(dispersion_frequency(w, d, Branch.PLUS, 0) - w)


def fit_convergence_order(ds: Sequence[float], errors: Sequence[float]) -> tuple[float, float]:
    """Least-squares fit error ~ C d^p on log axes; returns (p, C)."""
    slope, intercept = np.polyfit(np.log(np.asarray(ds)), np.log(np.asarray(errors)), 1)
    return float(slope), float(math.exp(intercept))


def oracle_root_scan(
    w: float,
    d: float,
    omega_window: tuple[float, float] | None = None,
) -> list[float]:
    """Roots of sin(omega d) = w d in the window, by sign-change bisection.

    Independent of the closed-form branches: it only evaluates the dispersion
    function.  The scan step is at most pi/(64 d), tightened near the tangency
    where neighbouring roots approach each other (their separation in omega*d
    is 2*acos(w d) >= 2*sqrt(2 (1 - w d))).
    """
    x = check_nyquist(w, d)
    if x >= 1.0:
        raise DegenerateRoot("w*d == 1: roots are double, bisection cannot bracket them")
    lo, hi = omega_window if omega_window is not None else default_window(d)
    if not lo < hi:
        raise ValueError(f"empty window [{lo}, {hi}]")

    def f(omega: float) -> float:
        return math.sin(omega * d) - x

    step = min(math.pi / 64.0, 0.5 * math.sqrt(2.0 * (1.0 - x))) / d
    count = max(2, math.ceil((hi - lo) / step) + 1)
    grid = np.linspace(lo, hi, count)
    values = [f(float(g)) for g in grid]

    roots = []
    for i, value in enumerate(values):
        if value == 0.0:
            roots.append(float(grid[i]))
    for i in range(count - 1):
        f0, f1 = values[i], values[i + 1]
        if f0 == 0.0 or f1 == 0.0:
            continue
        if (f0 < 0.0) != (f1 < 0.0):
            roots.append(bisect(f, float(grid[i]), float(grid[i + 1]), xtol=1e-12, maxiter=200))
    roots.sort()
    return roots
