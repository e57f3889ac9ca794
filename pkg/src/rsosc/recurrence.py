"""The symmetric difference equation as a two-step grid recurrence.

Rearranging the central quotient gives

    g(n + 1) = g(n - 1) + 2 i w d g(n)

so any pair of starting samples (g0, g1) determines a unique grid solution.
When w*d < 1 that solution is a superposition of the canonical Plus mode
(twos = 0) and Minus mode (twos = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from rsosc.dispersion import (
    Branch,
    Mode,
    ModeKind,
    SampledSeries,
    check_nyquist,
    make_mode,
    mode_value,
)
from rsosc.errors import DegenerateBasis, ZeroSolution

# |e+ - e-| = 2 sqrt(1 - (w d)^2); refuse to divide by it this close to tangency
DEGENERACY_MARGIN = 1e-8
MAX_STEPS = 10**6


@dataclass(frozen=True)
class ModeAmplitudes:
    c_plus: complex
    c_minus: complex
    mode_plus: Mode
    mode_minus: Mode


def step_recurrence(g_prev: complex, g_curr: complex, w: float, d: float) -> complex:
    return g_prev + 2j * w * d * g_curr


def step_backward(g_next: complex, g_curr: complex, w: float, d: float) -> complex:
    """Inverse step: recover g(n - 1) from g(n + 1) and g(n)."""
    return g_next - 2j * w * d * g_curr


def integrate(g0: complex, g1: complex, w: float, d: float, steps: int) -> SampledSeries:
    """Run the recurrence from (g0, g1); returns ``steps + 1`` samples."""
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    values = [complex(g0), complex(g1)]
    for _ in range(steps - 1):
        values.append(step_recurrence(values[-2], values[-1], w, d))
    return SampledSeries(d=d, values=tuple(values))


def canonical_pair(w: float, d: float) -> tuple[Mode, Mode]:
    return (
        make_mode(w, d, Branch.PLUS, 0, ModeKind.EXACT),
        make_mode(w, d, Branch.MINUS, 1, ModeKind.EXACT),
    )


def fit_mode_amplitudes(g0: complex, g1: complex, w: float, d: float) -> ModeAmplitudes:
    """Split (g0, g1) into canonical Plus and Minus amplitudes (Cramer's rule)."""
    x = check_nyquist(w, d)
    if x > 1.0 - DEGENERACY_MARGIN:
        raise DegenerateBasis(f"w*d = {x!r} is within {DEGENERACY_MARGIN} of 1; modes coincide")
    plus, minus = canonical_pair(w, d)
    e_plus = mode_value(plus, 1)
    e_minus = mode_value(minus, 1)
    det = e_minus - e_plus
    c_plus = (g0 * e_minus - g1) / det
    c_minus = (g1 - g0 * e_plus) / det
    return ModeAmplitudes(c_plus=c_plus, c_minus=c_minus, mode_plus=plus, mode_minus=minus)


def reconstruct(amps: ModeAmplitudes, n: int) -> complex:
    return amps.c_plus * mode_value(amps.mode_plus, n) + amps.c_minus * mode_value(amps.mode_minus, n)


def parasitic_fraction(amps: ModeAmplitudes) -> float:
    """Share of the Minus (parasitic) amplitude, |c-| / (|c+| + |c-|)."""
    p, q = abs(amps.c_plus), abs(amps.c_minus)
    if p + q == 0.0:
        raise ZeroSolution("both amplitudes are zero")
    return q / (p + q)


def conditioning(w: float, d: float) -> float:
    """|e+ - e-| = 2 sqrt(1 - (w d)^2), the determinant of the amplitude fit."""
    x = w * d
    return 2.0 * math.sqrt(max(0.0, 1.0 - x * x))
