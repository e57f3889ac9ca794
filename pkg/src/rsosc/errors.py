"""Exception types raised by the oscillator toolkit."""


class NyquistViolation(ValueError):
    """w*d exceeds 1, so asin(w*d) has no real value."""


class ParityError(ValueError):
    """Doubled branch index has the wrong parity for its branch."""


class DegenerateRoot(ValueError):
    """Root scan requested at the tangency w*d == 1 (double roots)."""


class DegenerateBasis(ValueError):
    """Plus and minus modes coincide; the pair no longer spans grid solutions."""


class MismatchError(ValueError):
    """Objects that must share (w, d, kind) or (a, w, d) do not."""


class ZeroSolution(ValueError):
    """Both mode amplitudes vanish."""
