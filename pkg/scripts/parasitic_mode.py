"""How much of the parasitic Minus mode a naive continuum start injects.

Starts the recurrence from g0 = 1, g1 = exp(i w d) and reports the Minus
amplitude fraction together with the long-run deviation from the mode sum.

    python scripts/parasitic_mode.py --steps 2000
"""

import argparse
import cmath
from dataclasses import dataclass

import numpy as np

from rsosc.recurrence import conditioning, fit_mode_amplitudes, integrate, parasitic_fraction, reconstruct


@dataclass
class ParasiticConfig:
    w: float = 1.0
    wd_values: tuple[float, ...] = tuple(np.round(np.linspace(0.05, 0.95, 10), 3))
    steps: int = 1000


def run(cfg: ParasiticConfig) -> None:
    print("   wd    parasitic    (wd)^3/12    det   max|g - sum|")
    for wd in cfg.wd_values:
        d = wd / cfg.w
        g1 = cmath.exp(1j * cfg.w * d)
        amps = fit_mode_amplitudes(1.0, g1, cfg.w, d)
        s = integrate(1.0, g1, cfg.w, d, cfg.steps)
        dev = max(abs(s[n] - reconstruct(amps, n)) for n in s.indices)
        print(f"{wd:5.3f}  {parasitic_fraction(amps):11.4e}  {wd**3 / 12:11.4e}  "
              f"{conditioning(cfg.w, d):5.3f}  {dev:.2e}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--w", type=float, default=ParasiticConfig.w)
    p.add_argument("--steps", type=int, default=ParasiticConfig.steps)
    args = p.parse_args()
    run(ParasiticConfig(w=args.w, steps=args.steps))


if __name__ == "__main__":
    main()
