"""Continuum-limit study: how fast the Plus ground frequency approaches w as d shrinks.

    python scripts/convergence_study.py --w 0.5 1 2 --points 13
"""

import argparse
from dataclasses import dataclass

import numpy as np

from rsosc.dispersion import continuum_limit_error, fit_convergence_order


@dataclass
class StudyConfig:
    ws: tuple[float, ...] = (0.5, 1.0, 2.0)
    wd_max: float = 1e-1
    wd_min: float = 1e-4
    points: int = 13


def run(cfg: StudyConfig) -> list[tuple[float, float, float]]:
    results = []
    for w in cfg.ws:
        ds = np.geomspace(cfg.wd_max, cfg.wd_min, cfg.points) / w
        errors = [continuum_limit_error(w, float(d)) for d in ds]
        slope, c = fit_convergence_order(ds, errors)
        results.append((w, slope, c / (w**3 / 6)))
        print(f"w = {w}")
        for d, e in zip(ds, errors):
            print(f"  d = {d:.3e}   |omega - w| = {e:.6e}   / (w^3 d^2 / 6) = {e / (w**3 * d**2 / 6):.6f}")
    print("\n    w    order   C / (w^3/6)")
    for w, slope, ratio in results:
        print(f"{w:5g}  {slope:7.4f}  {ratio:10.5f}")
    return results


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--w", type=float, nargs="+", default=list(StudyConfig.ws))
    p.add_argument("--points", type=int, default=StudyConfig.points)
    args = p.parse_args()
    run(StudyConfig(ws=tuple(args.w), points=args.points))


if __name__ == "__main__":
    main()
