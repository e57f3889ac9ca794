"""Alias families: identical at sample times, different between them.

    python scripts/alias_demo.py --twos 0 2 1 -1 --n-max 8
"""

import argparse
from dataclasses import dataclass

from rsosc.sampling import DisplacementFamily, agreement_check, sub_resolution_divergence


@dataclass
class AliasConfig:
    a: float = 1.0
    w: float = 1.0
    d: float = 0.1
    twos: tuple[int, ...] = (0, 2, 1, -1)
    n_max: int = 8
    t_points: int = 9


def run(cfg: AliasConfig) -> None:
    fams = [DisplacementFamily.for_twos(cfg.a, cfg.w, cfg.d, k) for k in cfg.twos]
    rep = agreement_check(cfg.a, cfg.w, cfg.d, fams, cfg.n_max)
    print("on the grid t = n d")
    print("   n " + "".join(f"{label:>12}" for label in rep.labels))
    for row in rep.rows:
        print(f"{row.n:4d} " + "".join(f"{v:12.6f}" for v in row.values))
    print(f"max deviation from the expected grid pattern: {rep.max_deviation:.2e}\n")

    t_grid = [cfg.d * j / (cfg.t_points + 1) for j in range(1, cfg.t_points + 1)]
    div = sub_resolution_divergence(cfg.a, cfg.w, cfg.d, fams, t_grid)
    print("between samples, 0 < t < d")
    print("       t " + "".join(f"{label:>12}" for label in div.labels) + "      spread")
    for t, values, spread in zip(div.times, div.values, div.spreads):
        print(f"{t:8.4f} " + "".join(f"{v:12.6f}" for v in values) + f"  {spread:10.6f}")
    print(f"spread at t = d: {div.spread_at_d:.2e}, largest spread below d: {div.max_spread:.4f}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--twos", type=int, nargs="+", default=list(AliasConfig.twos))
    p.add_argument("--n-max", type=int, default=AliasConfig.n_max)
    p.add_argument("--d", type=float, default=AliasConfig.d)
    args = p.parse_args()
    run(AliasConfig(twos=tuple(args.twos), n_max=args.n_max, d=args.d))


if __name__ == "__main__":
    main()
