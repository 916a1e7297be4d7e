"""Sample full and half diamonds and compare the empirical line supports
with the arctic circle and the half circle.

    python scripts/arctic_experiment.py --N 200 --M 100 --count 50 --out results/
"""

import argparse
import csv
from pathlib import Path

from aztec import asymptotics as asym
from aztec.render import render_tiling, write_svg
from aztec.sampler import RngStream, sample_batch, sample_tiling


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--N", type=int, default=200)
    ap.add_argument("--M", type=int, default=100)
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--eps", type=float, default=0.05)
    ap.add_argument("--out", default="results")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    full = asym.EmpiricalEnsemble.from_systems(sample_batch("system", args.N, args.count, args.seed, "logfloat"))
    with open(out / "arctic_full.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["line", "s", "a_theory", "b_theory", "a_emp", "b_emp"])
        for k, (lo, hi) in enumerate(asym.empirical_support(full, args.eps), start=1):
            s = full.label(k)
            w.writerow([k, s, *asym.arctic_boundary(s), lo, hi])

    half = asym.EmpiricalEnsemble.from_half_holes(sample_batch("half", args.M, args.count, args.seed, "logfloat"))
    with open(out / "arctic_half.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["hole_line", "s", "a_theory", "t_max_emp"])
        for k, (_, hi) in enumerate(asym.empirical_support(half, args.eps), start=1):
            s = half.label(k)
            w.writerow([k, s, asym.half_boundary(s), hi])

    tiling = sample_tiling(min(args.N, 100), RngStream(args.seed), "logfloat")
    write_svg(out / "arctic_overlay.svg", render_tiling(tiling, particles=False, paths=False, arctic=True))
    for s in (0.1, 0.2, 0.3, 0.4):
        lo, hi = asym.empirical_support(full, args.eps)[round(s * args.N) - 1]
        print(f"s={s}: empirical [{lo:.3f}, {hi:.3f}]  theory {tuple(round(v, 3) for v in asym.arctic_boundary(s))}")


if __name__ == "__main__":
    main()
