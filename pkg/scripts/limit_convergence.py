"""Log-density distance between the lattice laws near the bottom lines and
the GUE / anti-symmetric GUE minor densities, as the order grows."""

import argparse

from aztec import asymptotics as asym


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--orders", default="100,400,1600,6400")
    args = ap.parse_args()
    orders = [int(v) for v in args.orders.split(",")]
    print("family depth " + " ".join(f"{n:>9}" for n in orders))
    for n in (1, 2, 3):
        errs = [asym.scaling_limit_error(n, N) for N in orders]
        print(f"GUE    {n:5d} " + " ".join(f"{e:9.5f}" for e in errs))
    for n in (2, 3, 4):
        errs = [asym.half_scaling_limit_error(n, M) for M in orders]
        print(f"aGUE   {n:5d} " + " ".join(f"{e:9.5f}" for e in errs))


if __name__ == "__main__":
    main()
