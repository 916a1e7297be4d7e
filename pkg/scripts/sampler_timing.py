"""Wall-clock cost per sample of the exact and log-float samplers."""

import argparse
import time

from aztec.sampler import ExactLineSampler, RngStream, SampleTrace, sample_half, sample_system


def timed(fn, reps):
    t = time.perf_counter()
    for s in range(reps):
        fn(s)
    return (time.perf_counter() - t) / reps


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    engine = ExactLineSampler()
    for n in (8, 16, 24):
        dt = timed(lambda s: sample_system(n, RngStream(1, s), engine=engine), args.reps)
        print(f"exact    N={n:4d}  {dt * 1e3:9.1f} ms")
    for n in (50, 100, 200):
        trace = SampleTrace()
        dt = timed(lambda s: sample_system(n, RngStream(1, s), "logfloat", trace=trace), args.reps)
        print(f"logfloat N={n:4d}  {dt * 1e3:9.1f} ms  max drift {trace.max_drift:.1e}")
    for m in (25, 50, 100):
        dt = timed(lambda s: sample_half(m, RngStream(1, s), "logfloat"), args.reps)
        print(f"logfloat M={m:4d}  {dt * 1e3:9.1f} ms (half)")


if __name__ == "__main__":
    main()
