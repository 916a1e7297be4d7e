"""``aztec`` command line: counts, exact probabilities, seeded sampling,
arctic-circle and limit checks, the oracle suite, and SVG rendering.

Exit codes: 0 success, 2 verification failure, 3 budget exceeded, 4 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import asymptotics as asym
from . import distributions as dist
from . import half, render, sampler, verify
from .combinatorics import as_ratio
from .model import BudgetError, iter_tilings

SCHEMA_VERSION = 1
EXIT_OK, EXIT_VERIFY, EXIT_BUDGET, EXIT_INPUT = 0, 2, 3, 4

log = logging.getLogger("aztec")


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    order: int | None = None
    count: int | None = None
    seed: int | None = None
    mode: str | None = None
    out: str | None = None
    csv: str | None = None
    tol: float | None = None
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        """Everything that determines the content; output locations are left out
        so that identical runs write identical bytes wherever they write."""
        return {k: v for k, v in asdict(self).items() if v not in (None, {}) and k not in ("out", "csv")}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _exact(value: Fraction) -> dict:
    return {"exact": as_ratio(value), "decimal": float(value)}


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_line(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _parse_lines(text: str) -> tuple[tuple[int, ...], ...]:
    try:
        data = json.loads(text)
        return tuple(tuple(int(v) for v in line) for line in data)
    except (ValueError, TypeError) as exc:
        raise InputError(f"--lines must be a JSON list of integer lists: {exc}") from exc


def _order(args, key: str = "N") -> int:
    value = getattr(args, key)
    if value is None or value < 1:
        raise InputError(f"--{key} must be a positive integer")
    return value


# -- commands ---------------------------------------------------------------

def cmd_count(args) -> int:
    if args.M is not None:
        print(half.count_half(_order(args, "M")))
    else:
        print(dist.count_tilings(_order(args)))
    return EXIT_OK


PDF_KINDS = ("joint", "tail", "one-line", "y-joint", "half-joint", "half-tail", "half-y", "half-one-line")


def cmd_pdf(args) -> int:
    kind = args.kind
    if args.positions is not None:
        lines = _parse_lines(f"[{args.positions}]")
        kind = "half-one-line" if kind.startswith("half") else "one-line"
    elif args.lines is not None:
        lines = _parse_lines(args.lines)
    else:
        raise InputError("give --lines or --positions")
    if kind.startswith("half"):
        order = _order(args, "M")
        if kind == "half-one-line":
            if args.n is None or len(lines) != 1:
                raise InputError("half-one-line needs --n and a single line")
            p = half.half_one_line_pdf(args.n, order, lines[0])
        else:
            p = {"half-joint": half.half_joint_pdf, "half-tail": half.half_tail_pdf,
                 "half-y": half.half_y_pdf}[kind](lines, order)
    else:
        order = _order(args)
        if kind == "one-line":
            if args.n is None or len(lines) != 1:
                raise InputError("one-line needs --n and a single line")
            p = dist.one_line_pdf(args.n, order, lines[0])
        else:
            p = {"joint": dist.joint_pdf, "tail": dist.tail_marginal_pdf,
                 "y-joint": dist.y_joint_pdf}[kind](lines, order)
    cfg = RunConfig("pdf", order, extra={"kind": kind, "lines": [list(l) for l in lines], "n": args.n})
    _emit(_json_line({"schema_version": SCHEMA_VERSION, "config": cfg.as_dict(),
                      "probability": _exact(p)}), args.out)
    return EXIT_OK


def _sample_records(what: str, order: int, args) -> str:
    mode = sampler._mode(args.mode)
    cfg = RunConfig(f"sample-{what}" if what != "system" else "sample", order, args.count, args.seed,
                    mode, args.out)
    buf = io.StringIO()
    buf.write(_json_line({"schema_version": SCHEMA_VERSION, "config": cfg.as_dict()}))
    kind = "tiling" if getattr(args, "tiling", False) else what
    for j, item in enumerate(sampler.sample_batch(kind, order, args.count, args.seed, mode)):
        record = {"schema_version": SCHEMA_VERSION, "sample": j}
        if kind == "tiling":
            record["tiling"] = item.to_json()
        else:
            record["lines"] = [list(l) for l in item.lines]
        buf.write(_json_line(record))
    return buf.getvalue()


def cmd_sample(args) -> int:
    _emit(_sample_records("system", _order(args), args), args.out)
    return EXIT_OK


def cmd_sample_half(args) -> int:
    _emit(_sample_records("half", _order(args, "M"), args), args.out)
    return EXIT_OK


def _csv_text(header: Sequence[str], rows: Sequence[Sequence], config: dict) -> str:
    buf = io.StringIO()
    buf.write("# " + json.dumps(config, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["schema_version", *header])
    for row in rows:
        w.writerow([SCHEMA_VERSION, *(f"{v:.6f}" if isinstance(v, float) else v for v in row)])
    return buf.getvalue()


def cmd_arctic(args) -> int:
    count = args.count
    mode = sampler._mode(args.mode)
    if args.M is not None:
        order = _order(args, "M")
        systems = sampler.sample_batch("half", order, count, args.seed, mode)
        ens = asym.EmpiricalEnsemble.from_half_holes(systems)
        rows = []
        for k, (lo, hi) in enumerate(asym.empirical_support(ens, args.eps), start=1):
            s = ens.label(k)
            rows.append((k, s, 0.0, asym.half_boundary(s), lo, hi))
    else:
        order = _order(args)
        systems = sampler.sample_batch("system", order, count, args.seed, mode)
        ens = asym.EmpiricalEnsemble.from_systems(systems)
        rows = []
        for k, (lo, hi) in enumerate(asym.empirical_support(ens, args.eps), start=1):
            s = ens.label(k)
            a, b = asym.arctic_boundary(s)
            rows.append((k, s, a, b, lo, hi))
    cfg = RunConfig("arctic", order, count, args.seed, mode, args.out, args.csv,
                    extra={"eps": args.eps, "half": args.M is not None})
    text = _csv_text(["line", "s", "a_theory", "b_theory", "a_emp", "b_emp"], rows, cfg.as_dict())
    _emit(text, args.csv)
    if args.out and args.M is None:
        rng = sampler.RngStream(args.seed, count)
        tiling = sampler.sample_tiling(order, rng, mode)
        render.write_svg(args.out, render.render_tiling(tiling, particles=False, paths=False, arctic=True,
                                                        title=json.dumps(cfg.as_dict(), sort_keys=True)))
    return EXIT_OK


def cmd_limit_check(args) -> int:
    try:
        orders = [int(v) for v in args.N_list.split(",")]
    except ValueError as exc:
        raise InputError("--N-list must be comma separated integers") from exc
    n = args.n
    rows = []
    for order in orders:
        if args.half:
            points = asym.half_scaling_limit_points(n, order, asym.default_half_grid(n))
        else:
            points = asym.scaling_limit_points(n, order, asym.default_grid(n))
        rows.append((order, max(p.error for p in points), len(points)))
    cfg = RunConfig("limit-check", extra={"n": n, "orders": orders, "half": args.half})
    _emit(_csv_text(["order", "max_log_error", "grid_points"], rows, cfg.as_dict()), args.csv)
    tol = args.tol
    if tol is not None and rows[-1][1] > tol:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    name = args.check
    if name == "all":
        results = verify.run_all(args.N or 4, args.M or 3)
    elif name in ("prop4", "half-y"):
        results = [verify.CHECKS[name](args.M or 3)]
    elif name == "appendix":
        results = [verify.appendix()]
    else:
        order = args.N or 4
        if order > 5:
            raise BudgetError("exhaustive checks are limited to N <= 5")
        results = [verify.CHECKS[name](order)]
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def cmd_half(args) -> int:
    action = args.action
    if action == "count":
        print(half.count_half(_order(args, "M")))
        return EXIT_OK
    if action == "pdf":
        args.kind = args.kind if args.kind.startswith("half") else "half-" + args.kind
        return cmd_pdf(args)
    if action == "verify":
        results = [verify.prop4(args.M or 3), verify.half_y(args.M or 3)]
        for r in results:
            print(r.line())
        return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY
    order = _order(args, "M")
    info = {"schema_version": SCHEMA_VERSION, "order": order, "count": half.count_half(order),
            "symmetric_full_order": 2 * (order + 1),
            "symmetric_count": half.count_symmetric(2 * (order + 1)),
            "tail_normalizations": [as_ratio(Fraction(half.tail_normalization(j, order)))
                                    for j in range(1, 2 * order + 1)]}
    _emit(_json_line(info), args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    order = _order(args)
    out = Path(args.out or "render")
    if args.all:
        if order > 4:
            raise BudgetError("--all renders every tiling; limited to N <= 4")
        out.mkdir(parents=True, exist_ok=True)
        tilings = sorted(iter_tilings(order), key=lambda t: sorted(t.dominoes))
        for j, t in enumerate(tilings):
            render.write_svg(out / f"tiling_N{order}_{j:04d}.svg", render.render_tiling(t))
        print(f"wrote {len(tilings)} files to {out}")
        return EXIT_OK
    mode = sampler._mode(args.mode)
    seed = 0 if args.seed is None else args.seed
    tiling = sampler.sample_tiling(order, sampler.RngStream(seed), mode)
    path = out if out.suffix == ".svg" else out / f"tiling_N{order}_seed{seed}.svg"
    render.write_svg(path, render.render_tiling(tiling, arctic=args.arctic))
    print(f"wrote {path}")
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="aztec", description="Aztec diamond tilings: exact laws, sampling and limits.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, order=True, half_order=False, sampling=False):
        if order:
            sp.add_argument("--N", type=int)
        if half_order:
            sp.add_argument("--M", type=int)
        if sampling:
            sp.add_argument("--count", "--samples", dest="count", type=int, default=1)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--mode", choices=["exact", "logfloat"], default="exact")
        sp.add_argument("--out")

    sp = sub.add_parser("count", help="number of tilings")
    common(sp, half_order=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("pdf", help="exact probability of a configuration")
    common(sp, half_order=True)
    sp.add_argument("--kind", choices=PDF_KINDS, default="joint")
    sp.add_argument("--lines", help='JSON, e.g. "[[1],[2,0]]"')
    sp.add_argument("--positions", help="JSON list; shorthand for a one-line law")
    sp.add_argument("--n", type=int, help="line index for one-line laws")
    sp.set_defaults(func=cmd_pdf)

    sp = sub.add_parser("sample", help="seeded particle systems (JSON lines)")
    common(sp, sampling=True)
    sp.add_argument("--tiling", action="store_true", help="emit tilings instead of particle lines")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("sample-half", help="seeded half-diamond particle systems")
    common(sp, order=False, half_order=True, sampling=True)
    sp.set_defaults(func=cmd_sample_half)

    sp = sub.add_parser("arctic", help="empirical line supports against the arctic curves")
    common(sp, half_order=True, sampling=True)
    sp.set_defaults(count=50, mode="logfloat")
    sp.add_argument("--csv")
    sp.add_argument("--eps", type=float, default=0.05)
    sp.set_defaults(func=cmd_arctic)

    sp = sub.add_parser("limit-check", help="log-density distance to the GUE / aGUE minor limits")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--N-list", dest="N_list", default="100,400,1600")
    sp.add_argument("--half", action="store_true")
    sp.add_argument("--csv")
    sp.add_argument("--tol", type=float)
    sp.set_defaults(func=cmd_limit_check)

    sp = sub.add_parser("verify", help="exact oracle suite")
    sp.add_argument("check", nargs="?", default="all", choices=["all", *verify.CHECKS])
    sp.add_argument("--N", type=int)
    sp.add_argument("--M", type=int)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("half", help="half-diamond counts, probabilities and checks")
    sp.add_argument("action", nargs="?", default="info", choices=["info", "count", "pdf", "verify"])
    common(sp, order=False, half_order=True)
    sp.add_argument("--kind", choices=["joint", "tail", "y", "one-line", *PDF_KINDS[4:]], default="joint")
    sp.add_argument("--lines", help='JSON, e.g. "[[1],[2]]"')
    sp.add_argument("--positions", help="JSON list; shorthand for a one-line law")
    sp.add_argument("--n", type=int, help="line index for one-line laws")
    sp.set_defaults(func=cmd_half)

    sp = sub.add_parser("render", help="SVG of a tiling")
    common(sp, sampling=True)
    sp.add_argument("--all", action="store_true", help="every tiling of order N")
    sp.add_argument("--arctic", action="store_true", help="overlay the inscribed circle")
    sp.set_defaults(func=cmd_render)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, ValueError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
