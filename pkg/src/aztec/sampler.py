"""Top-down sequential samplers for the full and half diamond particle systems.

A line is drawn from the line above it.  The conditional law of the lower line
is ``Delta-type weight * 2^{-alpha}`` on the interlacing configurations, and
particles are fixed one row at a time, top particle first.

Exact mode follows the determinant construction literally.  The mass of a
candidate ``t`` for row ``r`` is ``w_t phi(t) . beta``, where ``beta`` is
column ``r`` of the inverse of the row matrix.  In that matrix fixed rows are
point evaluations ``phi(x_i)`` and open rows are endpoint-halved interval
sums.  A Sherman-Morrison update after each choice keeps the cost per row
quadratic.

Log-float mode splits each line into two exact sub-steps:

1. intermediate half-integer positions ``u`` strictly inside the intervals,
   with weight ``Delta(u)`` (or its type-B/D analogue);
2. a shift ``x = u +- 1/2`` per particle, with weight ``Delta(x) / (2^n Delta(u))``.

Step 1 factors the row mass as ``Pi_V(w) h(w)``.  Here ``Pi_V`` vanishes on
every already fixed or forced position, and ``h`` has one degree of freedom
per remaining free interval.  This keeps the linear systems small and well
scaled even when most of the line is frozen.  Step 2 expresses the mass in a
Lagrange basis stored as log-magnitude plus sign.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Iterator, Sequence

import numpy as np

from .combinatorics import Line, normalize_line
from .distributions import weight_table
from .half import HalfParticleSystem
from .linalg import inverse
from .model import BudgetError, DominoTiling, ParticleSystem, nonadjacent_particles, tilings_from_particles

log = logging.getLogger(__name__)

EXACT_MAX_ORDER = 64
BRUTE_MAX_ORDER = 5
DRIFT_ALARM = 1e-6
MODES = {"exact": "exact", "exact-rational": "exact", "logfloat": "logfloat", "log-float": "logfloat"}

FULL, ODD_EVEN, EVEN_ODD = "full", "odd-even", "even-odd"


# -- randomness -----------------------------------------------------------

@dataclass
class RngStream:
    """Deterministic stream ``(seed, stream)`` on top of numpy's SeedSequence."""

    seed: int
    stream: int = 0
    _gen: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        self._gen = np.random.Generator(np.random.PCG64(seq))

    def random(self) -> float:
        return float(self._gen.random())

    def bits(self, k: int) -> list[int]:
        return [int(b) for b in self._gen.integers(0, 2, size=k)] if k else []

    def randbelow(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` for arbitrarily large ``n``, by rejection."""
        if n < 1:
            raise ValueError("n must be positive")
        if n <= 2 ** 62:
            return int(self._gen.integers(0, n))
        k = (n - 1).bit_length()
        words = (k + 31) // 32
        while True:
            chunk = self._gen.integers(0, 2 ** 32, size=words, dtype=np.uint64)
            value = 0
            for w in chunk:
                value = (value << 32) | int(w)
            value >>= words * 32 - k
            if value < n:
                return value

    def choice_exact(self, masses: Sequence[Fraction]) -> int:
        den = lcm(*(m.denominator for m in masses))
        nums = [m.numerator * (den // m.denominator) for m in masses]
        if sum(nums) != den or min(nums) < 0:
            raise ArithmeticError("exact masses do not form a probability vector")
        return _pick(nums, self.randbelow(den))

    def choice_float(self, p: np.ndarray) -> int:
        c = np.cumsum(p)
        return int(min(np.searchsorted(c, self.random() * c[-1], side="right"), len(p) - 1))


def _pick(nums: Sequence[int], draw: int) -> int:
    acc = 0
    for i, v in enumerate(nums):
        acc += v
        if draw < acc:
            return i
    raise AssertionError("draw outside the total mass")


# -- line geometry ----------------------------------------------------------

@dataclass(frozen=True)
class IntervalRow:
    """Candidates ``a..b`` for one particle; endpoints touching the upper line weigh 1/2."""

    a: int
    b: int
    halve_a: bool = True
    halve_b: bool = True

    def __post_init__(self) -> None:
        if self.a > self.b:
            raise ValueError("interval row needs a <= b")

    def candidates(self) -> list[tuple[int, Fraction]]:
        out = []
        for t in range(self.b, self.a - 1, -1):
            w = Fraction(1)
            if self.halve_a and t == self.a:
                w /= 2
            if self.halve_b and t == self.b:
                w /= 2
            out.append((t, w))
        return out


def step_rows(kind: str, upper: Line) -> list[IntervalRow]:
    """Interval rows of the line below ``upper``, top particle first."""
    rows = [IntervalRow(upper[i + 1], upper[i]) for i in range(len(upper) - 1)]
    if kind == EVEN_ODD:
        rows.append(IntervalRow(1, upper[-1], halve_a=False))
    return rows


def _basis(kind: str, size: int) -> Callable[[int], list[int]]:
    if kind == FULL:
        return lambda t: [t ** j for j in range(size)]
    if kind == ODD_EVEN:
        return lambda t: [(2 * t - 1) ** (2 * j + 1) for j in range(size)]
    return lambda t: [(2 * t - 1) ** (2 * j) for j in range(size)]


def _check_upper(upper: Sequence[int], kind: str) -> Line:
    line = tuple(int(x) for x in upper)
    if any(a <= b for a, b in zip(line, line[1:])):
        raise ValueError(f"degenerate upper line {line}: positions must strictly decrease")
    if kind == FULL and len(line) < 2:
        raise ValueError("the upper line needs at least two particles")
    if kind != FULL and (not line or line[-1] < 1):
        raise ValueError("half-diamond lines live on 1..M+1")
    return line


# -- diagnostics ------------------------------------------------------------

@dataclass
class SampleTrace:
    """Per-sample bookkeeping; ``probability`` is exact in exact mode."""

    probability: Fraction = Fraction(1)
    rows: int = 0
    max_drift: float = 0.0
    min_mass: float = 0.0
    alarms: int = 0

    def record(self, masses: np.ndarray) -> None:
        self.rows += 1
        drift = abs(float(masses.sum()) - 1.0)
        self.max_drift = max(self.max_drift, drift)
        top = float(masses.max()) if len(masses) else 1.0
        self.min_mass = min(self.min_mass, float(masses.min()) / max(top, 1e-300))
        if drift > DRIFT_ALARM:
            self.alarms += 1
            log.warning("row normalization drift %.3e exceeds %.0e", drift, DRIFT_ALARM)


# -- exact engine -----------------------------------------------------------

class _ExactState:
    def __init__(self, rows: list[IntervalRow], basis: Callable[[int], list[int]]) -> None:
        self.basis = basis
        self.a = []
        for row in rows:
            acc = [Fraction(0)] * len(rows)
            for t, w in row.candidates():
                acc = [s + w * v for s, v in zip(acc, basis(t))]
            self.a.append(acc)
        self.b = inverse(self.a)

    def masses(self, r: int, cands: list[tuple[int, Fraction]]) -> list[Fraction]:
        beta = [row[r] for row in self.b]
        return [w * sum((p * q for p, q in zip(self.basis(t), beta)), Fraction(0)) for t, w in cands]

    def fix(self, r: int, t: int) -> None:
        phi = [Fraction(v) for v in self.basis(t)]
        d = [p - q for p, q in zip(phi, self.a[r])]
        n = len(d)
        col = [row[r] for row in self.b]
        rowd = [sum((d[k] * self.b[k][j] for k in range(n) if d[k]), Fraction(0)) for j in range(n)]
        den = 1 + rowd[r]
        if den == 0:
            raise ZeroDivisionError("chosen candidate has zero mass")
        for i in range(n):
            if col[i]:
                f = col[i] / den
                bi = self.b[i]
                self.b[i] = [x - f * y for x, y in zip(bi, rowd)]
        self.a[r] = phi


class ExactLineSampler:
    """Exact rational line sampler with a memo of row conditionals.

    The memo is keyed by ``(kind, upper line, fixed prefix)``.  It only pays
    off at small order, where few distinct upper lines occur, so it is
    switched off above ``cache_order``.
    """

    def __init__(self, cache_order: int = 12, cache_limit: int = 500_000) -> None:
        self.cache_order = cache_order
        self.cache_limit = cache_limit
        self._memo: dict = {}

    def line(self, kind: str, upper: Sequence[int], rng: RngStream,
             trace: SampleTrace | None = None) -> Line:
        up = _check_upper(upper, kind)
        rows = step_rows(kind, up)
        basis = _basis(kind, len(rows))
        use_memo = max(up) <= self.cache_order
        state: _ExactState | None = None
        prefix: tuple[int, ...] = ()
        prob = Fraction(1)
        for r, row in enumerate(rows):
            key = (kind, up, prefix)
            entry = self._memo.get(key) if use_memo else None
            if entry is None:
                cands = row.candidates()
                if state is None:
                    state = _ExactState(rows, basis)
                    for i, t in enumerate(prefix):
                        state.fix(i, t)
                masses = state.masses(r, cands)
                den = lcm(*(m.denominator for m in masses))
                nums = [m.numerator * (den // m.denominator) for m in masses]
                if sum(nums) != den or min(nums) < 0:
                    raise ArithmeticError(f"row {r} masses of {up} are not a probability vector")
                entry = (tuple(t for t, _ in cands), tuple(nums), den)
                if use_memo and len(self._memo) < self.cache_limit:
                    self._memo[key] = entry
            ts, nums, den = entry
            j = _pick(nums, rng.randbelow(den))
            if trace is not None:
                prob *= Fraction(nums[j], den)
            if state is not None:
                state.fix(r, ts[j])
            prefix += (ts[j],)
        if trace is not None:
            trace.probability *= prob
            trace.rows += len(rows)
        return normalize_line(1 if (kind == EVEN_ODD and t == 0) else t for t in prefix)


# -- log-float engine -------------------------------------------------------

def _stage_maps(kind: str):
    """``(w, log|c|)`` for the intermediate variable ``v`` and for the final position ``x``."""
    if kind == FULL:
        return (lambda v: v.astype(float), lambda v: np.zeros(len(v)),
                lambda x: x.astype(float), lambda x: np.zeros(len(x)))
    w = lambda v: v.astype(float) ** 2
    wx = lambda x: (x.astype(float) - 0.5) ** 2
    if kind == ODD_EVEN:
        return (w, lambda v: np.log(v.astype(float)), wx, lambda x: np.log(x.astype(float) - 0.5))
    return (w, lambda v: np.zeros(len(v)), wx, lambda x: np.zeros(len(x)))


def _stage1(kind: str, up: Line, rng: RngStream, trace: SampleTrace,
            chooser: Callable[[int, np.ndarray], int] | None = None) -> list[int]:
    """Intermediate positions ``v_i`` (``u_i = v_i + 1/2``) given the upper line."""
    wmap, logc, _, _ = _stage_maps(kind)
    rows = step_rows(kind, up)
    n = len(rows)
    lo = [row.a for row in rows]
    if kind == EVEN_ODD:
        lo[-1] = 0
    pts = [np.arange(rows[i].b - 1, lo[i] - 1, -1) for i in range(n)]
    vs: list[int | None] = [int(p[0]) if len(p) == 1 else None for p in pts]
    free = [i for i in range(n) if vs[i] is None]
    base = {}
    known = np.array([wmap(np.array([v]))[0] for v in vs if v is not None])
    for k in free:
        lw = logc(pts[k]).copy()
        if kind == EVEN_ODD and k == n - 1:
            lw[pts[k] == 0] += math.log(0.5)
        wk = wmap(pts[k])
        if len(known):
            lw += np.log(np.abs(wk[:, None] - known[None, :])).sum(1)
        base[k] = (wk, lw)
    for idx, r in enumerate(free):
        fut = free[idx:]
        m = len(fut)
        wp = np.concatenate([base[k][0] for k in fut])
        lw = np.concatenate([base[k][1] for k in fut])
        owner = np.repeat(np.arange(m), [len(pts[k]) for k in fut])
        starts = np.concatenate([[0], np.cumsum([len(pts[k]) for k in fut])[:-1]])
        peak = np.array([int(np.argmax(base[k][1])) for k in fut]) + starts
        theta = wp[peak]
        mu = lw[peak]
        weight = np.exp(lw - mu[owner])
        diff = wp[:, None] - theta[None, :]
        on_node = diff == 0
        with np.errstate(divide="ignore"):
            ldiff = np.log(np.abs(diff))
        ldiff[on_node] = 0.0
        gap = theta[:, None] - theta[None, :]
        np.fill_diagonal(gap, 1.0)
        lagr = np.exp(ldiff.sum(1)[:, None] - ldiff - np.log(np.abs(gap)).sum(1)[None, :])
        gt = theta[None, :] > wp[:, None]
        lagr *= 1.0 - 2.0 * ((gt.sum(1)[:, None] - gt + np.arange(m)[None, :]) % 2)
        hit = on_node.any(1)
        lagr[hit] = on_node[hit]
        mat = np.zeros((m, m))
        np.add.at(mat, owner, weight[:, None] * lagr)
        rhs = np.zeros(m)
        rhs[0] = 1.0
        coef = np.linalg.solve(mat, rhs)
        sel = owner == 0
        masses = weight[sel] * (lagr[sel] @ coef)
        trace.record(masses)
        p = np.clip(masses, 0.0, None)
        j = chooser(r, masses) if chooser else rng.choice_float(p / p.sum())
        v = int(pts[r][j])
        vs[r] = v
        wv = float(wmap(np.array([v]))[0])
        for k in fut[1:]:
            wk, lwk = base[k]
            base[k] = (wk, lwk + np.log(np.abs(wk - wv)))
    return [int(v) for v in vs]


def _stage2(kind: str, vs: list[int], rng: RngStream, trace: SampleTrace,
            chooser: Callable[[int, np.ndarray], int] | None = None) -> Line:
    """Shift each intermediate position down (``x = v``) or up (``x = v + 1``)."""
    _, _, wmap, logc = _stage_maps(kind)
    n = len(vs)
    v = np.array(vs)
    xp, xm = v + 1, v
    nodes = wmap(xp)
    node_at = {int(x): j for j, x in enumerate(xp)}
    gaps = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(gaps, 1.0)
    ld = np.log(np.abs(gaps)).sum(1)
    parity = 1.0 - 2.0 * (np.arange(n) % 2)

    def term(x: int) -> tuple[float, np.ndarray]:
        lc = float(logc(np.array([x]))[0])
        vec = np.zeros(n)
        j = node_at.get(x)
        if j is not None:
            vec[j] = parity[j]
            return lc + ld[j], vec
        w = float(wmap(np.array([x]))[0])
        d = w - nodes
        sign = 1.0 - 2.0 * (int((nodes > w).sum()) % 2)
        vec[:] = sign / d
        return lc + float(np.log(np.abs(d)).sum()), vec

    def combine(terms: list[tuple[float, np.ndarray]]) -> np.ndarray:
        top = max(e for e, _ in terms)
        return sum(math.exp(e - top) * vec for e, vec in terms)

    forced = [kind == EVEN_ODD and i == n - 1 and vs[i] == 0 for i in range(n)]
    a = np.array([combine([term(int(xp[i]))] if forced[i] else [term(int(xm[i])), term(int(xp[i]))])
                  for i in range(n)])
    b = np.linalg.inv(a)
    out = []
    for r in range(n):
        if forced[r]:
            out.append(1)
            continue
        tm, tp = term(int(xm[r])), term(int(xp[r]))
        top = max(tm[0], tp[0])
        col = b[:, r]
        masses = np.array([math.exp(tm[0] - top) * (tm[1] @ col), math.exp(tp[0] - top) * (tp[1] @ col)])
        trace.record(masses)
        p = np.clip(masses, 0.0, None)
        j = chooser(r, masses) if chooser else int(rng.random() * p.sum() >= p[0])
        x = int(xp[r]) if j else int(xm[r])
        out.append(x)
        new = combine([term(x)])
        d = new - a[r]
        rowd = d @ b
        den = 1.0 + rowd[r]
        a[r] = new
        if abs(den) < 1e-8:
            b = np.linalg.inv(a)
        else:
            b -= np.outer(b[:, r], rowd) / den
    return normalize_line(out)


def float_line(kind: str, upper: Sequence[int], rng: RngStream, trace: SampleTrace | None = None) -> Line:
    up = _check_upper(upper, kind)
    trace = trace if trace is not None else SampleTrace()
    return _stage2(kind, _stage1(kind, up, rng, trace), rng, trace)


# -- public samplers --------------------------------------------------------

def sample_line(upper: Sequence[int], rng: RngStream, mode: str = "exact", kind: str = FULL,
                engine: ExactLineSampler | None = None, trace: SampleTrace | None = None) -> Line:
    """Draw the line below ``upper`` from its conditional law."""
    mode = _mode(mode)
    if mode == "exact":
        return (engine or ExactLineSampler()).line(kind, upper, rng, trace)
    return float_line(kind, upper, rng, trace)


def _mode(mode: str) -> str:
    try:
        return MODES[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}; use exact or logfloat") from None


def _budget(order: int, mode: str, exact_max: int) -> None:
    if order < 1:
        raise ValueError("order must be >= 1")
    if mode == "exact" and order > exact_max:
        raise BudgetError(f"exact mode is limited to order {exact_max}; use logfloat")


def sample_system(order: int, rng: RngStream, mode: str = "exact",
                  engine: ExactLineSampler | None = None, trace: SampleTrace | None = None,
                  exact_max: int = EXACT_MAX_ORDER) -> ParticleSystem:
    """Lines ``N..1`` drawn top-down from the virtual line ``(N, ..., 0)``."""
    mode = _mode(mode)
    _budget(order, mode, exact_max)
    engine = engine or ExactLineSampler()
    upper: Line = tuple(range(order, -1, -1))
    lines = []
    for _ in range(order):
        upper = sample_line(upper, rng, mode, FULL, engine, trace)
        lines.append(upper)
    return ParticleSystem(order, tuple(reversed(lines)))


def sample_half(order: int, rng: RngStream, mode: str = "exact",
                engine: ExactLineSampler | None = None, trace: SampleTrace | None = None,
                exact_max: int = EXACT_MAX_ORDER) -> HalfParticleSystem:
    """Lines ``2M..1`` of the half diamond, from the virtual full line ``(M+1, ..., 1)``."""
    mode = _mode(mode)
    _budget(order, mode, exact_max)
    engine = engine or ExactLineSampler()
    upper: Line = tuple(range(order + 1, 0, -1))
    lines = []
    for index in range(2 * order, 0, -1):
        kind = ODD_EVEN if index % 2 == 0 else EVEN_ODD
        upper = sample_line(upper, rng, mode, kind, engine, trace)
        lines.append(upper)
    return HalfParticleSystem(order, tuple(reversed(lines)))


def sample_tiling(order: int, rng: RngStream, mode: str = "exact",
                  engine: ExactLineSampler | None = None) -> DominoTiling:
    system = sample_system(order, rng, mode, engine)
    bits = rng.bits(len(nonadjacent_particles(system.lines)))
    return tilings_from_particles(system, bits)


def _brute_table(order: int) -> tuple[list, list[int], int]:
    table = weight_table(order)
    keys = sorted(table)
    weights = [table[k] for k in keys]
    return keys, weights, sum(weights)


def sample_bruteforce(order: int, rng: RngStream) -> ParticleSystem:
    """One draw from the joint law by table lookup over every particle system."""
    if not 1 <= order <= BRUTE_MAX_ORDER:
        raise BudgetError(f"brute-force sampling needs 1 <= N <= {BRUTE_MAX_ORDER}")
    keys, weights, total = _brute_table(order)
    return ParticleSystem(order, keys[_pick(weights, rng.randbelow(total))])


# -- batches ----------------------------------------------------------------

def thread_count(requested: int | None = None) -> int:
    cap = int(os.environ.get("AZTEC_THREADS", "0") or 0) or (os.cpu_count() or 1)
    return max(1, min(requested or cap, cap))


def _batch_chunk(args) -> list:
    what, order, seed, mode, streams = args
    engine = ExactLineSampler()
    out = []
    for s in streams:
        rng = RngStream(seed, s)
        if what == "system":
            out.append(sample_system(order, rng, mode, engine))
        elif what == "half":
            out.append(sample_half(order, rng, mode, engine))
        else:
            out.append(sample_tiling(order, rng, mode, engine))
    return out


def sample_batch(what: str, order: int, count: int, seed: int, mode: str = "exact",
                 threads: int | None = None) -> list:
    """``count`` samples; sample ``j`` always uses stream ``j``, whatever the thread count."""
    mode = _mode(mode)
    _budget(order, mode, EXACT_MAX_ORDER)
    workers = thread_count(threads)
    streams = list(range(count))
    if workers == 1 or count < 2:
        return _batch_chunk((what, order, seed, mode, streams))
    chunks = [streams[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(workers) as pool:
        parts = list(pool.map(_batch_chunk, [(what, order, seed, mode, c) for c in chunks]))
    out = [None] * count
    for c, part in zip(chunks, parts):
        for s, item in zip(c, part):
            out[s] = item
    return out


def iter_samples(what: str, order: int, count: int, seed: int, mode: str = "exact") -> Iterator:
    """Streaming single-threaded variant of :func:`sample_batch`."""
    engine = ExactLineSampler()
    for s in range(count):
        rng = RngStream(seed, s)
        if what == "system":
            yield sample_system(order, rng, mode, engine)
        elif what == "half":
            yield sample_half(order, rng, mode, engine)
        else:
            yield sample_tiling(order, rng, mode, engine)
