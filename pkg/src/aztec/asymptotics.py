"""Large-order limits: GUE and anti-symmetric GUE minor densities, pointwise
checks of the lattice laws against them, the arctic circle and its half
analogue, the log-gas support condition, and Monte Carlo support estimates.

Every lattice density here is evaluated through ``math.lgamma`` so no
factorial is ever formed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .combinatorics import Chain, chain_adjacency, is_valid_chain
from .half import line_size

LOG2 = math.log(2.0)
# Dyson index of the log-gas behind the support equations; documentation only.
BETA = 2

RealLines = Sequence[Sequence[float]]


@dataclass(frozen=True)
class MinorSpec:
    """Depth ``n`` of a minor process; ``antisymmetric`` selects the aGUE case,
    where minor ``k`` carries ``k // 2`` positive eigenvalues and minor 1 is 0."""

    depth: int
    antisymmetric: bool = False

    def __post_init__(self) -> None:
        if self.depth < 1:
            raise ValueError("depth must be >= 1")

    @property
    def parity(self) -> str:
        return "even" if self.depth % 2 == 0 else "odd"

    def line_size(self, k: int) -> int:
        return k // 2 if self.antisymmetric else k

    @property
    def free_coordinates(self) -> int:
        return sum(self.line_size(k) for k in range(1, self.depth + 1))


@dataclass(frozen=True)
class BoundaryCurve:
    """Scaled support ``[a, b]`` of the line with label ``s``."""

    s: float
    a: float
    b: float

    @property
    def c(self) -> float:
        return (self.b - self.a) / 2


# -- minor densities ------------------------------------------------------

def _log_vandermonde(xs: Sequence[float]) -> float:
    total = 0.0
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            d = xs[i] - xs[j]
            if d <= 0:
                return -math.inf
            total += math.log(d)
    return total


def _strictly_interlaced(lower: Sequence[float], upper: Sequence[float]) -> bool:
    """``u_1 > l_1 > u_2 > l_2 > ...`` for ``len(upper)`` in ``{len(lower), len(lower)+1}``."""
    if any(upper[i] <= lower[i] for i in range(len(lower))):
        return False
    return all(lower[i] > upper[i + 1] for i in range(len(upper) - 1))


def gue_minor_logpdf(lines: RealLines) -> float:
    """Log density of the GUE minor process; ``lines[k-1]`` holds minor ``k``
    in decreasing order."""
    n = len(lines)
    if n < 1 or any(len(l) != k for k, l in enumerate(lines, start=1)):
        raise ValueError("minor k must carry k eigenvalues")
    for lower, upper in zip(lines, lines[1:]):
        if not _strictly_interlaced(lower, upper):
            return -math.inf
    top = [float(z) for z in lines[-1]]
    logv = _log_vandermonde(top)
    if logv == -math.inf:
        return logv
    return -0.5 * sum(z * z for z in top) + logv - (n / 2) * math.log(2 * math.pi)


def agum_log_constant(n: int) -> float:
    """``log C_n`` for the aGUE minor density of depth ``n``.

    Even ``n``: ``pi^{n/4} 2^{-n^2/4}``.  Odd ``n``: ``pi^{(n-1)/4} 2^{-(n^2-1)/4}``,
    which is what makes the odd density integrate to one.
    """
    if n < 2:
        raise ValueError("aGUE densities start at depth 2")
    if n % 2 == 0:
        return (n / 4) * math.log(math.pi) - (n * n / 4) * LOG2
    return ((n - 1) / 4) * math.log(math.pi) - ((n * n - 1) / 4) * LOG2


def _padded(line: Sequence[float], k: int) -> list[float]:
    """Positive eigenvalues of minor ``k``, with the zero eigenvalue appended when ``k`` is odd."""
    out = [float(x) for x in line]
    return out + [0.0] if k % 2 else out


def agum_minor_logpdf(lines: RealLines, parity: str | None = None) -> float:
    """Log density of the positive eigenvalues of anti-symmetric GUE minors
    ``1..n``.  ``lines[k-1]`` holds the ``k // 2`` positive eigenvalues of minor
    ``k`` in decreasing order; the first line is pinned at 0 and may be given
    as ``()`` or ``(0,)``."""
    n = len(lines)
    spec = MinorSpec(n, antisymmetric=True)
    if parity is not None and parity != spec.parity:
        raise ValueError(f"depth {n} has parity {spec.parity}, not {parity}")
    first = tuple(lines[0]) if n else ()
    if first not in ((), (0,), (0.0,)):
        raise ValueError("the first minor is pinned at 0")
    body = [()] + [tuple(l) for l in lines[1:]]
    if any(len(l) != spec.line_size(k) for k, l in enumerate(body, start=1)):
        raise ValueError("minor k must carry k // 2 positive eigenvalues")
    if n < 2:
        raise ValueError("aGUE densities start at depth 2")
    padded = [_padded(l, k) for k, l in enumerate(body, start=1)]
    for lower, upper in zip(padded, padded[1:]):
        if not _strictly_interlaced(lower, upper):
            return -math.inf
    top = [float(x) for x in body[-1]]
    if any(x <= 0 for x in top):
        return -math.inf
    logv = _log_vandermonde([x * x for x in top])
    if logv == -math.inf:
        return logv
    value = -sum(x * x for x in top) + logv
    if n % 2:
        value += sum(math.log(x) for x in top)
    return value - agum_log_constant(n)


# -- lattice laws in log form --------------------------------------------

def _lf(k: int) -> float:
    return math.lgamma(k + 1)


def log_y_joint_pdf(hole_lines: Sequence[Sequence[int]], order: int) -> float:
    """``log`` of the joint law of full-diamond hole lines ``1..n``."""
    lines = tuple(tuple(l) for l in hole_lines)
    n, big = len(lines), order
    if not lines or n > big or any(len(l) != k for k, l in enumerate(lines, start=1)):
        return -math.inf
    if not is_valid_chain(lines, big):
        return -math.inf
    top = lines[-1]
    value = sum(_lf(big - i) for i in range(n)) + _log_vandermonde(top)
    value -= sum(_lf(y) + _lf(big - y) for y in top)
    return value - (big + (big - n) * (n - 1) + chain_adjacency(lines)) * LOG2


def log_half_y_pdf(hole_lines: Sequence[Sequence[int]], order: int) -> float:
    """``log`` of the joint law of half-diamond hole lines ``1..j``."""
    lines = tuple(tuple(l) for l in hole_lines)
    j, big = len(lines), order
    if not lines or j > 2 * big or any(len(l) != line_size(k) for k, l in enumerate(lines, start=1)):
        return -math.inf
    if not is_valid_chain(lines, big + 1, strict_lower=True):
        return -math.inf
    m, top = line_size(j), lines[-1]
    alpha = chain_adjacency(lines)
    value = _log_vandermonde([(y - 0.5) ** 2 for y in top])
    value -= sum(_lf(y + big) + _lf(big + 1 - y) for y in top)
    if j % 2:
        value += _lf(big + 1 - m) - _lf(big + 1)
        value += sum(_lf(2 * (big - m + i + 2)) for i in range(m))
        value -= (alpha + 2 * m * (big - m + 1) + m) * LOG2
    else:
        value += sum(_lf(2 * (big - m + i)) for i in range(1, m + 1))
        value -= (alpha + 2 * m * (big - m)) * LOG2
        value += sum(math.log(y - 0.5) for y in top)
    return value


# -- pointwise scaling-limit checks --------------------------------------

@dataclass(frozen=True)
class LimitPoint:
    """One grid configuration: what was asked for, the lattice point it
    rounded to, the continuum point actually evaluated, and both log densities."""

    requested: tuple[tuple[float, ...], ...]
    lattice: Chain
    evaluated: tuple[tuple[float, ...], ...]
    log_lattice: float
    log_limit: float

    @property
    def error(self) -> float:
        return abs(self.log_lattice - self.log_limit)


def _lattice_round(v: float) -> int:
    return int(round(v))  # round-half-to-even


def scaling_limit_points(n: int, order: int, grid: Sequence[RealLines]) -> list[LimitPoint]:
    """Map each configuration of ``n`` GUE lines to hole lines via
    ``y = round((z sqrt(N) + N) / 2)`` and compare log densities."""
    root = math.sqrt(order)
    jac = (n * (n + 1) / 4) * math.log(order / 4)
    out = []
    for config in grid:
        if len(config) != n:
            raise ValueError(f"grid configurations need {n} lines")
        lattice = tuple(tuple(_lattice_round((z * root + order) / 2) for z in line) for line in config)
        if any(not 0 <= y <= order for line in lattice for y in line):
            raise ValueError(f"grid point {config} maps outside the lattice 0..{order}")
        evaluated = tuple(tuple((2 * y - order) / root for y in line) for line in lattice)
        out.append(LimitPoint(tuple(tuple(map(float, l)) for l in config), lattice, evaluated,
                              log_y_joint_pdf(lattice, order) + jac, gue_minor_logpdf(evaluated)))
    return out


def scaling_limit_error(n: int, order: int, grid: Sequence[RealLines] | None = None) -> float:
    grid = default_grid(n) if grid is None else grid
    return max(p.error for p in scaling_limit_points(n, order, grid))


def half_scaling_limit_points(n: int, order: int, grid: Sequence[RealLines]) -> list[LimitPoint]:
    """Minor ``k + 1`` corresponds to hole line ``k`` through ``y = round(z sqrt(M))``;
    the pinned first minor carries no coordinate."""
    spec = MinorSpec(n, antisymmetric=True)
    root = math.sqrt(order)
    jac = 0.5 * spec.free_coordinates * math.log(order)
    out = []
    for config in grid:
        if len(config) != n:
            raise ValueError(f"grid configurations need {n} lines")
        lattice = tuple(tuple(_lattice_round(z * root) for z in line) for line in config[1:])
        if any(not 1 <= y <= order + 1 for line in lattice for y in line):
            raise ValueError(f"grid point {config} maps outside the lattice 1..{order + 1}")
        evaluated = ((),) + tuple(tuple(y / root for y in line) for line in lattice)
        out.append(LimitPoint(tuple(tuple(map(float, l)) for l in config), lattice, evaluated,
                              log_half_y_pdf(lattice, order) + jac,
                              agum_minor_logpdf(evaluated)))
    return out


def half_scaling_limit_error(n: int, order: int, grid: Sequence[RealLines] | None = None) -> float:
    grid = default_half_grid(n) if grid is None else grid
    return max(p.error for p in half_scaling_limit_points(n, order, grid))


_GUE_GRIDS: dict[int, list] = {
    1: [[(0.5,)], [(-0.5,)]],
    2: [[(0.0,), (1.0, -1.0)],
        [(0.5,), (1.5, -0.5)],
        [(-0.5,), (0.5, -1.5)],
        [(0.3,), (0.8, -1.2)],
        [(-0.3,), (1.2, -0.8)]],
    3: [[(0.0,), (1.0, -1.0), (1.8, 0.2, -1.6)],
        [(0.2,), (1.2, -0.6), (2.0, 0.6, -1.4)],
        [(-0.2,), (0.6, -1.2), (1.4, -0.6, -2.0)]],
}

_AGUE_GRIDS: dict[int, list] = {
    2: [[(), (0.5,)], [(), (1.0,)], [(), (1.5,)]],
    3: [[(), (0.5,), (1.0,)], [(), (1.0,), (1.6,)], [(), (0.6,), (1.8,)]],
    4: [[(), (0.6,), (1.2,), (1.6, 0.4)], [(), (1.0,), (1.5,), (2.0, 0.6)]],
}


def default_grid(n: int) -> list:
    if n not in _GUE_GRIDS:
        raise ValueError(f"no default grid for n = {n}")
    return _GUE_GRIDS[n]


def default_half_grid(n: int) -> list:
    if n not in _AGUE_GRIDS:
        raise ValueError(f"no default grid for n = {n}")
    return _AGUE_GRIDS[n]


def reflect_grid(grid: Sequence[RealLines]) -> list:
    """``z -> -z`` on every configuration, keeping decreasing order."""
    return [[tuple(-z for z in reversed(line)) for line in config] for config in grid]


# -- boundaries and the support condition --------------------------------

def _check_label(s: float) -> None:
    if not 0 <= s <= 1:
        raise ValueError(f"line label s = {s} outside [0, 1]")


def half_width(s: float) -> float:
    """``c`` with ``1 - sqrt(1 - 4c^2) = 2s``, i.e. ``c = sqrt(s(1-s))``; 1/2 beyond ``s = 1/2``."""
    _check_label(s)
    return math.sqrt(s * (1 - s)) if s <= 0.5 else 0.5


def arctic_boundary(s: float) -> tuple[float, float]:
    _check_label(s)
    if s > 0.5:
        return 0.0, 1.0
    # sqrt(1 - (1 - 2s)^2) = 2 sqrt(s(1 - s)), without the cancellation near s = 0
    c = math.sqrt(s * (1 - s))
    return 0.5 - c, 0.5 + c


def arctic_curve(s: float) -> BoundaryCurve:
    a, b = arctic_boundary(s)
    return BoundaryCurve(s, a, b)


def half_boundary(s: float) -> float:
    """Upper support edge of a half-diamond hole line in ``t = (y - 1/2) / M``."""
    _check_label(s)
    return 2 * math.sqrt(s * (1 - s)) if s <= 0.5 else 1.0


class QuadratureError(RuntimeError):
    pass


def support_integral_check(c: float, s: float, tol: float = 1e-10) -> float:
    """``int_{-c}^{c} u log(1 + 2u) / sqrt(c^2 - u^2) du - pi s`` with ``u = c sin(theta)``."""
    if not 0 < c < 0.5 or not 0 < s < 0.5:
        raise ValueError("need c and s in (0, 1/2)")
    f = lambda th: c * math.sin(th) * math.log1p(2 * c * math.sin(th))
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, err = integrate.quad(f, -math.pi / 2, math.pi / 2, epsabs=tol, epsrel=0, limit=200)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(str(exc)) from exc
    if err > 10 * tol:
        raise QuadratureError(f"quadrature error estimate {err:.3g} above tolerance")
    return value - math.pi * s


# -- Monte Carlo support ---------------------------------------------------

@dataclass(frozen=True)
class EmpiricalEnsemble:
    """Sampled chains of lines that share one order; positions scale as
    ``t = (x - offset) / order``."""

    chains: tuple[Chain, ...]
    order: int
    offset: float = 0.0
    labels: Callable[[int], float] = field(default=None, compare=False)

    def label(self, index: int) -> float:
        """``s`` for line ``index`` (1-based); defaults to particles per order."""
        if self.labels is not None:
            return self.labels(index)
        return len(self.chains[0][index - 1]) / self.order

    @classmethod
    def from_systems(cls, systems) -> "EmpiricalEnsemble":
        systems = list(systems)
        return cls(tuple(s.lines for s in systems), systems[0].order)

    @classmethod
    def from_half_holes(cls, systems) -> "EmpiricalEnsemble":
        """Hole lines of sampled half-diamond systems, scaled by ``(y - 1/2) / M``."""
        from .half import complement

        systems = list(systems)
        return cls(tuple(complement(s).lines for s in systems), systems[0].order, 0.5)


MIN_SAMPLES = 30


def empirical_support(samples: EmpiricalEnsemble, eps: float = 0.05) -> list[tuple[float, float]]:
    """Per line, the ``eps`` quantile of the sample minima and the ``1 - eps``
    quantile of the sample maxima of the scaled positions."""
    if len(samples.chains) < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {len(samples.chains)}")
    if not 0 <= eps < 0.5:
        raise ValueError("eps must lie in [0, 1/2)")
    lines = len(samples.chains[0])
    out = []
    for k in range(lines):
        lo = np.array([min(c[k]) for c in samples.chains], dtype=float)
        hi = np.array([max(c[k]) for c in samples.chains], dtype=float)
        scale = lambda v: (v - samples.offset) / samples.order
        out.append((float(scale(np.quantile(lo, eps))), float(scale(np.quantile(hi, 1 - eps)))))
    return out
