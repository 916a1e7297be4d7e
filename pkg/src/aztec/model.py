"""Domino tilings of the Aztec diamond and their particle / path pictures.

Coordinate convention
---------------------
A unit square is named by its lower-left corner ``(i, j)``.  The order-N
diamond is made of the squares with ``|i + 1/2| + |j + 1/2| <= N``.  The top
left square is white, so ``(i, j)`` is white iff ``i + j - N`` is even.

Line ``k`` (``k = 1..N``) is the diagonal ``i - j = 2k - N - 1`` of black
squares, read from south-west to north-east; its position ``p = 0..N`` is the
black square ``(k - N - 1 + p, p - k)``.  A black square carries a particle
when its domino is shaded (E: partner to the right, S: partner below).

The white squares between lines ``k`` and ``k + 1`` form the row
``W(k, q) = (k - N + q, q - k)``, ``k = 0..N``, ``q = 0..N-1``.  Each of them
is covered together with either a particle of line ``k`` or a hole of line
``k + 1`` sitting at position ``q`` or ``q + 1``; that 1-D matching is what
``tilings_from_particles`` solves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .combinatorics import Chain, Line, chain_adjacency, is_valid_chain, normalize_line


class TilingError(ValueError):
    """Malformed tiling: overlap, hole or domino outside the region."""


class BudgetError(RuntimeError):
    """Requested enumeration exceeds the configured size budget."""


Square = tuple[int, int]


def diamond_squares(order: int) -> list[Square]:
    r = order + 1
    return [(i, j) for j in range(r - 1, -r - 1, -1) for i in range(-r, r)
            if abs(2 * i + 1) + abs(2 * j + 1) <= 2 * order]


def is_white(order: int, sq: Square) -> bool:
    return (sq[0] + sq[1] - order) % 2 == 0


def black_square(order: int, line: int, pos: int) -> Square:
    return (line - order - 1 + pos, pos - line)


def white_square(order: int, row: int, slot: int) -> Square:
    return (row - order + slot, slot - row)


def black_coords(order: int, sq: Square) -> tuple[int, int]:
    """Inverse of :func:`black_square`: ``(line, position)``."""
    i, j = sq
    line = (i - j + order + 1) // 2
    return line, i - line + order + 1


@dataclass(frozen=True, order=True)
class Domino:
    x: int
    y: int
    orient: str  # "h" covers (x, y), (x+1, y); "v" covers (x, y), (x, y+1)

    @property
    def squares(self) -> tuple[Square, Square]:
        if self.orient == "h":
            return (self.x, self.y), (self.x + 1, self.y)
        return (self.x, self.y), (self.x, self.y + 1)

    def kind(self, order: int) -> str:
        """E/W for horizontal dominoes (colour of the left square), S/N for
        vertical ones (colour of the top square); black gives E and S."""
        if self.orient == "h":
            return "W" if is_white(order, (self.x, self.y)) else "E"
        return "N" if is_white(order, (self.x, self.y + 1)) else "S"


def _domino(a: Square, b: Square) -> Domino:
    (x0, y0), (x1, y1) = sorted((a, b))
    if y0 == y1 and x1 == x0 + 1:
        return Domino(x0, y0, "h")
    if x0 == x1 and y1 == y0 + 1:
        return Domino(x0, y0, "v")
    raise TilingError(f"squares {a} and {b} are not adjacent")


@dataclass(frozen=True)
class DominoTiling:
    order: int
    dominoes: frozenset[Domino]

    def __post_init__(self) -> None:
        self.partner_map()  # validates coverage

    def partner_map(self) -> dict[Square, Square]:
        region = set(diamond_squares(self.order))
        partner: dict[Square, Square] = {}
        for d in self.dominoes:
            a, b = d.squares
            for s in (a, b):
                if s not in region:
                    raise TilingError(f"square {s} outside the order-{self.order} diamond")
                if s in partner:
                    raise TilingError(f"square {s} covered twice")
            partner[a], partner[b] = b, a
        if len(partner) != len(region):
            raise TilingError("tiling leaves squares uncovered")
        return partner

    def to_json(self) -> dict:
        return {"order": self.order,
                "dominoes": [{"x": d.x, "y": d.y, "orient": d.orient, "type": d.kind(self.order)}
                             for d in sorted(self.dominoes)]}

    @classmethod
    def from_json(cls, data: dict | str) -> "DominoTiling":
        if isinstance(data, str):
            data = json.loads(data)
        order = int(data["order"])
        dominoes = frozenset(Domino(int(d["x"]), int(d["y"]), d["orient"]) for d in data["dominoes"])
        tiling = cls(order, dominoes)
        for d, raw in zip(sorted(dominoes), sorted(data["dominoes"], key=lambda r: (r["x"], r["y"], r["orient"]))):
            if "type" in raw and raw["type"] != d.kind(order):
                raise TilingError(f"type tag {raw['type']!r} inconsistent with colouring at {d}")
        return tiling


@dataclass(frozen=True)
class ParticleSystem:
    """Shaded-tile particles; ``lines[k-1]`` is line ``k`` with ``k`` particles in ``0..order``."""

    order: int
    lines: Chain

    def __post_init__(self) -> None:
        lines = tuple(normalize_line(l) for l in self.lines)
        object.__setattr__(self, "lines", lines)
        if len(lines) != self.order or any(len(l) != k for k, l in enumerate(lines, start=1)):
            raise ValueError("line k must hold exactly k particles, k = 1..order")
        if not is_valid_chain(lines, self.order):
            raise ValueError(f"particle lines do not interlace: {lines}")

    @property
    def adjacency(self) -> int:
        return chain_adjacency(self.lines)

    @property
    def free_count(self) -> int:
        return self.order * (self.order - 1) // 2 - self.adjacency

    def to_json(self) -> dict:
        return {"order": self.order, "lines": [list(l) for l in self.lines]}


@dataclass(frozen=True)
class PathFamily:
    """Non-intersecting paths; points are in doubled coordinates ``(2x, 2y)``."""

    order: int
    paths: tuple[tuple[tuple[int, int], ...], ...]

    def is_non_intersecting(self) -> bool:
        seen: set[tuple[int, int]] = set()
        for path in self.paths:
            pts = set(path)
            if pts & seen:
                return False
            seen |= pts
        return True


def nonadjacent_particles(lines: Sequence[Line]) -> list[tuple[int, int]]:
    """``(line, index)`` pairs (1-based line, 0-based index) of particles below
    the last line touching neither sandwiching particle, in lexicographic order."""
    out = []
    for k, (lo, up) in enumerate(zip(lines, lines[1:]), start=1):
        for i, x in enumerate(lo):
            if x != up[i] and x != up[i + 1]:
                out.append((k, i))
    return out


def particles_from_tiling(tiling: DominoTiling) -> ParticleSystem:
    n = tiling.order
    partner = tiling.partner_map()
    lines = []
    for k in range(1, n + 1):
        line = []
        for p in range(n + 1):
            i, j = black_square(n, k, p)
            if partner[(i, j)] in ((i + 1, j), (i, j - 1)):
                line.append(p)
        lines.append(tuple(reversed(line)))
    return ParticleSystem(n, tuple(lines))


def orientation_bits(tiling: DominoTiling) -> tuple[int, ...]:
    """Free bits of a tiling: 1 for an S domino, 0 for E, one per non-adjacent particle."""
    n = tiling.order
    partner = tiling.partner_map()
    system = particles_from_tiling(tiling)
    bits = []
    for k, i in nonadjacent_particles(system.lines):
        x, y = black_square(n, k, system.lines[k - 1][i])
        bits.append(int(partner[(x, y)] == (x, y - 1)))
    return tuple(bits)


def tilings_from_particles(system: ParticleSystem, bits: Sequence[int]) -> DominoTiling:
    """Rebuild the tiling with the given particles and free orientation bits."""
    n = system.order
    free = nonadjacent_particles(system.lines)
    if len(bits) != len(free):
        raise ValueError(f"expected {len(free)} orientation bits, got {len(bits)}")
    bit_of = {(k, system.lines[k - 1][i]): int(b) for (k, i), b in zip(free, bits)}
    full = set(range(n + 1))
    dominoes = []
    for row in range(n + 1):
        particles = set(system.lines[row - 1]) if row >= 1 else set()
        holes = full - set(system.lines[row]) if row < n else set()
        slot = 0
        for p in sorted(particles | holes):
            here = [("x", p)] if p in particles else []
            if p in holes:
                here.append(("y", p))
            if len(here) == 1:
                slots = [slot]
            else:
                # particle takes the lower slot for an S domino
                slots = [p - 1, p] if bit_of[(row, p)] else [p, p - 1]
                if sorted(slots) != [slot, slot + 1]:
                    raise TilingError("particle configuration admits no tiling")
            for (kind, pos), q in zip(here, slots):
                if q not in (pos - 1, pos) or not 0 <= q < n:
                    raise TilingError("particle configuration admits no tiling")
                black = black_square(n, row, pos) if kind == "x" else black_square(n, row + 1, pos)
                dominoes.append(_domino(black, white_square(n, row, q)))
            slot += len(here)
    return DominoTiling(n, frozenset(dominoes))


def fiber(system: ParticleSystem) -> Iterator[DominoTiling]:
    """All tilings mapping onto ``system``."""
    from itertools import product

    for bits in product((0, 1), repeat=system.free_count):
        yield tilings_from_particles(system, bits)


def complement_lines(lines: Sequence[Line], lo: int, hi: int) -> Chain:
    """Hole lines: hole line ``L + 1 - n`` is ``{lo..hi}`` minus particle line ``n``."""
    full = set(range(lo, hi + 1))
    return tuple(tuple(sorted(full - set(line), reverse=True)) for line in reversed(lines))


def complement(system: ParticleSystem) -> ParticleSystem:
    return ParticleSystem(system.order, complement_lines(system.lines, 0, system.order))


def paths_from_tiling(tiling: DominoTiling) -> PathFamily:
    """Mark E dominoes horizontally, N dominoes right-up, S dominoes right-down."""
    steps: dict[tuple[int, int], tuple[int, int]] = {}
    for d in tiling.dominoes:
        x, y = 2 * d.x, 2 * d.y
        kind = d.kind(tiling.order)
        if kind == "E":
            steps[(x, y + 1)] = (x + 4, y + 1)
        elif kind == "N":
            steps[(x, y + 1)] = (x + 2, y + 3)
        elif kind == "S":
            steps[(x, y + 3)] = (x + 2, y + 1)
    ends = set(steps.values())
    paths = []
    for start in sorted(s for s in steps if s not in ends):
        path = [start]
        while path[-1] in steps:
            path.append(steps[path[-1]])
        paths.append(tuple(path))
    return PathFamily(tiling.order, tuple(paths))


def vertical_dominoes_from_paths(family: PathFamily) -> set[Domino]:
    """Recover the N and S dominoes from the sloped path steps."""
    out = set()
    for path in family.paths:
        for (x0, y0), (x1, y1) in zip(path, path[1:]):
            if y1 > y0:
                out.add(Domino(x0 // 2, (y0 - 1) // 2, "v"))
            elif y1 < y0:
                out.add(Domino(x0 // 2, (y1 - 1) // 2, "v"))
    return out


# -- independent enumeration (exact cover, no particle machinery) ----------

def _placements(order: int) -> dict[Domino, tuple[Square, Square]]:
    region = set(diamond_squares(order))
    rows = {}
    for (i, j) in region:
        for d in (Domino(i, j, "h"), Domino(i, j, "v")):
            a, b = d.squares
            if b in region:
                rows[d] = (a, b)
    return rows


def _algorithm_x(cols: dict, rows: dict, partial: list) -> Iterator[list]:
    if not cols:
        yield list(partial)
        return
    c = min(cols, key=lambda col: (len(cols[col]), col))
    for r in sorted(cols[c]):
        partial.append(r)
        removed = _select(cols, rows, r)
        yield from _algorithm_x(cols, rows, partial)
        _deselect(cols, rows, r, removed)
        partial.pop()


def _select(cols: dict, rows: dict, r) -> list:
    removed = []
    for j in rows[r]:
        for i in cols[j]:
            for k in rows[i]:
                if k != j:
                    cols[k].remove(i)
        removed.append(cols.pop(j))
    return removed


def _deselect(cols: dict, rows: dict, r, removed: list) -> None:
    for j in reversed(rows[r]):
        cols[j] = removed.pop()
        for i in cols[j]:
            for k in rows[i]:
                if k != j:
                    cols[k].add(i)


MAX_STREAM_ORDER = 6
MAX_COUNT_ORDER = 14


def iter_tilings(order: int, max_order: int = MAX_STREAM_ORDER) -> Iterator[DominoTiling]:
    """Stream every tiling by exact cover over the diamond's squares."""
    if order > max_order:
        raise BudgetError(f"streaming tilings of order {order} exceeds budget {max_order}")
    rows = _placements(order)
    cols: dict[Square, set] = {s: set() for s in diamond_squares(order)}
    for d, sqs in rows.items():
        for s in sqs:
            cols[s].add(d)
    for solution in _algorithm_x(cols, rows, []):
        yield DominoTiling(order, frozenset(solution))


def count_tilings_direct(order: int, max_order: int = MAX_COUNT_ORDER) -> int:
    """Tiling count by a row-by-row broken-profile transfer over the region."""
    if order > max_order:
        raise BudgetError(f"counting tilings of order {order} exceeds budget {max_order}")
    region = set(diamond_squares(order))
    xs = range(-order - 1, order + 1)
    ys = list(range(order, -order - 2, -1))
    # state: frozenset of squares in the current row already covered by a
    # vertical domino hanging from the row above
    states = {frozenset(): 1}
    for y in ys:
        row = [(x, y) for x in xs if (x, y) in region]
        new: dict[frozenset, int] = {}
        for filled, ways in states.items():
            for below, w in _fill_row(row, filled, region):
                new[below] = new.get(below, 0) + ways * w
        states = new
    return states.get(frozenset(), 0)


def _fill_row(row: list[Square], filled: frozenset, region: set) -> Iterable[tuple[frozenset, int]]:
    out: dict[frozenset, int] = {}

    def rec(idx: int, below: tuple) -> None:
        if idx == len(row):
            key = frozenset(below)
            out[key] = out.get(key, 0) + 1
            return
        sq = row[idx]
        if sq in filled:
            rec(idx + 1, below)
            return
        down = (sq[0], sq[1] - 1)
        if down in region:
            rec(idx + 1, below + (down,))
        if idx + 1 < len(row) and row[idx + 1] == (sq[0] + 1, sq[1]) and row[idx + 1] not in filled:
            rec(idx + 2, below)

    rec(0, ())
    return out.items()


def enumerate_tilings(order: int, stream: bool = False) -> tuple[int, list[DominoTiling] | None]:
    """Exact tiling count, plus the list of tilings when ``stream`` is set."""
    if stream:
        tilings = list(iter_tilings(order))
        return len(tilings), tilings
    return count_tilings_direct(order), None
