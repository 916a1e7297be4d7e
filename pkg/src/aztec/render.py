"""SVG 1.1 pictures of tilings: shaded E/S dominoes, particle dots on the
shaded black squares, the non-intersecting path family and, optionally,
the inscribed arctic circle."""

from __future__ import annotations

import math
from pathlib import Path

from .model import DominoTiling, is_white, paths_from_tiling

UNIT = 20
FILL = {"E": "#3b6ea8", "S": "#8db6e0", "W": "#ffffff", "N": "#f3efe4"}
PARTICLE = "#d1495b"
PATH = "#1b1b1b"
CIRCLE = "#e8a33d"


def _px(order: int, x: float, y: float) -> tuple[float, float]:
    """Lattice point ``(x, y)`` to pixels; ``y`` grows upwards on the lattice."""
    return (x + order + 1) * UNIT, (order + 1 - y) * UNIT


def _num(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def render_tiling(tiling: DominoTiling, particles: bool = True, paths: bool = True,
                  arctic: bool = False, title: str | None = None) -> str:
    n = tiling.order
    size = 2 * (n + 1) * UNIT
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<g stroke="#222" stroke-width="1">')
    dots = []
    for d in sorted(tiling.dominoes):
        kind = d.kind(n)
        w, h = (2, 1) if d.orient == "h" else (1, 2)
        x, y = _px(n, d.x, d.y + h)
        out.append(f'<rect x="{_num(x)}" y="{_num(y)}" width="{w * UNIT}" height="{h * UNIT}" '
                   f'fill="{FILL[kind]}" data-type="{kind}"/>')
        if kind in "ES":
            black = next(s for s in d.squares if not is_white(n, s))
            dots.append(_px(n, black[0] + 0.5, black[1] + 0.5))
    out.append("</g>")
    if particles and dots:
        out.append(f'<g fill="{PARTICLE}" stroke="none">')
        out.extend(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{UNIT / 5:g}"/>' for x, y in dots)
        out.append("</g>")
    if paths:
        out.append(f'<g fill="none" stroke="{PATH}" stroke-width="2">')
        for path in paths_from_tiling(tiling).paths:
            pts = " ".join(f"{_num(px)},{_num(py)}" for px, py in (_px(n, a / 2, b / 2) for a, b in path))
            out.append(f'<polyline points="{pts}"/>')
        out.append("</g>")
    if arctic:
        c = (n + 1) * UNIT
        r = (n + 1) / math.sqrt(2) * UNIT
        out.append(f'<circle cx="{_num(c)}" cy="{_num(c)}" r="{_num(r)}" fill="none" '
                   f'stroke="{CIRCLE}" stroke-width="3"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path: str | Path, svg: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(svg, encoding="utf-8")
    return path
