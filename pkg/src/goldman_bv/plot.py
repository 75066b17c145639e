"""Static SVG pictures of a bracket computation.

Genus >= 2: the Poincare disk with the fundamental polygon, the axis of ``x``
and every lift of ``y`` that crosses it, crossings marked by sign.
Genus 1: the square torus with both straight loops and their crossings.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .fuchsian import _rotation, _translation, axis, build_representation, circumradius, evaluate
from .goldman import BracketConfig, crossing_records, torus_crossing_points, TORUS_OFFSETS
from .surface import LoopClass

__all__ = ["bracket_svg"]

SIZE = 520
PLUS, MINUS = "#c0392b", "#2166ac"


def _cayley(z: complex) -> complex:
    return (z - 1j) / (z + 1j)


def _px(w: complex) -> tuple[float, float]:
    r = SIZE / 2 - 20
    return SIZE / 2 + r * w.real, SIZE / 2 - r * w.imag


def _polyline(points, color: str, width: float, extra: str = "") -> str:
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(_px, points))
    return f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"{extra}/>'


def _geodesic_points(u: float, v: float, n: int = 160) -> list[complex]:
    """Disk points along the geodesic with real endpoints u, v (either may be inf)."""
    if math.isinf(u) or math.isinf(v):
        base = v if math.isinf(u) else u
        zs = [complex(base, math.exp(s)) for s in np.linspace(-9, 9, n)]
    else:
        c, r = (u + v) / 2, abs(v - u) / 2
        zs = [c + r * cmath.exp(1j * phi) for phi in np.linspace(1e-4, math.pi - 1e-4, n)]
    return [_cayley(z) for z in zs]


def _segment_points(p: complex, q: complex, n: int = 24) -> list[complex]:
    # move p to 0, where the geodesic to q is a diameter
    qq = (q - p) / (1 - p.conjugate() * q)
    return [(t * qq + p) / (1 + p.conjugate() * t * qq) for t in np.linspace(0, 1, n)]


def _polygon_vertices(genus: int) -> list[complex]:
    n = 4 * genus
    rad = circumradius(genus)
    out = []
    for k in range(n):
        m = _rotation(-2 * math.pi * k / n + math.pi / n) @ _translation(rad)
        z = (m[0, 0] * 1j + m[0, 1]) / (m[1, 0] * 1j + m[1, 1])
        out.append(_cayley(complex(z)))
    return out


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE + 30}" '
        f'viewBox="0 0 {SIZE} {SIZE + 30}">',
        f'<text x="10" y="{SIZE + 20}" font-family="monospace" font-size="13">{title}</text>',
    ]


def _disk_svg(x: LoopClass, y: LoopClass, cfg: BracketConfig) -> str:
    R = build_representation(x.genus, cfg.tolerance)
    ax = axis(evaluate(x.word, R), cfg.tolerance)
    records = crossing_records(x, y, R, cfg)
    out = _header(f"[{x}, {y}]: {len(records)} crossing(s)")
    cx = cy = SIZE / 2
    out.append(f'<circle cx="{cx}" cy="{cy}" r="{SIZE / 2 - 20}" fill="#fbfbf7" stroke="black"/>')
    verts = _polygon_vertices(x.genus)
    for a, b in zip(verts, verts[1:] + verts[:1]):
        out.append(_polyline(_segment_points(a, b), "#999999", 0.8))
    out.append(_polyline(_geodesic_points(ax.repelling, ax.attracting), "black", 2.0))
    for rec in records:
        g = rec.geodesic
        color = PLUS if rec.sign > 0 else MINUS
        out.append(_polyline(_geodesic_points(g.repelling, g.attracting), color, 1.2, ' stroke-dasharray="4 2"'))
    for rec in records:
        px, py = _px(_cayley(rec.point))
        color = PLUS if rec.sign > 0 else MINUS
        label = f"{'+' if rec.sign > 0 else '-'}[{rec.product}]"
        out.append(
            f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4" fill="{color}"><title>{label}</title></circle>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _torus_pieces(offset, d) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Split the straight loop ``offset + t d`` (t in [0,1]) into pieces inside the unit square."""
    ox, oy = offset
    cuts = {Fraction(0), Fraction(1)}
    for o, dv in ((ox, d[0]), (oy, d[1])):
        if dv:
            lo, hi = sorted((o, o + dv))
            for k in range(math.floor(lo), math.ceil(hi) + 1):
                t = (k - o) / Fraction(dv)
                if 0 < t < 1:
                    cuts.add(t)
    cuts = sorted(cuts)
    pieces = []
    for t0, t1 in zip(cuts, cuts[1:]):
        mid = (t0 + t1) / 2
        sx, sy = math.floor(ox + mid * d[0]), math.floor(oy + mid * d[1])
        p0 = (float(ox + t0 * d[0] - sx), float(oy + t0 * d[1] - sy))
        p1 = (float(ox + t1 * d[0] - sx), float(oy + t1 * d[1] - sy))
        pieces.append((p0, p1))
    return pieces


def _torus_svg(x: LoopClass, y: LoopClass) -> str:
    pts = torus_crossing_points(x.key, y.key)
    (p, q), (r, s) = x.key, y.key
    sign = 1 if p * s - q * r > 0 else -1
    out = _header(f"[{x}, {y}]: {len(pts)} crossing(s)")
    pad, side = 40, SIZE - 80

    def sq(u, v):
        return pad + side * u, pad + side * (1 - v)

    out.append(f'<rect x="{pad}" y="{pad}" width="{side}" height="{side}" fill="#fbfbf7" stroke="black"/>')
    for key, off, color, width in ((x.key, TORUS_OFFSETS[0], "black", 2.0), (y.key, TORUS_OFFSETS[1], "#555555", 1.2)):
        if key == (0, 0):
            continue
        for a, b in _torus_pieces(off, key):
            (x0, y0), (x1, y1) = sq(*a), sq(*b)
            out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" stroke="{color}" stroke-width="{width}"/>')
    (o1x, o1y), _ = TORUS_OFFSETS
    color = PLUS if sign > 0 else MINUS
    for t, _u in pts:
        u, v = (o1x + t * p) % 1, (o1y + t * q) % 1
        cx, cy = sq(float(u), float(v))
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def bracket_svg(x: LoopClass, y: LoopClass, cfg: BracketConfig | None = None) -> str:
    """Return an SVG document showing the crossings that make up ``[x, y]``."""
    cfg = cfg or BracketConfig()
    if x.genus == 1:
        return _torus_svg(x, y)
    return _disk_svg(x, y, cfg)
