"""The Goldman Lie bracket on the vector space spanned by free homotopy classes.

Genus 1 has the closed form ``[(p,q),(r,s)] = (ps - qr) (p+r, q+s)``, checked
against a literal count of straight-line crossings on the square torus.

For genus >= 2 each class is realised by the axis of its image under the
Fuchsian representation.  Crossings of the closed geodesics of ``x`` and ``y``
correspond to translates ``h . axis(y)`` that cross ``axis(x)``, counted once
per orbit of the cyclic group generated by ``x``.  Each crossing contributes
``sign * class(x h y h^-1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from .fuchsian import (
    DegenerateGeometryError,
    Geodesic,
    Representation,
    _moebius_apply,
    axis,
    build_representation,
    circumradius,
    evaluate,
    frame_matrix,
)
from .report import CheckResult
from .surface import H1Class, LoopClass, abelianize, conjugacy_canonical, root_multiplicity
from .words import Word, _inverse, _reduce

__all__ = [
    "FormalSum",
    "BracketConfig",
    "NonStabilizedError",
    "torus_bracket",
    "torus_bracket_oracle",
    "goldman_bracket",
    "crossing_records",
    "CrossingRecord",
    "torus_crossing_points",
    "TORUS_OFFSETS",
    "GoldmanBracket",
    "intersection_pairing",
    "loop_h1_pairing",
    "verify_goldman",
    "LieReport",
]


class FormalSum:
    """A finitely supported rational combination of loop classes."""

    __slots__ = ("genus", "_terms")

    def __init__(self, genus: int, terms: Mapping[LoopClass, object] | Iterable | None = None):
        self.genus = genus
        out: dict[LoopClass, Fraction] = {}
        if terms is not None:
            items = terms.items() if hasattr(terms, "items") else terms
            for cls, coeff in items:
                if cls.genus != genus:
                    raise ValueError(f"class {cls!r} does not belong to genus {genus}")
                if not isinstance(coeff, Fraction):
                    coeff = Fraction(coeff)
                out[cls] = out[cls] + coeff if cls in out else coeff
        self._terms = {k: v for k, v in out.items() if v}

    @classmethod
    def _raw(cls, genus: int, terms: dict) -> "FormalSum":
        # trusted constructor: coefficients are nonzero Fractions of the right genus
        obj = cls.__new__(cls)
        obj.genus = genus
        obj._terms = terms
        return obj

    @classmethod
    def single(cls, c: LoopClass, coeff=1) -> "FormalSum":
        return cls(c.genus, {c: coeff})

    @classmethod
    def zero(cls, genus: int) -> "FormalSum":
        return cls(genus)

    def items(self) -> list[tuple[LoopClass, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def coefficient(self, c: LoopClass) -> Fraction:
        return self._terms.get(c, Fraction(0))

    def total(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def support(self) -> list[LoopClass]:
        return [c for c, _ in self.items()]

    def without_trivial(self) -> "FormalSum":
        if not any(c.is_trivial for c in self._terms):
            return self
        return FormalSum._raw(self.genus, {c: v for c, v in self._terms.items() if not c.is_trivial})

    def trivial_coefficient(self) -> Fraction:
        return sum((v for c, v in self._terms.items() if c.is_trivial), Fraction(0))

    def map_coefficients(self, f: Callable[[LoopClass, Fraction], object]) -> "FormalSum":
        return FormalSum(self.genus, [(c, f(c, v)) for c, v in self._terms.items()])

    def _check(self, other: "FormalSum") -> None:
        if self.genus != other.genus:
            raise ValueError(f"formal sums of genus {self.genus} and {other.genus}")

    def __add__(self, other: "FormalSum") -> "FormalSum":
        self._check(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for c, v in other._terms.items():
            w = out.get(c)
            if w is None:
                out[c] = v
            else:
                w += v
                if w:
                    out[c] = w
                else:
                    del out[c]
        return FormalSum._raw(self.genus, out)

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __neg__(self) -> "FormalSum":
        return FormalSum._raw(self.genus, {c: -v for c, v in self._terms.items()})

    def __mul__(self, k) -> "FormalSum":
        if not isinstance(k, Fraction):
            k = Fraction(k)
        if k == 1:
            return self
        if not k:
            return FormalSum._raw(self.genus, {})
        return FormalSum._raw(self.genus, {c: k * v for c, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.genus == other.genus and self._terms == other._terms

    def __hash__(self):
        return hash((self.genus, frozenset(self._terms.items())))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[LoopClass]:
        return iter(self.support())

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for c, v in self.items():
            name = str(c) if str(c) else "1"
            parts.append(f"{v}*[{name}]")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"FormalSum(genus={self.genus}, {self})"


@dataclass(frozen=True)
class BracketConfig:
    max_conjugator_length: int = 8
    stabilization_step: int = 2
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.max_conjugator_length < 1:
            raise ValueError("max_conjugator_length must be >= 1")
        if self.stabilization_step < 1:
            raise ValueError("stabilization_step must be >= 1")


class NonStabilizedError(RuntimeError):
    """The bracket changed between two conjugator depths."""

    def __init__(self, x, y, depths, sums):
        self.x, self.y = x, y
        self.depths = depths
        self.sums = sums
        super().__init__(
            f"bracket [{x}, {y}] not stable: depth {depths[0]} gives {sums[0]}, "
            f"depth {depths[1]} gives {sums[1]}"
        )


# ---------------------------------------------------------------- torus


# generic base points: no crossing lands on a lattice line
TORUS_OFFSETS = ((Fraction(1, 7), Fraction(2, 11)), (Fraction(3, 13), Fraction(5, 17)))


def _torus_class(p: int, q: int) -> LoopClass:
    return LoopClass(1, (p, q))


def torus_bracket(x: tuple[int, int], y: tuple[int, int]) -> FormalSum:
    (p, q), (r, s) = x, y
    det = p * s - q * r
    if det == 0:
        return FormalSum.zero(1)
    return FormalSum.single(_torus_class(p + r, q + s), det)


def torus_bracket_oracle(
    x: tuple[int, int],
    y: tuple[int, int],
    offsets: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] | None = None,
) -> FormalSum:
    """Count crossings of the straight loops ``t -> o1 + t(p,q)`` and
    ``u -> o2 + u(r,s)`` (t, u in [0,1)) on R^2/Z^2 one by one."""
    (p, q), (r, s) = x, y
    if (p, q) == (0, 0) or (r, s) == (0, 0):
        return FormalSum.zero(1)
    points = torus_crossing_points(x, y, offsets)
    area_sign = 1 if p * s - q * r > 0 else -1
    out = FormalSum.zero(1)
    for _ in points:
        out = out + FormalSum.single(_torus_class(p + r, q + s), area_sign)
    return out


def torus_crossing_points(x, y, offsets=None) -> list[tuple[Fraction, Fraction]]:
    """Parameters ``(t, u)`` in [0,1)^2 of the crossings of the two straight loops."""
    (p, q), (r, s) = x, y
    if offsets is None:
        offsets = TORUS_OFFSETS
    det = p * s - q * r
    if det == 0:
        return []
    (o1x, o1y), (o2x, o2y) = offsets
    dx, dy = Fraction(o2x) - Fraction(o1x), Fraction(o2y) - Fraction(o1y)
    # clear denominators so the search below runs on integers
    L = dx.denominator * dy.denominator
    ex, ey = int(dx * L), int(dy * L)
    # t (p,q) - u (r,s) = (dx + nx, dy + ny) for integers nx, ny; Cramer's rule
    # gives t = nt / (det L) and u = nu / (det L)
    scale = det * L
    lo, hi = (0, scale) if scale > 0 else (scale, 0)
    bx = abs(p) + abs(r) + 1
    by = abs(q) + abs(s) + 1
    points = set()
    for nx in range(-bx, bx + 1):
        rx = ex + nx * L
        for ny in range(-by, by + 1):
            ry = ey + ny * L
            nt = rx * s - r * ry
            nu = rx * q - p * ry
            # 0 <= t < 1 and 0 <= u < 1, with the sign of scale folded in
            if scale > 0:
                ok = lo <= nt < hi and lo <= nu < hi
            else:
                ok = lo < nt <= hi and lo < nu <= hi
            if ok:
                points.add((Fraction(nt, scale), Fraction(nu, scale)))
    return sorted(points)


# ---------------------------------------------------------------- genus >= 2


def _tube_distance(z: np.ndarray, half: float) -> np.ndarray:
    """Hyperbolic distance from points ``z`` to the segment of the imaginary
    axis between heights exp(-half) and exp(half)."""
    x, y = z.real, z.imag
    s = 0.5 * np.log(x * x + y * y)
    inside = np.abs(s) <= half
    d_line = np.arcsinh(np.abs(x) / y)
    end = np.exp(np.clip(s, -half, half))
    d_end = np.arccosh(1 + (x * x + (y - end) ** 2) / (2 * y * end))
    return np.where(inside, d_line, d_end)


def _apply_to_i(m: np.ndarray) -> np.ndarray:
    return (m[:, 0, 0] * 1j + m[:, 0, 1]) / (m[:, 1, 0] * 1j + m[:, 1, 1])


def _point_distance_to_axis(frame: np.ndarray) -> float:
    z = complex(frame[0, 0] * 1j + frame[0, 1]) / complex(frame[1, 0] * 1j + frame[1, 1])
    return math.asinh(abs(z.real) / z.imag) if z.imag > 0 else math.inf


@dataclass
class _Crossing:
    depth: int
    sign: int
    position: float
    u: float
    v: float
    node: int


def _bfs_tube(R: Representation, frame: np.ndarray, half: float, radius: float, max_depth: int):
    """Group elements whose tile centre lies within ``radius`` of the segment,
    found breadth-first; returns matrices, depth, parent and last letter arrays."""
    gens = R.letter_matrices
    n_letters = len(gens)
    mats = [np.eye(2)[None]]
    depth = [np.zeros(1, dtype=int)]
    parent = [np.full(1, -1)]
    last = [np.full(1, -1)]
    seen = set()
    z0 = _apply_to_i(np.eye(2)[None])[0]
    seen.add((round(math.log(z0.imag), 6), round(z0.real / z0.imag, 6)))
    f_mats, f_last, f_idx = mats[0], last[0], np.zeros(1, dtype=int)
    total = 1
    for d in range(1, max_depth + 1):
        cand, cand_last, cand_parent = [], [], []
        for c in range(n_letters):
            keep = f_last != (c ^ 1)
            if not keep.any():
                continue
            cand.append(f_mats[keep] @ gens[c])
            cand_last.append(np.full(int(keep.sum()), c))
            cand_parent.append(f_idx[keep])
        if not cand:
            break
        cm = np.concatenate(cand)
        cl = np.concatenate(cand_last)
        cp = np.concatenate(cand_parent)
        zi = _apply_to_i(cm)
        ok = _tube_distance(_apply_to_i(frame[None] @ cm), half) <= radius
        keys_a = np.round(np.log(zi.imag), 6)
        keys_b = np.round(zi.real / zi.imag, 6)
        sel = []
        for j in np.nonzero(ok)[0]:
            k = (float(keys_a[j]), float(keys_b[j]))
            if k not in seen:
                seen.add(k)
                sel.append(j)
        if not sel:
            break
        sel = np.array(sel)
        f_mats, f_last = cm[sel], cl[sel]
        f_idx = np.arange(total, total + len(sel))
        total += len(sel)
        mats.append(f_mats)
        depth.append(np.full(len(sel), d))
        parent.append(cp[sel])
        last.append(f_last)
    return (
        np.concatenate(mats),
        np.concatenate(depth),
        np.concatenate(parent),
        np.concatenate(last),
    )


def _word_of(node: int, parent: np.ndarray, last: np.ndarray) -> tuple[int, ...]:
    out = []
    while node > 0:
        out.append(int(last[node]))
        node = int(parent[node])
    return tuple(reversed(out))


def _endpoints_in_frame(K: np.ndarray, g) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    def proj(t):
        if math.isinf(t):
            return K[:, 0, 0], K[:, 1, 0]
        return K[:, 0, 0] * t + K[:, 0, 1], K[:, 1, 0] * t + K[:, 1, 1]

    un, ud = proj(g.repelling)
    vn, vd = proj(g.attracting)
    return un, ud, vn, vd


def _collect_crossings(R: Representation, wx: Word, wy: Word, cfg: BracketConfig, max_depth: int):
    tol = cfg.tolerance
    Mx, My = evaluate(wx, R), evaluate(wy, R)
    Ax, Ay = axis(Mx, tol), axis(My, tol)
    lx, ly = Ax.translation_length, Ay.translation_length
    frame = frame_matrix(Ax)
    d_x = _point_distance_to_axis(frame)
    d_y = _point_distance_to_axis(frame_matrix(Ay))
    radius = max(d_y + ly / 2, d_x) + circumradius(R.genus) + 0.05
    mats, depth, parent, last = _bfs_tube(R, frame, lx / 2, radius, max_depth)

    K = frame[None] @ mats
    un, ud, vn, vd = _endpoints_in_frame(K, Ay)
    su, sv = np.sign(un * ud), np.sign(vn * vd)
    # boundary angles measured from the endpoints 0 and inf of the framed axis
    gu = np.abs(np.arctan2(np.abs(un), np.abs(ud)))
    gv = np.abs(np.arctan2(np.abs(vn), np.abs(vd)))
    gu = np.minimum(gu, np.pi / 2 - gu)
    gv = np.minimum(gv, np.pi / 2 - gv)
    same_axis = (gu < 10 * tol) & (gv < 10 * tol)
    with np.errstate(divide="ignore", invalid="ignore"):
        pos = 0.5 * np.log(np.abs(un * vn) / np.abs(ud * vd))
    hit = (su * sv < 0) & ~same_axis & np.isfinite(pos) & (np.abs(pos) <= lx / 2 + 1.0)

    crossings = []
    for j in np.nonzero(hit)[0]:
        u, v = un[j] / ud[j], vn[j] / vd[j]
        sin_angle = 2 * math.sqrt(-u * v) / abs(v - u)
        if sin_angle < 10 * tol:
            raise DegenerateGeometryError(
                f"near-tangent crossing of axes for [{wx}] and a conjugate of [{wy}]"
            )
        p = float(pos[j])
        k = math.floor((p + lx / 2) / lx)
        p -= k * lx
        if p >= lx / 2 - 1e-7:
            k += 1
            p -= lx
        scale = math.exp(-k * lx)
        crossings.append(_Crossing(int(depth[j]), 1 if u < 0 else -1, p, u * scale, v * scale, int(j)))
    return crossings, parent, last


def _cluster(crossings: list[_Crossing], tol: float = 1e-6) -> list[_Crossing]:
    reps: list[_Crossing] = []
    for c in sorted(crossings, key=lambda c: (c.depth, c.node)):
        au, av = math.atan(c.u), math.atan(c.v)
        for r in reps:
            if (
                abs(r.position - c.position) < tol
                and abs(math.atan(r.u) - au) < tol
                and abs(math.atan(r.v) - av) < tol
            ):
                break
        else:
            reps.append(c)
    return reps


@dataclass(frozen=True)
class CrossingRecord:
    """One intersection point of the closed geodesics of ``x`` and ``y``.

    ``geodesic`` is the lift of ``y`` crossing the axis of ``x`` inside one
    period, ``point`` the crossing in the upper half-plane.
    """

    conjugator: Word
    sign: int
    product: LoopClass
    geodesic: Geodesic
    point: complex


def _check_pair(x: LoopClass, y: LoopClass) -> int:
    if x.genus != y.genus:
        raise ValueError(f"classes of genus {x.genus} and {y.genus}")
    if x.genus < 2:
        raise ValueError("the geometric bracket needs genus >= 2; use torus_bracket for genus 1")
    return x.genus


def _records_at(R, x, y, cfg, crossings, parent, last, depth, frame_inv) -> list[CrossingRecord]:
    genus = x.genus
    wx, wy = x.word, y.word
    ly = axis(evaluate(wy, R), cfg.tolerance).translation_length
    out = []
    for c in _cluster([c for c in crossings if c.depth <= depth]):
        h = _word_of(c.node, parent, last)
        prod = Word(genus, _reduce(wx.letters + h + wy.letters + _inverse(h)))
        u, v = _moebius_apply(frame_inv, c.u), _moebius_apply(frame_inv, c.v)
        z = complex(0.0, math.sqrt(-c.u * c.v))
        a, b, cc, d = frame_inv.ravel()
        point = complex((a * z + b) / (cc * z + d))
        geo = Geodesic(u, v, ly)
        out.append(CrossingRecord(Word(genus, h), c.sign, conjugacy_canonical(prod), geo, point))
    return out


def _crossing_data(x, y, R, cfg):
    n2 = cfg.max_conjugator_length + cfg.stabilization_step
    crossings, parent, last = _collect_crossings(R, x.word, y.word, cfg, n2)
    frame_inv = np.linalg.inv(frame_matrix(axis(evaluate(x.word, R), cfg.tolerance)))
    return crossings, parent, last, frame_inv


def crossing_records(
    x: LoopClass,
    y: LoopClass,
    R: Representation | None = None,
    cfg: BracketConfig | None = None,
) -> list[CrossingRecord]:
    """The signed crossings behind ``goldman_bracket(x, y)``, one per intersection point."""
    cfg = cfg or BracketConfig()
    _check_pair(x, y)
    if x.is_trivial or y.is_trivial or x == y:
        return []
    R = R or build_representation(x.genus)
    crossings, parent, last, frame_inv = _crossing_data(x, y, R, cfg)
    depth = cfg.max_conjugator_length + cfg.stabilization_step
    return _records_at(R, x, y, cfg, crossings, parent, last, depth, frame_inv)


def goldman_bracket(
    x: LoopClass,
    y: LoopClass,
    R: Representation | None = None,
    cfg: BracketConfig | None = None,
) -> FormalSum:
    """Goldman bracket of two loop classes on a surface of genus >= 2."""
    cfg = cfg or BracketConfig()
    genus = _check_pair(x, y)
    if x.is_trivial or y.is_trivial or x == y:
        return FormalSum.zero(genus)
    R = R or build_representation(genus)
    n1 = cfg.max_conjugator_length
    n2 = n1 + cfg.stabilization_step
    data = _crossing_data(x, y, R, cfg)
    weight = root_multiplicity(y)
    sums = []
    for n in (n1, n2):
        out: dict[LoopClass, int] = {}
        for rec in _records_at(R, x, y, cfg, *data[:3], n, data[3]):
            out[rec.product] = out.get(rec.product, 0) + rec.sign * weight
        sums.append(FormalSum(genus, out))
    if sums[0] != sums[1]:
        raise NonStabilizedError(x, y, (n1, n2), sums)
    return sums[1]


class GoldmanBracket:
    """Bilinear Goldman bracket on formal sums, with a per-pair cache.

    Genus 1 uses the closed form; genus >= 2 the geometric engine.
    """

    def __init__(self, genus: int, config: BracketConfig | None = None, representation: Representation | None = None):
        self.genus = genus
        self.config = config or BracketConfig()
        self._rep = representation
        self._cache: dict[tuple[LoopClass, LoopClass], FormalSum] = {}

    @property
    def representation(self) -> Representation:
        if self._rep is None:
            self._rep = build_representation(self.genus)
        return self._rep

    def __call__(self, x: LoopClass, y: LoopClass) -> FormalSum:
        key = (x, y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self.genus == 1:
            res = torus_bracket(x.key, y.key)
        else:
            res = goldman_bracket(x, y, self.representation, self.config)
        self._cache[key] = res
        return res

    def on_sums(self, a: FormalSum, b: FormalSum) -> FormalSum:
        out = FormalSum.zero(self.genus)
        for x, cx in a.items():
            for y, cy in b.items():
                out = out + self(x, y) * (cx * cy)
        return out


# ---------------------------------------------------------------- pairings


def intersection_pairing(alpha: H1Class, beta: H1Class) -> Fraction:
    """Symplectic pairing with <a_i, b_i> = +1."""
    if alpha.genus != beta.genus:
        raise ValueError(f"H1 classes of genus {alpha.genus} and {beta.genus}")
    a, b = alpha.coords, beta.coords
    return sum((a[2 * i] * b[2 * i + 1] - a[2 * i + 1] * b[2 * i] for i in range(alpha.genus)), Fraction(0))


@lru_cache(maxsize=None)
def _class_homology(c: LoopClass) -> H1Class:
    return abelianize(c.word)


def loop_h1_pairing(alpha: H1Class, gamma: FormalSum) -> FormalSum:
    """Weight each term ``c [w]`` of ``gamma`` by ``<alpha, [w]>``."""
    return gamma.map_coefficients(lambda cls, v: v * intersection_pairing(alpha, _class_homology(cls)))


# ---------------------------------------------------------------- Lie checks


@dataclass
class LieReport:
    genus: int
    seed: int
    samples: int
    max_class_len: int
    results: dict[str, CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "seed": self.seed,
            "samples": self.samples,
            "max_class_len": self.max_class_len,
            "passed": self.passed,
            "checks": {
                n: {"passed": r.passed, "checked": r.checked, "counterexample": r.counterexample}
                for n, r in self.results.items()
            },
        }


def _sum_json(s: FormalSum) -> dict:
    from .serialize import sum_to_json

    return sum_to_json(s)


def verify_goldman(
    genus: int,
    samples: int = 100,
    seed: int = 0,
    max_class_len: int = 2,
    bracket: GoldmanBracket | None = None,
) -> LieReport:
    """Antisymmetry, Jacobi and homological consistency on seeded random classes."""
    import random

    from .surface import enumerate_classes

    br = bracket or GoldmanBracket(genus)
    classes = [c for c in enumerate_classes(genus, max_class_len) if not c.is_trivial]
    results = {n: CheckResult(n) for n in ("antisymmetry", "jacobi", "homological_consistency")}
    for i in range(samples):
        rng = random.Random(f"{seed}:{i}")
        x, y, z = (rng.choice(classes) for _ in range(3))
        xy, yx = br(x, y), br(y, x)
        results["antisymmetry"].record(
            xy == -yx,
            lambda: {"x": str(x), "y": str(y), "xy": _sum_json(xy), "yx": _sum_json(yx)},
        )
        pairing = intersection_pairing(_class_homology(x), _class_homology(y))
        results["homological_consistency"].record(
            xy.total() == pairing,
            lambda: {"x": str(x), "y": str(y), "bracket": _sum_json(xy), "pairing": str(pairing)},
        )
        fx, fy, fz = (FormalSum.single(c) for c in (x, y, z))
        jac = br.on_sums(fx, br.on_sums(fy, fz)) + br.on_sums(fy, br.on_sums(fz, fx)) + br.on_sums(fz, br.on_sums(fx, fy))
        results["jacobi"].record(not jac, lambda: {"x": str(x), "y": str(y), "z": str(z), "cyclic_sum": _sum_json(jac)})
    return LieReport(genus, seed, samples, max_class_len, results)
