"""A discrete faithful representation pi_1(S_g) -> PSL(2, R) and axis geometry.

The generators are the side pairings of the regular hyperbolic 4g-gon with
interior angles 2*pi/(4g), centred at ``i`` in the upper half-plane.  Boundary
points are extended reals, ``math.inf`` standing for the point at infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .words import Word

__all__ = [
    "MobiusMap",
    "Geodesic",
    "Representation",
    "CrossResult",
    "NotHyperbolicError",
    "DegenerateGeometryError",
    "build_representation",
    "evaluate",
    "axis",
    "axes_cross",
    "crossing_sign",
    "axis_position",
    "frame_matrix",
    "circumradius",
]

DEFAULT_TOL = 1e-9


class NotHyperbolicError(ValueError):
    pass


class DegenerateGeometryError(ArithmeticError):
    """A geometric predicate stayed within its tolerance margin after re-evaluation."""


@dataclass(frozen=True)
class MobiusMap:
    a: float
    b: float
    c: float
    d: float

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, m) -> "MobiusMap":
        m = np.asarray(m, dtype=float)
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def normalized(self, tol: float = DEFAULT_TOL) -> "MobiusMap":
        """Projective representative with non-negative trace."""
        if self.trace < -tol:
            return MobiusMap(-self.a, -self.b, -self.c, -self.d)
        return self

    def is_identity(self, tol: float = DEFAULT_TOL) -> bool:
        m = self.as_array()
        e = np.eye(2)
        return min(np.abs(m - e).max(), np.abs(m + e).max()) < tol

    def __call__(self, t):
        """Act on a point of the closed upper half-plane (complex or extended real)."""
        if isinstance(t, float) and math.isinf(t):
            return self.a / self.c if self.c != 0 else math.inf
        den = self.c * t + self.d
        if den == 0:
            return math.inf
        return (self.a * t + self.b) / den


@dataclass(frozen=True)
class Geodesic:
    """An oriented geodesic, as the axis of a hyperbolic element."""

    repelling: float
    attracting: float
    translation_length: float = 0.0

    def image(self, m: MobiusMap) -> "Geodesic":
        return Geodesic(m(self.repelling), m(self.attracting), self.translation_length)

    def reversed(self) -> "Geodesic":
        return Geodesic(self.attracting, self.repelling, self.translation_length)


def _rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    return np.array([[c, -s], [s, c]])


def _translation(t: float) -> np.ndarray:
    return np.diag([math.exp(t / 2), math.exp(-t / 2)])


def circumradius(genus: int) -> float:
    """Hyperbolic distance from the polygon centre ``i`` to a vertex."""
    n = 4 * genus
    return math.acosh(1.0 / math.tan(math.pi / n) ** 2)


@lru_cache(maxsize=None)
def _side_pairings(genus: int) -> tuple[np.ndarray, ...]:
    n = 4 * genus
    inradius = math.acosh(1.0 / math.tan(math.pi / n))
    # sides numbered clockwise: this fixes the surface orientation for which
    # crossing_sign totals to the symplectic pairing with <a_i, b_i> = +1
    theta = [-2 * math.pi * k / n for k in range(n)]

    def pairing(src: int, dst: int) -> np.ndarray:
        # carry side ``src`` onto side ``dst`` and the polygon across it
        return _rotation(theta[dst]) @ _translation(2 * inradius) @ _rotation(math.pi) @ _rotation(-theta[src])

    gens = []
    for j in range(genus):
        gens.append(pairing(4 * j + 2, 4 * j))  # a_j
        gens.append(pairing(4 * j + 1, 4 * j + 3))  # b_j
    return tuple(gens)


@dataclass(frozen=True)
class Representation:
    genus: int
    images: tuple[MobiusMap, ...]
    tolerance: float = DEFAULT_TOL

    def matrix(self, code: int) -> np.ndarray:
        m = self.images[code >> 1].as_array()
        if code & 1:
            m = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
        return m

    @property
    def letter_matrices(self) -> np.ndarray:
        """Array of shape (4g, 2, 2) indexed by letter code."""
        return np.stack([self.matrix(c) for c in range(4 * self.genus)])

    def check(self, max_len: int = 6) -> dict:
        """Verify the relator and hyperbolicity invariants; returns a summary."""
        from .surface import Presentation

        rel = evaluate(Presentation(self.genus).relator, self)
        rel_err = float(min(np.abs(rel.as_array() - np.eye(2)).max(), np.abs(rel.as_array() + np.eye(2)).max()))
        mats = self.letter_matrices
        n_letters = len(mats)
        layer = mats.copy()
        last = np.arange(n_letters)
        min_trace = float(np.abs(np.trace(layer, axis1=1, axis2=2)).min())
        count = n_letters
        for _ in range(max_len - 1):
            nxt, nlast = [], []
            for c in range(n_letters):
                keep = last != (c ^ 1)
                nxt.append(layer[keep] @ mats[c])
                nlast.append(np.full(int(keep.sum()), c))
            layer = np.concatenate(nxt)
            last = np.concatenate(nlast)
            count += len(layer)
            min_trace = min(min_trace, float(np.abs(np.trace(layer, axis1=1, axis2=2)).min()))
        return {
            "genus": self.genus,
            "relator_error": rel_err,
            "relator_ok": rel_err < self.tolerance,
            "words_checked": count,
            "max_len": max_len,
            "min_abs_trace": min_trace,
            "hyperbolic_ok": min_trace > 2 + self.tolerance,
        }


@lru_cache(maxsize=None)
def build_representation(genus: int, tolerance: float = DEFAULT_TOL) -> Representation:
    if genus < 2:
        raise ValueError(f"Fuchsian representation needs genus >= 2, got {genus}")
    images = tuple(MobiusMap.from_array(m) for m in _side_pairings(genus))
    rep = Representation(genus, images, tolerance)
    from .surface import Presentation

    if not evaluate(Presentation(genus).relator, rep).is_identity(tolerance):
        raise AssertionError("side pairings do not satisfy the surface relator")
    return rep


def evaluate(w: Word, R: Representation) -> MobiusMap:
    if w.genus != R.genus:
        raise ValueError(f"word of genus {w.genus} evaluated in genus {R.genus} representation")
    m = np.eye(2)
    for c in w.letters:
        m = m @ R.matrix(c)
    return MobiusMap.from_array(m)


def _fixed_point(m: np.ndarray, lam: float) -> float:
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    v1 = (b, lam - a)
    v2 = (lam - d, c)
    x, y = v1 if math.hypot(*v1) >= math.hypot(*v2) else v2
    if y == 0 or abs(y) < 1e-300:
        return math.inf
    return float(x / y)


def axis(m: MobiusMap, tol: float = DEFAULT_TOL) -> Geodesic:
    tr = m.trace
    if abs(tr) <= 2 + tol:
        raise NotHyperbolicError(f"|trace| = {abs(tr):.12g} is not > 2")
    arr = m.normalized().as_array()
    tr = abs(tr)
    root = math.sqrt(tr * tr - 4)
    big, small = (tr + root) / 2, (tr - root) / 2
    return Geodesic(
        repelling=_fixed_point(arr, small),
        attracting=_fixed_point(arr, big),
        translation_length=2 * math.acosh(tr / 2),
    )


def frame_matrix(g: Geodesic) -> np.ndarray:
    """SL(2,R) matrix sending ``g`` to the imaginary axis, oriented 0 -> inf,
    with the foot of the perpendicular from ``i`` sent to ``i``."""
    r, a = g.repelling, g.attracting
    if math.isinf(a):
        s = np.array([[1.0, -r], [0.0, 1.0]])
    elif math.isinf(r):
        s = np.array([[0.0, -1.0], [1.0, -a]])
    else:
        s = np.array([[1.0, -r], [1.0, -a]])
        if r - a < 0:
            s[0] *= -1
        s /= math.sqrt(abs(r - a))
    w = complex(s[0, 0] * 1j + s[0, 1]) / complex(s[1, 0] * 1j + s[1, 1])
    k = math.sqrt(abs(w))
    return np.diag([1 / k, k]) @ s


def _proj(m: np.ndarray, t: float) -> tuple[float, float]:
    if math.isinf(t):
        return m[0, 0], m[1, 0]
    return m[0, 0] * t + m[0, 1], m[1, 0] * t + m[1, 1]


def _angle(t: float) -> float:
    return math.pi if math.isinf(t) else 2 * math.atan(t)


def _circle_gap(x: float, y: float) -> float:
    d = abs(x - y) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def _moebius_apply(m: np.ndarray, t: float) -> float:
    num, den = _proj(m, t)
    if den == 0:
        return math.inf
    return float(num / den)


# fixed, reproducible "random" isometries used to re-test marginal predicates
_RETRY_ISOMETRIES = tuple(
    _rotation(phi) @ _translation(t) for phi, t in ((1.234, 0.37), (2.718, -0.61), (4.321, 0.93))
)


@dataclass(frozen=True)
class CrossResult:
    crosses: bool
    degenerate: bool = False
    margin: float = math.inf

    def __bool__(self) -> bool:
        return self.crosses


def _cross_once(g1: Geodesic, g2: Geodesic) -> tuple[bool, float]:
    a1, b1 = _angle(g1.repelling), _angle(g1.attracting)
    a2, b2 = _angle(g2.repelling), _angle(g2.attracting)
    margin = min(_circle_gap(p, q) for p in (a1, b1) for q in (a2, b2))
    lo, hi = sorted((a1, b1))
    inside = [lo < t < hi for t in (a2, b2)]
    return inside[0] != inside[1], margin


def axes_cross(g1: Geodesic, g2: Geodesic, tol: float = DEFAULT_TOL) -> CrossResult:
    """Do the two geodesics cross transversally?  Endpoint pairs within
    ``tol`` on the boundary circle count as coincident (no crossing, degenerate)."""
    crosses, margin = _cross_once(g1, g2)
    if margin >= 10 * tol:
        return CrossResult(crosses, False, margin)
    for iso in _RETRY_ISOMETRIES:
        h1 = Geodesic(_moebius_apply(iso, g1.repelling), _moebius_apply(iso, g1.attracting))
        h2 = Geodesic(_moebius_apply(iso, g2.repelling), _moebius_apply(iso, g2.attracting))
        crosses, margin = _cross_once(h1, h2)
        if margin >= 10 * tol:
            return CrossResult(crosses, False, margin)
    return CrossResult(False, True, margin)


def _in_frame(g1: Geodesic, g2: Geodesic) -> tuple[float, float]:
    s = frame_matrix(g1)
    u = _moebius_apply(s, g2.repelling)
    v = _moebius_apply(s, g2.attracting)
    return u, v


def crossing_sign(g1: Geodesic, g2: Geodesic) -> int:
    """+1 when ``g2`` crosses ``g1`` from the right of ``g1`` to its left.

    In the frame where ``g1`` runs up the imaginary axis this means ``g2``
    runs from the negative to the positive real half-line.
    """
    if not axes_cross(g1, g2):
        raise ValueError("crossing_sign called on geodesics that do not cross")
    u, v = _in_frame(g1, g2)
    return 1 if u < 0 < v else -1


def axis_position(g1: Geodesic, other: Geodesic) -> float:
    """Signed distance along ``g1``, from the foot of the perpendicular dropped
    from ``i``, to the point where ``other`` crosses it."""
    if not axes_cross(g1, other):
        raise ValueError("axis_position called on geodesics that do not cross")
    u, v = _in_frame(g1, other)
    return 0.5 * math.log(-u * v)
