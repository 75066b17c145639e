"""JSON encodings of formal sums and BV elements.

Coefficients are exact rationals written as ``"p/q"`` (always with a
denominator).  Classes are written as canonical words, the trivial class as
``""`` and torus classes as ``"(p,q)"``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .bv import BVElement
from .goldman import FormalSum
from .surface import H1Class, LoopClass, trivial_class

__all__ = [
    "SchemaError",
    "fraction_to_str",
    "fraction_from_str",
    "sum_to_json",
    "sum_from_json",
    "element_to_json",
    "element_from_json",
    "dumps",
    "load_element",
]


class SchemaError(ValueError):
    pass


def fraction_to_str(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def fraction_from_str(s: Any) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError(f"coefficient must be a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {s!r}: {exc}") from None


def _class_from_str(text: str, genus: int) -> LoopClass:
    if not isinstance(text, str):
        raise SchemaError(f"class must be a string, got {text!r}")
    if not text.strip():
        return trivial_class(genus)
    try:
        return LoopClass.parse(text, genus)
    except ValueError as exc:
        raise SchemaError(f"bad class {text!r}: {exc}") from None


def sum_to_json(s: FormalSum) -> dict:
    return {
        "genus": s.genus,
        "terms": [{"coeff": fraction_to_str(v), "class": str(c)} for c, v in s.items()],
    }


def _genus_of(obj: dict, expected: int | None) -> int:
    g = obj.get("genus")
    if not isinstance(g, int) or isinstance(g, bool) or g < 1:
        raise SchemaError(f"genus must be a positive integer, got {g!r}")
    if expected is not None and g != expected:
        raise SchemaError(f"genus {g} where {expected} was expected")
    return g


def sum_from_json(obj: Any, genus: int | None = None) -> FormalSum:
    if not isinstance(obj, dict):
        raise SchemaError("formal sum must be a JSON object")
    g = _genus_of(obj, genus)
    terms = obj.get("terms")
    if not isinstance(terms, list):
        raise SchemaError("formal sum needs a 'terms' list")
    out = []
    for t in terms:
        if not isinstance(t, dict) or "coeff" not in t or "class" not in t:
            raise SchemaError(f"bad term {t!r}")
        out.append((_class_from_str(t["class"], g), fraction_from_str(t["coeff"])))
    return FormalSum(g, out)


def element_to_json(x: BVElement) -> dict:
    return {
        "genus": x.genus,
        "h0": fraction_to_str(x.h0),
        "h1": {
            "alpha": [fraction_to_str(c) for c in x.h1_alpha.coords],
            "loops": sum_to_json(x.h1_loops),
        },
        "h2": sum_to_json(x.h2),
    }


def element_from_json(obj: Any, genus: int | None = None) -> BVElement:
    """Decode a BV element.  Missing graded pieces default to zero."""
    if not isinstance(obj, dict):
        raise SchemaError("BV element must be a JSON object")
    g = _genus_of(obj, genus)
    h0 = fraction_from_str(obj.get("h0", "0"))
    h1 = obj.get("h1", {})
    if not isinstance(h1, dict):
        raise SchemaError("'h1' must be an object")
    alpha_raw = h1.get("alpha", ["0"] * (2 * g))
    if not isinstance(alpha_raw, list) or len(alpha_raw) != 2 * g:
        raise SchemaError(f"'alpha' must list {2 * g} rationals")
    alpha = H1Class(tuple(fraction_from_str(c) for c in alpha_raw))
    loops = sum_from_json(h1["loops"], g) if "loops" in h1 else FormalSum.zero(g)
    if loops.trivial_coefficient():
        raise SchemaError("HH^1 loop part must have zero coefficient on the trivial class")
    h2 = sum_from_json(obj["h2"], g) if "h2" in obj else FormalSum.zero(g)
    return BVElement(g, h0, alpha, loops, h2)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def load_element(path: str, genus: int | None = None) -> BVElement:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    return element_from_json(obj, genus)
