"""Python access to the vcnorms core.

Points are sequences of coordinates given as ints, ``fractions.Fraction`` or ``"p/q"`` strings.
Results come back as plain dicts and lists with every exact scalar converted to ``Fraction``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import _vcnorms
from ._vcnorms import CarveMismatch, DomainError, InvariantError, RefusalError, cube_vc_dimension

__all__ = [
    "CarveMismatch",
    "DomainError",
    "InvariantError",
    "RefusalError",
    "attempt_shatter_four",
    "build_shatterable_set",
    "cube_vc_dimension",
    "demo_infinite_vc",
    "hull_witness",
    "is_shattered",
    "max_shattered_subset",
    "radon_partition",
    "sha256_hex",
]


def _scalar_text(x: Any) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, str):
        return x
    raise TypeError(f"unsupported coordinate type {type(x).__name__}; use int, Fraction or 'p/q'")


def _points_text(points: Iterable[Sequence[Any]]) -> str:
    return json.dumps([[_scalar_text(c) for c in p] for p in points])


def _exact(obj: Any) -> Any:
    """Turns every "p/q" string into a Fraction, recursively."""
    if isinstance(obj, str) and "/" in obj:
        num, _, den = obj.partition("/")
        if num.lstrip("-").isdigit() and den.isdigit():
            return Fraction(int(num), int(den))
        return obj
    if isinstance(obj, list):
        return [_exact(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _exact(v) for k, v in obj.items()}
    return obj


def build_shatterable_set(d: int) -> dict:
    return _exact(json.loads(_vcnorms.build_shatterable_set(d)))


def is_shattered(points: Iterable[Sequence[Any]]) -> dict:
    return _exact(json.loads(_vcnorms.is_shattered(_points_text(points))))


def max_shattered_subset(points: Iterable[Sequence[Any]], limit: int = 12) -> dict:
    return _exact(json.loads(_vcnorms.max_shattered_subset(_points_text(points), limit)))


def radon_partition(points: Iterable[Sequence[Any]]) -> dict:
    return _exact(json.loads(_vcnorms.radon_partition(_points_text(points))))


def hull_witness(points: Iterable[Sequence[Any]], lam: Any, r: Sequence[Any]) -> dict:
    r_text = json.dumps([_scalar_text(c) for c in r])
    return _exact(json.loads(_vcnorms.hull_witness(_points_text(points), _scalar_text(lam), r_text)))


def attempt_shatter_four(
    generator: Iterable[Sequence[Any]], points: Iterable[Sequence[Any]], budget: int = 1000, seed: int = 1
) -> list:
    return _exact(json.loads(_vcnorms.attempt_shatter_four(_points_text(generator), _points_text(points), budget, seed)))


def demo_infinite_vc(n: int, margin: Any = None, max_n: int = 5) -> dict:
    m = None if margin is None else _scalar_text(margin)
    return _exact(json.loads(_vcnorms.demo_infinite_vc(n, m, max_n)))


def sha256_hex(data: str | bytes) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return _vcnorms.sha256_hex(data)
