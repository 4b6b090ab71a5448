"""Rank-one convex, lamination and polyconvex hulls of small 2x2 matrix sets.

Matrices are nested 2x2 lists. Entries may be ``int``, ``Fraction``,
``float`` or ``"p/q"`` strings. Exact results come back as ``Fraction``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import _rohull
from ._rohull import RoHullError, UsageError

__all__ = [
    "RoHullError",
    "UsageError",
    "caratheodory",
    "commands",
    "l2_contains",
    "pc_contains",
    "pc_hull",
    "rank_one_connected",
    "run",
    "to_fraction",
]

Matrix = Sequence[Sequence[Any]]


def _encode(value: Any) -> Any:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _dump(value: Any) -> str:
    return json.dumps(_encode(value))


def to_fraction(text: Any) -> Any:
    """Turns report scalars ("p/q" strings) into Fractions, recursively."""
    if isinstance(text, str):
        try:
            return Fraction(text)
        except ValueError:
            return text
    if isinstance(text, list):
        return [to_fraction(v) for v in text]
    if isinstance(text, dict):
        return {k: to_fraction(v) for k, v in text.items()}
    return text


def commands() -> list[str]:
    return list(_rohull.commands())


def run(command: str, **options: Any) -> dict:
    """Runs a report command (``"five-point"``, ``"pc-hull"``, ...).

    Keyword options mirror the command-line flags, with ``input`` taking the
    parsed JSON document instead of a path.
    """
    for key in ("epsilon", "xi3"):
        if key in options and not isinstance(options[key], str):
            value = options[key]
            options[key] = str(value) if isinstance(value, float) else _encode(Fraction(value))
    opts = {k: v for k, v in options.items() if k != "input"}
    if "input" in options:
        opts["input"] = _encode(options["input"])
    return json.loads(_rohull.run(command, json.dumps(opts)))


def l2_contains(k: Sequence[Matrix], x: Matrix, mode: str = "exact", tol: float = 1e-9) -> bool:
    return _rohull.l2_contains(_dump(list(k)), _dump(x), mode, tol)


def pc_hull(k: Sequence[Matrix], mode: str = "exact", tol: float = 1e-9) -> dict:
    return json.loads(_rohull.pc_hull(_dump(list(k)), mode, tol))


def pc_contains(k: Sequence[Matrix], x: Matrix, mode: str = "exact", tol: float = 1e-9) -> bool:
    return _rohull.pc_contains(_dump(list(k)), _dump(x), mode, tol)


def rank_one_connected(a: Matrix, b: Matrix, mode: str = "exact", tol: float = 1e-9) -> bool:
    return _rohull.rank_one_connected(_dump(a), _dump(b), mode, tol)


def caratheodory(k: Sequence[Matrix], x: Matrix, mode: str = "exact") -> Optional[dict]:
    out = _rohull.caratheodory(_dump(list(k)), _dump(x), mode)
    return None if out is None else json.loads(out)
