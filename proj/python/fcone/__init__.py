"""Exact divisor-class computations on moduli of pointed rational curves and
of pointed degree-one maps to the projective line.

Rationals are returned as ``fractions.Fraction``; inputs accept ``Fraction``,
``int`` or ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable, Mapping

from . import _fcone

__all__ = [
    "verify_witness",
    "search_witness",
    "generate_constraints",
    "f_positivity",
    "pullback_alpha",
    "pullback_beta",
    "chs_ample",
    "solve_feasibility",
    "phi_divisor_map",
    "four_partition_count",
    "run_cli",
]

_RATIONAL_KEYS = {"f_min", "f_max", "beta_degree", "min", "max", "value", "constant", "lambda"}
_RATIONAL_MAPS = {"combo", "point", "coefficients", "psi", "delta", "L", "B", "beta"}


def _text(q: Fraction | int | str) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _decode(obj: Any, key: str | None = None) -> Any:
    if isinstance(obj, dict):
        if key in _RATIONAL_MAPS and all(isinstance(v, str) for v in obj.values()):
            return {k: Fraction(v) for k, v in obj.items()}
        return {k: _decode(v, k) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(v, key) for v in obj]
    if isinstance(obj, str) and key in _RATIONAL_KEYS:
        return Fraction(obj)
    return obj


def _load(text: str) -> Any:
    return _decode(json.loads(text))


def _combo_spec(a: Mapping[int, Fraction | int | str] | str) -> str:
    if isinstance(a, str):
        return a
    return ",".join(f"a{s}={_text(q)}" for s, q in sorted(a.items()))


def _divisor_json(divisor: Mapping[str, Any] | str) -> str:
    if isinstance(divisor, str):
        return divisor

    def encode(v: Any) -> Any:
        if isinstance(v, dict):
            return {str(k): encode(x) for k, x in v.items()}
        if isinstance(v, (Fraction, int)) and not isinstance(v, bool):
            return _text(v)
        return v

    return json.dumps({k: (v if k in ("m", "n", "K") else encode(v)) for k, v in divisor.items()})


def verify_witness(n: int, a: Mapping[int, Fraction | int | str] | str, threads: int = 0) -> dict:
    """Full anti-ampleness check of K_n + sum a_s B[s]."""
    return _load(_fcone.verify_witness(n, _combo_spec(a), threads))


def search_witness(n: int, bounds: str = "", unit_box: bool = False, threads: int = 0) -> dict:
    """Decide the reduced constraint system; bounds like ``"a4>=0,a6<=1"``."""
    return _load(_fcone.search_witness(n, bounds, unit_box, threads))


def generate_constraints(n: int, reduced: bool = True) -> list[dict]:
    return _load(_fcone.generate_constraints(n, reduced))


def f_positivity(divisor: Mapping[str, Any] | str, sense: str = "positive", strict: bool = True,
                 all_violations: bool = False, threads: int = 0) -> dict:
    """F-curve test of a divisor given as ``{"m":..., "psi":{...}, "delta":{...}}``."""
    return _load(_fcone.f_positivity(_divisor_json(divisor), sense, strict, all_violations, threads))


def pullback_alpha(divisor: Mapping[str, Any] | str) -> dict:
    return _load(_fcone.pullback_alpha(_divisor_json(divisor)))


def pullback_beta(divisor: Mapping[str, Any] | str) -> dict[int, Fraction]:
    return {int(i): Fraction(d) for i, d in json.loads(_fcone.pullback_beta(_divisor_json(divisor))).items()}


def chs_ample(divisor: Mapping[str, Any] | str, anti: bool = False) -> dict:
    return _load(_fcone.chs_ample(_divisor_json(divisor), anti))


def solve_feasibility(forms: Iterable[Mapping[str, Any]], bounds: str = "") -> dict:
    """Forms as ``{"constant": q, "coefficients": {s: q}, "relation": "<0" | "<=0"}``."""
    encoded = [
        {
            "constant": _text(f.get("constant", 0)),
            "coefficients": {str(k): _text(v) for k, v in f.get("coefficients", {}).items()},
            "relation": f.get("relation", "<0"),
        }
        for f in forms
    ]
    return _load(_fcone.solve_feasibility(json.dumps(encoded), bounds))


def phi_divisor_map(n: int) -> dict:
    return json.loads(_fcone.phi_divisor_map(n))


def four_partition_count(m: int) -> int:
    return _fcone.four_partition_count(m)


def run_cli(*args: str) -> tuple[int, str, str]:
    """Run the command-line tool in process; returns (exit code, stdout, stderr)."""
    return _fcone.run_cli(list(args))
