"""
Embedded reference data and curve configuration.

Curve configs are JSON objects with decimal-string numerics, either
{"b": ..., "c": ...} or {"alpha": ..., "beta": ..., "gamma": ...}, plus an
optional "label". Built-in names resolve through the named curves of the
reference file.

Example:
    >>> load_curve_config("paper-sec6").curve.b
    Fraction(-171, 1)
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from divlab.arith.multiquad import Tower
from divlab.arith.polynomial import UniPoly
from divlab.curves.curve import Curve
from divlab.descent import LegendreCurve
from divlab.errors import ConfigError, MathDomainError

logger = logging.getLogger(__name__)

EXAMPLE_DATA_PATH = Path(__file__).resolve().parent / "data" / "pseudodivisible_example.json"
EXAMPLE_CURVE_NAME = "paper-sec6"

_SHORT_KEYS = {"b", "c"}
_LEGENDRE_KEYS = {"alpha", "beta", "gamma"}


@lru_cache(maxsize=1)
def load_example_data() -> Dict[str, Any]:
    with open(EXAMPLE_DATA_PATH, "r", encoding="utf-8") as f:
        data = json.load(f)
    data.pop("$comment", None)
    return data


def example_phi4() -> UniPoly:
    """The degree-16 preimage polynomial of the worked example, as listed."""
    return UniPoly(int(c) for c in reversed(load_example_data()["phi4_descending"]))


def example_point() -> Tuple[Fraction, Fraction]:
    x, y = load_example_data()["point"]
    return Fraction(x), Fraction(y)


def example_tower() -> Tower:
    return Tower(tuple(load_example_data()["tower"]))


def _terms(raw: List[List[str]]) -> List[Tuple[Fraction, Fraction]]:
    return [(Fraction(c), Fraction(d)) for c, d in raw]


def example_abscissas() -> List[List[Tuple[Fraction, Fraction]]]:
    return [_terms(t) for t in load_example_data()["abscissas"]]


def example_ordinates() -> List[List[Tuple[Fraction, Fraction]]]:
    return [_terms(t) for t in load_example_data()["ordinates"]]


def example_prime_lists() -> Tuple[List[int], List[int]]:
    data = load_example_data()
    return data["solvable_primes_below_1000"], data["unsolvable_primes_below_1000"]


@dataclass(frozen=True)
class CurveConfig:
    curve: Curve
    legendre: Optional[LegendreCurve] = None
    label: Optional[str] = None


def _exact(value: Any, key: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ConfigError(f"{key} must be a decimal string, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} is not an exact decimal: {value!r}")


def parse_curve_config(data: Dict[str, Any], allow_both: bool = False) -> CurveConfig:
    """Validate a curve config dict; exactly one of the two forms unless ``allow_both``."""
    if not isinstance(data, dict):
        raise ConfigError("curve config must be a JSON object")
    keys = set(data) - {"label", "$comment"}
    unknown = keys - _SHORT_KEYS - _LEGENDRE_KEYS
    if unknown:
        raise ConfigError(f"unknown curve config keys: {sorted(unknown)}")
    has_short = _SHORT_KEYS <= keys
    has_legendre = _LEGENDRE_KEYS <= keys
    if has_short == has_legendre and not (allow_both and has_short):
        raise ConfigError("curve config needs exactly one of {b, c} or {alpha, beta, gamma}")
    if (keys & _SHORT_KEYS and not has_short) or (keys & _LEGENDRE_KEYS and not has_legendre):
        raise ConfigError("curve config has an incomplete coefficient set")

    label = data.get("label")
    try:
        legendre = None
        if has_legendre:
            legendre = LegendreCurve(*(_exact(data[k], k) for k in ("alpha", "beta", "gamma")), label)
        if has_short:
            curve = Curve(_exact(data["b"], "b"), _exact(data["c"], "c"), label)
            if legendre is not None and legendre.short_form() != curve:
                raise ConfigError("Legendre and short forms describe different curves")
        else:
            curve = legendre.short_form()
    except MathDomainError as e:
        raise ConfigError(str(e))
    return CurveConfig(curve, legendre, label)


def named_curves() -> Dict[str, CurveConfig]:
    out = {}
    for name, values in load_example_data()["named_curves"].items():
        out[name] = parse_curve_config(dict(values, label=name), allow_both=True)
    return out


def load_curve_config(source: str) -> CurveConfig:
    """A built-in curve name or the path of a JSON curve config."""
    builtin = named_curves()
    if source in builtin:
        return builtin[source]
    path = Path(source)
    if not path.exists():
        raise ConfigError(f"unknown curve {source!r}: not a built-in name or an existing file")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in {path}: {e}")
    logger.debug(f"Loaded curve config from {path}")
    return parse_curve_config(data)
