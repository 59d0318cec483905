"""
divlab command line.

    python -m divlab [--out PATH] [--format json|csv] [--cap N] [--config PATH] COMMAND ...

Every command writes one canonical document: JSON with sorted-by-construction
fields, integers and rationals as decimal strings and floats with 12
significant digits, or CSV where the command has a table (sweep). Exit codes:
0 success, 2 usage/config, 3 domain error or cap exceeded, 4 failed precondition.
"""

import json
import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple

import pandas as pd
import typer

from divlab import __version__
from divlab.arith.matmod import Mat2Mod
from divlab.arith.multiquad import Tower
from divlab.arith.polynomial import UniPoly, poly_discriminant
from divlab.bounds import bound_pipeline, schmidt_discriminant
from divlab.config import DivLabConfig, load_config
from divlab.curves.division_poly import division_poly, preimage_poly, schmidt_poly
from divlab.descent import (
    conjugate_point,
    four_torsion_generators,
    lift_quartic_point,
    point_add,
    point_mul,
    point_sub,
    quartic_model,
    radical_flip,
    search_quartic_points,
)
from divlab.errors import ConfigError, DivLabError, MathDomainError, exit_code_for
from divlab.galois.cohomology import h1_and_h1loc, local_condition_check, parse_cocycle_spec
from divlab.galois.groups import (
    find_thm22_counterexample,
    parse_group_spec,
    verify_fixed_abscissa_core,
)
from divlab.heights import (
    check_min_poly_bound,
    log_height_multiquad,
    log_height_point,
    log_height_poly,
    log_height_rational,
)
from divlab.ledger import ledger_passed, run_example_ledger
from divlab.padic import Mode, local_divisibility_verdict, sweep
from divlab.reference import CurveConfig, load_curve_config

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

app = typer.Typer(
    name="divlab",
    help="Local-global divisibility laboratory for elliptic curves over Q.",
    add_completion=False,
    no_args_is_help=True,
)


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


@dataclass
class _State:
    out: Optional[Path]
    fmt: OutputFormat
    config: DivLabConfig


def _state(ctx: typer.Context) -> _State:
    return ctx.obj


@contextmanager
def _guard() -> Iterator[None]:
    """Map library errors to exit codes; anything else is a bug and propagates."""
    try:
        yield
    except DivLabError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(exit_code_for(e))
    except typer.Exit:
        raise
    except Exception:
        logger.exception("Unexpected failure")
        raise


# --- canonical output ---------------------------------------------------------

def _canonical(value: Any, digits: int) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, float):
        return float(format(value, f".{digits}g"))
    if isinstance(value, Mat2Mod):
        return [[str(v) for v in row] for row in value.signed_rows()]
    if isinstance(value, dict):
        return {str(k): _canonical(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_canonical(v, digits) for v in value]
    return str(value)


def _emit(state: _State, payload: Dict[str, Any], table: Optional[pd.DataFrame] = None) -> None:
    if state.fmt is OutputFormat.CSV:
        if table is None:
            raise ConfigError("this command has no CSV form; use --format json")
        text = table.to_csv(index=False, lineterminator="\n")
    else:
        text = json.dumps(_canonical(payload, state.config.float_digits),
                          indent=2, ensure_ascii=False) + "\n"
    if state.out is None:
        typer.echo(text, nl=False)
    else:
        state.out.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {state.out}")


# --- argument parsing -----------------------------------------------------------

def _rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{what} must be an exact rational, got {text!r}")


def _rationals(text: str, what: str) -> List[Fraction]:
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise ConfigError(f"{what} is empty")
    return [_rational(s, what) for s in items]


def _point(text: str) -> Tuple[Fraction, Fraction]:
    values = _rationals(text, "point")
    if len(values) != 2:
        raise ConfigError(f"point must be x,y, got {text!r}")
    return values[0], values[1]


def _terms(text: str) -> List[Tuple[Fraction, Fraction]]:
    """'c:d;c:d' for Σ c·√d; a bare 'c' is a rational term."""
    terms = []
    for item in text.split(";"):
        if not item.strip():
            continue
        coeff, _, rad = item.partition(":")
        terms.append((_rational(coeff, "term coefficient"),
                      _rational(rad, "radicand") if rad else Fraction(1)))
    if not terms:
        raise ConfigError("tower expression is empty")
    return terms


def _curve(source: str) -> CurveConfig:
    return load_curve_config(source)


def _require_m(m: int) -> None:
    if m < 3:
        raise ConfigError("m ≥ 3 required")


CURVE_HELP = "Built-in curve name or JSON curve config path"


# --- commands -----------------------------------------------------------------

@app.callback()
def main(
    ctx: typer.Context,
    out: Optional[Path] = typer.Option(None, "--out", help="Write the report here instead of stdout"),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="json or csv"),
    cap: Optional[int] = typer.Option(None, "--cap", help="Override every enumeration cap"),
    config_path: Optional[Path] = typer.Option(None, "--config", help="JSON config file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at INFO level"),
):
    """Global options shared by every command."""
    with _guard():
        config = load_config(config_path).with_cap(cap)
        config.validate()
    level = "INFO" if verbose else config.log_level.upper()
    logging.basicConfig(level=getattr(logging, level), format=LOG_FORMAT, stream=sys.stderr)
    ctx.obj = _State(out, fmt, config)


@app.command()
def version():
    """Print the package version."""
    typer.echo(__version__)


@app.command()
def divpoly(
    ctx: typer.Context,
    curve: str = typer.Option("paper-sec6", help=CURVE_HELP),
    m: int = typer.Option(..., "--m", help="Multiplier"),
    preimage_x: Optional[str] = typer.Option(None, "--preimage-x",
                                             help="Abscissa of P: print the m-division preimage polynomial"),
):
    """Division polynomial Ψ_m, or the preimage polynomial of x_P."""
    state = _state(ctx)
    with _guard():
        cc = _curve(curve)
        if preimage_x is None:
            poly = division_poly(cc.curve, m).poly
            kind = "division"
        else:
            poly = preimage_poly(cc.curve, m, _rational(preimage_x, "preimage-x"))
            kind = "preimage"
        _emit(state, {
            "curve": cc.label or str(cc.curve),
            "kind": kind,
            "m": m,
            "degree": poly.degree,
            "coefficients": list(poly.coefficients),
        })


@app.command()
def bound(
    ctx: typer.Context,
    curve: str = typer.Option("paper-sec6", help=CURVE_HELP),
    m: int = typer.Option(..., "--m"),
    group_order: Optional[int] = typer.Option(None, "--group-order",
                                              help="|G| for the density threshold 1/|G|"),
):
    """Discriminant bound pipeline, B(m, b, c) and the prime budget."""
    state = _state(ctx)
    with _guard():
        _require_m(m)
        cc = _curve(curve)
        report = bound_pipeline(cc.curve, m, group_order)
        payload = report.to_dict(state.config.float_digits)
        payload["chain_holds"] = report.chain_holds()
        if group_order is not None:
            payload["note"] = (f"a sweep whose unsolvable density exceeds 1/{group_order} "
                               f"rules out pseudodivisibility of degree {group_order}")
        _emit(state, payload)


@app.command()
def schmidt(
    ctx: typer.Context,
    curve: str = typer.Option("paper-sec6", help=CURVE_HELP),
    m: int = typer.Option(..., "--m"),
):
    """Closed-form discriminant against the resultant computation."""
    state = _state(ctx)
    with _guard():
        _require_m(m)
        cc = _curve(curve)
        formula = schmidt_discriminant(cc.curve, m)
        computed = poly_discriminant(schmidt_poly(cc.curve, m))
        _emit(state, {"m": m, "formula": formula, "resultant": computed,
                      "match": formula == computed})


@app.command()
def height(
    ctx: typer.Context,
    rational: Optional[str] = typer.Option(None, "--rational", help="e.g. -171/4"),
    poly: Optional[str] = typer.Option(None, "--poly", help="Ascending coefficients a0,a1,..."),
    terms: Optional[str] = typer.Option(None, "--terms", help="Tower element 'c:d;c:d' = Σ c·√d"),
    point: Optional[str] = typer.Option(None, "--point", help="Projective point x0,x1,..."),
):
    """Logarithmic Weil height of a rational, polynomial, tower element or point."""
    state = _state(ctx)
    with _guard():
        given = [k for k, v in (("rational", rational), ("poly", poly),
                                ("terms", terms), ("point", point)) if v is not None]
        if len(given) != 1:
            raise ConfigError("give exactly one of --rational, --poly, --terms, --point")
        payload: Dict[str, Any] = {"kind": given[0]}
        if rational is not None:
            payload["log_height"] = log_height_rational(_rational(rational, "rational"))
        elif poly is not None:
            payload["log_height"] = log_height_poly(UniPoly(_rationals(poly, "poly")))
        elif point is not None:
            payload["log_height"] = log_height_point(_rationals(point, "point"))
        else:
            parsed = _terms(terms)
            tower = Tower.covering([d for _, d in parsed])
            x = tower.from_terms(parsed)
            payload["element"] = str(x)
            payload["tower"] = list(tower.radicands)
            payload["log_height"] = log_height_multiquad(x)
            if not x.is_rational():
                check = check_min_poly_bound(x)
                payload["minimal_polynomial"] = list(x.minimal_polynomial().coefficients)
                payload["min_poly_log_height"] = check.h_falpha
                payload["min_poly_bound_holds"] = check.holds
        _emit(state, payload)


@app.command("local-test")
def local_test(
    ctx: typer.Context,
    curve: str = typer.Option("paper-sec6", help=CURVE_HELP),
    point: str = typer.Option("10,10", help="Rational point x,y on the curve"),
    m: int = typer.Option(4, "--m"),
    p: int = typer.Option(..., "--p", help="Prime"),
    mode: Mode = typer.Option(Mode.ABSCISSA, help="abscissa or full"),
):
    """Is P ∈ m·E(Q_p)? One prime."""
    state = _state(ctx)
    with _guard():
        cc = _curve(curve)
        P = _point(point)
        ok, cert = local_divisibility_verdict(cc.curve, P, m, p, mode,
                                              state.config.precision_cap)
        _emit(state, {"prime": p, "m": m, "mode": mode, "point": list(P),
                      "solvable": ok, "certificate": cert})


@app.command("sweep")
def sweep_cmd(
    ctx: typer.Context,
    curve: str = typer.Option("paper-sec6", help=CURVE_HELP),
    point: str = typer.Option("10,10", help="Rational point x,y on the curve"),
    m: int = typer.Option(4, "--m"),
    limit: int = typer.Option(1000, "--limit"),
    mode: Mode = typer.Option(Mode.ABSCISSA, help="abscissa or full"),
    group_order: Optional[int] = typer.Option(None, "--group-order"),
):
    """Local divisibility at every prime up to --limit."""
    state = _state(ctx)
    with _guard():
        cc = _curve(curve)
        report = sweep(cc.curve, _point(point), m, limit, mode, group_order, state.config)
        _emit(state, report.to_dict(state.config.float_digits), report.to_frame())
        # stdout carries the report itself unless --out redirects it
        typer.echo(report.summary_line(), err=state.out is None)


@app.command()
def cocycle(
    ctx: typer.Context,
    group: str = typer.Option("paper-sec6", help="paper-sec6 | cyclic:eta:N | cyclic:omega:N | gens:N:a,b,c,d;..."),
    cocycle_spec: str = typer.Option("2w,0", "--cocycle",
                                     help="Linear form in x,y,z,w (paper-sec6) or generator values 'a,b;a,b'"),
):
    """Elements where a cocycle fails the local conditions."""
    state = _state(ctx)
    with _guard():
        G = parse_group_spec(group, state.config)
        z = parse_cocycle_spec(cocycle_spec, G, group)
        failing = sorted(local_condition_check(z))
        _emit(state, {
            "group": group,
            "group_order": G.order,
            "cocycle": cocycle_spec,
            "failing_count": len(failing),
            "failing": failing,
        })


@app.command()
def h1loc(
    ctx: typer.Context,
    group: str = typer.Option("paper-sec6", help="Group spec, as for cocycle"),
):
    """H¹(G, (Z/n)²) and its locally trivial part, by enumeration."""
    state = _state(ctx)
    with _guard():
        G = parse_group_spec(group, state.config)
        report = h1_and_h1loc(G, state.config)
        payload = report.to_dict()
        payload["group"] = group
        payload["h1_order"] = report.h1_order
        payload["h1loc_order"] = report.h1loc_order
        _emit(state, payload)


@app.command("galois-verify")
def galois_verify(
    ctx: typer.Context,
    p: int = typer.Option(..., "--p"),
    r: int = typer.Option(..., "--r"),
):
    """Exhaustive stabilizer checks in GL₂(Z/pʳ)."""
    state = _state(ctx)
    with _guard():
        witness = find_thm22_counterexample(p, r, state.config.thm22_cap)
        _emit(state, {
            "p": p,
            "r": r,
            "thm22_core": witness is None,
            "witness": witness,
            "fixed_abscissa_core": verify_fixed_abscissa_core(p, r, state.config.thm22_cap),
        })


@app.command()
def descent(
    ctx: typer.Context,
    curve: str = typer.Option("paper-sec6", help="Curve with a Legendre form"),
    s: str = typer.Option("4", help="s-coordinate of a quartic point"),
    t: str = typer.Option("1", help="t-coordinate of a quartic point"),
    search: int = typer.Option(0, help="Also list integer quartic points with |t| ≤ N"),
):
    """Quartic model, lift to Q(√δ), [4]D, conjugate difference and the 4-torsion halves."""
    state = _state(ctx)
    with _guard():
        cc = _curve(curve)
        if cc.legendre is None:
            raise ConfigError("descent needs a curve given in Legendre form")
        E = cc.legendre
        q = quartic_model(E)
        D = lift_quartic_point(q, _rational(s, "s"), _rational(t, "t"), E)
        image = point_mul(D, 4)
        diff = point_sub(conjugate_point(D, radical_flip(D.tower, q.delta)), D)
        A, B = four_torsion_generators(E)
        payload: Dict[str, Any] = {
            "curve": [E.alpha, E.beta, E.gamma],
            "quartic": {"delta": q.delta, "A": q.A, "B": q.B, "C": q.C, "text": str(q)},
            "lift": D.to_dict(),
            "four_times": image.to_dict(),
            "conjugate_difference": diff.to_dict(),
            "four_torsion": {
                "A": A.to_dict(), "double_A": point_add(A, A).to_dict(),
                "B": B.to_dict(), "double_B": point_add(B, B).to_dict(),
            },
        }
        if search:
            payload["quartic_points"] = [[sv, tv] for sv, tv in search_quartic_points(q, search)]
        _emit(state, payload)


@app.command("paper-example")
def paper_example(
    ctx: typer.Context,
    limit: int = typer.Option(1000, "--limit", help="Sweep limit; below 1000 the sweep is PARTIAL"),
    b: Optional[str] = typer.Option(None, "--b", help="Replace the curve coefficient b"),
):
    """Run the worked pseudodivisible example end to end."""
    state = _state(ctx)
    with _guard():
        override = _rational(b, "b") if b is not None else None
        try:
            results = run_example_ledger(limit, override, state.config)
        except MathDomainError as e:
            raise ConfigError(str(e))
    for result in results:
        typer.echo(result.line())
    if not ledger_passed(results):
        typer.echo(f"failed at check {results[-1].name}", err=True)
        raise typer.Exit(1)


def run() -> None:
    app()


if __name__ == "__main__":
    run()
