"""Command line driver.

Verbs: expand, verify, table1, congruence, misc, basis, lift, unlift, reduce.
Exit codes: 0 all checks pass, 1 a mathematical counterexample was found,
2 usage or parse error, 3 precision shortfall.
"""

from __future__ import annotations

import argparse
import json
import sys

from .series import PrecisionError, QSeries, SeriesError, UsageError
from .cache import ENV_VAR, SeriesCache
from .exprs import evaluate, normalize
from .halfint import named_plus_form, plus_basis
from .lifts import phi, psi
from .quasi import (
    parse_element,
    reduce_weight4,
    reduce_weight6,
    verify_certificate,
)
from .reports import VerificationReport
from .verify import verify_congruence, verify_misc, verify_table1, verify_theorem

EXIT_PASS = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

_PLUS_NAMES = {"g0", "g1", "g2", "h0", "f4a", "f4b", "f6half"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magforms",
        description="exact q-expansion computations and integrality verification",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON reports")
    common.add_argument("--no-cache", action="store_true", help="bypass the disk cache")
    common.add_argument(
        "--cache-dir",
        default=None,
        help=f"cache directory (default: ${ENV_VAR} or ~/.cache/magforms)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("expand", help="expand an expression to a q-series")
    p.add_argument("expression")
    p.add_argument("--prec", type=int, default=None)
    p.add_argument("--out", default=None, help="write canonical JSON to a file")

    p = add_parser("verify", help="run a theorem verification")
    p.add_argument("which", choices=["th1", "th2", "w4", "w6", "th:w4", "th:w6"])
    p.add_argument("--prec", type=int, default=1000)

    p = add_parser("table1", help="verify the weight-4 lift table")
    p.add_argument("--rows", default=None, help="comma separated row ids")
    p.add_argument("--coeffs", type=int, default=60)
    p.add_argument("--magnetic-prec", type=int, default=500)
    p.add_argument("--extended", action="store_true", help="include the deep-pole rows")

    p = add_parser("congruence", help="divisibility and magnetic checks")
    p.add_argument("form", help="a named form or a cuspidal expression")
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--power", type=int, default=1, choices=[1, 2])
    p.add_argument("--order", type=int, default=1, help="antiderivative order")
    p.add_argument("--prec", type=int, default=1000)

    p = add_parser("misc", help="raising relations, ODE checks, exponent families")
    p.add_argument("--prec", type=int, default=800)
    p.add_argument("--family-prec", type=int, default=1000)

    p = add_parser("basis", help="compute a plus-space basis element")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prec", type=int, default=100)
    p.add_argument("--out", default=None)

    p = add_parser("lift", help="apply the half-integral to integral weight lift")
    p.add_argument("source", help="plus form name, basis:k=..,m=.., or JSON file")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--prec", type=int, default=3600, help="input window for the lift")
    p.add_argument("--out", default=None)

    p = add_parser("unlift", help="apply the reverse map")
    p.add_argument("source", help="expression or JSON file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--prec", type=int, default=100)
    p.add_argument("--out", default=None)

    p = add_parser("reduce", help="reduce a weight 4 or 6 element to generators")
    p.add_argument("element", help="e.g. '3/2*f(1,-1,1) - f(0,1,0)'")
    p.add_argument("--prec", type=int, default=300)
    return parser


def _emit_series(series: QSeries, args) -> None:
    text = series.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def _emit_report(report: VerificationReport, args) -> int:
    print(report.to_json() if args.json else report.render_text())
    return EXIT_PASS if report.verdict == "PASS" else EXIT_COUNTEREXAMPLE


def _load_source_series(source: str, k: int | None, prec: int, args):
    """Resolve a lift/unlift source: plus-form name, basis element, file."""
    if source in _PLUS_NAMES:
        form = named_plus_form(source, prec)
        return form.series, (form.k if k is None else k)
    if source.startswith("basis:"):
        series = evaluate(source, prec)
        if k is None:
            raise UsageError("basis elements need --k for the lift weight")
        return series, k
    try:
        fh = open(source, "r", encoding="utf-8")
    except OSError:
        series = evaluate(source, prec)
        if k is None:
            raise UsageError(f"source {source!r} needs an explicit --k") from None
        return series, k
    with fh:
        try:
            data = json.load(fh)
            meta_k = data.get("k") if isinstance(data, dict) else None
            series_dict = data.get("series", data) if isinstance(data, dict) else data
            series = QSeries.from_json_dict(series_dict)
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"malformed series file {source!r}: {exc}") from None
    use_k = k if k is not None else meta_k
    if use_k is None:
        raise UsageError("JSON input needs --k or an embedded k field")
    return series, int(use_k)


def _cmd_expand(args) -> int:
    prec = 50 if args.prec is None else args.prec
    cache = SeriesCache(args.cache_dir, enabled=not args.no_cache)
    key = cache.key(f"expand/1|{normalize(args.expression)}|{prec}|{args.prec is None}")
    hit = cache.get(key)
    if hit is not None:
        series = QSeries.from_json_dict(hit)
    else:
        series = evaluate(args.expression, prec, trim=args.prec is None)
        cache.put(key, series.to_json_dict())
    _emit_series(series, args)
    return EXIT_PASS


def _cmd_basis(args) -> int:
    basis = plus_basis(args.k, [args.m], args.prec)
    form = basis[args.m]
    payload = {
        "k": args.k,
        "m": args.m,
        "pool_s_max": basis.pool_s_max,
        "series": form.series.to_json_dict(),
    }
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_PASS


def _cmd_lift(args) -> int:
    series, k = _load_source_series(args.source, args.k, args.prec, args)
    _emit_series(psi(series, k), args)
    return EXIT_PASS


def _cmd_unlift(args) -> int:
    try:
        fh = open(args.source, "r", encoding="utf-8")
    except OSError:
        series = evaluate(args.source, args.prec)
    else:
        with fh:
            try:
                data = json.load(fh)
                series_dict = data.get("series", data) if isinstance(data, dict) else data
                series = QSeries.from_json_dict(series_dict)
            except (ValueError, KeyError, TypeError) as exc:
                raise UsageError(
                    f"malformed series file {args.source!r}: {exc}"
                ) from None
    out = phi(series, args.k)
    _emit_series(out, args)
    return EXIT_PASS


def _cmd_reduce(args) -> int:
    element = parse_element(args.element)
    if element.is_zero():
        raise UsageError("nothing to reduce: the element is zero")
    if element.weight == 4:
        cert = reduce_weight4(element)
    elif element.weight == 6:
        cert = reduce_weight6(element)
    else:
        raise UsageError(f"no reduction algorithm for weight {element.weight}")
    ok = verify_certificate(cert, args.prec)
    payload = {
        "input": str(element),
        "weight": cert.weight,
        "mu": str(cert.mu),
        "generators": {name: str(val) for name, val in sorted(cert.gens.items())},
        "delta_part": str(cert.delta_part),
        "verified_at_prec": args.prec,
        "verified": ok,
    }
    print(json.dumps(payload, sort_keys=True, indent=2))
    return EXIT_PASS if ok else EXIT_COUNTEREXAMPLE


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "expand":
            return _cmd_expand(args)
        if args.command == "verify":
            return _emit_report(verify_theorem(args.which, args.prec), args)
        if args.command == "table1":
            rows = None
            if args.rows:
                rows = [int(r) for r in args.rows.split(",") if r.strip()]
            return _emit_report(
                verify_table1(
                    rows,
                    lift_coeffs=args.coeffs,
                    magnetic_prec=args.magnetic_prec,
                    extended=args.extended,
                ),
                args,
            )
        if args.command == "congruence":
            from .verify import _HALF_INTEGRAL, _INTEGRAL_FORMS, verify_magnetic_expression

            if args.form in _INTEGRAL_FORMS or args.form in _HALF_INTEGRAL:
                if args.prime is None:
                    raise UsageError("named-form congruences need --prime")
                rep = verify_congruence(
                    args.form, args.prime, args.n, args.power, args.prec
                )
            else:
                rep = verify_magnetic_expression(
                    args.form, args.prec, args.order, args.prime
                )
            return _emit_report(rep, args)
        if args.command == "misc":
            return _emit_report(verify_misc(args.prec, args.family_prec), args)
        if args.command == "basis":
            return _cmd_basis(args)
        if args.command == "lift":
            return _cmd_lift(args)
        if args.command == "unlift":
            return _cmd_unlift(args)
        if args.command == "reduce":
            return _cmd_reduce(args)
        raise UsageError(f"unknown command {args.command!r}")
    except PrecisionError as exc:
        print(f"precision error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (UsageError, SeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
