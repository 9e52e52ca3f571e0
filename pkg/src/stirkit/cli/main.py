"""Command-line entry point: ``stirkit <subcommand> ...``.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error,
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from stirkit import analysis, oracles, stirling_poly
from stirkit.cli import expr as exprlang
from stirkit.cli.verify import SUITES, run_suite
from stirkit.errors import CapExceeded, StirkitError
from stirkit.numbers import table_window

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


# -- value formatting ------------------------------------------------------------


def _exact_text(v) -> str:
    if isinstance(v, float):
        return "%.17g" % v
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _dumps(obj) -> str:
    """JSON with exact numbers as strings and reals as 17-significant-digit numbers."""
    reals = {}

    def conv(v):
        if isinstance(v, bool) or v is None or isinstance(v, str):
            return v
        if isinstance(v, float):
            if not math.isfinite(v):
                raise StirkitError(f"non-finite real value {v!r}")
            key = f"\x00{len(reals)}\x00"
            reals[key] = "%.17g" % v
            return key
        if isinstance(v, (int, Fraction)):
            return _exact_text(v)
        if isinstance(v, dict):
            return {str(k): conv(x) for k, x in v.items()}
        if isinstance(v, (list, tuple, range)):
            return [conv(x) for x in v]
        return str(v)

    text = json.dumps(conv(obj), indent=2)
    for key, number in reals.items():
        text = text.replace(json.dumps(key), number)
    return text


def _emit(args, text_lines, payload):
    if getattr(args, "format", "text") == "json":
        print(_dumps(payload))
    else:
        for line in text_lines:
            print(line)


# -- argument helpers --------------------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def _key_values(items, what="--params"):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"{what} entries look like key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _take(params, key, convert, default=None):
    if key in params:
        raw = params.pop(key)
        try:
            return convert(raw)
        except UsageError:
            raise
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad value for {key}: {raw!r}") from None
    if default is None:
        raise UsageError(f"missing parameter {key}")
    return default


def _done(params):
    if params:
        raise UsageError(f"unknown parameters: {', '.join(sorted(params))}")


def _coeff_list(text: str):
    cleaned = text.strip().strip("[]()")
    parts = [p for p in cleaned.replace(",", " ").split() if p]
    if not parts:
        raise UsageError("empty coefficient list")
    return [_rational(p) for p in parts]


# -- subcommands ---------------------------------------------------------------------


def cmd_table(args):
    w = table_window(args.kind, (args.nmin, args.nmax), (args.kmin, args.kmax))
    if args.format == "json":
        payload = {
            "kind": w.kind,
            "n": list(w.n_values),
            "k": list(w.k_values),
            "rows": [list(r) for r in w.entries],
        }
        print(_dumps(payload))
        return EXIT_OK
    print("\t".join(["n\\k"] + [str(k) for k in w.k_values]))
    for n, row in zip(w.n_values, w.entries):
        print("\t".join([str(n)] + [str(v) for v in row]))
    return EXIT_OK


def cmd_eval(args):
    bindings = {}
    for item in args.bind or []:
        if "=" not in item:
            raise UsageError(f"--bind expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        bindings[name.strip()] = _rational(value)
    tree = exprlang.parse(args.expression)
    value = exprlang.eval_expr(tree, bindings)
    _emit(
        args,
        [exprlang.format_value(value)],
        {"expression": exprlang.to_text(tree), "value": value, "exact": not isinstance(value, float)},
    )
    return EXIT_OK


def cmd_convert(args):
    coeffs = _coeff_list(args.poly)
    out = analysis.convert(coeffs, args.source, args.target)
    _emit(args, [" ".join(_exact_text(c) for c in out) if out else "0"], {"from": args.source, "to": args.target, "coefficients": out})
    return EXIT_OK


def cmd_asym(args):
    alpha, z = _rational(args.alpha), _rational(args.z)
    if args.terms < 0:
        raise UsageError("--terms must be nonnegative")
    value, bound = analysis.asym_factorial_power(float(z), alpha, args.terms, args.kind)
    payload = {"alpha": alpha, "z": z, "terms": args.terms, "kind": args.kind, "value": value, "modeled_error": bound}
    lines = [f"value\t{value:.17g}", f"modeled_error\t{bound:.17g}"]
    if args.compare_gamma:
        ref = analysis.factorial_power_real(float(z), float(alpha), args.kind)
        rel = abs(value - ref) / abs(ref) if ref else abs(value)
        payload.update(gamma=ref, relative_error=rel)
        lines += [f"gamma\t{ref:.17g}", f"relative_error\t{rel:.17g}"]
    _emit(args, lines, payload)
    return EXIT_OK


def _series_reciprocal(params):
    z = _take(params, "z", _rational)
    n = _take(params, "n", int)
    _done(params)
    partial, rem = analysis.reciprocal_series(z, n)
    return {"z": z, "n": n, "partial_sum": partial, "remainder": rem, "reciprocal": 1 / z, "holds": partial + rem == 1 / z}


def _series_generalized(params):
    z = _take(params, "z", _rational)
    alpha = _take(params, "alpha", _rational)
    terms = _take(params, "terms", int, 200)
    tol = _take(params, "tol", float, 1e-17)
    _done(params)
    r = analysis.generalized_power_series(float(z), alpha, terms, tol)
    target = float(z) ** float(alpha)
    return {
        "z": z, "alpha": alpha, "value": r.value, "target": target,
        "relative_error": abs(r.value - target) / abs(target),
        "terms_used": r.terms_used, "converged": r.converged, "last_term": r.last_term,
    }


def _series_generating(params):
    order = _take(params, "order", int, 8)
    _done(params)
    series = analysis.log_power_series(order)
    checks = analysis.log_series_identity_check(order)
    return {"order": order, "coefficients": [str(c) for c in series.coeffs], "identity": checks, "holds": all(checks)}


def _series_kramp(params):
    n = _take(params, "n", int)
    m = _take(params, "m", int, 30)
    if "a" in params or "r" in params:
        a = _take(params, "a", _rational)
        r = _take(params, "r", _rational)
        _done(params)
        exact = analysis.kramp_general_factorial(a, r, n)
        partial = analysis.kramp_partial_sum(a, r, n, m)
        return {"n": n, "m": m, "a": a, "r": r, "exact": exact, "partial_sum": float(partial),
                "relative_error": float(abs(partial - exact) / abs(exact))}
    _done(params)
    coeffs = [stirling_poly.cycle_poly(j)(n) for j in range(max(n, 0) + 1)] if n >= 0 else None
    out = {"n": n, "m": m, "holds": analysis.kramp_expansion_check(n, m)}
    if coeffs is not None:
        out["coefficients"] = coeffs
    return out


_SERIES = {
    "2.14": _series_reciprocal,
    "2.27": _series_generalized,
    "2.29": _series_generating,
    "2.21": _series_kramp,
}


def cmd_series(args):
    result = _SERIES[args.id](_key_values(args.params))
    _emit(args, [f"{k}\t{_plain(v)}" for k, v in result.items()], {"id": args.id, **result})
    return EXIT_OK if result.get("holds", True) else EXIT_FAIL


def _plain(v):
    if isinstance(v, (list, tuple)):
        parts = [_plain(x) for x in v]
        return ("; " if any(" " in p for p in parts) else " ").join(parts)
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (int, float, Fraction)):
        return _exact_text(v)
    return str(v)


def cmd_verify(args):
    results = run_suite(args.suite, args.seed, args.max_n)
    failed = [r for r in results if not r.ok]
    lines = [f"{'PASS' if r.ok else 'FAIL'}\t{r.suite}\t{r.name}\t{r.detail}" for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed (seed {args.seed})")
    payload = {
        "suite": args.suite, "seed": args.seed, "max_n": args.max_n,
        "results": [{"suite": r.suite, "name": r.name, "ok": r.ok, "detail": r.detail} for r in results],
        "passed": len(results) - len(failed), "total": len(results),
    }
    _emit(args, lines, payload)
    return EXIT_FAIL if failed else EXIT_OK


def _poset_arg(spec: str):
    kind, _, arg = spec.partition(":")
    if kind == "file":
        return oracles.parse_poset(Path(arg).read_text())
    builders = {"fence": oracles.fence_poset, "chain": oracles.chain, "antichain": oracles.antichain}
    if kind not in builders:
        raise UsageError("poset must be fence:K, chain:P, antichain:P or file:PATH")
    return builders[kind](int(arg))


def cmd_oracle(args):
    params = _key_values(args.params)
    if args.what == "omega":
        poset = _take(params, "poset", _poset_arg)
        n = _take(params, "n", int)
        strict = _take(params, "strict", lambda s: s.lower() in ("1", "true", "yes"), False)
        _done(params)
        count = (oracles.omega_bar if strict else oracles.omega)(poset, n)
        payload = {"what": "omega", "strict": strict, "n": n, "elements": poset.size, "count": count}
    else:
        n = _take(params, "n", int)
        k = _take(params, "k", int)
        _done(params)
        fn = {
            "perms": oracles.count_perms_by_cycles,
            "partitions": oracles.count_set_partitions,
            "esym": oracles.elem_sym,
            "hsym": oracles.complete_hom,
        }[args.what]
        count = fn(n, k)
        payload = {"what": args.what, "n": n, "k": k, "count": count}
    _emit(args, [str(count)], payload)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def _fmt(p, choices=("text", "json")):
    p.add_argument("--format", choices=choices, default=choices[0])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stirkit", description="Exact Stirling-number toolkit and identity checker.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("table", help="window of a full-plane table")
    p.add_argument("--kind", choices=("cycle", "subset", "binomial"), required=True)
    for name in ("--nmin", "--nmax", "--kmin", "--kmax"):
        p.add_argument(name, type=int, required=True)
    _fmt(p, ("tsv", "json"))
    p.set_defaults(run=cmd_table)

    p = sub.add_parser("eval", help="evaluate an expression")
    p.add_argument("expression")
    p.add_argument("--bind", action="extend", nargs="+", metavar="NAME=VALUE")
    _fmt(p)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("convert", help="change polynomial basis")
    p.add_argument("--poly", required=True, help="coefficients from degree 0 up, e.g. '0,0,0,1'")
    p.add_argument("--from", dest="source", choices=analysis.BASES, required=True)
    p.add_argument("--to", dest="target", choices=analysis.BASES, required=True)
    _fmt(p)
    p.set_defaults(run=cmd_convert)

    p = sub.add_parser("asym", help="asymptotic expansion of a factorial power")
    p.add_argument("--alpha", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--kind", choices=("rising", "falling"), required=True)
    p.add_argument("--compare-gamma", action="store_true")
    _fmt(p)
    p.set_defaults(run=cmd_asym)

    p = sub.add_parser("series", help="evaluate one of the series identities")
    p.add_argument("--id", choices=tuple(_SERIES), required=True)
    p.add_argument("--params", action="extend", nargs="*", default=[], metavar="KEY=VALUE")
    _fmt(p)
    p.set_defaults(run=cmd_series)

    p = sub.add_parser("verify", help="run self-verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--max-n", type=int, default=None)
    _fmt(p)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force counts")
    p.add_argument("--what", choices=("perms", "partitions", "esym", "hsym", "omega"), required=True)
    p.add_argument("--params", action="extend", nargs="*", default=[], metavar="KEY=VALUE")
    _fmt(p)
    p.set_defaults(run=cmd_oracle)
    return parser


def _u64(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except exprlang.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, StirkitError, ValueError, ZeroDivisionError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
