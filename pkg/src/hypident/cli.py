"""Command-line interface.

Exit codes: 0 pass (including a confirmed expected failure), 1 an identity
failed verification, 2 usage or mode error, 3 infrastructure error (pole,
non-convergence).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from hypident.errors import (
    ConstraintUnsatisfiable,
    ConstraintViolation,
    DSLError,
    HypIdentError,
    ModeViolation,
    OutOfDomain,
    UnknownIdentity,
)
from hypident.registry import FORMAL, NUMERIC, build_side, catalogue, get_identity
from hypident.series import TruncatedSeries

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INFRA = 0, 1, 2, 3

DEFAULTS = {
    "order": 6,
    "samples": 5,
    "seed": 0,
    "tol": 1e-10,
    "format": "text",
    "jobs": 1,
    "dps": None,
}
_CONFIG_TYPES = {"order": int, "samples": int, "seed": int, "tol": float, "format": str, "jobs": int, "dps": int}


class UsageError(Exception):
    pass


def _assignments(items) -> dict:
    out = {}
    for item in items or []:
        for part in item.split(","):
            if not part.strip():
                continue
            key, sep, value = part.partition("=")
            if not sep or not key.strip():
                raise UsageError(f"expected name=value, got {part!r}")
            try:
                out[key.strip()] = Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"not a rational number: {value!r}") from None
    return out


def load_config(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in _CONFIG_TYPES:
            raise UsageError(f"{path}:{lineno}: unknown setting {line!r}; known: {sorted(_CONFIG_TYPES)}")
        try:
            out[key] = _CONFIG_TYPES[key](value.strip())
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypident", description="Verify hypergeometric series identities.")
    parser.add_argument("--config", help="key=value file with defaults (order, samples, seed, tol, format, jobs, dps)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default=None)
        p.add_argument("--param", action="append", default=[], help="NAME=VALUE (repeatable, or comma separated)")

    p = sub.add_parser("list", help="catalogue of registered identities")
    p.add_argument("--format", choices=("text", "json"), default=None)

    p = sub.add_parser("verify", help="verify a registered identity or a DSL document")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--identity")
    src.add_argument("--file", help="comparison document")
    common(p)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--numeric", action="store_true", help="numeric comparison at a point")
    p.add_argument("--point", action="append", default=[], help="VAR=VALUE for numeric mode")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--dps", type=int, default=None, help="working decimal digits in numeric mode")

    p = sub.add_parser("expand", help="print one side of an identity")
    p.add_argument("--identity", required=True)
    p.add_argument("--side", required=True)
    common(p)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--point", action="append", default=[])
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("replay", help="replay a classical reduction chain for one coefficient")
    p.add_argument("--variant", choices=("ggr1", "ggr2"), required=True)
    p.add_argument("--xyz", required=True, help="X,Y,Z")
    common(p)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("qlimit", help="q -> 1 trend of one coefficient")
    p.add_argument("--xyz", required=True, help="X,Y,Z")
    p.add_argument("--q", default="0.9,0.99,0.999", help="comma separated increasing q values")
    common(p)
    p.add_argument("--seed", type=int, default=None)
    return parser


def _settings(args) -> dict:
    settings = dict(DEFAULTS)
    if args.config:
        settings.update(load_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if settings["format"] not in ("text", "json"):
        raise UsageError("format must be text or json")
    return settings


def _emit(out, settings, reports, extra=None):
    if settings["format"] == "json":
        doc = {"reports": [r.to_dict() for r in reports]}
        doc.update(extra or {})
        print(json.dumps(doc, indent=2), file=out)
    else:
        for r in reports:
            print(r.to_text(), file=out)
        if extra:
            for k, v in extra.items():
                print(f"{k}: {v}", file=out)


def _exit_for(reports) -> int:
    from hypident.verify import ERROR

    if any(r.verdict == ERROR for r in reports):
        return EXIT_INFRA
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_list(args, settings, out):
    entries = catalogue()
    if settings["format"] == "json":
        print(json.dumps(entries, indent=2), file=out)
        return EXIT_PASS
    for e in entries:
        print(f"{e['id']:<10} {e['mode']:<8} {e['title']}", file=out)
        print(f"{'':<10} anchor: {e['anchor']}", file=out)
    return EXIT_PASS


def _cmd_verify(args, settings, out):
    from hypident import verify as V

    params = _assignments(args.param)
    point = _assignments(args.point)
    if args.file:
        from hypident.dsl import evaluate, parse

        try:
            text = Path(args.file).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from None
        doc = parse(text)
        mode = "numeric" if args.numeric else None
        with mpmath.workdps(settings["dps"] or 15):
            report = evaluate(doc, params=params, variables=point, order=args.order,
                              tol=args.tol, mode=mode, name=Path(args.file).name)
        reports = [report]
    else:
        desc = get_identity(args.identity)
        mode = NUMERIC if args.numeric else FORMAL
        if not desc.allows(mode):
            raise ModeViolation(f"identity {desc.id!r} is {desc.mode}-only; {mode} verification is not meaningful")
        values = {**params, **point}
        needed = set(desc.parameters) | (set(desc.variables) if mode == NUMERIC else set())
        if needed and needed <= set(values):
            if mode == FORMAL:
                reports = [V.verify_formal(desc, values, settings["order"])]
            else:
                reports = [V.verify_numeric(desc, values, settings["tol"], dps=settings["dps"])]
        else:
            reports = V.verify_samples(desc.id, seed=settings["seed"], count=settings["samples"], mode=mode,
                                       order=settings["order"], tol=settings["tol"], fixed=values,
                                       jobs=settings["jobs"], dps=settings["dps"])
    code = _exit_for(reports)
    verdict = {EXIT_PASS: "pass", EXIT_FAIL: "fail", EXIT_INFRA: "error"}[code]
    _emit(out, settings, reports, {"verdict": verdict})
    return code


def _cmd_expand(args, settings, out):
    from hypident import verify as V

    desc = get_identity(args.identity)
    mode = NUMERIC if args.numeric else FORMAL
    values = {**_assignments(args.param), **_assignments(args.point)}
    needed = set(desc.parameters) | (set(desc.variables) if mode == NUMERIC else set())
    if not needed <= set(values):
        sample = V.sample_parameters(desc.id, settings["seed"], 1, mode=mode, fixed=values)[0]
        values = {**sample, **values}
    if mode == NUMERIC:
        value = build_side(desc, args.side, values, numeric=True)
        text = mpmath.nstr(value, 17)
    else:
        value = build_side(desc, args.side, values, order=settings["order"])
        text = str(value) if isinstance(value, TruncatedSeries) else V._ser(value)
    if settings["format"] == "json":
        print(json.dumps({"identity": desc.id, "side": args.side, "params": V._ser(values), "value": text}, indent=2),
              file=out)
    else:
        print(text, file=out)
    return EXIT_PASS


def _xyz(text):
    try:
        X, Y, Z = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--xyz needs three integers X,Y,Z, got {text!r}") from None
    if min(X, Y, Z) < 0:
        raise UsageError("X, Y, Z must be nonnegative")
    return X, Y, Z


def _classical_params(args, settings):
    from hypident import verify as V

    params = _assignments(args.param)
    if not {"alpha", "beta", "gamma"} <= set(params):
        sample = V.sample_parameters("ggr", settings["seed"], 1, fixed=params)[0]
        params = {**sample, **params}
    return params


def _cmd_replay(args, settings, out):
    from hypident.replay import replay_proof

    X, Y, Z = _xyz(args.xyz)
    try:
        trace = replay_proof(args.variant, _classical_params(args, settings), X, Y, Z)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if settings["format"] == "json":
        print(json.dumps(trace.to_dict(), indent=2), file=out)
    else:
        d = trace.to_dict()
        print(f"{args.variant} replay of x^{X} y^{Y} z^{Z} at {d['params']}", file=out)
        for k, s in enumerate(d["stages"], 1):
            print(f"  {k}. {s['name']:<30} {s['value']}  {'ok' if s['equal'] else 'MISMATCH'}", file=out)
        for name, v in d["checks"].items():
            print(f"     {name:<30} {v}", file=out)
        for k, msg in d["errors"].items():
            print(f"  stage {k} error: {msg}", file=out)
        print("PASS" if trace.passed else "FAIL", file=out)
    if trace.errors:
        return EXIT_INFRA
    return EXIT_PASS if trace.passed else EXIT_FAIL


def _cmd_qlimit(args, settings, out):
    from hypident.verify import q_limit_check

    X, Y, Z = _xyz(args.xyz)
    try:
        qs = [Fraction(v) for v in args.q.split(",")]
        report = q_limit_check(_classical_params(args, settings), X, Y, Z, qs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(out, settings, [report])
    return _exit_for([report])


COMMANDS = {"list": _cmd_list, "verify": _cmd_verify, "expand": _cmd_expand, "replay": _cmd_replay,
            "qlimit": _cmd_qlimit}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        settings = _settings(args)
        return COMMANDS[args.command](args, settings, out)
    except (UsageError, ModeViolation, UnknownIdentity, ConstraintViolation, ConstraintUnsatisfiable,
            OutOfDomain, DSLError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_USAGE
    except (HypIdentError, ZeroDivisionError, mpmath.libmp.NoConvergence) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INFRA


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
