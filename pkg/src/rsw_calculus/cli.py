"""Command-line front end: ``rsw <verb> ...``.

Exit status: 0 success, 1 rule violations found, 2 input or schema error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import catalog as catalog_mod
from .engine import (
    apply_outcome,
    connected_sum,
    degree_relations,
    fiber_sum,
    identity_outcome,
    localize_b1zero,
    localize_general,
    normalize_splitting,
    odd_vanishing,
    psc_rule,
    self_sum,
    spin_rule,
    wall_cross,
)
from .engine.outcome import RuleOutcome
from .exotic import check_admissible, exotic_family, nonzero_degree_witness
from .io import EXTENSION, InputError, dumps, load, mod2_from_json, outcome_to_json, save, value_to_json
from .model import Chamber, RealFourManifold, Violation, validate
from .ring import Mod2Class

EXIT_OK, EXIT_VIOLATIONS, EXIT_INPUT = 0, 1, 2


class UsageError(ValueError):
    pass


def resolve(ref: str) -> RealFourManifold:
    """A file path, or else a catalog name."""
    p = Path(ref)
    if p.exists():
        return load(p)
    try:
        return catalog_mod.lookup(ref)
    except KeyError:
        raise UsageError(f"{ref}: no such file or catalog entry") from None


# ---- verbs ----

def check_manifold(m: RealFourManifold, j_max: int, m_max: int, zero_chamber=None) -> tuple[dict, int]:
    problems = validate(m)
    n_viol = len(problems)
    per_spinc = {}
    for s in m.spinc:
        s_norm, a = normalize_splitting(s, m.b_plus_minus)
        outcomes: list[RuleOutcome] = [identity_outcome(s_norm, m.b_plus_minus, j_max, m_max)]
        if s_norm.d % 2:
            outcomes.append(odd_vanishing(s_norm, m.b_plus_minus, m_max))
        outcomes.append(degree_relations(m, s_norm))
        if s_norm.is_spin:
            outcomes.append(spin_rule(m, s_norm, m_max))
        if m.psc_invariant_metric:
            outcomes.append(psc_rule(m, s_norm, zero_chamber, m_max))
        filled = s_norm
        for o in outcomes:
            filled = apply_outcome(filled, o)
        n_viol += sum(len(o.violations) for o in outcomes)
        per_spinc[s.name] = {
            "splitting_change": None if a.is_zero() else a,
            "outcomes": [outcome_to_json(o) for o in outcomes],
            "filled": filled,
        }
    report = {
        "manifold": m.name,
        "validation": problems,
        "spinc": per_spinc,
        "violation_count": n_viol,
    }
    return report, n_viol


def cmd_check(args) -> tuple[object, int]:
    manifolds = [resolve(ref) for ref in args.inputs]
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(lambda m: check_manifold(m, args.j_max, args.m_max, args.zero_chamber), manifolds))
    reports = [r for r, _ in results]
    total = sum(n for _, n in results)
    return {"reports": reports, "violation_count": total}, EXIT_VIOLATIONS if total else EXIT_OK


def _sum_report(m: RealFourManifold, j_max: int, m_max: int) -> tuple[dict, int]:
    s = m.spinc[0]
    ident = identity_outcome(s, m.b_plus_minus, j_max, m_max)
    problems = validate(m)
    n = len(ident.violations) + len(problems)
    return {"manifold": m, "validation": problems, "identity_check": outcome_to_json(ident)}, n


def cmd_sum(args):
    m1, m2 = resolve(args.first), resolve(args.second)
    out, _ = connected_sum(m1, m2, args.s1, args.s2, args.chamber)
    report, n = _sum_report(out, args.j_max, args.m_max)
    return report, EXIT_VIOLATIONS if n else EXIT_OK


def cmd_fibersum(args):
    m1, m2 = resolve(args.first), resolve(args.second)
    out, _ = fiber_sum(m1, m2, args.s1, args.s2, b1_total=args.b1_total)
    report, n = _sum_report(out, args.j_max, args.m_max)
    return report, EXIT_VIOLATIONS if n else EXIT_OK


def _class_arg(text: str, beta: int) -> Mod2Class:
    text = text.strip()
    if text in ("0", "1"):
        return Mod2Class.scalar(int(text), beta)
    try:
        return mod2_from_json(json.loads(text))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read class {text!r}: {exc}") from None


def cmd_selfsum(args):
    sw_m = {}
    for item in args.sw or []:
        key, _, val = item.partition("=")
        if not val:
            raise UsageError(f"--sw expects M=CLASS, got {item!r}")
        sw_m[int(key)] = _class_arg(val, args.b1)
    total = _class_arg(args.minus_dr_total, args.b1) if args.minus_dr_total else None
    out, _ = self_sum(
        args.name, args.b1, args.b_plus, args.signature, d=args.d, c_squared=args.c_squared,
        sw_m=sw_m, sw_int=args.sw_int, chamber=args.chamber, minus_dr_total=total, is_spin=args.spin,
    )
    report, n = _sum_report(out, args.j_max, args.m_max)
    return report, EXIT_VIOLATIONS if n else EXIT_OK


def cmd_wallcross(args):
    m = resolve(args.input)
    if m.b_plus_minus != 1:
        raise UsageError(f"{m.name}: wall-crossing needs b_plus_minus = 1, got {m.b_plus_minus}")
    s = m.spinc_named(args.spinc) if args.spinc else m.spinc[0]
    src = Chamber(args.source)
    dst = Chamber.POSITIVE if src == Chamber.NEGATIVE else Chamber.NEGATIVE
    series = s.sw_series(src)
    if not series:
        raise UsageError(f"{m.name}/{s.name}: no invariants stored for chamber {src.value}")
    crossed = wall_cross(series, s.d, s.minus_dr)
    violations = []
    for idx, c in sorted(crossed.items()):
        stored = s.sw(idx, dst)
        if stored is not None and stored != c:
            violations.append(Violation("wall-crossing", f"{m.name}/{s.name}/{dst.value}/{idx}",
                                        f"stored {stored}, wall-crossing gives {c}"))
    report = {
        "manifold": m.name, "spinc": s.name, "from": src.value, "to": dst.value,
        "series": {str(k): v for k, v in sorted(crossed.items())}, "violations": violations,
    }
    return report, EXIT_VIOLATIONS if violations else EXIT_OK


def cmd_localize(args):
    m = resolve(args.input)
    s = m.spinc_named(args.spinc) if args.spinc else m.spinc[0]
    values = {}
    for item in args.swr or []:
        bits, _, val = item.partition("=")
        if len(bits) != m.b1_total or set(bits) - {"0", "1"} or val not in ("0", "1"):
            raise UsageError(f"--swr expects {m.b1_total} bits = 0|1, got {item!r}")
        values[tuple(int(b) for b in bits)] = int(val)
    delta = s.d - m.b_plus_minus
    report = {"manifold": m.name, "spinc": s.name}
    chamber = Chamber(args.chamber) if args.chamber else (Chamber.UNIQUE if m.b_plus_minus != 1 else None)
    if m.b1_total == 0 and not values and chamber is not None:
        stored = s.sw(delta, chamber)
        if stored is not None:
            values[()] = int(not stored.is_zero())
    if m.b1_total == 0 and () in values:
        report["closed_form"] = localize_b1zero(m.b_plus_total, m.b_plus_inv, values[()])
    outcome = localize_general(m, s, values, args.m)
    report["outcome"] = outcome_to_json(outcome)
    return report, EXIT_VIOLATIONS if outcome.violations else EXIT_OK


def cmd_admissible(args):
    reports = []
    for ref in args.inputs:
        m = resolve(ref)
        rep = check_admissible(m)
        doc = rep.to_json()
        if rep.witness is not None:
            doc["degree"] = nonzero_degree_witness(m, rep.witness).to_json()
        reports.append(doc)
    return {"reports": reports}, EXIT_OK


def cmd_exotic_family(args):
    a0 = set(args.a0 or [])
    for ref in args.from_record or []:
        m = resolve(ref)
        for s in m.spinc:
            if s.deg_r is not None and s.deg_r.beta == 0 and s.deg_r.abs_scalar():
                a0.add(s.deg_r.abs_scalar())
    if not a0:
        raise UsageError("give --a0 values or --from-record inputs with nonzero degrees")
    report = exotic_family(a0, args.n)
    return report, EXIT_OK if report.distinct and report.bands else EXIT_VIOLATIONS


def cmd_catalog(args):
    entries = catalog_mod.catalog()
    if args.dump:
        out = Path(args.dump)
        out.mkdir(parents=True, exist_ok=True)
        for m in entries:
            save(m, out / f"{m.name}{EXTENSION}")
    return {"entries": [{"name": m.name, "spinc": [s.name for s in m.spinc]} for m in entries]}, EXIT_OK


# ---- rendering ----

def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        if not value:
            rows.append((prefix, "{}"))
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, list):
        if not value:
            rows.append((prefix, "[]"))
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, json.dumps(value) if not isinstance(value, str) else value))


def render_text(report) -> str:
    if hasattr(report, "table"):
        return report.table()
    rows: list = []
    _flatten("", value_to_json(report), rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def render(report, fmt: str) -> str:
    return dumps(report) if fmt == "json" else render_text(report)


# ---- parser ----

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsw", description="Real Seiberg-Witten invariant calculus")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    ranges = argparse.ArgumentParser(add_help=False)
    ranges.add_argument("--j-max", type=int, default=4)
    ranges.add_argument("--m-max", type=int, default=8)
    chambers = [c.value for c in Chamber]

    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", parents=[common, ranges], help="validate records and run every applicable rule")
    p.add_argument("inputs", nargs="+", help=f"{EXTENSION} files or catalog names")
    p.add_argument("--zero-chamber", choices=chambers + ["wall"],
                   help="chamber holding the zero perturbation (b_plus_minus = 1, psc)")
    p.set_defaults(func=cmd_check)

    for verb, func, helptext in (("sum", cmd_sum, "equivariant connected sum"),
                                 ("fibersum", cmd_fibersum, "fiber sum along fixed tori")):
        p = sub.add_parser(verb, parents=[common, ranges], help=helptext)
        p.add_argument("first")
        p.add_argument("second")
        p.add_argument("--s1", help="spin^c structure of the first summand")
        p.add_argument("--s2", help="spin^c structure of the second summand")
        if verb == "sum":
            p.add_argument("--chamber", choices=chambers, help="chamber of the summand with b_plus_minus > 0")
        else:
            p.add_argument("--b1-total", type=int, help="b1 of the result")
        p.set_defaults(func=func)

    p = sub.add_parser("selfsum", parents=[common, ranges], help="X # X with the swap involution")
    p.add_argument("--name", default="X")
    p.add_argument("--b1", type=int, default=0)
    p.add_argument("--b-plus", type=int, required=True)
    p.add_argument("--signature", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--c-squared", type=int)
    p.add_argument("--sw", action="append", metavar="M=CLASS", help="ordinary SW_m: 0, 1 or a JSON class")
    p.add_argument("--sw-int", type=int, help="ordinary integer invariant (b1 = 0)")
    p.add_argument("--chamber", choices=chambers)
    p.add_argument("--minus-dr-total", help="JSON class w(-D_R) of the result (needed when b1 > 0)")
    p.add_argument("--spin", action="store_true")
    p.set_defaults(func=cmd_selfsum)

    p = sub.add_parser("wallcross", parents=[common], help="cross the wall when b_plus_minus = 1")
    p.add_argument("input")
    p.add_argument("--spinc")
    p.add_argument("--source", choices=["Positive", "Negative"], default="Negative")
    p.set_defaults(func=cmd_wallcross)

    p = sub.add_parser("localize", parents=[common], help="ordinary invariants from Real ones")
    p.add_argument("input")
    p.add_argument("--spinc")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--swr", action="append", metavar="BITS=V", help="Real invariant of one Real structure")
    p.add_argument("--chamber", choices=chambers)
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("admissible", parents=[common], help="admissibility and degree witness")
    p.add_argument("inputs", nargs="+")
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("exotic-family", parents=[common], help="degree bands A_n = 3^(rn) A_0")
    p.add_argument("--a0", type=int, action="append")
    p.add_argument("--from-record", action="append", metavar="INPUT")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_exotic_family)

    p = sub.add_parser("catalog", parents=[common], help="list or dump the built-in records")
    p.add_argument("--dump", metavar="DIR")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UsageError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    text = render(report, args.format)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
