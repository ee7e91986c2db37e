"""Command line interface.

Exit status: 0 on success, 1 on a domain error (a JSON error payload is
printed), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from .certify import (
    CERTIFIED, REFUTED, UNKNOWN, DEFAULT_GRID, JieTriple, jie_check, no_antiderivative_certificate,
    soundness_probe,
)
from .constfield import const_text, make_const
from .errors import LogtowerError, NonPolynomialCoefficient
from .frontend import (
    format_poly_expr, format_ratexpr, load_tower_file, parse, parse_generic, parse_iterlog, evaluate,
)
from .iterlog import closure, essential_elements, towers
from .multipoly import X, GenSym, LogSym, sorted_syms
from .subfield import Presentation, generic_subfield, iterlog_subfield

_KIND_ORDER = {"linear": 0, "power": 1, "base": 2}


def _names(syms) -> list[str]:
    return [str(s) for s in sorted_syms(syms)]


def _tower_json(E) -> dict:
    logs = [s for s in E if isinstance(s, LogSym)]
    if not logs or all(s.level == 0 for s in logs):
        return {"levelled": [["x"]] if logs else [], "pi": [["x"]] if logs else []}
    rep = towers(closure(logs))
    return {"levelled": [_names(k) for k in rep.levelled], "pi": [_names(p) for p in rep.pi_tower]}


def _field_text(pres: Presentation) -> str:
    gens = [str(f) for f in pres.linear]
    gens += [_product_text(p) for p in pres.products]
    gens += _names(pres.base)
    return f"C({', '.join(gens)})" if gens else "C"


def _product_text(p: dict) -> str:
    parts = []
    for s in sorted_syms(p):
        e = p[s]
        parts.append(str(s) if e == 1 else f"{s}^{e}" if e > 0 else f"{s}^({e})")
    return "*".join(parts)


def presentation_json(pres: Presentation, text: str) -> dict:
    towers_out = _tower_json(pres.essential) if pres.mode == "iterlog" else {}
    return {
        "mode": pres.mode,
        "input": text,
        "essential_elements": _names(pres.essential),
        "pi_base": _names(pres.pi_base),
        "towers": towers_out,
        "generators": {
            "linear_forms": [
                {str(s): const_text(f.coeffs[s]) for s in sorted_syms(f.coeffs)} for f in pres.linear
            ],
            "power_products": [{str(s): p[s] for s in sorted_syms(p)} for p in pres.products],
            "base_symbols": _names(pres.base),
        },
        "field": _field_text(pres),
        "provenance": list(pres.provenance) + [
            "linear forms are in reduced row echelon form over the symbol order; compare by span",
            "generators are ordered by kind (linear, power product, base) and then symbol order",
        ],
    }


def _certificate_json(cert) -> dict:
    def conv(v):
        if hasattr(v, "terms"):
            return format_poly_expr(v)
        if isinstance(v, dict):
            return {k: conv(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [conv(x) for x in v]
        return v

    return {"verdict": cert.verdict, "reason": cert.reason, "witness": conv(cert.witness)}


# --------------------------------------------------------------- commands


def cmd_analyze(args) -> dict:
    u = parse_iterlog(args.expr)
    t0 = time.perf_counter()
    pres = iterlog_subfield(u)
    out = presentation_json(pres, args.expr)
    out["elapsed_seconds"] = round(time.perf_counter() - t0, 6)
    return out


def _symbol_list(text: str):
    depth = 0
    parts, cur = [], ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p for p in parts if p.strip()]


def cmd_towers(args) -> dict:
    from .frontend import parse_logsym

    items = _symbol_list(args.expr)
    if len(items) > 1:
        E = frozenset(parse_logsym(t) for t in items)
    else:
        E = essential_elements(parse_iterlog(args.expr)).symbols
    cl = closure(E)
    rep = towers(cl)
    return {
        "mode": "towers",
        "input": args.expr,
        "essential_elements": _names(E),
        "closure": _names(cl.closure),
        "n": cl.n,
        "partition": [_names(t) for t in cl.partition],
        "pi_base": _names(cl.pi_base),
        "towers": {"levelled": [_names(k) for k in rep.levelled],
                   "pi": [_names(p) for p in rep.pi_tower]},
    }


def cmd_essential(args) -> dict:
    u = parse_iterlog(args.expr)
    E = essential_elements(u).symbols
    return {
        "mode": "essential",
        "input": args.expr,
        "reduced": format_ratexpr(u),
        "essential_elements": _names(E),
        "max_level": max((s.level for s in E), default=0),
    }


def _aggregate(verdicts) -> str:
    verdicts = list(verdicts)
    if REFUTED in verdicts:
        return REFUTED
    if UNKNOWN in verdicts:
        return UNKNOWN
    return CERTIFIED


def _stage_of(v) -> int:
    return v.stage if isinstance(v, GenSym) else v.level


def cmd_jie_check(args) -> dict:
    tower = load_tower_file(args.tower_file)
    by_stage: dict[int, list] = {}
    for s, (A, B, C) in tower.triples.items():
        by_stage.setdefault(s.stage, []).append((s, A, B, C))
    stages = []
    for stage in sorted(by_stage):
        # every variable of the field the stage is built over
        below = {X}
        for s, _, _, _ in by_stage[stage]:
            below |= {v for v in tower.deps[s] if _stage_of(v) < stage}
        below |= {g for g in tower.symbols.values() if g.stage < stage}
        triples = [JieTriple(A, B, C, frozenset(below), str(s)) for s, A, B, C in by_stage[stage]]
        cert = jie_check(triples)
        entry = _certificate_json(cert)
        entry.update(stage=stage, symbols=[t.name for t in triples], stage_below=_names(below))
        stages.append(entry)
    skipped = [d.name for d in tower.decls if tower.symbols[d.name] not in tower.triples]
    return {
        "mode": "jie-check",
        "input": args.tower_file,
        "verdict": _aggregate(e["verdict"] for e in stages) if stages else UNKNOWN,
        "stages": stages,
        "without_triple_data": skipped,
    }


def cmd_certify_nonint(args) -> dict:
    names = [n.strip() for n in (args.vars or "").split(",") if n.strip()]
    extra = [n for n in names if n != "x" and not n.startswith("ln")]
    symtab = {n: GenSym(n, "antiderivative", i, 1) for i, n in enumerate(extra)}

    def poly_of(text):
        u = evaluate(parse(text, "generic", symtab), symtab)
        if not u.den.is_one():
            raise NonPolynomialCoefficient(f"{text!r} is not a polynomial")
        return u.num

    S, T = poly_of(args.S), poly_of(args.T)
    vars_ = None
    if names:
        vars_ = []
        for n in names:
            if n in symtab:
                vars_.append(symtab[n])
            else:
                vars_.append(X if n == "x" else next(iter(parse_iterlog(n).symbols())))
    cert = no_antiderivative_certificate(S, T, vars_)
    out = _certificate_json(cert)
    out.update(mode="certify-nonint", input=f"{args.S} / ({args.T})", S=format_poly_expr(S), T=format_poly_expr(T))
    return out


def cmd_generic_analyze(args) -> dict:
    tower = load_tower_file(args.tower_file)
    u = parse_generic(args.expr, tower)
    base = None
    if args.base:
        base = set()
        for n in args.base.split(","):
            n = n.strip()
            base.add(X if n == "x" else tower.symbols[n] if n in tower.symbols
                     else next(iter(parse_iterlog(n).symbols())))
    pres = generic_subfield(u, tower.kinds, tower.deps, base)
    out = presentation_json(pres, args.expr)
    out["tower_file"] = args.tower_file
    return out


def _parse_grid(text: str | None):
    if not text:
        return DEFAULT_GRID
    vals = []
    for t in text.split(","):
        t = t.strip()
        if t:
            u = parse_iterlog(t)
            if not u.is_const():
                raise LogtowerError(f"probe value {t!r} is not a constant")
            vals.append(u.num.const_value() / u.den.const_value())
    return tuple(vals) or DEFAULT_GRID


def cmd_verify(args) -> dict:
    u = parse_iterlog(args.expr)
    pres = iterlog_subfield(u)
    grid = _parse_grid(args.probe_grid)
    res = soundness_probe(u, pres, grid)
    return {
        "mode": "verify",
        "input": args.expr,
        "grid": [const_text(make_const(g)) for g in grid],
        "probes": res["probes"],
        "coordinates": res["coordinates"],
        "mismatches": res["mismatches"],
        "sound": not res["mismatches"],
        "field": _field_text(pres),
    }


# ------------------------------------------------------------------ output


def _pretty(out: dict) -> str:
    lines = []
    mode = out.get("mode")
    if "error" in out:
        return f"error: {out['error']}: {out.get('message', '')}"
    lines.append(f"input: {out.get('input')}")
    if "essential_elements" in out:
        lines.append("essential: {" + ", ".join(out["essential_elements"]) + "}")
    if out.get("pi_base"):
        lines.append("pi-base: {" + ", ".join(out["pi_base"]) + "}")
    tw = out.get("towers") or {}
    for label, key in (("levelled tower", "levelled"), ("pi tower", "pi")):
        if tw.get(key):
            chain = " > ".join("C(" + ", ".join(k) + ")" for k in reversed(tw[key]))
            lines.append(f"{label}: {chain} > C")
    if "field" in out:
        lines.append(f"field: {out['field']}")
    if "verdict" in out:
        lines.append(f"verdict: {out['verdict']}")
        if out.get("reason"):
            lines.append(f"reason: {out['reason']}")
        for st in out.get("stages", []):
            lines.append(f"  stage {st['stage']} {st['symbols']}: {st['verdict']} ({st['reason']})")
        if out.get("witness"):
            lines.append(f"witness: {json.dumps(out['witness'])}")
    if mode == "verify":
        lines.append(f"probes: {out['probes']}  mismatches: {len(out['mismatches'])}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    def flags(default):
        # the flags are accepted before or after the subcommand; only the
        # top level supplies defaults so a subparser cannot clobber them
        fp = argparse.ArgumentParser(add_help=False)
        g = fp.add_mutually_exclusive_group()
        g.add_argument("--json", dest="pretty", action="store_false", default=default(False),
                       help="JSON output (default)")
        g.add_argument("--pretty", dest="pretty", action="store_true", default=default(False),
                       help="human-readable output")
        fp.add_argument("--probe-grid", default=default(None), help="comma-separated probe constants")
        return fp

    top = flags(lambda v: v)
    fmt = flags(lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="logtower", parents=[top],
                                description="Differential subfields of iterated-log and antiderivative towers.")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[fmt], help="subfield generated by an iterated-log expression")
    a.add_argument("expr")
    a.set_defaults(func=cmd_analyze)
    t = sub.add_parser("towers", parents=[fmt], help="closure set, partition and both towers")
    t.add_argument("expr", help="an expression, or a comma-separated list of iterated logs")
    t.set_defaults(func=cmd_towers)
    e = sub.add_parser("essential", parents=[fmt], help="essential elements of an expression")
    e.add_argument("expr")
    e.set_defaults(func=cmd_essential)
    j = sub.add_parser("jie-check", parents=[fmt], help="check J-I-E conditions of a tower file")
    j.add_argument("tower_file")
    j.set_defaults(func=cmd_jie_check)
    c = sub.add_parser("certify-nonint", parents=[fmt], help="certificate that S/T has no antiderivative")
    c.add_argument("S")
    c.add_argument("T")
    c.add_argument("--vars", default=None, help="comma-separated variables")
    c.set_defaults(func=cmd_certify_nonint)
    gen = sub.add_parser("generic", parents=[fmt], help="declared-tower mode")
    gsub = gen.add_subparsers(dest="generic_command", required=True)
    ga = gsub.add_parser("analyze", parents=[fmt], help="subfield generated by u in a declared tower")
    ga.add_argument("tower_file")
    ga.add_argument("expr")
    ga.add_argument("--base", default=None, help="comma-separated base field symbols")
    ga.set_defaults(func=cmd_generic_analyze)
    v = sub.add_parser("verify", parents=[fmt], help="probe-grid soundness check")
    v.add_argument("expr")
    v.set_defaults(func=cmd_verify)
    return p


def run_cli(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else 2
    try:
        out = args.func(args)
        code = 0
    except LogtowerError as exc:
        out = exc.payload()
        code = 1
    if args.pretty:
        print(_pretty(out), file=stdout)
    else:
        print(json.dumps(out, indent=2, ensure_ascii=False), file=stdout)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    return run_cli(argv)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
