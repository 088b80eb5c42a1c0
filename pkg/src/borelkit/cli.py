"""Command-line interface.

Exit codes: 0 on success, 1 when a mathematical check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from importlib import resources
from typing import List, Optional

from .duality import dual, dual_member, dual_via_intersection
from .errors import BorelError, UnrepresentableClass
from .ideal import SstIdeal, equals, hilbert_function, member, monomial_min_gens, random_sst_ideal
from .isotone import (DEFAULT_MAX_CANDIDATES, dual as dual_map, embed_box_map, enumerate_box,
                      leq, lex_cmp, parse_isotone)
from .linalg import Field
from .monomial import degree_map, gamma, gamma_inv, lambda_, parse_monomial
from .resolution import (betti_rows, check_condition_min, ek_betti_closed_form, ek_resolution,
                         format_betti, koszul_shift_resolution, minimal_shift_resolution,
                         shift_complex_from_dict, verify_complex)
from .shiftmod import FiniteShiftModule, dual_module, expand, rear_torsion_free_report, validate
from .ulex import ulex_gamma, ulex_lambda, verify_ulex_duality

DEFAULT_SEED = 20240101


class UsageError(BorelError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input helpers --------------------------------------------------------

def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def read_ideal(text: Optional[str]) -> SstIdeal:
    """An ideal given inline (``"x1^2, x1*x2"``), as JSON text, or as a path to a JSON file."""
    if text is None:
        raise UsageError("no ideal given (use --gens or a positional argument)")
    if text.strip().lower() == "unbounded":
        raise UnrepresentableClass("infinitely generated")
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return SstIdeal.from_json(stripped)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad JSON: {exc.msg}") from None
    return SstIdeal.parse(stripped)


def _ideal_arg(args) -> SstIdeal:
    return read_ideal(args.gens if args.gens is not None else args.ideal)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad JSON in {path}: {exc.msg}") from None


def load_fixtures() -> list:
    text = resources.files("borelkit").joinpath("data/fixtures.json").read_text()
    return json.loads(text)["fixtures"]


def _ideal_text(ideal: SstIdeal) -> str:
    return ", ".join(ideal.gen_strings()) if ideal.gens else "0"


# -- verbs ----------------------------------------------------------------

def cmd_dual(args, out):
    ideal = _ideal_arg(args)
    result = dual(ideal, args.max_candidates)
    payload = result.to_dict()
    ok = True
    if args.check:
        other = dual_via_intersection(ideal)
        back = dual(result, args.max_candidates)
        checks = {"engines_agree": equals(result, other), "double_dual": equals(back, ideal)}
        payload = {"dual": result.to_dict(), "checks": checks}
        ok = all(checks.values())
    if args.json:
        out.append(json.dumps(payload, sort_keys=True))
    else:
        out.append(_ideal_text(result))
        if args.check:
            for k, v in payload["checks"].items():
                out.append(f"{k}: {'pass' if v else 'FAIL'}")
    return ok


def cmd_gens(args, out):
    ideal = _ideal_arg(args)
    if args.monomial:
        gens = [g.to_str(ideal.alphabet) for g in monomial_min_gens(ideal, args.max_candidates)]
    else:
        gens = ideal.gen_strings()
    if args.json:
        out.append(json.dumps({"alphabet": ideal.alphabet, "gens": gens}, sort_keys=True))
    else:
        out.append(", ".join(gens) if gens else "0")
    return True


def cmd_member(args, out):
    u = parse_monomial(args.monomial)
    ans = member(u, _ideal_arg(args))
    out.append(json.dumps({"member": ans}) if args.json else str(ans).lower())
    return True


def cmd_hilb(args, out):
    ideal = _ideal_arg(args)
    values = hilbert_function(ideal, args.max_deg, args.vars, args.max_candidates)
    if args.json:
        out.append(json.dumps({"vars": args.vars, "values": list(values)}))
    else:
        for d, v in enumerate(values):
            out.append(f"{d}\t{v}")
    return True


def _build(args, ideal):
    field = args.field
    box = _int_list(args.box) if args.box else None
    if box is not None and len(box) != 2:
        raise UsageError("--box takes m,n")
    m, n = (box or (None, None))
    if args.engine == "koszul":
        return koszul_shift_resolution(list(ideal.gens), args.mode, m, n, field)
    if args.mode == "quotient":
        raise UsageError("quotient mode is only available for the koszul engine")
    if args.engine == "minimal-shift":
        return minimal_shift_resolution(ideal, m, n, field)
    return ek_resolution(ideal, field=field)


def cmd_resolve(args, out):
    ideal = _ideal_arg(args)
    cx = _build(args, ideal)
    data = cx.to_dict()
    data["ideal"] = ideal.to_dict()
    out.append(json.dumps(data, sort_keys=True))
    return True


def cmd_betti(args, out):
    cx = _build(args, _ideal_arg(args))
    table = cx.betti()
    out.append(json.dumps({"betti": betti_rows(table)}) if args.json else format_betti(table))
    return True


def _verify_fixture(fx, field) -> dict:
    ideal = SstIdeal.parse(fx["gens"])
    engine = fx["engine"]
    report = {"name": fx["name"], "engine": engine}
    if engine == "ek":
        cx = ek_resolution(ideal, field=field)
    elif engine == "koszul":
        cx = koszul_shift_resolution(list(ideal.gens), field=field)
        cond = check_condition_min(list(ideal.gens))
        report["witnesses_match"] = cond.witnesses == fx.get("witnesses", cond.witnesses)
    else:
        cx = minimal_shift_resolution(ideal, field=field)
    if "terms" in fx:
        got = [t for t in cx.to_dict()["terms"] if t]
        want = [[str(parse_monomial(u)) for u in t] for t in fx["terms"]]
        report["terms_match"] = [sorted(t) for t in got] == [sorted(t) for t in want]
    if "betti" in fx:
        report["betti_match"] = betti_rows(cx.betti()) == fx["betti"]
    cert = verify_complex(cx)
    report["exact"] = cert["ok"]
    report["minimal"] = cert["minimal"]
    report["ok"] = all(v for k, v in report.items() if k not in ("name", "engine"))
    return report


def cmd_verify(args, out):
    if args.fixture:
        fixtures = load_fixtures()
        if args.fixture != "all":
            fixtures = [f for f in fixtures if f["name"] == args.fixture]
            if not fixtures:
                raise UsageError(f"unknown fixture {args.fixture!r}")
        reports = [_verify_fixture(f, args.field) for f in fixtures]
    else:
        if not args.complex:
            raise UsageError("verify needs a complex file or --fixture")
        data = _load_json(args.complex)
        if "ideal" not in data:
            raise UsageError("stored complex lacks its ideal")
        ideal = SstIdeal.from_dict(data["ideal"])
        if data.get("engine") == "ek":
            cx = ek_resolution(ideal, field=args.field)
            same = cx.to_dict()["terms"] == data.get("terms")
            cert = verify_complex(cx)
            cert["ok"] = cert["ok"] and same
            cert["terms_match"] = same
        else:
            cx = shift_complex_from_dict(data, ideal, args.field)
            cert = verify_complex(cx)
        cert["ok"] = cert["ok"] and cert["minimal"]
        reports = [dict(cert, name=args.complex)]
    ok = all(r["ok"] for r in reports)
    if args.json:
        out.append(json.dumps(reports, sort_keys=True))
    else:
        for r in reports:
            out.append(f"{r['name']}: {'pass' if r['ok'] else 'FAIL'}")
    return ok


def cmd_ulex(args, out):
    values = _int_list(args.values)
    fn = ulex_gamma if args.side == "gamma" else ulex_lambda
    ideal = fn(values, args.truncate, alphabet="x" if args.side == "gamma" else "y")
    ok = True
    if args.check:
        ok = verify_ulex_duality(values)
    if args.json:
        payload = ideal.to_dict()
        if args.check:
            payload = {"ideal": payload, "duality": ok}
        out.append(json.dumps(payload, sort_keys=True))
    else:
        out.append(_ideal_text(ideal))
        if args.check:
            out.append(f"duality: {'pass' if ok else 'FAIL'}")
    return ok


def cmd_isotone(args, out):
    f = parse_isotone(args.map)
    if args.op == "dual":
        g = dual_map(f)
        out.append(json.dumps({"map": str(g)}) if args.json else str(g))
    else:
        u = gamma(f) if args.op == "gamma" else lambda_(f)
        out.append(json.dumps({"monomial": str(u)}) if args.json else str(u))
    return True


def _delta_args(text: str):
    vals = _int_list(text)
    if len(vals) != 2 or vals[0] < 1:
        raise UsageError("--delta takes L,n for Delta_L(n) with L >= 1")
    return vals[0] - 1, vals[1]


def cmd_degree_map(args, out):
    m, n = _delta_args(args.delta)
    image = degree_map(_int_list(args.value), m, n)
    out.append(json.dumps({"image": list(image)}) if args.json else ",".join(map(str, image)))
    return True


def cmd_shiftmod(args, out):
    module = FiniteShiftModule.from_dict(_load_json(args.module))
    if args.op == "validate":
        report = validate(module)
        if args.json:
            out.append(json.dumps(report, sort_keys=True))
        else:
            out.append("valid" if report["valid"] else "invalid")
            out.extend(f"  {v}" for v in report["violations"])
        return report["valid"]
    if args.op == "dual":
        out.append(dual_module(module).to_json())
        return True
    if args.op == "degree-map":
        rows = [[list(d), list(degree_map(d, module.m, module.n)), module.dim(d)]
                for d in module.support()]
        if args.json:
            out.append(json.dumps(rows))
        else:
            for d, img, k in rows:
                out.append(f"{','.join(map(str, d))} -> {','.join(map(str, img))}  dim {k}")
        return True
    bound = args.bound if args.bound is not None else module.n + 2
    table = expand(module, bound)
    rtf = rear_torsion_free_report(table)
    dims = [[list(a), table.dim(a)] for a in table.degrees() if table.dim(a)]
    if args.json:
        out.append(json.dumps({"bound": bound, "dims": dims,
                               "rear_torsion_free": rtf["rear_torsion_free"]}, sort_keys=True))
    else:
        for a, k in dims:
            out.append(f"{','.join(map(str, a))}\t{k}")
        out.append(f"rear torsion-free: {str(rtf['rear_torsion_free']).lower()}")
    return True


def _oracle_complement(args):
    ideal = _ideal_arg(args)
    m, n = (_int_list(args.box) + [None, None])[:2]
    if m is None or n is None:
        raise UsageError("--box takes m,n")
    result = dual(ideal, args.max_candidates)
    maps = [gamma_inv(g) for g in ideal.gens]
    checked = 0
    for f in enumerate_box(m, n, args.max_candidates):
        g = embed_box_map(f)
        if not g.is_large:
            continue
        checked += 1
        h = dual_map(g)
        in_complement = not any(leq(h, k) for k in maps)
        if member(gamma(g), result) != in_complement:
            return {"property": "duality-complement", "pass": False, "checked": checked,
                    "counterexample": str(g)}
        if h.is_small and dual_member(h, ideal) != member(lambda_(h), result):
            return {"property": "duality-complement", "pass": False, "checked": checked,
                    "counterexample": str(h)}
    return {"property": "duality-complement", "pass": True, "checked": checked}


def _oracle_involution(args):
    m, n = (_int_list(args.box) + [None, None])[:2]
    if m is None or n is None:
        raise UsageError("--box takes m,n")
    maps = list(enumerate_box(m, n, args.max_candidates))
    duals = [dual_map(f) for f in maps]
    for f, g in zip(maps, duals):
        if dual_map(g) != f:
            return {"property": "involution", "pass": False, "counterexample": str(f)}
    for i, f in enumerate(maps):
        for j, g in enumerate(maps):
            if leq(f, g) != leq(duals[j], duals[i]):
                return {"property": "order-reversal", "pass": False,
                        "counterexample": [str(f), str(g)]}
            if lex_cmp(f, g) != lex_cmp(duals[j], duals[i]):
                return {"property": "lex-reversal", "pass": False,
                        "counterexample": [str(f), str(g)]}
    return {"property": "involution", "pass": True, "maps": len(maps)}


def _oracle_ek_betti(args):
    ideal = _ideal_arg(args)
    complex_table = betti_rows(ek_resolution(ideal, field=args.field).betti())
    closed = betti_rows(ek_betti_closed_form(ideal))
    return {"property": "ek-betti", "pass": complex_table == closed,
            "complex": complex_table, "closed_form": closed}


def _oracle_double_dual(args):
    rng = random.Random(args.seed)
    for _ in range(args.count):
        ideal = random_sst_ideal(rng)
        d = dual(ideal, args.max_candidates)
        if not equals(dual(d, args.max_candidates), ideal) or not equals(d, dual_via_intersection(ideal)):
            return {"property": "double-dual", "pass": False, "counterexample": ideal.to_dict()}
    return {"property": "double-dual", "pass": True, "count": args.count, "seed": args.seed}


ORACLES = {
    "duality-complement": _oracle_complement,
    "involution": _oracle_involution,
    "ek-betti": _oracle_ek_betti,
    "double-dual": _oracle_double_dual,
}


def cmd_oracle(args, out):
    report = ORACLES[args.property](args)
    if args.json:
        out.append(json.dumps(report, sort_keys=True))
    else:
        extra = {k: v for k, v in report.items() if k not in ("property", "pass")}
        detail = " ".join(f"{k}={json.dumps(v, sort_keys=True)}" for k, v in sorted(extra.items()))
        out.append(f"{report['property']}: {'pass' if report['pass'] else 'FAIL'} {detail}".rstrip())
    return report["pass"]


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def flags(p, suppress):
        # subcommands must not overwrite global flags given before the verb
        dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p.add_argument("--json", action="store_true", default=dflt(False),
                       help="machine-readable output")
        p.add_argument("--field", default=dflt(None), help="prime:<p> or rational")
        p.add_argument("--seed", type=int, default=dflt(DEFAULT_SEED))
        p.add_argument("--max-candidates", type=int, default=dflt(DEFAULT_MAX_CANDIDATES))
        return p

    common = flags(_Parser(add_help=False), suppress=True)
    parser = flags(_Parser(prog="borelkit",
                           description="Strongly stable ideals, duality, shift modules and resolutions."),
                   suppress=False)
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)

    def verb(name, fn, help_text, ideal=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        if ideal:
            p.add_argument("ideal", nargs="?", help="inline generators, JSON text or a JSON file")
            p.add_argument("--gens", help="inline generators, e.g. 'x1^2, x1*x2'")
        return p

    p = verb("dual", cmd_dual, "dual of a strongly stable ideal", ideal=True)
    p.add_argument("--check", action="store_true", help="cross-check engines and the double dual")

    p = verb("gens", cmd_gens, "generators of an ideal", ideal=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--sst", action="store_true", help="strongly stable generators (default)")
    g.add_argument("--monomial", action="store_true", help="minimal monomial generators")

    p = verb("member", cmd_member, "ideal membership", ideal=True)
    p.add_argument("--monomial", required=True)

    p = verb("hilb", cmd_hilb, "Hilbert function of the ideal", ideal=True)
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--vars", type=int, required=True)

    for name, fn, text in (("resolve", cmd_resolve, "resolution as JSON"),
                           ("betti", cmd_betti, "graded Betti table")):
        p = verb(name, fn, text, ideal=True)
        p.add_argument("--engine", choices=["koszul", "minimal-shift", "ek"], default="minimal-shift")
        p.add_argument("--mode", choices=["ideal", "quotient"], default="ideal")
        p.add_argument("--box", help="m,n for the shift-module box (defaults from the ideal)")

    p = verb("verify", cmd_verify, "re-check a stored complex or a bundled fixture")
    p.add_argument("complex", nargs="?")
    p.add_argument("--fixture", help="fixture name or 'all'")

    p = verb("ulex", cmd_ulex, "universal lex-segment ideals")
    p.add_argument("--values", required=True)
    p.add_argument("--side", choices=["gamma", "lambda"], default="gamma")
    p.add_argument("--truncate", type=int)
    p.add_argument("--check", action="store_true", help="verify the duality of the two sides")

    p = verb("isotone", cmd_isotone, "operations on isotone maps")
    p.add_argument("op", choices=["dual", "gamma", "lambda"])
    p.add_argument("map", help="e.g. '[2,2,4,5,5,7|inf]'")

    p = verb("degree-map", cmd_degree_map, "degree correspondence Delta_{m+1}(n) -> Delta_{n+1}(m)")
    p.add_argument("--delta", required=True, help="L,n for Delta_L(n)")
    p.add_argument("--value", required=True)

    p = verb("shiftmod", cmd_shiftmod, "finite shift modules (JSON files)")
    p.add_argument("op", choices=["validate", "dual", "expand", "degree-map"])
    p.add_argument("module")
    p.add_argument("--bound", type=int)

    p = verb("oracle", cmd_oracle, "brute-force property checks")
    p.add_argument("property", choices=sorted(ORACLES))
    p.add_argument("--gens")
    p.set_defaults(ideal=None)
    p.add_argument("--box")
    p.add_argument("--count", type=int, default=50)
    return parser


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out: List[str] = []
    try:
        args = build_parser().parse_args(argv)
        if args.verb is None:
            raise UsageError("missing command")
        args.field = Field.parse(args.field) if args.field else Field.default()
        ok = args.func(args, out)
    except UnrepresentableClass as exc:
        print(f"error: not representable: {exc}", file=stderr)
        return 2
    except (BorelError, ValueError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {msg}", file=stderr)
        return 2
    for line in out:
        print(line, file=stdout)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
