"""Command-line front end.

Exit status: 0 on success or a true verdict, 1 on a false verdict or a
failing suite, 2 on usage, input, or library errors.  Diagnostics go to
stderr as ``error[CODE]: message``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field as dc_field

from . import jsonio
from .bilattice import (
    GroupShape,
    bb_side,
    bl_type,
    borel_unipotent_report,
    check_extension_dominance,
    is_good,
    is_strict_bl_map,
)
from .errors import LatticeworkError
from .filtration import flag_type, rees_lattice
from .harness import SUITES, TrialConfig, replay, run_suite
from .lattice import relative_type, standard_lattice
from .polygon import (
    admissibility_report,
    basic_element,
    compact_mod_center,
    is_basic_for_shape,
    mazur_member,
    polygon_of,
    render_svg,
    tate_anchor,
)
from .scalar import parse_field

NO_INPUT = {"tate", "verify"}


class UsageError(LatticeworkError):
    code = "E_USAGE"


class InputError(LatticeworkError):
    code = "E_JSON"


@dataclass
class Request:
    command: str
    payload: object
    options: argparse.Namespace


@dataclass
class Response:
    body: dict
    verdict: bool = True
    polygons: dict = dc_field(default_factory=dict)


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS, help="Q or Fp:<prime> (default Q)")
    common.add_argument("--format", choices=("json", "text", "svg"), default=argparse.SUPPRESS)
    common.add_argument("--in", dest="input", metavar="PATH", default=argparse.SUPPRESS,
                        help="input JSON file (default: stdin)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="latticework",
        description="Lattice, filtration and polygon invariants over K((t)).",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    add("type", "Cartan type of a lattice pair {L1, L2}")
    p = add("bb", "BB filtration of one side of a lattice pair")
    p.add_argument("--side", type=int, choices=(1, 2), default=2)
    add("rees", "canonical lattice of a flag")
    p = add("good", "goodness of a block-upper-triangular element")
    p.add_argument("--shape", type=_int_list, help="block sizes, e.g. 1,1")
    add("borel", "unipotent integrality report {u, mu}")
    add("strict", "strictness of a map of lattice pairs {f, source, target}")
    add("extcheck", "dominance for a strict extension {S, V, Q, incl, proj}")
    add("mazur", "Mazur inequality {nu, mu}")
    p = add("basic", "basic slope vector of a type")
    p.add_argument("--mu", type=_int_list)
    p.add_argument("--shape", type=_int_list)
    p.add_argument("--levi-only", action="store_true")
    add("admreport", "necessary admissibility conditions {nu, etale_type}")
    p = add("tate", "orientation anchors of a Tate object")
    p.add_argument("--k", type=int, required=True)
    add("polygon", "Newton/Hodge polygons of slopes or types")
    p = add("verify", "run verification suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.add_argument("--all", action="store_true")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--dim-max", type=int, default=4)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--replay", metavar="PATH", help="replay failures from a saved report or case")
    return parser


def _options(ns):
    ns.field = getattr(ns, "field", "Q")
    ns.format = getattr(ns, "format", "json")
    ns.input = getattr(ns, "input", None)
    ns.seed = getattr(ns, "seed", 0)
    env = os.environ.get("LATTICEWORK_SEED")
    if env is not None:
        try:
            ns.seed = int(env)
        except ValueError:
            raise UsageError(f"LATTICEWORK_SEED must be an integer, got {env!r}") from None
    try:
        ns.field = parse_field(ns.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return ns


def _read_payload(path):
    try:
        text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def parse_request(argv, stdin_payload=None) -> Request:
    ns = _options(build_parser().parse_args(argv))
    needs_input = ns.command not in NO_INPUT and not (ns.command == "basic" and ns.mu is not None)
    if ns.command == "verify" and ns.replay:
        payload = _read_payload(ns.replay)
    elif needs_input:
        payload = stdin_payload if stdin_payload is not None else _read_payload(ns.input)
    else:
        payload = None
    return Request(ns.command, payload, ns)


def _get(payload, key):
    if not isinstance(payload, dict) or key not in payload:
        raise InputError(f"input needs a {key!r} field")
    return payload[key]


def _shape(spec, n):
    if spec is None:
        return GroupShape.borel(n)
    blocks = spec["blocks"] if isinstance(spec, dict) else spec
    return GroupShape(tuple(blocks))


def _slopes(obj):
    return jsonio.slopes_from_json(obj)


def _exec_type(r):
    bs = jsonio.bilatticed_from_json(r.payload, r.options.field)
    return Response({"type": list(bl_type(bs))})


def _exec_bb(r):
    bs = jsonio.bilatticed_from_json(r.payload, r.options.field)
    flag = bb_side(bs, r.options.side)
    return Response(
        {
            "side": r.options.side,
            "flag": jsonio.flag_to_json(flag),
            "type": list(flag_type(flag)),
            "graded": {str(j): d for j, d in flag.graded_dims().items()},
        }
    )


def _exec_rees(r):
    flag = jsonio.flag_from_json(r.payload, r.options.field)
    lattice = rees_lattice(flag)
    base = standard_lattice(flag.dim, flag.field)
    return Response({"lattice": jsonio.lattice_to_json(lattice), "type": list(relative_type(base, lattice))})


def _exec_good(r):
    payload = r.payload
    if isinstance(payload, dict) and "g" in payload:
        g = jsonio.matrix_from_json(payload["g"], r.options.field, square=True)
        spec = payload.get("shape")
    else:
        g = jsonio.matrix_from_json(payload, r.options.field, square=True)
        spec = None
    if r.options.shape is not None:
        spec = r.options.shape
    rep = is_good(g, _shape(spec, len(g)))
    return Response(jsonio.to_jsonable(rep), verdict=rep.is_good)


def _exec_borel(r):
    u = jsonio.matrix_from_json(_get(r.payload, "u"), r.options.field, square=True)
    mu = _get(r.payload, "mu")
    rep = borel_unipotent_report(u, mu)
    return Response(jsonio.to_jsonable(rep), verdict=rep.verdict)


def _exec_strict(r):
    field = r.options.field
    f = jsonio.matrix_from_json(_get(r.payload, "f"), field)
    a = jsonio.bilatticed_from_json(_get(r.payload, "source"), field)
    b = jsonio.bilatticed_from_json(_get(r.payload, "target"), field)
    strict = is_strict_bl_map(f, a, b)
    return Response({"strict": strict}, verdict=strict)


def _exec_extcheck(r):
    field = r.options.field
    s, v, q = (jsonio.bilatticed_from_json(_get(r.payload, k), field) for k in ("S", "V", "Q"))
    incl = jsonio.matrix_from_json(_get(r.payload, "incl"), field)
    proj = jsonio.matrix_from_json(_get(r.payload, "proj"), field)
    rep = check_extension_dominance(s, v, q, incl, proj)
    body = jsonio.to_jsonable(rep)
    body["ord_chain"] = [{"k": k, "ord_V": a, "ord_gr": b} for k, a, b in rep.ord_chain]
    return Response(body, verdict=rep.dominates and rep.chain_ok)


def _exec_mazur(r):
    nu = _slopes(_get(r.payload, "nu"))
    mu = jsonio.type_from_json(_get(r.payload, "mu"))
    member = mazur_member(nu, mu)
    polys = {"newton": polygon_of(nu), "hodge": polygon_of(mu)}
    body = {"member": member, "polygons": {k: jsonio.polygon_to_json(p) for k, p in polys.items()}}
    return Response(body, verdict=member, polygons=polys)


def _exec_basic(r):
    mu = r.options.mu if r.options.mu is not None else _get(r.payload, "mu")
    mu = jsonio.type_from_json(list(mu))
    basic = basic_element(mu)
    body = {"basic": jsonio.to_jsonable(basic), "compact_mod_center": compact_mod_center(basic)}
    verdict = True
    if isinstance(r.payload, dict) and "nu" in r.payload:
        nu = _slopes(r.payload["nu"])
        shape = _shape(r.options.shape or r.payload.get("shape"), len(nu))
        verdict = is_basic_for_shape(nu, shape, levi_only=r.options.levi_only)
        body["nu_is_basic"] = verdict
    return Response(body, verdict=verdict)


def _exec_admreport(r):
    nu = _slopes(_get(r.payload, "nu"))
    etale = jsonio.type_from_json(_get(r.payload, "etale_type"))
    rep = admissibility_report(nu, etale)
    return Response(jsonio.to_jsonable(rep), verdict=rep.verdict_necessary)


def _exec_tate(r):
    return Response(jsonio.to_jsonable(tate_anchor(r.options.k)))


def _exec_polygon(r):
    payload = r.payload
    polys = {}
    if isinstance(payload, dict) and ("nu" in payload or "mu" in payload):
        if "nu" in payload:
            polys["newton"] = polygon_of(_slopes(payload["nu"]))
        if "mu" in payload:
            polys["hodge"] = polygon_of(jsonio.type_from_json(payload["mu"]))
    elif isinstance(payload, dict) and "type" in payload:
        polys["hodge"] = polygon_of(jsonio.type_from_json(payload))
    else:
        polys["newton"] = polygon_of(_slopes(payload))
    body = {"polygons": {k: jsonio.polygon_to_json(p) for k, p in polys.items()}}
    return Response(body, polygons=polys)


def _exec_verify(r):
    o = r.options
    if o.replay:
        return _replay(r.payload)
    names = sorted(SUITES) if o.all or not o.suite else o.suite
    cfg = TrialConfig(seed=o.seed, trials=o.trials, dim_max=o.dim_max, field=o.field, window=o.window)
    reports = [run_suite(name, cfg) for name in names]
    ok = all(rep.passed for rep in reports)
    return Response({"passed": ok, "suites": [rep.to_json() for rep in reports]}, verdict=ok)


def _replay(payload):
    if isinstance(payload, dict) and "suites" in payload:
        items = [(s["suite"], s["field"], f["input"]) for s in payload["suites"] for f in s["failures"]]
    elif isinstance(payload, dict) and "failures" in payload:
        items = [(payload["suite"], payload["field"], f["input"]) for f in payload["failures"]]
    else:
        items = [(_get(payload, "suite"), payload.get("field", "Q"), _get(payload, "input"))]
    results = []
    for suite, field, case in items:
        if case is None:
            continue
        passed, expected, got = replay(suite, case, parse_field(field))
        results.append({"suite": suite, "passed": passed, "expected": expected, "got": got})
    ok = all(x["passed"] for x in results)
    return Response({"passed": ok, "replayed": results}, verdict=ok)


DISPATCH = {
    "type": _exec_type,
    "bb": _exec_bb,
    "rees": _exec_rees,
    "good": _exec_good,
    "borel": _exec_borel,
    "strict": _exec_strict,
    "extcheck": _exec_extcheck,
    "mazur": _exec_mazur,
    "basic": _exec_basic,
    "admreport": _exec_admreport,
    "tate": _exec_tate,
    "polygon": _exec_polygon,
    "verify": _exec_verify,
}


def execute(r: Request) -> Response:
    if r.payload is not None and r.command != "verify" and not isinstance(r.payload, (dict, list)):
        raise InputError("input must be a JSON object")
    return DISPATCH[r.command](r)


def _text(body, prefix=""):
    lines = []
    for key in sorted(body):
        value = body[key]
        if isinstance(value, dict) and value and all(not isinstance(v, (dict, list)) for v in value.values()):
            inner = ", ".join(f"{k}={value[k]}" for k in sorted(value))
            lines.append(f"{prefix}{key}: {inner}")
        elif isinstance(value, (dict, list)):
            lines.append(f"{prefix}{key}: {json.dumps(value, sort_keys=True, separators=(',', ':'))}")
        else:
            lines.append(f"{prefix}{key}: {json.dumps(value) if isinstance(value, bool) else value}")
    return "\n".join(lines) + "\n"


def emit(resp: Response, fmt: str) -> tuple:
    """(output text, exit code)."""
    if fmt == "svg":
        if not resp.polygons:
            raise UsageError("svg output is only available for polygon-bearing commands")
        out = render_svg(resp.polygons)
    elif fmt == "text":
        out = _text(resp.body)
    else:
        out = json.dumps(resp.body, sort_keys=True, indent=2) + "\n"
    return out, 0 if resp.verdict else 1


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        request = parse_request(argv)
        out, code = emit(execute(request), request.options.format)
    except SystemExit as exc:  # argparse
        return int(exc.code or 0)
    except LatticeworkError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except (ValueError, TypeError, KeyError) as exc:
        print(f"error[E_INPUT]: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
