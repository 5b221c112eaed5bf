"""Command-line front end: ``logmc <command> <input>``.

Commands on an arrangement file (text format: first line the ambient
dimension, then one integer linear form per line, ``#`` for comments):

  lattice    intersection lattice nodes with dimensions and Möbius values
  charpoly   characteristic polynomial of the lattice
  exponents  candidate exponents via integer factorisation of charpoly
  mc         motivic Chern class of the complement; routes: lattice,
             charpoly, exponents, or all (computed and cross-checked)
  logclass   twisted total logarithmic-form class from exponents
  diff       difference of the motivic and logarithmic classes + is_zero
  csm        CSM class from both sides plus the exponent product, compared
  euler      Euler characteristic (degree-0 CSM coefficient), cross-checked
             against the Möbius-dimension sum of the lattice

and on a singularity JSON file ({"poly": "x^2 - y^3"} or
{"mu": ..., "tau": ..., "r": ...}, a single object or a list):

  curve      per-singularity difference-class weights (a, b)

Exit codes: 0 success; 1 parse/validation error; 2 detected mathematical
inconsistency (route disagreement, failed exact division) with a diagnostic
payload.

Note on exponents: a split characteristic polynomial yields *candidate*
exponents only; splitting does not certify that the cone is free; a
non-split polynomial does certify that it is not free with integer
exponents.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import arrangement as arrmod
from . import curves as curvemod
from . import hirzebruch as hzmod
from . import kring
from .errors import InconsistencyError, ValidationError

TERAO_NOTE = ("candidate exponents only: a split characteristic polynomial does not "
              "certify freeness; a non-split one certifies the cone is not free "
              "with integer exponents")

_ROUTE_ORDER = ("lattice", "charpoly", "exponents")


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    output_format: str = "text"
    mc_route: str = "all"
    exponents_override: tuple = None
    basis: str = None
    max_lattice_nodes: int = 100000


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def build_parser():
    parser = _ArgumentParser(
        prog="logmc",
        description="exact characteristic classes of free divisors: "
                    "hyperplane arrangements and plane-curve singularities",
        epilog=TERAO_NOTE)
    sub = parser.add_subparsers(dest="command", required=True)
    command_help = {
        "lattice": "intersection lattice with Möbius values",
        "charpoly": "characteristic polynomial",
        "exponents": "candidate exponents (integer roots of charpoly)",
        "mc": "motivic Chern class of the complement",
        "logclass": "twisted logarithmic-form class",
        "diff": "difference class and is_zero verdict",
        "csm": "CSM class comparison at y = -1",
        "euler": "Euler characteristic of the complement",
        "curve": "difference-class weights of curve singularities",
    }
    for name, help_text in command_help.items():
        sp = sub.add_parser(name, help=help_text,
                            epilog=TERAO_NOTE if name == "exponents" else None)
        sp.add_argument("input", help="input file")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if name in ("mc", "diff", "csm", "euler"):
            sp.add_argument("--route", choices=("lattice", "charpoly", "exponents", "all"),
                            default="all")
        if name in ("mc", "logclass", "diff", "csm", "euler"):
            sp.add_argument("--exponents", default=None, metavar="e1,e2,...",
                            help="override the candidate exponents")
        if name in ("mc", "logclass", "diff"):
            sp.add_argument("--basis", choices=("s", "one_minus_s"), default=None,
                            help="basis for rendered K-classes "
                                 "(default: one_minus_s for text, s for json)")
    return parser


def config_from_args(argv=None):
    args = build_parser().parse_args(argv)
    exps = None
    raw = getattr(args, "exponents", None)
    if raw is not None:
        try:
            exps = tuple(int(tok) for tok in raw.split(",") if tok.strip())
        except ValueError:
            raise ValidationError(f"--exponents expects comma-separated integers, got {raw!r}") from None
        if not exps:
            raise ValidationError("--exponents is empty")
    try:
        max_nodes = int(os.environ.get("LOGMC_MAX_LATTICE", "100000"))
    except ValueError:
        raise ValidationError("LOGMC_MAX_LATTICE must be an integer") from None
    return RunConfig(command=args.command,
                     input_path=args.input,
                     output_format=args.format,
                     mc_route=getattr(args, "route", "all"),
                     exponents_override=exps,
                     basis=getattr(args, "basis", None),
                     max_lattice_nodes=max_nodes)


def _poly_str(coeffs, symbol):
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            term = str(mag)
        else:
            base = symbol if k == 1 else f"{symbol}^{k}"
            term = base if mag == 1 else f"{mag}*{base}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def _kpoly_lines(p, basis):
    symbol = "s" if basis == "s" else "(1-s)"
    if p.is_zero():
        return ["0"]
    lines = []
    for k, c in enumerate(p.coeffs):
        row = c.coeffs if basis == "s" else c.in_one_minus_s_basis()
        lines.append(f"y^{k}: {_poly_str(row, symbol)}")
    return lines


def _cohclass_str(c):
    return _poly_str(c.coeffs, "h")


def _exponents_str(exps):
    return "{" + ",".join(str(e) for e in exps) + "}"


def _read_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e}") from None


def _resolve_exponents(arr, chi, config):
    """Candidate exponents from an override or a Terao split; None if absent.

    A nonpositive-root inconsistency (non-essential arrangement) counts as
    "no usable exponent data" here; the ``exponents`` command itself still
    reports it.
    """
    if config.exponents_override is not None:
        return tuple(sorted(config.exponents_override))
    try:
        result = arrmod.exponents_via_terao(chi)
    except InconsistencyError:
        return None
    if result.splits and result.exponents and 1 in result.exponents:
        return result.exponents
    return None


def _mc_routes(lat, chi, exps, config):
    """Requested motivic Chern class routes, cross-checked for agreement."""
    n = lat.ambient_dim - 1
    route = config.mc_route
    routes = {}
    if route in ("lattice", "all"):
        routes["lattice"] = kring.mc_complement_lattice_sum(lat)
    if route in ("charpoly", "all"):
        routes["charpoly"] = kring.mc_complement_charpoly(chi, n)
    if route in ("exponents", "all"):
        if exps is not None:
            routes["exponents"] = kring.mc_free_exponents(exps, n)
        elif route == "exponents":
            raise ValidationError(
                "mc route 'exponents' needs exponent data: the characteristic "
                "polynomial does not split usably and no --exponents override was given")
    values = list(routes.values())
    if any(v != values[0] for v in values[1:]):
        raise InconsistencyError(
            "motivic Chern class routes disagree",
            details={"routes": {k: kring.kpoly_to_json(v) for k, v in routes.items()}})
    return routes


def _mc_value(routes):
    for name in _ROUTE_ORDER:
        if name in routes:
            return routes[name]
    raise ValidationError("no motivic Chern class route available")


def _cmd_lattice(arr, config):
    lat = arrmod.build_lattice(arr, max_nodes=config.max_lattice_nodes)
    nodes = []
    lines = [f"ambient_dim {lat.ambient_dim}, {len(lat)} nodes"]
    for node, mu in zip(lat.nodes, lat.mobius):
        matrix = [[str(v) for v in row] for row in node.matrix]
        nodes.append({"dim": node.dim, "mobius": mu, "matrix": matrix})
        rendered = "; ".join(" ".join(row) for row in matrix) or "(ambient)"
        lines.append(f"dim {node.dim}  mobius {mu:3d}  [{rendered}]")
    payload = {"ambient_dim": lat.ambient_dim, "node_count": len(lat), "nodes": nodes}
    return payload, lines


def _cmd_charpoly(arr, config):
    lat = arrmod.build_lattice(arr, max_nodes=config.max_lattice_nodes)
    chi = arrmod.characteristic_polynomial(lat)
    payload = {"coefficients": list(chi.coeffs), "rendered": str(chi)}
    return payload, [str(chi)]


def _cmd_exponents(arr, config):
    lat = arrmod.build_lattice(arr, max_nodes=config.max_lattice_nodes)
    chi = arrmod.characteristic_polynomial(lat)
    result = arrmod.exponents_via_terao(chi)
    if result.splits:
        payload = {"splits": True, "exponents": list(result.exponents)}
        lines = [_exponents_str(result.exponents), f"note: {TERAO_NOTE}"]
    else:
        payload = {"splits": False,
                   "remaining_factor": {"coefficients": list(result.remaining.coeffs),
                                        "rendered": str(result.remaining)}}
        lines = [f"does not split: no integer root of {result.remaining}",
                 "certified: the cone is not free with integer exponents"]
    return payload, lines


def _cmd_mc(arr, config):
    n = arr.ambient_dim - 1
    lat = arrmod.build_lattice(arr, max_nodes=config.max_lattice_nodes)
    chi = arrmod.characteristic_polynomial(lat)
    exps = _resolve_exponents(arr, chi, config)
    routes = _mc_routes(lat, chi, exps, config)
    json_basis = config.basis or "s"
    text_basis = config.basis or "one_minus_s"
    payload = {"n": n, "mc_route": config.mc_route,
               "routes": {k: kring.kpoly_to_json(v, basis=json_basis) for k, v in routes.items()}}
    lines = []
    if len(routes) > 1:
        payload["agree"] = True
        lines.append(f"routes {', '.join(routes)} agree")
    for name, value in routes.items():
        lines.append(f"[{name}]")
        lines.extend(_kpoly_lines(value, text_basis))
    return payload, lines


def _cmd_logclass(arr, config):
    n = arr.ambient_dim - 1
    lat = arrmod.build_lattice(arr, max_nodes=config.max_lattice_nodes)
    chi = arrmod.characteristic_polynomial(lat)
    exps = _resolve_exponents(arr, chi, config)
    if exps is None:
        raise ValidationError("no exponent data: characteristic polynomial does not "
                              "split usably and no --exponents override was given")
    value = kring.log_class_free(exps, n)
    json_basis = config.basis or "s"
    text_basis = config.basis or "one_minus_s"
    payload = {"n": n, "exponents": list(exps),
               "log_class": kring.kpoly_to_json(value, basis=json_basis)}
    lines = [f"exponents {_exponents_str(exps)}"] + _kpoly_lines(value, text_basis)
    return payload, lines


def _cmd_diff(arr, config):
    n = arr.ambient_dim - 1
    lat = arrmod.build_lattice(arr, max_nodes=config.max_lattice_nodes)
    chi = arrmod.characteristic_polynomial(lat)
    exps = _resolve_exponents(arr, chi, config)
    if exps is None:
        raise ValidationError("no exponent data: characteristic polynomial does not "
                              "split usably and no --exponents override was given")
    routes = _mc_routes(lat, chi, exps, config)
    value = _mc_value(routes) - kring.log_class_free(exps, n)
    json_basis = config.basis or "s"
    text_basis = config.basis or "one_minus_s"
    payload = {"n": n, "mc_route": config.mc_route, "exponents": list(exps),
               "difference": kring.kpoly_to_json(value, basis=json_basis),
               "is_zero": value.is_zero()}
    lines = _kpoly_lines(value, text_basis) + [f"is_zero: {str(value.is_zero()).lower()}"]
    return payload, lines


def _cmd_csm(arr, config):
    lat = arrmod.build_lattice(arr, max_nodes=config.max_lattice_nodes)
    chi = arrmod.characteristic_polynomial(lat)
    n = arr.ambient_dim - 1
    exps = _resolve_exponents(arr, chi, config)
    routes = _mc_routes(lat, chi, exps, config)
    csm_mc = hzmod.csm_at_minus_one(_mc_value(routes))
    payload = {"n": n, "csm_mc": hzmod.cohclass_to_json(csm_mc)}
    lines = [f"csm(mc):      {_cohclass_str(csm_mc)}"]
    if exps is not None:
        csm_log = hzmod.csm_at_minus_one(kring.log_class_free(exps, n))
        product = hzmod.chern_class_free_exponents(exps, n)
        payload["csm_log"] = hzmod.cohclass_to_json(csm_log)
        payload["chern_product"] = hzmod.cohclass_to_json(product)
        payload["exponents"] = list(exps)
        payload["equal_mc_log"] = csm_mc == csm_log
        payload["equal_mc_product"] = csm_mc == product
        lines.append(f"csm(log):     {_cohclass_str(csm_log)}")
        lines.append(f"product:      {_cohclass_str(product)}   (exponents {_exponents_str(exps)})")
        lines.append(f"all equal: {str(csm_mc == csm_log == product).lower()}")
    else:
        payload["note"] = "no candidate exponents: log side and product unavailable"
        lines.append("no candidate exponents: log side and product unavailable")
    euler = hzmod.euler_characteristic(csm_mc)
    payload["euler_characteristic"] = str(euler)
    lines.append(f"euler characteristic: {euler}")
    return payload, lines


def _cmd_euler(arr, config):
    lat = arrmod.build_lattice(arr, max_nodes=config.max_lattice_nodes)
    chi = arrmod.characteristic_polynomial(lat)
    exps = _resolve_exponents(arr, chi, config) if (
        config.exponents_override or config.mc_route in ("exponents", "all")) else None
    routes = _mc_routes(lat, chi, exps, config)
    csm_mc = hzmod.csm_at_minus_one(_mc_value(routes))
    euler = hzmod.euler_characteristic(csm_mc)
    mobius_sum = sum(mu * node.dim for node, mu in zip(lat.nodes, lat.mobius))
    if euler != mobius_sum:
        raise InconsistencyError(
            f"degree-0 CSM coefficient {euler} differs from the "
            f"Möbius-dimension sum {mobius_sum}",
            details={"csm": hzmod.cohclass_to_json(csm_mc), "mobius_sum": mobius_sum})
    payload = {"euler_characteristic": str(euler), "mobius_dimension_sum": mobius_sum}
    lines = [f"euler characteristic: {euler}",
             f"mobius-dimension sum: {mobius_sum} (agrees)"]
    return payload, lines


def _cmd_curve(config):
    text = _read_file(config.input_path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"invalid JSON in {config.input_path}: {e}") from None
    entries = data if isinstance(data, list) else [data]
    sings = [curvemod.singularity_from_json(obj) for obj in entries]
    dc = curvemod.difference_class_curve(sings)
    csm_weights = curvemod.csm_minus_chern_curve(sings)
    payload = {
        "singularities": [{"mu": s.mu, "tau": s.tau, "r": s.r, "delta": s.delta}
                          for s in sings],
        "pairs": [list(pair) for pair in dc.pairs],
        "total": list(dc.total),
        "is_zero": dc.is_zero(),
        "genus_defects": [curvemod.genus_defect(s) for s in sings],
        "csm_minus_chern": csm_weights,
    }
    lines = []
    for s, (a, b) in zip(sings, dc.pairs):
        lines.append(f"mu={s.mu} tau={s.tau} r={s.r} delta={s.delta}  ->  "
                     f"({a}) + ({b})*y  per point class")
    ta, tb = dc.total
    lines.append(f"total: ({ta}) + ({tb})*y")
    lines.append(f"is_zero: {str(dc.is_zero()).lower()}")
    return payload, lines


def _dispatch(config):
    if config.command == "curve":
        return _cmd_curve(config)
    arr = arrmod.parse_arrangement(_read_file(config.input_path))
    handlers = {
        "lattice": _cmd_lattice,
        "charpoly": _cmd_charpoly,
        "exponents": _cmd_exponents,
        "mc": _cmd_mc,
        "logclass": _cmd_logclass,
        "diff": _cmd_diff,
        "csm": _cmd_csm,
        "euler": _cmd_euler,
    }
    return handlers[config.command](arr, config)


def run(config):
    """Execute a configured command; returns (exit_code, report)."""
    try:
        payload, lines = _dispatch(config)
    except ValidationError as e:
        if config.output_format == "json":
            return 1, json.dumps({"error": str(e), "kind": "validation"}, indent=2)
        return 1, f"error: {e}"
    except InconsistencyError as e:
        body = {"error": str(e), "kind": "inconsistency"}
        if e.details is not None:
            body["details"] = e.details
        if config.output_format == "json":
            return 2, json.dumps(body, indent=2)
        return 2, f"inconsistency: {e}\n{json.dumps(body.get('details'), indent=2)}"
    if config.output_format == "json":
        return 0, json.dumps(payload, indent=2)
    return 0, "\n".join(lines)


def main(argv=None):
    try:
        config = config_from_args(argv)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    code, report = run(config)
    print(report, file=sys.stdout if code == 0 else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
