"""Command-line interface: JSON in, deterministic JSON out.

Exit codes: 0 success, 1 validation or diagnostic failure (details on stderr
as JSON), 2 malformed input.  Output is line-oriented JSON with sorted keys
and canonical "p/q" rationals, so identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .numpoly import stabilization_bound
from .hntype import (
    HNTypeError,
    OutOfRange,
    hnt_leq,
    polygon_of,
    quotient_shift,
    type_from_json,
    type_to_json,
)
from .lattice import (
    LatticeError,
    SplittingType,
    enumerate_admissible_chains,
    hn_closed_form,
    hn_filtration,
    is_semistable,
    lattice_from_json,
    lattice_from_splitting,
    validate_lattice,
)
from .family import FamilyError, family_from_json
from .numpoly import poly_to_json


class MalformedInput(Exception):
    pass


def _emit(payload, stream=None) -> None:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    print(text, file=stream or sys.stdout)


def _load(path):
    try:
        with open(path, "r", encoding="ascii") as handle:
            return json.load(handle)
    except (OSError, ValueError) as exc:
        raise MalformedInput(f"{path}: {exc}") from exc


def _load_type(path):
    data = _load(path)
    try:
        rows = [[Fraction(str(c)) for c in p] for p in data]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"{path}: {exc}") from exc
    # fraction syntax is a schema concern; type conditions are diagnostics
    return type_from_json([[str(c) for c in row] for row in rows])


def _node_json(node):
    return list(node) if isinstance(node, tuple) else str(node)


def _filtration_json(filt) -> dict:
    return {
        "steps": [_node_json(v) for v in filt.steps],
        "graded": [poly_to_json(g) for g in filt.graded],
    }


def _decimal(value: Fraction, places: int = 3) -> str:
    scaled = value * 10**places
    whole, frac = divmod(scaled.numerator, scaled.denominator)
    del frac
    sign = "-" if whole < 0 else ""
    whole = abs(whole)
    return f"{sign}{whole // 10 ** places}.{whole % 10 ** places:0{places}d}"


def _write_svg(path, points) -> None:
    """Standalone SVG polyline through (x, y) pairs of Fractions."""
    width, height, margin = 400, 300, 20
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x_span = (max(xs) - min(xs)) or Fraction(1)
    y_span = (max(ys) - min(ys)) or Fraction(1)
    coords = []
    for x, y in points:
        px = margin + (x - min(xs)) * (width - 2 * margin) / x_span
        py = height - margin - (y - min(ys)) * (height - 2 * margin) / y_span
        coords.append((px, py))
    path_data = " ".join(
        f"{'M' if i == 0 else 'L'} {_decimal(px)} {_decimal(py)}"
        for i, (px, py) in enumerate(coords)
    )
    body = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'  <path d="{path_data}" fill="none" stroke="black" stroke-width="2"/>\n'
        "</svg>\n"
    )
    with open(path, "w", encoding="ascii") as handle:
        handle.write(body)


def _cmd_validate_type(args) -> int:
    tau = _load_type(args.input)
    _emit({"valid": True, "length": len(tau), "type": type_to_json(tau)})
    return 0


def _cmd_compare_types(args) -> int:
    if len(args.type) != 2:
        raise MalformedInput("compare-types needs exactly two --type arguments")
    tau1 = _load_type(args.type[0])
    tau2 = _load_type(args.type[1])
    forward = hnt_leq(tau1, tau2)
    backward = hnt_leq(tau2, tau1)
    if forward and backward:
        relation = "EQ"
    elif forward:
        relation = "LEQ"
    elif backward:
        relation = "GEQ"
    else:
        relation = "INCOMPARABLE"
    _emit({"relation": relation})
    return 0


def _cmd_polygon(args) -> int:
    tau = _load_type(args.input)
    polygon = polygon_of(tau)
    if args.at is not None:
        at = args.at
    else:
        polys = [v.f for v in polygon.vertices]
        at = max(
            stabilization_bound(f, g)
            for i, f in enumerate(polys)
            for g in polys[i + 1 :]
        )
    points = [(v.a, v.f(at)) for v in polygon.vertices]
    payload = {
        "at": at,
        "vertices": [{"r": int(a), "value": str(y)} for a, y in points],
    }
    if args.svg:
        _write_svg(args.svg, points)
        payload["svg"] = args.svg
    _emit(payload)
    return 0


def _cmd_hn(args) -> int:
    data = _load(args.input)
    if not isinstance(data, dict):
        raise MalformedInput(f"{args.input}: expected a JSON object")
    if "degrees" in data:
        try:
            splitting = SplittingType.from_json(data)
        except (TypeError, ValueError, KeyError) as exc:
            raise MalformedInput(f"{args.input}: {exc}") from exc
        lattice = lattice_from_splitting(splitting)
    else:
        try:
            lattice = lattice_from_json(data)
        except (TypeError, KeyError) as exc:
            raise MalformedInput(f"{args.input}: {exc}") from exc
        validate_lattice(lattice)
        splitting = None
    filt = hn_filtration(lattice)
    tau = filt.type()
    payload = {
        "type": type_to_json(tau),
        "filtration": _filtration_json(filt),
        "length": len(filt),
        "semistable": is_semistable(lattice),
    }
    if args.oracle:
        if splitting is not None:
            other = hn_closed_form(splitting)
            if other != filt:
                raise LatticeError("closed-form oracle disagrees with the lattice recursion")
        else:
            chains = enumerate_admissible_chains(lattice)
            if chains != [filt.steps]:
                raise LatticeError(
                    f"chain enumeration found {len(chains)} admissible chains"
                )
        payload["oracle"] = "match"
    _emit(payload)
    return 0


def _cmd_stratify(args) -> int:
    family = family_from_json(_load(args.input))
    witness = family.check_semicontinuity()
    if witness is not None:
        raise FamilyError(f"semicontinuity fails: {json.dumps(witness.to_json(), sort_keys=True)}")
    strat = family.stratify()
    space = family.space
    all_points = set(space.points)
    covered = set()
    for pts in strat.strata.values():
        covered |= pts
    closed_in_opens = all(
        q in strat.strata[tau]
        for tau, stratum in strat.strata.items()
        for p in stratum
        for q in space.specializations(p)
        if q in strat.leq_opens[tau]
    )
    payload = strat.to_json()
    payload["checks"] = {
        "semicontinuity": "ok",
        "strata_partition_the_space": covered == all_points
        and sum(len(p) for p in strat.strata.values()) == len(all_points),
        "opens_are_open": all(space.is_open(u) for u in strat.leq_opens.values()),
        "strata_closed_in_opens": closed_in_opens,
    }
    if args.tau:
        tau = _load_type(args.tau)
        stratum = family.recursive_stratify(tau)
        payload["recursive_stratum"] = sorted(str(p) for p in stratum)
        payload["matches_level_set"] = True
    _emit(payload)
    return 0


def _cmd_check_family(args) -> int:
    family = family_from_json(_load(args.input))
    witness = family.check_semicontinuity()
    if witness is not None:
        raise FamilyError(f"semicontinuity fails: {json.dumps(witness.to_json(), sort_keys=True)}")
    _emit({"semicontinuity": "ok", "points": len(family.space.points)})
    return 0


def _cmd_shift(args) -> int:
    tau = _load_type(args.input)
    _emit({"type": type_to_json(quotient_shift(tau))})
    return 0


_COMMANDS = {
    "validate-type": _cmd_validate_type,
    "compare-types": _cmd_compare_types,
    "polygon": _cmd_polygon,
    "hn": _cmd_hn,
    "stratify": _cmd_stratify,
    "check-family": _cmd_check_family,
    "shift": _cmd_shift,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hnstrat",
        description="Harder-Narasimhan types, filtrations and stratification, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-type", help="validate an HN type file")
    p.add_argument("--input", required=True)

    p = sub.add_parser("compare-types", help="compare two HN type files")
    p.add_argument("--type", action="append", required=True)

    p = sub.add_parser("polygon", help="emit the polygon of a type, sliced at an integer")
    p.add_argument("--input", required=True)
    p.add_argument("--at", type=int)
    p.add_argument("--svg")

    p = sub.add_parser("hn", help="HN filtration of a lattice or splitting-type file")
    p.add_argument("--input", required=True)
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("stratify", help="stratify a family file")
    p.add_argument("--input", required=True)
    p.add_argument("--tau", help="also run the recursive construction for this type")

    p = sub.add_parser("check-family", help="semicontinuity check only")
    p.add_argument("--input", required=True)

    p = sub.add_parser("shift", help="quotient shift of a type")
    p.add_argument("--input", required=True)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except MalformedInput as exc:
        _emit({"error": "MalformedInput", "message": str(exc)}, sys.stderr)
        return 2
    except (HNTypeError, OutOfRange, LatticeError, FamilyError, ValueError) as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        index = getattr(exc, "index", None)
        if index is not None:
            payload["index"] = index
        _emit(payload, sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
