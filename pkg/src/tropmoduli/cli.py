"""Command-line entry point.

One executable, five subcommands (enumerate, complex, homology,
tropicalize-model, tropicalize-plane), machine-readable output.  Numbers in
output are exact rational strings, never floats; every byte of output is a
deterministic function of the arguments, whatever the thread count.

Exit codes: 0 success, 1 domain error (with a message on stderr), 2 usage.
Environment variables TROPMODULI_THREADS, TROPMODULI_MAX_GENERATORS,
TROPMODULI_FORMAT, and TROPMODULI_OUTPUT mirror the corresponding flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import homology as homology_mod
from .complexes import build_poset, complex_dimension, hasse_dot, link_cells
from .enumeration import enumerate_types, max_edges
from .errors import (
    ExtendedCurveError,
    GraphError,
    InternalConsistencyError,
    MalformedModelError,
    RejectedModelError,
    ResourceBoundExceeded,
    UnstableTypeError,
)
from .metric import StableModelDescription, tropicalize_model
from .plane import TropicalPolynomial, newton_subdivision, render_svg, tropical_curve

_DOMAIN_ERRORS = (
    GraphError,
    UnstableTypeError,
    MalformedModelError,
    RejectedModelError,
    ExtendedCurveError,
    ResourceBoundExceeded,
    InternalConsistencyError,
)


def _env(name: str, cast, fallback):
    raw = os.environ.get(f"TROPMODULI_{name}")
    if raw is None or raw == "":
        return fallback
    return cast(raw)


def _dump_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _add_common(parser, formats) -> None:
    parser.add_argument(
        "--format",
        choices=formats,
        default=_env("FORMAT", str, "json"),
        help="output format (default json; env TROPMODULI_FORMAT)",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=_env("THREADS", int, 1),
        help="parallelism budget; output is identical for any value",
    )
    parser.add_argument(
        "--output",
        default=_env("OUTPUT", str, None),
        help="write to this path instead of stdout",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropmoduli",
        description=(
            "Exact computations with stable weighted marked graphs, tropical "
            "moduli complexes, their rational homology, and tropical curves."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser(
        "enumerate", help="catalog all stable types of genus g with n markings"
    )
    p_enum.add_argument("--genus", type=int, required=True)
    p_enum.add_argument("--markings", type=int, required=True)
    _add_common(p_enum, ["json", "dot", "csv"])

    p_cx = sub.add_parser(
        "complex", help="face poset and link cells of the tropical moduli space"
    )
    p_cx.add_argument("--genus", type=int, required=True)
    p_cx.add_argument("--markings", type=int, required=True)
    _add_common(p_cx, ["json", "dot"])

    p_hom = sub.add_parser(
        "homology", help="reduced rational homology of the link"
    )
    p_hom.add_argument("--genus", type=int, required=True)
    p_hom.add_argument("--markings", type=int, required=True)
    p_hom.add_argument(
        "--top-weight",
        action="store_true",
        help="report top-weight cohomology ranks in csv output",
    )
    p_hom.add_argument(
        "--max-generators",
        type=int,
        default=_env("MAX_GENERATORS", int, homology_mod.DEFAULT_MAX_GENERATORS),
        help="abort if the chain complex needs more generators (0 = no cap)",
    )
    _add_common(p_hom, ["json", "csv"])

    p_model = sub.add_parser(
        "tropicalize-model", help="dual metric graph of a stable-model description"
    )
    p_model.add_argument("model", help="path to the model JSON file")
    p_model.add_argument(
        "--normalize-volume",
        action="store_true",
        help="rescale edge lengths to total volume 1",
    )
    _add_common(p_model, ["json", "dot"])

    p_plane = sub.add_parser(
        "tropicalize-plane", help="tropical plane curve of a polynomial"
    )
    p_plane.add_argument("poly", help="path to the polynomial JSON file")
    p_plane.add_argument("--svg", help="also render the curve to this SVG file")
    p_plane.add_argument(
        "--viewport",
        default="-5,-5,5,5",
        help="SVG viewport as xmin,ymin,xmax,ymax",
    )
    p_plane.add_argument("--size", type=int, default=400, help="SVG side length")
    _add_common(p_plane, ["json"])

    return parser


def _run_enumerate(args) -> None:
    catalog = enumerate_types(args.genus, args.markings, threads=args.threads)
    if args.format == "json":
        payload = {
            "g": catalog.g,
            "n": catalog.n,
            "count": catalog.count,
            "f_vector": list(catalog.f_vector),
            "types": [t.to_json_dict() for t in catalog.strata],
        }
        _write(_dump_json(payload), args.output)
    elif args.format == "csv":
        lines = ["edges,count"]
        lines += [f"{e},{c}" for e, c in enumerate(catalog.f_vector)]
        _write("\n".join(lines) + "\n", args.output)
    else:
        blocks = [t.to_dot(name=f"type{i}") for i, t in enumerate(catalog.strata)]
        _write("".join(blocks), args.output)


def _run_complex(args) -> None:
    if args.format == "dot":
        poset = build_poset(args.genus, args.markings, threads=args.threads)
        _write(hasse_dot(poset), args.output)
        return
    catalog = enumerate_types(args.genus, args.markings, threads=args.threads)
    dimension = complex_dimension(
        args.genus, args.markings, threads=args.threads, catalog=catalog
    )
    link = link_cells(args.genus, args.markings, threads=args.threads, catalog=catalog)
    payload = {
        "g": args.genus,
        "n": args.markings,
        "link_dimension": dimension,
        "num_cells": len(link.cells),
        "cells": [
            {
                "index": i,
                "dimension": cone.dimension - 1,
                "edge_group_order": cone.edge_group.order,
                "has_odd_element": cone.edge_group.has_odd_element,
                "graph": cone.graph.to_json_dict(),
            }
            for i, cone in enumerate(link.cells)
        ],
        "faces": [list(f) for f in link.faces],
    }
    _write(_dump_json(payload), args.output)


def _run_homology(args) -> None:
    cap = None if args.max_generators == 0 else args.max_generators
    profile = homology_mod.reduced_homology(
        args.genus, args.markings, threads=args.threads, max_generators=cap
    )
    d = max_edges(args.genus, args.markings)
    top_weight = {
        k: profile.betti(2 * d - k - 1) for k in range(d, 2 * d + 1)
    }
    if args.format == "json":
        payload = {
            "g": profile.g,
            "n": profile.n,
            "chain_ranks": list(profile.chain_ranks[1:]),
            "betti": list(profile.reduced_betti[1:]),
            "euler": profile.euler_reduced,
            "top_weight": {str(k): r for k, r in sorted(top_weight.items())},
        }
        _write(_dump_json(payload), args.output)
    else:
        if args.top_weight:
            lines = ["cohomological_degree,rank"]
            lines += [f"{k},{r}" for k, r in sorted(top_weight.items())]
        else:
            lines = ["degree,chain_rank,betti"]
            lines += [
                f"{p},{profile.chain_ranks[p + 1]},{profile.reduced_betti[p + 1]}"
                for p in range(0, profile.top_degree() + 1)
            ]
        _write("\n".join(lines) + "\n", args.output)


def _load_json(path: str, error_cls):
    with open(path, "r", encoding="utf-8") as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise error_cls(f"{path} is not valid JSON: {exc}") from exc


def _run_tropicalize_model(args) -> None:
    data = _load_json(args.model, MalformedModelError)
    model = StableModelDescription.from_json_dict(data)
    metric = tropicalize_model(model)
    if args.normalize_volume:
        metric = metric.rescale_to_volume_one()
    if args.format == "json":
        _write(_dump_json(metric.to_json_dict()), args.output)
    else:
        _write(metric.to_dot(), args.output)


def _run_tropicalize_plane(args) -> None:
    data = _load_json(args.poly, GraphError)
    poly = TropicalPolynomial.from_json_dict(data)
    curve = tropical_curve(poly)
    sub = newton_subdivision(poly)
    if args.svg:
        parts = [p.strip() for p in args.viewport.split(",")]
        try:
            viewport = tuple(float(p) for p in parts)
        except ValueError:
            viewport = ()
        if len(viewport) != 4 or viewport[0] >= viewport[2] or viewport[1] >= viewport[3]:
            raise GraphError("viewport must be xmin,ymin,xmax,ymax with min < max")
        _write(render_svg(curve, viewport=viewport, size=max(args.size, 16)), args.svg)
    payload = curve.to_json_dict()
    payload["newton_faces"] = [list(face) for face in sub.faces]
    _write(_dump_json(payload), args.output)


_RUNNERS = {
    "enumerate": _run_enumerate,
    "complex": _run_complex,
    "homology": _run_homology,
    "tropicalize-model": _run_tropicalize_model,
    "tropicalize-plane": _run_tropicalize_plane,
}


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _RUNNERS[args.command](args)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
