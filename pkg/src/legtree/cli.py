"""Command-line front-end.

Subcommands: ``legendre``, ``trees``, ``invert``, ``hessian``, ``wick`` and
``verify``.  Text output is deterministic (identical inputs and seeds produce
identical bytes); ``--format structured`` emits the same report as JSON with
every rational serialized as a ``p/q`` string.  The exit status is 0 only if
every internal cross-check of the requested command passed, 1 when a check
failed, and 2 on domain errors (syntax, singular quadratic form, bounds).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .acceptance import DEFAULT_SEED, run_all
from .grammar import (
    PolynomialParseError,
    dual_names,
    format_polynomial,
    infer_variables,
    parse_polynomial,
)
from .inversion import (
    PolynomialMap,
    bridge_hessian_check,
    invert_map_direct,
    invert_map_legendre,
    is_keller_map,
    jacobian_det,
)
from .legendre import (
    Potential,
    gradient,
    hessian_constant,
    hessian_det,
    hessian_matrix,
    invert_gradient,
    legendre_transform,
)
from .poly import Polynomial
from .series import substitute
from .trees import (
    DEFAULT_ORACLE_BOUND,
    _rooted,
    bundle_from_potential,
    enumerate_trees,
    labeled_tree_oracle,
    tree_expand,
    tree_weight,
)
from .wick import DEFAULT_VERTEX_BOUND, classify_graphs, log_y_series, series_exp, y_series

DEFAULT_DEGREE_CAP = 12
ORACLE_BOUND_ENV = "LEGTREE_TREE_ORACLE_BOUND"
WICK_BOUND_ENV = "LEGTREE_WICK_BOUND"


def _oracle_bound() -> int:
    return int(os.environ.get(ORACLE_BOUND_ENV, DEFAULT_ORACLE_BOUND))


def _wick_bound() -> int:
    return int(os.environ.get(WICK_BOUND_ENV, DEFAULT_VERTEX_BOUND))


def _read_input(value: str) -> str:
    if value == "-":
        return sys.stdin.read()
    return value


def _load_polynomial(text: str) -> tuple[Polynomial, tuple[str, ...]]:
    names = infer_variables(text)
    if not names:
        raise PolynomialParseError("no variables found", 0)
    return parse_polynomial(text, names), names


def _check_degree(degree: int, cap: int, minimum: int = 2) -> None:
    if not minimum <= degree <= cap:
        raise ValueError(f"degree must be between {minimum} and {cap}")


def _sketch(adjacency, prefix: str = "") -> list[str]:
    """Indented ASCII rendering of a tree, rooted at its first internal
    vertex, children ordered by their encodings."""
    internal = [v for v in range(len(adjacency)) if len(adjacency[v]) >= 2]
    root = internal[0] if internal else 0

    def label(v: int) -> str:
        return "y" if len(adjacency[v]) == 1 else f"*{len(adjacency[v])}"

    lines = [label(root)]

    def walk(v: int, parent: int, indent: str) -> None:
        children = sorted(
            (u for u in adjacency[v] if u != parent),
            key=lambda u: _rooted(adjacency, u, v)[0],
        )
        for position, u in enumerate(children):
            last = position == len(children) - 1
            lines.append(indent + "+- " + label(u))
            walk(u, v, indent + ("   " if last else "|  "))

    walk(root, -1, "")
    return [prefix + line for line in lines]


# -- subcommand handlers --------------------------------------------------------


def _cmd_legendre(args) -> tuple[bool, dict, list[str]]:
    text = _read_input(args.phi)
    phi, names = _load_polynomial(text)
    _check_degree(args.degree, args.degree_cap)
    duals = dual_names(names)
    pot = Potential(phi)
    g = invert_gradient(pot, args.degree)
    phibar = legendre_transform(pot, args.degree)
    # cross-check: the gradient map composed with its inverse is the identity
    grad = gradient(pot.poly)
    ok = True
    for i in range(pot.dim):
        composed = substitute(grad[i], g, args.degree)
        if composed.body != Polynomial.variable(pot.dim, i):
            ok = False
    lines = [f"phi = {format_polynomial(pot.poly, names)}", f"degree = {args.degree}"]
    g_texts = []
    for i in range(pot.dim):
        rendered = format_polynomial(g[i].body, duals)
        g_texts.append(rendered)
        lines.append(f"g[{names[i]}] = {rendered}")
    phibar_text = format_polynomial(phibar.body, duals)
    lines.append(f"phibar = {phibar_text}")
    lines.append(f"gradient-check = {'ok' if ok else 'FAILED'}")
    report = {
        "command": "legendre",
        "phi": format_polynomial(pot.poly, names),
        "variables": list(names),
        "truncation_degree": args.degree,
        "g": g_texts,
        "phibar": phibar_text,
        "gradient_check": ok,
    }
    return ok, report, lines


def _cmd_trees(args) -> tuple[bool, dict, list[str]]:
    text = _read_input(args.phi)
    phi, names = _load_polynomial(text)
    _check_degree(args.degree, args.degree_cap)
    duals = dual_names(names)
    pot = Potential(phi)
    bundle = bundle_from_potential(pot)
    max_internal = max(pot.degree(), 2)
    lines = [f"phi = {format_polynomial(pot.poly, names)}", f"degree = {args.degree}"]
    class_reports = []
    for leaves in range(2, args.degree + 1):
        for tree in enumerate_trees(leaves, max_internal):
            weight = tree_weight(tree, bundle)
            weight_text = format_polynomial(weight, duals)
            degrees = ",".join(str(d) for d in tree.internal_degrees)
            lines.append(
                f"class m={tree.leaf_count} j={tree.internal_count}"
                f" degrees=[{degrees}] aut={tree.aut_order} weight = {weight_text}"
            )
            lines.extend(_sketch(tree.adjacency, prefix="    "))
            class_reports.append(
                {
                    "m": tree.leaf_count,
                    "internal_degrees": list(tree.internal_degrees),
                    "canonical_encoding": tree.encoding,
                    "aut_order": tree.aut_order,
                    "weight": weight_text,
                }
            )
    expansion = tree_expand(pot, args.degree)
    engine = legendre_transform(pot, args.degree)
    ok = expansion == engine
    oracle_report = None
    if args.oracle:
        oracle = labeled_tree_oracle(pot, args.degree, bound=_oracle_bound())
        oracle_ok = oracle == expansion
        ok = ok and oracle_ok
        oracle_report = {
            "series": format_polynomial(oracle.body, duals),
            "matches": oracle_ok,
        }
    expansion_text = format_polynomial(expansion.body, duals)
    lines.append(f"tree-sum = {expansion_text}")
    lines.append(f"legendre = {format_polynomial(engine.body, duals)}")
    if oracle_report is not None:
        lines.append(f"labeled-oracle = {oracle_report['series']}")
    lines.append(f"agreement = {'ok' if ok else 'FAILED'}")
    report = {
        "command": "trees",
        "phi": format_polynomial(pot.poly, names),
        "truncation_degree": args.degree,
        "classes": class_reports,
        "tree_sum": expansion_text,
        "legendre": format_polynomial(engine.body, duals),
        "agreement": ok,
    }
    if oracle_report is not None:
        report["labeled_oracle"] = oracle_report
    return ok, report, lines


def _cmd_invert(args) -> tuple[bool, dict, list[str]]:
    text = _read_input(args.map)
    component_texts = [piece.strip() for piece in text.split(",") if piece.strip()]
    if not component_texts:
        raise ValueError("no map components given")
    names = infer_variables(",".join(component_texts).replace(",", " + "))
    dim = len(names)
    if len(component_texts) != dim:
        raise ValueError(
            f"map has {len(component_texts)} components but {dim} variables"
        )
    if any(not name.startswith("x") for name in names):
        raise ValueError("map components must use the x variable family")
    components = tuple(parse_polynomial(piece, names) for piece in component_texts)
    f = PolynomialMap(components)
    _check_degree(args.degree, args.degree_cap, minimum=1)
    duals = dual_names(names)
    det = jacobian_det(f)
    keller = is_keller_map(f)
    lines = []
    for i, piece in enumerate(components):
        lines.append(f"f[{i + 1}] = {format_polynomial(piece, names)}")
    lines.append(f"jacobian-det = {format_polynomial(det, names)}")
    lines.append(f"keller = {'yes' if keller else 'no'}")
    report = {
        "command": "invert",
        "map": [format_polynomial(piece, names) for piece in components],
        "truncation_degree": args.degree,
        "jacobian_det": format_polynomial(det, names),
        "keller": keller,
        "method": args.method,
    }
    ok = True
    results = {}
    if args.method in ("direct", "both"):
        results["direct"] = invert_map_direct(f, args.degree)
    if args.method in ("legendre", "both"):
        results["legendre"] = invert_map_legendre(f, args.degree)
    for method, inverse in results.items():
        texts = [format_polynomial(comp.body, duals) for comp in inverse]
        report[f"inverse_{method}"] = texts
        for i, rendered in enumerate(texts):
            lines.append(f"{method} g[{i + 1}] = {rendered}")
    if len(results) == 2:
        ok = results["direct"] == results["legendre"]
        lines.append(f"agreement = {'ok' if ok else 'FAILED'}")
        report["agreement"] = ok
    bridge = bridge_hessian_check(f)
    bridge_text = str(bridge) if bridge is not None else "non-constant"
    lines.append(f"bridge-hessian = {bridge_text}")
    report["bridge_hessian"] = bridge_text
    return ok, report, lines


def _cmd_hessian(args) -> tuple[bool, dict, list[str]]:
    text = _read_input(args.phi)
    phi, names = _load_polynomial(text)
    matrix = hessian_matrix(phi)
    det = hessian_det(phi)
    constant = hessian_constant(phi)
    if constant is None:
        classification = "non-constant"
    elif constant == 0:
        classification = "constant 0"
    else:
        classification = f"constant {constant}"
    lines = [f"phi = {format_polynomial(phi, names)}"]
    for i in range(phi.dim):
        for j in range(phi.dim):
            lines.append(f"H[{i + 1}][{j + 1}] = {format_polynomial(matrix[i][j], names)}")
    lines.append(f"det = {format_polynomial(det, names)}")
    lines.append(f"classification = {classification}")
    report = {
        "command": "hessian",
        "phi": format_polynomial(phi, names),
        "matrix": [
            [format_polynomial(entry, names) for entry in row] for row in matrix
        ],
        "det": format_polynomial(det, names),
        "classification": classification,
    }
    return True, report, lines


def _cmd_wick(args) -> tuple[bool, dict, list[str]]:
    bound = _wick_bound()
    if args.order < 0 or args.order > bound:
        raise ValueError(f"order must be between 0 and {bound}")
    lines = [f"order = {args.order}"]
    class_reports = []
    for n in range(1, args.order + 1):
        lines.append(f"n={n} classes:")
        for c in classify_graphs(n, bound):
            loops = ",".join(str(x) for x in c.loops)
            edges = ",".join(str(x) for x in c.edge_multiplicities)
            lines.append(
                f"  loops=[{loops}] edges=[{edges}] orbit={c.orbit_size}"
                f" aut={c.aut_order} connected={'yes' if c.connected else 'no'}"
            )
            class_reports.append(
                {
                    "n": n,
                    "loops": list(c.loops),
                    "multiedges": list(c.edge_multiplicities),
                    "orbit": c.orbit_size,
                    "aut": c.aut_order,
                    "connected": c.connected,
                }
            )
    full = y_series(args.order, bound)
    connected = log_y_series(args.order, bound)
    ok = series_exp(connected) == full
    full_text = [str(c) for c in full.coeffs]
    connected_text = [str(c) for c in connected.coeffs]
    for k, coeff in enumerate(full.coeffs):
        lines.append(f"Y[lambda^{k}] = {coeff} * a^-{2 * k}")
    for k, coeff in enumerate(connected.coeffs):
        lines.append(f"logY[lambda^{k}] = {coeff} * a^-{2 * k}")
    lines.append(f"exp(logY) == Y = {'ok' if ok else 'FAILED'}")
    report = {
        "command": "wick",
        "order": args.order,
        "classes": class_reports,
        "y_coefficients": full_text,
        "log_y_coefficients": connected_text,
        "exp_log_consistent": ok,
    }
    return ok, report, lines


def _cmd_verify(args) -> tuple[bool, dict, list[str]]:
    only = None
    if args.only:
        only = [int(piece) for piece in args.only.split(",")]
    results = run_all(seed=args.seed, only=only)
    lines = [f"seed = {args.seed}"]
    entries = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"[{r.index}] {r.name}: {status} ({r.detail})")
        entries.append(
            {"index": r.index, "name": r.name, "passed": r.passed, "detail": r.detail}
        )
    ok = all(r.passed for r in results)
    lines.append(f"overall = {'PASS' if ok else 'FAIL'}")
    report = {"command": "verify", "seed": args.seed, "checks": entries, "passed": ok}
    return ok, report, lines


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legtree",
        description="Exact Legendre transforms, tree expansions, polynomial map "
        "inversion and quartic pairing combinatorics over the rationals.",
    )
    parser.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="text (default) or JSON with rationals as p/q strings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_degree=True):
        p.add_argument(
            "--degree-cap",
            type=int,
            default=DEFAULT_DEGREE_CAP,
            help=f"maximum accepted truncation degree (default {DEFAULT_DEGREE_CAP})",
        )
        if needs_degree:
            p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("legendre", help="gradient inverse and Legendre transform")
    p.add_argument("--phi", required=True, help="potential text, or - for stdin")
    add_common(p)

    p = sub.add_parser("trees", help="tree classes, weights, and the summed series")
    p.add_argument("--phi", required=True)
    p.add_argument(
        "--oracle",
        action="store_true",
        help="also run the labeled-tree oracle and compare",
    )
    add_common(p)

    p = sub.add_parser("invert", help="formal inverse of a polynomial map")
    p.add_argument("--map", required=True, help="comma-separated components")
    p.add_argument("--method", choices=("direct", "legendre", "both"), default="both")
    add_common(p)

    p = sub.add_parser("hessian", help="Hessian matrix, determinant, classification")
    p.add_argument("--phi", required=True)
    add_common(p, needs_degree=False)

    p = sub.add_parser("wick", help="pairing classes and coupling series")
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--only", help="comma-separated check numbers, e.g. 2,3")

    return parser


HANDLERS = {
    "legendre": _cmd_legendre,
    "trees": _cmd_trees,
    "invert": _cmd_invert,
    "hessian": _cmd_hessian,
    "wick": _cmd_wick,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ok, report, lines = HANDLERS[args.command](args)
    except (ValueError, ArithmeticError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    if args.format == "structured":
        print(json.dumps(report, indent=2, default=str))
    else:
        print("\n".join(lines))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
