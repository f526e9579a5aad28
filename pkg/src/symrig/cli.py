"""Command line front end.

Every subcommand reads a problem file (or a shipped fixture by name),
prints deterministic JSON (or SVG) to stdout, and uses exit codes:
0 success, 2 usage error, 3 domain error with {"error": ...} on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import (
    TypeAssignment,
    enumerate_types,
    find_base_type,
    is_homomorphism,
    verify_type,
)
from .errors import InvalidFramework, NotInSymmetryClass, SymrigError
from .graphs import format_cycles
from .oracle import brute_force_type_search, exhaustive_generic_check
from .problem import ProblemFile, load_fixture, load_problem
from .rigidity import Framework, rigidity_verdict
from .symspace import (
    class_is_empty,
    config_space_basis,
    constraint_residual,
    draw_samples,
    sample_config,
    sym_generic_verdict,
)
from .svg import render_svg


def _load(args) -> ProblemFile:
    if args.fixture:
        return load_fixture(args.fixture)
    return load_problem(args.problem)


def _seed(args, problem: ProblemFile) -> int:
    return problem.seed if args.seed is None else args.seed


def _resolve_phi(problem: ProblemFile, tol: float) -> TypeAssignment:
    if problem.type_mode == "explicit":
        assert problem.phi is not None
        return problem.phi
    if problem.type_mode == "enumerate":
        raise NotInSymmetryClass(
            "type mode 'enumerate' does not pick a single type; use the types command "
            "or set an explicit type"
        )
    if problem.coords is None:
        raise NotInSymmetryClass("type mode 'auto' needs coords to classify against")
    phi = find_base_type(problem.graph, problem.coords, problem.group, tol)
    if phi is None:
        raise NotInSymmetryClass("the given configuration admits no type for this group")
    return phi


def _need_coords(problem: ProblemFile) -> None:
    if problem.coords is None:
        raise NotInSymmetryClass("this command needs explicit coords in the problem file")


def _framework(problem: ProblemFile, phi: TypeAssignment, seed: int) -> Framework:
    if problem.coords is not None:
        return Framework(problem.graph, problem.coords)
    basis = config_space_basis(problem.graph, problem.group, phi)
    return sample_config(basis, seed=seed)


def _coord_dict(framework: Framework) -> dict:
    return {framework.graph.labels[i]: [float(c) for c in row]
            for i, row in enumerate(framework.coords)}


def _json_text(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def cmd_analyze(args) -> str:
    problem = _load(args)
    phi = _resolve_phi(problem, args.tol_geom)
    report = sym_generic_verdict(
        problem.graph, problem.group, phi,
        trials=args.trials, seed=_seed(args, problem),
        rank_rtol=args.tol_rank, framework_tol=args.tol_geom,
    )
    payload = {
        "name": problem.name,
        "dim": problem.dim,
        "group": {
            "name": problem.group.name,
            "order": len(problem.group),
            "elements": list(problem.group.labels),
        },
        "type": {
            "assignment": phi.as_dict(problem.group, problem.graph),
            "homomorphism": is_homomorphism(problem.group, phi),
        },
        "verdict": report.to_dict(problem.graph.labels),
    }
    if problem.coords is not None:
        framework = Framework(problem.graph, problem.coords)
        section = {"satisfies_type": verify_type(problem.graph, problem.coords,
                                                 problem.group, phi, args.tol_geom)}
        try:
            section["rigidity"] = rigidity_verdict(framework, args.tol_rank, args.tol_geom).to_dict()
        except InvalidFramework as exc:
            section["rigidity"] = {"error": str(exc)}
        payload["given_configuration"] = section
    return _json_text(payload)


def cmd_sample(args) -> str:
    problem = _load(args)
    phi = _resolve_phi(problem, args.tol_geom)
    basis = config_space_basis(problem.graph, problem.group, phi)
    samples = draw_samples(basis, args.count, seed=_seed(args, problem))
    rows = []
    for f in samples:
        verdict = rigidity_verdict(f, args.tol_rank, args.tol_geom)
        rows.append({
            "coords": _coord_dict(f),
            "rank": verdict.rank,
            "infinitesimally_rigid": verdict.infinitesimally_rigid,
            "independent": verdict.independent,
            "isostatic": verdict.isostatic,
        })
    return _json_text({"name": problem.name, "k": basis.k, "samples": rows})


def cmd_types(args) -> str:
    problem = _load(args)
    _need_coords(problem)
    catalog, types = enumerate_types(
        problem.graph, problem.coords, problem.group,
        tol=args.tol_geom, normalized=args.normalized,
    )
    payload = {
        "name": problem.name,
        "count": catalog.count,
        "normalized_count": catalog.normalized_count(),
        "coincidence_automorphisms": [
            format_cycles(perm, problem.graph.labels) for perm in catalog.coincidence_group
        ],
        "valid_set_sizes": {
            label: len(vs) for label, vs in zip(problem.group.labels, catalog.valid_sets)
        },
        "types": [t.as_dict(problem.group, problem.graph) for t in types],
    }
    return _json_text(payload)


def cmd_basis(args) -> str:
    problem = _load(args)
    phi = _resolve_phi(problem, args.tol_geom)
    basis = config_space_basis(problem.graph, problem.group, phi)
    residual = 0.0
    for row in basis.basis:
        residual = max(residual, constraint_residual(basis, problem.group, phi,
                                                     row.reshape(problem.graph.n, problem.dim)))
    return _json_text({
        "name": problem.name,
        "k": basis.k,
        "max_residual": residual,
        "vectors": [[float(c) for c in row] for row in basis.basis],
    })


def cmd_empty_check(args) -> str:
    problem = _load(args)
    phi = _resolve_phi(problem, args.tol_geom)
    basis = config_space_basis(problem.graph, problem.group, phi)
    empty, offending = class_is_empty(problem.graph, basis)
    labels = problem.graph.labels
    return _json_text({
        "name": problem.name,
        "k": basis.k,
        "empty": empty,
        "forced_edges": [[labels[u], labels[v]] for u, v in offending],
    })


def cmd_svg(args) -> str:
    problem = _load(args)
    phi = _resolve_phi(problem, args.tol_geom)
    framework = _framework(problem, phi, _seed(args, problem))
    return render_svg(framework, problem.group, label_joints=args.labels)


def cmd_oracle_types(args) -> str:
    problem = _load(args)
    _need_coords(problem)
    brute = brute_force_type_search(problem.graph, problem.coords, problem.group, tol=args.tol_geom)
    _, fast = enumerate_types(problem.graph, problem.coords, problem.group, tol=args.tol_geom)
    _, fast_normalized = enumerate_types(problem.graph, problem.coords, problem.group,
                                         tol=args.tol_geom, normalized=True)
    return _json_text({
        "name": problem.name,
        "brute_count": len(brute.types),
        "fast_count": len(fast),
        "brute_normalized_count": len(brute.normalized),
        "fast_normalized_count": len(fast_normalized),
        "match": set(brute.types) == set(fast),
        "normalized_match": set(brute.normalized) == set(fast_normalized),
    })


def cmd_oracle_generic(args) -> str:
    problem = _load(args)
    phi = _resolve_phi(problem, args.tol_geom)
    framework = _framework(problem, phi, _seed(args, problem))
    report = exhaustive_generic_check(
        framework.coords, problem.group, phi.images,
        evals=args.evals, seed=_seed(args, problem),
    )
    return _json_text({
        "name": problem.name,
        "generic": report.generic,
        "minors_checked": report.minors_checked,
        "vanishing_at_point": report.vanishing_at_point,
        "failing_minor": list(report.failing_minor) if report.failing_minor else None,
    })


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symrig",
        description="Classify and sample symmetric bar-joint frameworks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("--problem", metavar="PATH", help="path to a problem JSON file")
    source.add_argument("--fixture", metavar="NAME", help="name of a shipped problem file")
    common.add_argument("--seed", type=int, default=None, help="override the problem seed")
    common.add_argument("--tol-rank", type=float, default=1e-8, dest="tol_rank",
                        help="relative tolerance for rank decisions")
    common.add_argument("--tol-geom", type=float, default=1e-8, dest="tol_geom",
                        help="tolerance for geometric coincidence checks")
    common.add_argument("--out", metavar="PATH", help="write output to a file instead of stdout")

    p = sub.add_parser("analyze", parents=[common],
                       help="classify the whole class by seeded sampling")
    p.add_argument("--trials", type=int, default=20, help="sampled witnesses to try")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sample", parents=[common], help="draw configurations from the class")
    p.add_argument("--count", type=int, default=1, help="number of samples")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("types", parents=[common],
                       help="enumerate the type catalog for the given coords")
    p.add_argument("--normalized", action="store_true",
                   help="only types sending the identity operation to the identity")
    p.set_defaults(func=cmd_types)

    p = sub.add_parser("basis", parents=[common],
                       help="orthonormal basis of the symmetric configuration space")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("empty-check", parents=[common],
                       help="decide whether the class contains any framework")
    p.set_defaults(func=cmd_empty_check)

    p = sub.add_parser("svg", parents=[common], help="draw the configuration as SVG")
    p.add_argument("--labels", action="store_true", help="draw joint names")
    p.set_defaults(func=cmd_svg)

    p = sub.add_parser("oracle", help="slow independent checks")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("types", parents=[common],
                        help="brute force the type catalog and compare with the fast path")
    q.set_defaults(func=cmd_oracle_types)
    q = osub.add_parser("generic", parents=[common],
                        help="all-minors genericity check of a configuration")
    q.add_argument("--evals", type=int, default=8, help="sample points for identical vanishing")
    q.set_defaults(func=cmd_oracle_generic)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.func(args)
    except SymrigError as exc:
        sys.stdout.write(json.dumps({"error": str(exc)}) + "\n")
        return 3
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
