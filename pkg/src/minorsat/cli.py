"""Command-line front door: generate graphs, run checks, reproduce the
built-in saturation results.

Exit codes: 0 = claim verified / operation succeeded, 1 = claim refuted
(e.g. not saturated, no minor), 2 = usage error, 3 = search budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from .certificates import CertificateError, builtin_bundle, verify_saturation_by_certs
from .constructions import (
    CHAIN_FAMILIES,
    GlueSpec,
    block_density,
    chain_block,
    chain_counting_certificate,
    glue_on_clique,
    pendant_block,
    pendant_density,
)
from .graph import (
    Graph,
    GraphError,
    complete,
    complete_bipartite,
    cycle,
    generalized_petersen,
    gp_dihedral_group,
    gp_label,
    path,
    read_edge_list,
    star,
    to_edge_list_text,
    wagner,
)
from .minors import (
    BUDGET_EXHAUSTED,
    MODEL,
    REASON_COUNTING,
    BudgetExhaustedError,
    SearchBudget,
    find_minor,
    format_model,
)
from .saturation import (
    INCONCLUSIVE,
    SATURATED,
    CensusLimits,
    exact_sat,
    is_saturated,
    is_saturated_symmetric,
)

_NAME_PATTERNS = [
    (re.compile(r"^K(\d+)$", re.I), lambda m: complete(int(m.group(1)))),
    (re.compile(r"^K(\d+),(\d+)$", re.I),
     lambda m: complete_bipartite(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"^GP\((\d+),(\d+)\)$", re.I),
     lambda m: generalized_petersen(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"^wagner$", re.I), lambda m: wagner()),
    (re.compile(r"^P(\d+)$", re.I), lambda m: path(int(m.group(1)))),
    (re.compile(r"^C(\d+)$", re.I), lambda m: cycle(int(m.group(1)))),
    (re.compile(r"^path\((\d+)\)$", re.I), lambda m: path(int(m.group(1)))),
    (re.compile(r"^cycle\((\d+)\)$", re.I), lambda m: cycle(int(m.group(1)))),
    (re.compile(r"^star\((\d+)\)$", re.I), lambda m: star(int(m.group(1)))),
    (re.compile(r"^complete\((\d+)\)$", re.I), lambda m: complete(int(m.group(1)))),
    (re.compile(r"^pendants\((\d+),(\d+)\)$", re.I),
     lambda m: pendant_block(int(m.group(1)), int(m.group(2)))[0]),
]


def load_graph(spec: str) -> Graph:
    """A named built-in graph (K6, GP(8,3), wagner, P5, ...) or an edge-list file."""
    spec = spec.strip()
    if os.path.exists(spec):
        return read_edge_list(spec)
    for pattern, build in _NAME_PATTERNS:
        match = pattern.match(spec)
        if match:
            return build(match)
    raise GraphError(
        f"{spec!r} is neither a file nor a known graph name"
        " (try K6, K3,3, GP(8,3), wagner, P5, C5, star(4), pendants(6,3))")


def _gp_params(spec: str):
    match = re.match(r"^GP\((\d+),(\d+)\)$", spec.strip(), re.I)
    return (int(match.group(1)), int(match.group(2))) if match else None


def _emit(G: Graph, out, comments):
    text = to_edge_list_text(G, comments)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _budget(args) -> SearchBudget:
    return SearchBudget(max_nodes=args.budget)


def _labeler(spec: str):
    params = _gp_params(spec)
    if params:
        return lambda v: str(gp_label(params[0], v))
    return None


def cmd_gen(args) -> int:
    G = load_graph(args.name)
    _emit(G, args.out, [f"gen {args.name}", f"n={G.n} m={G.m}"])
    return 0


def cmd_minor(args) -> int:
    host = load_graph(args.host)
    target = load_graph(args.target)
    print(f"host: {args.host} (n={host.n}, m={host.m})")
    print(f"target: {args.target} (n={target.n}, m={target.m})")
    result = find_minor(host, target, _budget(args))
    if result.status == MODEL:
        print(f"result: minor found (nodes expanded: {result.nodes})")
        if args.verbose:
            print(format_model(result.model, labels=_labeler(args.host)))
        return 0
    if result.status == BUDGET_EXHAUSTED:
        print(f"result: budget exhausted after {result.nodes} nodes")
        return 3
    if result.reason == REASON_COUNTING:
        need = host.n - target.n + target.m
        print(f"result: no minor (counting bound: {host.m} < {need})")
    else:
        print(f"result: no minor (exhausted search, nodes expanded: {result.nodes})")
    return 1


def cmd_saturated(args) -> int:
    G = load_graph(args.graph)
    H = load_graph(args.target)
    params = _gp_params(args.graph)
    if args.group == "dihedral" and params is None:
        print("error: --group dihedral needs a GP(n,k) graph", file=sys.stderr)
        return 2
    print(f"graph: {args.graph} (n={G.n}, m={G.m})")
    print(f"target: {args.target} (n={H.n}, m={H.m})")
    if args.group == "dihedral":
        verdict = is_saturated_symmetric(G, H, gp_dihedral_group(params[0]),
                                         _budget(args), jobs=args.jobs)
    else:
        verdict = is_saturated(G, H, _budget(args), jobs=args.jobs)
    for line in verdict.to_lines(labels=_labeler(args.graph) if args.verbose else None):
        print(line)
    if verdict.status == SATURATED:
        return 0
    if verdict.status == INCONCLUSIVE:
        return 3
    return 1


def cmd_verify_paper(args) -> int:
    report = verify_saturation_by_certs(args.r)
    for line in report.to_lines():
        print(line)
    if not report.ok:
        return 1
    if args.blind:
        bundle = builtin_bundle(args.r)
        G = generalized_petersen(bundle.gp_n, bundle.gp_k)
        H = complete(args.r)
        group = gp_dihedral_group(bundle.gp_n)
        lab = lambda v: str(gp_label(bundle.gp_n, v))
        covered = {e.canonical for e in bundle.coverage}
        print("blind cross-check: searching every orbit representative"
              " without certificates")
        budget = _budget(args)
        from .graph import nonedge_orbits

        agreed = True
        for rep in nonedge_orbits(G, group):
            result = find_minor(G.add_edge(*rep), H, budget)
            if result.status == BUDGET_EXHAUSTED:
                print(f"orbit {lab(rep[0])}{lab(rep[1])}: budget exhausted")
                return 3
            found = result.status == MODEL
            claim = rep in covered
            tag = "agree" if found == claim else "DISAGREE"
            if found != claim:
                agreed = False
            print(f"orbit {lab(rep[0])}{lab(rep[1])}: search "
                  f"{'found a minor' if found else 'found none'},"
                  f" certificate {'covers it' if claim else 'does not cover it'}"
                  f" -> {tag}")
        verdict = is_saturated_symmetric(G, H, group, budget, jobs=args.jobs)
        print(f"blind verdict: {verdict.status}"
              f" ({verdict.checked} checks, {verdict.nodes} nodes)")
        if verdict.status == INCONCLUSIVE:
            return 3
        if verdict.status != SATURATED or not agreed:
            return 1
    return 0


def cmd_sat_exact(args) -> int:
    H = load_graph(args.target)
    limits = CensusLimits(budget=_budget(args), count_at_optimum=args.count,
                          reduce_isomorphs=args.reduce_isomorphs)
    result = exact_sat(args.n, H, limits, jobs=args.jobs)
    print(f"sat({args.n}, M({args.target})) = {result.sat}")
    if result.count is not None:
        print(f"saturated graphs at that edge count: {result.count}")
    print(f"graphs checked: {result.graphs_checked}")
    print("witness:")
    sys.stdout.write(result.witness_text())
    return 0


def cmd_density(args) -> int:
    if args.pendants:
        s, d = args.pendants
        print(pendant_density(s, d))
        return 0
    block = load_graph(args.block)
    print(block_density(block, args.shared))
    return 0


def cmd_chain(args) -> int:
    block, r = chain_block(args.family)
    name = CHAIN_FAMILIES[args.family][0]
    glued = glue_on_clique(GlueSpec(block, (0, 1), args.copies))
    print(f"family {args.family}: block {name} (n={block.n}, m={block.m}),"
          f" shared edge {{x0, x1}}")
    print(f"chain of {args.copies} copies: n={glued.n}, m={glued.m}")
    print(f"per-block density: {block_density(block, 2)}")
    cert = chain_counting_certificate(block, (0, 1), complete(r))
    for line in cert.to_lines():
        print(line)
    print(f"K{r}-minor-free: {'yes' if cert.minor_free else 'NOT ESTABLISHED'}")
    if args.out:
        _emit(glued, args.out,
              [f"chain {args.family} copies={args.copies}", f"n={glued.n} m={glued.m}"])
    return 0 if cert.minor_free else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minorsat",
        description="Graph-minor containment and minor-saturation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, jobs=True):
        p.add_argument("--budget", type=int, default=50_000_000,
                       help="search node budget (default 50M)")
        if jobs:
            p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                           help="parallel fan-out over non-edges/census graphs")
        p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("gen", help="emit a named graph as an edge list")
    p.add_argument("name", help="graph name, e.g. K6, GP(8,3), wagner")
    p.add_argument("--out", help="write to file instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("minor", help="decide minor containment")
    p.add_argument("--host", required=True)
    p.add_argument("--target", required=True)
    add_common(p, jobs=False)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("saturated", help="decide minor saturation")
    p.add_argument("--graph", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--group", choices=["dihedral", "none"], default="none",
                   help="test one non-edge per symmetry orbit")
    add_common(p)
    p.set_defaults(func=cmd_saturated)

    p = sub.add_parser("verify-paper",
                       help="verify a built-in saturation certificate bundle")
    p.add_argument("--r", type=int, required=True, choices=[6, 7, 8])
    p.add_argument("--blind", action="store_true",
                   help="cross-check the certificates against a full search")
    add_common(p)
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("sat-exact", help="exact saturation number by census")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--count", action="store_true",
                   help="count saturated graphs at the optimum")
    p.add_argument("--reduce-isomorphs", action="store_true",
                   help="skip relabelings of already-checked graphs")
    add_common(p)
    p.set_defaults(func=cmd_sat_exact)

    p = sub.add_parser("density", help="exact edges-per-vertex rate of a family")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pendants", nargs=2, type=int, metavar=("S", "D"),
                       help="pendant-block family parameters")
    group.add_argument("--block", help="block graph (name or file)")
    p.add_argument("--shared", type=int, default=2,
                   help="shared clique size for --block (default 2)")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("chain", help="edge-glued chain of saturated blocks")
    p.add_argument("--family", required=True, choices=sorted(CHAIN_FAMILIES))
    p.add_argument("--copies", type=int, required=True)
    p.add_argument("--out", help="write the chain as an edge list")
    p.set_defaults(func=cmd_chain)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (GraphError, CertificateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
