"""Minor-saturation decisions, orbit-reduced checking, and the exact small-n census.

A graph G is saturated for "contains H as a minor" when G itself has no
H minor but G+e does for every non-edge e.  The verdict always carries a
re-checkable witness.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from multiprocessing import Pool
from typing import Optional, Sequence

from .graph import Graph, GraphError, is_automorphism, nonedge_orbits, to_edge_list_text
from .minors import (
    BUDGET_EXHAUSTED,
    MODEL,
    NO_MINOR,
    BudgetExhaustedError,
    MinorModel,
    SearchBudget,
    find_minor,
)

SATURATED = "saturated"
HAS_MINOR = "has-minor"
MISSING_EDGE = "missing-edge"
INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    """Outcome of a saturation check, with the witness that proves it.

    HAS_MINOR carries a minor model of the target in the graph itself;
    MISSING_EDGE carries a non-edge whose addition still leaves the graph
    target-minor-free; INCONCLUSIVE carries only the budget note.
    """

    status: str
    model: Optional[MinorModel] = None
    edge: Optional[tuple[int, int]] = None
    nodes: int = 0
    seconds: float = 0.0
    checked: int = 0
    note: str = ""

    def to_lines(self, labels=None) -> list[str]:
        render = (lambda v: str(labels(v))) if labels else str
        lines = [f"verdict: {self.status}"]
        if self.edge is not None:
            u, v = self.edge
            lines.append(f"witness non-edge: {render(u)} {render(v)}")
        if self.model is not None:
            for b, members in enumerate(self.model.branch_sets()):
                lines.append(f"branch {b}: [{', '.join(render(v) for v in members)}]")
        if self.note:
            lines.append(f"note: {self.note}")
        lines.append(f"checked: {self.checked}, nodes expanded: {self.nodes}")
        return lines


def _check_edge(args):
    """Worker for the non-edge fan-out; returns (status, nodes)."""
    host_n, host_edges, target_n, target_edges, edge, max_nodes, max_seconds = args
    host = Graph(host_n, host_edges).add_edge(*edge)
    target = Graph(target_n, target_edges)
    result = find_minor(host, target, SearchBudget(max_nodes, max_seconds))
    return result.status, result.nodes


def _scan_nonedges(G, H, edges, budget, jobs):
    """Find the first edge (in the given order) whose addition leaves no minor.

    Returns (index or None, status_at_index, total_nodes).  Deterministic
    regardless of jobs: results are consumed in submission order.
    """
    total = 0
    if jobs <= 1 or len(edges) <= 1:
        for i, e in enumerate(edges):
            result = find_minor(G.add_edge(*e), H, budget)
            total += result.nodes
            if result.status != MODEL:
                return i, result.status, total
        return None, MODEL, total
    tasks = [
        (G.n, G.edges, H.n, H.edges, e, budget.max_nodes, budget.max_seconds)
        for e in edges
    ]
    with Pool(jobs) as pool:
        for i, (status, nodes) in enumerate(pool.imap(_check_edge, tasks, chunksize=1)):
            total += nodes
            if status != MODEL:
                pool.terminate()
                return i, status, total
    return None, MODEL, total


def is_saturated(
    G: Graph,
    H: Graph,
    budget: Optional[SearchBudget] = None,
    jobs: int = 1,
    require_connected_target: bool = True,
) -> Verdict:
    """Decide whether G is saturated for H-minor containment.

    Checks that G has no H minor, then that every non-edge addition creates
    one.  A refuting non-edge is double-checked with a fresh search before
    being reported, since it rests on search completeness.
    """
    if budget is None:
        budget = SearchBudget()
    if require_connected_target and (H.n < 2 or not H.is_connected()):
        raise GraphError("target must be connected with at least 2 vertices")
    started = time.monotonic()
    base = find_minor(G, H, budget)
    if base.status == MODEL:
        return Verdict(HAS_MINOR, model=base.model, nodes=base.nodes,
                       seconds=time.monotonic() - started, checked=1)
    if base.status == BUDGET_EXHAUSTED:
        return Verdict(INCONCLUSIVE, nodes=base.nodes, checked=1,
                       seconds=time.monotonic() - started,
                       note="budget exhausted while testing the graph itself")

    nonedges = G.non_edges()
    idx, status, nodes = _scan_nonedges(G, H, nonedges, budget, jobs)
    total = base.nodes + nodes
    seconds = time.monotonic() - started
    if idx is None:
        return Verdict(SATURATED, nodes=total, seconds=seconds,
                       checked=1 + len(nonedges))
    edge = nonedges[idx]
    if status == BUDGET_EXHAUSTED:
        return Verdict(INCONCLUSIVE, nodes=total, seconds=seconds, checked=2 + idx,
                       note=f"budget exhausted while testing non-edge {edge}")
    recheck = find_minor(G.add_edge(*edge), H, budget)
    if recheck.status != NO_MINOR:
        raise AssertionError(f"unstable refutation for non-edge {edge}: {recheck.status}")
    return Verdict(MISSING_EDGE, edge=edge, nodes=total + recheck.nodes,
                   seconds=seconds, checked=2 + idx)


def is_saturated_symmetric(
    G: Graph,
    H: Graph,
    group: Sequence[Sequence[int]],
    budget: Optional[SearchBudget] = None,
    jobs: int = 1,
) -> Verdict:
    """Saturation check testing one non-edge per orbit of an automorphism group.

    Adding orbit-equivalent edges gives isomorphic graphs, so the verdict
    equals the plain check's.  Every group element is verified to be an
    automorphism first; a non-automorphism raises.
    """
    if budget is None:
        budget = SearchBudget()
    if H.n < 2 or not H.is_connected():
        raise GraphError("target must be connected with at least 2 vertices")
    reps = nonedge_orbits(G, group)  # validates the group
    started = time.monotonic()
    base = find_minor(G, H, budget)
    if base.status == MODEL:
        return Verdict(HAS_MINOR, model=base.model, nodes=base.nodes,
                       seconds=time.monotonic() - started, checked=1)
    if base.status == BUDGET_EXHAUSTED:
        return Verdict(INCONCLUSIVE, nodes=base.nodes, checked=1,
                       seconds=time.monotonic() - started,
                       note="budget exhausted while testing the graph itself")
    idx, status, nodes = _scan_nonedges(G, H, reps, budget, jobs)
    total = base.nodes + nodes
    seconds = time.monotonic() - started
    if idx is None:
        return Verdict(SATURATED, nodes=total, seconds=seconds, checked=1 + len(reps))
    edge = reps[idx]
    if status == BUDGET_EXHAUSTED:
        return Verdict(INCONCLUSIVE, nodes=total, seconds=seconds, checked=2 + idx,
                       note=f"budget exhausted while testing orbit representative {edge}")
    recheck = find_minor(G.add_edge(*edge), H, budget)
    if recheck.status != NO_MINOR:
        raise AssertionError(f"unstable refutation for non-edge {edge}: {recheck.status}")
    return Verdict(MISSING_EDGE, edge=edge, nodes=total + recheck.nodes,
                   seconds=seconds, checked=2 + idx)


# ---------------------------------------------------------------------------
# Exact census
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CensusLimits:
    max_n: int = 7
    budget: SearchBudget = field(default_factory=SearchBudget)
    count_at_optimum: bool = False
    reduce_isomorphs: bool = False


@dataclass
class CensusResult:
    n: int
    target: str
    sat: int
    witness: Graph
    count: Optional[int] = None
    graphs_checked: int = 0

    def witness_text(self) -> str:
        return to_edge_list_text(self.witness)


def _canonical_key(n: int, edges) -> tuple:
    """Isomorphism key: lexicographically largest adjacency encoding over all
    relabelings consistent with a degree partition.  Brute force within cells,
    so only sensible for n <= 7."""
    from itertools import permutations

    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    degs = [a.bit_count() for a in adj]
    # order cells by (degree) so permutations only mix equal-degree vertices
    bydeg: dict = {}
    for v in range(n):
        bydeg.setdefault(degs[v], []).append(v)
    cells = [bydeg[d] for d in sorted(bydeg)]
    best = None
    for parts in _cell_products(cells):
        relabel = [0] * n
        pos = 0
        for cell_perm in parts:
            for v in cell_perm:
                relabel[v] = pos
                pos += 1
        key = tuple(sorted(
            (relabel[u], relabel[v]) if relabel[u] < relabel[v] else (relabel[v], relabel[u])
            for u, v in edges
        ))
        if best is None or key < best:
            best = key
    return best


def _cell_products(cells):
    from itertools import permutations, product

    pools = [list(permutations(cell)) for cell in cells]
    from itertools import product as _product
    return _product(*pools)


def _census_check(args):
    n, edge_combo, target_n, target_edges, max_nodes, max_seconds = args
    G = Graph(n, edge_combo)
    H = Graph(target_n, target_edges)
    verdict = is_saturated(G, H, SearchBudget(max_nodes, max_seconds),
                           require_connected_target=False)
    return verdict.status, verdict.nodes


def exact_sat(
    n: int,
    H: Graph,
    limits: Optional[CensusLimits] = None,
    jobs: int = 1,
    edge_order: str = "lex",
) -> CensusResult:
    """Smallest edge count of an n-vertex H-minor-saturated graph, with witness.

    Sweeps m = 0, 1, 2, ... and enumerates all labeled n-vertex graphs with
    m edges, so the first hit is exact by construction.  Labeled enumeration
    is the default; reduce_isomorphs prunes relabelings of already-checked
    graphs (worth it only at n = 7).
    """
    if limits is None:
        limits = CensusLimits()
    if n > limits.max_n:
        raise GraphError(f"census capped at n <= {limits.max_n} (asked for {n})")
    if H.n > n:
        raise GraphError(f"target has {H.n} vertices but census n is {n}")
    pairs = list(combinations(range(n), 2))
    if edge_order == "reverse":
        pairs.reverse()
    elif edge_order != "lex":
        raise GraphError(f"unknown edge order {edge_order!r}")
    checked = 0
    for m in range(comb(n, 2) + 1):
        witness = None
        count = 0
        seen_keys = set()
        combos = combinations(pairs, m)
        if jobs <= 1:
            for combo in combos:
                if limits.reduce_isomorphs:
                    key = _canonical_key(n, combo)
                    if key in seen_keys:
                        continue
                    seen_keys.add(key)
                checked += 1
                verdict = is_saturated(Graph(n, combo), H, limits.budget,
                                       require_connected_target=False)
                if verdict.status == INCONCLUSIVE:
                    raise BudgetExhaustedError(verdict.nodes)
                if verdict.status == SATURATED:
                    if witness is None:
                        witness = Graph(n, combo)
                    count += 1
                    if not limits.count_at_optimum:
                        break
        else:
            tasks = []
            kept = []
            for combo in combos:
                if limits.reduce_isomorphs:
                    key = _canonical_key(n, combo)
                    if key in seen_keys:
                        continue
                    seen_keys.add(key)
                kept.append(combo)
                tasks.append((n, combo, H.n, H.edges,
                              limits.budget.max_nodes, limits.budget.max_seconds))
            with Pool(jobs) as pool:
                for combo, (status, _nodes) in zip(
                    kept, pool.imap(_census_check, tasks, chunksize=64)
                ):
                    checked += 1
                    if status == INCONCLUSIVE:
                        pool.terminate()
                        raise BudgetExhaustedError(0)
                    if status == SATURATED:
                        if witness is None:
                            witness = Graph(n, combo)
                        count += 1
                        if not limits.count_at_optimum:
                            pool.terminate()
                            break
        if witness is not None:
            return CensusResult(n=n, target=f"({H.n} vertices, {H.m} edges)",
                                sat=m, witness=witness,
                                count=count if limits.count_at_optimum else None,
                                graphs_checked=checked)
    raise GraphError(f"no saturated graph exists on {n} vertices for this target")


# ---------------------------------------------------------------------------
# Consequences of the minimum-degree lower bounds
# ---------------------------------------------------------------------------

@dataclass
class LowerBoundCheck:
    name: str
    applicable: bool
    ok: bool
    detail: str


@dataclass
class LowerBoundReport:
    checks: list[LowerBoundCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if c.applicable)

    def violations(self) -> list[str]:
        return [c.detail for c in self.checks if c.applicable and not c.ok]

    def to_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            mark = "n/a" if not c.applicable else ("ok" if c.ok else "VIOLATED")
            lines.append(f"{c.name}: {mark} ({c.detail})")
        return lines


def check_lower_bound_invariants(
    G: Graph,
    H: Graph,
    strict: bool = False,
    budget: Optional[SearchBudget] = None,
) -> LowerBoundReport:
    """Facts that hold in every graph saturated for H-minor containment.

    With min degree of H at least 3: at least 3n/2 edges (n >= 4), and every
    degree-2 vertex has adjacent neighbors.  With min degree at least 4 and
    H triangle-free: at least 2n edges (n >= 5).  A connected H on >= 3
    vertices allows at most one isolated vertex.  The caller vouches that G
    is saturated; strict mode re-verifies and raises if it is not.
    """
    if strict:
        verdict = is_saturated(G, H, budget)
        if verdict.status != SATURATED:
            raise GraphError(f"graph is not saturated for this target: {verdict.status}")
    n, m = G.n, G.m
    d = H.min_degree()
    checks = []

    applicable = d >= 3 and n >= 4
    ok = 2 * m >= 3 * n
    checks.append(LowerBoundCheck(
        "edges >= 3n/2", applicable, ok if applicable else True,
        f"m={m}, 3n/2={'%g' % (1.5 * n)}"))

    applicable = d >= 4 and H.is_triangle_free() and n >= 5
    ok = m >= 2 * n
    checks.append(LowerBoundCheck(
        "edges >= 2n", applicable, ok if applicable else True,
        f"m={m}, 2n={2 * n}"))

    applicable = d >= 3
    bad = [v for v in range(n) if G.degree(v) == 2
           and not G.has_edge(*G.neighbors(v))]
    checks.append(LowerBoundCheck(
        "degree-2 vertices have adjacent neighbors", applicable,
        not bad if applicable else True,
        "all fine" if not bad else f"vertices {bad}"))

    applicable = H.n >= 3 and H.is_connected()
    isolated = [v for v in range(n) if G.degree(v) == 0]
    checks.append(LowerBoundCheck(
        "at most one isolated vertex", applicable,
        len(isolated) <= 1 if applicable else True,
        f"isolated: {isolated}" if isolated else "none isolated"))

    return LowerBoundReport(checks)
