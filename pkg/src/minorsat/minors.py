"""Exact minor containment: model verification, counting bound, backtracking search.

A minor model assigns host vertices to branch sets, one per target vertex
(unassigned hosts allowed).  The search is complete: a NO-MINOR answer means
the whole space was exhausted, so it can serve as a negative certificate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .graph import Graph, GraphError, _bits

UNASSIGNED = -1

MODEL = "model"
NO_MINOR = "no-minor"
BUDGET_EXHAUSTED = "budget-exhausted"

REASON_COUNTING = "counting-bound"
REASON_EXHAUSTED = "exhausted-search"


class MinorSearchError(RuntimeError):
    """Internal inconsistency in the search machinery (a bug, not bad input)."""


class BudgetExhaustedError(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} node expansions")
        self.nodes = nodes


@dataclass(frozen=True)
class SearchBudget:
    """Cap on search-tree node expansions, with an optional wall-clock cap."""

    max_nodes: int = 50_000_000
    max_seconds: Optional[float] = None

    def __post_init__(self):
        if self.max_nodes < 1:
            raise GraphError(f"max_nodes must be >= 1, got {self.max_nodes}")


@dataclass(frozen=True)
class MinorModel:
    """Witness that target is a minor of host.

    branch_of maps each host vertex to a target vertex (its branch index)
    or UNASSIGNED.  Valid models have non-empty, connected, pairwise
    disjoint branch sets with a host edge across every target edge.
    """

    host: Graph
    target: Graph
    branch_of: tuple[int, ...]

    def branch_sets(self) -> list[list[int]]:
        sets: list[list[int]] = [[] for _ in range(self.target.n)]
        for v, b in enumerate(self.branch_of):
            if b != UNASSIGNED:
                sets[b].append(v)
        return sets


def model_violations(model: MinorModel) -> list[str]:
    """All reasons the model is invalid; empty list means it verifies."""
    host, target = model.host, model.target
    problems = []
    if len(model.branch_of) != host.n:
        return [f"branch_of has length {len(model.branch_of)}, host has {host.n} vertices"]
    masks = [0] * target.n
    for v, b in enumerate(model.branch_of):
        if b == UNASSIGNED:
            continue
        if not 0 <= b < target.n:
            return [f"vertex {v} assigned to branch {b}, out of range"]
        masks[b] |= 1 << v
    for b, mask in enumerate(masks):
        if not mask:
            problems.append(f"branch {b} is empty")
        elif not _mask_connected(host, mask):
            problems.append(f"branch {b} does not induce a connected subgraph")
    for a, b in target.edges:
        nbrs = 0
        for v in _bits(masks[a]):
            nbrs |= host.adj[v]
        if not nbrs & masks[b]:
            problems.append(f"no host edge between branches {a} and {b}")
    return problems


def verify_model(model: MinorModel) -> bool:
    """True iff the model witnesses target as a minor of host."""
    return not model_violations(model)


def _mask_connected(G: Graph, mask: int) -> bool:
    comp = mask & -mask
    frontier = comp
    while frontier:
        grown = 0
        for v in _bits(frontier):
            grown |= G.adj[v]
        frontier = grown & mask & ~comp
        comp |= frontier
    return comp == mask


def extend_to_spanning(model: MinorModel) -> MinorModel:
    """Absorb every unassigned host vertex into an adjacent branch set.

    Existing assignments are unchanged; each absorbed vertex joins the
    branch of its least assigned neighbor at the time it becomes reachable,
    so the result is deterministic and still verifies.  Requires a valid
    model in a connected host.
    """
    if not verify_model(model):
        raise MinorSearchError("extend_to_spanning needs a valid model")
    branch_of = list(model.branch_of)
    host = model.host
    pending = [v for v in range(host.n) if branch_of[v] == UNASSIGNED]
    while pending:
        progressed = False
        remaining = []
        for v in pending:
            owner = next(
                (w for w in _bits(host.adj[v]) if branch_of[w] != UNASSIGNED), None
            )
            if owner is None:
                remaining.append(v)
            else:
                branch_of[v] = branch_of[owner]
                progressed = True
        if not progressed:
            raise MinorSearchError(
                f"vertices {remaining} cannot reach any branch set (host disconnected?)"
            )
        pending = remaining
    return MinorModel(model.host, model.target, tuple(branch_of))


def spanning_edge_bound(host: Graph, target: Graph) -> bool:
    """Edge-count certificate of minor-freeness.

    In a connected host any minor model extends to a spanning one, which
    needs n_host - n_target intra-branch tree edges plus one distinct host
    edge per target edge; so m_host < (n_host - n_target) + m_target rules
    the minor out.  Disconnected hosts are certified per component when the
    target is connected (a connected target's model lives in one component);
    for a disconnected target with a disconnected host the bound stays
    silent.  True = minor impossible; False = no conclusion.
    """
    if target.n > host.n:
        return True
    comps = host.connected_components()
    if len(comps) == 1:
        return host.m < host.n - target.n + target.m
    if not target.is_connected():
        return False
    for comp in comps:
        nc = len(comp)
        if target.n > nc:
            continue
        mc = sum(host.degree(v) for v in comp) // 2
        if not mc < nc - target.n + target.m:
            return False
    return True


@dataclass
class SearchResult:
    """Outcome of find_minor: a verified model, a completed refutation, or a cap."""

    status: str
    model: Optional[MinorModel] = None
    nodes: int = 0
    reason: Optional[str] = None
    seconds: float = 0.0


def _twin_classes(target: Graph) -> list[int]:
    """Interchangeable-vertex classes of the target, used to break branch symmetry.

    Two target vertices are interchangeable when swapping them is an
    automorphism; grouping by equal open neighborhoods or by equal closed
    neighborhoods both give valid classes, and the partition with more
    pruning power is kept.  Returns, per vertex, the previous vertex of its
    class in id order (or -1).
    """

    def partition(keys):
        groups: dict = {}
        for v, key in enumerate(keys):
            groups.setdefault(key, []).append(v)
        prev = [-1] * target.n
        score = 0
        for members in groups.values():
            for earlier, later in zip(members, members[1:]):
                prev[later] = earlier
                score += 1
        return prev, score

    open_prev, open_score = partition([target.adj[v] for v in range(target.n)])
    closed_prev, closed_score = partition(
        [target.adj[v] | (1 << v) for v in range(target.n)]
    )
    return closed_prev if closed_score > open_score else open_prev


class _Search:
    """Backtracking search for one host (or one host component).

    Target vertices are processed in descending-degree order; each branch is
    seeded and then grown only through vertices adjacent to it, so branch
    sets are connected by construction.  Goals alternate between seeding the
    next branch and realizing each target edge back to the already-placed
    branches.  Prunes: residual edge counting, unassigned-vertex counting,
    and reachability (a target edge whose two branch sets can no longer be
    joined through unassigned territory kills the node).
    """

    def __init__(self, host: Graph, target: Graph, allowed: int, budget: SearchBudget,
                 nodes_used: int, deadline: Optional[float]):
        self.host = host
        self.target = target
        self.adj = host.adj
        self.nbrs_list = tuple(tuple(_bits(a)) for a in host.adj)
        self.h = target.n
        self.allowed = allowed
        self.unassigned = allowed
        self.branch_of = [UNASSIGNED] * host.n
        self.sets = [0] * self.h
        self.nbr = [0] * self.h
        self.seed_of = [-1] * self.h
        self.nodes = nodes_used
        self.max_nodes = budget.max_nodes
        self.deadline = deadline
        self.solution: Optional[tuple[int, ...]] = None

        order = sorted(range(self.h), key=lambda t: (-target.degree(t), t))
        self.seed_order = order
        self.seeded = 0
        rank = {t: i for i, t in enumerate(order)}
        # realize each target edge as soon as both endpoints are placed
        self.tpairs = sorted(
            ((min(e, key=rank.get), max(e, key=rank.get)) for e in target.edges),
            key=lambda e: (rank[e[1]], rank[e[0]]),
        )
        self.unsat = len(self.tpairs)
        self.twin_prev = _twin_classes(target)
        # with a single interchangeability class, branch minima can be assumed
        # ascending, which forces strong seed dominance (see seed goal below)
        self.fully_symmetric = sum(1 for p in self.twin_prev if p == -1) == 1

        # edges with at least one endpoint unassigned, maintained incrementally
        self.avail_edges = 0
        for v in _bits(allowed):
            self.avail_edges += (self.adj[v] & allowed).bit_count()
        self.avail_edges //= 2

        # Waste accounting.  A completion inside a connected region extends to
        # a region-spanning model, which spends exactly n - h edges on branch
        # trees and one edge per target edge; every other edge is waste (an
        # intra-branch cycle edge, a duplicate cross edge, or a cross edge
        # between branches not adjacent in the target).  Waste only grows as
        # assignments are made, so waste > slack is a dead end.
        if allowed and _mask_connected(host, allowed):
            nr = allowed.bit_count()
            self.slack = self.avail_edges - (nr - self.h) - target.m
        else:
            self.slack = None
        self.waste = 0
        self.cross = [[0] * self.h for _ in range(self.h)]
        self.tadj = target.adj

    def seed_hint(self, branch_of) -> bool:
        """Install a partial assignment; False if it is immediately infeasible.

        Pinning vertices to specific branches is incompatible with the
        ascending-seed symmetry break, so that break is switched off.
        """
        self.twin_prev = [-1] * self.h
        self.fully_symmetric = False
        for v, b in enumerate(branch_of):
            if b == UNASSIGNED:
                continue
            if not self.allowed >> v & 1 or not self.unassigned >> v & 1:
                return False
            self._assign(v, b)
            if self.seed_of[b] == -1:
                self.seed_of[b] = v
        for b in range(self.h):
            if self.sets[b] and not _mask_connected(self.host, self.sets[b]):
                raise GraphError(f"seed branch {b} is not connected")
        filled = [t for t in self.seed_order if self.sets[t]]
        self.seed_order = filled + [t for t in self.seed_order if not self.sets[t]]
        self.seeded = len(filled)
        # incremental waste assumed adjacency-ordered insertion; redo exactly
        self.waste = 0
        for b in range(self.h):
            mask = self.sets[b]
            if not mask:
                continue
            intra = 0
            for v in _bits(mask):
                intra += (self.adj[v] & mask).bit_count()
            self.waste += intra // 2 - (mask.bit_count() - 1)
        for b in range(self.h):
            for c in range(b + 1, self.h):
                cnt = self.cross[b][c]
                if self.tadj[b] >> c & 1:
                    self.waste += cnt - 1 if cnt else 0
                else:
                    self.waste += cnt
        return True

    def _assign(self, v: int, b: int):
        branch_of = self.branch_of
        cross_b = self.cross[b]
        tadj_b = self.tadj[b]
        assigned_nbrs = 0
        intra = 0
        waste = 0
        unsat = 0
        for w in self.nbrs_list[v]:
            c = branch_of[w]
            if c == UNASSIGNED:
                continue
            assigned_nbrs += 1
            if c == b:
                intra += 1
            else:
                before = cross_b[c]
                cross_b[c] = before + 1
                self.cross[c][b] = before + 1
                if tadj_b >> c & 1:
                    if before:
                        waste += 1
                    else:
                        unsat += 1
                else:
                    waste += 1
        if intra:
            # growth attaches through one tree edge; extras are cycle edges
            waste += intra - 1
        branch_of[v] = b
        self.sets[b] |= 1 << v
        self.unassigned &= ~(1 << v)
        self.avail_edges -= assigned_nbrs
        self.waste += waste
        self.unsat -= unsat
        old_nbr = self.nbr[b]
        self.nbr[b] |= self.adj[v]
        return old_nbr

    def _unassign(self, v: int, b: int, old_nbr: int):
        branch_of = self.branch_of
        branch_of[v] = UNASSIGNED
        cross_b = self.cross[b]
        tadj_b = self.tadj[b]
        assigned_nbrs = 0
        intra = 0
        waste = 0
        unsat = 0
        for w in self.nbrs_list[v]:
            c = branch_of[w]
            if c == UNASSIGNED:
                continue
            assigned_nbrs += 1
            if c == b:
                intra += 1
            else:
                after = cross_b[c] - 1
                cross_b[c] = after
                self.cross[c][b] = after
                if tadj_b >> c & 1:
                    if after:
                        waste += 1
                    else:
                        unsat += 1
                else:
                    waste += 1
        if intra:
            waste += intra - 1
        self.sets[b] &= ~(1 << v)
        self.unassigned |= 1 << v
        self.avail_edges += assigned_nbrs
        self.waste -= waste
        self.unsat += unsat
        self.nbr[b] = old_nbr

    def _reach(self, mask: int) -> int:
        """Unassigned vertices joined to mask through unassigned vertices only."""
        grown = 0
        for v in _bits(mask):
            grown |= self.adj[v]
        frontier = grown & self.unassigned
        seen = frontier
        while frontier:
            grown = 0
            for v in _bits(frontier):
                grown |= self.adj[v]
            frontier = grown & self.unassigned & ~seen
            seen |= frontier
        return seen

    def run(self) -> bool:
        try:
            return self._expand(0, False)
        except RecursionError:
            raise MinorSearchError("recursion limit hit; instance larger than supported")

    def _expand(self, pi: int, b_locked: bool) -> bool:
        """pi indexes the first possibly-unsatisfied target pair.

        While working on pair pi, growth of its earlier side is disabled once
        the later side has grown (b_locked): any completion reachable by
        interleaved growth is reachable by growing one side fully first, so
        only the canonical interleaving is explored.
        """
        self.nodes += 1
        if self.nodes >= self.max_nodes:
            raise BudgetExhaustedError(self.nodes)
        if self.deadline is not None and self.nodes % 4096 == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExhaustedError(self.nodes)

        sets = self.sets
        nbr = self.nbr
        cross = self.cross
        unassigned = self.unassigned
        tpairs = self.tpairs

        while pi < len(tpairs):
            a, b = tpairs[pi]
            if not sets[a] or not sets[b] or not cross[a][b]:
                break
            pi += 1
            b_locked = False
        current = tpairs[pi] if pi < len(tpairs) else None
        if current is None and self.seeded == self.h:
            self.solution = tuple(self.branch_of)
            return True

        if unassigned.bit_count() < self.h - self.seeded:
            return False
        if self.avail_edges < self.unsat:
            return False
        if self.slack is not None and self.waste > self.slack:
            return False

        if current is not None and sets[current[0]] and sets[current[1]]:
            a, b = current
            reach_a = self._reach(sets[a])
            reach_b = self._reach(sets[b])
            opts_a = 0 if b_locked else nbr[a] & unassigned & reach_b
            opts_b = nbr[b] & unassigned & reach_a
            # vertices that realize the edge immediately come first
            for mask, t, lock in ((opts_a & nbr[b], a, False),
                                  (opts_b & nbr[a], b, True),
                                  (opts_a & ~nbr[b], a, False),
                                  (opts_b & ~nbr[a], b, True)):
                while mask:
                    low = mask & -mask
                    mask ^= low
                    v = low.bit_length() - 1
                    old = self._assign(v, t)
                    if self._expand(pi, lock):
                        return True
                    self._unassign(v, t, old)
            return False

        # seed the next branch in the fixed order
        t = self.seed_order[self.seeded]
        candidates = unassigned
        prev = self.twin_prev[t]
        if prev != -1 and self.seed_of[prev] != -1:
            candidates &= ~((2 << self.seed_of[prev]) - 1)
        if self.fully_symmetric:
            # every unassigned vertex below the new branch minimum must still
            # be reachable by an already-placed branch
            union = 0
            for mask in sets:
                union |= mask
            stranded = unassigned & ~self._reach(union) if union else unassigned
            if stranded:
                candidates &= 2 * (stranded & -stranded) - 1
        while candidates:
            low = candidates & -candidates
            candidates ^= low
            v = low.bit_length() - 1
            old = self._assign(v, t)
            self.seed_of[t] = v
            self.seeded += 1
            if self._expand(pi, False):
                return True
            self.seeded -= 1
            self.seed_of[t] = -1
            self._unassign(v, t, old)
        return False


def find_minor(
    host: Graph,
    target: Graph,
    budget: Optional[SearchBudget] = None,
    seed: Optional[dict] = None,
    use_counting_bound: bool = True,
) -> SearchResult:
    """Decide whether host contains target as a minor.

    Returns a SearchResult whose status is MODEL (with a verified witness),
    NO_MINOR (search space exhausted, or the counting bound fired), or
    BUDGET_EXHAUSTED.  Deterministic: identical inputs give the identical
    answer and witness.  seed maps host vertices to branch indices and
    restricts the search to completions of that partial model.
    """
    if budget is None:
        budget = SearchBudget()
    if target.n < 1:
        raise GraphError("target needs at least one vertex")
    started = time.monotonic()
    deadline = None
    if budget.max_seconds is not None:
        deadline = started + budget.max_seconds

    if use_counting_bound:
        if target.n > host.n or target.m > host.m or spanning_edge_bound(host, target):
            return SearchResult(NO_MINOR, nodes=0, reason=REASON_COUNTING,
                                seconds=time.monotonic() - started)

    full = (1 << host.n) - 1
    regions = [full]
    if seed is None and target.is_connected():
        comps = host.connected_components()
        if len(comps) > 1:
            regions = []
            for comp in comps:
                mask = 0
                for v in comp:
                    mask |= 1 << v
                regions.append(mask)

    nodes = 0
    try:
        for region in regions:
            if region.bit_count() < target.n:
                nodes += 1
                continue
            search = _Search(host, target, region, budget, nodes, deadline)
            if seed is not None:
                branch_of = [UNASSIGNED] * host.n
                for v, b in seed.items():
                    if not 0 <= v < host.n or not 0 <= b < target.n:
                        raise GraphError(f"seed entry {v}->{b} out of range")
                    branch_of[v] = b
                if not search.seed_hint(branch_of):
                    nodes = search.nodes
                    continue
            found = search.run()
            nodes = search.nodes
            if found:
                model = MinorModel(host, target, search.solution)
                bad = model_violations(model)
                if bad:
                    raise MinorSearchError(f"search produced an invalid model: {bad}")
                return SearchResult(MODEL, model=model, nodes=nodes,
                                    seconds=time.monotonic() - started)
    except BudgetExhaustedError as exc:
        return SearchResult(BUDGET_EXHAUSTED, nodes=exc.nodes,
                            seconds=time.monotonic() - started)
    return SearchResult(NO_MINOR, nodes=nodes, reason=REASON_EXHAUSTED,
                        seconds=time.monotonic() - started)


def has_minor(host: Graph, target: Graph, budget: Optional[SearchBudget] = None) -> bool:
    """Boolean wrapper over find_minor; budget exhaustion raises, never a bool."""
    result = find_minor(host, target, budget)
    if result.status == BUDGET_EXHAUSTED:
        raise BudgetExhaustedError(result.nodes)
    return result.status == MODEL


def format_model(model: MinorModel, labels=None) -> str:
    """Branch sets in branch order, one line each, with optional vertex labels."""
    render = (lambda v: str(labels(v))) if labels else str
    lines = []
    for b, members in enumerate(model.branch_sets()):
        lines.append(f"branch {b}: [{', '.join(render(v) for v in members)}]")
    return "\n".join(lines)
