"""Saturated-graph families: clique-with-pendant-subsets blocks, star blocks,
and chains of blocks glued along a shared clique.

All constructors are pure and deterministically numbered, and every count
formula in the docstrings is an exact integer identity checked by the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .graph import Graph, GraphError, generalized_petersen, vertex_connectivity, wagner
from .minors import spanning_edge_bound


@dataclass(frozen=True)
class GlueSpec:
    """copies of block identified along shared, which must induce a clique."""

    block: Graph
    shared: tuple[int, ...]
    copies: int


def glue_on_clique(spec: GlueSpec) -> Graph:
    """Glue copies of a block along a common clique.

    Copy 0 keeps its vertex ids; copy c maps its non-shared vertices, in
    ascending order, onto a fresh block of ids starting at
    n_b + (c-1) * (n_b - s).  Resulting counts: n = copies*n_b - (copies-1)*s
    and m = copies*m_b - (copies-1)*C(s,2) where s = len(shared).
    """
    block, shared, copies = spec.block, tuple(spec.shared), spec.copies
    if copies < 1:
        raise GraphError(f"copies must be >= 1, got {copies}")
    if len(set(shared)) != len(shared):
        raise GraphError("shared vertices must be distinct")
    for v in shared:
        if not 0 <= v < block.n:
            raise GraphError(f"shared vertex {v} out of range")
    for u, v in combinations(shared, 2):
        if not block.has_edge(u, v):
            raise GraphError(f"shared set is not a clique: missing edge ({u}, {v})")
    s = len(shared)
    shared_set = set(shared)
    others = [v for v in range(block.n) if v not in shared_set]
    edges = set(block.edges)
    for c in range(1, copies):
        base = block.n + (c - 1) * (block.n - s)
        mapping = dict(zip(shared, shared))
        mapping.update({v: base + i for i, v in enumerate(others)})
        for u, v in block.edges:
            mu, mv = mapping[u], mapping[v]
            edges.add((mu, mv) if mu < mv else (mv, mu))
    n = copies * block.n - (copies - 1) * s
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Clique plus pendant subset-vertices (upper-bound blocks)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PendantBlockParams:
    """Block parameters: target order s, target min degree d, target
    connectivity kappa, and how many blocks to glue."""

    s: int
    d: int
    kappa: int
    copies: int

    def __post_init__(self):
        if not 3 <= self.d < self.s:
            raise GraphError(f"need 3 <= d < s, got d={self.d}, s={self.s}")
        if not 1 <= self.kappa <= self.d:
            raise GraphError(f"need 1 <= kappa <= d, got kappa={self.kappa}")
        if self.copies < 1:
            raise GraphError(f"copies must be >= 1, got {self.copies}")


def pendant_block(s: int, d: int) -> tuple[Graph, tuple[int, ...]]:
    """Clique on s-1 vertices plus one pendant vertex per (d-1)-subset but one.

    Vertices 0..s-2 form the clique; each (d-1)-subset of them in
    lexicographic order, except the first ({0..d-2}, returned as the omitted
    set), gets a fresh vertex joined to all its members.  Counts:
    n = (s-1) + C(s-1, d-1) - 1 and m = C(s-1, 2) + (d-1)(C(s-1, d-1) - 1).
    """
    if not 3 <= d < s:
        raise GraphError(f"need 3 <= d < s, got d={d}, s={s}")
    edges = list(combinations(range(s - 1), 2))
    subsets = list(combinations(range(s - 1), d - 1))
    omitted = subsets[0]
    nid = s - 1
    for subset in subsets[1:]:
        edges.extend((u, nid) for u in subset)
        nid += 1
    return Graph(nid, edges), omitted


def pendant_family(params: PendantBlockParams) -> Graph:
    """Glued copies of the pendant block, shared set chosen by connectivity.

    kappa = 1 gives disjoint copies; 2 <= kappa <= d-1 glues along the first
    kappa-1 clique vertices; kappa = d glues along the omitted (d-1)-subset,
    which by construction is the first d-1 clique vertices.
    """
    block, omitted = pendant_block(params.s, params.d)
    if params.kappa == params.d:
        shared = omitted
    else:
        shared = tuple(range(params.kappa - 1))
    return glue_on_clique(GlueSpec(block, shared, params.copies))


def pendant_density(s: int, d: int) -> Fraction:
    """Exact edges-per-vertex rate of the glued pendant family.

    Equals (d-1) + (C(s-1,2) + C(d,2) - (d-1)(s-1)) / (C(s-1,d-1) + (s-1) - d),
    which is also (m_b - C(d-1,2)) / (n_b - (d-1)) for the block counts above.
    Never exceeds d.
    """
    if not 3 <= d < s:
        raise GraphError(f"need 3 <= d < s, got d={d}, s={s}")
    return (d - 1) + Fraction(
        comb(s - 1, 2) + comb(d, 2) - (d - 1) * (s - 1),
        comb(s - 1, d - 1) + (s - 1) - d,
    )


# ---------------------------------------------------------------------------
# Star-saturated block
# ---------------------------------------------------------------------------

def star_saturated(r: int, path_len: int) -> Graph:
    """Clique on r vertices with edge {0,1} replaced by a path of new vertices.

    The path runs 0, r, r+1, ..., r+path_len-1, 1.  Counts: n = r + path_len
    and m = C(r,2) + path_len.  The result has no r-leaf star minor but gains
    one with any added edge.
    """
    if r < 3:
        raise GraphError(f"need r >= 3, got {r}")
    if path_len < 1:
        raise GraphError(f"need path_len >= 1, got {path_len}")
    edges = [e for e in combinations(range(r), 2) if e != (0, 1)]
    prev = 0
    for v in range(r, r + path_len):
        edges.append((prev, v))
        prev = v
    edges.append((prev, 1))
    return Graph(r + path_len, edges)


# ---------------------------------------------------------------------------
# Edge-glued chains of triangle-free blocks
# ---------------------------------------------------------------------------

CHAIN_FAMILIES = {
    "gp6": ("GP(8,3)", 6),
    "gp7": ("GP(13,5)", 7),
    "gp8": ("GP(19,7)", 8),
    "wagner": ("wagner", 5),
}


def chain_block(family: str) -> tuple[Graph, int]:
    """The block and the clique order r it is saturated against."""
    if family == "gp6":
        return generalized_petersen(8, 3), 6
    if family == "gp7":
        return generalized_petersen(13, 5), 7
    if family == "gp8":
        return generalized_petersen(19, 7), 8
    if family == "wagner":
        return wagner(), 5
    raise GraphError(f"unknown chain family {family!r} (use gp6, gp7, gp8, wagner)")


def chain(family: str, copies: int) -> Graph:
    """Chain of copies glued along the outer edge {0, 1} of the block."""
    block, _ = chain_block(family)
    return glue_on_clique(GlueSpec(block, (0, 1), copies))


def block_density(block: Graph, shared_size: int) -> Fraction:
    """Edges contributed per vertex by each extra glued copy:
    (m_b - C(s,2)) / (n_b - s)."""
    if not 0 <= shared_size < block.n:
        raise GraphError(f"shared size {shared_size} out of range")
    return Fraction(block.m - comb(shared_size, 2), block.n - shared_size)


@dataclass
class ChainCertificate:
    """Why a glued chain has no target-clique minor, by counting alone.

    A minor of a target with connectivity at least len(shared)+1 cannot
    straddle the shared clique of a gluing, so it would have to live inside
    one block; the block's edge-count bound rules that out.
    """

    block_bound: bool
    block_detail: str
    separator_ok: bool
    separator_detail: str

    @property
    def minor_free(self) -> bool:
        return self.block_bound and self.separator_ok

    def to_lines(self) -> list[str]:
        return [
            f"block counting bound: {self.block_detail}"
            + (" -> holds" if self.block_bound else " -> silent"),
            f"gluing separator: {self.separator_detail}"
            + (" -> minors stay within one block" if self.separator_ok else " -> no conclusion"),
        ]


def chain_counting_certificate(block: Graph, shared: tuple[int, ...],
                               target: Graph) -> ChainCertificate:
    bound = spanning_edge_bound(block, target)
    need = block.n - target.n + target.m
    kappa = vertex_connectivity(target)
    sep = len(shared) <= kappa - 1
    return ChainCertificate(
        block_bound=bound,
        block_detail=f"{block.m} < {block.n} - {target.n} + {target.m} = {need}",
        separator_ok=sep,
        separator_detail=f"|shared| = {len(shared)} <= kappa(target) - 1 = {kappa - 1}",
    )
