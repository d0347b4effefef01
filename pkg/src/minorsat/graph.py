"""Simple undirected graphs on vertices 0..n-1, generators, symmetry helpers, file I/O.

Graphs are immutable: edge lists are normalized at construction and every
mutation-style operation returns a new value.  Adjacency is kept per vertex
as an integer bitmask, which is what the minor search and the orbit
machinery iterate on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Invalid graph construction or query arguments."""


def _bits(mask: int):
    """Yield set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Finite simple undirected graph with a fixed vertex count."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be >= 0, got {n}")
        seen = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            seen.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(seen))
        adj = [0] * n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj = tuple(adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and 0 <= v < self.n and bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adj)

    def min_degree(self) -> int:
        if self.n == 0:
            raise GraphError("min_degree of empty graph")
        return min(self.degrees())

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(_bits(self.adj[v]))

    def non_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (u, v)
            for u, v in combinations(range(self.n), 2)
            if not self.adj[u] >> v & 1
        )

    def connected_components(self) -> list[list[int]]:
        """Components as sorted vertex lists, ordered by least vertex."""
        remaining = (1 << self.n) - 1
        comps = []
        while remaining:
            start = (remaining & -remaining).bit_length() - 1
            comp = 1 << start
            frontier = comp
            while frontier:
                grown = 0
                for v in _bits(frontier):
                    grown |= self.adj[v]
                frontier = grown & remaining & ~comp
                comp |= frontier
            comps.append(list(_bits(comp)))
            remaining &= ~comp
        return comps

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(self.connected_components()) == 1

    def is_triangle_free(self) -> bool:
        return all(not self.adj[u] & self.adj[v] for u, v in self.edges)

    def add_edge(self, u: int, v: int) -> "Graph":
        """Return a copy with the extra edge; rejects loops and present edges."""
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
        if self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) already present")
        return Graph(self.n, self.edges + ((u, v),))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __reduce__(self):
        return (Graph, (self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def make_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from a vertex count and edge pairs (duplicates collapse)."""
    return Graph(n, edge_list)


# ---------------------------------------------------------------------------
# Named generators
# ---------------------------------------------------------------------------

def complete(r: int) -> Graph:
    if r < 1:
        raise GraphError(f"complete graph needs r >= 1, got {r}")
    return Graph(r, combinations(range(r), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """Parts 0..a-1 and a..a+b-1."""
    if a < 1 or b < 1:
        raise GraphError(f"complete bipartite needs both parts >= 1, got ({a}, {b})")
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def star(r: int) -> Graph:
    """Star with center 0 and r leaves 1..r."""
    if r < 1:
        raise GraphError(f"star needs r >= 1, got {r}")
    return Graph(r + 1, ((0, i) for i in range(1, r + 1)))


def path(r: int) -> Graph:
    """Path on r vertices 0-1-...-(r-1)."""
    if r < 1:
        raise GraphError(f"path needs r >= 1, got {r}")
    return Graph(r, ((i, i + 1) for i in range(r - 1)))


def cycle(r: int) -> Graph:
    if r < 3:
        raise GraphError(f"cycle needs r >= 3, got {r}")
    return Graph(r, ((i, (i + 1) % r) for i in range(r)))


def wagner() -> Graph:
    """Moebius ladder on 8 vertices: the 8-cycle plus the four long diagonals."""
    edges = [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)]
    return Graph(8, edges)


def generalized_petersen(n: int, k: int) -> Graph:
    """GP(n, k): outer cycle x_0..x_{n-1}, spokes x_i y_i, inner edges y_i y_{i+k}.

    Vertex numbering is fixed as x_i = i and y_i = n + i; all index
    arithmetic is modulo n.  Requires 1 <= k < n/2 so the inner edges form
    a simple 2-regular graph (2k = n would create parallel edges).
    """
    if n < 3:
        raise GraphError(f"generalized Petersen graph needs n >= 3, got n={n}")
    if not 1 <= k or 2 * k >= n:
        raise GraphError(f"skip k={k} out of range for n={n} (need 1 <= k < n/2)")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((i, n + i))
        edges.append((n + i, n + (i + k) % n))
    return Graph(2 * n, edges)


# ---------------------------------------------------------------------------
# Labels for generalized Petersen vertices
# ---------------------------------------------------------------------------

_GP_LABEL_RE = re.compile(r"^([xy])(\d+)$")


@dataclass(frozen=True)
class GPLabel:
    """Outer/inner label for a GP(n, k) vertex: x_i or y_i."""

    kind: str  # "x" or "y"
    index: int

    def vertex(self, n: int) -> int:
        if not 0 <= self.index < n:
            raise GraphError(f"label index {self.index} out of range for n={n}")
        return self.index if self.kind == "x" else n + self.index

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


def gp_label(n: int, v: int) -> GPLabel:
    """Label of vertex id v in the GP(n, k) numbering."""
    if not 0 <= v < 2 * n:
        raise GraphError(f"vertex {v} out of range for GP with n={n}")
    return GPLabel("x", v) if v < n else GPLabel("y", v - n)


def parse_gp_label(text: str) -> GPLabel:
    match = _GP_LABEL_RE.match(text.strip())
    if not match:
        raise GraphError(f"bad GP vertex label {text!r} (expected like 'x3' or 'y12')")
    return GPLabel(match.group(1), int(match.group(2)))


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------

def vertex_connectivity(G: Graph) -> int:
    """Minimum number of vertex deletions that disconnect G or leave one vertex.

    Exhaustive over deletion subsets of increasing size; complete graphs on
    r vertices give r-1.  Intended for the small graphs that appear as
    minor targets, not for large hosts.
    """
    if G.n < 2:
        raise GraphError(f"vertex connectivity needs n >= 2, got n={G.n}")
    if G.m == G.n * (G.n - 1) // 2:
        return G.n - 1
    full = (1 << G.n) - 1
    for k in range(G.n):
        for cut in combinations(range(G.n), k):
            allowed = full
            for v in cut:
                allowed &= ~(1 << v)
            if allowed.bit_count() <= 1 or not _mask_connected(G, allowed):
                return k
    raise AssertionError("unreachable: deleting n-1 vertices always leaves one")


def _mask_connected(G: Graph, allowed: int) -> bool:
    start = (allowed & -allowed).bit_length() - 1
    comp = 1 << start
    frontier = comp
    while frontier:
        grown = 0
        for v in _bits(frontier):
            grown |= G.adj[v]
        frontier = grown & allowed & ~comp
        comp |= frontier
    return comp == allowed


# ---------------------------------------------------------------------------
# Automorphisms and non-edge orbits
# ---------------------------------------------------------------------------

def is_automorphism(G: Graph, perm: Sequence[int]) -> bool:
    """True iff perm maps the edge set of G onto itself."""
    if len(perm) != G.n:
        raise GraphError(f"permutation length {len(perm)} != n={G.n}")
    if sorted(perm) != list(range(G.n)):
        raise GraphError("permutation is not a bijection on 0..n-1")
    mapped = set()
    for u, v in G.edges:
        pu, pv = perm[u], perm[v]
        mapped.add((pu, pv) if pu < pv else (pv, pu))
    return mapped == set(G.edges)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Permutation composition p after q: v -> p[q[v]]."""
    return tuple(p[q[v]] for v in range(len(q)))


def gp_dihedral_group(n: int) -> list[tuple[int, ...]]:
    """The 2n symmetries of GP(n, k) generated by index rotation and reflection.

    Rotation sends x_i -> x_{i+1}, y_i -> y_{i+1}; reflection sends
    x_i -> x_{-i}, y_i -> y_{-i} (indices mod n).  Every element is an
    automorphism of GP(n, k) for any valid k.
    """
    group = []
    for a in range(n):
        rot = [0] * (2 * n)
        ref = [0] * (2 * n)
        for i in range(n):
            rot[i] = (i + a) % n
            rot[n + i] = n + (i + a) % n
            ref[i] = (a - i) % n
            ref[n + i] = n + (a - i) % n
        group.append(tuple(rot))
        group.append(tuple(ref))
    return group


def apply_to_pair(perm: Sequence[int], pair: tuple[int, int]) -> tuple[int, int]:
    u, v = perm[pair[0]], perm[pair[1]]
    return (u, v) if u < v else (v, u)


def nonedge_orbits(G: Graph, group: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """One canonical representative per orbit of the group action on non-edges.

    The representative is the lexicographically least pair in its orbit;
    representatives are returned in ascending order and together cover every
    non-edge exactly once.  Raises if some group element is not an
    automorphism of G.
    """
    for idx, perm in enumerate(group):
        if not is_automorphism(G, perm):
            raise GraphError(f"group element {idx} is not an automorphism")
    reps = []
    seen = set()
    for pair in G.non_edges():
        if pair in seen:
            continue
        reps.append(pair)
        for perm in group:
            seen.add(apply_to_pair(perm, pair))
    return reps


def orbit_of_pair(group: Sequence[Sequence[int]], pair: tuple[int, int]) -> set:
    return {apply_to_pair(perm, pair) for perm in group}


def find_mapping_element(
    group: Sequence[Sequence[int]], src: tuple[int, int], dst: tuple[int, int]
):
    """A group element sending the unordered pair src to dst, or None."""
    want = (dst[0], dst[1]) if dst[0] < dst[1] else (dst[1], dst[0])
    for perm in group:
        if apply_to_pair(perm, src) == want:
            return perm
    return None


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------

def to_edge_list_text(G: Graph, comments: Iterable[str] = ()) -> str:
    """Writer: optional '#' comment lines, then "n m", then sorted "u v" lines."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"{G.n} {G.m}")
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def from_edge_list_text(text: str) -> Graph:
    """Parser: tolerates comment lines, blank lines, any edge order/orientation."""
    header = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge-list line {raw!r}")
        a, b = int(parts[0]), int(parts[1])
        if header is None:
            header = (a, b)
        else:
            edges.append((a, b))
    if header is None:
        raise GraphError("empty edge-list input")
    n, m = header
    if len(edges) != m:
        raise GraphError(f"header says m={m} but found {len(edges)} edges")
    return Graph(n, edges)


def write_edge_list(G: Graph, filename, comments: Iterable[str] = ()) -> None:
    with open(filename, "w", encoding="utf-8") as fh:
        fh.write(to_edge_list_text(G, comments))


def read_edge_list(filename) -> Graph:
    with open(filename, "r", encoding="utf-8") as fh:
        return from_edge_list_text(fh.read())
