"""
Looped simple graphs and the elementary operations on them.

Vertices are ``0..n-1``.  Neighborhoods and the loop set are stored as bit
masks, so a local complement is a handful of XORs.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .gf2 import Gf2Matrix

CANONICAL_CODE_LIMIT = 8


@dataclass(frozen=True)
class LoopedSimpleGraph:
    n: int
    adj: tuple[int, ...]  # adj[v] = bit mask of N(v)
    loops: int = 0  # bit mask of looped vertices

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        if self.loops & ~full or self.loops < 0:
            raise ValueError("loop set mentions a vertex outside the graph")
        for v, nb in enumerate(self.adj):
            if nb & ~full or nb < 0:
                raise ValueError(f"vertex {v} has a neighbor outside the graph")
            if (nb >> v) & 1:
                raise ValueError(f"vertex {v} lists itself as a neighbor; use loops")
            for w in _bits(nb):
                if not (self.adj[w] >> v) & 1:
                    raise ValueError(f"adjacency is not symmetric at ({v}, {w})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] = (), loops: Iterable[int] = ()) -> LoopedSimpleGraph:
        adj = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {tuple(e)} references a vertex outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"edge {tuple(e)} is a loop; pass it in loops")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        mask = 0
        for v in loops:
            if not 0 <= v < n:
                raise ValueError(f"loop at {v} is outside 0..{n - 1}")
            mask |= 1 << v
        return cls(n, tuple(adj), mask)

    @classmethod
    def empty(cls, n: int) -> LoopedSimpleGraph:
        return cls(n, (0,) * n, 0)

    def neighbors(self, v: int) -> list[int]:
        self._check(v)
        return list(_bits(self.adj[v]))

    def is_looped(self, v: int) -> bool:
        self._check(v)
        return bool((self.loops >> v) & 1)

    def adjacent(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        self._check(v)
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    def looped_vertices(self) -> list[int]:
        return list(_bits(self.loops))

    def is_simple(self) -> bool:
        return self.loops == 0

    def _check(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise ValueError(f"invalid vertex {v!r} for a graph on {self.n} vertices")

    def relabel(self, perm: Sequence[int]) -> LoopedSimpleGraph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the vertices")
        adj = [0] * self.n
        loops = 0
        for v in range(self.n):
            nb = 0
            for w in _bits(self.adj[v]):
                nb |= 1 << perm[w]
            adj[perm[v]] = nb
            if (self.loops >> v) & 1:
                loops |= 1 << perm[v]
        return LoopedSimpleGraph(self.n, tuple(adj), loops)

    def __str__(self) -> str:
        return f"LoopedSimpleGraph(n={self.n}, edges={self.edges()}, loops={self.looped_vertices()})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def adjacency_matrix(g: LoopedSimpleGraph) -> Gf2Matrix:
    rows = tuple(g.adj[v] | (g.loops & (1 << v)) for v in range(g.n))
    return Gf2Matrix(g.n, g.n, rows)


def graph_from_adjacency(a: Gf2Matrix) -> LoopedSimpleGraph:
    if a.nrows != a.ncols:
        raise ValueError("adjacency matrix must be square")
    n = a.nrows
    loops = 0
    adj = []
    for v, row in enumerate(a.rows):
        if (row >> v) & 1:
            loops |= 1 << v
        adj.append(row & ~(1 << v))
    return LoopedSimpleGraph(n, tuple(adj), loops)


def simple_local_complement(g: LoopedSimpleGraph, v: int) -> LoopedSimpleGraph:
    """Toggle every adjacency between distinct neighbors of ``v``."""
    g._check(v)
    nb = g.adj[v]
    adj = list(g.adj)
    for w in _bits(nb):
        adj[w] ^= nb & ~(1 << w)
    return LoopedSimpleGraph(g.n, tuple(adj), g.loops)


def nonsimple_local_complement(g: LoopedSimpleGraph, v: int) -> LoopedSimpleGraph:
    """Simple local complement at ``v``, then toggle the loops on N(v)."""
    h = simple_local_complement(g, v)
    return LoopedSimpleGraph(h.n, h.adj, h.loops ^ g.adj[v])


def loop_complement(g: LoopedSimpleGraph, v: int) -> LoopedSimpleGraph:
    g._check(v)
    return LoopedSimpleGraph(g.n, g.adj, g.loops ^ (1 << v))


def edge_pivot(g: LoopedSimpleGraph, v: int, w: int) -> LoopedSimpleGraph:
    g._check(v)
    g._check(w)
    if v == w or not g.adjacent(v, w):
        raise ValueError(f"pivot needs adjacent distinct vertices, got ({v}, {w})")
    return simple_local_complement(simple_local_complement(simple_local_complement(g, v), w), v)


def delete_vertex(g: LoopedSimpleGraph, v: int) -> LoopedSimpleGraph:
    g._check(v)
    keep = [u for u in range(g.n) if u != v]
    return induced_subgraph(g, keep)


def induced_subgraph(g: LoopedSimpleGraph, keep: Sequence[int]) -> LoopedSimpleGraph:
    """Subgraph on ``keep``, reindexed in the given order."""
    pos = {u: i for i, u in enumerate(keep)}
    if len(pos) != len(keep):
        raise ValueError("repeated vertex")
    adj = []
    loops = 0
    for i, u in enumerate(keep):
        g._check(u)
        nb = 0
        for w in _bits(g.adj[u]):
            j = pos.get(w)
            if j is not None:
                nb |= 1 << j
        adj.append(nb)
        if (g.loops >> u) & 1:
            loops |= 1 << i
    return LoopedSimpleGraph(len(keep), tuple(adj), loops)


def disjoint_union(g1: LoopedSimpleGraph, g2: LoopedSimpleGraph) -> LoopedSimpleGraph:
    shift = g1.n
    adj = g1.adj + tuple(nb << shift for nb in g2.adj)
    return LoopedSimpleGraph(g1.n + g2.n, adj, g1.loops | (g2.loops << shift))


def connected_components(g: LoopedSimpleGraph) -> list[list[int]]:
    seen = 0
    out = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(list(_bits(comp)))
    return out


def find_matched_4paths(g: LoopedSimpleGraph) -> list[tuple[int, int, int, int]]:
    """Ordered quadruples (u, v, w, x) forming a matched 4-path."""
    out = []
    for v in range(g.n):
        if g.adj[v].bit_count() != 2 or (g.loops >> v) & 1:
            continue
        for w in _bits(g.adj[v]):
            if g.adj[w].bit_count() != 2 or (g.loops >> w) & 1:
                continue
            (u,) = _bits(g.adj[v] & ~(1 << w))
            (x,) = _bits(g.adj[w] & ~(1 << v))
            if len({u, v, w, x}) != 4 or (g.loops >> u) & 1 or (g.loops >> x) & 1:
                continue
            if g.adj[u] & ~(1 << v) == g.adj[x] & ~(1 << w):
                out.append((u, v, w, x))
    return out


def _code_bits(g: LoopedSimpleGraph, order: Sequence[int]) -> tuple[int, ...]:
    # upper triangle column by column, then loops
    bits = [(g.adj[order[i]] >> order[j]) & 1 for j in range(g.n) for i in range(j)]
    bits += [(g.loops >> order[i]) & 1 for i in range(g.n)]
    return tuple(bits)


def canonical_code(g: LoopedSimpleGraph, limit: int = CANONICAL_CODE_LIMIT) -> bytes:
    """Lexicographically least encoding over all vertex orderings.

    The encoding is the upper triangle of the relabeled adjacency read column
    by column, followed by the loop bits.  Branch-and-bound over partial
    orderings: after ``k`` vertices are placed the first ``k(k-1)/2`` bits are
    fixed, so prefixes worse than the incumbent are cut.
    """
    n = g.n
    if n > limit:
        raise ValueError(f"canonical code limited to n <= {limit}, got {n}")
    best: list[tuple[int, ...] | None] = [None]

    def prefix_bits(order: list[int]) -> list[int]:
        k = len(order)
        last = order[-1]
        return [(g.adj[order[i]] >> last) & 1 for i in range(k - 1)]

    def recurse(order: list[int], prefix: list[int], remaining: int) -> None:
        if not remaining:
            full = _code_bits(g, order)
            if best[0] is None or full < best[0]:
                best[0] = full
            return
        for v in _bits(remaining):
            order.append(v)
            extended = prefix + prefix_bits(order)
            cur = best[0]
            if cur is not None:
                head = tuple(cur[: len(extended)])
                if tuple(extended) > head:
                    order.pop()
                    continue
            recurse(order, extended, remaining & ~(1 << v))
            order.pop()

    recurse([], [], (1 << n) - 1)
    bits = best[0] or ()
    packed = bytearray([n])
    for k in range(0, len(bits), 8):
        chunk = bits[k : k + 8]
        byte = 0
        for b in chunk:
            byte = (byte << 1) | b
        byte <<= 8 - len(chunk)
        packed.append(byte)
    return bytes(packed)


def graph_from_code(code: bytes) -> LoopedSimpleGraph:
    """Inverse of :func:`canonical_code` (returns the canonical labeling)."""
    n = code[0]
    bits = []
    for byte in code[1:]:
        bits.extend((byte >> (7 - k)) & 1 for k in range(8))
    adj = [0] * n
    pos = 0
    for j in range(n):
        for i in range(j):
            if bits[pos]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            pos += 1
    loops = 0
    for i in range(n):
        if bits[pos + i]:
            loops |= 1 << i
    return LoopedSimpleGraph(n, tuple(adj), loops)


def all_graphs(n: int, simple: bool = False) -> Iterator[LoopedSimpleGraph]:
    """Every labeled looped simple graph on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    loop_range = [0] if simple else range(1 << n)
    for emask in range(1 << len(pairs)):
        adj = [0] * n
        for k, (u, v) in enumerate(pairs):
            if (emask >> k) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        adj_t = tuple(adj)
        for loops in loop_range:
            yield LoopedSimpleGraph(n, adj_t, loops)


def graph_classes(n: int, simple: bool = False) -> list[LoopedSimpleGraph]:
    """One canonical representative per isomorphism class, in code order."""
    return list(_graph_classes(n, simple))


@functools.lru_cache(maxsize=None)
def _graph_classes(n: int, simple: bool) -> tuple[LoopedSimpleGraph, ...]:
    # every graph on n vertices is a graph on n-1 vertices plus one more vertex
    if n == 0:
        return (LoopedSimpleGraph.empty(0),)
    codes = set()
    for h in _graph_classes(n - 1, simple):
        for nbrs in range(1 << (n - 1)):
            adj = list(h.adj) + [nbrs]
            for u in _bits(nbrs):
                adj[u] |= 1 << (n - 1)
            for top in (0,) if simple else (0, 1):
                codes.add(canonical_code(LoopedSimpleGraph(n, tuple(adj), h.loops | (top << (n - 1)))))
    return tuple(graph_from_code(c) for c in sorted(codes))


def random_graph(n: int, rng: random.Random, p_edge: float = 0.5, p_loop: float = 0.5) -> LoopedSimpleGraph:
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p_edge]
    loops = [v for v in range(n) if rng.random() < p_loop]
    return LoopedSimpleGraph.from_edges(n, edges, loops)


def path_graph(n: int, loops: Iterable[int] = ()) -> LoopedSimpleGraph:
    return LoopedSimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)], loops)


def cycle_graph(n: int, loops: Iterable[int] = ()) -> LoopedSimpleGraph:
    return LoopedSimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], loops)


def complete_graph(n: int, loops: Iterable[int] = ()) -> LoopedSimpleGraph:
    return LoopedSimpleGraph.from_edges(n, itertools.combinations(range(n), 2), loops)
