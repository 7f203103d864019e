"""
The delta-matroid D(G) and the transverse cycles of M(IAS(G)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf2 import is_nonsingular, principal_submatrix, rank_of_words
from .graphs import LoopedSimpleGraph, adjacency_matrix
from .isotropic import (
    CHI,
    FLAVORS,
    PHI,
    PSI,
    Flavor,
    GroundElement,
    SubTransversal,
    ias_columns,
)

DELTA_LIMIT = 12
CYCLE_LIMIT = 12


@dataclass(frozen=True)
class DeltaMatroid:
    n: int
    feasible: frozenset[frozenset[int]]

    def __post_init__(self):
        feas = frozenset(frozenset(s) for s in self.feasible)
        for s in feas:
            if any(not 0 <= v < self.n for v in s):
                raise ValueError(f"feasible set {sorted(s)} leaves the ground set")
        object.__setattr__(self, "feasible", feas)

    def __contains__(self, s: Iterable[int]) -> bool:
        return frozenset(s) in self.feasible

    def sorted_sets(self) -> list[list[int]]:
        return sorted((sorted(s) for s in self.feasible), key=lambda s: (len(s), s))


def _check_limit(g: LoopedSimpleGraph, limit: int) -> None:
    if g.n > limit:
        raise ValueError(f"limited to n <= {limit}, got {g.n}")


def delta_matroid(g: LoopedSimpleGraph, limit: int = DELTA_LIMIT) -> DeltaMatroid:
    """Vertex sets whose principal submatrix of A(G) is nonsingular."""
    _check_limit(g, limit)
    a = adjacency_matrix(g)
    feas = []
    for k in range(g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            if is_nonsingular(principal_submatrix(a, s)):
                feas.append(frozenset(s))
    return DeltaMatroid(g.n, frozenset(feas))


def delta_via_bases(g: LoopedSimpleGraph, limit: int = DELTA_LIMIT) -> DeltaMatroid:
    """Sets S for which chi over S plus phi off S is a basis of M(IAS(G))."""
    _check_limit(g, limit)
    cols = ias_columns(g)
    feas = []
    for mask in range(1 << g.n):
        words = [cols[GroundElement(v, CHI if (mask >> v) & 1 else PHI)] for v in range(g.n)]
        if rank_of_words(words) == g.n:
            feas.append(frozenset(v for v in range(g.n) if (mask >> v) & 1))
    return DeltaMatroid(g.n, frozenset(feas))


def twist(d: DeltaMatroid, x: Iterable[int]) -> DeltaMatroid:
    x = frozenset(x)
    if any(not 0 <= v < d.n for v in x):
        raise ValueError("twisting set leaves the ground set")
    return DeltaMatroid(d.n, frozenset(s ^ x for s in d.feasible))


def graph_from_delta(d: DeltaMatroid) -> LoopedSimpleGraph:
    """Rebuild G: loops from feasible singletons, edges from feasible pairs."""
    looped = [v for v in range(d.n) if frozenset([v]) in d.feasible]
    loopset = set(looped)
    edges = []
    for v, w in itertools.combinations(range(d.n), 2):
        pair_feasible = frozenset([v, w]) in d.feasible
        if v in loopset and w in loopset:
            if not pair_feasible:
                edges.append((v, w))
        elif pair_feasible:
            edges.append((v, w))
    return LoopedSimpleGraph.from_edges(d.n, edges, looped)


def _boxplus_at(a: Flavor | None, b: Flavor | None) -> Flavor | None:
    if a is None:
        return b
    if b is None:
        return a
    if a == b:
        return None
    (third,) = [f for f in FLAVORS if f != a and f != b]
    return third


def boxplus(s: SubTransversal, t: SubTransversal) -> SubTransversal:
    if s.n != t.n:
        raise ValueError("subtransversals over different vertex sets")
    return SubTransversal(tuple(_boxplus_at(a, b) for a, b in zip(s.flavors, t.flavors)))


def sigma(n: int, elements: Iterable[GroundElement]) -> SubTransversal:
    """The linear map from subsets of W(G) to subtransversals, fixing singletons."""
    out = SubTransversal.empty(n)
    for e in elements:
        out = boxplus(out, SubTransversal.from_elements(n, [e]))
    return out


def phi_set(g: LoopedSimpleGraph) -> list[GroundElement]:
    return [GroundElement(v, PHI) for v in range(g.n)]


def psi_set(g: LoopedSimpleGraph) -> list[GroundElement]:
    """psi at looped vertices, chi at unlooped ones."""
    return [GroundElement(v, PSI if g.is_looped(v) else CHI) for v in range(g.n)]


def cycle_sum(g: LoopedSimpleGraph, s: SubTransversal) -> int:
    cols = ias_columns(g)
    total = 0
    for e in s.elements():
        total ^= cols[e]
    return total


def is_transverse_cycle(g: LoopedSimpleGraph, s: SubTransversal) -> bool:
    return cycle_sum(g, s) == 0


def is_cycle_by_parity(g: LoopedSimpleGraph, s: SubTransversal) -> bool:
    """Row-parity test: |N(v) ∩ X| must be odd exactly at the vertices that
    contribute their own row (phi, chi at a looped vertex, psi at an unlooped one)."""
    x = 0
    for v, f in enumerate(s.flavors):
        if f is not None and f != PHI:
            x |= 1 << v
    for v, f in enumerate(s.flavors):
        looped = g.is_looped(v)
        odd_needed = f == PHI or (f == CHI and looped) or (f == PSI and not looped)
        if ((g.adj[v] & x).bit_count() % 2 == 1) != odd_needed:
            return False
    return True


def _check_cycle_limit(g: LoopedSimpleGraph, limit: int) -> None:
    if g.n > limit:
        raise ValueError(f"cycle enumeration limited to n <= {limit}, got {g.n}")


def _st_key(s: SubTransversal) -> tuple:
    return tuple(-1 if f is None else int(f) for f in s.flavors)


def transverse_cycles(g: LoopedSimpleGraph, limit: int = CYCLE_LIMIT) -> list[SubTransversal]:
    """Subtransversals whose IAS columns sum to zero.

    Meet in the middle: column sums of all choices on the first half of the
    vertices are bucketed and matched against the second half.
    """
    _check_cycle_limit(g, limit)
    n = g.n
    cols = ias_columns(g)
    half = n // 2
    def sums(vertices: Sequence[int]):
        out: dict[int, list[tuple]] = {}
        for choice in itertools.product((None, PHI, CHI, PSI), repeat=len(vertices)):
            total = 0
            for v, f in zip(vertices, choice):
                if f is not None:
                    total ^= cols[GroundElement(v, f)]
            out.setdefault(total, []).append(choice)
        return out

    left = sums(range(half))
    right = sums(range(half, n))
    found = []
    for total, lchoices in left.items():
        for rc in right.get(total, ()):
            for lc in lchoices:
                found.append(SubTransversal(lc + rc))
    found.sort(key=_st_key)
    return found


def cycle_for_vertex_set(g: LoopedSimpleGraph, x: Iterable[int]) -> SubTransversal:
    """sigma(X . Psi(G)) boxplus sigma(N(X) . Phi(G)).

    N(X) here is the set of vertices with an odd number of neighbors in X,
    which is what the boxplus-sum of the phi singletons over X's
    neighborhoods leaves behind.
    """
    xs = set(x)
    psi = psi_set(g)
    part_psi = sigma(g.n, [psi[v] for v in sorted(xs)])
    nbr_phi = []
    for v in sorted(xs):
        nbr_phi.extend(GroundElement(w, PHI) for w in g.neighbors(v))
    return boxplus(part_psi, sigma(g.n, nbr_phi))


def cycles_by_formula(g: LoopedSimpleGraph, limit: int = CYCLE_LIMIT) -> list[SubTransversal]:
    _check_cycle_limit(g, limit)
    out = [cycle_for_vertex_set(g, [v for v in range(g.n) if (mask >> v) & 1]) for mask in range(1 << g.n)]
    out.sort(key=_st_key)
    return out


def _fits_zeta_pattern(s: SubTransversal, v: int) -> bool:
    if s.flavors[v] not in (CHI, PSI):
        return False
    return all(f in (None, PHI) for w, f in enumerate(s.flavors) if w != v)


def zeta(g: LoopedSimpleGraph, v: int, cycles: Sequence[SubTransversal] | None = None) -> SubTransversal:
    """The transverse cycle that uses v_chi or v_psi and otherwise only phi elements."""
    g._check(v)
    if cycles is None:
        cycles = transverse_cycles(g)
    hits = [s for s in cycles if _fits_zeta_pattern(s, v)]
    if len(hits) != 1:
        raise ValueError(f"expected exactly one cycle of the zeta pattern at {v}, found {len(hits)}")
    return hits[0]


def graph_from_cycles(cycles: Sequence[SubTransversal]) -> LoopedSimpleGraph:
    """Read N(v) and the loop at v off each zeta_v."""
    if not cycles:
        raise ValueError("empty cycle list")
    n = cycles[0].n
    edges = set()
    loops = []
    for v in range(n):
        hits = [s for s in cycles if _fits_zeta_pattern(s, v)]
        if len(hits) != 1:
            raise ValueError(f"no unique zeta cycle for vertex {v}")
        z = hits[0]
        if z.flavors[v] == PSI:
            loops.append(v)
        for w, f in enumerate(z.flavors):
            if w != v and f == PHI:
                edges.add((min(v, w), max(v, w)))
    return LoopedSimpleGraph.from_edges(n, sorted(edges), loops)
