"""
Triangulations of W(G) and the reduction of arbitrary isomorphisms to
compatible ones.

A triangulation partitions W(G) into 3-cells, each either a 3-circuit or a
matroid loop together with a parallel pair.  Any matroid isomorphism carries
the canonical partition to a triangulation; undoing that with an
automorphism turns the isomorphism into a compatible one.
"""

from __future__ import annotations

import itertools
from typing import Mapping, Sequence

from .graphs import LoopedSimpleGraph, find_matched_4paths
from .isotropic import (
    CHI,
    FLAVORS,
    PHI,
    PSI,
    CompatibleIso,
    GroundElement,
    Perm3,
    TheoremViolation,
    Triangulation,
    canonical_partition,
    ground_set,
    ias,
    ias_columns,
)
from .matroid import is_isomorphism, search_isomorphism

TRIANGULATION_LIMIT = 5
CANONICALIZE_LIMIT = 4

GroundPerm = dict  # GroundElement -> GroundElement


def _is_valid_cell(cols: Sequence[int]) -> bool:
    a, b, c = cols
    zeros = [x for x in cols if x == 0]
    if len(zeros) == 1:
        p, q = [x for x in cols if x]
        return p == q
    if zeros:
        return False
    # 3-circuit: nonzero, pairwise distinct, summing to zero
    return a != b and a ^ b == c


def valid_cells(g: LoopedSimpleGraph) -> list[frozenset[GroundElement]]:
    cols = ias_columns(g)
    w = ground_set(g.n)
    return [frozenset(t) for t in itertools.combinations(w, 3) if _is_valid_cell([cols[e] for e in t])]


def is_triangulation(g: LoopedSimpleGraph, p: Triangulation) -> bool:
    if p.elements() != set(ground_set(g.n)):
        raise ValueError("cells do not partition W(G)")
    cols = ias_columns(g)
    return all(_is_valid_cell([cols[e] for e in c]) for c in p.cells)


def enumerate_triangulations(g: LoopedSimpleGraph, limit: int = TRIANGULATION_LIMIT) -> list[Triangulation]:
    """All triangulations, by exact cover over the valid 3-cells."""
    if g.n > limit:
        raise ValueError(f"triangulation enumeration limited to n <= {limit}")
    cells = valid_cells(g)
    by_elem: dict[GroundElement, list[frozenset]] = {e: [] for e in ground_set(g.n)}
    for c in cells:
        for e in c:
            by_elem[e].append(c)
    out: list[Triangulation] = []
    chosen: list[frozenset] = []

    def recurse(uncovered: frozenset) -> None:
        if not uncovered:
            out.append(Triangulation(frozenset(chosen)))
            return
        # branch on the element with the fewest usable cells
        best = min(uncovered, key=lambda e: (sum(c <= uncovered for c in by_elem[e]), e))
        for c in by_elem[best]:
            if c <= uncovered:
                chosen.append(c)
                recurse(uncovered - c)
                chosen.pop()

    recurse(frozenset(ground_set(g.n)))
    return out


def _bent_cells(quad: Sequence[int]) -> list[frozenset[GroundElement]]:
    u, v, w, x = quad
    E = GroundElement
    return [
        frozenset({E(u, PHI), E(v, CHI), E(w, PHI)}),
        frozenset({E(v, PHI), E(w, CHI), E(x, PHI)}),
        frozenset({E(u, PSI), E(v, PSI), E(x, CHI)}),
        frozenset({E(u, CHI), E(w, PSI), E(x, PSI)}),
    ]


def _canonical_cell(v: int) -> frozenset[GroundElement]:
    return frozenset(GroundElement(v, f) for f in FLAVORS)


def bend_4path(g: LoopedSimpleGraph, p: Triangulation, quad: Sequence[int]) -> Triangulation:
    """Replace the canonical cells of a matched 4-path by its four bent cells."""
    quad = tuple(quad)
    if quad not in find_matched_4paths(g):
        raise ValueError(f"{quad} is not a matched 4-path")
    old = [_canonical_cell(v) for v in quad]
    if not all(c in p.cells for c in old):
        raise ValueError("triangulation lacks a canonical cell of the 4-path")
    return Triangulation((p.cells - frozenset(old)) | frozenset(_bent_cells(quad)))


def bent_4path_automorphism(g: LoopedSimpleGraph, quad: Sequence[int]) -> GroundPerm:
    """The involution that carries the bent 4-path cells back to canonical ones."""
    quad = tuple(quad)
    if quad not in find_matched_4paths(g):
        raise ValueError(f"{quad} is not a matched 4-path")
    u, v, w, x = quad
    E = GroundElement
    swaps = [
        (E(u, PHI), E(x, PHI)),
        (E(u, CHI), E(v, PHI)),
        (E(u, PSI), E(w, CHI)),
        (E(v, CHI), E(x, PSI)),
        (E(v, PSI), E(w, PSI)),
        (E(w, PHI), E(x, CHI)),
    ]
    perm = {e: e for e in ground_set(g.n)}
    for a, b in swaps:
        perm[a], perm[b] = b, a
    return perm


def compose_perm(outer: Mapping, inner: Mapping) -> GroundPerm:
    """``outer ∘ inner``."""
    return {e: outer.get(inner[e], inner[e]) for e in inner}


def _parallel_step(g: LoopedSimpleGraph, p: Triangulation) -> GroundPerm | None:
    # a cell holding two elements of v whose third element is parallel to v's missing one
    cols = ias_columns(g)
    for c in sorted(p.cells, key=sorted):
        verts = [e.vertex for e in c]
        for v in set(verts):
            if verts.count(v) != 2:
                continue
            (y,) = [e for e in c if e.vertex != v]
            (z,) = [GroundElement(v, f) for f in FLAVORS if GroundElement(v, f) not in c]
            if cols[y] == cols[z]:
                perm = {e: e for e in ground_set(g.n)}
                perm[y], perm[z] = z, y
                return perm
    return None


def _bend_step(g: LoopedSimpleGraph, p: Triangulation) -> GroundPerm | None:
    for quad in find_matched_4paths(g):
        if all(c in p.cells for c in _bent_cells(quad)):
            return bent_4path_automorphism(g, quad)
    return None


def _automorphism_search(g: LoopedSimpleGraph, p: Triangulation) -> GroundPerm | None:
    """Exhaustive search for an automorphism sending every cell of ``p`` to a canonical cell."""
    m = ias(g)
    cell_of = {e: c for c in p.cells for e in c}
    order = [e for c in sorted(p.cells, key=sorted) for e in sorted(c)]

    def allowed(e, f, partial) -> bool:
        for d, image in partial.items():
            if (cell_of[d] == cell_of[e]) != (image.vertex == f.vertex):
                return False
        return True

    return search_isomorphism(m, m, order=order, allowed=allowed)


def canonicalize_triangulation(
    g: LoopedSimpleGraph, p: Triangulation, limit: int = CANONICALIZE_LIMIT
) -> GroundPerm:
    """An automorphism of M(IAS(g)) mapping ``p`` onto the canonical partition.

    Parallel swaps and unbending of bent 4-paths are tried first; whatever
    they leave is finished by exhaustive search.
    """
    if g.n > limit:
        raise ValueError(f"canonicalization limited to n <= {limit}")
    if not is_triangulation(g, p):
        raise ValueError("not a triangulation")
    canon = canonical_partition(g)
    acc = {e: e for e in ground_set(g.n)}
    cur = p
    while cur != canon:
        step = _parallel_step(g, cur) or _bend_step(g, cur)
        if step is None:
            break
        acc = compose_perm(step, acc)
        cur = cur.map(step)
    if cur != canon:
        rest = _automorphism_search(g, cur)
        if rest is None:
            raise TheoremViolation(f"no automorphism canonicalizes {sorted(map(sorted, p.cells))} for {g}")
        acc = compose_perm(rest, acc)
        cur = cur.map(rest)
    if cur != canon or not is_isomorphism(ias(g), ias(g), acc):
        raise TheoremViolation("canonicalization produced a non-automorphism")
    return acc


def iso_from_ground_map(n: int, perm: Mapping[GroundElement, GroundElement]) -> CompatibleIso:
    """Read off vertex map and flavor permutations from a cell-preserving ground map."""
    vm = [0] * n
    f = []
    for v in range(n):
        images = [perm[GroundElement(v, i)] for i in FLAVORS]
        targets = {e.vertex for e in images}
        if len(targets) != 1:
            raise ValueError(f"ground map splits the cell of vertex {v}")
        vm[v] = images[0].vertex
        f.append(Perm3(tuple(e.flavor for e in images)))
    return CompatibleIso(tuple(vm), tuple(f))


def compatible_from_arbitrary(
    g1: LoopedSimpleGraph, g2: LoopedSimpleGraph, gamma: Mapping[GroundElement, GroundElement]
) -> CompatibleIso:
    """Turn any isomorphism M(IAS(g1)) -> M(IAS(g2)) into a compatible one."""
    if g1.n != g2.n or not is_isomorphism(ias(g1), ias(g2), gamma):
        raise ValueError("gamma is not a matroid isomorphism")
    image = canonical_partition(g1).map(dict(gamma))
    alpha = canonicalize_triangulation(g2, image)
    return iso_from_ground_map(g1.n, compose_perm(alpha, dict(gamma)))
