"""
Orbits of graphs under move sets, and the matching compatible-isomorphism
criteria.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .graphs import (
    LoopedSimpleGraph,
    canonical_code,
    edge_pivot,
    graph_from_code,
    loop_complement,
    nonsimple_local_complement,
    simple_local_complement,
)
from .isotropic import CHI_PSI, IDENTITY, PHI_CHI, S3, compatible_targets, ias
from .matroid import matroids_isomorphic

ORBIT_LIMIT = 8

KINDS = ("loops-only", "pivots-only", "ppt", "full-local", "simple-local")
ALIASES = {
    "loops": "loops-only",
    "pivots": "pivots-only",
    "pivot": "pivots-only",
    "local": "full-local",
    "full": "full-local",
}


@dataclass(frozen=True)
class MoveSet:
    """Generators of an equivalence relation on looped simple graphs.

    ``simple-local`` (simple local complements only) is an extra kind for
    the classical local equivalence of simple graphs.
    """

    kind: str

    def __post_init__(self):
        kind = ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise ValueError(f"unknown move set {self.kind!r}; expected one of {', '.join(KINDS)}")
        object.__setattr__(self, "kind", kind)

    def neighbors(self, g: LoopedSimpleGraph) -> Iterator[LoopedSimpleGraph]:
        n = g.n
        if self.kind == "loops-only":
            for v in range(n):
                yield loop_complement(g, v)
        elif self.kind == "pivots-only":
            for v, w in g.edges():
                yield edge_pivot(g, v, w)
        elif self.kind == "ppt":
            for v in g.looped_vertices():
                yield nonsimple_local_complement(g, v)
            for v, w in g.edges():
                if not g.is_looped(v) and not g.is_looped(w):
                    yield edge_pivot(g, v, w)
        elif self.kind == "full-local":
            for v in range(n):
                yield nonsimple_local_complement(g, v)
                yield loop_complement(g, v)
        else:
            for v in range(n):
                yield simple_local_complement(g, v)


def _as_moves(moves: MoveSet | str) -> MoveSet:
    return moves if isinstance(moves, MoveSet) else MoveSet(moves)


def orbit(g: LoopedSimpleGraph, moves: MoveSet | str, limit: int = ORBIT_LIMIT) -> set[bytes]:
    """Canonical codes of every graph reachable from ``g``."""
    if g.n > limit:
        raise ValueError(f"orbit enumeration limited to n <= {limit}, got {g.n}")
    moves = _as_moves(moves)
    start = canonical_code(g)
    seen = {start}
    queue = deque([start])
    while queue:
        h = graph_from_code(queue.popleft())
        fresh = sorted({canonical_code(k) for k in moves.neighbors(h)} - seen)
        seen.update(fresh)
        queue.extend(fresh)
    return seen


def equivalent(g1: LoopedSimpleGraph, g2: LoopedSimpleGraph, moves: MoveSet | str, limit: int = ORBIT_LIMIT) -> bool:
    if g1.n != g2.n:
        return False
    return canonical_code(g2) in orbit(g1, moves, limit)


def orbit_partition(graphs: list[LoopedSimpleGraph], moves: MoveSet | str) -> list[set[bytes]]:
    """Split the isomorphism classes of ``graphs`` into orbits."""
    moves = _as_moves(moves)
    pending = {canonical_code(g) for g in graphs}
    out = []
    while pending:
        code = min(pending)
        orb = orbit(graph_from_code(code), moves)
        out.append(orb)
        pending -= orb
    return out


# Flavor permutations a compatible isomorphism may use at each vertex.
def allowed_permutations(g: LoopedSimpleGraph, moves: MoveSet | str) -> list[tuple]:
    moves = _as_moves(moves)
    if moves.kind == "full-local":
        return [S3] * g.n
    if moves.kind == "loops-only":
        return [(IDENTITY, CHI_PSI)] * g.n
    if moves.kind == "ppt":
        return [(IDENTITY, PHI_CHI)] * g.n
    if moves.kind == "pivots-only":
        if not g.is_simple():
            raise ValueError("the edge-pivot criterion applies to simple graphs")
        return [(IDENTITY, PHI_CHI)] * g.n
    raise ValueError(f"no isomorphism criterion wired for {moves.kind!r}")


def compatible_criterion(g1: LoopedSimpleGraph, g2: LoopedSimpleGraph, moves: MoveSet | str) -> bool:
    """Whether some compatible isomorphism g1 -> g2 uses only allowed permutations.

    Every such isomorphism factors as one with identity vertex map followed
    by a graph isomorphism, so it suffices to build each admissible target
    and compare it with g2 up to relabeling.
    """
    if g1.n != g2.n:
        return False
    goal = canonical_code(g2)
    return any(canonical_code(h) == goal for _, h in compatible_targets(g1, allowed_permutations(g1, moves)))


def isotropic_matroids_isomorphic(g1: LoopedSimpleGraph, g2: LoopedSimpleGraph) -> bool:
    if g1.n != g2.n:
        return False
    return matroids_isomorphic(ias(g1), ias(g2)) is not None
