"""
The isotropic matroid M(IAS(G)) of a looped simple graph.

IAS(G) is the n x 3n matrix (I | A(G) | I + A(G)).  Its columns are labelled
by :class:`GroundElement` pairs ``(vertex, flavor)``; the column order is all
phi elements, then all chi, then all psi, each block in vertex order.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from enum import IntEnum
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .gf2 import Gf2Matrix, XorBasis, express, rank_of_words, subset_ranks
from .graphs import (
    LoopedSimpleGraph,
    adjacency_matrix,
    edge_pivot,
    graph_from_adjacency,
    loop_complement,
    nonsimple_local_complement,
)
from .matroid import BinaryMatroid, equal_matroids, relabel


class TheoremViolation(AssertionError):
    """A computed object contradicts a statement that should always hold."""


class Flavor(IntEnum):
    PHI = 0
    CHI = 1
    PSI = 2

    @property
    def symbol(self) -> str:
        return "φχψ"[self]

    @property
    def ascii(self) -> str:
        return ("phi", "chi", "psi")[self]


PHI, CHI, PSI = Flavor.PHI, Flavor.CHI, Flavor.PSI
FLAVORS = (PHI, CHI, PSI)


class GroundElement(NamedTuple):
    vertex: int
    flavor: Flavor

    def __repr__(self) -> str:
        return f"{self.vertex}_{self.flavor.symbol}"


def el(vertex: int, flavor: Flavor | str) -> GroundElement:
    """Shorthand: ``el(2, 'chi')`` or ``el(2, CHI)``."""
    if isinstance(flavor, str):
        flavor = {"phi": PHI, "chi": CHI, "psi": PSI, "φ": PHI, "χ": CHI, "ψ": PSI}[flavor]
    return GroundElement(vertex, Flavor(flavor))


@dataclass(frozen=True)
class Perm3:
    """A permutation of the three flavors; ``images[i]`` is the image of flavor ``i``."""

    images: tuple[Flavor, Flavor, Flavor]

    def __post_init__(self):
        imgs = tuple(Flavor(i) for i in self.images)
        if sorted(imgs) != [PHI, CHI, PSI]:
            raise ValueError(f"not a permutation: {self.images}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def cycle(cls, *symbols: Flavor) -> Perm3:
        """Cycle notation: ``Perm3.cycle(PHI, CHI)`` is the transposition (φχ)."""
        imgs = list(FLAVORS)
        for a, b in zip(symbols, symbols[1:] + symbols[:1]):
            imgs[a] = b
        return cls(tuple(imgs))

    def __call__(self, flavor: Flavor) -> Flavor:
        return self.images[flavor]

    def __mul__(self, other: Perm3) -> Perm3:
        # (self * other)(i) = self(other(i)), matching function composition
        return Perm3(tuple(self.images[other.images[i]] for i in FLAVORS))

    def inverse(self) -> Perm3:
        inv = [PHI] * 3
        for i, j in enumerate(self.images):
            inv[j] = Flavor(i)
        return Perm3(tuple(inv))

    def fixes(self, flavor: Flavor) -> bool:
        return self.images[flavor] == flavor

    @property
    def is_identity(self) -> bool:
        return self.images == FLAVORS

    def __str__(self) -> str:
        if self.is_identity:
            return "1"
        seen = set()
        parts = []
        for start in FLAVORS:
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            parts.append("(" + "".join(f.symbol for f in cyc) + ")")
        return "".join(parts)

    __repr__ = __str__


IDENTITY = Perm3(FLAVORS)
PHI_CHI = Perm3.cycle(PHI, CHI)
PHI_PSI = Perm3.cycle(PHI, PSI)
CHI_PSI = Perm3.cycle(CHI, PSI)
S3 = tuple(Perm3(p) for p in itertools.permutations(FLAVORS))


@dataclass(frozen=True)
class CompatibleIso:
    """Vertex bijection plus a flavor permutation per source vertex.

    The induced ground map sends ``(v, i)`` to ``(vertex_map[v], f[v](i))``.
    """

    vertex_map: tuple[int, ...]
    f: tuple[Perm3, ...]

    def __post_init__(self):
        if sorted(self.vertex_map) != list(range(len(self.vertex_map))):
            raise ValueError("vertex_map is not a bijection")
        if len(self.f) != len(self.vertex_map):
            raise ValueError("f must have one entry per vertex")

    @classmethod
    def identity(cls, n: int) -> CompatibleIso:
        return cls(tuple(range(n)), (IDENTITY,) * n)

    @classmethod
    def from_f(cls, f: Sequence[Perm3]) -> CompatibleIso:
        return cls(tuple(range(len(f))), tuple(f))

    @property
    def n(self) -> int:
        return len(self.vertex_map)

    def __call__(self, e: GroundElement) -> GroundElement:
        v, i = e
        return GroundElement(self.vertex_map[v], self.f[v](i))

    def ground_map(self) -> dict[GroundElement, GroundElement]:
        return {e: self(e) for e in ground_set(self.n)}


@dataclass(frozen=True)
class SubTransversal:
    """At most one flavor per vertex; ``flavors[v]`` is None when ``v`` is absent."""

    flavors: tuple[Flavor | None, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "flavors", tuple(None if f is None else Flavor(f) for f in self.flavors)
        )

    @classmethod
    def empty(cls, n: int) -> SubTransversal:
        return cls((None,) * n)

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[GroundElement]) -> SubTransversal:
        fl: list[Flavor | None] = [None] * n
        for v, i in elements:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} outside 0..{n - 1}")
            if fl[v] is not None:
                raise ValueError(f"two elements at vertex {v}; not a subtransversal")
            fl[v] = Flavor(i)
        return cls(tuple(fl))

    @property
    def n(self) -> int:
        return len(self.flavors)

    def elements(self) -> list[GroundElement]:
        return [GroundElement(v, f) for v, f in enumerate(self.flavors) if f is not None]

    def __len__(self) -> int:
        return sum(f is not None for f in self.flavors)

    def __contains__(self, e: GroundElement) -> bool:
        v, i = e
        return 0 <= v < self.n and self.flavors[v] == i

    def is_transversal(self) -> bool:
        return all(f is not None for f in self.flavors)

    def __repr__(self) -> str:
        return "{" + ", ".join(map(repr, self.elements())) + "}"


def ground_set(n: int) -> list[GroundElement]:
    """W(G) in column order: all phi, then all chi, then all psi."""
    return [GroundElement(v, f) for f in FLAVORS for v in range(n)]


def column_index(n: int, e: GroundElement) -> int:
    return e.flavor * n + e.vertex


def ias_matrix(g: LoopedSimpleGraph) -> Gf2Matrix:
    a = adjacency_matrix(g)
    eye = Gf2Matrix.identity(g.n)
    return eye.hstack(a, eye + a)


@functools.lru_cache(maxsize=4096)
def ias(g: LoopedSimpleGraph) -> BinaryMatroid:
    return BinaryMatroid(tuple(ground_set(g.n)), ias_matrix(g))


def restricted_ia(g: LoopedSimpleGraph) -> BinaryMatroid:
    a = adjacency_matrix(g)
    ground = [GroundElement(v, f) for f in (PHI, CHI) for v in range(g.n)]
    return BinaryMatroid(tuple(ground), Gf2Matrix.identity(g.n).hstack(a))


def ias_columns(g: LoopedSimpleGraph) -> Mapping[GroundElement, int]:
    """Column word of every ground element (bit ``u`` = row ``u``)."""
    return _ias_columns(g)


@functools.lru_cache(maxsize=4096)
def _ias_columns(g: LoopedSimpleGraph) -> Mapping[GroundElement, int]:
    out = {}
    for v in range(g.n):
        unit = 1 << v
        chi = g.adj[v] | (g.loops & unit)
        out[GroundElement(v, PHI)] = unit
        out[GroundElement(v, CHI)] = chi
        out[GroundElement(v, PSI)] = chi ^ unit
    return MappingProxyType(out)


@dataclass(frozen=True)
class Triangulation:
    cells: frozenset[frozenset[GroundElement]]

    def __post_init__(self):
        cells = frozenset(frozenset(c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        seen: set = set()
        for c in cells:
            if len(c) != 3:
                raise ValueError(f"cell {sorted(c)} does not have three elements")
            if seen & c:
                raise ValueError("cells overlap")
            seen |= c

    @property
    def index(self) -> int:
        """Number of non-canonical cells."""
        return sum(not _is_canonical_cell(c) for c in self.cells)

    def cell_of(self, e: GroundElement) -> frozenset[GroundElement]:
        for c in self.cells:
            if e in c:
                return c
        raise KeyError(e)

    def elements(self) -> set[GroundElement]:
        return set().union(*self.cells) if self.cells else set()

    def map(self, perm: dict[GroundElement, GroundElement]) -> Triangulation:
        return Triangulation(frozenset(frozenset(perm.get(e, e) for e in c) for c in self.cells))

    def __len__(self) -> int:
        return len(self.cells)


def _is_canonical_cell(c: Iterable[GroundElement]) -> bool:
    return len({e.vertex for e in c}) == 1


def canonical_partition(g: LoopedSimpleGraph) -> Triangulation:
    return Triangulation(
        frozenset(frozenset(GroundElement(v, f) for f in FLAVORS) for v in range(g.n))
    )


def elementary_iso(
    g: LoopedSimpleGraph, kind: str, v: int, w: int | None = None
) -> tuple[LoopedSimpleGraph, CompatibleIso]:
    """Apply one move and return the new graph with its compatible isomorphism.

    ``kind`` is ``"loop-complement"``, ``"local-complement"`` (non-simple) or
    ``"pivot"`` (needs ``w`` adjacent to ``v``).
    """
    f = [IDENTITY] * g.n
    if kind == "loop-complement":
        h = loop_complement(g, v)
        f[v] = CHI_PSI
    elif kind == "local-complement":
        h = nonsimple_local_complement(g, v)
        f[v] = PHI_CHI if g.is_looped(v) else PHI_PSI
    elif kind == "pivot":
        if w is None:
            raise ValueError("pivot needs a second vertex")
        h = edge_pivot(g, v, w)
        for x in (v, w):
            f[x] = PHI_PSI if g.is_looped(x) else PHI_CHI
    else:
        raise ValueError(f"unknown move kind {kind!r}")
    return h, CompatibleIso.from_f(f)


def compose_iso(i1: CompatibleIso, i2: CompatibleIso) -> CompatibleIso:
    """``i2 ∘ i1`` (first ``i1``, then ``i2``)."""
    if i1.n != i2.n:
        raise ValueError("isomorphisms act on graphs of different sizes")
    vm = tuple(i2.vertex_map[i1.vertex_map[v]] for v in range(i1.n))
    f = tuple(i2.f[i1.vertex_map[v]] * i1.f[v] for v in range(i1.n))
    return CompatibleIso(vm, f)


def invert_iso(i: CompatibleIso) -> CompatibleIso:
    inv = [0] * i.n
    for v, u in enumerate(i.vertex_map):
        inv[u] = v
    return CompatibleIso(tuple(inv), tuple(i.f[inv[u]].inverse() for u in range(i.n)))


def verify_compatible_iso(g1: LoopedSimpleGraph, g2: LoopedSimpleGraph, i: CompatibleIso) -> bool:
    """Whether the induced ground map is an isomorphism M(IAS(g1)) -> M(IAS(g2)).

    Relabel the columns of IAS(g1) into g2's ground set, giving a matrix R.
    Because the phi block of IAS(g2) is the identity, R has the row space of
    IAS(g2) exactly when T = R[phi] is invertible and R = T * IAS(g2).
    """
    if not (g1.n == g2.n == i.n):
        raise ValueError(f"size mismatch: {g1.n}, {g2.n}, iso on {i.n}")
    cols1, cols2 = ias_columns(g1), ias_columns(g2)
    r = {i(e): c for e, c in cols1.items()}
    t = [r[GroundElement(u, PHI)] for u in range(g2.n)]
    if rank_of_words(t) < g2.n:
        return False
    for e, c in cols2.items():
        acc = 0
        while c:
            low = c & -c
            acc ^= t[low.bit_length() - 1]
            c ^= low
        if acc != r[e]:
            return False
    return True


def verify_compatible_iso_rref(g1: LoopedSimpleGraph, g2: LoopedSimpleGraph, i: CompatibleIso) -> bool:
    """Reference check: permute the columns of IAS(g1) and compare reduced row echelon forms."""
    if not (g1.n == g2.n == i.n):
        raise ValueError(f"size mismatch: {g1.n}, {g2.n}, iso on {i.n}")
    m1, m2 = ias(g1), ias(g2)
    return equal_matroids(relabel(m1, i.ground_map(), m2.ground), m2)


def graph_for_relabeling(g1: LoopedSimpleGraph, f: Sequence[Perm3]) -> LoopedSimpleGraph | None:
    """The graph g2 for which ``f`` (identity on vertices) gives a compatible iso g1 -> g2.

    Such a g2 is unique when it exists.  Relabel the columns of IAS(g1) by
    ``f``, take the standard representation over the image of the phi
    elements, and accept it only if it reads (I | A | I + A) with A symmetric.
    """
    n = g1.n
    cols = ias_columns(g1)
    target: dict[GroundElement, int] = {}
    for v in range(n):
        for i in FLAVORS:
            target[GroundElement(v, f[v](i))] = cols[GroundElement(v, i)]
    phi_cols = [target[GroundElement(v, PHI)] for v in range(n)]
    if rank_of_words(phi_cols) < n:
        return None
    rows = [0] * n
    for v in range(n):
        chi = express(phi_cols, target[GroundElement(v, CHI)])
        psi = express(phi_cols, target[GroundElement(v, PSI)])
        if chi ^ psi != 1 << v:
            return None
        for u in range(n):
            if (chi >> u) & 1:
                rows[u] |= 1 << v
    a = Gf2Matrix(n, n, tuple(rows))
    if a != a.transpose():
        return None
    return graph_from_adjacency(a)


def compatible_targets(
    g1: LoopedSimpleGraph, allowed: Sequence[Sequence[Perm3]] | None = None
) -> Iterator[tuple[CompatibleIso, LoopedSimpleGraph]]:
    """Every (iso, g2) with identity vertex map and ``f[v]`` drawn from ``allowed[v]``."""
    if allowed is None:
        allowed = [S3] * g1.n
    for f in itertools.product(*allowed):
        g2 = graph_for_relabeling(g1, f)
        if g2 is not None:
            yield CompatibleIso.from_f(f), g2


def triangle_check(
    g: LoopedSimpleGraph, s: SubTransversal, v: int
) -> tuple[Flavor, tuple[int, int, int]]:
    """The unique flavor whose extension keeps the rank of ``s``, plus all three ranks.

    ``s`` must cover every vertex but ``v``.
    """
    if s.n != g.n:
        raise ValueError("subtransversal built for a different vertex count")
    if s.flavors[v] is not None or len(s) != g.n - 1:
        raise ValueError(f"subtransversal must miss exactly vertex {v}")
    cols = ias_columns(g)
    basis = XorBasis(cols[e] for e in s.elements())
    base = len(basis)
    ranks = tuple(base + (0 if basis.contains(cols[GroundElement(v, i)]) else 1) for i in FLAVORS)
    keep = [i for i in FLAVORS if ranks[i] == base]
    if len(keep) != 1 or any(ranks[i] != base + 1 for i in FLAVORS if i not in keep):
        raise TheoremViolation(f"triangle property fails for {g}, S={s}, v={v}: ranks {ranks}")
    return keep[0], ranks


def strong_map_check(g: LoopedSimpleGraph, s: SubTransversal, t: SubTransversal) -> bool:
    """Whether ``v_S -> v_T`` is a strong map M|S -> (M|T)*.

    Checked pointwise: for all A and v outside A, ``v_S`` in the closure of
    ``A_S`` must force ``v_T`` into the dual closure of ``A_T``.
    """
    n = g.n
    if s.n != n or t.n != n or not s.is_transversal() or not t.is_transversal():
        raise ValueError("strong map needs two transversals of W(G)")
    if any(a == b for a, b in zip(s.flavors, t.flavors)):
        raise ValueError("transversals are not disjoint")
    cols = ias_columns(g)
    s_cols = [cols[GroundElement(v, s.flavors[v])] for v in range(n)]
    t_cols = [cols[GroundElement(v, t.flavors[v])] for v in range(n)]
    rs = subset_ranks(s_cols)
    rt = subset_ranks(t_cols)
    full = (1 << n) - 1
    rt_all = rt[full]

    def dual_rank(mask: int) -> int:
        return mask.bit_count() + rt[full & ~mask] - rt_all

    for a in range(1 << n):
        for v in range(n):
            bit = 1 << v
            if a & bit:
                continue
            if rs[a | bit] == rs[a] and dual_rank(a | bit) != dual_rank(a):
                return False
    return True


def sub_transversals(n: int, size: int | None = None) -> Iterator[SubTransversal]:
    choices = (None, PHI, CHI, PSI)
    for fl in itertools.product(choices, repeat=n):
        st = SubTransversal(fl)
        if size is None or len(st) == size:
            yield st


def transversals(n: int) -> Iterator[SubTransversal]:
    for fl in itertools.product(FLAVORS, repeat=n):
        yield SubTransversal(fl)
