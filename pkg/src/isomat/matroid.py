"""
Binary matroids given by a GF(2) representation.

A :class:`BinaryMatroid` pairs an ordered tuple of hashable labels with a
matrix that has one column per label.  Everything here works from column
words, so ranks are XOR-basis insertions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .gf2 import Gf2Matrix, XorBasis, express, rank_of_words, row_space_key, rref

Label = Hashable

CIRCUIT_LIMIT = 18
ISOMORPHISM_LIMIT = 15


@dataclass(frozen=True)
class BinaryMatroid:
    ground: tuple
    rep: Gf2Matrix
    _cols: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ground = tuple(self.ground)
        object.__setattr__(self, "ground", ground)
        if len(ground) != self.rep.ncols:
            raise ValueError(f"{len(ground)} labels for {self.rep.ncols} columns")
        index = {e: i for i, e in enumerate(ground)}
        if len(index) != len(ground):
            raise ValueError("ground labels must be distinct")
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_cols", tuple(self.rep.columns()))

    def __len__(self) -> int:
        return len(self.ground)

    def index(self, e: Label) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise KeyError(f"unknown ground element {e!r}") from None

    def column(self, e: Label) -> int:
        return self._cols[self.index(e)]

    def columns_of(self, s: Iterable[Label]) -> list[int]:
        return [self._cols[self.index(e)] for e in s]

    @property
    def rank(self) -> int:
        return rank_of_words(self._cols)

    def mask(self, s: Iterable[Label]) -> int:
        out = 0
        for e in s:
            out |= 1 << self.index(e)
        return out

    def labels(self, mask: int) -> list:
        return [e for i, e in enumerate(self.ground) if (mask >> i) & 1]


def rank_of(m: BinaryMatroid, s: Iterable[Label]) -> int:
    return rank_of_words(m.columns_of(s))


def is_independent(m: BinaryMatroid, s: Iterable[Label]) -> bool:
    s = list(s)
    return rank_of(m, s) == len(s)


def is_basis(m: BinaryMatroid, s: Iterable[Label]) -> bool:
    s = list(s)
    return len(set(s)) == len(s) == m.rank and rank_of(m, s) == len(s)


def dual_rank(m: BinaryMatroid, s: Iterable[Label]) -> int:
    """Rank in the dual matroid: |X| + r(E - X) - r(E)."""
    s = set(s)
    rest = [e for e in m.ground if e not in s]
    return len(s) + rank_of(m, rest) - m.rank


def fundamental_circuit(m: BinaryMatroid, x: Label, b: Iterable[Label]) -> frozenset:
    b = list(b)
    if x in b:
        raise ValueError(f"{x!r} already lies in the basis")
    if not is_basis(m, b):
        raise ValueError("not a basis")
    coeffs = _express(m.columns_of(b), m.column(x))
    return frozenset([x] + [e for k, e in enumerate(b) if (coeffs >> k) & 1])


def _express(basis: Sequence[int], v: int) -> int:
    out = express(basis, v)
    if out is None:
        raise ValueError("vector outside the span")
    return out


def cycle_space_basis(m: BinaryMatroid) -> list[int]:
    """Supports (as masks over ground positions) spanning the cycle space."""
    red, pivots = rref(m.rep)
    pivot_set = set(pivots)
    out = []
    for j in range(m.rep.ncols):
        if j in pivot_set:
            continue
        vec = 1 << j
        for i, p in enumerate(pivots):
            if (red.rows[i] >> j) & 1:
                vec |= 1 << p
        out.append(vec)
    return out


def circuits(m: BinaryMatroid, limit: int = CIRCUIT_LIMIT) -> list[frozenset]:
    """All circuits, smallest first, via minimal supports of the cycle space."""
    if len(m) > limit:
        raise ValueError(f"circuit enumeration limited to {limit} elements, got {len(m)}")
    basis = cycle_space_basis(m)
    supports = []
    cur = 0
    # Gray-code walk over the cycle space
    for k in range(1, 1 << len(basis)):
        cur ^= basis[(k & -k).bit_length() - 1]
        supports.append(cur)
    supports.sort(key=lambda s: (s.bit_count(), s))
    minimal: list[int] = []
    for s in supports:
        if not any(c & s == c for c in minimal):
            minimal.append(s)
    return [frozenset(m.labels(c)) for c in minimal]


def basis_exchange(a: Gf2Matrix, j: int, k: int) -> Gf2Matrix:
    """Exchange on the non-identity block ``A`` of a standard representation (I | A).

    Toggles ``a[b][c]`` for every ``b != j``, ``c != k`` with ``a[j][c] = a[b][k] = 1``.
    The result is the standard representation for the basis with the ``j``-th
    identity column swapped for the ``k``-th column of ``A``.
    """
    if a[j, k] != 1:
        raise ValueError(f"entry ({j}, {k}) is zero; no exchange possible")
    row_j = a.rows[j] & ~(1 << k)
    rows = list(a.rows)
    for b in range(a.nrows):
        if b != j and (rows[b] >> k) & 1:
            rows[b] ^= row_j
    return Gf2Matrix(a.nrows, a.ncols, tuple(rows))


def equal_matroids(m1: BinaryMatroid, m2: BinaryMatroid) -> bool:
    if m1.ground != m2.ground:
        raise ValueError("ground sets differ (labels or order)")
    return row_space_key(m1.rep) == row_space_key(m2.rep)


def relabel(m: BinaryMatroid, mapping: Mapping[Label, Label], ground: Sequence[Label] | None = None) -> BinaryMatroid:
    """Rename each element ``e`` to ``mapping[e]``; columns reordered to ``ground``."""
    if ground is None:
        ground = [mapping[e] for e in m.ground]
    inv = {}
    for e in m.ground:
        f = mapping[e]
        if f in inv:
            raise ValueError("mapping is not injective")
        inv[f] = e
    if set(inv) != set(ground):
        raise ValueError("mapping image does not match target ground")
    cols = [m.column(inv[f]) for f in ground]
    return BinaryMatroid(tuple(ground), Gf2Matrix.from_columns(m.rep.nrows, cols))


def is_isomorphism(m1: BinaryMatroid, m2: BinaryMatroid, mapping: Mapping[Label, Label]) -> bool:
    if len(m1) != len(m2) or set(mapping) != set(m1.ground):
        return False
    if set(mapping.values()) != set(m2.ground):
        return False
    return equal_matroids(relabel(m1, mapping, m2.ground), m2)


def minor(m: BinaryMatroid, contract: Iterable[Label] = (), delete: Iterable[Label] = ()) -> BinaryMatroid:
    """``m / contract - delete``, represented with the contracted span pivoted out."""
    contract = list(contract)
    delete = list(delete)
    cset, dset = set(contract), set(delete)
    if cset & dset:
        raise ValueError("contract and delete overlap")
    for e in itertools.chain(contract, delete):
        m.index(e)
    rows = list(m.rep.rows)
    used = set()
    for e in contract:
        j = m.index(e)
        bit = 1 << j
        piv = next((i for i in range(len(rows)) if i not in used and rows[i] & bit), None)
        if piv is None:
            # column already in the span of earlier contractions (or a loop)
            continue
        for i in range(len(rows)):
            if i != piv and rows[i] & bit:
                rows[i] ^= rows[piv]
        used.add(piv)
    kept_rows = [r for i, r in enumerate(rows) if i not in used]
    keep = [j for j, e in enumerate(m.ground) if e not in cset and e not in dset]
    sub = Gf2Matrix(len(kept_rows), m.rep.ncols, tuple(kept_rows)).select_columns(keep)
    return BinaryMatroid(tuple(m.ground[j] for j in keep), sub)


def restriction(m: BinaryMatroid, s: Iterable[Label]) -> BinaryMatroid:
    keep = set(s)
    return minor(m, delete=[e for e in m.ground if e not in keep])


def components(m: BinaryMatroid) -> list[frozenset]:
    """Connected components, via fundamental circuits of one basis."""
    _, pivots = rref(m.rep)
    basis_idx = pivots
    parent = list(range(len(m)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    basis_cols = [m._cols[j] for j in basis_idx]
    for j, col in enumerate(m._cols):
        if j in basis_idx or col == 0:
            continue
        coeffs = _express(basis_cols, col)
        for k, b in enumerate(basis_idx):
            if (coeffs >> k) & 1:
                parent[find(j)] = find(b)
    blocks: dict[int, list] = {}
    for j, e in enumerate(m.ground):
        blocks.setdefault(find(j), []).append(e)
    return [frozenset(b) for b in blocks.values()]


def closure(m: BinaryMatroid, s: Iterable[Label]) -> frozenset:
    basis = XorBasis(m.columns_of(s))
    return frozenset(e for e, c in zip(m.ground, m._cols) if basis.contains(c))


def loops(m: BinaryMatroid) -> frozenset:
    return frozenset(e for e, c in zip(m.ground, m._cols) if c == 0)


def parallel_classes(m: BinaryMatroid) -> list[frozenset]:
    """Classes of equal nonzero columns (singletons included)."""
    by_col: dict[int, list] = {}
    for e, c in zip(m.ground, m._cols):
        if c:
            by_col.setdefault(c, []).append(e)
    return [frozenset(v) for v in by_col.values()]


def find_fano_restriction(m: BinaryMatroid, limit: int = CIRCUIT_LIMIT) -> tuple | None:
    """Seven elements whose restriction is the Fano matroid, or None."""
    if len(m) > limit:
        raise ValueError(f"Fano search limited to {limit} elements, got {len(m)}")
    first: dict[int, Label] = {}
    for e, c in zip(m.ground, m._cols):
        if c and c not in first:
            first[c] = e
    vecs = sorted(first)
    for a, b, c in itertools.combinations(vecs, 3):
        if a ^ b == c:
            continue
        span = {a, b, c, a ^ b, a ^ c, b ^ c, a ^ b ^ c}
        if span <= first.keys():
            chosen = {first[v] for v in span}
            return tuple(e for e in m.ground if e in chosen)
    return None


def element_invariants(m: BinaryMatroid) -> dict[Label, tuple[int, int, int]]:
    """(is loop, parallel class size, 3-circuits through e), preserved by isomorphisms."""
    cols = m._cols
    count: dict[int, int] = {}
    for c in cols:
        count[c] = count.get(c, 0) + 1
    tri = [0] * len(cols)
    for i, j in itertools.combinations(range(len(cols)), 2):
        ci, cj = cols[i], cols[j]
        if not ci or not cj or ci == cj:
            continue
        k_col = ci ^ cj
        for k in range(j + 1, len(cols)):
            if cols[k] == k_col:
                tri[i] += 1
                tri[j] += 1
                tri[k] += 1
    return {
        e: (int(c == 0), count[c] if c else 0, tri[i]) for i, (e, c) in enumerate(zip(m.ground, cols))
    }


def search_isomorphism(
    m1: BinaryMatroid,
    m2: BinaryMatroid,
    order: Sequence[Label] | None = None,
    allowed: Callable[[Label, Label, dict], bool] | None = None,
    use_invariants: bool = True,
) -> dict | None:
    """Backtracking search for a rank-preserving bijection ``m1 -> m2``.

    Elements of ``m1`` are assigned in ``order``.  After each assignment the
    partial map must be an isomorphism between the two restrictions, which for
    binary matroids means the column-restricted representations have the same
    row space.  ``allowed(e, f, partial)`` can veto individual assignments.
    """
    if len(m1) != len(m2) or m1.rank != m2.rank:
        return None
    inv1 = element_invariants(m1) if use_invariants else {e: 0 for e in m1.ground}
    inv2 = element_invariants(m2) if use_invariants else {e: 0 for e in m2.ground}
    if sorted(inv1.values()) != sorted(inv2.values()):
        return None
    if order is None:
        freq: dict = {}
        for v in inv1.values():
            freq[v] = freq.get(v, 0) + 1
        order = sorted(m1.ground, key=lambda e: (freq[inv1[e]], m1.index(e)))
    order = list(order)
    by_inv: dict = {}
    for f in m2.ground:
        by_inv.setdefault(inv2[f], []).append(f)

    mapping: dict = {}
    used: set = set()
    cols1: list[int] = []
    cols2: list[int] = []
    r1, r2 = m1.rep.nrows, m2.rep.nrows

    def consistent() -> bool:
        k1 = row_space_key(Gf2Matrix.from_columns(r1, cols1))
        k2 = row_space_key(Gf2Matrix.from_columns(r2, cols2))
        return k1 == k2

    def recurse(depth: int) -> bool:
        if depth == len(order):
            return True
        e = order[depth]
        cols1.append(m1.column(e))
        for f in by_inv[inv1[e]]:
            if f in used:
                continue
            if allowed is not None and not allowed(e, f, mapping):
                continue
            cols2.append(m2.column(f))
            if consistent():
                mapping[e] = f
                used.add(f)
                if recurse(depth + 1):
                    return True
                del mapping[e]
                used.discard(f)
            cols2.pop()
        cols1.pop()
        return False

    if recurse(0):
        return dict(mapping)
    return None


def matroids_isomorphic(m1: BinaryMatroid, m2: BinaryMatroid, limit: int = ISOMORPHISM_LIMIT) -> dict | None:
    """A ground bijection preserving all ranks, or None."""
    if max(len(m1), len(m2)) > limit:
        raise ValueError(f"isomorphism search limited to {limit} elements")
    return search_isomorphism(m1, m2)
