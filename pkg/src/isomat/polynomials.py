"""
Subset expansions over binary matroids and the interlace polynomial.

Polynomials are exact: sparse maps from monomials to Python ints.  The
section variable ``u`` stands for the product ``s*z``, which is legitimate on
transversals because their size always equals the full rank n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Mapping, Union

from .gf2 import XorBasis, principal_submatrix, rank
from .graphs import LoopedSimpleGraph, adjacency_matrix
from .isotropic import CHI, FLAVORS, PHI, PSI, GroundElement, SubTransversal, ground_set, ias_columns
from .matroid import BinaryMatroid

SUBSET_LIMIT = 12
SECTION_LIMIT = 12
INTERLACE_LIMIT = 14

VAR_ORDER = ("x", "y", "u", "s", "z")

Monomial = tuple  # ((var, exp), ...) in canonical variable order, exps > 0


def _var_rank(name: str) -> tuple[int, str]:
    try:
        return (VAR_ORDER.index(name), "")
    except ValueError:
        return (len(VAR_ORDER), name)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: _var_rank(ve[0])))


class MultiPoly:
    """Sparse polynomial with integer coefficients; zero terms are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            if c:
                mono = tuple(sorted(((v, e) for v, e in mono if e), key=lambda ve: _var_rank(ve[0])))
                clean[mono] = clean.get(mono, 0) + int(c)
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def const(cls, c: int) -> MultiPoly:
        return cls({(): c})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> MultiPoly:
        if exp < 0:
            raise ValueError("negative exponent")
        return cls({((name, exp),): 1})

    @staticmethod
    def coerce(p: PolyLike) -> MultiPoly:
        if isinstance(p, MultiPoly):
            return p
        if isinstance(p, int):
            return MultiPoly.const(p)
        if isinstance(p, str):
            return MultiPoly.var(p)
        raise TypeError(f"cannot make a polynomial from {type(p).__name__}")

    def variables(self) -> list[str]:
        names = {v for m in self.terms for v, _ in m}
        return sorted(names, key=_var_rank)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: PolyLike) -> MultiPoly:
        other = MultiPoly.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: PolyLike) -> MultiPoly:
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other: PolyLike) -> MultiPoly:
        return MultiPoly.coerce(other) - self

    def __mul__(self, other: PolyLike) -> MultiPoly:
        other = MultiPoly.coerce(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative power")
        out, base = MultiPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def coefficient(self, **exps: int) -> int:
        mono = tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda ve: _var_rank(ve[0])))
        return self.terms.get(mono, 0)

    def degree(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    def substitute(self, **values: PolyLike) -> MultiPoly:
        """Replace variables by integers or polynomials."""
        vals = {k: MultiPoly.coerce(v) for k, v in values.items()}
        out = MultiPoly()
        for mono, c in self.terms.items():
            term = MultiPoly.const(c)
            rest = []
            for v, e in mono:
                if v in vals:
                    term = term * vals[v] ** e
                else:
                    rest.append((v, e))
            out = out + term * MultiPoly({tuple(rest): 1})
        return out

    def evaluate(self, **values: int) -> int:
        p = self.substitute(**values)
        if p.variables():
            raise ValueError(f"unbound variables {p.variables()}")
        return p.terms.get((), 0)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Descending exponent-lexicographic order over the canonical variable order."""
        names = self.variables()

        def key(item):
            d = dict(item[0])
            return tuple(d.get(v, 0) for v in names)

        return sorted(self.terms.items(), key=key, reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            mag = abs(c)
            if not body:
                s = str(mag)
            elif mag == 1:
                s = body
            else:
                s = f"{mag}*{body}"
            if not parts:
                parts.append(s if c > 0 else f"-{s}")
            else:
                parts.append(f"+ {s}" if c > 0 else f"- {s}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"


PolyLike = Union[MultiPoly, int, str]

ONE = MultiPoly.const(1)
ZERO = MultiPoly()


@dataclass(frozen=True)
class ParamAssignment:
    """Per-element weights a(w) (element taken) and b(w) (element left out)."""

    a: Mapping
    b: Mapping

    @classmethod
    def from_functions(
        cls, elements: Iterable, a: Callable[[object], PolyLike], b: Callable[[object], PolyLike]
    ) -> ParamAssignment:
        elements = list(elements)
        return cls(
            {e: MultiPoly.coerce(a(e)) for e in elements},
            {e: MultiPoly.coerce(b(e)) for e in elements},
        )

    @classmethod
    def uniform(cls, elements: Iterable, a: PolyLike = 1, b: PolyLike = 1) -> ParamAssignment:
        return cls.from_functions(elements, lambda _: a, lambda _: b)

    @classmethod
    def by_flavor(cls, n: int, a: Mapping[int, PolyLike], b: Mapping[int, PolyLike] | None = None) -> ParamAssignment:
        """Weights depending only on the flavor of each ground element."""
        b = b or {f: 1 for f in FLAVORS}
        return cls.from_functions(ground_set(n), lambda e: a[e.flavor], lambda e: b[e.flavor])

    def check(self, elements: Iterable) -> None:
        missing = [e for e in elements if e not in self.a or e not in self.b]
        if missing:
            raise ValueError(f"parameters missing for {missing[:3]}")


def _check_size(size: int, limit: int, what: str) -> None:
    if size > limit:
        raise ValueError(f"{what} limited to {limit}, got {size}")


def _subset_states(columns: list[int], weights_in: list[MultiPoly], weights_out: list[MultiPoly]):
    """Fold subsets of the columns into (span, size) states carrying summed weights."""
    states: dict[tuple, tuple[XorBasis, MultiPoly]] = {((), 0): (XorBasis(), ONE)}
    for col, wa, wb in zip(columns, weights_in, weights_out):
        nxt: dict[tuple, tuple[XorBasis, MultiPoly]] = {}

        def put(key, basis, weight):
            if weight.is_zero():
                return
            if key in nxt:
                nxt[key] = (nxt[key][0], nxt[key][1] + weight)
            else:
                nxt[key] = (basis, weight)

        for (span, size), (basis, weight) in states.items():
            put((span, size), basis, weight * wb)
            grown = basis.copy()
            grown.add(col)
            put((grown.key(), size + 1), grown, weight * wa)
        states = nxt
    return states


def parametrized_rank_poly(m: BinaryMatroid, p: ParamAssignment, limit: int = SUBSET_LIMIT) -> MultiPoly:
    """Sum over subsets T of a(T) b(W-T) s^(r(W)-r(T)) z^(|T|-r(T))."""
    _check_size(len(m.ground), limit, "ground set size")
    p.check(m.ground)
    cols = m.columns_of(m.ground)
    states = _subset_states(cols, [p.a[e] for e in m.ground], [p.b[e] for e in m.ground])
    full = m.rank
    out = ZERO
    for (span, size), (_, weight) in states.items():
        r = len(span)
        out = out + weight * MultiPoly({(("s", full - r), ("z", size - r)): 1})
    return out


def tutte_subset_expansion(m: BinaryMatroid, limit: int = SUBSET_LIMIT) -> MultiPoly:
    return parametrized_rank_poly(m, ParamAssignment.uniform(m.ground), limit)


def transversal_rank(g: LoopedSimpleGraph, t: SubTransversal) -> int:
    cols = ias_columns(g)
    return len(XorBasis(cols[e] for e in t.elements()))


def transversal_section(g: LoopedSimpleGraph, p: ParamAssignment, limit: int = SECTION_LIMIT) -> MultiPoly:
    """Sum over transversals T of a(T) b(W-T) u^(n - r(T)).

    Built vertex by vertex, merging partial transversals with equal span.
    """
    _check_size(g.n, limit, "vertex count")
    p.check(ground_set(g.n))
    cols = ias_columns(g)
    states: dict[tuple, tuple[XorBasis, MultiPoly]] = {(): (XorBasis(), ONE)}
    for v in range(g.n):
        cell = [GroundElement(v, f) for f in FLAVORS]
        nxt: dict[tuple, tuple[XorBasis, MultiPoly]] = {}
        for chosen in cell:
            w = p.a[chosen]
            for other in cell:
                if other != chosen:
                    w = w * p.b[other]
            if w.is_zero():
                continue
            for basis, weight in states.values():
                grown = basis.copy()
                grown.add(cols[chosen])
                key = grown.key()
                term = weight * w
                if key in nxt:
                    nxt[key] = (nxt[key][0], nxt[key][1] + term)
                else:
                    nxt[key] = (grown, term)
        states = nxt
    out = ZERO
    for span, (_, weight) in states.items():
        out = out + weight * MultiPoly.var("u", g.n - len(span))
    return out


def _expand_counts(counts: Mapping[tuple[int, int], int]) -> MultiPoly:
    """Sum of c * (x-1)^r (y-1)^k over counted (r, k)."""
    out: dict[Monomial, int] = {}
    for (r, k), c in counts.items():
        for i in range(r + 1):
            ci = comb(r, i) * (-1) ** (r - i)
            for j in range(k + 1):
                cj = comb(k, j) * (-1) ** (k - j)
                mono = (("x", i), ("y", j))
                out[mono] = out.get(mono, 0) + c * ci * cj
    return MultiPoly(out)


def interlace_q(g: LoopedSimpleGraph, limit: int = INTERLACE_LIMIT) -> MultiPoly:
    """Sum over S of (x-1)^r(A[S]) (y-1)^(|S| - r(A[S]))."""
    _check_size(g.n, limit, "vertex count")
    a = adjacency_matrix(g)
    counts: dict[tuple[int, int], int] = {}
    for k in range(g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            r = rank(principal_submatrix(a, s))
            counts[(r, k - r)] = counts.get((r, k - r), 0) + 1
    return _expand_counts(counts)


_MARK = "t"


def interlace_via_section(g: LoopedSimpleGraph, limit: int = SECTION_LIMIT) -> MultiPoly:
    """q(G) recovered from the transversal section.

    Weights a(phi)=1, a(psi)=0, b=1 restrict the section to phi/chi
    transversals.  A marker variable on chi counts |S(T)|, and since
    n - r(T) equals the nullity of A[S(T)], each term t^k u^m stands for
    (x-1)^(k-m) (y-1)^m.
    """
    p = ParamAssignment.by_flavor(g.n, {PHI: 1, CHI: _MARK, PSI: 0})
    sec = transversal_section(g, p, limit)
    counts: dict[tuple[int, int], int] = {}
    for mono, c in sec.terms.items():
        d = dict(mono)
        k, m = d.get(_MARK, 0), d.get("u", 0)
        if m > k:
            raise ArithmeticError(f"nullity {m} exceeds |S| = {k}")
        counts[(k - m, m)] = counts.get((k - m, m), 0) + c
    return _expand_counts(counts)


def vertex_nullity_specialization(g: LoopedSimpleGraph, limit: int = INTERLACE_LIMIT) -> MultiPoly:
    """q(G) at x = 2."""
    return interlace_q(g, limit).substitute(x=2)


def rank_identity_sides(g: LoopedSimpleGraph, t: SubTransversal) -> tuple[int, int]:
    """(r(T), n - |S(T)| + r(A[S(T)])) for a phi/chi transversal T."""
    if not t.is_transversal() or any(f == PSI for f in t.flavors):
        raise ValueError("expected a transversal using only phi and chi")
    s = [v for v, f in enumerate(t.flavors) if f == CHI]
    rhs = g.n - len(s) + rank(principal_submatrix(adjacency_matrix(g), s))
    return transversal_rank(g, t), rhs
