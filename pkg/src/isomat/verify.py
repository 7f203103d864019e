"""
Executable checks of the structural theorems at small n.

Each suite returns a :class:`SuiteReport`.  Properties that are invariant
under relabeling vertices are checked on one representative per
isomorphism class once exhaustive labeled enumeration gets expensive.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .delta_cycles import (
    boxplus,
    cycle_for_vertex_set,
    cycles_by_formula,
    delta_matroid,
    delta_via_bases,
    graph_from_cycles,
    graph_from_delta,
    is_cycle_by_parity,
    is_transverse_cycle,
    phi_set,
    psi_set,
    sigma,
    transverse_cycles,
    twist,
    zeta,
)
from .equivalence import (
    allowed_permutations,
    orbit_partition,
)
from .gf2 import Gf2Matrix
from .graphs import (
    LoopedSimpleGraph,
    all_graphs,
    canonical_code,
    connected_components,
    delete_vertex,
    edge_pivot,
    find_matched_4paths,
    graph_classes,
    nonsimple_local_complement,
    path_graph,
    random_graph,
    simple_local_complement,
)
from .isotropic import (
    CHI,
    FLAVORS,
    PHI,
    PSI,
    GroundElement,
    SubTransversal,
    TheoremViolation,
    canonical_partition,
    compatible_targets,
    elementary_iso,
    ias,
    ias_matrix,
    strong_map_check,
    sub_transversals,
    transversals,
    triangle_check,
    verify_compatible_iso,
)
from .matroid import (
    basis_exchange,
    closure,
    components,
    find_fano_restriction,
    fundamental_circuit,
    is_isomorphism,
    matroids_isomorphic,
    minor,
    rank_of,
)
from .polynomials import interlace_q, interlace_via_section, rank_identity_sides
from .triangulations import (
    bend_4path,
    bent_4path_automorphism,
    canonicalize_triangulation,
    compatible_from_arbitrary,
    enumerate_triangulations,
    is_triangulation,
)


@dataclass
class SuiteReport:
    suite: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, what: Callable[[], str] | str) -> None:
        self.cases += 1
        if not cond and len(self.failures) < 20:
            self.failures.append(what() if callable(what) else what)

    def as_dict(self) -> dict:
        return {"suite": self.suite, "ok": self.ok, "cases": self.cases, "failures": self.failures}


def _graphs_upto(max_n: int, labeled_upto: int, simple: bool = False) -> Iterator[LoopedSimpleGraph]:
    """All labeled graphs for n <= labeled_upto, class representatives beyond."""
    for n in range(1, max_n + 1):
        yield from (all_graphs(n, simple) if n <= labeled_upto else graph_classes(n, simple))


def _pivot_triple(g: LoopedSimpleGraph, v: int, w: int) -> LoopedSimpleGraph:
    return simple_local_complement(simple_local_complement(simple_local_complement(g, v), w), v)


# -- 1. pivots ---------------------------------------------------------------

def suite_pivot(max_n: int = 4, seed: int = 0, random_sizes: Iterable[int] = (5, 6), samples: int = 1000) -> SuiteReport:
    rep = SuiteReport("pivot")
    rng = random.Random(seed)
    graphs = list(_graphs_upto(max_n, max_n))
    for n in random_sizes:
        graphs += [random_graph(n, rng) for _ in range(samples)]
    for g in graphs:
        for v, w in g.edges():
            a, b = _pivot_triple(g, v, w), _pivot_triple(g, w, v)
            rep.check(a == b and edge_pivot(g, v, w) == a, lambda: f"{g} edge {v}{w}")
    return rep


# -- 2. elementary isomorphisms ----------------------------------------------

def _swap_columns(m: Gf2Matrix, i: int, j: int) -> Gf2Matrix:
    idx = list(range(m.ncols))
    idx[i], idx[j] = idx[j], idx[i]
    return m.select_columns(idx)


def _exchanged_ias(g: LoopedSimpleGraph, v: int) -> Gf2Matrix:
    """Basis exchange of v_phi against v_chi (looped v) or v_psi (unlooped v), kept as (I | A')."""
    n = g.n
    block = ias_matrix(g).select_columns(range(n, 3 * n))
    k = v if g.is_looped(v) else n + v
    return Gf2Matrix.identity(n).hstack(basis_exchange(block, v, k))


def suite_elementary(max_n: int = 5, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("elementary")
    for g in _graphs_upto(max_n, max_n):
        n = g.n
        for v in range(n):
            h, iso = elementary_iso(g, "loop-complement", v)
            rep.check(verify_compatible_iso(g, h, iso), lambda: f"loop complement {g} at {v}")
            rep.check(
                ias_matrix(h) == _swap_columns(ias_matrix(g), CHI * n + v, PSI * n + v),
                lambda: f"loop complement columns {g} at {v}",
            )
            h, iso = elementary_iso(g, "local-complement", v)
            rep.check(verify_compatible_iso(g, h, iso), lambda: f"local complement {g} at {v}")
            rep.check(_exchanged_ias(g, v) == ias_matrix(h), lambda: f"basis exchange {g} at {v}")
        for v, w in g.edges():
            h, iso = elementary_iso(g, "pivot", v, w)
            rep.check(verify_compatible_iso(g, h, iso), lambda: f"pivot {g} at {v}{w}")
    return rep


# -- 3. minors ---------------------------------------------------------------

def _rank_agreement(rep, small, big_minor, translate, subsets, label) -> None:
    for s in subsets:
        rep.check(
            rank_of(small, s) == rank_of(big_minor, [translate(e) for e in s]),
            lambda: f"{label} subset {sorted(s)}",
        )


def _up(v: int):
    """Ground map from G - v back to G (order-preserving reindex)."""
    return lambda e: GroundElement(e.vertex + (e.vertex >= v), e.flavor)


def _all_subsets(elems: list) -> Iterator[list]:
    for mask in range(1 << len(elems)):
        yield [e for i, e in enumerate(elems) if (mask >> i) & 1]


def _random_subsets(elems: list, rng: random.Random, k: int) -> Iterator[list]:
    for _ in range(k):
        yield [e for e in elems if rng.random() < 0.5]


def _minor_checks(rep, g: LoopedSimpleGraph, subsets_for) -> None:
    m = ias(g)
    for v in range(g.n):
        cell = [GroundElement(v, f) for f in FLAVORS]
        gv = delete_vertex(g, v)
        small = ias(gv)
        up = _up(v)
        subs = list(subsets_for(small.ground))
        # deletion: contract v_phi, delete the rest of the cell
        big = minor(m, [cell[PHI]], cell[1:])
        _rank_agreement(rep, small, big, up, subs, f"delete {v} from {g}")
        # local complement: contract v_psi (unlooped) or v_chi (looped)
        c = cell[CHI] if g.is_looped(v) else cell[PSI]
        small_lc = ias(delete_vertex(nonsimple_local_complement(g, v), v))
        big = minor(m, [c], [e for e in cell if e != c])
        _rank_agreement(rep, small_lc, big, up, subs, f"local complement minor {v} of {g}")
        # pivot: the compatible iso carries w's cell by f(w)
        for w in g.neighbors(v):
            c = cell[PSI] if g.is_looped(v) else cell[CHI]
            big = minor(m, [c], [e for e in cell if e != c])
            small_pv = ias(delete_vertex(edge_pivot(g, v, w), v))
            _, iso = elementary_iso(g, "pivot", v, w)
            inv = iso.f[w].inverse()

            def back(e, w=w, inv=inv, up=up):
                e = up(e)
                return GroundElement(w, inv(e.flavor)) if e.vertex == w else e

            _rank_agreement(rep, small_pv, big, back, subs, f"pivot minor {v},{w} of {g}")


def suite_minors(max_n: int = 4, seed: int = 0, random_n: int = 6, samples: int = 1000) -> SuiteReport:
    rep = SuiteReport("minors")
    for g in _graphs_upto(max_n, max_n):
        _minor_checks(rep, g, _all_subsets)
    if random_n:
        rng = random.Random(seed)
        g = random_graph(random_n, rng)
        # spread the sampled subsets over a few random graphs and all vertices
        for _ in range(4):
            _minor_checks(rep, g, lambda elems: _random_subsets(elems, rng, samples // (4 * random_n) + 1))
            g = random_graph(random_n, rng)
    return rep


# -- 4. connectivity ---------------------------------------------------------

def expected_components(g: LoopedSimpleGraph) -> set[frozenset]:
    out = set()
    for comp in connected_components(g):
        if len(comp) >= 2:
            out.add(frozenset(GroundElement(v, f) for v in comp for f in FLAVORS))
        else:
            (v,) = comp
            zero = PSI if g.is_looped(v) else CHI
            out.add(frozenset([GroundElement(v, zero)]))
            out.add(frozenset(GroundElement(v, f) for f in FLAVORS if f != zero))
    return out


def suite_connectivity(max_n: int = 5, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("connectivity")
    for g in _graphs_upto(max_n, max_n):
        rep.check(set(components(ias(g))) == expected_components(g), lambda: str(g))
    return rep


# -- 5. delta-matroid --------------------------------------------------------

def _psi_fixing_moves(g: LoopedSimpleGraph):
    for v in g.looped_vertices():
        yield elementary_iso(g, "local-complement", v)
    for v, w in g.edges():
        if not g.is_looped(v) and not g.is_looped(w):
            yield elementary_iso(g, "pivot", v, w)


def suite_delta(max_n: int = 6, seed: int = 0, twist_n: int = 5, labeled_upto: int = 4) -> SuiteReport:
    rep = SuiteReport("delta")
    for g in _graphs_upto(max_n, labeled_upto):
        d = delta_matroid(g)
        rep.check(d == delta_via_bases(g), lambda: f"bases {g}")
        rep.check(graph_from_delta(d) == g, lambda: f"round trip {g}")
    for g in _graphs_upto(twist_n, twist_n):
        d = delta_matroid(g)
        for h, iso in _psi_fixing_moves(g):
            x = [v for v in range(g.n) if not iso.f[v].is_identity]
            rep.check(delta_matroid(h) == twist(d, x), lambda: f"twist {g} -> {h}")
    return rep


# -- 6. transverse cycles ----------------------------------------------------

def suite_cycles(max_n: int = 6, seed: int = 0, labeled_upto: int = 4, parity_n: int = 4) -> SuiteReport:
    rep = SuiteReport("cycles")
    for g in _graphs_upto(max_n, labeled_upto):
        cyc = transverse_cycles(g)
        cset = set(cyc)
        rep.check(len(cyc) == 2**g.n and len(cset) == len(cyc), lambda: f"count {g}")
        rep.check(set(cycles_by_formula(g)) == cset, lambda: f"formula {g}")
        for v in range(g.n):
            try:
                ok = zeta(g, v, cyc) == cycle_for_vertex_set(g, [v])
            except ValueError:
                ok = False
            rep.check(ok, lambda: f"zeta {g} at {v}")
        rep.check(graph_from_cycles(cyc) == g, lambda: f"round trip {g}")
        phi, psi = sigma(g.n, phi_set(g)), sigma(g.n, psi_set(g))
        rep.check(
            phi.is_transversal() and psi.is_transversal() and all(a != b for a, b in zip(phi.flavors, psi.flavors)),
            lambda: f"supplementary {g}",
        )
        if g.n <= parity_n:
            for s in sub_transversals(g.n):
                rep.check(is_cycle_by_parity(g, s) == is_transverse_cycle(g, s), lambda: f"parity {g} {s}")
        if g.n <= 3:
            rep.check(all(boxplus(a, b) in cset for a in cyc for b in cyc), lambda: f"closure {g}")
    return rep


# -- 7. triangle property ----------------------------------------------------

def suite_triangle(max_n: int = 4, seed: int = 0, strong_labeled_upto: int = 4) -> SuiteReport:
    rep = SuiteReport("triangle")
    for g in _graphs_upto(max_n, max_n):
        n = g.n
        m = ias(g)
        for s in sub_transversals(n, n - 1):
            (v,) = [u for u, f in enumerate(s.flavors) if f is None]
            try:
                triangle_check(g, s, v)
                ok = True
            except TheoremViolation:
                ok = False
            rep.check(ok, lambda: f"triangle {g} {s}")
        for s in sub_transversals(n):
            cl = closure(m, s.elements())
            for v, f in enumerate(s.flavors):
                if f is None:
                    hits = sum(GroundElement(v, i) in cl for i in FLAVORS)
                    rep.check(hits <= 1, lambda: f"closure {g} {s} at {v}")
    for g in _graphs_upto(max_n, strong_labeled_upto):
        for s in transversals(g.n):
            for t in transversals(g.n):
                if all(a != b for a, b in zip(s.flavors, t.flavors)):
                    rep.check(strong_map_check(g, s, t), lambda: f"strong map {g} {s} {t}")
    return rep


# -- 8. triangulations -------------------------------------------------------

def alpha_table(g: LoopedSimpleGraph, quad) -> list[tuple]:
    """Rows (z, C(z, Phi), alpha(z), alpha(C(z, Phi))) for the cells of a matched 4-path."""
    u, v, w, x = quad
    E = GroundElement
    nu = [E(t, PHI) for t in g.neighbors(u)]
    nx = [E(t, PHI) for t in g.neighbors(x)]
    nu_v = [e for e in nu if e.vertex != v]
    nx_w = [e for e in nx if e.vertex != w]
    rows = [
        (E(u, CHI), nu + [E(u, CHI)], E(v, PHI), nu_v + [E(u, CHI), E(v, PHI)]),
        (E(u, PSI), nu + [E(u, PHI), E(u, PSI)], E(w, CHI), nu_v + [E(w, CHI), E(x, PHI), E(u, CHI)]),
        (E(v, CHI), [E(u, PHI), E(v, CHI), E(w, PHI)], E(x, PSI), [E(x, PHI), E(x, CHI), E(x, PSI)]),
        (E(v, PSI), [E(u, PHI), E(v, PHI), E(v, PSI), E(w, PHI)], E(w, PSI), [E(u, CHI), E(w, PSI), E(x, PHI), E(x, CHI)]),
        (E(w, CHI), [E(v, PHI), E(w, CHI), E(x, PHI)], E(u, PSI), [E(u, PHI), E(u, CHI), E(u, PSI)]),
        (E(w, PSI), [E(v, PHI), E(w, PHI), E(w, PSI), E(x, PHI)], E(v, PSI), [E(u, PHI), E(u, CHI), E(v, PSI), E(x, CHI)]),
        (E(x, CHI), nx + [E(x, CHI)], E(w, PHI), nx_w + [E(x, CHI), E(w, PHI)]),
        (E(x, PSI), nx + [E(x, PHI), E(x, PSI)], E(v, CHI), nx_w + [E(u, PHI), E(v, CHI), E(x, CHI)]),
    ]
    return [(z, frozenset(c), az, frozenset(ac)) for z, c, az, ac in rows]


def check_alpha(rep: SuiteReport, g: LoopedSimpleGraph, quad) -> None:
    m = ias(g)
    alpha = bent_4path_automorphism(g, quad)
    rep.check(is_isomorphism(m, m, alpha), lambda: f"alpha not an automorphism {g} {quad}")
    phi = [GroundElement(t, PHI) for t in range(g.n)]
    aphi = [alpha[e] for e in phi]
    for z, c, az, ac in alpha_table(g, quad):
        got_c = fundamental_circuit(m, z, phi)
        got_ac = fundamental_circuit(m, az, aphi)
        rep.check(
            got_c == c and alpha[z] == az and got_ac == ac and frozenset(alpha[e] for e in c) == ac,
            lambda: f"alpha table row {z} for {g} {quad}",
        )


def suite_triangulations(max_n: int = 4, seed: int = 0, labeled_upto: int = 4) -> SuiteReport:
    rep = SuiteReport("triangulations")
    for g in _graphs_upto(max_n, labeled_upto):
        canon = canonical_partition(g)
        for quad in find_matched_4paths(g):
            bent = bend_4path(g, canon, quad)
            rep.check(is_triangulation(g, bent), lambda: f"bend {g} {quad}")
            check_alpha(rep, g, quad)
        for p in enumerate_triangulations(g):
            try:
                alpha = canonicalize_triangulation(g, p)
                ok = p.map(alpha) == canon
            except TheoremViolation:
                ok = False
            rep.check(ok, lambda: f"canonicalize {g} {sorted(map(sorted, p.cells))}")
    # the displayed example: an unlooped path on four vertices
    p4 = path_graph(4)
    rep.check((0, 1, 2, 3) in find_matched_4paths(p4), "P4 matched path")
    check_alpha(rep, p4, (0, 1, 2, 3))
    return rep


# -- 9. completeness of compatible isomorphisms ------------------------------

def _target_codes(g: LoopedSimpleGraph, allowed) -> set[bytes]:
    return {canonical_code(h) for _, h in compatible_targets(g, allowed)}


def suite_completeness(max_n: int = 4, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("completeness")
    for n in range(1, max_n + 1):
        classes = graph_classes(n)
        # matroid-isomorphism classes, grown by comparing against one member each
        m_classes: list[list[LoopedSimpleGraph]] = []
        for g in classes:
            for cls in m_classes:
                gamma = matroids_isomorphic(ias(cls[0]), ias(g))
                if gamma is not None:
                    iso = compatible_from_arbitrary(cls[0], g, gamma)
                    rep.check(verify_compatible_iso(cls[0], g, iso), lambda: f"reduction {cls[0]} -> {g}")
                    cls.append(g)
                    break
            else:
                m_classes.append([g])
        m_part = {frozenset(canonical_code(g) for g in cls) for cls in m_classes}
        o_part = {frozenset(o) for o in orbit_partition(classes, "full-local")}
        rep.check(m_part == o_part, lambda: f"full-local partition differs at n={n}")
        # f-constrained criteria against orbits
        for kind, simple in (("ppt", False), ("pivots-only", True)):
            pool = [g for g in classes if g.is_simple()] if simple else classes
            orbits = orbit_partition(pool, kind)
            where = {c: i for i, o in enumerate(orbits) for c in o}
            for g in pool:
                reach = _target_codes(g, allowed_permutations(g, kind))
                for h in pool:
                    hc = canonical_code(h)
                    same = where[canonical_code(g)] == where[hc]
                    rep.check(same == (hc in reach), lambda: f"{kind} {g} vs {h}")
    return rep


def check_compatible_from_arbitrary(max_n: int = 3) -> SuiteReport:
    """Every isomorphism found between isotropic matroids reduces to a compatible one."""
    rep = SuiteReport("reduction")
    for n in range(1, max_n + 1):
        classes = graph_classes(n)
        for g1, g2 in itertools.product(classes, repeat=2):
            gamma = matroids_isomorphic(ias(g1), ias(g2))
            if gamma is None:
                continue
            iso = compatible_from_arbitrary(g1, g2, gamma)
            rep.check(verify_compatible_iso(g1, g2, iso), lambda: f"{g1} -> {g2}")
    return rep


# -- 10. Fano ----------------------------------------------------------------

FANO_COLUMNS = (0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111)


def suite_fano(max_n: int = 5, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("fano")
    p3 = path_graph(3)
    m = ias(p3)
    found = find_fano_restriction(m)
    rep.check(found is not None and sorted(m.column(e) for e in found) == sorted(FANO_COLUMNS), "P3 Fano columns")
    for g in _graphs_upto(max_n, max_n):
        small = all(len(c) <= 2 for c in connected_components(g))
        if small:
            rep.check(find_fano_restriction(ias(g)) is None, lambda: f"unexpected Fano in {g}")
    # every 3-vertex connected graph, looped or not, carries a Fano restriction
    for g in all_graphs(3):
        if len(connected_components(g)) == 1:
            rep.check(find_fano_restriction(ias(g)) is not None, lambda: f"missing Fano in {g}")
    return rep


# -- 11. interlace -----------------------------------------------------------

def suite_interlace(
    max_n: int = 5, seed: int = 0, random_n: int = 8, samples: int = 100, identity_n: int = 6, labeled_upto: int = 5
) -> SuiteReport:
    rep = SuiteReport("interlace")
    for g in _graphs_upto(max_n, labeled_upto):
        rep.check(interlace_via_section(g) == interlace_q(g), lambda: f"section {g}")
    rng = random.Random(seed)
    for _ in range(samples if random_n else 0):
        g = random_graph(random_n, rng)
        rep.check(interlace_via_section(g) == interlace_q(g), lambda: f"section {g}")
    for g in _graphs_upto(identity_n, min(identity_n, 4)):
        for flv in itertools.product((PHI, CHI), repeat=g.n):
            lhs, rhs = rank_identity_sides(g, SubTransversal(flv))
            rep.check(lhs == rhs, lambda: f"rank identity {g} {flv}")
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "pivot": suite_pivot,
    "elementary": suite_elementary,
    "minors": suite_minors,
    "connectivity": suite_connectivity,
    "delta": suite_delta,
    "cycles": suite_cycles,
    "triangle": suite_triangle,
    "triangulations": suite_triangulations,
    "completeness": suite_completeness,
    "fano": suite_fano,
    "interlace": suite_interlace,
}


def run_suite(name: str, max_n: int | None = None, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    kwargs = {"seed": seed}
    if max_n is not None:
        kwargs["max_n"] = max_n
    return SUITES[name](**kwargs)
