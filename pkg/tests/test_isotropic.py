from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import ias_array
from strategies import graphs

from isomat.gf2 import Gf2Matrix, row_space_key
from isomat.graphs import (
    LoopedSimpleGraph,
    all_graphs,
    complete_graph,
    edge_pivot,
    loop_complement,
    nonsimple_local_complement,
    path_graph,
)
from isomat.isotropic import (
    CHI,
    CHI_PSI,
    FLAVORS,
    IDENTITY,
    PHI,
    PHI_CHI,
    PHI_PSI,
    PSI,
    S3,
    CompatibleIso,
    Perm3,
    SubTransversal,
    TheoremViolation,
    canonical_partition,
    compatible_targets,
    compose_iso,
    el,
    elementary_iso,
    graph_for_relabeling,
    ias,
    ias_columns,
    ias_matrix,
    invert_iso,
    restricted_ia,
    strong_map_check,
    sub_transversals,
    transversals,
    triangle_check,
    verify_compatible_iso,
    verify_compatible_iso_rref,
)
from isomat.matroid import basis_exchange, equal_matroids, minor, rank_of
from isomat.triangulations import is_triangulation


@st.composite
def isos(draw, n):
    perm = draw(st.permutations(range(n)))
    f = draw(st.lists(st.sampled_from(S3), min_size=n, max_size=n))
    return CompatibleIso(tuple(perm), tuple(f))


def test_ias_examples(k1, k1_looped, p3):
    assert ias(k1).rep.columns() == [1, 0, 1]
    assert ias(k1_looped).rep.columns() == [1, 1, 0]
    m = ias_matrix(p3).to_lists()
    assert [row[3:6] for row in m] == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    assert [row[6:9] for row in m] == [[1, 1, 0], [1, 1, 1], [0, 1, 1]]
    assert ias(LoopedSimpleGraph.empty(0)).ground == ()


@given(graphs())
def test_ias_matches_numpy_oracle(g):
    m = ias(g)
    assert (ias_matrix(g).to_array() == ias_array(g)).all()
    assert m.rank == g.n
    assert m.ground == tuple(el(v, f) for f in FLAVORS for v in range(g.n))
    cols = ias_columns(g)
    for v in range(g.n):
        assert cols[el(v, PHI)] ^ cols[el(v, CHI)] ^ cols[el(v, PSI)] == 0


def test_restricted_ia_examples(k1, p3):
    assert restricted_ia(k1).rep.columns() == [1, 0]
    assert restricted_ia(p3).rep.to_lists() == [[1, 0, 0, 0, 1, 0], [0, 1, 0, 1, 0, 1], [0, 0, 1, 0, 1, 0]]


@given(graphs(max_n=4))
def test_restricted_ia_is_restriction(g):
    r = restricted_ia(g)
    full = ias(g)
    assert equal_matroids(r, minor(full, delete=[el(v, PSI) for v in range(g.n)]))


def test_canonical_partition_examples(k1, p3):
    assert canonical_partition(k1).cells == {frozenset({el(0, PHI), el(0, CHI), el(0, PSI)})}
    assert len(canonical_partition(p3)) == 3
    for g in itertools.chain.from_iterable(all_graphs(n) for n in range(5)):
        assert is_triangulation(g, canonical_partition(g))


def test_perm3_group():
    assert len(set(S3)) == 6
    assert str(IDENTITY) == "1" and str(PHI_CHI) == "(φχ)"
    for a, b, c in itertools.product(S3, repeat=3):
        assert (a * b) * c == a * (b * c)
    for a in S3:
        assert a * a.inverse() == IDENTITY == a.inverse() * a
        for i in FLAVORS:
            assert (a * PHI_CHI)(i) == a(PHI_CHI(i))
    three = Perm3.cycle(PHI, CHI, PSI)
    assert three.inverse() == Perm3.cycle(PHI, PSI, CHI)
    with pytest.raises(ValueError):
        Perm3((PHI, PHI, CHI))


def test_elementary_iso_examples(p3):
    h, i = elementary_iso(p3, "loop-complement", 1)
    assert h == loop_complement(p3, 1) and i.f == (IDENTITY, CHI_PSI, IDENTITY)
    h, i = elementary_iso(p3, "local-complement", 1)
    assert h == nonsimple_local_complement(p3, 1) and i.f[1] == PHI_PSI
    h, i = elementary_iso(path_graph(3, loops=[1]), "local-complement", 1)
    assert i.f[1] == PHI_CHI
    h, i = elementary_iso(p3, "pivot", 0, 1)
    assert h == edge_pivot(p3, 0, 1) and i.f[:2] == (PHI_CHI, PHI_CHI)
    with pytest.raises(ValueError):
        elementary_iso(p3, "pivot", 0, 2)
    with pytest.raises(ValueError):
        elementary_iso(p3, "pivot", 0)
    with pytest.raises(ValueError):
        elementary_iso(p3, "twist", 0)


def test_elementary_isos_verify_exhaustive():
    for n in range(1, 5):
        for g in all_graphs(n):
            moves = [("loop-complement", v, None) for v in range(n)]
            moves += [("local-complement", v, None) for v in range(n)]
            moves += [("pivot", v, w) for v, w in g.edges()]
            for kind, v, w in moves:
                h, i = elementary_iso(g, kind, v, w)
                assert verify_compatible_iso(g, h, i)


def test_compose_examples(p3):
    ident = CompatibleIso.identity(3)
    _, i = elementary_iso(p3, "loop-complement", 0)
    assert compose_iso(i, ident) == i == compose_iso(ident, i)
    assert compose_iso(i, i) == ident
    with pytest.raises(ValueError):
        compose_iso(i, CompatibleIso.identity(2))


def test_pivot_composition_chain():
    # unlooped edge vw: local complements at v, w, v, then loop complement at v
    g = path_graph(4)
    v, w = 1, 2
    g1, i1 = elementary_iso(g, "local-complement", v)
    g2, i2 = elementary_iso(g1, "local-complement", w)
    g3, i3 = elementary_iso(g2, "local-complement", v)
    g4, i4 = elementary_iso(g3, "loop-complement", v)
    total = compose_iso(compose_iso(compose_iso(i1, i2), i3), i4)
    assert (i1.f[v], i2.f[v], i3.f[v], i4.f[v]) == (PHI_PSI, IDENTITY, PHI_CHI, CHI_PSI)
    assert total.f[v] == CHI_PSI * PHI_CHI * IDENTITY * PHI_PSI == PHI_CHI
    assert g4 == edge_pivot(g, v, w)
    assert verify_compatible_iso(g, g4, total)


def test_invert_examples():
    assert invert_iso(CompatibleIso.identity(3)) == CompatibleIso.identity(3)
    t = CompatibleIso((1, 0), (PHI_CHI, CHI_PSI))
    assert invert_iso(t) == CompatibleIso((1, 0), (CHI_PSI, PHI_CHI))
    c = CompatibleIso((0,), (Perm3.cycle(PHI, CHI, PSI),))
    assert invert_iso(c).f == (Perm3.cycle(PHI, PSI, CHI),)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(isos(n), isos(n), isos(n))))
def test_iso_group_laws(triple):
    a, b, c = triple
    ident = CompatibleIso.identity(a.n)
    assert compose_iso(a, invert_iso(a)) == ident == compose_iso(invert_iso(a), a)
    assert compose_iso(compose_iso(a, b), c) == compose_iso(a, compose_iso(b, c))
    ab = compose_iso(a, b)
    for e in a.ground_map():
        assert ab(e) == b(a(e))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(graphs(n, n), graphs(n, n), isos(n))))
def test_fast_verify_matches_rref(triple):
    g1, g2, i = triple
    assert verify_compatible_iso(g1, g2, i) == verify_compatible_iso_rref(g1, g2, i)


def test_fast_verify_matches_rref_on_targets():
    for n in range(1, 4):
        for g in all_graphs(n):
            for i, h in compatible_targets(g):
                assert verify_compatible_iso(g, h, i) and verify_compatible_iso_rref(g, h, i)
                moved = CompatibleIso(tuple(reversed(range(n))), i.f)
                assert verify_compatible_iso(g, h, moved) == verify_compatible_iso_rref(g, h, moved)


def test_verify_examples(p3, k1, k1_looped):
    tri = complete_graph(3)
    assert not verify_compatible_iso(p3, tri, CompatibleIso.identity(3))
    assert not verify_compatible_iso(k1, k1, CompatibleIso.from_f([CHI_PSI]))
    assert verify_compatible_iso(k1, k1_looped, CompatibleIso.from_f([CHI_PSI]))
    with pytest.raises(ValueError):
        verify_compatible_iso(p3, k1, CompatibleIso.identity(3))


def test_identity_iso_forces_equal_graphs_exhaustive():
    # same ground and identity labels: verified iff the row spaces coincide
    for n in range(5):
        keys = {}
        for g in all_graphs(n):
            key = row_space_key(ias_matrix(g))
            assert key not in keys
            keys[key] = g
    for n in range(1, 4):
        for g1, g2 in itertools.product(list(all_graphs(n)), repeat=2):
            assert verify_compatible_iso(g1, g2, CompatibleIso.identity(n)) == (g1 == g2)


def test_graph_for_relabeling_unique():
    for n in range(1, 4):
        for g in all_graphs(n):
            assert graph_for_relabeling(g, [IDENTITY] * n) == g
            for f in itertools.product(S3, repeat=n):
                h = graph_for_relabeling(g, f)
                hits = [h2 for h2 in all_graphs(n) if verify_compatible_iso(g, h2, CompatibleIso.from_f(f))]
                assert hits == ([] if h is None else [h])


def test_loop_complement_swaps_columns_exhaustive():
    for n in range(1, 6):
        for g in all_graphs(n):
            cols = ias_matrix(g).columns()
            for v in range(n):
                swapped = list(cols)
                swapped[n + v], swapped[2 * n + v] = swapped[2 * n + v], swapped[n + v]
                assert ias_matrix(loop_complement(g, v)).columns() == swapped


def test_local_complement_is_basis_exchange_exhaustive():
    for n in range(1, 6):
        for g in all_graphs(n):
            m = ias_matrix(g)
            block = m.select_columns(range(n, 3 * n))
            for v in range(n):
                k = v if g.is_looped(v) else n + v
                out = basis_exchange(block, v, k)
                full = Gf2Matrix.from_columns(n, [1 << i for i in range(n)] + out.columns())
                assert full == ias_matrix(nonsimple_local_complement(g, v))


def _parallel_expected(g):
    def open_(v):
        return el(v, PSI if g.is_looped(v) else CHI)

    def closed(v):
        return el(v, CHI if g.is_looped(v) else PSI)

    pairs = set()
    for v in range(g.n):
        if g.neighbors(v) and len(g.neighbors(v)) == 1:
            (w,) = g.neighbors(v)
            pairs.add(frozenset({open_(v), el(w, PHI)}))
        for w in range(v + 1, g.n):
            nv, nw = set(g.neighbors(v)) - {w}, set(g.neighbors(w)) - {v}
            if nv == nw:
                if g.adjacent(v, w):
                    pairs.add(frozenset({closed(v), closed(w)}))
                elif nv:
                    pairs.add(frozenset({open_(v), open_(w)}))
    return pairs


def test_parallel_catalogue_exhaustive():
    for n in range(1, 6):
        for g in all_graphs(n):
            cols = ias_columns(g)
            found = {
                frozenset({a, b})
                for a, b in itertools.combinations(cols, 2)
                if a.vertex != b.vertex and cols[a] and cols[a] == cols[b]
            }
            assert found == _parallel_expected(g)


def test_parallel_catalogue_named_cases():
    pend = path_graph(2)
    assert ias_columns(pend)[el(0, CHI)] == ias_columns(pend)[el(1, PHI)]
    lpend = path_graph(2, loops=[0])
    assert ias_columns(lpend)[el(0, PSI)] == ias_columns(lpend)[el(1, PHI)]
    twins = LoopedSimpleGraph.from_edges(3, [(0, 2), (1, 2)])
    assert ias_columns(twins)[el(0, CHI)] == ias_columns(twins)[el(1, CHI)]
    adj = complete_graph(3)
    assert ias_columns(adj)[el(0, PSI)] == ias_columns(adj)[el(1, PSI)]


def test_triangle_examples(p3, k1):
    s = SubTransversal.from_elements(3, [el(0, PHI), el(1, PHI)])
    assert triangle_check(p3, s, 2) == (CHI, (3, 2, 3))
    assert triangle_check(k1, SubTransversal.empty(1), 0) == (CHI, (1, 0, 1))
    with pytest.raises(ValueError):
        triangle_check(p3, s, 1)


def test_triangle_property_exhaustive_n4():
    for g in all_graphs(4):
        for s in sub_transversals(4, 3):
            v = s.flavors.index(None)
            flavor, ranks = triangle_check(g, s, v)
            base = [el(u, s.flavors[u]) for u in range(4) if u != v]
            assert ranks == tuple(rank_of(ias(g), base + [el(v, i)]) for i in FLAVORS)
            assert ranks[flavor] == rank_of(ias(g), base)


def test_triangle_violation_is_fatal():
    assert issubclass(TheoremViolation, AssertionError)


def test_strong_map_examples(k1, p3):
    for s, t in itertools.permutations(transversals(1), 2):
        assert strong_map_check(k1, s, t)
    with pytest.raises(ValueError):
        strong_map_check(p3, SubTransversal.from_elements(3, [el(0, PHI)]), SubTransversal((CHI,) * 3))
    with pytest.raises(ValueError):
        strong_map_check(p3, SubTransversal((PHI,) * 3), SubTransversal((PHI, CHI, CHI)))


def test_strong_map_brute_force_n2():
    def closure_rank_ok(m_rank, dual, s_elems, t_elems, n):
        for k in range(n + 1):
            for a in itertools.combinations(range(n), k):
                for v in set(range(n)) - set(a):
                    sa = [s_elems[u] for u in a]
                    ta = [t_elems[u] for u in a]
                    if m_rank(sa + [s_elems[v]]) == m_rank(sa) and dual(ta + [t_elems[v]]) != dual(ta):
                        return False
        return True

    for g in all_graphs(2):
        m = ias(g)
        for s, t in itertools.product(transversals(2), repeat=2):
            if any(a == b for a, b in zip(s.flavors, t.flavors)):
                continue
            s_el = [el(v, s.flavors[v]) for v in range(2)]
            t_el = [el(v, t.flavors[v]) for v in range(2)]

            def dual(x, t_el=t_el, m=m):
                rest = [e for e in t_el if e not in x]
                return len(x) + rank_of(m, rest) - rank_of(m, t_el)

            expected = closure_rank_ok(lambda x, m=m: rank_of(m, x), dual, s_el, t_el, 2)
            assert strong_map_check(g, s, t) == expected


def test_numpy_interop(p3):
    assert np.array_equal(ias_matrix(p3).to_array(), ias_array(p3))
