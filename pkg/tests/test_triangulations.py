from __future__ import annotations

import pytest
from oracles import span_rank

from isomat.graphs import LoopedSimpleGraph, all_graphs, complete_graph, path_graph
from isomat.isotropic import (
    CHI,
    FLAVORS,
    PHI,
    PHI_CHI,
    PSI,
    CompatibleIso,
    Triangulation,
    canonical_partition,
    el,
    elementary_iso,
    ground_set,
    ias,
    ias_columns,
    verify_compatible_iso,
)
from isomat.matroid import fundamental_circuit, is_isomorphism
from isomat.triangulations import (
    bend_4path,
    bent_4path_automorphism,
    canonicalize_triangulation,
    compatible_from_arbitrary,
    compose_perm,
    enumerate_triangulations,
    is_triangulation,
)
from isomat.verify import check_compatible_from_arbitrary

QUAD = (0, 1, 2, 3)


def set_partitions_into_triples(elems):
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            cell = frozenset({first, rest[i], rest[j]})
            remaining = [e for k, e in enumerate(rest) if k not in (i, j)]
            for tail in set_partitions_into_triples(remaining):
                yield [cell] + tail


def brute_valid(cols):
    nonzero = [c for c in cols if c]
    if len(nonzero) == 2:
        return nonzero[0] == nonzero[1]
    if len(nonzero) < 2:
        return False
    return span_rank(cols) == 2 and all(span_rank([a, b]) == 2 for a, b in zip(cols, cols[1:] + cols[:1]))


def brute_triangulations(g):
    cols = ias_columns(g)
    out = set()
    for part in set_partitions_into_triples(ground_set(g.n)):
        if all(brute_valid([cols[e] for e in sorted(c)]) for c in part):
            out.add(frozenset(part))
    return out


def test_enumerate_examples(k1):
    assert [t.cells for t in enumerate_triangulations(k1)] == [canonical_partition(k1).cells]
    k2 = path_graph(2)
    assert {t.cells for t in enumerate_triangulations(k2)} == brute_triangulations(k2)
    p4 = path_graph(4)
    bent = bend_4path(p4, canonical_partition(p4), QUAD)
    assert bent in enumerate_triangulations(p4)
    with pytest.raises(ValueError):
        enumerate_triangulations(path_graph(6))


def test_enumerate_matches_brute_force_n3():
    for n in range(4):
        for g in all_graphs(n):
            found = enumerate_triangulations(g)
            assert len(found) == len({t.cells for t in found})
            assert {t.cells for t in found} == brute_triangulations(g)


def test_is_triangulation_examples(p3):
    assert is_triangulation(p3, canonical_partition(p3))
    a, b = 0, 1
    swapped = Triangulation(
        frozenset(
            {
                frozenset({el(a, PHI), el(b, PHI), el(a, PSI)}),
                frozenset({el(a, CHI), el(b, CHI), el(b, PSI)}),
                frozenset(el(2, f) for f in FLAVORS),
            }
        )
    )
    assert is_triangulation(p3, swapped)
    indep = Triangulation(
        frozenset(
            {
                frozenset({el(0, PHI), el(1, PHI), el(2, PHI)}),
                frozenset({el(0, CHI), el(1, CHI), el(2, CHI)}),
                frozenset({el(0, PSI), el(1, PSI), el(2, PSI)}),
            }
        )
    )
    assert not is_triangulation(p3, indep)
    with pytest.raises(ValueError):
        is_triangulation(path_graph(2), canonical_partition(p3))
    with pytest.raises(ValueError):
        Triangulation(frozenset({frozenset({el(0, PHI), el(0, CHI)})}))


def test_bend_examples(p4):
    bent = bend_4path(p4, canonical_partition(p4), QUAD)
    u, v, w, x = QUAD
    assert bent.cells == {
        frozenset({el(u, PHI), el(v, CHI), el(w, PHI)}),
        frozenset({el(v, PHI), el(w, CHI), el(x, PHI)}),
        frozenset({el(u, PSI), el(v, PSI), el(x, CHI)}),
        frozenset({el(u, CHI), el(w, PSI), el(x, PSI)}),
    }
    assert is_triangulation(p4, bent)
    assert bent.index == canonical_partition(p4).index + 4
    with pytest.raises(ValueError):
        bend_4path(p4, canonical_partition(p4), (0, 2, 1, 3))
    with pytest.raises(ValueError):
        bend_4path(p4, bent, QUAD)


def test_bend_on_every_matched_4path_n5():
    from isomat.graphs import find_matched_4paths

    for g in all_graphs(5):
        for quad in find_matched_4paths(g):
            bent = bend_4path(g, canonical_partition(g), quad)
            assert is_triangulation(g, bent)
            assert bent.index == 4
            alpha = bent_4path_automorphism(g, quad)
            assert is_isomorphism(ias(g), ias(g), alpha)
            assert bent.map(alpha) == canonical_partition(g)


def test_alpha_examples(p4):
    alpha = bent_4path_automorphism(p4, QUAD)
    m = ias(p4)
    assert is_isomorphism(m, m, alpha)
    moved = [e for e in alpha if alpha[e] != e]
    assert len(moved) == 12
    assert compose_perm(alpha, alpha) == {e: e for e in ground_set(4)}
    phi = [el(v, PHI) for v in range(4)]
    image_phi = [alpha[e] for e in phi]
    for z in ground_set(4):
        if z.flavor == PHI:
            continue
        c = fundamental_circuit(m, z, phi)
        assert {alpha[e] for e in c} == fundamental_circuit(m, alpha[z], image_phi)
    bent = bend_4path(p4, canonical_partition(p4), QUAD)
    assert bent.map(alpha) == canonical_partition(p4)
    with pytest.raises(ValueError):
        bent_4path_automorphism(complete_graph(4), QUAD)


def test_canonicalize_examples(p3, p4):
    ident = {e: e for e in ground_set(3)}
    assert canonicalize_triangulation(p3, canonical_partition(p3)) == ident
    swap = {**ident, el(0, CHI): el(1, PHI), el(1, PHI): el(0, CHI)}
    tri = canonical_partition(p3).map(swap)
    assert canonicalize_triangulation(p3, tri) == swap
    bent = bend_4path(p4, canonical_partition(p4), QUAD)
    assert canonicalize_triangulation(p4, bent) == bent_4path_automorphism(p4, QUAD)
    with pytest.raises(ValueError):
        canonicalize_triangulation(path_graph(5), canonical_partition(path_graph(5)))


def test_canonicalize_every_triangulation_n3():
    for n in range(4):
        for g in all_graphs(n):
            canon = canonical_partition(g)
            for t in enumerate_triangulations(g):
                alpha = canonicalize_triangulation(g, t)
                assert t.map(alpha) == canon
                assert is_isomorphism(ias(g), ias(g), alpha)


def test_compatible_from_arbitrary_examples(p3):
    g2, i = elementary_iso(p3, "pivot", 0, 1)
    gamma = i.ground_map()
    assert compatible_from_arbitrary(p3, g2, gamma) == i
    # spoil the compatible map by a parallel swap in the target
    assert i.f[0] == PHI_CHI
    cols = ias_columns(g2)
    pair = [(a, b) for a in ground_set(3) for b in ground_set(3) if a.vertex < b.vertex and cols[a] and cols[a] == cols[b]]
    a, b = pair[0]
    swap = {e: e for e in ground_set(3)}
    swap[a], swap[b] = b, a
    spoiled = compose_perm(swap, gamma)
    assert is_isomorphism(ias(p3), ias(g2), spoiled)
    fixed = compatible_from_arbitrary(p3, g2, spoiled)
    assert isinstance(fixed, CompatibleIso) and verify_compatible_iso(p3, g2, fixed)
    with pytest.raises(ValueError):
        compatible_from_arbitrary(p3, complete_graph(3), {e: e for e in ground_set(3)})


def test_compatible_from_arbitrary_exhaustive_n3():
    report = check_compatible_from_arbitrary(max_n=3)
    assert report.ok, report.failures[:3]
    assert report.cases > 0


def test_empty_graph_vacuous():
    g = LoopedSimpleGraph.empty(0)
    assert enumerate_triangulations(g) == [canonical_partition(g)]
    assert canonicalize_triangulation(g, canonical_partition(g)) == {}
