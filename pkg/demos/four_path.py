"""
Walk through the 4-path: pivot it into a 4-cycle, bend its canonical
triangulation, and undo the bend with the explicit automorphism.

Run with ``python3 demos/four_path.py``.
"""

from __future__ import annotations

from isomat.graphs import canonical_code, cycle_graph, edge_pivot, find_matched_4paths, path_graph
from isomat.isotropic import canonical_partition, elementary_iso, ias, verify_compatible_iso
from isomat.matroid import is_isomorphism
from isomat.triangulations import bend_4path, bent_4path_automorphism, is_triangulation


def cells(t) -> list[list[str]]:
    return sorted(sorted(map(repr, c)) for c in t.cells)


def main() -> None:
    p4 = path_graph(4)
    c4 = edge_pivot(p4, 1, 2)
    print("pivot on the middle edge:", c4.edges())
    print("isomorphic to the 4-cycle:", canonical_code(c4) == canonical_code(cycle_graph(4)))

    h, iso = elementary_iso(p4, "pivot", 1, 2)
    print("flavor permutations:", [str(f) for f in iso.f])
    print("compatible isomorphism verified:", verify_compatible_iso(p4, h, iso))

    quad = find_matched_4paths(p4)[0]
    bent = bend_4path(p4, canonical_partition(p4), quad)
    print("matched 4-path:", quad)
    print("bent cells:", cells(bent))
    print("bent partition is a triangulation:", is_triangulation(p4, bent), "index", bent.index)

    alpha = bent_4path_automorphism(p4, quad)
    m = ias(p4)
    print("alpha is an automorphism:", is_isomorphism(m, m, alpha))
    print("alpha restores the canonical cells:", bent.map(alpha) == canonical_partition(p4))


if __name__ == "__main__":
    main()
