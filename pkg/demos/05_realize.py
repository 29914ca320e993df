"""Realizing a prescribed Milnor invariant by clasper surgery on the unlink.

For an index I the search looks for a caterpillar clasper whose surgery
gives |mu(I)| = 1 with zero indeterminacy.  Indices like 112 cannot be
realized at all once the linking numbers vanish, and the search says so.
"""
from milnorck.constructions import realization_clasper, realize_milnor
from milnorck.diagram import DiagramError
from milnorck.milnor import MagnusData

for I in [(1, 2, 3), (1, 1, 2, 2), (1, 2, 3, 4), (1, 1, 1, 2, 3), (1, 1, 2)]:
    name = "".join(map(str, I))
    try:
        d = realize_milnor(I)
    except DiagramError as exc:
        print(f"{name:6s} not realizable: {exc}")
        continue
    v = MagnusData(d, len(I) - 1).mu_bar(I)
    t = realization_clasper(I)
    leaves = [lf.component for lf in t.leaves]
    print(f"{name:6s} mu = {v.value:2d} delta {v.delta}  crossings {d.n_crossings:3d}  leaves {leaves}")
