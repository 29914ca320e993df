"""Whitehead doubling one Borromean component.

The result is a three component link whose Conway polynomial vanishes
identically, so the Alexander-type invariants see nothing.  The Milnor
invariants of length six do see it.  We print the nonzero ones together
with their indeterminacy, then rebuild the same link a second way
(Bing doubling the Whitehead link) as a cross-check.
"""
from milnorck import catalog
from milnorck.milnor import MagnusData, milnor_table
from milnorck.polynomials import conway

d = catalog("wh-double-borromean")
print(f"{d.n_components} components, {d.n_crossings} crossings")
print("Conway:", conway(d))

table = milnor_table(d, 6)
nonzero = {I: v for I, v in table.items() if v.value or v.delta}
print(f"{len(table)} indices up to length 6, {len(nonzero)} nonzero")
for I, v in sorted(nonzero.items(), key=lambda kv: (len(kv[0]), kv[0]))[:12]:
    print(f"  mu({''.join(map(str, I))}) = {v.value:3d}   delta {v.delta}")

alt = catalog("wh-double-borromean-alt")
m1, m2 = MagnusData(d, 5), MagnusData(alt, 5)
for I in [(1, 2, 3, 1, 2, 3), (1, 1, 2, 3, 2, 3)]:
    a, b = m1.mu_bar(I), m2.mu_bar(I)
    print(f"mu({''.join(map(str, I))}): {a.value} vs {b.value} (delta {a.delta}, {b.delta})")
