"""Bing doubling the Hopf link gives the Borromean rings.

The Hopf link has lk = 1 and nothing else to say.  Doubling one component
kills every pairwise linking number and moves the information up one
level, into mu(123).
"""
from milnorck import catalog
from milnorck.constructions import bing_double
from milnorck.diagram import linking_matrix
from milnorck.milnor import milnor_table

hopf = catalog("hopf")
print("Hopf linking matrix:")
print(linking_matrix(hopf))

borr = bing_double(hopf, 1)
print(f"\nBing double: {borr.n_components} components, {borr.n_crossings} crossings")
print(linking_matrix(borr))

# length 3 is the first place anything survives
for I, v in milnor_table(borr, 3).items():
    if v.value:
        print(f"mu({''.join(map(str, I))}) = {v.value}   delta {v.delta}")

# the braid closure from the catalog agrees
ref = milnor_table(catalog("borromean"), 3)
print("\ncatalog Borromean mu(123):", ref[(1, 2, 3)].value)
