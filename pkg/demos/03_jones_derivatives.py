"""Telling two links apart with derivatives of the Jones polynomial at 1.

The Whitehead double of the Whitehead double of the Hopf link and the
two component unlink agree on every Milnor invariant that self C_1-moves
preserve, and the low derivatives of their Jones polynomials agree too.
The report shows the first order at which they split.
"""
from milnorck import catalog
from milnorck.polynomials import derivative_report, jones

links = {"wh-wh-hopf": catalog("wh-wh-hopf"), "unlink-2": catalog("unlink-2")}
polys = {name: jones(d) for name, d in links.items()}
for name, p in polys.items():
    print(f"{name:11s} V = {p}")

report = derivative_report(polys, orders=range(0, 5), point=1)
for var, rows in report["derivatives"].items():
    print(f"\nd^n/d{var}^n at 1")
    for n in range(5):
        print(f"  n={n}: " + "   ".join(f"{name} {rows[name][n]:>8s}" for name in rows))
    print("  first order that separates them:", report["first_distinguishing_order"][var])
