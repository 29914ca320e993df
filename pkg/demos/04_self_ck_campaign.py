"""A small seeded campaign on self C_k-moves.

Random tree claspers with k+1 leaves on one component are applied to
catalog links.  Every mu-bar invariant with r(I) <= k must survive.  A
fixed clasper on the unlink then shows that some r(I) = k+1 invariant
does change, so the bound is sharp.
"""
from milnorck.harness import verify_cmk, verify_theorem1

for k in (1, 2):
    rep = verify_theorem1(k, max_index_length=4 + k, trials=6, seed=11)
    print(rep.summary())
    print()

rep = verify_cmk(3, 2, trials=4, seed=3, max_index_length=5)
print(rep.summary())
