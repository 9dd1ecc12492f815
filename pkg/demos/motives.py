# %% [markdown]
# The module of motives M(D).  Generated by the nonzero elements of D modulo
# the modularity relations, it is free with one basis vector per point.

# %%
from finstone.lattice import birkhoff_opens
from finstone.motives import (booleanization_iso, certify_free, motive_module,
                              ring_structure, split_top)
from finstone.order import validate_poset

P = validate_poset(["p", "q", "r"], [("p", "r")])
D = birkhoff_opens(P)
M = motive_module(D)
print(M)
print("relations:", len(M.presentation.relations), "| SNF diagonal:", M.snf.diag)
print("free:", certify_free(M).free)

# %%
# the point basis written in lattice elements
for combo in M.basis_combinations():
    print(" + ".join(f"{c}[{u}]" for c, u in combo))

# %%
# coordinates of every element: the indicator of the points below it
for u in range(len(D)):
    print(f"{D.labels[u]:>10}  {M.mu_univ[u]}")

# %%
print("adjoining a top:", split_top(D).rank, "->", split_top(D).rank_with_top)
print("booleanization determinant:", booleanization_iso(D).determinant)
print("ring laws hold:", ring_structure(M).ok)
