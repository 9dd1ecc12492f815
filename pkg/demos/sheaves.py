# %% [markdown]
# Propositional sheaves.  On the finite-join coverage of a lattice every
# sheaf is a principal downset, so sheaves and lattice elements correspond.

# %%
from finstone.lattice import birkhoff_opens
from finstone.order import antichain
from finstone.sites import basis_theorem, enumerate_sheaves, fin_coverage, sheafify

D = birkhoff_opens(antichain(2))
S = fin_coverage(D)
for cov in S.describe():
    print("covering:", cov)

# %%
sheaves = enumerate_sheaves(S)
print(len(sheaves), "sheaves for", len(D), "elements")
for F in sheaves:
    print("  ", F.members)

# %%
# sheafify the downset generated by the two atoms: it must add their join
F = S.carrier.downward_closure(S.carrier.mask_of(["{x0}", "{x1}"]))
print("sheafified:", sheafify(S, F).members)

# %%
rep = basis_theorem(D)
print("all principal:", rep.all_principal, "| counts agree:", rep.ok)
