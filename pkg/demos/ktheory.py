# %% [markdown]
# Graded groups from a coefficient profile.  Since M(D) is free, degree n is a
# direct power of the profile's group; degrees outside the window stay unknown.

# %%
from finstone.corpus import chain_lattice
from finstone.ktheory import (coherent_vs_constructible, semiorthogonal_rank_check,
                              sphere_profile, standard_profiles)
from finstone.order import antichain

D = chain_lattice(2)
R = coherent_vs_constructible(D, sphere_profile()).result
for n in range(-1, 3):
    print(n, R.describe(n))

# %%
for prof in standard_profiles():
    rep = coherent_vs_constructible(D, prof)
    print(prof.label, rep.result.describe(0), "routes agree:", rep.agree)

# %%
print(semiorthogonal_rank_check(antichain(3), sphere_profile()).result.to_json())
