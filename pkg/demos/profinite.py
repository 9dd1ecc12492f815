# %% [markdown]
# A two-stage profinite set.  Clopens are subsets of some stage, kept in
# earliest-stage normal form, and continuous Z-valued functions have rank
# equal to the stage size.

# %%
from finstone.profinite import (colimit_boolean, continuous_functions, finite_partitions,
                                motives_vs_continuous, validate_system)

X = validate_system([["1", "2"], ["1", "2", "3", "4"]],
                    [{"1": "1", "2": "1", "3": "2", "4": "2"}])
B = colimit_boolean(X)
for members in (["3", "4"], ["3"], ["1", "2", "3", "4"]):
    e = B.element(1, members)
    print(members, "-> stage", e.stage, B.members(e))

# %%
C = continuous_functions(X)
print([str(C.group_at(i)) for i in range(2)])
print(motives_vs_continuous(X).to_json())

# %%
for n in range(6):
    rep = finite_partitions([f"s{k}" for k in range(n)])
    print(n, len(rep.partitions), rep.ok)
