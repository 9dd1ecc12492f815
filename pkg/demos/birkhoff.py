# %% [markdown]
# Points and opens.  A finite distributive lattice is determined by its poset
# of join-irreducible elements, and every finite poset comes back from the
# lattice of its downsets.

# %%
from finstone.lattice import birkhoff_opens, birkhoff_points, from_tables, prime_filters
from finstone.order import validate_poset

# a "V" shaped poset: two minimal points under a common top
P = validate_poset(["a", "b", "c"], [("a", "c"), ("b", "c")])
D = birkhoff_opens(P)
print("downsets of P:", list(D.labels))

# %%
# going back: the join-irreducibles of D, ordered by inclusion
Q = birkhoff_points(D)
print("points:", Q.elements)
print("order pairs:", Q.relation_pairs())

# %%
# the same lattice given only by its tables; the element names are opaque
E = list(D.labels)
J = [[D.labels[D.join(i, j)] for j in range(len(D))] for i in range(len(D))]
M = [[D.labels[D.meet(i, j)] for j in range(len(D))] for i in range(len(D))]
D2, renaming = from_tables(E, J, M, D.labels[0], D.labels[-1])
print("recovered", len(D2.irr), "points from the tables")

# %%
# prime filters are the principal filters of the points
for F in prime_filters(D):
    print(sorted(D.labels[u] for u in F))
