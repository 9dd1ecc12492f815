# %% [markdown]
# Two overlapping intervals on a line.  The lattice they generate has five
# polytopes, and its polytope module has rank three.

# %%
from fractions import Fraction

from finstone.scissors import (GridGeometry, generated_sublattice, grid_lattice, polytope_module,
                               scissors_relation)

g = GridGeometry(1, ((0, Fraction(1, 2), 1, Fraction(3, 2)),))
P, Q = g.box([0], [1]), g.box([Fraction(1, 2)], [Fraction(3, 2)])
print(P.label, P.measure(), "|", Q.label, Q.measure())

D = generated_sublattice(g, [P, Q])
print(list(D.labels))

# %%
M, rep = polytope_module(D)
print("rank", rep.rank)
for combo in rep.basis:
    print(combo)

# %%
# on the full grid the three cells are disjoint, so [P ∪ Q] = [P] + [Q]
# for any two polytopes without common cells
G = grid_lattice(g)
MG, _ = polytope_module(G)
a, b = G.idx("{c1}"), G.idx("{c2,c3}")
print("[c1 ∪ c2c3] = [c1] + [c2c3]:", scissors_relation(MG, a, b))
