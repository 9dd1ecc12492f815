# %% [markdown]
# Every valuation factors through M(D).  Here a Z/6 valued valuation on a
# small lattice is pushed through the universal one.

# %%
from finstone.lattice import birkhoff_opens
from finstone.motives import ValuationData, factor_valuation, is_valuation, motive_module
from finstone.order import antichain, chain
from finstone.snf import AbGroup

D = birkhoff_opens(chain(3))
A = AbGroup(0, (6,))
print(list(D.labels), "->", A)

v = ValuationData.from_map(D, A, {"{x0}": [5], "{x0,x1}": [2], "{x0,x1,x2}": [3]})
print("is a valuation:", is_valuation(D, v))

# %%
M = motive_module(D)
h = factor_valuation(M, v)
print("hom on the point basis:", h.matrix)
for u in range(len(D)):
    print(D.labels[u], h.apply(M.mu_univ[u]))

# %%
# breaking modularity on a lattice with incomparable elements
D2 = birkhoff_opens(antichain(2))
bad = ValuationData.from_map(D2, AbGroup(1), {"{x0}": [1], "{x1}": [1], "{x0,x1}": [1]})
print("counting everything once:", is_valuation(D2, bad))
