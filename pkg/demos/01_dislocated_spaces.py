# %% [markdown]
# # Dislocated metrics and the Hausdorff set-distance
#
# A dislocated metric drops one rule of an ordinary metric: a point may sit at
# positive distance from itself.  Everything else stays (symmetry, triangle,
# and distinct points are never at distance zero).

# %%
from fractions import Fraction

from dislofix import DislocatedSpace, SetFamily, check_axioms, eval_metric, open_ball, subset
from dislofix.hausdorff import excess, hausdorff

# %%
# max{r, s} plus one when r != s, on the ground set {0, 1, 2, 3}
sp = DislocatedSpace.from_formula("max_plus_discrete", [0, 1, 2, 3])
print(check_axioms(sp).passed)
print(eval_metric(sp, 0, 0), eval_metric(sp, 2, 2), eval_metric(sp, 1, 3))

# %% [markdown]
# Self-distances are the diagonal of the table.  Only the point 0 sits at
# distance zero from itself.

# %%
for row in sp.table:
    print([str(x) for x in row])

# %% [markdown]
# A broken table is caught, with the first offending triple.

# %%
bad = DislocatedSpace.from_table([[0, 1, 10], [1, 0, 1], [10, 1, 0]])
print(check_axioms(bad)["iii"])

# %% [markdown]
# ## Balls
# Membership compares xi(s, t) against xi(s, s), not against zero.

# %%
mx = DislocatedSpace.from_formula("max", [1, 2, 5])
print(open_ball(mx, 1, 2).members)     # point 5 is 3 away from the centre 2
print(open_ball(mx, 1, 4).members)

# %% [markdown]
# ## Excess and the Hausdorff distance
# D(A, B) is not symmetric, H takes the larger side.

# %%
mx = DislocatedSpace.from_formula("max", [1, 2, 3])
A, B = subset(mx, [0, 1]), subset(mx, [1, 2])
print(excess(mx, A, B), excess(mx, B, A), hausdorff(mx, A, B))
print(hausdorff(mx, A, A))    # positive: a set is not at zero distance from itself

# %% [markdown]
# ## When H(U, U) exceeds H(U, V)
#
# On the max metric every self-distance is at most every cross distance, and
# H(U, U) <= H(U, V) holds.  A general dislocated table has no such order:
# here the point a is farther from itself than from b.

# %%
sp = DislocatedSpace.from_table([[2, 1], [1, 0]], labels=["a", "b"])
fam = SetFamily(sp, [[0], [1]])
print(check_axioms(sp).passed, fam.H(0, 0), fam.H(0, 1))

# %% [markdown]
# Random tables show the same thing at scale: count pairs with H(U,U) > H(U,V).

# %%
from dislofix.generate import GenConfig, random_family, random_space, trial_rng

cfg = GenConfig(rng_seed=1)
above = total = 0
for trial in range(200):
    rng = trial_rng(cfg, trial)
    fam = random_family(random_space(cfg, trial, rng), cfg, rng)
    h = fam.hausdorff_table
    for i in range(len(fam)):
        for j in range(len(fam)):
            total += 1
            above += h[i][i] > h[i][j]
print(f"{above} of {total} pairs", Fraction(above, total))
