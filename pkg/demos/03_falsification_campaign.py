# %% [markdown]
# # Looking for counterexamples
#
# Each trial draws a random dislocated table, a family of subsets, a map biased
# towards near-constant shapes, a graph and phi.  Certified draws are then
# checked against the fixed-point conclusions: zero weight between joined fixed
# points, Y_T nonempty, Picard orbits ending at a fixed point, uniqueness, and
# the phi^n step bound.

# %%
import json

from dislofix import GenConfig, run_campaign
from dislofix.generate import random_instance
from dislofix.instance import dumps, instance_to_dict

# %%
rep = run_campaign(GenConfig(rng_seed=1, trials=2000))
print(rep.trials_run, rep.certified_count, f"{rep.certified_fraction:.1%}")
print(rep.certified_by_functional)
print(json.dumps(rep.tallies, indent=1))
print(len(rep.counterexamples), rep.unjoined_fixed_point_instances)

# %% [markdown]
# Loops-only graphs with several fixed points pass everything except a literal
# "at most one fixed point" reading; those instances are counted separately.

# %% [markdown]
# Uniform random maps certify much less often.

# %%
print(run_campaign(GenConfig(rng_seed=1, trials=2000, map_mode="random")).certified_fraction)

# %% [markdown]
# A single certified draw, as an instance file.

# %%
gen = next(g for g in (random_instance(GenConfig(rng_seed=1), i) for i in range(100))
           if g.certified)
print(dumps(instance_to_dict(gen.instance))[:600])
