# %% [markdown]
# # Graph contractions and Picard iteration
#
# A map T on a family of subsets is certified when it keeps graph edges and
# shrinks H along every edge: H(TU, TV) <= phi(M_T(U, V)).

# %%
from pathlib import Path

from dislofix import (ComparisonFunction, SetGraph, SetMap, certify, compute_YT, fixed_point_set,
                      iterate, load_instance, wellposedness_diagnostic)
from dislofix.contraction import NS, eval_MT
from dislofix.fixed_point import float_step_budget

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# %% [markdown]
# The chain 64 -> 16 -> 4 -> 1 -> 0 on the usual distance |x - y|, with the
# chain edges plus every loop.

# %%
inst = load_instance(FIXTURES / "linear_chain.json")
fam, t, g, phi = inst.family, inst.map, inst.graph, inst.phi
cert = certify(fam, t, g, phi)
print(cert.verdict, cert.edges_checked, "edges")
print(certify(fam, t, g, phi, NS).verdict)

# %%
tr = iterate(fam, t, phi, start=4)
for n, (s, w, b) in enumerate(zip(tr.states, tr.step_weights, tr.bound_values)):
    print(n, inst.space.points[fam[s].members[0]], w, b)
print(tr.terminated)

# %% [markdown]
# Float mode compares to zero within 1e-9; the chain finishes well inside the
# ceil(log2(H0 / eps)) step budget.

# %%
fl = load_instance(FIXTURES / "linear_chain_float.json")
tr = iterate(fl.family, fl.map, fl.phi, 4)
print(tr.steps, float_step_budget(tr.step_weights[0], 1e-9))

# %% [markdown]
# ## The identity map is never a contraction with a positive distance on an edge

# %%
ident = SetMap.identity(len(fam))
bad = certify(fam, ident, SetGraph(len(fam), ((4, 3),), True), phi)
print(bad.verdict, bad.violations[0])
print(eval_MT(fam, ident, 4, 3), fam.H(4, 3))

# %% [markdown]
# ## Two fixed-point criteria
# Under the max metric, T(U) = U does not give H(T(U), U) = 0.

# %%
mx = load_instance(FIXTURES / "max_chain.json")
rep = fixed_point_set(mx.family, SetMap.identity(len(mx.family)))
print(rep.index_fixed_points, rep.fixed_points, rep.self_weights)
print(fixed_point_set(mx.family, mx.map).fixed_points)

# %% [markdown]
# ## Approximate fixed points
# Subsets that move by at most the tolerance, and how far they are from the
# fixed point.

# %%
wp = wellposedness_diagnostic(fam, t, tolerance=4)
print(wp.approximate, [str(d) for d in wp.distances], wp.flagged)
print(compute_YT(g, t))
