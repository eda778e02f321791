# %% [markdown]
# # Symmetry and small-order census
#
# Automorphisms move magic labellings around with no fixed points, so the number of
# labellings is a multiple of the group order.

# %%
from magicdist import graph as gr
from magicdist.automorphism import automorphisms, canonical_form, labeling_orbits
from magicdist.search import census_dm_graphs, find_dm_labelings

g = gr.disjoint_union(gr.path(3), gr.cycle(4))
group = automorphisms(g)
print(group.order, group.orbits())
report = labeling_orbits(g, [f for f, _ in find_dm_labelings(g)], group)
print(report.to_json())

# %% [markdown]
# Canonical forms identify isomorphic graphs.

# %%
print(canonical_form(gr.singular_even(8)) == canonical_form(gr.complete_minus_matching(8)))

# %% [markdown]
# Census of every magic graph up to order 7 (order 7 takes a few seconds).

# %%
for n in range(1, 8):
    for rec in census_dm_graphs(n):
        print(n, rec.to_json())
