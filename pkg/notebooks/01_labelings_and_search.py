# %% [markdown]
# # Distance magic labellings
#
# A labelling puts 1..n on the vertices; it is distance magic when every vertex sees the
# same sum over its neighbours.  We check a couple by hand and then let the search find
# all of them.

# %%
from magicdist import graph as gr
from magicdist.labeling import verify_distance_magic, weights
from magicdist.search import SearchConfig, count_dm_labelings, find_dm_labelings

p3, c4 = gr.path(3), gr.cycle(4)
print(verify_distance_magic(p3, (1, 3, 2)))
print(verify_distance_magic(c4, (1, 2, 4, 3)))

# %% [markdown]
# A failing labelling comes back with the first pair of vertices whose sums differ.

# %%
bad = verify_distance_magic(p3, (1, 2, 3))
print(bool(bad), bad.u, bad.v, weights(p3, (1, 2, 3)))

# %% [markdown]
# Full enumeration.  Every labelling of C4 is one of 8, and they share the constant 5.

# %%
for f, cert in find_dm_labelings(c4):
    print(f, cert.k)
print("count:", count_dm_labelings(c4))

# %% [markdown]
# Bigger graphs: complete graph minus a perfect matching, and the 11-vertex graph whose
# identity labelling is magic.  ``limit`` stops early.

# %%
print(count_dm_labelings(gr.complete_minus_matching(6)))
g = gr.fig_ndm()
f, cert = find_dm_labelings(g, SearchConfig(limit=1))[0]
print(f, cert.k)
print(verify_distance_magic(g, tuple(range(1, 12))).k)
