# %% [markdown]
# # Labellings modulo p
#
# Reducing a magic labelling mod p gives a labelling over {1..n}_p whose sums agree mod p.
# Two of these for coprime moduli can be glued with the Chinese remainder theorem.

# %%
from magicdist import graph as gr
from magicdist.labeling import ModularLabeling, reduce_mod_p, shift_labeling, verify_p_distance_magic
from magicdist.search import crt_combine, find_p_dm_labelings, p_dm_constants
from magicdist.structural import two_dm_structure

c4 = gr.cycle(4)
for p in (2, 3, 5):
    print(p, verify_p_distance_magic(c4, reduce_mod_p((1, 2, 4, 3), p)))

# %% [markdown]
# Shifting every label by i moves the constant by i*r for an r-regular graph.

# %%
f2 = ModularLabeling(2, (1, 2, 2, 1))
print(shift_labeling(c4, f2, 1))

# %% [markdown]
# Gluing a mod-2 and a mod-3 labelling.  These two do not come from one magic labelling,
# and the result is not a permutation of 1..6.

# %%
res = crt_combine(c4, f2, ModularLabeling(3, (2, 1, 3, 1)))
print(res.to_json())
res = crt_combine(c4, reduce_mod_p((1, 2, 4, 3), 2), reduce_mod_p((1, 2, 4, 3), 3))
print(res.to_json())

# %% [markdown]
# Structure of a 2-labelling: the vertices labelled 1 induce a subgraph with all even or
# all odd degrees, depending on the constant.

# %%
for f, cert in find_p_dm_labelings(c4, 2):
    print(f, two_dm_structure(c4, f))
print(p_dm_constants(gr.complete_minus_matching(6), 5))
