# %% [markdown]
# # Spectra of magic graphs
#
# Exact characteristic polynomials, a Jacobi eigensolver, main angles and the
# pseudoinverse test.

# %%
import numpy as np

from magicdist import graph as gr
from magicdist.spectral import (
    char_poly,
    eig_sym,
    is_integral,
    is_singular,
    knm_cone,
    knm_cone_charpoly,
    main_angles,
    moore_penrose,
    pinv_filter,
)

g = gr.complete_minus_matching(6)
print(char_poly(g))
print(eig_sym(g.adjacency()).distinct)
print(main_angles(g))  # all of the all-ones vector lies in the top eigenspace

# %% [markdown]
# Cones over K_m - M: closed form against the exact polynomial, and integrality.

# %%
for m in (4, 6, 8, 10):
    cone = knm_cone(m)
    print(m, knm_cone_charpoly(m) == char_poly(cone), is_integral(cone), is_singular(cone))

# %% [markdown]
# Every magic graph has A A+ doubly stochastic, but the star K_{1,3} shows it is not enough.

# %%
A = gr.star(3).adjacency().astype(float)
print(np.round(A @ moore_penrose(A), 4))
print(bool(pinv_filter(gr.star(3))), bool(pinv_filter(gr.path(5))))

# %% [markdown]
# A magic graph need not be singular.

# %%
print(is_singular(gr.fig_ndm()), char_poly(gr.fig_ndm()).coeffs[0])
