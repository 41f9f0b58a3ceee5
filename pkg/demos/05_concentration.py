# %% [markdown]
# # Mass on arcs
#
# A 0/1 polynomial can put a large share of its L^p mass on a small symmetric
# set. D_N(z^M) has M spikes at the M-th roots of unity; an arc around +-1/3
# catches two of the three when M = 3.

# %%
from flatpoly import Arc, arc_mass, c2_maximizer, concentration_search, dilated_dirichlet_witness, dirichlet
from flatpoly.constants import even_concentration_bounds

arc = Arc.around([1 / 3], 0.01)
for N in (2**8, 2**10, 2**12):
    rep = dilated_dirichlet_witness(3, N, arc, 4.0)
    print(f"N={N}: mass {rep.mass_ratio:.6f} (limit {rep.extra['limit']:.6f})")

# %%
best = concentration_search(arc, 4.0, budget=32)
print("best catalog entry:", best.polynomial_id, best.mass_ratio)
print("even-exponent bounds for p=4:", even_concentration_bounds(4))
x, value = c2_maximizer()
print(f"sup sin(x)^2/(pi x) = {value:.10f} at x = {x:.10f}")

# %%
# the all-ones kernel concentrates at z = 1
for N in (64, 256, 1024):
    print(N, arc_mass(dirichlet(N), 2, Arc.centered(0.05)).mass_ratio)
