# %% [markdown]
# # Sampling at roots of unity
#
# For a polynomial of degree n - 1, the mean of |P|^alpha over the n-th roots
# of unity is comparable to the full L^alpha norm, with explicit constants.

# %%
import math

import numpy as np

from flatpoly import a_constants, mz_check, pichorides, random_littlewood, from_signs

A = a_constants()
print(f"A = {A.A:.12f} (pi + 1), A' = {A.A_prime:.12f}, attained: {A.attained}")
for alpha in (1.25, 2, 4, 8):
    print(f"pichorides({alpha}) = {pichorides(alpha):.12f}")

# %%
gen = np.random.default_rng(1)
slack = []
for i in range(2000):
    n = int(gen.integers(2, 129))
    alpha = float(gen.uniform(1.25, 8))
    rep = mz_check(from_signs(random_littlewood(n, i)), alpha, 1 / math.sqrt(n))
    assert rep.satisfied
    slack.append(rep.sampling.slack)
print("all 2000 trials satisfied; smallest sampling slack:", min(slack))
