# %% [markdown]
# # Norms of a Littlewood polynomial
#
# A sign string becomes a polynomial with +/-1 coefficients. Scaling by
# 1/sqrt(q) gives unit L^2 norm, and the even norms are exact integers.

# %%
import math

from flatpoly import (
    NormQuery,
    dirichlet,
    exact_even_norm,
    flatness_deviation,
    from_bits,
    from_signs,
    grid_norm,
    rudin_shapiro,
    split_littlewood,
)

s = rudin_shapiro(6)
P = from_signs(s)
q = len(s)
print("sequence:", s)

# %%
# even exponents go through Parseval on P^p; other exponents use a dense grid
for p in (1, 2, 3):
    rep = exact_even_norm(P, p, 1 / math.sqrt(q))
    print(f"||P/sqrt q||_{2 * p}^{2 * p} = {rep.value:.12f}  exact={rep.exact}")
for alpha in (1.0, 3.0, 5.5):
    rep = grid_norm(P, NormQuery(alpha, 1 / math.sqrt(q)))
    print(f"||P/sqrt q||_{alpha} = {rep.value:.12f}  grid={rep.grid_size} alias~{rep.alias_error_bound:.1e}")

# %%
# distance of |P/sqrt q| from the constant 1
dev = flatness_deviation(P, 1.0, NormQuery(4, 1 / math.sqrt(q)))
print("L^4 flatness deviation:", dev.value)

# %% [markdown]
# ## Splitting into 0/1 parts
# With eta the positions of +1, P = 2Q - D and P = D - 2Q', where D is the
# all-ones polynomial.

# %%
eta, eta_p = split_littlewood(s)
D = dirichlet(q)
print("eta   :", eta)
print("eta'  :", eta_p)
print("2Q - D == P :", 2 * from_bits(eta) - D == P)
print("D - 2Q' == P:", D - 2 * from_bits(eta_p) == P)
print("density of +1:", eta.density)
