# %% [markdown]
# # L^p norms of the Dirichlet kernel
#
# ||D_N||_p^p / N^(p-1) converges to a constant delta_p. For even p the ratio
# is exact; for p = 4 the gap to 2/3 is exactly 1/(3 N^2).

# %%
from flatpoly import constants
from flatpoly.harness import dirichlet_asymptotics

for p in (1.5, 2, 3, 4, 6):
    print(f"delta_{p} = {constants.delta_p(p):.12f}   remainder: {constants.remainder_regime(p)}")

# %%
Ns = [2**k for k in range(8, 14)]
table = dirichlet_asymptotics(4, Ns)
print(table.to_csv())
fit = table.fits["deviation"]
print(f"log-log slope of the deviation: {fit.slope:.4f} (predicted {fit.predicted})")

# %%
# p = 3 sits on the boundary between regimes: the deviation decays like ln N / N^2
t3 = dirichlet_asymptotics(3, [2**k for k in range(8, 12)])
print(t3.to_csv())
