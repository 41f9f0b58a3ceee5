# %% [markdown]
# # Searching for flat sign sequences
#
# Exhaustive search visits one representative per class of the order-8
# symmetry group; annealing handles longer sequences.

# %%
from flatpoly import anneal, flattest_exhaustive, merit_factor, rudin_shapiro
from flatpoly.search import results_to_csv

rows = [flattest_exhaustive(q, 4.0) for q in range(2, 17)]
print(results_to_csv(rows))

# %%
best_l4 = flattest_exhaustive(13, objective="l4")
print("q=13 best merit factor:", merit_factor(best_l4.signs), best_l4.sequence)
print("Rudin-Shapiro k=10 merit factor:", merit_factor(rudin_shapiro(10)))

# %%
for seed in range(3):
    r = anneal(64, 4.0, schedule="1:0.998:4000", seed=seed, objective="l4")
    print(seed, f"{r.value:.5f}", "merit", f"{1 / r.value:.3f}", r.sequence)
