# %% [markdown]
# # Density, tails and the witness panel
#
# Random 0/1 sequences of positive density have normalized L^alpha powers that
# grow like q^(alpha/2 - 1). A flat Littlewood sequence would need its +1
# density near 1/2 and its 2Q part spread evenly; the panel tracks both.

# %%
from flatpoly import harness

for alpha in (4, 6):
    t = harness.density_growth(0.5, alpha, [2**k for k in range(7, 14)])
    f = t.fits["normalized_power"]
    print(f"alpha={alpha}: slope {f.slope:.4f} (predicted {f.predicted})")

# %%
recs = harness.tail_bound_sweep()
print("tail cases within the bound:", sum(r.within_coarse for r in recs), "of", len(recs))

# %%
for family in ("all_plus", "rudin_shapiro", "random_sign"):
    panel = harness.flatness_witness(family, 2, 0.05, [2**k for k in range(6, 12)], seed=3)
    print(f"\n{family}")
    print(panel.to_table().to_csv())

# %%
law = harness.littlewood_l4_mean(256, seeds=500)
print(f"random signs, q=256: mean L4 power {law.mean:.5f}, expected {law.expected:.5f}, z={law.z:.2f}")
