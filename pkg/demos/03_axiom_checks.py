# coding: utf-8

# # Spot-checking the axioms
#
# verify_axioms draws seeded random points, chords and permutations and
# reports the worst violation of each property, with a witness when one fails.

# %%
import json

import numpy as np

from stateuncertainty import BUILTINS, custom, verify_axioms
from stateuncertainty.uncertainty_functions import verify_jensen

# %%
for name, f in BUILTINS.items():
    report = verify_axioms(f, 5, samples=10_000, seed=3)
    print(name, report.passed, max(r.worst_violation for r in report.results.values()))

# %% [markdown]
# Purity, sum x_i^2, is convex and equals 1 on the vertices. It fails badly.

# %%
purity = custom("purity", lambda x: np.sum(x * x, axis=1))
report = verify_axioms(purity, 3, samples=2000, seed=0)
print(report.failed())
print(json.dumps(report.to_dict()["concavity"], indent=2, default=float))

# %% [markdown]
# Concavity also holds for n-point mixtures (Jensen).

# %%
print(verify_jensen(BUILTINS["g"], 4, n=5, seed=2))
