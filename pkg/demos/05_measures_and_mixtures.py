# coding: utf-8

# # Measures, mixtures and discrimination
#
# U_(f,A)(rho) = f(P) with P the Born distribution. It is concave in the
# state, and mixing observables can only raise it.

# %%
import numpy as np

from stateuncertainty import (
    BUILTINS,
    UncertaintyMeasure,
    discriminate,
    maximally_mixed_state,
    measure_concavity_check,
    observable_mixture_gap,
    plus_minus_observable,
    plus_state,
    random_povm,
    random_projective_observable,
    random_state,
    standard_basis_observable,
    variance_measure_decomposition,
)

# %%
sharp = plus_minus_observable(1.0)
for name, f in BUILTINS.items():
    print(name, measure_concavity_check(UncertaintyMeasure(f, sharp), trials=500, seed=5))

# %% [markdown]
# For a projective observable the variance measure is a scaled sum of
# effect variances.

# %%
rng = np.random.default_rng(5)
a = random_projective_observable(3, rng)
print(variance_measure_decomposition(a, random_state(3, rng)))

# %% [markdown]
# f applied to a mixed observable exceeds the mixture of the separate values.
# The gap is usually strictly positive, so the two are not equal.

# %%
rho = random_state(2, rng)
obs = [random_povm(2, 3, rng), random_povm(2, 3, rng)]
for name, f in BUILTINS.items():
    print(name, observable_mixture_gap(f, rho, obs, [0.5, 0.5]))

# %% [markdown]
# Comparing I/2 with (|0> + |1>)/sqrt(2) under three observables.

# %%
states = {"mixed": maximally_mixed_state(2), "psi": plus_state()}
for label, obs in [("computational", standard_basis_observable(2)), ("sharp", sharp),
                   ("unsharp", plus_minus_observable(1 / 3))]:
    print(label)
    print(discriminate(states, obs, list(BUILTINS.values())).to_table())
