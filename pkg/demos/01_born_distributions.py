# coding: utf-8

# # Born distributions
#
# A state rho and an observable A = (A_0, ..., A_{d-1}) produce a probability
# vector with entries tr(rho A_i). That vector is what every uncertainty
# function is applied to.

# %%
import numpy as np

from stateuncertainty import (
    born_distribution,
    maximally_mixed_state,
    plus_minus_observable,
    plus_state,
    random_povm,
    random_state,
    standard_basis_observable,
)

# %% [markdown]
# Two qubit states: the maximally mixed state I/2 and the pure state
# (|0> + |1>)/sqrt(2).

# %%
rho = maximally_mixed_state(2)
psi = plus_state()
print(psi.matrix.real)

# %% [markdown]
# The sharp observable projects onto (|0> +- |1>)/sqrt(2). The unsharp one
# shrinks the off-diagonal entries to 1/3 of their sharp value.

# %%
sharp = plus_minus_observable(1.0)
unsharp = plus_minus_observable(1 / 3)

for label, obs in [("sharp", sharp), ("unsharp", unsharp), ("computational", standard_basis_observable(2))]:
    print(f"{label:14s} rho -> {born_distribution(rho, obs).probs}   psi -> {born_distribution(psi, obs).probs}")

# %% [markdown]
# The computational-basis observable gives (1/2, 1/2) for both states, so it
# cannot tell them apart. The sharp observable sees psi with certainty.
#
# Any POVM works, not just projective ones. Distributions always land on the
# simplex.

# %%
rng = np.random.default_rng(0)
a = random_povm(3, 4, rng)
for _ in range(3):
    p = born_distribution(random_state(3, rng), a)
    print(np.round(p.probs, 4), p.probs.sum())
