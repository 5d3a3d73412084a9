# coding: utf-8

# # Maximal-uncertainty states
#
# For the computational-basis observable on C^d a state has uniform Born
# distribution exactly when it is I/d + T with T Hermitian and zero on the
# diagonal.

# %%
import numpy as np

from stateuncertainty import (
    born_distribution,
    decompose_maximal_uncertainty_state,
    example4_family_state,
    is_maximal_uncertainty_state,
    make_maximal_uncertainty_state,
    plus_minus_observable,
    random_zero_diagonal_perturbation,
    standard_basis_observable,
)

# %%
rng = np.random.default_rng(4)
d = 3
t = random_zero_diagonal_perturbation(d, rng)
rho = make_maximal_uncertainty_state(d, t)
print(np.round(rho.matrix, 3))
print(born_distribution(rho, standard_basis_observable(d)).probs)
print(np.max(np.abs(decompose_maximal_uncertainty_state(rho) - t)))

# %% [markdown]
# T must keep I/d + T positive. Too large a perturbation is rejected with the
# size of the negative eigenvalue.

# %%
try:
    make_maximal_uncertainty_state(d, 10 * t)
except ValueError as exc:
    print(exc)

# %% [markdown]
# A one-parameter family of pure qubit states, alpha|0> + i sqrt(1 - alpha^2)|1>,
# is maximally uncertain under the sharp observable for every alpha.

# %%
sharp = plus_minus_observable(1.0)
for alpha in (-1.0, -0.5, 0.0, 1 / 3, 0.5, 1.0):
    s = example4_family_state(alpha)
    print(f"{alpha:+.3f}", is_maximal_uncertainty_state(s, sharp), born_distribution(s, sharp).probs)
