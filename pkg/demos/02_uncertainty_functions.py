# coding: utf-8

# # Uncertainty functions on the simplex
#
# Four builtin functions measure how spread out a probability vector is. All
# are 0 on the vertices, 1 at the uniform vector, symmetric and concave.

# %%
import numpy as np

from stateuncertainty import BUILTINS, make_sum_form, parse_function_spec
from stateuncertainty.uncertainty_functions import entropy_generator, GeneratorFunction

# %%
points = {"x": [0.5, 0.5], "y": [1.0, 0.0], "z": [2 / 3, 1 / 3]}
print("      " + "  ".join(f"{k:>7s}" for k in BUILTINS))
for label, x in points.items():
    print(f"{label:5s} " + "  ".join(f"{f(x):7.4f}" for f in BUILTINS.values()))

# %% [markdown]
# s(z) is sqrt(3)/2, not 0.5: sin(2pi/3) and sin(pi/3) are equal, and the
# normaliser sin(pi/2) is 1.

# %%
print(BUILTINS["s"]([2 / 3, 1 / 3]), np.sqrt(3) / 2)

# %% [markdown]
# Functions are vectorised over batches of shape (n, d).

# %%
rng = np.random.default_rng(1)
batch = rng.dirichlet(np.ones(5), size=4)
print(BUILTINS["e"](batch))

# %% [markdown]
# Sum-form functions f(x) = sum h(x_i) are built from a generator h. The
# generator is audited: h(0) = h(1) = 0, h > 0 inside, h(1/d) = 1/d and
# concavity.

# %%
d = 4
f = make_sum_form(entropy_generator(d), d)
x = batch[0][:d] / batch[0][:d].sum()
print(f(x), BUILTINS["e"](x))

try:
    make_sum_form(GeneratorFunction(lambda t: t * (1 - t)), d)
except ValueError as exc:
    print("rejected:", exc)

# %% [markdown]
# Positive mixtures of uncertainty functions are uncertainty functions again.

# %%
mix = parse_function_spec("mix:0.25*v+0.75*g")
print(mix.name, mix([0.7, 0.2, 0.1]))
