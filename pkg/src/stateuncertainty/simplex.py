"""Probability vectors on the simplex of ``d`` outcomes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt

from .exceptions import DimensionError, ValidationError

SIMPLEX_TOL = 1e-9
DIST_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """A point of the probability simplex.

    Build instances with :func:`make_probability_vector`; the constructor
    itself trusts its input.
    """

    probs: np.ndarray

    @property
    def d(self) -> int:
        return self.probs.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.probs if dtype is None else self.probs.astype(dtype)

    def __len__(self) -> int:
        return self.d

    def __getitem__(self, i):
        return self.probs[i]

    def tolist(self) -> list[float]:
        return self.probs.tolist()

    def __repr__(self) -> str:
        return f"ProbabilityVector({np.array2string(self.probs, precision=6)})"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def make_probability_vector(values: npt.ArrayLike) -> ProbabilityVector:
    """Validate ``values`` and return them as a :class:`ProbabilityVector`.

    Components in ``[-SIMPLEX_TOL, 1 + SIMPLEX_TOL]`` are clamped into
    ``[0, 1]``; the result is then rescaled so that its components add up to 1.

    Raises
    ------
    ValidationError
        If there are fewer than two components, a component lies outside the
        tolerance band, or the sum is further than ``SIMPLEX_TOL`` from 1.
    """
    x = np.array(values, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] < 2:
        raise ValidationError("probability vector needs at least 2 components", detail=f"shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValidationError("probability components must be finite")
    low = float(-x.min())
    high = float(x.max() - 1.0)
    if low > SIMPLEX_TOL or high > SIMPLEX_TOL:
        raise ValidationError("probability components must lie in [0, 1]", max(low, high))
    total = float(x.sum())
    if abs(total - 1.0) > SIMPLEX_TOL:
        raise ValidationError("probability components must sum to 1", abs(total - 1.0))
    x = np.clip(x, 0.0, 1.0)
    x /= x.sum()
    # push the rounding residue onto the largest entry
    k = int(np.argmax(x))
    x[k] += 1.0 - x.sum()
    np.clip(x, 0.0, 1.0, out=x)
    return ProbabilityVector(_freeze(x))


def uniform(d: int) -> ProbabilityVector:
    """The maximal uncertainty distribution ``(1/d, ..., 1/d)``."""
    if d < 2:
        raise ValidationError("d must be at least 2", detail=f"d={d}")
    return ProbabilityVector(_freeze(np.full(d, 1.0 / d)))


def vertex(d: int, i: int) -> ProbabilityVector:
    """The maximal certainty distribution concentrated on outcome ``i``."""
    if d < 2 or not 0 <= i < d:
        raise ValidationError("vertex index out of range", detail=f"d={d}, i={i}")
    x = np.zeros(d)
    x[i] = 1.0
    return ProbabilityVector(_freeze(x))


def convex_combine(x: ProbabilityVector, y: ProbabilityVector, lam: float) -> ProbabilityVector:
    """Return ``lam * x + (1 - lam) * y``."""
    if x.d != y.d:
        raise DimensionError(f"simplex dims {x.d} and {y.d}")
    if not 0.0 <= lam <= 1.0:
        raise ValidationError("mixing weight must lie in [0, 1]", detail=f"lambda={lam}")
    return make_probability_vector(lam * x.probs + (1.0 - lam) * y.probs)


def _check_permutation(h: Sequence[int], d: int) -> np.ndarray:
    perm = np.asarray(h)
    if perm.shape != (d,) or not np.issubdtype(perm.dtype, np.integer):
        raise ValidationError("permutation must be an integer array of length d", detail=f"d={d}")
    if not np.array_equal(np.sort(perm), np.arange(d)):
        raise ValidationError("permutation must be a bijection on {0..d-1}", detail=str(perm.tolist()))
    return perm


def permute(x: ProbabilityVector, h: Sequence[int]) -> ProbabilityVector:
    """Component ``i`` of the result is ``x[h[i]]``."""
    perm = _check_permutation(h, x.d)
    return ProbabilityVector(_freeze(x.probs[perm].copy()))


def is_maximal_certainty(x: ProbabilityVector, tol: float = DIST_TOL) -> bool:
    return bool(x.probs.max() >= 1.0 - tol)


def is_maximal_uncertainty(x: ProbabilityVector, tol: float = DIST_TOL) -> bool:
    return bool(np.all(np.abs(x.probs - 1.0 / x.d) <= tol))


def sample_batch(d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` points uniformly from the simplex as an ``(n, d)`` array.

    Uses normalised exponential spacings, i.e. a flat Dirichlet.
    """
    if d < 2:
        raise ValidationError("d must be at least 2", detail=f"d={d}")
    e = rng.standard_exponential(size=(n, d))
    return e / e.sum(axis=1, keepdims=True)


def sample_random(d: int, rng_seed: int) -> ProbabilityVector:
    """A single uniform draw from the simplex, deterministic in ``rng_seed``."""
    rng = np.random.default_rng(rng_seed)
    return make_probability_vector(sample_batch(d, 1, rng)[0])
