"""
Effects, observables (POVMs) and density operators.

Every object is validated when it is built, so an existing :class:`Effect`,
:class:`Observable` or :class:`State` always satisfies its invariants. The
outcome count ``d`` of an observable is independent of the Hilbert space
dimension ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt

from . import complex_linalg as cl
from .exceptions import DimensionError, ValidationError
from .simplex import DIST_TOL, ProbabilityVector, is_maximal_uncertainty, make_probability_vector
from .uncertainty_functions import check_weights

PSD_TOL = 1e-9
COMPLETENESS_TOL = 1e-9
TRACE_TOL = 1e-9
ZERO_EFFECT_TOL = 1e-10
BORN_IMAG_TOL = 1e-10
PROJECTION_TOL = 1e-9
DIAGONAL_TOL = 1e-10


def _readonly(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=np.complex128)
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class Effect:
    """A Hermitian operator ``0 <= a <= I`` that is not zero."""

    matrix: np.ndarray

    def __post_init__(self):
        m = cl.as_matrix(self.matrix)
        defect = cl.hermitian_defect(m)
        if defect > cl.HERMITIAN_TOL:
            raise ValidationError("effect must be Hermitian", defect)
        low = cl.min_eigenvalue_hermitian(m)
        if low < -PSD_TOL:
            raise ValidationError("effect must be positive semidefinite", -low)
        high = cl.min_eigenvalue_hermitian(cl.identity(m.shape[0]) - m)
        if high < -PSD_TOL:
            raise ValidationError("effect must be bounded by the identity", -high)
        if cl.max_abs(m) <= ZERO_EFFECT_TOL:
            raise ValidationError("effect must be nonzero")
        object.__setattr__(self, "matrix", _readonly(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class Observable:
    """A finite POVM: ``d >= 2`` effects on ``C^n`` summing to the identity.

    Effects may repeat.
    """

    effects: tuple[Effect, ...]

    def __post_init__(self):
        effects = tuple(e if isinstance(e, Effect) else Effect(e) for e in self.effects)
        if len(effects) < 2:
            raise ValidationError("observable needs at least 2 effects", detail=f"got {len(effects)}")
        dims = {e.dim for e in effects}
        if len(dims) != 1:
            raise DimensionError(f"effects act on different dimensions {sorted(dims)}")
        n = dims.pop()
        total = sum(e.matrix for e in effects)
        defect = cl.max_abs(total - cl.identity(n))
        if defect > COMPLETENESS_TOL:
            raise ValidationError("effects must sum to the identity", defect)
        object.__setattr__(self, "effects", effects)

    @classmethod
    def from_matrices(cls, matrices: Sequence[npt.ArrayLike]) -> "Observable":
        return cls(tuple(Effect(m) for m in matrices))

    @property
    def d(self) -> int:
        return len(self.effects)

    @property
    def hilbert_dim(self) -> int:
        return self.effects[0].dim

    def matrices(self) -> list[np.ndarray]:
        return [e.matrix for e in self.effects]


@dataclass(frozen=True, eq=False)
class State:
    """A density operator: positive semidefinite with unit trace."""

    matrix: np.ndarray

    def __post_init__(self):
        m = cl.as_matrix(self.matrix)
        defect = cl.hermitian_defect(m)
        if defect > cl.HERMITIAN_TOL:
            raise ValidationError("state must be Hermitian", defect)
        low = cl.min_eigenvalue_hermitian(m)
        if low < -PSD_TOL:
            raise ValidationError("state must be positive semidefinite", -low)
        tr = cl.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError("state must have unit trace", abs(tr - 1.0))
        object.__setattr__(self, "matrix", _readonly(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


# -- constructors ------------------------------------------------------------

def make_pure_state(ket: npt.ArrayLike) -> State:
    """Normalise ``ket`` and return the projector onto it."""
    v = cl.as_vector(ket)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValidationError("ket must be nonzero")
    v = v / norm
    return State(np.outer(v, v.conj()))


def mix_states(states: Sequence[State], weights: Sequence[float]) -> State:
    """Return ``sum_i w_i rho_i``; weights may be zero."""
    states = list(states)
    if len(states) != len(weights) or not states:
        raise ValidationError("one weight per state is required")
    w = check_weights(weights, strictly_positive=False)
    _same_dim(*(s.dim for s in states))
    return State(sum(wi * s.matrix for wi, s in zip(w, states)))


def mix_observables(obs: Sequence[Observable], weights: Sequence[float]) -> Observable:
    """Effect ``j`` of the result is ``sum_i w_i B_i[j]``."""
    obs = list(obs)
    if len(obs) != len(weights) or not obs:
        raise ValidationError("one weight per observable is required")
    w = check_weights(weights)
    _same_dim(*(b.hilbert_dim for b in obs))
    if len({b.d for b in obs}) != 1:
        raise DimensionError(f"observables have different outcome counts {[b.d for b in obs]}")
    d = obs[0].d
    return Observable.from_matrices(
        [sum(wi * b.effects[j].matrix for wi, b in zip(w, obs)) for j in range(d)]
    )


def _same_dim(*dims: int) -> int:
    if len(set(dims)) != 1:
        raise DimensionError(f"Hilbert space dimensions differ: {list(dims)}")
    return dims[0]


def maximally_mixed_state(n: int) -> State:
    return State(cl.identity(n) / n)


def basis_state(n: int, i: int) -> State:
    ket = np.zeros(n, dtype=np.complex128)
    ket[i] = 1.0
    return make_pure_state(ket)


def plus_state() -> State:
    """``|psi><psi|`` with ``psi = (|0> + |1>)/sqrt(2)``."""
    return make_pure_state([1.0, 1.0])


def standard_basis_observable(n: int) -> Observable:
    """The atomic projective observable ``{|i><i|}`` in the standard basis."""
    return Observable.from_matrices([np.diag(np.eye(n)[i]) for i in range(n)])


def plus_minus_observable(sharpness: float = 1.0) -> Observable:
    """Qubit observable ``A0 = (I + s X)/2``, ``A1 = (I - s X)/2``.

    ``s = 1`` gives the sharp ``|+><+|, |-><-|`` measurement; ``0 < s < 1``
    gives an unsharp version that is not projective.
    """
    if not 0.0 < sharpness <= 1.0:
        raise ValidationError("sharpness must lie in (0, 1]", detail=f"got {sharpness}")
    s = sharpness
    return Observable.from_matrices([0.5 * np.array([[1, s], [s, 1]]), 0.5 * np.array([[1, -s], [-s, 1]])])


# -- Born rule ---------------------------------------------------------------

def _check_pair(rho: State, a: Observable) -> None:
    if rho.dim != a.hilbert_dim:
        raise DimensionError(f"state dim {rho.dim} vs observable dim {a.hilbert_dim}")


def born_distribution(rho: State, a: Observable) -> ProbabilityVector:
    """The outcome distribution ``tr(rho A_i)``."""
    _check_pair(rho, a)
    raw = np.array([np.trace(rho.matrix @ e.matrix) for e in a.effects])
    imag = float(np.max(np.abs(raw.imag)))
    if imag > BORN_IMAG_TOL:
        raise ValidationError("Born probabilities must be real", imag)
    return make_probability_vector(raw.real)


def effect_variance(a: Effect | npt.ArrayLike, rho: State) -> float:
    """``tr(rho a^2) - tr(rho a)^2``."""
    m = a.matrix if isinstance(a, Effect) else cl.as_matrix(a)
    if m.shape[0] != rho.dim:
        raise DimensionError(f"effect dim {m.shape[0]} vs state dim {rho.dim}")
    mean = np.trace(rho.matrix @ m).real
    second = np.trace(rho.matrix @ m @ m).real
    return float(second - mean * mean)


def is_projective(a: Observable, tol: float = PROJECTION_TOL) -> bool:
    return all(cl.max_abs(e.matrix @ e.matrix - e.matrix) <= tol for e in a.effects)


def is_atomic_projective(a: Observable, tol: float = PROJECTION_TOL) -> bool:
    return is_projective(a, tol) and all(abs(cl.trace(e.matrix) - 1.0) <= tol for e in a.effects)


# -- maximal uncertainty states ----------------------------------------------

def is_maximal_uncertainty_state(rho: State, a: Observable, tol: float = DIST_TOL) -> bool:
    return is_maximal_uncertainty(born_distribution(rho, a), tol)


def make_maximal_uncertainty_state(basis_dim: int, t: npt.ArrayLike) -> State:
    """Return ``I/d + T`` for a Hermitian ``T`` with zero diagonal.

    Any such state has the uniform distribution under the standard-basis
    atomic observable.

    Raises
    ------
    ValidationError
        If ``T`` is not Hermitian, has a nonzero diagonal entry, or is large
        enough to make ``I/d + T`` indefinite.
    """
    t = cl.as_matrix(t)
    if t.shape[0] != basis_dim:
        raise DimensionError(f"T is {t.shape[0]}x{t.shape[0]}, expected {basis_dim}")
    defect = cl.hermitian_defect(t)
    if defect > cl.HERMITIAN_TOL:
        raise ValidationError("T must be Hermitian", defect)
    diag = float(np.max(np.abs(np.diag(t))))
    if diag > DIAGONAL_TOL:
        raise ValidationError("T must have zero diagonal", diag)
    rho = cl.identity(basis_dim) / basis_dim + t
    low = cl.min_eigenvalue_hermitian(rho)
    if low < -PSD_TOL:
        raise ValidationError("I/d + T must be positive semidefinite", -low, "T is too large")
    return State(rho)


def decompose_maximal_uncertainty_state(rho: State, tol: float = DIST_TOL) -> np.ndarray:
    """Return ``T = rho - I/d`` for a state with uniform standard-basis diagonal."""
    d = rho.dim
    off = float(np.max(np.abs(np.diag(rho.matrix).real - 1.0 / d)))
    if off > tol:
        raise ValidationError("state diagonal must equal 1/d", off)
    return rho.matrix - cl.identity(d) / d


def example4_family_state(alpha: float) -> State:
    """Pure state on ``[alpha, i sqrt(1 - alpha^2)]``.

    Every member has the uniform distribution under the sharp
    :func:`plus_minus_observable`.
    """
    if not -1.0 <= alpha <= 1.0:
        raise ValidationError("alpha must lie in [-1, 1]", abs(alpha) - 1.0)
    return make_pure_state([alpha, 1j * math.sqrt(1.0 - alpha * alpha)])


# -- random sampling ---------------------------------------------------------

def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / math.sqrt(2)


def random_state(n: int, rng: np.random.Generator, rank: int | None = None) -> State:
    """``G G^dagger / tr(G G^dagger)`` for a complex Gaussian ``n x rank`` matrix ``G``."""
    g = _ginibre(rng, n, rank or n)
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return State(m / np.trace(m).real)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    q, r = np.linalg.qr(_ginibre(rng, n, n))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_projective_observable(n: int, rng: np.random.Generator, ranks: Sequence[int] | None = None) -> Observable:
    """Projectors onto groups of columns of a random unitary.

    ``ranks`` (summing to ``n``) sets the rank of each effect; the default is
    the atomic case, all ranks 1.
    """
    ranks = list(ranks) if ranks is not None else [1] * n
    if sum(ranks) != n or min(ranks) < 1:
        raise ValidationError("projector ranks must be positive and sum to n", detail=str(ranks))
    u = random_unitary(n, rng)
    effects, start = [], 0
    for r in ranks:
        cols = u[:, start:start + r]
        p = cols @ cols.conj().T
        effects.append(0.5 * (p + p.conj().T))
        start += r
    return Observable.from_matrices(effects)


def random_povm(n: int, d: int, rng: np.random.Generator) -> Observable:
    """A random ``d``-outcome POVM on ``C^n``: ``S^{-1/2} G_i S^{-1/2}`` with ``S = sum G_i``."""
    gs = []
    for _ in range(d):
        g = _ginibre(rng, n, n)
        gs.append(g @ g.conj().T)
    s = sum(gs)
    w, v = np.linalg.eigh(s)
    s_inv_half = (v / np.sqrt(w)) @ v.conj().T
    effects = []
    for g in gs:
        e = s_inv_half @ g @ s_inv_half
        effects.append(0.5 * (e + e.conj().T))
    return Observable.from_matrices(effects)


def random_zero_diagonal_perturbation(d: int, rng: np.random.Generator, safety: float = 0.9) -> np.ndarray:
    """A Hermitian zero-diagonal ``T`` for which ``I/d + T`` is a state.

    Off-diagonals are complex Gaussian; if ``T`` would push an eigenvalue
    below zero it is rescaled so that ``lambda_min(T) = -safety / d``.
    """
    g = _ginibre(rng, d, d)
    t = 0.5 * (g + g.conj().T)
    np.fill_diagonal(t, 0.0)
    low = float(np.linalg.eigvalsh(t)[0])
    if low < -safety / d:
        t *= (safety / d) / abs(low)
    return t


# -- JSON --------------------------------------------------------------------

def state_from_json(data: dict) -> State:
    """Decode ``{"density": <matrix>}`` or ``{"ket": <vector>}``."""
    if not isinstance(data, dict):
        raise ValidationError("state file must hold a JSON object")
    if "density" in data:
        return State(cl.matrix_from_json(data["density"]))
    if "ket" in data:
        return make_pure_state(cl.vector_from_json(data["ket"]))
    raise ValidationError("state file needs a 'density' or 'ket' key")


def state_to_json(rho: State) -> dict:
    return {"density": cl.matrix_to_json(rho.matrix)}


def observable_from_json(data: dict) -> Observable:
    """Decode ``{"effects": [<matrix>, ...]}``."""
    if not isinstance(data, dict) or not isinstance(data.get("effects"), list):
        raise ValidationError("observable file needs an 'effects' list")
    return Observable.from_matrices([cl.matrix_from_json(m) for m in data["effects"]])


def observable_to_json(a: Observable) -> dict:
    return {"effects": [cl.matrix_to_json(m) for m in a.matrices()]}
