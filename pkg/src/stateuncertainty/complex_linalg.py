"""
Dense complex matrix kernel.

Matrices are square ``complex128`` numpy arrays and vectors are 1-D
``complex128`` arrays. The helpers here validate shapes, provide the handful
of operations the rest of the package needs, and convert to and from the
JSON encoding ``[[[re, im], ...], ...]`` used by the command line.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from .exceptions import DimensionError, ValidationError

HERMITIAN_TOL = 1e-10
EIG_TOL = 1e-10


def _to_array(a) -> np.ndarray:
    try:
        return np.asarray(a, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ValidationError("not a rectangular numeric array", detail=str(exc)) from None


def as_matrix(a: npt.ArrayLike) -> np.ndarray:
    """Return ``a`` as a validated square complex matrix.

    Raises
    ------
    ValidationError
        If ``a`` is not a non-empty square 2-D array or has non-finite entries.
    """
    m = _to_array(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValidationError("matrix must be square", detail=f"shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix entries must be finite")
    return m


def as_vector(v: npt.ArrayLike) -> np.ndarray:
    """Return ``v`` as a validated 1-D complex vector."""
    x = _to_array(v)
    if x.ndim != 1 or x.shape[0] == 0:
        raise ValidationError("vector must be 1-D and non-empty", detail=f"shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValidationError("vector entries must be finite")
    return x


def matmul(a: npt.ArrayLike, b: npt.ArrayLike) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a: npt.ArrayLike) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def trace(a: npt.ArrayLike) -> complex:
    return complex(np.trace(as_matrix(a)))


def quadratic_form(m: npt.ArrayLike, v: npt.ArrayLike) -> complex:
    """Return ``<v| m |v>`` (conjugate-linear in the first slot)."""
    m, v = as_matrix(m), as_vector(v)
    if m.shape[0] != v.shape[0]:
        raise DimensionError(f"matrix dim {m.shape[0]} vs vector dim {v.shape[0]}")
    return complex(np.vdot(v, m @ v))


def hermitian_defect(m: npt.ArrayLike) -> float:
    """Max-entry distance between ``m`` and its adjoint."""
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m: npt.ArrayLike, tol: float = HERMITIAN_TOL) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return hermitian_defect(m) <= tol


def min_eigenvalue_hermitian(m: npt.ArrayLike, tol: float = HERMITIAN_TOL) -> float:
    """Smallest eigenvalue of a Hermitian matrix.

    The matrix is symmetrised before the LAPACK symmetric eigensolver runs,
    so entries off by less than ``tol`` from Hermitian do not bias the result.

    Raises
    ------
    ValidationError
        If ``m`` is not Hermitian within ``tol``.
    """
    m = as_matrix(m)
    defect = hermitian_defect(m)
    if defect > tol:
        raise ValidationError("matrix must be Hermitian", defect)
    h = 0.5 * (m + m.conj().T)
    return float(np.linalg.eigvalsh(h)[0])


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def max_abs(m: npt.ArrayLike) -> float:
    return float(np.max(np.abs(np.asarray(m))))


# -- JSON encoding -----------------------------------------------------------

def _decode_scalar(entry) -> complex:
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        try:
            return complex(float(entry[0]), float(entry[1]))
        except (TypeError, ValueError):
            pass
    raise ValidationError("complex entry must be a number or a [re, im] pair", detail=repr(entry))


def matrix_from_json(data) -> np.ndarray:
    """Decode ``[[[re, im], ...], ...]`` (row-major) into a matrix.

    Plain real numbers are accepted in place of ``[re, 0]`` pairs.
    """
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise ValidationError("matrix must be a list of rows")
    return as_matrix([[_decode_scalar(e) for e in row] for row in data])


def vector_from_json(data) -> np.ndarray:
    if not isinstance(data, list):
        raise ValidationError("vector must be a list of entries")
    return as_vector([_decode_scalar(e) for e in data])


def matrix_to_json(m: npt.ArrayLike) -> list:
    m = as_matrix(m)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def vector_to_json(v: npt.ArrayLike) -> list:
    return [[float(z.real), float(z.imag)] for z in as_vector(v)]
