import logging

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg

from histopolation.errors import NotPositiveDefiniteError, ValidationError
from histopolation.helpers.logs import log_jitter
from histopolation.solver.matrix import HistoMatrix

log = logging.getLogger(__name__)

JITTER_FACTOR = 1e-12
RESIDUAL_TOLERANCE = 1e-10


def _duplicate_rows(entries: np.ndarray) -> bool:
    scale = max(1.0, float(np.max(np.abs(entries))))
    rounded = np.round(entries / scale, 13)
    return len(np.unique(rounded, axis=0)) < len(rounded)


def _try_cholesky(entries: np.ndarray):
    try:
        factor = linalg.cho_factor(entries, lower=False, check_finite=True)
    except linalg.LinAlgError:
        return None
    pivots = np.diag(factor[0])
    floor = len(entries) * np.finfo(np.float64).eps * float(np.max(np.diag(entries)))
    if not np.all(pivots**2 > floor):
        return None
    return factor


def factorize(matrix: HistoMatrix, jitter_factor: float = JITTER_FACTOR) -> HistoMatrix:
    """Cholesky factor of ``matrix``, retried once with ``jitter_factor * trace / n`` on the diagonal.

    Identical rows stem from identical functionals; jitter never rescues them.
    """
    if matrix.is_factorized:
        return matrix
    if _duplicate_rows(matrix.entries):
        raise NotPositiveDefiniteError("Histopolation matrix has identical rows (dependent averaging functionals)")
    factor = _try_cholesky(matrix.entries)
    if factor is None:
        jitter = jitter_factor * float(np.trace(matrix.entries)) / matrix.size
        log.warning("Cholesky factorization failed, retrying with jitter %.3e", jitter)
        matrix.jitter = jitter
        factor = _try_cholesky(matrix.jittered())
        if factor is None:
            raise NotPositiveDefiniteError("Histopolation matrix is not positive definite", jitter)
    matrix.factor = factor
    log.debug(log_jitter("Factorized:", matrix.jitter, matrix.condition_estimate()))
    return matrix


def _as_data(data: ArrayLike, size: int) -> np.ndarray:
    data = np.asarray(data, dtype=np.float64)
    if data.shape[0] != size:
        raise ValidationError(f"Data of length {data.shape[0]} for a {size}x{size} matrix")
    if not np.all(np.isfinite(data)):
        raise ValidationError("Data must be finite")
    return data


def solve(matrix: HistoMatrix, data: ArrayLike, jitter_factor: float = JITTER_FACTOR) -> np.ndarray:
    """Coefficients ``c`` with ``K c = data``."""
    data = _as_data(data, matrix.size)
    factorize(matrix, jitter_factor)
    coefficients = linalg.cho_solve(matrix.factor, data)
    residual = float(np.max(np.abs(matrix.entries @ coefficients - data)))
    bound = RESIDUAL_TOLERANCE * (1.0 + float(np.max(np.abs(data))))
    if residual > bound:
        log.warning("Histopolation residual %.3e exceeds %.3e (condition estimate %.3e)", residual, bound, matrix.condition_estimate())
    return coefficients


def lagrange_values(matrix: HistoMatrix, kvec: ArrayLike) -> np.ndarray:
    """``K^{-1} k(tau)``: the means of the Lagrange basis functions over ``tau``."""
    kvec = _as_data(kvec, matrix.size)
    factorize(matrix)
    return linalg.cho_solve(matrix.factor, kvec)


def kronecker_solve(row_matrix: HistoMatrix, col_matrix: HistoMatrix, data: ArrayLike, jitter_factor: float = JITTER_FACTOR) -> np.ndarray:
    """Solves ``(K_row kron K_col) vec(C) = vec(data)`` with row-major ``vec``.

    Equivalent to ``K_row C K_col = data``, hence ``C = K_row^{-1} data K_col^{-1}``.
    """
    data = np.atleast_2d(np.asarray(data, dtype=np.float64))
    if data.shape != (row_matrix.size, col_matrix.size):
        raise ValidationError(f"Grid data of shape {data.shape} for factors {row_matrix.size} and {col_matrix.size}")
    factorize(row_matrix, jitter_factor)
    factorize(col_matrix, jitter_factor)
    left = linalg.cho_solve(row_matrix.factor, data)
    return linalg.cho_solve(col_matrix.factor, left.T).T
