import math

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import comb

from histopolation.errors import ValidationError

MAX_ORDER = 12


def validate_order(n: int) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise ValidationError(f"B-spline order must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise ValidationError(f"B-spline order must be at least 1, got {n}")
    if n > MAX_ORDER:
        raise ValidationError(f"B-spline order {n} exceeds the supported maximum {MAX_ORDER}")
    return n


def bspline_central(n: int, x: ArrayLike) -> np.ndarray | float:
    """Central B-spline ``M_n`` of order ``n`` via its bounded-support sum.

    ``M_1`` is the indicator of the closed interval ``[-1/2, 1/2]``.
    """
    n = validate_order(n)
    x = np.asarray(x, dtype=np.float64)
    t = 0.5 * n - np.abs(x)
    support = t >= 0.0
    t_support = np.where(support, t, 0.0)
    total = np.zeros_like(t_support)
    for k in range(n + 1):
        active = support & (k <= t)
        term = (-1.0) ** k * comb(n, k) * np.power(np.where(active, t_support - k, 1.0), n - 1)
        total = total + np.where(active, term, 0.0)
    result = np.where(support, total / math.factorial(n - 1), 0.0)
    if result.ndim == 0:
        return float(result)
    return result
