import numpy as np
from numpy.typing import ArrayLike
from scipy.special import betainc, gamma, gammainc

from histopolation.errors import ValidationError


def reg_inc_beta(z: ArrayLike, p: float, q: float) -> np.ndarray | float:
    """Regularized incomplete beta function ``I_z(p, q)``."""
    if not (p > 0 and q > 0):
        raise ValidationError(f"Beta parameters must be positive, got p={p}, q={q}")
    z = np.asarray(z, dtype=np.float64)
    if np.any((z < 0.0) | (z > 1.0)) or np.any(np.isnan(z)):
        raise ValidationError("Incomplete beta argument must lie in [0, 1]")
    values = betainc(p, q, z)
    return float(values) if values.ndim == 0 else values


def lower_inc_gamma(s: float, x: ArrayLike) -> np.ndarray | float:
    """Lower (non-regularized) incomplete gamma function ``gamma(s, x)``."""
    if not s > 0:
        raise ValidationError(f"Gamma parameter must be positive, got {s}")
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0.0):
        raise ValidationError("Incomplete gamma argument must be nonnegative")
    values = gammainc(s, x) * gamma(s)
    return float(values) if values.ndim == 0 else values
