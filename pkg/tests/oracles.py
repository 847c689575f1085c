"""Independent reference computations shared by the tests."""
import math

import numpy as np


def expm_series(B: np.ndarray, dt: float, terms: int = 30) -> np.ndarray:
    """exp(-B dt) by its truncated power series."""
    A = -B * dt
    out = np.eye(B.shape[0])
    term = np.eye(B.shape[0])
    for k in range(1, terms):
        term = term @ A / k
        out = out + term
    return out


def tv(*parts) -> float:
    return math.fsum(np.abs(np.diff(np.concatenate(parts))))


def lax_wendroff_right(u_ext: np.ndarray, nu: float, phi) -> np.ndarray:
    """Textbook loop form of the limited scheme on an extended array (2 ghosts left, 1 right)."""
    out = []
    for j in range(2, len(u_ext) - 1):
        def limited(k):  # interface k + 1/2
            d = u_ext[k + 1] - u_ext[k]
            if d == 0:
                return 0.0
            with np.errstate(over="ignore"):
                return phi((u_ext[k] - u_ext[k - 1]) / d) * d

        out.append(
            u_ext[j]
            - nu * (u_ext[j] - u_ext[j - 1])
            - 0.5 * nu * (1 - nu) * (limited(j) - limited(j - 1))
        )
    return np.array(out)
