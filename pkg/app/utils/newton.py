"""
Damped Newton iteration shared by the two-wave Riemann solvers.

The step is halved until the residual norm decreases and the
`admissible` predicate (positivity of volumes, pressures) holds.
"""

import logging
from typing import Callable, Optional

import numpy as np

from app.core.config import get_settings
from app.core.exceptions import NoAdmissibleMiddleStateError

logger = logging.getLogger(__name__)

MAX_HALVINGS = 40


def _fd_jacobian(fun, x, fx):
    n = x.size
    jac = np.empty((fx.size, n))
    for j in range(n):
        step = 1e-7 * max(1.0, abs(x[j]))
        xp = x.copy()
        xp[j] += step
        jac[:, j] = (fun(xp) - fx) / step
    return jac


def damped_newton(
    fun: Callable[[np.ndarray], np.ndarray],
    x0,
    admissible: Optional[Callable[[np.ndarray], bool]] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    label: str = "newton",
    jac: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> np.ndarray:
    settings = get_settings()
    tol = settings.newton_tol if tol is None else tol
    max_iter = settings.newton_max_iter if max_iter is None else max_iter
    admissible = admissible or (lambda x: True)

    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    fx = np.atleast_1d(fun(x))
    norm = float(np.max(np.abs(fx)))

    for it in range(max_iter):
        if norm <= tol:
            logger.debug("%s converged in %d iterations (|F|=%.3e)", label, it, norm)
            return x
        jmat = np.atleast_2d(jac(x)) if jac is not None else _fd_jacobian(fun, x, fx)
        try:
            dx = np.linalg.solve(jmat, -fx)
        except np.linalg.LinAlgError as e:
            raise NoAdmissibleMiddleStateError(f"{label}: singular Jacobian ({e})") from e

        lam = 1.0
        for _ in range(MAX_HALVINGS):
            trial = x + lam * dx
            if admissible(trial):
                f_trial = np.atleast_1d(fun(trial))
                n_trial = float(np.max(np.abs(f_trial)))
                if np.isfinite(n_trial) and n_trial < norm:
                    break
            lam *= 0.5
        else:
            if norm <= 1e3 * tol:
                return x
            raise NoAdmissibleMiddleStateError(f"{label}: line search stalled at |F|={norm:.3e}")
        x, fx, norm = trial, f_trial, n_trial

    if norm <= tol:
        return x
    raise NoAdmissibleMiddleStateError(f"{label}: no convergence after {max_iter} iterations (|F|={norm:.3e})")
