from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
from scipy import optimize, special, stats

from stereo_vqa.domain.errors import PreconditionError
from stereo_vqa.domain.models import LogisticFit

logger = logging.getLogger(__name__)

MIN_SPEARMAN_POINTS = 3
MIN_FIT_POINTS = 5
MAX_FIT_EVALUATIONS = 2000


def _paired(x: Sequence[float], y: Sequence[float], minimum: int) -> tuple:
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise PreconditionError(f"Paired samples must be equal-length 1D lists, got {xs.shape} and {ys.shape}.")
    if xs.size < minimum:
        raise PreconditionError(f"At least {minimum} paired samples are required, got {xs.size}.")
    return xs, ys


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation; 0 when either side has no variance."""
    xs, ys = _paired(x, y, 2)
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    spread = np.sqrt((dx * dx).sum() * (dy * dy).sum())
    if spread == 0:
        return 0.0
    return float(np.clip((dx * dy).sum() / spread, -1.0, 1.0))


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Rank correlation with average ranks for ties."""
    xs, ys = _paired(x, y, MIN_SPEARMAN_POINTS)
    return pearson(stats.rankdata(xs, method="average"), stats.rankdata(ys, method="average"))


def logistic(objective: np.ndarray, a: float, b: float, c: float, d: float) -> np.ndarray:
    return a + b * special.expit(c * (np.asarray(objective, dtype=np.float64) - d))


def logistic_fit(objective: Sequence[float], mos: Sequence[float], max_evaluations: int = MAX_FIT_EVALUATIONS) -> LogisticFit:
    """Levenberg-Marquardt fit of mos ~ a + b / (1 + exp(-c (objective - d)))."""
    xs, ys = _paired(objective, mos, MIN_FIT_POINTS)
    initial = np.array([ys.min(), ys.max() - ys.min(), 1.0, float(np.median(xs))])

    def residuals(params: np.ndarray) -> np.ndarray:
        return logistic(xs, *params) - ys

    result = optimize.least_squares(
        residuals,
        initial,
        method="lm",
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
        max_nfev=max_evaluations,
    )
    if not result.success:
        logger.warning("Logistic fit did not converge after %d evaluations: %s", result.nfev, result.message)
    fitted = logistic(xs, *result.x)
    a, b, c, d = (float(value) for value in result.x)
    return LogisticFit(
        a=a,
        b=b,
        c=c,
        d=d,
        fitted=[float(value) for value in fitted],
        pearson_r=pearson(fitted, ys),
        converged=bool(result.success),
        evaluations=int(result.nfev),
    )


def rmse(x: Sequence[float], y: Sequence[float]) -> float:
    xs, ys = _paired(x, y, 1)
    return float(np.sqrt(np.mean((xs - ys) ** 2)))
