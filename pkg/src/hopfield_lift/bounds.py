"""Lifted and baseline bounds on the normalised Hopfield ground-state energies.

For ``c > 0`` (the lifting scale) and aspect ratio ``alpha = m/n`` both forms
share the objective

    phi(c) = log(erfc(-c/sqrt 2))/c + g - alpha/(2c) * log(1 - c/(2g))

where ``g`` is the closed-form inner optimiser: the ``+`` root of
``4 g^2 - 2 c g - alpha = 0`` for the positive form, the ``-`` root for the
negative one. ``min_c phi`` upper-bounds ``E max ||Hx|| / sqrt(n)``;
``-min_c phi`` (negative root) lower-bounds ``E min ||Hx|| / sqrt(n)``.
As ``c -> 0`` both tend to the plain Gaussian-comparison bounds
``sqrt(2/pi) +/- sqrt(alpha)``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EvaluationError
from .model import Form
from .special import log_erfc_neg

__all__ = [
    "BoundResult",
    "C3_LO",
    "C3_HI",
    "SCAN_POINTS",
    "GOLDEN_TOL",
    "gamma_hat",
    "positive_objective",
    "negative_objective",
    "objective",
    "minimize_scalar",
    "lifted_upper_bound",
    "lifted_lower_bound",
    "lifted_bound",
    "baseline_bounds",
]

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_SQRT2 = math.sqrt(2.0)
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# search domain for the lifting scale
C3_LO = 1e-4
C3_HI = 50.0
SCAN_POINTS = 2048
GOLDEN_TOL = 1e-10


@dataclass(frozen=True)
class BoundResult:
    form: Form
    alpha: float
    c3_star: float
    gamma_hat: float
    value: float
    baseline: float
    evaluations: int

    @property
    def improvement(self):
        return abs(self.value - self.baseline)


def _check_positive(name, x):
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"{name} must be positive and finite, got {x!r}")
    return x


def gamma_hat(c3, alpha, form):
    """Closed-form inner optimiser for lifting scale ``c3``."""
    c3 = _check_positive("c3", c3)
    alpha = _check_positive("alpha", alpha)
    root = math.sqrt(4.0 * c3 * c3 + 16.0 * alpha)
    if Form.parse(form) is Form.POSITIVE:
        return (2.0 * c3 + root) / 8.0
    return (2.0 * c3 - root) / 8.0


def objective(c3, alpha, form):
    c3 = _check_positive("c3", c3)
    alpha = _check_positive("alpha", alpha)
    form = Form.parse(form)
    g = gamma_hat(c3, alpha, form)
    ratio = c3 / (2.0 * g)
    if form is Form.POSITIVE:
        # g > c3/2 by construction; anything else is a formula bug
        assert 0.0 < ratio < 1.0, f"log argument out of range at c3={c3!r}"
    else:
        assert ratio < 0.0, f"negative-form root must be negative at c3={c3!r}"
    return log_erfc_neg(c3 / _SQRT2) / c3 + g - alpha / (2.0 * c3) * math.log1p(-ratio)


def positive_objective(c3, alpha):
    return objective(c3, alpha, Form.POSITIVE)


def negative_objective(c3, alpha):
    return objective(c3, alpha, Form.NEGATIVE)


def _golden(f, a, b, fa_hint, tol):
    # Golden-section on [a, b]; returns (x, fx, evaluations).
    evals = 0
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc = f(c)
    fd = f(d)
    evals += 2
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        evals += 1
        if math.isnan(fc) or math.isnan(fd):
            raise EvaluationError("objective returned NaN during refinement", c if math.isnan(fc) else d)
    x = 0.5 * (a + b)
    fx = f(x)
    evals += 1
    # keep the best point seen at the final bracket
    best = min((fx, x), (fc, c), (fd, d))
    return best[1], best[0], evals


def minimize_scalar(f, lo, hi, tol=GOLDEN_TOL, points=SCAN_POINTS):
    """Minimise ``f`` on ``[lo, hi]``: log-spaced scan then golden section.

    The scan picks the best grid point; golden section then refines inside
    the two neighbouring grid cells. Returns ``(x_star, f_star, evaluations)``.
    Raises :class:`EvaluationError` if ``f`` is NaN at any scan abscissa.
    """
    lo = float(lo)
    hi = float(hi)
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    if not tol > 0:
        raise DomainError("tol must be positive")
    if lo > 0:
        grid = np.geomspace(lo, hi, points)
    else:
        grid = np.linspace(lo, hi, points)
    values = np.empty(points)
    for i, x in enumerate(grid):
        fx = f(float(x))
        if math.isnan(fx):
            raise EvaluationError(f"objective is NaN at x={float(x)!r}", float(x))
        values[i] = fx
    evals = points
    i = int(np.argmin(values))
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, points - 1)])
    x_star, f_star, extra = _golden(f, a, b, values[i], tol)
    evals += extra
    if values[i] < f_star:
        x_star, f_star = float(grid[i]), float(values[i])
    return x_star, f_star, evals


def baseline_bounds(alpha):
    """Plain (linear comparison) bounds ``(sqrt(2/pi)+sqrt(a), sqrt(a)-sqrt(2/pi))``."""
    alpha = _check_positive("alpha", alpha)
    root = math.sqrt(alpha)
    return SQRT_2_OVER_PI + root, root - SQRT_2_OVER_PI


def lifted_upper_bound(alpha):
    """Lifted upper bound on ``E max_x ||Hx|| / sqrt(n)``."""
    alpha = _check_positive("alpha", alpha)
    c3, fmin, evals = minimize_scalar(lambda c: positive_objective(c, alpha), C3_LO, C3_HI)
    return BoundResult(
        form=Form.POSITIVE,
        alpha=alpha,
        c3_star=c3,
        gamma_hat=gamma_hat(c3, alpha, Form.POSITIVE),
        value=fmin,
        baseline=baseline_bounds(alpha)[0],
        evaluations=evals,
    )


def lifted_lower_bound(alpha):
    """Lifted lower bound on ``E min_x ||Hx|| / sqrt(n)``."""
    alpha = _check_positive("alpha", alpha)
    c3, fmin, evals = minimize_scalar(lambda c: negative_objective(c, alpha), C3_LO, C3_HI)
    return BoundResult(
        form=Form.NEGATIVE,
        alpha=alpha,
        c3_star=c3,
        gamma_hat=gamma_hat(c3, alpha, Form.NEGATIVE),
        value=-fmin,
        baseline=baseline_bounds(alpha)[1],
        evaluations=evals,
    )


def lifted_bound(alpha, form):
    if Form.parse(form) is Form.POSITIVE:
        return lifted_upper_bound(alpha)
    return lifted_lower_bound(alpha)
