"""Two-parameter Mittag-Leffler function on the non-positive real axis.

``E_{a,b}(z) = sum_n z**n / Gamma(a*n + b)`` is evaluated by one of four
routes, picked per argument:

* closed forms: ``E_{1,1}(z) = exp(z)``, ``E_{2,1}(z) = cos(sqrt(-z))``,
  ``E_{2,2}(z) = sin(sqrt(-z))/sqrt(-z)`` and ``E_{a,b}(0) = 1/Gamma(b)``;
* the power series, while its cancellation stays below the tolerance;
* the large-argument expansion ``-sum_k z**-k / Gamma(b - a*k)`` truncated at
  its smallest term, plus the two decaying oscillatory pole terms when
  ``1 < a < 2``;
* numerical inversion of the Laplace transform ``s**(a-b) / (s**a - z)`` on
  an optimal parabolic contour, for the band of ``|z|`` where neither the
  series nor the expansion is accurate in double precision.

Only ``z <= 0`` is accepted: the filter kernel never produces anything else.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, ConvergenceError, DomainError

__all__ = [
    "MLOrder",
    "EvalAccuracy",
    "DEFAULT_ACCURACY",
    "gamma_reciprocal",
    "ml_eval",
    "ml_eval_route",
    "ml_eval_many",
    "ml_series",
    "ml_asymptotic",
    "ml_inversion",
]

_EPS = float(np.finfo(float).eps)
_LOG_EPS = math.log(_EPS)
# series is only tried while its peak term is below this; past it the
# cancellation alone exceeds any tolerance this module accepts
_SERIES_MAX_PEAK = 40.0


@dataclass(frozen=True)
class MLOrder:
    """Orders ``(alpha, beta)`` of ``E_{alpha,beta}``."""

    alpha: float
    beta: float

    def __post_init__(self):
        a, b = self.alpha, self.beta
        if not (math.isfinite(a) and 0.0 < a <= 2.0):
            raise DomainError(f"alpha must lie in (0, 2], got {a!r}")
        if not (math.isfinite(b) and b > 0.0):
            raise DomainError(f"beta must be positive, got {b!r}")


@dataclass(frozen=True)
class EvalAccuracy:
    """Absolute error target and the series/expansion term cap."""

    tol: float = 1e-9
    max_terms: int = 1000

    def __post_init__(self):
        if not (0.0 < self.tol <= 1e-6):
            raise DomainError(f"tol must lie in (0, 1e-6], got {self.tol!r}")
        if self.max_terms < 50:
            raise DomainError(f"max_terms must be >= 50, got {self.max_terms!r}")


DEFAULT_ACCURACY = EvalAccuracy()


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def _log_rgamma(x: float) -> tuple[float, float]:
    """Return ``(log|1/Gamma(x)|, sign(1/Gamma(x)))`` for x not a pole."""
    if x > 0.0:
        return -math.lgamma(x), 1.0
    # Gamma alternates sign between consecutive negative integers
    sign = -1.0 if math.ceil(-x) % 2 else 1.0
    return -math.lgamma(x), sign


def gamma_reciprocal(x: float) -> float:
    """``1/Gamma(x)``, exactly zero at the poles ``x = 0, -1, -2, ...``.

    Negative arguments go through the reflection formula with the sine
    argument reduced to ``[-1/2, 1/2]`` so nothing overflows while the
    result itself is representable.
    """
    x = float(x)
    if math.isnan(x):
        return math.nan
    if _is_nonpositive_integer(x):
        return 0.0
    if x > 0.0:
        if x < 171.0:
            return 1.0 / math.gamma(x)
        return math.exp(-math.lgamma(x))
    # 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
    m = round(x)
    s = math.sin(math.pi * (x - m))
    if m % 2:
        s = -s
    w = 1.0 - x
    if w < 171.0:
        return s * math.gamma(w) / math.pi
    try:
        return math.copysign(math.exp(math.lgamma(w) + math.log(abs(s) / math.pi)), s)
    except OverflowError:
        return math.copysign(math.inf, s)


def _check(order: MLOrder, z: float, acc: EvalAccuracy | None) -> EvalAccuracy:
    if not isinstance(order, MLOrder):
        order = MLOrder(*order)
    if not (math.isfinite(z) and z <= 0.0):
        raise DomainError(f"z must be finite and <= 0, got {z!r}")
    return DEFAULT_ACCURACY if acc is None else acc


# -- power series -----------------------------------------------------------


def _series(alpha: float, beta: float, z: float, tol: float, max_terms: int):
    """Sum the power series; return ``(value, rounding_error_estimate)``."""
    if z == 0.0:
        return gamma_reciprocal(beta), 0.0
    logx = math.log(abs(z))
    terms = []
    err = 0.0
    running = 0.0
    prev_mag = None
    for n in range(max_terms + 1):
        arg = alpha * n + beta
        lg = math.lgamma(arg)
        lmag = n * logx - lg
        if lmag > 700.0:
            raise AccuracyError(f"series terms overflow at z={z}; |z| is far past the series radius")
        if arg < 170.0 and n * logx < 700.0:
            t = z**n / math.gamma(arg)
            rel = 8.0
        else:
            # log-space: relative error grows with the size of the exponent
            t = (-1.0) ** n * math.exp(lmag) if z < 0.0 else math.exp(lmag)
            rel = 8.0 + abs(n * logx) + abs(lg)
        terms.append(t)
        running += t
        mag = abs(t)
        err += mag * _EPS * rel
        if prev_mag is not None and prev_mag > 0.0:
            ratio = mag / prev_mag
            # log-concave magnitudes: once the ratio drops below 1 it keeps
            # falling, so a geometric tail bounds everything left over
            if ratio < 1.0:
                tail = mag * ratio / (1.0 - ratio)
                # terms shrink super-geometrically, so running on to full
                # double precision costs only a handful of extra terms
                if tail <= 1e-2 * tol and tail <= _EPS * abs(running):
                    return math.fsum(terms), err
        prev_mag = mag
    raise ConvergenceError(
        f"series for E_{{{alpha},{beta}}}({z}) did not converge in {max_terms} terms"
    )


def ml_series(order: MLOrder, z: float, acc: EvalAccuracy | None = None) -> float:
    """Partial sum of the defining power series.

    Raises
    ------
    ConvergenceError
        More than ``acc.max_terms`` terms would be needed.
    AccuracyError
        Cancellation between terms makes the double-precision sum less
        accurate than ``acc.tol``; ``|z|`` is past the series radius.
    """
    acc = _check(order, z, acc)
    order = order if isinstance(order, MLOrder) else MLOrder(*order)
    value, err = _series(order.alpha, order.beta, z, acc.tol, acc.max_terms)
    if err > acc.tol:
        raise AccuracyError(
            f"series cancellation error ~{err:.2e} exceeds tol {acc.tol:.1e} at z={z}"
        )
    return value


# -- large-argument expansion -------------------------------------------------


def _pole_terms(alpha: float, beta: float, x: float) -> float:
    """Sum of the two complex-conjugate pole residues for ``1 < alpha < 2``."""
    s = x ** (1.0 / alpha) * cmath.exp(1j * math.pi / alpha)
    return 2.0 * (s ** (1.0 - beta) * cmath.exp(s)).real / alpha


def _asymptotic(alpha: float, beta: float, z: float, tol: float, max_terms: int):
    """Return ``(value, truncation_error_estimate)`` of the expansion."""
    x = -z
    logx = math.log(x)
    terms = []
    trunc = math.inf
    prev_env = math.inf
    for k in range(1, max_terms + 1):
        arg = beta - alpha * k
        if arg < 0.0:
            # individual terms dip towards zero near the poles of Gamma, so
            # truncation is decided on the smooth bound |1/Gamma(x)| <= Gamma(1-x)/pi
            env = -k * logx + math.lgamma(1.0 - arg) - math.log(math.pi)
            if env > prev_env or env < math.log(1e-3 * tol):
                trunc = math.exp(min(env, prev_env))
                break
            prev_env = env
        if _is_nonpositive_integer(arg):
            continue
        lr, sign = _log_rgamma(arg)
        # -z**-k = -(-1)**k x**-k
        terms.append(-((-1.0) ** k) * sign * math.exp(-k * logx + lr))
    value = math.fsum(terms)
    r = x ** (1.0 / alpha)
    if alpha > 1.0:
        value += _pole_terms(alpha, beta, x)
    # what optimal truncation leaves out is of order exp(-|z|**(1/alpha))
    trunc = max(trunc, x ** ((1.0 - beta) / alpha) * math.exp(-r) / alpha)
    return value, trunc


def ml_asymptotic(order: MLOrder, z: float, acc: EvalAccuracy | None = None) -> float:
    """Large-``|z|`` expansion, optimally truncated.

    For ``1 < alpha < 2`` the poles of the Laplace transform at
    ``|z|**(1/alpha) * exp(+-i pi/alpha)`` sit on the principal sheet and
    their residues (decaying oscillations) are added to the algebraic tail.

    Raises
    ------
    AccuracyError
        The smallest term of the expansion is larger than ``acc.tol``.
    DomainError
        ``alpha == 2`` or ``z == 0``.
    """
    acc = _check(order, z, acc)
    order = order if isinstance(order, MLOrder) else MLOrder(*order)
    if order.alpha >= 2.0:
        raise DomainError("the expansion needs alpha < 2")
    if z == 0.0:
        raise DomainError("the expansion needs z < 0")
    value, err = _asymptotic(order.alpha, order.beta, z, acc.tol, acc.max_terms)
    if err > acc.tol:
        raise AccuracyError(
            f"smallest expansion term ~{err:.2e} exceeds tol {acc.tol:.1e} at z={z}"
        )
    return value


# -- Laplace transform inversion on a parabolic contour ------------------------


def _param_bounded(phi_j, phi_j1, pj, qj, log_eps):
    """Contour parameters for a region between two singularities."""
    fac = 1.01
    f_max = math.exp(log_eps - _LOG_EPS)
    sq_j = math.sqrt(phi_j)
    threshold = 2.0 * math.sqrt(log_eps - _LOG_EPS)
    sq_j1 = min(math.sqrt(phi_j1), threshold - sq_j)
    f_bar = None
    if pj < 1e-14 and qj < 1e-14:
        sqb_j, sqb_j1 = sq_j, sq_j1
        f_bar = 1.0
    elif pj < 1e-14:
        sqb_j = sq_j
        f_min = fac * (sq_j / (sq_j1 - sq_j)) ** qj if sq_j > 0 else fac
        if f_min < f_max:
            f_bar = f_min + f_min / f_max * (f_max - f_min)
            fq = f_bar ** (-1.0 / qj)
            sqb_j1 = (2.0 * sq_j1 - fq * sq_j) / (2.0 + fq)
    elif qj < 1e-14:
        sqb_j1 = sq_j1
        f_min = fac * (sq_j1 / (sq_j1 - sq_j)) ** pj
        if f_min < f_max:
            f_bar = f_min + f_min / f_max * (f_max - f_min)
            fp = f_bar ** (-1.0 / pj)
            sqb_j = (2.0 * sq_j + fp * sq_j1) / (2.0 - fp)
    else:
        f_min = fac * (sq_j + sq_j1) / (sq_j1 - sq_j) ** max(pj, qj)
        if f_min < f_max:
            f_min = max(f_min, 1.5)
            f_bar = f_min + f_min / f_max * (f_max - f_min)
            fp = f_bar ** (-1.0 / pj)
            fq = f_bar ** (-1.0 / qj)
            w = -phi_j1 / log_eps
            den = 2.0 + w - (1.0 + w) * fp + fq
            sqb_j = ((2.0 + w + fq) * sq_j + fp * sq_j1) / den
            sqb_j1 = (-(1.0 + w) * fq * sq_j + (2.0 + w - (1.0 + w) * fp) * sq_j1) / den
    if f_bar is None:
        return 0.0, 0.0, math.inf
    log_eps = log_eps - math.log(f_bar)
    w = -(sqb_j1**2) / log_eps
    mu = (((1.0 + w) * sqb_j + sqb_j1) / (2.0 + w)) ** 2
    h = -2.0 * math.pi / log_eps * (sqb_j1 - sqb_j) / ((1.0 + w) * sqb_j + sqb_j1)
    n = math.ceil(math.sqrt(1.0 - log_eps / mu) / h)
    return mu, h, n


def _param_unbounded(phi_j, pj, log_eps):
    """Contour parameters for the region right of the last singularity."""
    sq_phi = math.sqrt(phi_j)
    phib = phi_j * 1.01 if phi_j > 0 else 0.01
    sqb = math.sqrt(phib)
    f_min, f_max, f_tar = 1.0, 10.0, 5.0
    for _ in range(100):
        log_eps_phi = log_eps / phib
        n = math.ceil(phib / math.pi * (1.0 - 1.5 * log_eps_phi + math.sqrt(1.0 - 2.0 * log_eps_phi)))
        a = math.pi * n / phib
        sq_mu = sqb * abs(4.0 - a) / abs(7.0 - math.sqrt(1.0 + 12.0 * a))
        if pj < 1e-14:
            break
        fbar = ((sqb - sq_phi) / sq_mu) ** (-pj)
        if f_min < fbar < f_max:
            break
        sqb = f_tar ** (-1.0 / pj) * sq_mu + sq_phi
        phib = sqb**2
    mu = sq_mu**2
    h = (-3.0 * a - 2.0 + 2.0 * math.sqrt(1.0 + 12.0 * a)) / (4.0 - a) / n
    threshold = log_eps - _LOG_EPS
    if mu > threshold:
        q = 0.0 if abs(pj) < 1e-14 else f_tar ** (-1.0 / pj) * math.sqrt(mu)
        phib = (q + sq_phi) ** 2
        if phib < threshold:
            w = math.sqrt(_LOG_EPS / (_LOG_EPS - log_eps))
            u = math.sqrt(-phib / _LOG_EPS)
            mu = threshold
            n = math.ceil(w * log_eps / 2.0 / math.pi / (u * w - 1.0))
            h = math.sqrt(_LOG_EPS / (_LOG_EPS - log_eps)) / n
        else:
            n, h = math.inf, 0.0
    return mu, h, n


def _inversion(alpha: float, beta: float, z: float, log_eps: float = math.log(1e-15)) -> float:
    x = abs(z)
    theta = math.pi if z < 0.0 else 0.0
    kmin = math.ceil(-alpha / 2.0 - theta / (2.0 * math.pi))
    kmax = math.floor(alpha / 2.0 - theta / (2.0 * math.pi))
    poles = [x ** (1.0 / alpha) * cmath.exp(1j * (theta + 2.0 * k * math.pi) / alpha)
             for k in range(kmin, kmax + 1)]
    poles = sorted((((s.real + abs(s)) / 2.0, s) for s in poles), key=lambda ps: ps[0])
    poles = [(p, s) for p, s in poles if p > 1e-15]
    sing = [0j] + [s for _, s in poles]
    phi = [0.0] + [p for p, _ in poles] + [math.inf]
    n_sing = len(sing)
    p = [max(0.0, -2.0 * (alpha - beta + 1.0))] + [1.0] * (n_sing - 1)
    q = [1.0] * (n_sing - 1) + [math.inf]
    admissible = [j for j in range(n_sing)
                  if phi[j] < log_eps - _LOG_EPS and phi[j] < phi[j + 1]]
    while True:
        params = {}
        for j in admissible:
            if j < n_sing - 1:
                params[j] = _param_bounded(phi[j], phi[j + 1], p[j], q[j], log_eps)
            else:
                params[j] = _param_unbounded(phi[j], p[j], log_eps)
        if min(v[2] for v in params.values()) > 200 and log_eps < -2.0:
            log_eps += math.log(10.0)
        else:
            break
    j_best = min(params, key=lambda j: params[j][2])
    mu, h, n = params[j_best]
    if not math.isfinite(n):
        raise ConvergenceError(f"no usable contour for E_{{{alpha},{beta}}}({z})")
    u = h * np.arange(-n, n + 1)
    s = mu * (1j * u + 1.0) ** 2
    ds = -2.0 * mu * u + 2j * mu
    f = np.exp(s) * s ** (alpha - beta) / (s**alpha - z) * ds
    integral = h * f.sum() / (2j * math.pi)
    residues = sum(sk ** (1.0 - beta) * cmath.exp(sk) / alpha for sk in sing[j_best + 1:])
    return float((integral + residues).real)


def ml_inversion(order: MLOrder, z: float) -> float:
    """Evaluate by inverting the Laplace transform on a parabolic contour.

    Accurate to roughly 1e-13 for every ``alpha`` in (0, 2]; slower than the
    series or the expansion, so ``ml_eval`` uses it only between them.
    """
    _check(order, z, None)
    order = order if isinstance(order, MLOrder) else MLOrder(*order)
    if z == 0.0:
        return gamma_reciprocal(order.beta)
    return _inversion(order.alpha, order.beta, z)


# -- dispatcher ----------------------------------------------------------------


def _closed_form(alpha: float, beta: float, z: float):
    if z == 0.0:
        return gamma_reciprocal(beta)
    if alpha == 1.0 and beta == 1.0:
        return math.exp(z)
    if alpha == 2.0 and beta == 1.0:
        return math.cos(math.sqrt(-z))
    if alpha == 2.0 and beta == 2.0:
        r = math.sqrt(-z)
        return math.sin(r) / r
    return None


def ml_eval_route(order: MLOrder, z: float, acc: EvalAccuracy | None = None) -> tuple[float, str]:
    """Like :func:`ml_eval` but also names the route taken.

    The route is one of ``"closed"``, ``"series"``, ``"asymptotic"`` or
    ``"inversion"``.
    """
    acc = _check(order, z, acc)
    order = order if isinstance(order, MLOrder) else MLOrder(*order)
    alpha, beta = order.alpha, order.beta
    z = float(z)

    value = _closed_form(alpha, beta, z)
    if value is not None:
        return value, "closed"

    peak = (-z) ** (1.0 / alpha)
    if peak <= _SERIES_MAX_PEAK:
        try:
            value, err = _series(alpha, beta, z, acc.tol, acc.max_terms)
        except (ConvergenceError, AccuracyError):
            err = math.inf
        if err <= 0.1 * acc.tol:
            return value, "series"

    if alpha < 2.0:
        value, err = _asymptotic(alpha, beta, z, acc.tol, acc.max_terms)
        if err <= 0.1 * acc.tol:
            return value, "asymptotic"

    value = _inversion(alpha, beta, z)
    if not math.isfinite(value):
        raise ConvergenceError(f"E_{{{alpha},{beta}}}({z}) could not be evaluated")
    return value, "inversion"


def ml_eval(order: MLOrder, z: float, acc: EvalAccuracy | None = None) -> float:
    """``E_{alpha,beta}(z)`` for real ``z <= 0`` with absolute error ``<= acc.tol``.

    Parameters
    ----------
    order : MLOrder or (alpha, beta) tuple
    z : float
        Non-positive argument.
    acc : EvalAccuracy, optional
        Defaults to ``tol=1e-9, max_terms=1000``.

    Raises
    ------
    DomainError
        Orders out of range or ``z > 0``.
    ConvergenceError
        No evaluation route reached the tolerance.
    """
    return ml_eval_route(order, z, acc)[0]


def ml_eval_many(order: MLOrder, z, acc: EvalAccuracy | None = None) -> np.ndarray:
    """Element-wise :func:`ml_eval` over an array of arguments."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    flat = out.reshape(-1)
    for i, zi in enumerate(z.reshape(-1)):
        flat[i] = ml_eval(order, float(zi), acc)
    return out
