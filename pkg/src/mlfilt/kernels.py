"""Continuous PDF kernels and their sampled convolution masks."""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SizeError
from .mlf_core import DEFAULT_ACCURACY, EvalAccuracy, MLOrder, gamma_reciprocal, ml_eval

__all__ = [
    "KernelSpec",
    "SampledKernel",
    "DEFAULT_MAX_TAPS",
    "default_half_width",
    "gaussian_pdf",
    "ml_pdf",
    "ml_pdf_agahi",
    "sample_kernel",
]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
DEFAULT_MAX_TAPS = 10**6


def default_half_width(sigma: float, alpha: float) -> float:
    """6 sigma, or 12 sigma when alpha < 1 (power-law tails need more room)."""
    return (6.0 if alpha >= 1.0 else 12.0) * sigma


@dataclass(frozen=True)
class KernelSpec:
    """Filter parameters plus the sampling window.

    ``half_width=None`` picks :func:`default_half_width`.
    """

    sigma: float
    alpha: float = 1.0
    beta: float = 1.0
    half_width: float | None = None
    dt: float = 0.01

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0.0):
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")
        MLOrder(self.alpha, self.beta)
        if self.half_width is None:
            object.__setattr__(self, "half_width", default_half_width(self.sigma, self.alpha))
        if not (self.dt > 0.0 and self.dt <= self.sigma):
            raise DomainError(f"need 0 < dt <= sigma, got dt={self.dt!r}, sigma={self.sigma!r}")
        # small slack so that e.g. 3*0.1 passes for half_width=0.3
        if not self.half_width >= 3.0 * self.sigma * (1.0 - 1e-12):
            raise DomainError(
                f"half_width must be >= 3*sigma, got {self.half_width!r} for sigma={self.sigma!r}"
            )

    @property
    def order(self) -> MLOrder:
        return MLOrder(self.alpha, self.beta)


@dataclass(frozen=True, eq=False)
class SampledKernel:
    """Symmetric, odd-length mask; ``weights`` already include the factor dt."""

    weights: np.ndarray
    dt: float
    center_index: int = field(init=False)

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 1 or len(w) % 2 == 0:
            raise DomainError(f"kernel must be 1-D with odd length, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise DomainError("kernel weights must be finite")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "center_index", len(w) // 2)

    def __len__(self):
        return len(self.weights)

    @property
    def offsets(self) -> np.ndarray:
        """Tap positions in time units relative to the center."""
        return (np.arange(len(self.weights)) - self.center_index) * self.dt

    @property
    def total(self) -> float:
        return math.fsum(self.weights)


def gaussian_pdf(x, mu: float = 0.0, sigma: float = 1.0):
    """Normal density with mean ``mu`` and standard deviation ``sigma``."""
    if not sigma > 0.0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    if np.ndim(x) == 0:
        u = (float(x) - mu) / sigma
        return _INV_SQRT_2PI / sigma * math.exp(-0.5 * u * u)
    u = (np.asarray(x, dtype=float) - mu) / sigma
    return _INV_SQRT_2PI / sigma * np.exp(-0.5 * u * u)


def ml_pdf(x: float, mu: float, sigma: float, order: MLOrder,
           acc: EvalAccuracy | None = None) -> float:
    """Mittag-Leffler kernel ``E_{a,b}(-(x-mu)**2 / (2 sigma**2)) / (sigma sqrt(2 pi))``.

    Not normalized for ``(a, b) != (1, 1)``; the filter engine divides that out.
    Identical to :func:`gaussian_pdf` for ``a = b = 1``.
    """
    if not sigma > 0.0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    u = (x - mu) / sigma
    return _INV_SQRT_2PI / sigma * ml_eval(order, -0.5 * u * u, acc)


def ml_pdf_agahi(x: float, mu: float, sigma: float, alpha: float,
                 beta: float | None = None, acc: EvalAccuracy | None = None) -> float:
    """Agahi-form density ``sqrt(sigma)/pi * Gamma(b - a/2) * E_{a,b}(-sigma (x-mu)**2)``.

    Here ``sigma`` is a rate, not a scale. With ``beta`` omitted, ``beta = alpha``.
    Requires ``0 < alpha <= 1`` and ``beta >= alpha``.
    """
    if beta is None:
        beta = alpha
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    if not beta >= alpha:
        raise DomainError(f"beta must be >= alpha, got beta={beta!r}, alpha={alpha!r}")
    if not sigma > 0.0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    d = x - mu
    e = ml_eval(MLOrder(alpha, beta), -sigma * d * d, acc)
    return math.sqrt(sigma) / math.pi / gamma_reciprocal(beta - 0.5 * alpha) * e


def _max_taps_from_env() -> int:
    raw = os.environ.get("MLFILT_MAX_TAPS")
    if raw is None:
        return DEFAULT_MAX_TAPS
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"MLFILT_MAX_TAPS must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError(f"MLFILT_MAX_TAPS must be positive, got {value}")
    return value


def sample_kernel(spec: KernelSpec, acc: EvalAccuracy | None = None,
                  max_taps: int | None = None) -> SampledKernel:
    """Sample ``dt * ml_pdf`` on a symmetric grid covering ``[-half_width, half_width]``.

    Only the non-negative offsets are evaluated; the other half is a mirror
    copy, so the mask is bitwise symmetric. ``max_taps`` defaults to
    ``$MLFILT_MAX_TAPS`` or one million.
    """
    if max_taps is None:
        max_taps = _max_taps_from_env()
    acc = DEFAULT_ACCURACY if acc is None else acc
    # guard against 0.3/0.1 = 2.9999999999999996 dropping a tap
    half = math.ceil(spec.half_width / spec.dt - 1e-9)
    taps = 2 * half + 1
    if taps > max_taps:
        raise SizeError(f"kernel needs {taps} taps, limit is {max_taps}")
    return _sample_kernel_cached(spec, acc, half)


@functools.lru_cache(maxsize=64)
def _sample_kernel_cached(spec: KernelSpec, acc: EvalAccuracy, half: int) -> SampledKernel:
    order = spec.order
    right = np.array([spec.dt * ml_pdf(k * spec.dt, 0.0, spec.sigma, order, acc)
                      for k in range(half + 1)])
    weights = np.concatenate([right[:0:-1], right])
    return SampledKernel(weights, spec.dt)
