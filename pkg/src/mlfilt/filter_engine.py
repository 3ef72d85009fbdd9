"""Same-length convolution with ones-convolution edge renormalization."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .errors import DomainError, GridMismatch, NumericalError
from .kernels import KernelSpec, SampledKernel, sample_kernel
from .mlf_core import EvalAccuracy

__all__ = [
    "Signal",
    "FilterOutput",
    "DIRECT_MAX_TAPS",
    "EDGE_EPS",
    "convolve_same",
    "edge_normalizer",
    "filter_with_kernel",
    "apply_filter",
]

# beyond this many taps per output sample the FFT path is used
DIRECT_MAX_TAPS = 4096
# denominators below EDGE_EPS * |sum(weights)| are refused
EDGE_EPS = 1e-6


@dataclass(frozen=True, eq=False)
class Signal:
    """Uniformly sampled series; sample ``i`` sits at ``t0 + i*dt``."""

    t0: float
    dt: float
    y: np.ndarray

    def __post_init__(self):
        y = np.array(self.y, dtype=float).reshape(-1)
        if len(y) < 1:
            raise DomainError("signal must have at least one sample")
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise DomainError(f"dt must be positive, got {self.dt!r}")
        if not np.all(np.isfinite(y)):
            raise DomainError("signal samples must be finite")
        y.flags.writeable = False
        object.__setattr__(self, "y", y)

    def __len__(self):
        return len(self.y)

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self.y))

    def with_values(self, y) -> "Signal":
        return Signal(self.t0, self.dt, y)


@dataclass(frozen=True, eq=False)
class FilterOutput:
    signal: Signal
    edge_floor: float


def _weights(k) -> np.ndarray:
    return k.weights if isinstance(k, SampledKernel) else np.asarray(k, dtype=float)


def convolve_same(y, k) -> np.ndarray:
    """Centered linear convolution cut to ``len(y)``; zero outside the signal.

    ``out[i] = sum_j y[i - j + c] * w[j]`` with ``c`` the kernel center.
    ``k`` is a :class:`SampledKernel` or a plain odd-length weight array.
    """
    y = np.asarray(y, dtype=float)
    w = _weights(k)
    if len(y) == 0:
        raise DomainError("cannot convolve an empty sequence")
    c = len(w) // 2
    if len(w) > DIRECT_MAX_TAPS:
        full = fftconvolve(y, w, mode="full")
    else:
        full = np.convolve(y, w, mode="full")
    return full[c:c + len(y)]


def edge_normalizer(n: int, k) -> np.ndarray:
    """Response of the kernel to ``n`` ones: full weight sum inside, partial sums near the edges."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return convolve_same(np.ones(n), k)


def filter_with_kernel(sig: Signal, kernel: SampledKernel) -> FilterOutput:
    """Convolve and divide by the ones-convolution, guarding tiny denominators."""
    num = convolve_same(sig.y, kernel)
    den = edge_normalizer(len(sig), kernel)
    floor = float(np.min(np.abs(den)))
    limit = EDGE_EPS * abs(kernel.total)
    if not floor > limit:
        i = int(np.argmin(np.abs(den)))
        raise NumericalError(
            f"edge normalizer {den[i]:.3e} at index {i} is below {limit:.3e}; "
            "the kernel's signed lobes cancel for this window"
        )
    return FilterOutput(sig.with_values(num / den), floor)


def apply_filter(sig: Signal, spec: KernelSpec, acc: EvalAccuracy | None = None) -> FilterOutput:
    """Filter ``sig`` with the Mittag-Leffler kernel described by ``spec``.

    ``alpha = beta = 1`` gives the Gaussian filter. The output has unit DC
    gain at every index, edges included.

    Raises
    ------
    GridMismatch
        ``sig.dt`` differs from ``spec.dt``.
    NumericalError
        Some edge-normalizer entry is below ``EDGE_EPS`` times the weight sum.
    """
    if not math.isclose(sig.dt, spec.dt, rel_tol=1e-9, abs_tol=0.0):
        raise GridMismatch(f"signal dt={sig.dt!r} but kernel dt={spec.dt!r}")
    return filter_with_kernel(sig, sample_kernel(spec, acc))
