"""Mittag-Leffler low-pass filter: a three-parameter generalization of Gaussian smoothing."""

from .errors import (
    AccuracyError,
    ConvergenceError,
    DomainError,
    GridMismatch,
    MLFilterError,
    NumericalError,
    SizeError,
)
from .filter_engine import FilterOutput, Signal, apply_filter, convolve_same, edge_normalizer
from .kernels import KernelSpec, SampledKernel, gaussian_pdf, ml_pdf, ml_pdf_agahi, sample_kernel
from .mlf_core import EvalAccuracy, MLOrder, gamma_reciprocal, ml_eval

__version__ = "0.1.0"
