"""Numerical primitives shared by the unimodality tests.

Everything here is a pure function of its arguments and is safe to call
from any number of threads. Samples are plain 1-d float arrays; the
helpers validate shape and finiteness on entry.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from .errors import (
    DegenerateInputError,
    IndexOutOfRangeError,
    NegativeInputError,
    NonFiniteInputError,
)

_SQRT2 = float(np.sqrt(2.0))


def as_sample(values) -> np.ndarray:
    """Coerce to a 1-d float64 array, rejecting empty or non-finite input."""
    y = np.asarray(values, dtype=np.float64)
    if y.ndim != 1:
        y = y.reshape(-1) if y.size == max(y.shape, default=0) else y
    if y.ndim != 1:
        raise ValueError(f"expected a 1-d sample, got shape {y.shape}")
    if y.size == 0:
        raise DegenerateInputError("empty sample")
    if not np.all(np.isfinite(y)):
        raise NonFiniteInputError("sample contains NaN or infinite values")
    return y


def normalize(samples) -> np.ndarray:
    """Shift to mean 0 and scale to unit population standard deviation.

    The scale is sqrt(mean((y - ybar)^2)), i.e. the 1/N convention, so the
    output is a deterministic canonical form: normalize(a*y + b) equals
    normalize(y) for any a > 0 and any b.

    Raises
    ------
    DegenerateInputError
        If fewer than two values, or all values equal.
    """
    y = as_sample(samples)
    if y.size < 2:
        raise DegenerateInputError("need at least two values to normalize")
    mean = y.mean()
    d = y - mean
    scale = np.sqrt(np.mean(d * d))
    # relative floor catches constant vectors whose mean subtraction
    # leaves only rounding residue
    if scale == 0.0 or not np.isfinite(scale) or scale < abs(mean) * 1e-13:
        raise DegenerateInputError("zero spread: all values are equal")
    return d / scale


def sorted_abs(samples) -> np.ndarray:
    """Absolute values sorted ascending (stable, so ties keep input order)."""
    y = as_sample(samples)
    return np.sort(np.abs(y), kind="stable")


def half_normal_cdf(t):
    """P(|Z| <= t) for standard normal Z, i.e. 2*Phi(t) - 1 = erf(t/sqrt(2)).

    Accepts a scalar or array of nonnegative values; monotone nondecreasing.

    Raises
    ------
    NegativeInputError
        If any value is below zero.
    """
    t_arr = np.asarray(t, dtype=np.float64)
    if np.any(t_arr < 0):
        raise NegativeInputError("half-normal CDF is defined for t >= 0")
    out = erf(t_arr / _SQRT2)
    if np.isscalar(t) or t_arr.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class OrderStatMoments:
    """Mean level and variance of the n-th of N uniform order statistics.

    ``p`` is the expected CDF level n/(N+1); ``var`` is the binomial-style
    approximation p(1-p)/N, which is bounded by 1/(4N).
    """

    n: int
    p: float
    var: float


def order_statistic_moments(n: int, N: int) -> OrderStatMoments:
    """Moments of the n-th order statistic (in the probability domain).

    Raises
    ------
    IndexOutOfRangeError
        Unless 1 <= n <= N.
    """
    if not 1 <= n <= N:
        raise IndexOutOfRangeError(f"n={n} outside [1, {N}]")
    p = n / (N + 1.0)
    # n*(N+1-n) keeps the value exactly symmetric under n <-> N+1-n
    var = (n * (N + 1.0 - n)) / ((N + 1.0) * (N + 1.0) * N)
    return OrderStatMoments(n=n, p=p, var=var)
