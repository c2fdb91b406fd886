"""Truncated power series living in a weighted space.

Everything here works on monomial coefficients and is deliberately plain:
these routines are the function-level reference that operator matrices are
checked against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegreeExceedsWeights, SpaceMismatch
from .weights import WeightSequence

__all__ = [
    "AffineMap",
    "TruncatedEntireFunction",
    "compose_affine",
    "differentiate",
    "evaluate",
    "inner_product",
    "kernel",
    "log_norm",
    "monomial",
    "multiply",
    "norm",
    "polynomial",
    "powers",
]


@dataclass(frozen=True)
class AffineMap:
    """The map ``z -> a*z + b``.  A dilation ``mu*z`` is ``AffineMap(mu)``."""

    a: complex
    b: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))

    def __call__(self, z):
        return self.a * z + self.b

    def after(self, inner: "AffineMap") -> "AffineMap":
        """``self o inner``, i.e. ``z -> self(inner(z))``."""
        return AffineMap(self.a * inner.a, self.a * inner.b + self.b)

    @property
    def derivative(self) -> complex:
        return self.a

    def as_polynomial(self, space: WeightSequence) -> "TruncatedEntireFunction":
        return polynomial([self.b, self.a], space)


@dataclass(frozen=True, eq=False)
class TruncatedEntireFunction:
    """``sum_{n<=N} a_n z^n`` as an element of the space ``space``."""

    coeffs: np.ndarray
    space: WeightSequence

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        self.space.require(c.size - 1, "degree bound")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree_bound(self) -> int:
        return self.coeffs.size - 1

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient (0 for the zero function)."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def padded(self, degree_bound: int) -> np.ndarray:
        out = np.zeros(degree_bound + 1, dtype=np.complex128)
        m = min(degree_bound, self.degree_bound) + 1
        out[:m] = self.coeffs[:m]
        return out

    def __call__(self, p):
        return evaluate(self, p)

    def _binary(self, other, op):
        if not isinstance(other, TruncatedEntireFunction):
            return NotImplemented
        _check_same_space(self.space, other.space, max(self.degree_bound, other.degree_bound))
        n = max(self.degree_bound, other.degree_bound)
        return TruncatedEntireFunction(op(self.padded(n), other.padded(n)), self.space)

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __neg__(self):
        return TruncatedEntireFunction(-self.coeffs, self.space)

    def __mul__(self, c):
        if isinstance(c, TruncatedEntireFunction):
            return NotImplemented
        return TruncatedEntireFunction(complex(c) * self.coeffs, self.space)

    __rmul__ = __mul__

    def to_dict(self) -> dict:
        return {
            "degree": self.degree_bound,
            "coefficients": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    def __repr__(self):
        return f"TruncatedEntireFunction(degree_bound={self.degree_bound}, coeffs={self.coeffs!r})"


def polynomial(coeffs: Sequence[complex], space: WeightSequence) -> TruncatedEntireFunction:
    return TruncatedEntireFunction(np.asarray(coeffs, dtype=np.complex128), space)


def monomial(n: int, space: WeightSequence, degree_bound: int | None = None) -> TruncatedEntireFunction:
    c = np.zeros((n if degree_bound is None else degree_bound) + 1, dtype=np.complex128)
    c[n] = 1.0
    return TruncatedEntireFunction(c, space)


def _check_same_space(a: WeightSequence, b: WeightSequence, upto: int) -> None:
    if not a.agrees_with(b, upto):
        raise SpaceMismatch("functions live in different weighted spaces")


def inner_product(f: TruncatedEntireFunction, g: TruncatedEntireFunction,
                  xi: WeightSequence | None = None) -> complex:
    """``sum b_n conj(c_n) xi_n^2`` over the common degree range."""
    xi = f.space if xi is None else xi
    xi.require(f.degree_bound)
    xi.require(g.degree_bound)
    m = min(f.degree_bound, g.degree_bound) + 1
    w2 = np.exp(2.0 * xi.log_values[:m])
    return complex(np.sum(f.coeffs[:m] * np.conj(g.coeffs[:m]) * w2))


def norm(f: TruncatedEntireFunction, xi: WeightSequence | None = None) -> float:
    xi = f.space if xi is None else xi
    xi.require(f.degree_bound)
    x = f.coeffs * np.exp(xi.log_values[: f.degree_bound + 1])
    return float(np.sqrt(np.sum(x.real ** 2 + x.imag ** 2)))


def log_norm(f: TruncatedEntireFunction, xi: WeightSequence | None = None) -> float:
    """``log ||f||`` without forming ``xi_n``; ``-inf`` for the zero function."""
    xi = f.space if xi is None else xi
    xi.require(f.degree_bound)
    mag = np.abs(f.coeffs)
    nz = mag > 0
    if not np.any(nz):
        return -math.inf
    t = 2.0 * (np.log(mag[nz]) + xi.log_values[: f.degree_bound + 1][nz])
    top = t.max()
    return 0.5 * (top + math.log(np.sum(np.exp(t - top))))


def evaluate(f: TruncatedEntireFunction, p: complex) -> complex:
    """Horner evaluation of ``f`` at ``p``."""
    acc = 0j
    for c in f.coeffs[::-1]:
        acc = acc * p + c
    return complex(acc)


def _powers(x: complex, n: int) -> np.ndarray:
    out = np.empty(n + 1, dtype=np.complex128)
    out[0] = 1.0
    if n:
        out[1:] = x
        out = np.cumprod(out)
    return out


def kernel(p: complex, xi: WeightSequence, degree_bound: int) -> TruncatedEntireFunction:
    """Truncated reproducing kernel ``K_p(z) = sum conj(p)^n z^n / xi_n^2``."""
    xi.require(degree_bound)
    c = _powers(np.conj(p), degree_bound) * np.exp(-2.0 * xi.log_values[: degree_bound + 1])
    return TruncatedEntireFunction(c, xi)


def differentiate(f: TruncatedEntireFunction, p: int) -> TruncatedEntireFunction:
    """``p``-th derivative, coefficientwise ``n(n-1)...(n-p+1) a_n``."""
    if p < 0:
        raise ValueError("derivative order must be nonnegative")
    if p == 0:
        return f
    N = f.degree_bound
    if p > N:
        return TruncatedEntireFunction(np.zeros(1), f.space)
    falling = np.array([float(math.perm(n, p)) for n in range(p, N + 1)])
    return TruncatedEntireFunction(falling * f.coeffs[p:], f.space)


def _log_binomial(n: np.ndarray, k: np.ndarray) -> np.ndarray:
    lg = np.vectorize(math.lgamma, otypes=[float])
    return lg(n + 1.0) - lg(k + 1.0) - lg(n - k + 1.0)


def compose_affine(f: TruncatedEntireFunction, phi: AffineMap) -> TruncatedEntireFunction:
    """Coefficients of ``f(a z + b)`` by binomial expansion.

    ``result_k = sum_{n>=k} a_n C(n,k) a^k b^(n-k)``; the binomials come from
    log-gamma differences so large degrees do not overflow an intermediate.
    """
    N = f.degree_bound
    n, k = np.meshgrid(np.arange(N + 1), np.arange(N + 1))
    upper = k <= n
    binom = np.where(upper, np.exp(_log_binomial(n, np.minimum(k, n))), 0.0)
    pa = _powers(phi.a, N)
    pb = _powers(phi.b, N)
    expansion = binom * pa[k] * pb[np.where(upper, n - k, 0)]
    expansion[~upper] = 0.0
    return TruncatedEntireFunction(expansion @ f.coeffs, f.space)


def multiply(f: TruncatedEntireFunction, g: TruncatedEntireFunction,
             truncation_degree: int) -> tuple[TruncatedEntireFunction, float]:
    """Cauchy product truncated at ``truncation_degree``.

    Returns the truncated product and the weighted norm of what was cut off.
    """
    space = f.space
    _check_same_space(space, g.space, max(f.degree_bound, g.degree_bound))
    space.require(truncation_degree, "truncation degree")
    full = np.convolve(f.coeffs, g.coeffs)
    kept = np.zeros(truncation_degree + 1, dtype=np.complex128)
    m = min(full.size, truncation_degree + 1)
    kept[:m] = full[:m]
    dropped = full[truncation_degree + 1:]
    dropped_mass = 0.0
    if dropped.size and np.any(dropped):
        last = truncation_degree + int(np.flatnonzero(dropped)[-1]) + 1
        if last > space.n_max:
            raise DegreeExceedsWeights(
                f"discarded term of degree {last} cannot be weighed (n_max={space.n_max})"
            )
        w = np.exp(space.log_values[truncation_degree + 1: truncation_degree + 1 + dropped.size])
        dropped_mass = float(np.sqrt(np.sum(np.abs(dropped * w) ** 2)))
    return TruncatedEntireFunction(kept, space), dropped_mass


def powers(f: TruncatedEntireFunction, k_max: int) -> list[TruncatedEntireFunction]:
    """Exact powers ``f^0 .. f^k_max``; raises if any needs more degrees than the weights."""
    space = f.space
    d = f.degree
    space.require(k_max * d, f"degree of power {k_max}")
    out = [polynomial([1.0], space)]
    for j in range(1, k_max + 1):
        prod, _ = multiply(out[-1], f, j * d)
        out.append(prod)
    return out
