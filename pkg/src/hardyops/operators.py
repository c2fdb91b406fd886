"""Finite matrices of composition-type operators between weighted spaces.

Matrices are written in the orthonormal bases ``e_n = z^n / xi_n`` of the
domain and codomain, so the Hilbert space adjoint is the conjugate transpose.
Entry ``M[k, n]`` is the ``e_k`` coordinate of the image of ``e_n``.

Entries are kept in extended precision (``numpy.clongdouble``).  Products of
two composition matrices cancel terms as large as ``C(n,k) (2|b|)^(n-k)``
relative to their sum, and double precision entries leave defects of order
``1e-9`` at degree 16 for ``|b| = 3``; the extra bits buy three orders of
magnitude.  On platforms where ``longdouble`` is plain double the code still
runs, with the double precision error level.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DegreeExceedsWeights, InsufficientHeadroom, SpaceMismatch
from .series import AffineMap, TruncatedEntireFunction, polynomial
from .weights import WeightSequence

__all__ = [
    "OperatorMatrix",
    "OperatorSymbol",
    "add",
    "adjoint",
    "apply",
    "compose",
    "composition_matrix",
    "differentiation_matrix",
    "generalized_matrix",
    "identity_matrix",
    "multiplier_matrix",
    "power",
    "scalar_mul",
    "weighted_composition_matrix",
]

EXT = np.clongdouble
REAL = np.longdouble


@dataclass(frozen=True)
class OperatorSymbol:
    """Symbols of ``f -> multiplier * (f^(order) o phi)``.

    Carried along so diagnostics can compare a numerical verdict with the
    closed-form characterization.  ``multiplier`` holds monomial coefficients.
    """

    phi: AffineMap
    multiplier: tuple[complex, ...] = (1 + 0j,)
    order: int = 0

    def __post_init__(self):
        c = [complex(x) for x in self.multiplier]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "multiplier", tuple(c))

    @property
    def is_pure_composition(self) -> bool:
        return self.order == 0 and self.multiplier == (1 + 0j,)

    def to_dict(self) -> dict:
        return {
            "phi": {"a": _pair(self.phi.a), "b": _pair(self.phi.b)},
            "multiplier": [_pair(c) for c in self.multiplier],
            "order": self.order,
        }


def _pair(c: complex) -> list[float]:
    c = complex(c)
    return [c.real, c.imag]


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    domain_weights: WeightSequence
    codomain_weights: WeightSequence
    headroom_used: int = 0
    warnings: tuple[str, ...] = ()
    symbol: OperatorSymbol | None = None

    def __post_init__(self):
        m = np.array(self.entries, dtype=EXT)
        if m.ndim != 2:
            raise ValueError("operator entries must be a 2-d array")
        self.domain_weights.require(m.shape[1] - 1, "domain degree")
        self.codomain_weights.require(m.shape[0] - 1, "codomain degree")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "warnings", tuple(self.warnings))

    @property
    def working_degree(self) -> int:
        return self.entries.shape[1] - 1

    @property
    def codomain_degree(self) -> int:
        return self.entries.shape[0] - 1

    @property
    def same_space(self) -> bool:
        upto = min(self.working_degree, self.codomain_degree)
        return self.domain_weights.agrees_with(self.codomain_weights, upto)

    def as_complex(self) -> np.ndarray:
        """Entries rounded to ``complex128``."""
        return self.entries.astype(np.complex128)

    def to_dict(self) -> dict:
        """Dump document used by the command line front end."""
        m = self.as_complex()
        return {
            "domain_space": self.domain_weights.descriptor(),
            "codomain_space": self.codomain_weights.descriptor(),
            "n": self.working_degree,
            "codomain_degree": self.codomain_degree,
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in m],
            "headroom_used": self.headroom_used,
            "warnings": list(self.warnings),
            "symbol": None if self.symbol is None else self.symbol.to_dict(),
        }


@lru_cache(maxsize=16)
def _pascal(N: int) -> np.ndarray:
    """``C(n, k)`` at ``[k, n]``; exact integers while they fit the mantissa."""
    t = np.zeros((N + 1, N + 1), dtype=REAL)
    t[0, :] = 1
    for n in range(1, N + 1):
        t[1:n + 1, n] = t[:n, n - 1] + t[1:n + 1, n - 1]
    t.setflags(write=False)
    return t


def _ext_powers(x: complex, n: int) -> np.ndarray:
    out = np.empty(n + 1, dtype=EXT)
    out[0] = 1
    acc = EXT(1)
    x = EXT(x)
    for j in range(1, n + 1):
        acc = acc * x
        out[j] = acc
    return out


def _default_degree(n, *spaces: WeightSequence) -> int:
    if n is None:
        return min(s.n_max for s in spaces)
    for s in spaces:
        s.require(n)
    return n


def identity_matrix(xi: WeightSequence, n: int | None = None) -> OperatorMatrix:
    n = _default_degree(n, xi)
    return OperatorMatrix(np.eye(n + 1, dtype=EXT), xi, xi,
                          symbol=OperatorSymbol(AffineMap(1, 0)))


def composition_matrix(phi: AffineMap, domain: WeightSequence,
                       codomain: WeightSequence | None = None,
                       n: int | None = None) -> OperatorMatrix:
    """Matrix of ``f -> f o phi`` for affine ``phi(z) = a z + b``.

    ``M[k, n] = C(n,k) a^k b^(n-k) xi'_k / xi_n`` for ``k <= n`` and zero below
    the diagonal; ``xi`` and ``xi'`` are the domain and codomain weights.
    """
    codomain = domain if codomain is None else codomain
    N = _default_degree(n, domain, codomain)
    binom = _pascal(N)
    pa = _ext_powers(phi.a, N)
    pb = _ext_powers(phi.b, N)
    k = np.arange(N + 1)[:, None]
    cols = np.arange(N + 1)[None, :]
    upper = k <= cols
    shift = np.where(upper, cols - k, 0)
    scale = codomain.extended_values[: N + 1, None] / domain.extended_values[None, : N + 1]
    m = binom * pa[:, None] * pb[shift] * scale
    m[~upper] = 0
    notes = []
    if abs(phi.a) > 1 and domain.agrees_with(codomain, N):
        notes.append(f"|a| = {abs(phi.a):.6g} > 1: outside the boundedness hypothesis |a| <= 1")
    return OperatorMatrix(m, domain, codomain, 0, tuple(notes), OperatorSymbol(phi))


def _as_polynomial(upsilon, space: WeightSequence) -> TruncatedEntireFunction:
    if isinstance(upsilon, TruncatedEntireFunction):
        return upsilon
    if np.isscalar(upsilon):
        return polynomial([upsilon], space)
    return polynomial(list(upsilon), space)


def multiplier_matrix(upsilon, xi: WeightSequence, n: int | None = None) -> OperatorMatrix:
    """Matrix of ``f -> upsilon * f`` from degree ``n`` to degree ``n + deg upsilon``.

    Multiplication by ``z`` sends ``e_n`` to ``(xi_{n+1}/xi_n) e_{n+1}``.
    """
    ups = _as_polynomial(upsilon, xi)
    d = ups.degree
    N = xi.n_max - d if n is None else n
    if N < 0 or N + d > xi.n_max:
        raise InsufficientHeadroom(
            f"multiplier of degree {d} at working degree {N} needs n_max >= {N + d}, "
            f"weights stop at {xi.n_max}"
        )
    v = xi.extended_values
    coeffs = np.array(ups.coeffs[: d + 1], dtype=EXT)
    m = np.zeros((N + d + 1, N + 1), dtype=EXT)
    cols = np.arange(N + 1)
    for j, c in enumerate(coeffs):
        if c != 0:
            m[cols + j, cols] = c * v[cols + j] / v[cols]
    sym = OperatorSymbol(AffineMap(1, 0), tuple(ups.coeffs[: d + 1]))
    return OperatorMatrix(m, xi, xi, d, (), sym)


def differentiation_matrix(p: int, xi: WeightSequence, n: int | None = None) -> OperatorMatrix:
    """Matrix of the ``p``-th derivative, degree ``n`` to degree ``n - p``."""
    N = _default_degree(n, xi)
    if p < 0 or p > N:
        raise ValueError(f"derivative order {p} must lie in 0..{N}")
    v = xi.extended_values
    m = np.zeros((N - p + 1, N + 1), dtype=EXT)
    for col in range(p, N + 1):
        m[col - p, col] = REAL(math.perm(col, p)) * v[col - p] / v[col]
    return OperatorMatrix(m, xi, xi, p, (), OperatorSymbol(AffineMap(1, 0), (1,), p))


def weighted_composition_matrix(upsilon, phi: AffineMap, xi: WeightSequence,
                                n: int | None = None) -> OperatorMatrix:
    """Matrix of ``f -> upsilon * (f o phi)``."""
    ups = _as_polynomial(upsilon, xi)
    N = xi.n_max - ups.degree if n is None else n
    if N < 0 or N + ups.degree > xi.n_max:
        raise InsufficientHeadroom(
            f"multiplier of degree {ups.degree} at working degree {N} exceeds n_max={xi.n_max}"
        )
    return compose(multiplier_matrix(ups, xi, N), composition_matrix(phi, xi, xi, N))


def generalized_matrix(p: int, phi: AffineMap, upsilon, xi: WeightSequence,
                       n: int | None = None) -> OperatorMatrix:
    """Matrix of ``f -> upsilon * (f^(p) o phi)``.

    Built as multiplier after composition after differentiation; the
    codomain degree is ``n - p + deg upsilon``.
    """
    ups = _as_polynomial(upsilon, xi)
    N = _default_degree(n, xi)
    if p < 0 or p > N:
        raise ValueError(f"derivative order {p} must lie in 0..{N}")
    if N - p + ups.degree > xi.n_max:
        raise InsufficientHeadroom(
            f"codomain degree {N - p + ups.degree} exceeds n_max={xi.n_max}"
        )
    d = differentiation_matrix(p, xi, N)
    c = composition_matrix(phi, xi, xi, N - p)
    out = compose(multiplier_matrix(ups, xi, N - p), compose(c, d))
    return replace(out, symbol=OperatorSymbol(phi, tuple(ups.coeffs), p))


def _check_weights(a: WeightSequence, b: WeightSequence, upto: int, what: str) -> None:
    if not a.agrees_with(b, upto):
        raise SpaceMismatch(f"{what}: weight sequences differ")


def _compose_symbols(s1: OperatorSymbol | None, s2: OperatorSymbol | None):
    # C_{u1,f1} C_{u2,f2} = C_{u1 * (u2 o f1), f2 o f1}
    if s1 is None or s2 is None or s1.order or s2.order:
        return None
    inner = Polynomial([s1.phi.b, s1.phi.a])
    u = Polynomial(list(s1.multiplier)) * Polynomial(list(s2.multiplier))(inner)
    return OperatorSymbol(s2.phi.after(s1.phi), tuple(u.coef))


def compose(t1: OperatorMatrix, t2: OperatorMatrix) -> OperatorMatrix:
    """``t1 o t2``: apply ``t2`` first."""
    d2 = t2.codomain_degree
    if t1.working_degree < d2:
        raise SpaceMismatch(
            f"inner operator reaches degree {d2}, outer accepts only {t1.working_degree}"
        )
    _check_weights(t1.domain_weights, t2.codomain_weights, d2, "compose")
    m = t1.entries[:, : d2 + 1] @ t2.entries
    notes = tuple(dict.fromkeys(t1.warnings + t2.warnings))
    return OperatorMatrix(m, t2.domain_weights, t1.codomain_weights,
                          t1.headroom_used + t2.headroom_used, notes,
                          _compose_symbols(t1.symbol, t2.symbol))


def add(t1: OperatorMatrix, t2: OperatorMatrix) -> OperatorMatrix:
    if t1.entries.shape != t2.entries.shape:
        raise SpaceMismatch(f"cannot add shapes {t1.entries.shape} and {t2.entries.shape}")
    _check_weights(t1.domain_weights, t2.domain_weights, t1.working_degree, "add (domain)")
    _check_weights(t1.codomain_weights, t2.codomain_weights, t1.codomain_degree, "add (codomain)")
    notes = tuple(dict.fromkeys(t1.warnings + t2.warnings))
    return OperatorMatrix(t1.entries + t2.entries, t1.domain_weights, t1.codomain_weights,
                          max(t1.headroom_used, t2.headroom_used), notes, None)


def scalar_mul(c: complex, t: OperatorMatrix) -> OperatorMatrix:
    sym = t.symbol
    if sym is not None:
        sym = OperatorSymbol(sym.phi, tuple(complex(c) * u for u in sym.multiplier), sym.order)
    return OperatorMatrix(EXT(complex(c)) * t.entries, t.domain_weights, t.codomain_weights,
                          t.headroom_used, t.warnings, sym)


def adjoint(t: OperatorMatrix) -> OperatorMatrix:
    """Conjugate transpose with domain and codomain exchanged."""
    sym = t.symbol
    # (c C_{mu z})^* = conj(c) C_{conj(mu) z}; other adjoints are not of this family
    if (sym is not None and sym.order == 0 and len(sym.multiplier) == 1
            and sym.phi.b == 0):
        sym = OperatorSymbol(AffineMap(np.conj(sym.phi.a)), (np.conj(sym.multiplier[0]),))
    else:
        sym = None
    return OperatorMatrix(np.conj(t.entries).T, t.codomain_weights, t.domain_weights,
                          t.headroom_used, t.warnings, sym)


def apply(t: OperatorMatrix, f: TruncatedEntireFunction) -> TruncatedEntireFunction:
    """Image of ``f`` as monomial coefficients in the codomain space."""
    if f.degree_bound > t.working_degree:
        raise DegreeExceedsWeights(
            f"function of degree bound {f.degree_bound} exceeds working degree {t.working_degree}"
        )
    _check_weights(f.space, t.domain_weights, f.degree_bound, "apply")
    x = np.zeros(t.working_degree + 1, dtype=EXT)
    x[: f.degree_bound + 1] = f.coeffs.astype(EXT) * t.domain_weights.extended_values[: f.degree_bound + 1]
    y = t.entries @ x
    c = y / t.codomain_weights.extended_values[: t.codomain_degree + 1]
    return TruncatedEntireFunction(c.astype(np.complex128), t.codomain_weights)


def power(t: OperatorMatrix, k: int) -> OperatorMatrix:
    """``t^k`` for an operator whose codomain fits back into its domain."""
    out = identity_matrix(t.domain_weights, t.working_degree)
    for _ in range(k):
        out = compose(t, out)
    return out
