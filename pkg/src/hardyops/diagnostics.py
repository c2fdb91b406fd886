"""Verdicts on operator matrices.

Each defect is the Frobenius norm of a matrix that a characterization says
vanishes (``T*T - I`` for an isometry and so on), read on the leading
evaluation block only.  When an operator carries its symbols, the closed-form
answer is filled in next to the numerical one.
"""
from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import DegreeExceedsWeights, InsufficientHeadroom, SpaceMismatch, ZeroScale
from .operators import EXT, OperatorMatrix, OperatorSymbol, composition_matrix
from .series import (AffineMap, TruncatedEntireFunction, inner_product, log_norm,
                     multiply, polynomial, powers)
from .weights import WeightSequence, growth_check, scale_weights

__all__ = [
    "BoundednessReport",
    "DEFAULT_TOLERANCE",
    "DefectReport",
    "InfeasibilityReport",
    "InvertibilityReport",
    "OrthogonalityReport",
    "Trend",
    "Verdict",
    "boundedness_report",
    "closed_form_isometry",
    "closed_form_m_isometry",
    "default_tolerance",
    "fit_leading_equations",
    "infeasibility_sweep",
    "invertibility_check",
    "isometry_defect",
    "isometry_defect_matrix",
    "m_isometry_defect",
    "m_isometry_defect_matrix",
    "orthogonality_check",
    "unitary_defect",
    "weighted_isometry_infeasibility",
    "write_ratio_csv",
    "coisometry_defect_matrix",
    "SweepReport",
]

DEFAULT_TOLERANCE = 1e-9
# how close |a| must be to 1 (and b to 0) for the closed form to call it equal
CLOSED_FORM_TOL = 1e-12
INFEASIBILITY_TOL = 1e-9
INFEASIBILITY_GRID = tuple(round(0.05 * j, 2) for j in range(1, 21))


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"


class Trend(str, Enum):
    BOUNDED_OBSERVED = "bounded_observed"
    GROWING_OBSERVED = "growing_observed"
    INCONCLUSIVE = "inconclusive"


def default_tolerance(n_eval: int) -> float:
    """``1e-9`` up to a 33x33 block, growing like ``sqrt(n_eval)`` beyond."""
    return DEFAULT_TOLERANCE * max(1.0, math.sqrt(n_eval / 32))


def _frobenius(m: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(m) ** 2)))


@dataclass(frozen=True)
class DefectReport:
    kind: str
    defect_norm: float
    verdict: Verdict
    tolerance: float
    n_eval: int
    closed_form_verdict: Verdict | None = None
    agreement: bool | None = None
    m: int | None = None
    symbol: dict | None = None
    space: dict | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _verdict(ok: bool) -> Verdict:
    return Verdict.HOLDS if ok else Verdict.FAILS


def _is_one(x: complex) -> bool:
    return abs(abs(x) - 1.0) <= CLOSED_FORM_TOL


def _is_zero(x: complex) -> bool:
    return abs(x) <= CLOSED_FORM_TOL


def closed_form_isometry(symbol: OperatorSymbol | None) -> Verdict | None:
    """Isometry (equivalently unitarity) verdict from the symbols, when known.

    Covers ``C_phi`` with ``phi = a z + b``, ``|a| <= 1`` (isometric iff
    ``|a| = 1, b = 0``) and ``u * (f o mu z)`` with ``u = a z + b``,
    ``|mu| <= 1`` (isometric iff ``|mu| = 1, a = 0, |b| = 1``).  Returns
    ``None`` outside those families.
    """
    if symbol is None or symbol.order != 0:
        return None
    phi = symbol.phi
    if abs(phi.a) > 1 + CLOSED_FORM_TOL:
        return None
    u = symbol.multiplier
    if len(u) == 1:
        if _is_zero(phi.b):
            return _verdict(_is_one(phi.a) and _is_one(u[0]))
        if u[0] == 1:
            return Verdict.FAILS
        return None
    if len(u) == 2 and _is_zero(phi.b):
        return _verdict(_is_zero(u[1]) and _is_one(u[0]) and _is_one(phi.a))
    return None


def closed_form_m_isometry(symbol: OperatorSymbol | None) -> Verdict | None:
    """For ``C_{mu z}``, ``mu != 0``, ``|mu| <= 1``: m-isometric iff isometric."""
    if symbol is None or not symbol.is_pure_composition:
        return None
    phi = symbol.phi
    if not _is_zero(phi.b) or phi.a == 0 or abs(phi.a) > 1 + CLOSED_FORM_TOL:
        return None
    return _verdict(_is_one(phi.a))


def _require_square(t: OperatorMatrix) -> None:
    if not t.same_space:
        raise SpaceMismatch("defect checks need an operator from a space to itself")


def _require_headroom(t: OperatorMatrix, n_eval: int, need: int) -> None:
    if n_eval < 0:
        raise ValueError("n_eval must be nonnegative")
    if n_eval + need > t.working_degree:
        raise InsufficientHeadroom(
            f"n_eval={n_eval} plus headroom {need} exceeds working degree {t.working_degree}"
        )


def isometry_defect_matrix(t: OperatorMatrix, n_eval: int) -> np.ndarray:
    """Leading ``(n_eval+1)`` block of ``T*T - I``."""
    b = t.entries[:, : n_eval + 1]
    g = np.conj(b).T @ b
    return (g - np.eye(n_eval + 1, dtype=EXT)).astype(np.complex128)


def coisometry_defect_matrix(t: OperatorMatrix, n_eval: int) -> np.ndarray:
    """Leading block of ``TT* - I``.

    Only the columns the evaluation block can reach within the operator's
    headroom enter the sum.  Columns further out hold nothing but rounding
    residue for products of composition matrices.
    """
    width = min(t.working_degree, n_eval + t.headroom_used) + 1
    r = t.entries[: n_eval + 1, :width]
    g = r @ np.conj(r).T
    return (g - np.eye(n_eval + 1, dtype=EXT)).astype(np.complex128)


def _report(kind, t, defect, n_eval, tolerance, closed, m=None) -> DefectReport:
    verdict = _verdict(defect <= tolerance)
    return DefectReport(
        kind=kind,
        defect_norm=defect,
        verdict=verdict,
        tolerance=tolerance,
        n_eval=n_eval,
        closed_form_verdict=closed,
        agreement=None if closed is None else closed == verdict,
        m=m,
        symbol=None if t.symbol is None else t.symbol.to_dict(),
        space=t.domain_weights.descriptor(),
    )


def isometry_defect(t: OperatorMatrix, n_eval: int = 16,
                    tolerance: float | None = None) -> DefectReport:
    _require_square(t)
    _require_headroom(t, n_eval, t.headroom_used)
    tol = default_tolerance(n_eval) if tolerance is None else tolerance
    defect = _frobenius(isometry_defect_matrix(t, n_eval))
    return _report("isometry", t, defect, n_eval, tol, closed_form_isometry(t.symbol))


def unitary_defect(t: OperatorMatrix, n_eval: int = 16,
                   tolerance: float | None = None) -> DefectReport:
    """As :func:`isometry_defect`, with ``max(|T*T - I|, |TT* - I|)``."""
    _require_square(t)
    _require_headroom(t, n_eval, t.headroom_used)
    tol = default_tolerance(n_eval) if tolerance is None else tolerance
    defect = max(_frobenius(isometry_defect_matrix(t, n_eval)),
                 _frobenius(coisometry_defect_matrix(t, n_eval)))
    return _report("unitary", t, defect, n_eval, tol, closed_form_isometry(t.symbol))


def m_isometry_defect_matrix(t: OperatorMatrix, m: int, n_eval: int) -> np.ndarray:
    """Leading block of ``sum_k (-1)^(m-k) C(m,k) T*^k T^k``.

    Evaluated with the recursion ``B_j = T* B_{j-1} T - B_{j-1}``, ``B_0 = I``,
    which is algebraically the same sum but does not subtract binomially
    weighted terms of size one from each other.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m == 1:
        return isometry_defect_matrix(t, n_eval)
    N = t.working_degree
    s = np.zeros((N + 1, N + 1), dtype=EXT)
    rows = min(N, t.codomain_degree) + 1
    s[:rows] = t.entries[:rows]
    sh = np.conj(s).T
    beta = np.eye(N + 1, dtype=EXT)
    for _ in range(m):
        beta = sh @ beta @ s - beta
    return beta[: n_eval + 1, : n_eval + 1].astype(np.complex128)


def m_isometry_defect(t: OperatorMatrix, m: int, n_eval: int = 16,
                      tolerance: float | None = None) -> DefectReport:
    _require_square(t)
    _require_headroom(t, n_eval, m * t.headroom_used)
    tol = default_tolerance(n_eval) if tolerance is None else tolerance
    defect = _frobenius(m_isometry_defect_matrix(t, m, n_eval))
    return _report("m-isometry", t, defect, n_eval, tol, closed_form_m_isometry(t.symbol), m)


@dataclass(frozen=True)
class InvertibilityReport:
    mu: complex
    left_defect: float
    right_defect: float
    verdict: Verdict
    tolerance: float
    n: int
    note: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mu"] = [self.mu.real, self.mu.imag]
        return d


def invertibility_check(mu: complex, xi: WeightSequence, n: int | None = None,
                        tolerance: float = DEFAULT_TOLERANCE) -> InvertibilityReport:
    """``C_{mu z}: H(xi) -> H(xi mu)`` against ``C_{z/mu}`` in the other direction."""
    if mu == 0:
        raise ZeroScale("invertibility needs mu != 0")
    mu = complex(mu)
    scaled = scale_weights(xi, mu)
    N = xi.n_max if n is None else n
    f = composition_matrix(AffineMap(mu), xi, scaled, N)
    g = composition_matrix(AffineMap(1 / mu), scaled, xi, N)
    eye = np.eye(N + 1, dtype=EXT)
    left = _frobenius((g.entries @ f.entries - eye).astype(np.complex128))
    right = _frobenius((f.entries @ g.entries - eye).astype(np.complex128))
    note = "" if abs(mu) <= 1 else "|mu| > 1: H(xi mu) is then not contained in H(xi)"
    return InvertibilityReport(mu, left, right, _verdict(max(left, right) <= tolerance),
                               tolerance, N, note)


@dataclass(frozen=True)
class OrthogonalityReport:
    gram_offdiag_max: float
    orthogonal: bool
    n_max: int


def _symbol_polynomial(phi, xi: WeightSequence) -> TruncatedEntireFunction:
    if isinstance(phi, AffineMap):
        return phi.as_polynomial(xi)
    if isinstance(phi, TruncatedEntireFunction):
        return phi
    if np.isscalar(phi):
        return polynomial([phi], xi)
    return polynomial(list(phi), xi)


def orthogonality_check(phi, xi: WeightSequence, n_max: int) -> OrthogonalityReport:
    """Is ``{phi^0, ..., phi^n_max}`` an orthogonal family in H(xi)?"""
    p = _symbol_polynomial(phi, xi)
    if n_max * p.degree > xi.n_max:
        raise DegreeExceedsWeights(
            f"phi^{n_max} has degree {n_max * p.degree} > n_max={xi.n_max}"
        )
    pw = powers(p, n_max)
    gram = np.array([[inner_product(a, b, xi) for b in pw] for a in pw])
    off = gram - np.diag(np.diag(gram))
    offmax = float(np.max(np.abs(off))) if n_max else 0.0
    diagmax = float(np.max(np.abs(np.diag(gram))))
    return OrthogonalityReport(offmax, offmax <= 1e-10 * diagmax, n_max)


def _cosine_defect(pw: list[TruncatedEntireFunction], xi: WeightSequence) -> float:
    """Largest ``|<f_i, f_j>| / (|f_i| |f_j|)`` over ``i != j``, scale-free."""
    width = max(f.degree_bound for f in pw) + 1
    rows = []
    for f in pw:
        ln = log_norm(f, xi)
        if ln == -math.inf:
            continue
        x = f.padded(width - 1) * np.exp(xi.log_values[:width] - ln)
        rows.append(x)
    if len(rows) < 2:
        return 0.0
    x = np.array(rows)
    g = x @ np.conj(x).T
    np.fill_diagonal(g, 0)
    return float(np.max(np.abs(g)))


@dataclass(frozen=True)
class BoundednessReport:
    p: int
    ratios: tuple[tuple[int, float], ...]
    sup_observed: float
    trend: Trend
    orthogonality_defect: float
    note: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ratios"] = [list(r) for r in self.ratios]
        return d


def _falling_log(n: int, p: int) -> float:
    return sum(math.log(n - j) for j in range(p))


def _trend(r: np.ndarray) -> Trend:
    if r.size < 2:
        return Trend.INCONCLUSIVE
    q = max(2, math.ceil(r.size / 4))
    tail = r[-q:]
    slack = 1e-12 * np.maximum(np.abs(tail[:-1]), np.finfo(float).tiny)
    steps = np.diff(tail)
    if np.all(steps > slack):
        return Trend.GROWING_OBSERVED
    if np.all(steps <= slack):
        return Trend.BOUNDED_OBSERVED
    return Trend.INCONCLUSIVE


def boundedness_report(p: int, phi, upsilon, xi: WeightSequence,
                       n_range: Iterable[int] | tuple[int, int]) -> BoundednessReport:
    """Ratios ``r_n = n(n-1)...(n-p+1) ||upsilon phi^(n-p)|| / xi_n``.

    A bounded sup over all ``n >= p`` characterizes boundedness of
    ``f -> upsilon (f^(p) o phi)`` when the powers of ``phi`` are orthogonal;
    a finite range can only suggest a trend.  ``n_range`` is an iterable of
    indices or an inclusive ``(n_from, n_to)`` pair.
    """
    if isinstance(n_range, tuple) and len(n_range) == 2:
        ns = list(range(n_range[0], n_range[1] + 1))
    else:
        ns = sorted(n_range)
    if not ns:
        raise ValueError("empty n_range")
    if ns[0] < p:
        raise ValueError(f"ratios are defined for n >= p = {p}")
    f = _symbol_polynomial(phi, xi)
    u = _symbol_polynomial(upsilon, xi)
    top = ns[-1] - p
    need = u.degree + top * f.degree
    if need > xi.n_max or ns[-1] > xi.n_max:
        raise DegreeExceedsWeights(
            f"upsilon * phi^{top} has degree {need}; weights stop at n_max={xi.n_max}"
        )
    pw = powers(f, top)
    ratios = []
    for n in ns:
        prod, _ = multiply(u, pw[n - p], u.degree + (n - p) * f.degree)
        ln = log_norm(prod, xi)
        r = 0.0 if ln == -math.inf else math.exp(_falling_log(n, p) + ln - xi.log_values[n])
        ratios.append((n, r))
    r = np.array([x for _, x in ratios])
    ortho = _cosine_defect(pw, xi)
    note = "" if ortho <= 1e-10 else (
        "powers of phi are not orthogonal; the ratio criterion does not apply as stated"
    )
    return BoundednessReport(p, tuple(ratios), float(r.max()), _trend(r), ortho, note)


def write_ratio_csv(report: BoundednessReport, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "r_n"])
        for n, r in report.ratios:
            w.writerow([n, repr(r)])


@dataclass(frozen=True)
class InfeasibilityReport:
    residuals: tuple[float, ...]
    feasible: bool
    a_modulus: float
    mu_modulus: float
    note: str = ""


def weighted_isometry_infeasibility(xi: WeightSequence, a: complex, mu: complex,
                                    n_max: int = 16) -> InfeasibilityReport:
    """Residuals of ``xi_0^2 = |a|^(2n) |mu|^(n(n-1)) xi_n^2`` for ``n = 1..n_max``.

    The weighted isometry ``(a z) (f o mu z)`` would force this identity for
    every ``n``; residuals are absolute differences of logarithms.
    """
    if a == 0 or mu == 0:
        raise ZeroScale("a and mu must be nonzero")
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    xi.require(n_max)
    la, lm = math.log(abs(a)), math.log(abs(mu))
    L = xi.log_values
    res = tuple(
        float(abs(2 * L[0] - (2 * n * la + n * (n - 1) * lm + 2 * L[n]))) for n in range(1, n_max + 1)
    )
    feasible = all(r <= INFEASIBILITY_TOL for r in res)
    note = ""
    if feasible:
        g = growth_check(xi, min(5, xi.n_max))
        note = "identity satisfied; " + g.note
    return InfeasibilityReport(res, feasible, abs(a), abs(mu), note)


def fit_leading_equations(xi: WeightSequence) -> tuple[float, float]:
    """``(|a|, |mu|)`` solving the identity exactly at ``n = 1`` and ``n = 2``."""
    xi.require(2)
    L = xi.log_values
    la = L[0] - L[1]
    lm = 2 * L[0] - 4 * la - 2 * L[2]
    return math.exp(la), math.exp(lm / 2)


@dataclass(frozen=True)
class SweepReport:
    grid: tuple[float, ...]
    n_max: int
    any_feasible: bool
    smallest_max_residual: float
    header: str


def infeasibility_sweep(xi: WeightSequence, n_max: int = 16,
                        grid: tuple[float, ...] = INFEASIBILITY_GRID) -> SweepReport:
    """Run :func:`weighted_isometry_infeasibility` over ``|a|, |mu|`` in ``grid``."""
    worst = math.inf
    any_ok = False
    for ra in grid:
        for rm in grid:
            rep = weighted_isometry_infeasibility(xi, ra, rm, n_max)
            any_ok |= rep.feasible
            worst = min(worst, max(rep.residuals))
    header = f"|a|, |mu| over {{{grid[0]}, ..., {grid[-1]}}} ({len(grid)}x{len(grid)} grid), n = 1..{n_max}"
    return SweepReport(tuple(grid), n_max, any_ok, float(worst), header)
