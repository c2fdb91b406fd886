"""Named verification suites run by ``hardyops verify``.

Each suite checks one characterization numerically on the configured space
and returns a :class:`SuiteResult`.  Randomness comes only from the generator
handed in through :class:`SuiteContext`, so a fixed seed reproduces a run.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import diagnostics as dg
from . import operators as op
from .series import (AffineMap, TruncatedEntireFunction, compose_affine, differentiate,
                     evaluate, inner_product, kernel, monomial, multiply, polynomial)
from .weights import WeightSequence

__all__ = ["MAX_SUITE_HEADROOM", "SUITES", "SuiteContext", "SuiteResult", "run_suite"]

# largest number of degrees any suite consumes above n_eval
MAX_SUITE_HEADROOM = 2

# absolute slack for m-isometry diagonal entries whose exact value is 0
DIAG_ATOL = 1e-12


@dataclass
class SuiteContext:
    weights: WeightSequence
    n_work: int = 48
    n_eval: int = 16
    tol: float = dg.DEFAULT_TOLERANCE
    rng: np.random.Generator = field(default_factory=lambda: np.random.default_rng(0))


@dataclass
class SuiteResult:
    name: str
    statement: str
    passed: bool
    metrics: dict
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"name": self.name, "statement": self.statement, "passed": self.passed,
                "metrics": self.metrics, "notes": self.notes}


def _unit(rng, size=None):
    return np.exp(2j * np.pi * rng.random(size))


def _inside(rng, size=None, rmax=0.95):
    return rmax * rng.random(size) * _unit(rng, size)


def _holds(ok: bool) -> dg.Verdict:
    return dg.Verdict.HOLDS if ok else dg.Verdict.FAILS


def _comp(ctx: SuiteContext, a, b=0):
    return op.composition_matrix(AffineMap(a, b), ctx.weights, ctx.weights, ctx.n_work)


def _dilation_draws(ctx, count=50):
    return list(_unit(ctx.rng, count)) + list(_inside(ctx.rng, count))


def isometry_dilation(ctx: SuiteContext) -> SuiteResult:
    mus = _dilation_draws(ctx)
    agree, unit_max, inside_min = 0, 0.0, math.inf
    for mu in mus:
        rep = dg.isometry_defect(_comp(ctx, mu), ctx.n_eval, ctx.tol)
        on_circle = abs(abs(mu) - 1) < 1e-12
        agree += rep.verdict == _holds(on_circle)
        if on_circle:
            unit_max = max(unit_max, rep.defect_norm)
        else:
            inside_min = min(inside_min, rep.defect_norm)
    ok = agree == len(mus) and unit_max <= ctx.tol and inside_min >= 1e-2
    return _result("thm-isometry-dilation", ok, draws=len(mus), agreement=agree,
                   max_defect_unit_circle=unit_max, min_defect_inside=inside_min)


def unitary_dilation(ctx: SuiteContext) -> SuiteResult:
    mus = _dilation_draws(ctx)
    agree = together = 0
    worst = 0.0
    for mu in mus:
        t = _comp(ctx, mu)
        on_circle = abs(abs(mu) - 1) < 1e-12
        iso = dg._frobenius(dg.isometry_defect_matrix(t, ctx.n_eval)) <= ctx.tol
        co = dg._frobenius(dg.coisometry_defect_matrix(t, ctx.n_eval)) <= ctx.tol
        rep = dg.unitary_defect(t, ctx.n_eval, ctx.tol)
        together += iso == co
        agree += rep.verdict == _holds(on_circle)
        if on_circle:
            worst = max(worst, rep.defect_norm)
    ok = agree == together == len(mus)
    return _result("thm-unitary-dilation", ok, draws=len(mus), agreement=agree,
                   sides_agree=together, max_defect_unit_circle=worst)


def product_dilation(ctx: SuiteContext) -> SuiteResult:
    agree = total = 0
    for _ in range(100):
        mu1 = _unit(ctx.rng) if ctx.rng.random() < 0.5 else _inside(ctx.rng)
        mu2 = _unit(ctx.rng) if ctx.rng.random() < 0.5 else _inside(ctx.rng)
        expected = _holds(abs(abs(mu1) - 1) < 1e-12 and abs(abs(mu2) - 1) < 1e-12)
        t1, t2 = _comp(ctx, mu1), _comp(ctx, mu2)
        for a, b in ((t1, t2), (op.adjoint(t1), t2), (t1, op.adjoint(t2)),
                     (op.adjoint(t1), op.adjoint(t2))):
            prod = op.compose(a, b)
            for check in (dg.isometry_defect, dg.unitary_defect):
                total += 1
                agree += check(prod, ctx.n_eval, ctx.tol).verdict == expected
    return _result("thm-product-dilation", agree == total, checks=total, agreement=agree)


def isometry_affine(ctx: SuiteContext) -> SuiteResult:
    phases = (1, cmath.exp(1j * math.pi / 3), 1j, -1)
    cells = agree = 0
    for r in (0.5, 0.9, 1.0):
        for ph in phases:
            for b in (0, 0.5, 1 + 1j):
                a = r * ph
                expected = _holds(r == 1.0 and b == 0)
                t = _comp(ctx, a, b)
                cells += 1
                agree += (dg.isometry_defect(t, ctx.n_eval, ctx.tol).verdict == expected
                          and dg.unitary_defect(t, ctx.n_eval, ctx.tol).verdict == expected)
    return _result("thm-isometry-affine", agree == cells, cells=cells, agreement=agree)


def product_affine(ctx: SuiteContext) -> SuiteResult:
    agree = 0
    draws = 100
    rng = ctx.rng
    for j in range(draws):
        a1 = _unit(rng) if rng.random() < 0.6 else _inside(rng)
        a2 = _unit(rng) if rng.random() < 0.6 else _inside(rng)
        b2 = 2 * rng.random() * _unit(rng)
        b1 = -a1 * b2 if j % 3 == 0 else 2 * rng.random() * _unit(rng)
        if j % 7 == 0:
            b1 = b2 = 0
        expected = _holds(abs(abs(a1) - 1) < 1e-12 and abs(abs(a2) - 1) < 1e-12
                          and abs(a1 * b2 + b1) < 1e-12)
        prod = op.compose(_comp(ctx, a2, b2), _comp(ctx, a1, b1))
        agree += (dg.isometry_defect(prod, ctx.n_eval, ctx.tol).verdict == expected
                  and dg.unitary_defect(prod, ctx.n_eval, ctx.tol).verdict == expected)
    example = _translation_pairs(ctx)
    ok = agree == draws and all(d <= ctx.tol for d in example.values())
    return _result("thm-product-affine", ok, draws=draws, agreement=agree,
                   translation_pair_defects=example)


def _translation_pairs(ctx):
    out = {}
    for b in (1, 1 + 1j, -3):
        prod = op.compose(_comp(ctx, 1, -b), _comp(ctx, 1, b))
        out[str(b)] = dg.unitary_defect(prod, ctx.n_eval, ctx.tol).defect_norm
    return out


def product_nonisometries(ctx: SuiteContext) -> SuiteResult:
    factors_fail = True
    for b in (1, 1 + 1j, -3):
        for t in (_comp(ctx, 1, b), _comp(ctx, 1, -b)):
            factors_fail &= dg.isometry_defect(t, ctx.n_eval, ctx.tol).verdict == dg.Verdict.FAILS
    defects = _translation_pairs(ctx)
    ok = factors_fail and all(d <= ctx.tol for d in defects.values())
    return _result("ex-product-nonisometries", ok, factors_fail=factors_fail,
                   product_unitary_defects=defects)


def sum_not_isometry(ctx: SuiteContext) -> SuiteResult:
    s = op.add(_comp(ctx, 1), _comp(ctx, -1))
    g = monomial(1, ctx.weights)
    image = op.apply(s, g)
    image_zero = bool(np.all(image.coeffs == 0))
    rep = dg.isometry_defect(s, ctx.n_eval, ctx.tol)
    ok = image_zero and rep.defect_norm >= 1 and rep.verdict == dg.Verdict.FAILS
    return _result("ex-sum-not-isometry", ok, image_of_z_is_zero=image_zero,
                   norm_of_image=float(np.abs(image.coeffs).max()), isometry_defect=rep.defect_norm)


def _weighted(ctx, ups, mu):
    return op.weighted_composition_matrix(ups, AffineMap(mu), ctx.weights, ctx.n_work - 1)


def weighted_isometry(ctx: SuiteContext) -> SuiteResult:
    cells = agree = 0
    for a in (0, 0.5, 1):
        for b in (0, 0.5, 1, 1j, cmath.exp(1j * math.pi / 4), 2):
            for mu in (0.5, 0.9j, 1, 1j, cmath.exp(1j * math.pi / 5)):
                expected = _holds(abs(abs(mu) - 1) < 1e-12 and a == 0 and abs(abs(b) - 1) < 1e-12)
                t = _weighted(ctx, [b, a], mu)
                cells += 1
                agree += (dg.isometry_defect(t, ctx.n_eval, ctx.tol).verdict == expected
                          and dg.unitary_defect(t, ctx.n_eval, ctx.tol).verdict == expected)
    return _result("thm-weighted-isometry", agree == cells, cells=cells, agreement=agree)


def weighted_product(ctx: SuiteContext) -> SuiteResult:
    worst = 0.0
    for _ in range(25):
        t1 = _weighted(ctx, [_unit(ctx.rng)], _unit(ctx.rng))
        t2 = _weighted(ctx, [_unit(ctx.rng)], _unit(ctx.rng))
        for a, b in ((t1, t2), (op.adjoint(t1), op.adjoint(t2)),
                     (op.adjoint(t1), t2), (t1, op.adjoint(t2))):
            worst = max(worst, dg.unitary_defect(op.compose(a, b), ctx.n_eval, ctx.tol).defect_norm)
    return _result("thm-weighted-product", worst <= ctx.tol, max_unitary_defect=worst)


def weighted_product_nonisometries(ctx: SuiteContext) -> SuiteResult:
    t1 = _weighted(ctx, [0.5], 1j)
    t2 = _weighted(ctx, [2.0], -1j)
    d1 = dg.isometry_defect(t1, ctx.n_eval, ctx.tol).defect_norm
    d2 = dg.isometry_defect(t2, ctx.n_eval, ctx.tol).defect_norm
    prod = dg.unitary_defect(op.compose(t1, t2), ctx.n_eval, ctx.tol)
    ok = d1 >= 0.5 and d2 >= 0.5 and prod.verdict == dg.Verdict.HOLDS
    return _result("ex-weighted-product-nonisometries", ok, factor_defects=[d1, d2],
                   product_unitary_defect=prod.defect_norm)


def weighted_infeasibility(ctx: SuiteContext) -> SuiteResult:
    n_max = min(16, ctx.weights.n_max)
    sweep = dg.infeasibility_sweep(ctx.weights, n_max)
    metrics = {"grid": sweep.header, "any_feasible": sweep.any_feasible,
               "smallest_max_residual": sweep.smallest_max_residual}
    ok = not sweep.any_feasible
    if ctx.weights.kind == "fock":
        ra, rm = dg.fit_leading_equations(ctx.weights)
        rep = dg.weighted_isometry_infeasibility(ctx.weights, ra, rm, n_max)
        metrics.update(fitted_a=ra, fitted_mu_squared=rm ** 2, residual_n3=rep.residuals[2])
        ok = ok and rep.residuals[2] >= 0.2
    return _result("eq-weighted-infeasibility", ok, **metrics)


def m_isometry(ctx: SuiteContext) -> SuiteResult:
    mus = list(_unit(ctx.rng, 25)) + list((0.05 + 0.9 * ctx.rng.random(25)) * _unit(ctx.rng, 25))
    agree = total = 0
    worst = 0.0
    n = np.arange(ctx.n_eval + 1)
    for mu in mus:
        t = _comp(ctx, mu)
        iso = dg.isometry_defect(t, ctx.n_eval, ctx.tol).verdict
        for m in (1, 2, 3, 4):
            total += 1
            block = dg.m_isometry_defect_matrix(t, m, ctx.n_eval)
            agree += _holds(dg._frobenius(block) <= ctx.tol) == iso
            diag = np.diag(block).real
            expected = (abs(mu) ** (2 * n) - 1.0) ** m
            # relative 1e-10, plus an absolute allowance for targets that are exactly zero
            budget = 1e-10 * np.abs(expected) + DIAG_ATOL
            worst = max(worst, float(np.max(np.abs(diag - expected) / budget)))
    return _result("thm-m-isometry", agree == total and worst <= 1.0,
                   checks=total, agreement=agree, max_diag_error_over_budget=worst)


def _rel_err(x, ref, floor=1e-14):
    return float(np.max(np.abs(x - ref) / np.maximum(np.abs(ref), floor)))


def invertibility(ctx: SuiteContext) -> SuiteResult:
    limit = min(ctx.tol, 1e-10)
    mus = [0.5, 1j, 0.3 - 0.4j] + list(_inside(ctx.rng, 5) + 0.05)
    reps = [dg.invertibility_check(mu, ctx.weights, ctx.n_work, limit) for mu in mus]
    worst = max(max(r.left_defect, r.right_defect) for r in reps)
    return _result("thm-invertibility", worst <= limit, cases=len(mus), max_defect=worst)


def _fock_like_ratio(xi, mu, n, p, scale=1.0):
    log_fall = sum(math.log(n - j) for j in range(p))
    lm = (n - p) * math.log(abs(mu)) if n > p else 0.0
    return abs(scale) * math.exp(log_fall + lm + xi.log_values[n - p] - xi.log_values[n])


def boundedness_dilation(ctx: SuiteContext) -> SuiteResult:
    xi = ctx.weights
    n_to = min(60, xi.n_max)
    metrics, ok = {}, True
    for mu in (0.5, 1.0):
        rep = dg.boundedness_report(1, AffineMap(mu), 1, xi, (1, n_to))
        closed = np.array([_fock_like_ratio(xi, mu, n, 1) for n, _ in rep.ratios])
        err = _rel_err(np.array([r for _, r in rep.ratios]), closed)
        metrics[f"mu={mu}"] = {"trend": rep.trend.value, "sup_observed": rep.sup_observed,
                               "max_rel_error_vs_closed_form": err}
        ok &= err <= 1e-10
        if xi.kind == "fock":
            want = dg.Trend.BOUNDED_OBSERVED if mu == 0.5 else dg.Trend.GROWING_OBSERVED
            ok &= rep.trend == want
    return _result("thm-boundedness-dilation", ok, **metrics)


def _block_norm(t: op.OperatorMatrix, n_eval: int) -> float:
    return float(np.linalg.norm(t.as_complex()[:, : n_eval + 1], 2))


def cor_cphi_dp(ctx: SuiteContext) -> SuiteResult:
    xi, N = ctx.weights, ctx.n_work
    n_to = min(60, xi.n_max)
    metrics, ok = {}, True
    mu = 0.5
    for p in (1, 2):
        gen = op.generalized_matrix(p, AffineMap(mu), 1, xi, N)
        ref = op.compose(op.composition_matrix(AffineMap(mu), xi, xi, N - p),
                         op.differentiation_matrix(p, xi, N))
        ident = float(np.max(np.abs(gen.as_complex() - ref.as_complex())))
        rep = dg.boundedness_report(p, AffineMap(mu), 1, xi, (p, n_to))
        closed = np.array([_fock_like_ratio(xi, mu, n, p) for n, _ in rep.ratios])
        err = _rel_err(np.array([r for _, r in rep.ratios]), closed)
        opnorm = _block_norm(gen, ctx.n_eval)
        metrics[f"p={p}"] = {"matrix_identity_error": ident, "max_rel_error_vs_closed_form": err,
                             "sup_observed": rep.sup_observed, "block_operator_norm": opnorm,
                             "trend": rep.trend.value}
        ok &= ident <= 1e-12 and err <= 1e-10 and opnorm <= rep.sup_observed * (1 + 1e-9)
        if xi.kind == "fock":
            ok &= rep.trend == dg.Trend.BOUNDED_OBSERVED
    return _result("cor-cphi-dp", ok, **metrics)


def cor_d_cphi(ctx: SuiteContext) -> SuiteResult:
    xi, N = ctx.weights, ctx.n_work
    n_to = min(60, xi.n_max)
    metrics, ok = {}, True
    for phi in (AffineMap(0.5), AffineMap(0.5j, 0.3), AffineMap(-0.8, 0.2 - 0.1j)):
        lhs = op.compose(op.differentiation_matrix(1, xi, N), op.composition_matrix(phi, xi, xi, N))
        rhs = op.generalized_matrix(1, phi, phi.derivative, xi, N)
        ident = float(np.max(np.abs(lhs.as_complex() - rhs.as_complex())))
        metrics[f"identity_error a={phi.a} b={phi.b}"] = ident
        ok &= ident <= 1e-12
    phi = AffineMap(0.5)
    rep = dg.boundedness_report(1, phi, phi.derivative, xi, (1, n_to))
    closed = np.array([_fock_like_ratio(xi, 0.5, n, 1, phi.derivative) for n, _ in rep.ratios])
    err = _rel_err(np.array([r for _, r in rep.ratios]), closed)
    opnorm = _block_norm(op.generalized_matrix(1, phi, phi.derivative, xi, N), ctx.n_eval)
    metrics.update(max_rel_error_vs_closed_form=err, sup_observed=rep.sup_observed,
                   block_operator_norm=opnorm, trend=rep.trend.value)
    ok &= err <= 1e-10 and opnorm <= rep.sup_observed * (1 + 1e-9)
    if xi.kind == "fock":
        ok &= rep.trend == dg.Trend.BOUNDED_OBSERVED
    return _result("cor-d-cphi", ok, **metrics)


def _vec_rel(x, ref):
    return float(np.max(np.abs(x - ref)) / max(np.max(np.abs(ref)), 1e-300))


def _random_function(rng, xi, degree):
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return TruncatedEntireFunction(c, xi)


def adjoint_kernel(ctx: SuiteContext) -> SuiteResult:
    xi, N, rng = ctx.weights, ctx.n_work, ctx.rng
    worst_rep = worst_ker = worst_tail = 0.0
    for _ in range(100):
        p = 2 * math.sqrt(rng.random()) * _unit(rng)
        mu = math.sqrt(rng.random()) * _unit(rng)
        f = _random_function(rng, xi, int(rng.integers(0, 13)))
        val = evaluate(f, p)
        via_kernel = inner_product(f, kernel(p, xi, f.degree_bound), xi)
        worst_rep = max(worst_rep, abs(val - via_kernel) / (1 + abs(val)))
        img = op.apply(op.adjoint(_comp(ctx, mu)), kernel(p, xi, N))
        worst_ker = max(worst_ker, _vec_rel(img.coeffs, kernel(mu * p, xi, N).coeffs))
    for _ in range(10):
        p = 2 * math.sqrt(rng.random()) * _unit(rng)
        phi = AffineMap(math.sqrt(rng.random()) * _unit(rng), rng.random() * _unit(rng))
        cut = N - math.ceil(4 * abs(phi.b))
        img = op.apply(op.adjoint(_comp(ctx, phi.a, phi.b)), kernel(p, xi, N))
        worst_tail = max(worst_tail, _vec_rel(img.coeffs[: cut + 1],
                                               kernel(phi(p), xi, N).coeffs[: cut + 1]))
    ok = worst_rep <= 1e-9 and worst_ker <= 1e-9 and worst_tail <= 1e-9
    return _result("prop-adjoint-kernel", ok, reproducing_error=worst_rep,
                   adjoint_kernel_error=worst_ker, affine_tail_excluded_error=worst_tail)


ORACLE_DRAWS = 200
BUILDERS = ("composition", "cross-space", "multiplier", "differentiation", "weighted", "generalized")


def oracle_case(kind: str, rng: np.random.Generator, xi: WeightSequence):
    """One random ``(matrix image, series image)`` pair for a builder."""
    from .weights import scale_weights

    N = int(rng.integers(0, 13))
    f = _random_function(rng, xi, N)
    phi = AffineMap(math.sqrt(rng.random()) * _unit(rng), rng.random() * _unit(rng))
    ups = polynomial(rng.standard_normal(3) + 1j * rng.standard_normal(3), xi)
    p = int(rng.integers(0, 4))
    if kind == "composition":
        t = op.composition_matrix(phi, xi, xi, N)
        want = compose_affine(f, phi)
    elif kind == "cross-space":
        mu = (0.2 + 0.8 * rng.random()) * _unit(rng)
        target = scale_weights(xi, mu)
        t = op.composition_matrix(phi, xi, target, N)
        want = TruncatedEntireFunction(compose_affine(f, phi).coeffs, target)
    elif kind == "multiplier":
        t = op.multiplier_matrix(ups, xi, N)
        want, _ = multiply(ups, f, N + ups.degree)
    elif kind == "differentiation":
        p = min(p, N)
        t = op.differentiation_matrix(p, xi, N)
        want = differentiate(f, p)
    elif kind == "weighted":
        t = op.weighted_composition_matrix(ups, phi, xi, N)
        want, _ = multiply(ups, compose_affine(f, phi), N + ups.degree)
    elif kind == "generalized":
        p = min(p, N)
        t = op.generalized_matrix(p, phi, ups, xi, N)
        want, _ = multiply(ups, compose_affine(differentiate(f, p), phi), N - p + ups.degree)
    else:
        raise KeyError(kind)
    return op.apply(t, f), want


def oracle_equivalence(ctx: SuiteContext) -> SuiteResult:
    worst = {k: 0.0 for k in BUILDERS}
    for kind in BUILDERS:
        for _ in range(ORACLE_DRAWS):
            got, want = oracle_case(kind, ctx.rng, ctx.weights)
            n = max(got.degree_bound, want.degree_bound)
            if np.any(want.coeffs):
                err = _vec_rel(got.padded(n), want.padded(n))
            else:
                err = float(np.max(np.abs(got.coeffs)))
            worst[kind] = max(worst[kind], err)
    return _result("prop-oracle-equivalence", max(worst.values()) <= 1e-10,
                   draws_per_builder=ORACLE_DRAWS, max_rel_error=worst)


STATEMENTS = {
    "thm-isometry-dilation": "C_phi, phi(z) = mu z, |mu| <= 1: isometry iff |mu| = 1",
    "thm-unitary-dilation": "C_phi, phi(z) = mu z, |mu| <= 1: unitary iff |mu| = 1",
    "thm-product-dilation": "C_phi1 C_phi2 (and adjoint variants), dilations: isometry/unitary iff |mu1| = |mu2| = 1",
    "thm-isometry-affine": "C_phi, phi(z) = a z + b, |a| <= 1: isometry/unitary iff |a| = 1 and b = 0",
    "thm-product-affine": "C_psi C_phi, phi = a1 z + b1, psi = a2 z + b2: isometry/unitary iff |a1| = |a2| = 1 and a1 b2 + b1 = 0",
    "ex-product-nonisometries": "phi = z + b, psi = z - b, b != 0: neither factor isometric, C_psi C_phi unitary",
    "ex-sum-not-isometry": "C_z + C_{-z} sends g(z) = z to 0, so the sum of isometries is not an isometry",
    "thm-weighted-isometry": "u (f o mu z), u = a z + b, |mu| <= 1: isometry/unitary iff |mu| = 1, a = 0, |b| = 1",
    "thm-weighted-product": "products of isometric weighted composition operators (and adjoint variants) are unitary",
    "ex-weighted-product-nonisometries": "u1 = 1/2, phi1 = i z and u2 = 2, phi2 = -i z: factors not isometric, product unitary",
    "eq-weighted-infeasibility": "xi_0^2 = |a|^(2n) |mu|^(n(n-1)) xi_n^2 has no solution for all n",
    "thm-m-isometry": "C_phi, phi(z) = mu z, mu != 0, |mu| <= 1: m-isometry iff isometry",
    "thm-invertibility": "C_{mu z}: H(xi) -> H(xi mu) is invertible with inverse C_{z/mu}",
    "thm-boundedness-dilation": "ratio criterion n ||phi^(n-1)|| / xi_n for f -> f' o mu z",
    "cor-cphi-dp": "C_phi D^p bounded iff ||phi^(n-p)|| <= M xi_n / (n(n-1)...(n-p+1))",
    "cor-d-cphi": "D C_phi = generalized operator with u = phi', p = 1; bounded iff ||phi' phi^(n-1)|| <= M xi_n / n",
    "prop-adjoint-kernel": "f(p) = <f, K_p> and C_phi^* K_p = K_phi(p)",
    "prop-oracle-equivalence": "every matrix builder agrees with the function-level computation",
}


def _result(name: str, ok: bool, **metrics) -> SuiteResult:
    return SuiteResult(name, STATEMENTS[name], bool(ok), _plain(metrics))


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


SUITES: dict[str, Callable[[SuiteContext], SuiteResult]] = {
    "thm-isometry-dilation": isometry_dilation,
    "thm-unitary-dilation": unitary_dilation,
    "thm-product-dilation": product_dilation,
    "thm-isometry-affine": isometry_affine,
    "thm-product-affine": product_affine,
    "ex-product-nonisometries": product_nonisometries,
    "ex-sum-not-isometry": sum_not_isometry,
    "thm-weighted-isometry": weighted_isometry,
    "thm-weighted-product": weighted_product,
    "ex-weighted-product-nonisometries": weighted_product_nonisometries,
    "eq-weighted-infeasibility": weighted_infeasibility,
    "thm-m-isometry": m_isometry,
    "thm-invertibility": invertibility,
    "thm-boundedness-dilation": boundedness_dilation,
    "cor-cphi-dp": cor_cphi_dp,
    "cor-d-cphi": cor_d_cphi,
    "prop-adjoint-kernel": adjoint_kernel,
    "prop-oracle-equivalence": oracle_equivalence,
}


def run_suite(name: str, ctx: SuiteContext) -> SuiteResult:
    return SUITES[name](ctx)
