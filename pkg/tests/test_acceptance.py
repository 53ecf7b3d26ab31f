"""Acceptance gate: every exit criterion at its stated tolerance.

Each test prints one pass/fail line (run with `pytest -s` to see them all)
and enforces its runtime budget.  Tolerances are pinned here, not
calibrated elsewhere.
"""

import math
import time

import numpy as np
import pytest

from oplab import quad
from oplab.bergman import (
    column_integral,
    default_probe_grid,
    kernel_row_integral,
    reproduce_check,
    tplus_exact_norm,
    apply_Tplus,
)
from oplab.funcdsl import func1d, func2d
from oplab.hilbert import (
    OperatorParams,
    WeightedSpaceSpec,
    apply_H_adjoint,
    bilinear_pairing,
    dilation_residual,
    extremal_quotient,
    growth_exponent,
    hilbert_verdict,
    image_norm,
    sharp_norm,
    solve_gamma,
    source_window_holds,
    target_window_holds,
    weighted_lp_norm,
)
from oplab.bergman import mixed_norm, MixedNormSpec
from oplab.quad import SingularityHints, integrate_real_line, integrate_semiaxis
from oplab.schur import find_certificate, verify_certificate
from oplab.specfun import beta

P = OperatorParams


def _line(num: int, label: str, ok: bool, elapsed: float, budget: float):
    status = "PASS" if ok and elapsed <= budget else "FAIL"
    print(f"[{status}] criterion {num}: {label} ({elapsed:.1f}s of {budget:.0f}s budget)")
    assert ok, f"criterion {num} failed: {label}"
    assert elapsed <= budget, f"criterion {num} exceeded its {budget}s budget ({elapsed:.1f}s)"


def test_criterion_1_classical_sharp_norm_and_extremal():
    t0 = time.perf_counter()
    ok = True
    for p in (4.0 / 3.0, 2.0, 4.0):
        space = WeightedSpaceSpec(p, 0.0)
        params = P(0.0, 0.0, 1.0)
        sharp = sharp_norm(space, params)
        ok &= abs(sharp / (math.pi / math.sin(math.pi / p)) - 1.0) <= 1e-12
        quotient = extremal_quotient(space, params, 1e-3)
        ok &= sharp - 0.02 <= quotient <= sharp + 1e-6
    _line(1, "classical sharp norm pi/sin(pi/p) and extremal quotient band",
          ok, time.perf_counter() - t0, 60.0)


def test_criterion_2_beta_oracle():
    t0 = time.perf_counter()
    rng = np.random.default_rng(20260810)
    ok = True
    for _ in range(100):
        m = rng.uniform(0.1, 10.0)
        n = rng.uniform(0.1, 10.0)
        got = integrate_semiaxis(lambda u: u ** (m - 1.0) * (1.0 + u) ** (-(m + n)),
                                 SingularityHints((), m - 1.0, n + 1.0), 1e-10)
        ok &= abs(float(got) / beta(m, n) - 1.0) <= 1e-9
    _line(2, "Beta function vs semiaxis quadrature (100 random pairs, 1e-9)",
          ok, time.perf_counter() - t0, 30.0)


def test_criterion_3_kernel_row_integral():
    t0 = time.perf_counter()
    ok = True
    for alpha in (2.0, 3.0, 4.5):
        for y in (0.5, 1.0, 2.0):
            direct = float(integrate_real_line(
                lambda x: (x * x + y * y) ** (-alpha / 2.0), 1e-10,
                breakpoints=(0.0,), decay_exponent=alpha))
            ok &= abs(direct / kernel_row_integral(alpha, y) - 1.0) <= 1e-8
    _line(3, "kernel row integral vs direct quadrature (1e-8)",
          ok, time.perf_counter() - t0, 10.0)


def test_criterion_4_tplus_linf_norm():
    t0 = time.perf_counter()
    one = func2d("1+0*x+0*y")
    ok = True
    for al, be, ga in [(1.0, 0.0, 2.0), (0.5, -0.5, 1.0)]:
        expect = tplus_exact_norm("linf", P(al, be, ga))
        vals = [apply_Tplus(P(al, be, ga), one, z, 1e-6) for z in default_probe_grid()]
        ok &= max(vals) / min(vals) - 1.0 <= 1e-4
        ok &= all(abs(v / expect - 1.0) <= 5e-3 for v in vals)
    _line(4, "T+ of 1 constant over 3x3 grid and equal to B(1/2,g/2)B(b+1,a)",
          ok, time.perf_counter() - t0, 120.0)


def test_criterion_5_tplus_l1_norm():
    t0 = time.perf_counter()
    params = P(0.0, 1.0, 2.0)
    expect = tplus_exact_norm("l1a", params, a=0.0)
    probes = [complex(-1.0, 0.5), complex(0.0, 1.0), complex(1.0, 2.0),
              complex(2.0, 0.7), complex(-0.5, 1.5)]
    vals = [column_integral(params, 0.0, w, 1e-6) for w in probes]
    sup = max(vals)
    ok = abs(sup / expect - 1.0) <= 5e-3
    _line(5, "L1_a column-integral sup equals B(1/2,g/2)B(b-a,a+a+1) (0.5%)",
          ok, time.perf_counter() - t0, 120.0)


def test_criterion_6_bergman_reproduction():
    t0 = time.perf_counter()
    rows = reproduce_check(0.0, 3, tol=1e-6)
    ok = len(rows) == 5 and max(r["abs_error"] for r in rows) <= 1e-4
    _line(6, "projection P0 fixes (i/(z+i))^3 at 5 points (1e-4 absolute)",
          ok, time.perf_counter() - t0, 120.0)


def test_criterion_7_divergence_exponents():
    t0 = time.perf_counter()
    ok = True
    for gamma, e in ((0.5, 0.5), (2.0, -1.0), (1.0, 0.0)):
        slope = growth_exponent(2.0, 2.0, 0.0, 0.0, P(0.0, 0.0, gamma))
        tol = 0.02 * abs(e) if e != 0.0 else 0.02
        ok &= abs(slope - e) <= tol
    _line(7, "dilation growth exponents match -(g-a-b-1-(b+1)/q+(a+1)/p) (2%)",
          ok, time.perf_counter() - t0, 60.0)


CORPUS_20 = [
    "ind(1,2)", "ind(2,3)", "ind(0.5,4)",
    "ind(0.25,0.75)+ind(1.5,2.5)", "2*ind(0.1,0.3)+ind(2,7)",
    "x*ind(0,1)", "x^0.5*ind(0,1)+exp(-x)*ind(1,inf)",
    "exp(-x)", "x*exp(-2*x)", "x^2*exp(-x)",
    "1/(1+x)^2", "x/(1+x)^3", "x^0.5/(1+x)^2",
    "x^(-0.2)*ind(0,1)", "x^(-2)*ind(1,inf)", "x^(-1.5)*ind(1,inf)",
    "exp(-x)/(1+x)", "ind(0.5,1)+x^(-3)*ind(1,inf)",
    "abs(x-1)*ind(0.5,1.5)", "x^0.3/(1+x)^3",
]


def test_criterion_8_certificate_suite():
    t0 = time.perf_counter()
    ok = True

    # 10^3 random accepted tuples: construction succeeds and re-verifies
    rng = np.random.default_rng(8)
    for _ in range(1000):
        p = rng.uniform(1.1, 4.0)
        q = p + rng.uniform(0.0, 2.0)
        a = rng.uniform(-0.9, 1.5)
        b = rng.uniform(-0.9, 1.5)
        be = (a + 1.0) / p - 1.0 + rng.uniform(0.05, 1.0)
        al = -(b + 1.0) / q + rng.uniform(0.05, 1.0)
        params = P(al, be, solve_gamma(p, q, a, b, al, be))
        ok &= hilbert_verdict(p, q, a, b, params).bounded
        cert = find_certificate(p, q, a, b, params)
        rep = verify_certificate(cert, p, q, a, b, params, n_samples=3, tol=1e-8)
        ok &= rep.passed

    # the classical certificate bound simplifies analytically to 2 sqrt(pi)
    classical = find_certificate(2.0, 2.0, 0.0, 0.0, P(0, 0, 1))
    ok &= abs(classical.bound / (2.0 * math.sqrt(math.pi)) - 1.0) <= 1e-10

    # norm domination on a 20-function corpus
    tuples = [
        (2.0, 2.0, 0.0, 0.0, P(0.0, 0.0, 1.0)),
        (2.0, 3.0, 0.2, -0.3, P(0.4, 0.3, solve_gamma(2.0, 3.0, 0.2, -0.3, 0.4, 0.3))),
        (1.5, 1.5, 0.5, 0.5, P(0.25, 0.6, 1.85)),
    ]
    for (p, q, a, b, params) in tuples:
        cert = find_certificate(p, q, a, b, params)
        space = WeightedSpaceSpec(p, a)
        for src in CORPUS_20:
            f = func1d(src)
            lhs = image_norm(params, f, q, b, 1e-9)
            rhs = cert.bound * weighted_lp_norm(f, space, 1e-10)
            ok &= lhs <= rhs * (1.0 + 1e-6)
    _line(8, "certificate suite: 1000 random tuples + corpus domination + 2*sqrt(pi)",
          ok, time.perf_counter() - t0, 600.0)


def test_criterion_9_property_suites():
    t0 = time.perf_counter()
    ok = True

    # window equivalence under the balance relation: 10^4 tuples, no counterexample
    rng = np.random.default_rng(9)
    for _ in range(10_000):
        p = rng.uniform(1.0, 5.0)
        q = p + rng.uniform(0.0, 3.0)
        a = rng.uniform(-0.99, 3.0)
        b = rng.uniform(-0.99, 3.0)
        al = rng.uniform(-2.0, 2.0)
        be = rng.uniform(-2.0, 2.0)
        params = P(al, be, solve_gamma(p, q, a, b, al, be))
        ok &= source_window_holds(p, a, params) == target_window_holds(q, b, params)

    # dilation residuals on the corpus
    dilation_cases = [
        (P(0.0, 0.0, 1.0), ("ind(1,2)", "ind(0.5,3)", "exp(-x)", "1/(1+x)^2")),
        (P(0.5, 0.25, 1.75), ("ind(1,2)", "x^0.5*ind(0,1)+exp(-x)*ind(1,inf)")),
    ]
    for params, corpus in dilation_cases:
        for src in corpus:
            for R in (0.5, 2.0, 3.0):
                res = dilation_residual(params, func1d(src), R, (0.5, 1.0, 3.0), tol=1e-10)
                ok &= res <= 1e-8

    # duality residuals: <H f, g>_b == <f, H* g>_a
    duality_cases = [
        (P(0.0, 0.0, 1.0), 0.0, 0.0, "ind(1,2)", "ind(2,3)"),
        (P(0.0, 0.0, 1.0), 0.0, 0.0, "x^0.5*ind(0,1)", "ind(0.5,2)"),
        (P(0.3, 0.2, 1.5), 0.1, 0.2, "ind(1,2)", "ind(0.5,1.5)"),
    ]
    for params, a, b, fsrc, gsrc in duality_cases:
        f, g = func1d(fsrc), func1d(gsrc)
        lhs = bilinear_pairing(params, f, g, b, 1e-10)

        def outer(y, g=g, f=f, params=params, a=a, b=b):
            vals = np.array([apply_H_adjoint(params, a, b, g, float(t), 1e-11) for t in y])
            return f(y) * vals * y ** a

        rhs = float(quad.integrate_semiaxis(outer, SingularityHints(f.breakpoints, f.left_exponent + a), 1e-10))
        ok &= abs(lhs - rhs) / (1.0 + abs(rhs)) <= 1e-8

    # mixed-norm dilation law to 1e-6
    corpus_2d = [
        func2d("ind(-0.25,0.25)*ind(y,1,2)"),
        func2d("ind(-1,1)*ind(y,0.5,1)*y"),
        func2d("ind(-0.5,0.5)*ind(y,1,3)*abs(x)"),
    ]
    for f in corpus_2d:
        for (pp, qq, nu) in [(2.0, 2.0, 0.0), (2.0, 3.0, 0.5), (1.5, 2.0, 0.0)]:
            spec = MixedNormSpec(pp, qq, nu)
            base = mixed_norm(f, spec, 1e-8)
            for R in (2.0, 0.5):
                got = mixed_norm(f.dilate(R), spec, 1e-8)
                predict = R ** (-(nu + 1.0) / qq - 1.0 / pp) * base
                ok &= abs(got / predict - 1.0) <= 1e-6

    _line(9, "window equivalence, dilation, duality, mixed-norm dilation suites",
          ok, time.perf_counter() - t0, 600.0)
