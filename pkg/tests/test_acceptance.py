"""Exit criteria.  Each test appends one PASS/FAIL line that is printed in the
pytest terminal summary (section "acceptance criteria")."""

import math
import time
from fractions import Fraction

import numpy as np
from scipy import integrate

from conftest import ACCEPTANCE_LINES
from rho_forge.circle import sample_signature, signature_step_function
from rho_forge.eta import eta_heat_integral
from rho_forge.induction import ClassIntersection, induced_delocalized_signature
from rho_forge.laurent import LaurentMatrix, LaurentPoly, congruence, det_laurent, hermitianize
from rho_forge.reports import build_rho_report, compare_sign_flip_family
from rho_forge.sampling import random_elementary, random_hermitian, random_laurent_matrix
from rho_forge.snf import snf
from rho_forge.traces import UnitaryRep, delocalized_signature, l2_signature, twisted_signature

TWO_PI = 2 * math.pi
WORKED = LaurentPoly({1: 1, 0: 1, -1: 1})
CASES = 100


def record(number, title, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}" + (f" ({detail})" if detail else ""))
    assert ok, detail


def off_breakpoints(rng, f, k=1, gap=1e-6):
    while True:
        t = rng.uniform(0, TWO_PI, k)
        if all(min(abs(a - b), TWO_PI - abs(a - b)) > gap for a in t for b in f.breakpoints):
            return t


def test_1_worked_example():
    t0 = time.perf_counter()
    A = LaurentMatrix([[WORKED]])
    B = hermitianize(A)
    f = signature_step_function(B)
    l2 = l2_signature(f)
    sgn1 = twisted_signature(B, UnitaryRep.trivial())
    report = build_rho_report(A, [(UnitaryRep.trivial(), UnitaryRep.trivial())], [1])
    elapsed = time.perf_counter() - t0

    bp_ok = len(f.breakpoints) == 2 and np.allclose(f.breakpoints, [TWO_PI / 3, 2 * TWO_PI / 3], atol=1e-8, rtol=0)
    values_ok = f.value_at(0.0) == 1 and sorted(f.values) == [-1, 1]
    ok = (
        bp_ok
        and values_ok
        and abs(l2 - 1 / 3) <= 1e-9
        and sgn1 == 1
        and abs(report.l2_rho_diff + 2 / 3) <= 1e-9
        and elapsed < 1.0
    )
    record(1, "worked example A = z + 1/z + 1", ok,
           f"bps={f.breakpoints}, values={f.values}, l2={l2:.12g}, sgn_1={sgn1}, "
           f"rho={report.l2_rho_diff:.12g}, {elapsed:.3f}s")


def _random_spectrum_matrix(rng, n):
    """Hermitian matrix with prescribed eigenvalues, magnitudes log-uniform in
    [1e-3, 1] times a random scale; at least one sits exactly at the 1e-3 ratio."""
    mags = 10 ** rng.uniform(-3, 0, n)
    mags[rng.integers(n)] = 1e-3
    mags[rng.integers(n)] = 1.0
    if n == 1:
        mags[0] = 1.0
    ev = mags * rng.choice([-1, 1], n) * 10 ** rng.uniform(-2, 2)
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    V, _ = np.linalg.qr(X)
    return (V * ev) @ V.conj().T


def test_2_eta_equals_signature():
    rng = np.random.default_rng(2)
    t0 = time.perf_counter()
    worst = 0.0
    failures = 0
    for i in range(200):
        n = 1 + i % 8
        if i % 2:
            H = _random_spectrum_matrix(rng, n)
        else:
            while True:
                X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                H = X + X.conj().T
                ev = np.abs(np.linalg.eigvalsh(H))
                if ev.min() >= 1e-3 * ev.max():
                    break
        ev = np.linalg.eigvalsh(H)
        sig = int((ev > 0).sum() - (ev < 0).sum())
        dev = abs(eta_heat_integral(H, 1e-6, method="trace").value - sig)
        worst = max(worst, dev)
        failures += dev > 1e-6
    elapsed = time.perf_counter() - t0
    record(2, "heat-kernel eta = signature on 200 random Hermitian matrices", failures == 0 and elapsed < 30,
           f"max dev {worst:.3e}, {failures} failures, {elapsed:.2f}s")


def _quadrature_coefficients(B, breakpoints, ns):
    """All Fourier coefficients by adaptive vector quadrature of the pointwise
    signature of B(e^{it}); independent of the closed-form arc sums."""
    ns = np.asarray(ns)
    edges = [0.0] + [b for b in breakpoints if 0 < b < TWO_PI] + [TWO_PI]

    def g(t):
        s = sample_signature(B, t)
        return np.concatenate([s * np.cos(ns * t), -s * np.sin(ns * t)])

    total = np.zeros(2 * len(ns))
    for a, b in zip(edges, edges[1:]):
        if b - a > 1e-14:
            total += integrate.quad_vec(g, a, b, epsabs=1e-13, epsrel=0)[0]
    return (total[: len(ns)] + 1j * total[len(ns):]) / TWO_PI


def test_3_delocalized_against_quadrature():
    rng = np.random.default_rng(3)
    ns = list(range(-3, 4))
    worst = 0.0
    for i in range(50):
        B = random_hermitian(rng, 1 + i % 3, max_exp=3, complex_coeffs=bool(i % 2))
        f = signature_step_function(B)
        closed = np.array([delocalized_signature(f, n) for n in ns])
        worst = max(worst, float(np.abs(closed - _quadrature_coefficients(B, f.breakpoints, ns)).max()))
    Bw = hermitianize(LaurentMatrix([[WORKED]]))
    c1 = delocalized_signature(signature_step_function(Bw), 1)
    c1_ok = abs(c1 - math.sqrt(3) / math.pi) <= 1e-9
    record(3, "closed-form Fourier coefficients vs quadrature (n = -3..3, 50 matrices)",
           worst <= 1e-9 and c1_ok, f"max dev {worst:.3e}, worked c_1={c1:.12g}")


def _property_cases(seed, real=False, n_max=3):
    rng = np.random.default_rng(seed)
    for i in range(CASES):
        yield rng, random_hermitian(rng, 1 + i % n_max, max_exp=2, complex_coeffs=not real)


def test_4_property_suite():
    failures = {}

    def check(name, cond):
        failures.setdefault(name, 0)
        failures[name] += not cond

    for rng, B in _property_cases(40):
        T = random_elementary(rng, B.rows)
        f, g = signature_step_function(B), signature_step_function(congruence(B, T))
        check("congruence", len(f.breakpoints) == len(g.breakpoints)
              and np.allclose(f.breakpoints, g.breakpoints, atol=1e-6) and f.values == g.values)
    for _, B in _property_cases(41):
        f = signature_step_function(B)
        check("parity", all((v - B.rows) % 2 == 0 for v in f.values))
    for _, B in _property_cases(42):
        f, g = signature_step_function(B), signature_step_function(-B)
        check("negation", g.breakpoints == f.breakpoints and g.values == tuple(-v for v in f.values))
    for rng, B1 in _property_cases(43, n_max=2):
        B2 = random_hermitian(rng, 1 + int(rng.integers(2)), max_exp=2, complex_coeffs=True)
        f = signature_step_function(B1.direct_sum(B2))
        g = signature_step_function(B1) + signature_step_function(B2)
        check("direct sum", len(f.breakpoints) == len(g.breakpoints)
              and np.allclose(f.breakpoints, g.breakpoints, atol=1e-8) and f.values == g.values)
    for rng, B in _property_cases(44, real=True):
        f = signature_step_function(B)
        ts = off_breakpoints(rng, f, 5)
        check("evenness", all(sample_signature(B, t) == sample_signature(B, TWO_PI - t) for t in ts)
              and all(f.value_at(t) == f.value_at(TWO_PI - t) for t in ts))
    for _, B in _property_cases(45):
        f = signature_step_function(B)
        check("conjugate symmetry", all(
            abs(delocalized_signature(f, -n) - delocalized_signature(f, n).conjugate()) <= 1e-12
            for n in range(1, 6)))
    for rng, B in _property_cases(46):
        c = Fraction(int(rng.integers(1, 50)), int(rng.integers(1, 50)))
        f, g = signature_step_function(B), signature_step_function(B * c)
        check("positive scaling", np.allclose(f.breakpoints, g.breakpoints, atol=1e-9) and f.values == g.values)

    total = sum(failures.values())
    record(4, f"property suite ({len(failures)} properties x {CASES} cases)", total == 0,
           ", ".join(f"{k}: {v} fail" for k, v in failures.items()))


def test_5_sign_flip_family():
    t0 = time.perf_counter()
    cmp = compare_sign_flip_family([WORKED], [-1])
    elapsed = time.perf_counter() - t0
    record(5, "sign-flip family [z + 1/z + 1], flip -1", cmp.homology_equal and cmp.distinguishable and elapsed < 1,
           f"homology_equal={cmp.homology_equal}, distinguishable={cmp.distinguishable}, "
           f"l2 diffs {cmp.first.l2_rho_diff:.12g} vs {cmp.second.l2_rho_diff:.12g}, {elapsed:.3f}s")


def test_6_snf():
    rng = np.random.default_rng(6)
    bad = {"UMV=D": 0, "det": 0, "congruence": 0}
    for i in range(100):
        n = 1 + i % 4
        m = n if i % 5 else 1 + int(rng.integers(4))
        M = random_laurent_matrix(rng, n, m, max_exp=1, complex_coeffs=bool(i % 3 == 0))
        U, D, V, inv = snf(M)
        bad["UMV=D"] += not (U @ M @ V == D and det_laurent(U).is_unit() and det_laurent(V).is_unit())
        if n == m:
            d = det_laurent(M)
            prod = LaurentPoly(1)
            for fac in inv.factors:
                prod = prod * fac
            ok = d.is_zero() if inv.kernel_rank else d == d.normalized()[1] * prod
            bad["det"] += not ok
            T = random_elementary(rng, n)
            bad["congruence"] += snf(T.star() @ M @ T).invariants != inv
    record(6, "Smith normal form on 100 random matrices", sum(bad.values()) == 0,
           ", ".join(f"{k}: {v} fail" for k, v in bad.items()))


def test_7_induction():
    rng = np.random.default_rng(7)
    ok = True
    worst = 0.0
    cases = [hermitianize(LaurentMatrix([[WORKED]]))]
    cases += [random_hermitian(rng, 1 + i % 3, max_exp=2, complex_coeffs=False) for i in range(50)]
    for B in cases:
        f = signature_step_function(B)
        ok &= induced_delocalized_signature(f, ClassIntersection("e", frozenset({0}))) == l2_signature(f)
        v = induced_delocalized_signature(f, ClassIntersection("<g>", frozenset({1, -1})))
        dev = max(abs(v.imag), abs(v.real - 2 * delocalized_signature(f, 1).real))
        worst = max(worst, dev)
    record(7, "induction: {0} -> L2 exactly, {1,-1} -> 2 Re c_1", ok and worst <= 1e-12, f"max dev {worst:.1e}")
