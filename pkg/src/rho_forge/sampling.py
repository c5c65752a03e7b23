"""Seeded random inputs for experiments, the CLI and the test-suite."""

from __future__ import annotations

import numpy as np

from .laurent import GaussianRational, HermitianLaurentMatrix, LaurentMatrix, LaurentPoly, hermitianize


def random_laurent_poly(
    rng: np.random.Generator,
    max_exp: int = 2,
    coeff_range: int = 3,
    complex_coeffs: bool = False,
    density: float = 0.6,
) -> LaurentPoly:
    coeffs = {}
    for k in range(-max_exp, max_exp + 1):
        if rng.random() < density:
            re = int(rng.integers(-coeff_range, coeff_range + 1))
            im = int(rng.integers(-coeff_range, coeff_range + 1)) if complex_coeffs else 0
            coeffs[k] = GaussianRational(re, im)
    return LaurentPoly(coeffs)


def random_laurent_matrix(rng: np.random.Generator, n: int, m: int | None = None, **kw) -> LaurentMatrix:
    m = n if m is None else m
    return LaurentMatrix([[random_laurent_poly(rng, **kw) for _ in range(m)] for _ in range(n)])


def random_hermitian(
    rng: np.random.Generator, n: int, nonsingular: bool = True, attempts: int = 50, **kw
) -> HermitianLaurentMatrix:
    """``A + A*`` for a random ``A``; redrawn until ``det`` is not identically zero."""
    from .laurent import det_laurent

    for _ in range(attempts):
        B = hermitianize(random_laurent_matrix(rng, n, **kw))
        if not nonsingular or not det_laurent(B).is_zero():
            return B
    raise RuntimeError("could not draw a generically nonsingular matrix")


def random_elementary(rng: np.random.Generator, n: int, max_exp: int = 1) -> LaurentMatrix:
    """Elementary matrix ``I + p E_ij`` (i != j) times a random monomial unit on
    the diagonal; its determinant is a unit of the Laurent ring."""
    rows = [[LaurentPoly(int(i == j)) for j in range(n)] for i in range(n)]
    if n > 1:
        i, j = rng.choice(n, size=2, replace=False)
        rows[i][j] = random_laurent_poly(rng, max_exp=max_exp, coeff_range=2)
    k = int(rng.integers(n))
    rows[k][k] = LaurentPoly.monomial(int(rng.integers(-1, 2)), int(rng.choice([-2, -1, 1, 2])))
    return LaurentMatrix(rows)


def random_hermitian_numeric(rng: np.random.Generator, n: int, min_gap: float = 1e-3) -> np.ndarray:
    """Random complex Hermitian matrix whose smallest |eigenvalue| is at least
    ``min_gap`` times its spectral norm."""
    while True:
        X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        H = X + X.conj().T
        ev = np.abs(np.linalg.eigvalsh(H))
        if ev.min() >= min_gap * ev.max():
            return H
