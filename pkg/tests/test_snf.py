import numpy as np
import pytest
from hypothesis import given

from conftest import laurent_matrices
from rho_forge.laurent import LaurentMatrix, LaurentPoly, Z, congruence, det_laurent
from rho_forge.sampling import random_elementary, random_hermitian, random_laurent_matrix
from rho_forge.snf import InvariantFactors, homology_compare, snf

P = LaurentPoly


def check_snf(M):
    U, D, V, inv = snf(M)
    assert U @ M @ V == D
    assert det_laurent(U).is_unit() and det_laurent(V).is_unit()
    diag = [D[i, i] for i in range(min(D.shape))]
    assert all(D[i, j].is_zero() for i in range(D.rows) for j in range(D.cols) if i != j)
    nonzero = [d for d in diag if d]
    assert diag[: len(nonzero)] == nonzero  # zeros trail
    for d in nonzero:
        assert d.min_exp == 0 and d.leading == 1
    for a, b in zip(nonzero, nonzero[1:]):
        assert not _rem(b, a)
    assert inv.kernel_rank + len(nonzero) == M.cols
    assert list(inv.factors) == [d for d in nonzero if not d.is_unit()]
    return inv


def _rem(b, a):
    from rho_forge.laurent import poly_divmod

    return poly_divmod(b, a)[1]


class TestExamples:
    def test_diag(self):
        inv = snf(LaurentMatrix.diagonal([1, Z - 1])).invariants
        assert inv == InvariantFactors(0, (Z - 1,))

    def test_worked_example(self, worked_b):
        inv = check_snf(worked_b)
        assert inv == InvariantFactors(0, (Z * Z + Z + 1,))

    def test_zero(self):
        inv = check_snf(LaurentMatrix.zeros(2, 3))
        assert inv == InvariantFactors(3, ())

    def test_non_coprime_diagonal(self):
        # diag(z-1, z+1) ~ diag(1, z^2-1)
        inv = check_snf(LaurentMatrix.diagonal([Z - 1, Z + 1]))
        assert inv.factors == (Z * Z - 1,)

    def test_units_vanish(self):
        assert check_snf(LaurentMatrix.diagonal([Z ** 3, LaurentPoly.monomial(-2, 5)])).factors == ()


class TestRandom:
    @given(laurent_matrices(max_exp=1))
    def test_square(self, M):
        inv = check_snf(M)
        d = det_laurent(M)
        if inv.kernel_rank == 0:
            prod = LaurentPoly(1)
            for f in inv.factors:
                prod = prod * f
            monic, _ = d.normalized()
            assert monic == prod
        else:
            assert d.is_zero()

    @pytest.mark.parametrize("shape", [(2, 3), (3, 2), (1, 4), (4, 1)])
    def test_rectangular(self, rng, shape):
        for _ in range(3):
            check_snf(random_laurent_matrix(rng, *shape, max_exp=1))

    def test_idempotent(self, rng):
        M = random_laurent_matrix(rng, 3, max_exp=1)
        _, D, _, inv = snf(M)
        assert snf(D).invariants == inv

    @pytest.mark.parametrize("seed", range(8))
    def test_congruence_invariant(self, seed):
        rng = np.random.default_rng(seed)
        B = random_hermitian(rng, 3, max_exp=1)
        T = random_elementary(rng, 3)
        assert snf(congruence(B, T)).invariants == snf(B).invariants


class TestHomologyCompare:
    def test_negation(self, worked_b):
        assert homology_compare(worked_b, -worked_b)

    def test_sign_flip(self):
        p, q = P({1: 1, 0: 1, -1: 1}), P({1: 1, 0: -3, -1: 1})
        assert homology_compare(LaurentMatrix.diagonal([p, q]), LaurentMatrix.diagonal([-p, q]))

    def test_distinct(self):
        assert not homology_compare(
            LaurentMatrix.diagonal([Z - 1, 1]), LaurentMatrix.diagonal([(Z - 1) ** 2, 1])
        )
