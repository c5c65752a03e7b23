import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import laurent_matrices
from oracles import fourier_by_quadrature
from rho_forge.circle import SignatureStepFunction, sample_signature, signature_step_function
from rho_forge.errors import NotUnitary
from rho_forge.laurent import LaurentMatrix, det_laurent, hermitianize
from rho_forge.sampling import random_hermitian
from rho_forge.traces import (
    DelocalizedClass,
    UnitaryRep,
    center_valued_signature,
    delocalized_signature,
    l2_signature,
    trace_fragment,
    twisted_signature,
)

TWO_PI = 2 * math.pi


def step(A):
    B = hermitianize(A)
    assume(not det_laurent(B).is_zero())
    return B, signature_step_function(B)


class TestL2:
    def test_worked_example(self, worked_b):
        assert l2_signature(signature_step_function(worked_b)) == pytest.approx(1 / 3, abs=1e-9)

    def test_constant(self):
        assert l2_signature(SignatureStepFunction.constant(3, 3)) == 3

    def test_negated(self, worked_b):
        assert l2_signature(signature_step_function(-worked_b)) == pytest.approx(-1 / 3, abs=1e-9)

    @given(laurent_matrices(max_exp=2))
    def test_bounded_by_dim(self, A):
        B, f = step(A)
        assert abs(l2_signature(f)) <= B.rows + 1e-12


class TestTwisted:
    def test_trivial(self, worked_b):
        assert twisted_signature(worked_b, UnitaryRep.trivial()) == 1

    def test_minus_one(self, worked_b):
        assert twisted_signature(worked_b, UnitaryRep.character(math.pi)) == -1

    def test_two_dim_block(self, worked_b):
        assert twisted_signature(worked_b, UnitaryRep.diagonal([0.0, math.pi])) == 0

    def test_not_unitary(self):
        with pytest.raises(NotUnitary):
            UnitaryRep("bad", [[1.0, 1.0], [0.0, 1.0]])

    @pytest.mark.parametrize("seed", range(10))
    def test_diagonal_rep_is_sum_of_samples(self, seed):
        rng = np.random.default_rng(seed)
        B = random_hermitian(rng, 2, complex_coeffs=True)
        f = signature_step_function(B)
        angles = rng.uniform(0, TWO_PI, 3)
        while any(min(abs(a - b), TWO_PI - abs(a - b)) < 1e-6 for a in angles for b in f.breakpoints):
            angles = rng.uniform(0, TWO_PI, 3)
        # conjugate the diagonal rep by a random unitary: no diagonal shortcut on the twisted path
        X = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        V, _ = np.linalg.qr(X)
        U = V @ np.diag(np.exp(1j * angles)) @ V.conj().T
        expected = sum(sample_signature(B, a) for a in angles)
        assert twisted_signature(B, UnitaryRep("conj", U)) == expected


class TestDelocalized:
    def test_constant_has_no_harmonics(self):
        f = SignatureStepFunction.constant(2, 2)
        assert all(abs(delocalized_signature(f, n)) < 1e-15 for n in (-2, -1, 1, 5))

    def test_worked_example(self, worked_b):
        f = signature_step_function(worked_b)
        c1 = delocalized_signature(f, DelocalizedClass(1))
        assert c1 == pytest.approx(math.sqrt(3) / math.pi, abs=1e-9)
        # quadrature oracle, sampling B pointwise
        assert abs(c1 - fourier_by_quadrature(worked_b, 1, f.breakpoints)) < 1e-9

    def test_worked_example_is_not_2i_sqrt3(self, worked_b):
        c1 = delocalized_signature(signature_step_function(worked_b), 1)
        assert abs(c1 - 2j * math.sqrt(3)) > 1

    def test_zero_power_is_mean(self, worked_b):
        f = center_valued_signature(worked_b)
        assert delocalized_signature(f, 0) == pytest.approx(l2_signature(f), abs=1e-12)

    @given(laurent_matrices(max_exp=2), st.integers(1, 5))
    def test_conjugate_symmetry(self, A, n):
        _, f = step(A)
        assert abs(delocalized_signature(f, -n) - delocalized_signature(f, n).conjugate()) < 1e-12

    @given(laurent_matrices(max_exp=2), st.integers(1, 6))
    def test_decay_bound(self, A, n):
        B, f = step(A)
        k = max(1, len(f.breakpoints))
        assert abs(delocalized_signature(f, n)) <= 2 * B.rows / (math.pi * n) * k + 1e-12

    @given(laurent_matrices(max_exp=2), st.integers(-4, 4))
    def test_negation(self, A, n):
        B, f = step(A)
        g = signature_step_function(-B)
        assert abs(delocalized_signature(g, n) + delocalized_signature(f, n)) < 1e-12

    @pytest.mark.parametrize("seed", range(5))
    def test_against_quadrature(self, seed):
        rng = np.random.default_rng(100 + seed)
        B = random_hermitian(rng, 2, complex_coeffs=True)
        f = signature_step_function(B)
        for n in (-2, 1, 3):
            assert abs(delocalized_signature(f, n) - fourier_by_quadrature(B, n, f.breakpoints)) < 1e-9


def test_center_valued_identity():
    f = center_valued_signature(LaurentMatrix.identity(2))
    assert f.values == (2,) and f.breakpoints == ()


def test_fragment(worked_b):
    f = signature_step_function(worked_b)
    frag = trace_fragment(f, worked_b, [UnitaryRep.trivial()], [DelocalizedClass(1)])
    assert frag["twisted"] == {"trivial": 1}
    assert frag["l2"] == pytest.approx(1 / 3)
    assert frag["delocalized"]["1"][0] == pytest.approx(math.sqrt(3) / math.pi)
