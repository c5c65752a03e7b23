"""Exact Laurent polynomials and matrices over the group ring of the integers.

Elements of the group ring of Z are Laurent polynomials in one variable ``z``.
Coefficients are Gaussian rationals so that everything stays exact; the only
lossy operations are the evaluations :func:`evaluate` and
:func:`substitute_unitary`, which return complex numpy arrays.

The group-ring involution sends ``sum a_k z^k`` to ``sum conj(a_k) z^-k``.
"""

from __future__ import annotations

import json
import numbers
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import MatrixFormatError, NonSquare, NotHermitian, NotInvertible, NotUnitary

__all__ = [
    "GaussianRational",
    "LaurentPoly",
    "LaurentMatrix",
    "HermitianLaurentMatrix",
    "Z",
    "involute",
    "star",
    "hermitianize",
    "evaluate",
    "substitute_unitary",
    "det_laurent",
    "congruence",
    "poly_divmod",
    "poly_gcd",
    "exact_div",
    "matrix_from_json",
    "matrix_to_json",
    "load_matrix",
    "dump_matrix",
]


class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("cannot combine a GaussianRational with an imaginary part")
            re, im = re.re, re.im
        for part in (re, im):
            if isinstance(part, bool) or not isinstance(part, (int, Fraction)):
                raise TypeError(f"exact rational expected, got {type(part).__name__}")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        return cls(value)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imag = "i" if mag == 1 else f"{mag}i"
        return f"{self.re}{sign}{imag}"


GaussianRational.I = GaussianRational(0, 1)  # type: ignore[attr-defined]

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


class LaurentPoly:
    """Laurent polynomial ``sum c_k z^k`` with Gaussian-rational coefficients.

    Zero coefficients are never stored, so ``==`` is semantic equality.

    >>> p = LaurentPoly({1: 2, 0: 2, -1: 2})
    >>> str(p)
    '2*z + 2 + 2*z^-1'
    >>> p.involute() == p
    True
    """

    __slots__ = ("_terms", "_numeric")

    def __init__(self, coeffs=None):
        terms: dict[int, GaussianRational] = {}
        if coeffs is None:
            pass
        elif isinstance(coeffs, LaurentPoly):
            terms = dict(coeffs._terms)
        elif isinstance(coeffs, Mapping):
            for k, c in coeffs.items():
                if isinstance(k, bool) or not isinstance(k, numbers.Integral):
                    raise TypeError(f"exponents must be integers, got {k!r}")
                c = GaussianRational.coerce(c)
                if c:
                    terms[int(k)] = terms.get(int(k), _ZERO) + c
        else:
            c = GaussianRational.coerce(coeffs)
            if c:
                terms[0] = c
        object.__setattr__(self, "_terms", tuple(sorted((k, c) for k, c in terms.items() if c)))
        object.__setattr__(self, "_numeric", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # constructors
    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> LaurentPoly:
        return cls({exponent: coeff})

    @classmethod
    def coerce(cls, value) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            return value
        return cls(value)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, low: int = 0) -> LaurentPoly:
        """Build from a dense coefficient list starting at exponent ``low``."""
        return cls({low + k: c for k, c in enumerate(coeffs)})

    # structure
    @property
    def coeffs(self) -> dict[int, GaussianRational]:
        return dict(self._terms)

    @property
    def terms(self) -> tuple[tuple[int, GaussianRational], ...]:
        return self._terms

    def coefficient(self, k: int) -> GaussianRational:
        for e, c in self._terms:
            if e == k:
                return c
        return _ZERO

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """Units of the Laurent ring over a field are the nonzero monomials."""
        return len(self._terms) == 1

    def is_real(self) -> bool:
        return all(c.im == 0 for _, c in self._terms)

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return self._terms[-1][0]

    @property
    def span(self) -> int:
        """``max_exp - min_exp``; the degree of the polynomial after clearing units."""
        return self.max_exp - self.min_exp

    @property
    def leading(self) -> GaussianRational:
        return self._terms[-1][1]

    # algebra
    def __add__(self, other):
        try:
            o = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        d = dict(self._terms)
        for k, c in o._terms:
            d[k] = d.get(k, _ZERO) + c
        return LaurentPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms})

    def __sub__(self, other):
        try:
            o = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            o = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        d: dict[int, GaussianRational] = {}
        for k1, c1 in self._terms:
            for k2, c2 in o._terms:
                d[k1 + k2] = d.get(k1 + k2, _ZERO) + c1 * c2
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise NotInvertible(f"{self} is not a unit of the Laurent ring")
            (k, c), = self._terms
            return LaurentPoly({-k: 1 / c}) ** (-n)
        result = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> LaurentPoly:
        c = GaussianRational.coerce(c)
        return LaurentPoly({k: v * c for k, v in self._terms})

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``z**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms})

    def involute(self) -> LaurentPoly:
        return LaurentPoly({-k: c.conjugate() for k, c in self._terms})

    def conjugate_coefficients(self) -> LaurentPoly:
        return LaurentPoly({k: c.conjugate() for k, c in self._terms})

    def derivative(self) -> LaurentPoly:
        return LaurentPoly({k - 1: c * k for k, c in self._terms if k != 0})

    def normalized(self) -> tuple[LaurentPoly, LaurentPoly]:
        """Split ``self = unit * monic`` with ``monic`` an ordinary polynomial
        having nonzero constant term and leading coefficient 1.

        Returns ``(monic, unit)``.  The zero polynomial returns ``(0, 1)``.
        """
        if self.is_zero():
            return self, LaurentPoly(1)
        lead = self.leading
        k = self.min_exp
        monic = LaurentPoly({e - k: c / lead for e, c in self._terms})
        return monic, LaurentPoly.monomial(k, lead)

    # numerics
    def _numeric_terms(self):
        if self._numeric is None:
            exps = np.array([k for k, _ in self._terms], dtype=float)
            vals = np.array([complex(c) for _, c in self._terms], dtype=complex)
            object.__setattr__(self, "_numeric", (exps, vals))
        return self._numeric

    def at_angle(self, theta):
        """Evaluate at ``z = exp(i*theta)``; ``theta`` may be an array."""
        exps, vals = self._numeric_terms()
        theta = np.asarray(theta, dtype=float)
        if not len(exps):
            return np.zeros(theta.shape, dtype=complex)[()]
        phases = np.exp(1j * np.multiply.outer(theta, exps))
        return (phases @ vals)[()]

    def __call__(self, z):
        """Evaluate at a nonzero complex number (or array)."""
        exps, vals = self._numeric_terms()
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for k, c in zip(exps, vals):
            out = out + c * z ** int(k)
        return out[()]

    def at_matrix(self, U: np.ndarray) -> np.ndarray:
        """Evaluate at an invertible matrix; negative powers use ``inv(U)``.

        For unitary ``U`` pass ``inverse=U.conj().T`` via :func:`substitute_unitary`.
        """
        return _matrix_laurent(self, np.asarray(U, dtype=complex), np.linalg.inv(U))

    # comparison / printing
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        try:
            return self._terms == LaurentPoly.coerce(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in reversed(self._terms):
            if k == 0:
                mono = ""
            elif k == 1:
                mono = "z"
            else:
                mono = f"z^{k}"
            if c.im != 0 and c.re != 0:
                coeff, neg = f"({c})", False
            else:
                s = str(c)
                neg = s.startswith("-")
                coeff = s[1:] if neg else s
            if mono and coeff == "1":
                body = mono
            elif mono:
                body = f"{coeff}*{mono}"
            else:
                body = coeff
            parts.append(("-" if neg else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_monomials(self) -> list[list[int]]:
        return [
            [k, c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator]
            for k, c in self._terms
        ]


Z = LaurentPoly.monomial(1)


def _matrix_laurent(p: LaurentPoly, U: np.ndarray, Uinv: np.ndarray) -> np.ndarray:
    d = U.shape[0]
    out = np.zeros((d, d), dtype=complex)
    if p.is_zero():
        return out
    cache = {0: np.eye(d, dtype=complex)}

    def power(k):
        if k not in cache:
            if k > 0:
                cache[k] = power(k - 1) @ U
            else:
                cache[k] = power(k + 1) @ Uinv
        return cache[k]

    for k, c in p.terms:
        out += complex(c) * power(k)
    return out


# --- ordinary polynomial arithmetic (all exponents >= 0) -------------------

def _check_poly(p: LaurentPoly, name: str):
    if p._terms and p.min_exp < 0:
        raise ValueError(f"{name} must be an ordinary polynomial (no negative exponents)")


def poly_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division in K[z], K = Q(i). Both inputs must be polynomials."""
    _check_poly(a, "dividend")
    _check_poly(b, "divisor")
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    db, lb = b.max_exp, b.leading
    rem = dict(a._terms)
    quot: dict[int, GaussianRational] = {}
    while rem:
        dr = max(rem)
        if dr < db:
            break
        c = rem[dr] / lb
        quot[dr - db] = c
        for k, bc in b._terms:
            e = k + dr - db
            v = rem.get(e, _ZERO) - c * bc
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
    return LaurentPoly(quot), LaurentPoly(rem)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd in K[z]; gcd(0, 0) = 0."""
    while not b.is_zero():
        _, r = poly_divmod(a, b)
        a, b = b, (r.scale(1 / r.leading) if r else r)
    if a.is_zero():
        return a
    return a.scale(1 / a.leading)


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient ``a / b`` in the Laurent ring; raises if not exact."""
    if b.is_zero():
        raise ZeroDivisionError("exact division by zero")
    if a.is_zero():
        return a
    q, r = poly_divmod(a.shift(-a.min_exp), b.shift(-b.min_exp))
    if not r.is_zero():
        raise ArithmeticError(f"{b} does not divide {a}")
    return q.shift(a.min_exp - b.min_exp)


def square_free_part(p: LaurentPoly) -> LaurentPoly:
    """Square-free part of the ordinary polynomial ``z^-min * p``, monic."""
    q = p.shift(-p.min_exp)
    if q.span == 0:
        return LaurentPoly(1)
    g = poly_gcd(q, q.derivative())
    s = exact_div(q, g)
    return s.scale(1 / s.leading)


# --- matrices ---------------------------------------------------------------

class LaurentMatrix:
    """Dense ``rows x cols`` matrix of :class:`LaurentPoly`. Immutable."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[Iterable]):
        grid = tuple(tuple(LaurentPoly.coerce(e) for e in row) for row in entries)
        if not grid or not grid[0]:
            raise ValueError("matrix must have at least one row and one column")
        if any(len(r) != len(grid[0]) for r in grid):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "_entries", grid)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> LaurentMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> LaurentMatrix:
        return cls([[0] * (rows if cols is None else cols) for _ in range(rows)])

    @classmethod
    def diagonal(cls, diag: Sequence) -> LaurentMatrix:
        n = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self._entries)

    @property
    def cols(self) -> int:
        return len(self._entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[tuple[LaurentPoly, ...], ...]:
        return self._entries

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij) -> LaurentPoly:
        i, j = ij
        return self._entries[i][j]

    def _zip(self, other, op):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return LaurentMatrix(
            [[op(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self._entries, other._entries)]
        )

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return LaurentMatrix([[-e for e in row] for row in self._entries])

    def __mul__(self, scalar):
        if isinstance(scalar, LaurentMatrix):
            return NotImplemented
        s = LaurentPoly.coerce(scalar)
        return LaurentMatrix([[e * s for e in row] for row in self._entries])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._entries))
        out = []
        for row in self._entries:
            new = []
            for col in cols:
                acc = LaurentPoly()
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        return LaurentMatrix(out)

    def transpose(self) -> LaurentMatrix:
        return LaurentMatrix(zip(*self._entries))

    def star(self) -> LaurentMatrix:
        return LaurentMatrix([[e.involute() for e in col] for col in zip(*self._entries)])

    def is_hermitian(self) -> bool:
        return self.is_square() and self.star() == self

    def is_real(self) -> bool:
        return all(e.is_real() for row in self._entries for e in row)

    def direct_sum(self, other: LaurentMatrix) -> LaurentMatrix:
        r1, c1 = self.shape
        r2, c2 = other.shape
        out = [list(row) + [0] * c2 for row in self._entries]
        out += [[0] * c1 + list(row) for row in other._entries]
        return LaurentMatrix(out)

    def evaluate(self, theta: float) -> np.ndarray:
        return evaluate(self, theta)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        return f"{type(self).__name__}({[[str(e) for e in row] for row in self._entries]})"

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self._entries)


class HermitianLaurentMatrix(LaurentMatrix):
    """Square Laurent matrix with ``B == star(B)``, checked on construction."""

    __slots__ = ()

    def __init__(self, entries):
        if isinstance(entries, LaurentMatrix):
            entries = entries.entries
        super().__init__(entries)
        if not self.is_square():
            raise NonSquare(f"Hermitian matrix must be square, got {self.shape}")
        if LaurentMatrix.star(self) != LaurentMatrix(self._entries):
            raise NotHermitian("matrix is not equal to its group-ring adjoint")

    @property
    def inner(self) -> LaurentMatrix:
        return LaurentMatrix(self._entries)

    @classmethod
    def coerce(cls, M) -> HermitianLaurentMatrix:
        if isinstance(M, HermitianLaurentMatrix):
            return M
        return cls(M)

    def __neg__(self):
        return HermitianLaurentMatrix(super().__neg__())


def involute(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly.coerce(p).involute()


def star(M: LaurentMatrix) -> LaurentMatrix:
    return M.star()


def hermitianize(A: LaurentMatrix) -> HermitianLaurentMatrix:
    """``B = A + A*``."""
    if not A.is_square():
        raise NonSquare(f"hermitianize needs a square matrix, got {A.shape}")
    return HermitianLaurentMatrix(A + A.star())


def evaluate(M: LaurentMatrix, theta: float) -> np.ndarray:
    """Substitute ``z = exp(i*theta)`` entrywise."""
    return np.array([[e.at_angle(theta) for e in row] for row in M.entries], dtype=complex)


def substitute_unitary(M: LaurentMatrix, U, tol: float = 1e-10) -> np.ndarray:
    """Replace every entry ``p(z)`` by the ``d x d`` block ``p(U)``.

    Negative powers use ``U^* = U^-1``; the result is ``(n d) x (n d)``.
    """
    U = np.atleast_2d(np.asarray(U, dtype=complex))
    d = U.shape[0]
    if U.shape != (d, d):
        raise NotUnitary(f"U must be square, got shape {U.shape}")
    defect = np.max(np.abs(U.conj().T @ U - np.eye(d)))
    if defect > tol:
        raise NotUnitary(f"||U*U - I||_max = {defect:.3e} exceeds {tol:.1e}")
    Uinv = U.conj().T
    n, m = M.shape
    out = np.zeros((n * d, m * d), dtype=complex)
    for i in range(n):
        for j in range(m):
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = _matrix_laurent(M[i, j], U, Uinv)
    return out


def _det_cofactor(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = LaurentPoly()
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = LaurentPoly(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def det_laurent(M: LaurentMatrix) -> LaurentPoly:
    """Exact determinant: cofactor expansion up to 4x4, Bareiss beyond."""
    if not M.is_square():
        raise NonSquare(f"determinant needs a square matrix, got {M.shape}")
    rows = [list(r) for r in M.entries]
    if M.rows <= 4:
        return _det_cofactor(rows)
    return _det_bareiss(rows)


def congruence(B: LaurentMatrix, T: LaurentMatrix) -> HermitianLaurentMatrix:
    """``T* B T`` for ``T`` invertible over the Laurent ring."""
    B = HermitianLaurentMatrix.coerce(B)
    if not T.is_square() or T.rows != B.rows:
        raise NonSquare(f"T must be {B.rows}x{B.rows}, got {T.shape}")
    d = det_laurent(T)
    if not d.is_unit():
        raise NotInvertible(f"det(T) = {d} is not a unit")
    return HermitianLaurentMatrix(T.star() @ B @ T)


# --- JSON matrix literal ------------------------------------------------------

def _int_field(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise MatrixFormatError(f"{what} must be an integer, got {x!r}")
    return x


def matrix_from_json(obj) -> LaurentMatrix:
    """Parse ``{"rows", "cols", "entries"}`` where each entry is a list of
    monomials ``[exp, re_num, re_den, im_num, im_den]``."""
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix literal must be a JSON object")
    for key in ("rows", "cols", "entries"):
        if key not in obj:
            raise MatrixFormatError(f"missing key {key!r}")
    rows = _int_field(obj["rows"], "rows")
    cols = _int_field(obj["cols"], "cols")
    if rows < 1 or cols < 1:
        raise MatrixFormatError("rows and cols must be positive")
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != rows:
        raise MatrixFormatError(f"entries must be a list of {rows} rows")
    grid = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFormatError(f"row {i} must be a list of {cols} entries")
        new_row = []
        for j, entry in enumerate(row):
            if not isinstance(entry, list):
                raise MatrixFormatError(f"entry ({i},{j}) must be a list of monomials")
            coeffs: dict[int, GaussianRational] = {}
            for mono in entry:
                if not isinstance(mono, list) or len(mono) != 5:
                    raise MatrixFormatError(
                        f"entry ({i},{j}): monomial must be [exp, re_num, re_den, im_num, im_den]"
                    )
                k, rn, rd, im_n, im_d = (_int_field(x, f"entry ({i},{j}) component") for x in mono)
                if rd == 0 or im_d == 0:
                    raise MatrixFormatError(f"entry ({i},{j}): zero denominator")
                c = GaussianRational(Fraction(rn, rd), Fraction(im_n, im_d))
                coeffs[k] = coeffs.get(k, _ZERO) + c
            new_row.append(LaurentPoly(coeffs))
        grid.append(new_row)
    return LaurentMatrix(grid)


def matrix_to_json(M: LaurentMatrix) -> dict:
    return {
        "rows": M.rows,
        "cols": M.cols,
        "entries": [[e.to_monomials() for e in row] for row in M.entries],
    }


def load_matrix(path) -> LaurentMatrix:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError) as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}: invalid JSON ({exc})") from exc
    return matrix_from_json(obj)


def dump_matrix(M: LaurentMatrix, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(M)) + "\n")
