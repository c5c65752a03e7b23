"""Signature of a Hermitian Laurent matrix as a step function on the unit circle.

``B(e^{i theta})`` is a Hermitian complex matrix for every angle; its signature
can only change where ``det B`` vanishes on the circle.  We locate those
rank-drop angles from the exact determinant, then read off one inertia per
open arc at the arc midpoint.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np
import scipy.linalg

from .errors import IdenticallySingular, MidpointDegenerate, NearBreakpoint, NotHermitian, ZeroPolynomial
from .laurent import HermitianLaurentMatrix, LaurentPoly, det_laurent, evaluate, square_free_part

TWO_PI = 2.0 * math.pi
DEFAULT_ROOT_TOL = 1e-9
DEFAULT_ZERO_TOL = 1e-9
UNIT_CIRCLE_TOL = 1e-8
HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_minus: int
    n_zero: int

    def __post_init__(self):
        if min(self.n_plus, self.n_minus, self.n_zero) < 0:
            raise ValueError("inertia counts must be nonnegative")

    @property
    def dim(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero

    @property
    def signature(self) -> int:
        return self.n_plus - self.n_minus


def _max_norm(H: np.ndarray) -> float:
    return float(np.max(np.abs(H))) if H.size else 0.0


def check_hermitian(H, tol: float = HERMITIAN_TOL) -> np.ndarray:
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    if H.shape[0] != H.shape[1]:
        raise NotHermitian(f"matrix must be square, got {H.shape}")
    defect = _max_norm(H - H.conj().T)
    # absolute for O(1) matrices, relative beyond
    if defect > tol * max(1.0, _max_norm(H)):
        raise NotHermitian(f"||H - H*||_max = {defect:.3e}")
    return H


def zero_threshold(H: np.ndarray, zero_tol: float, scale: float | None = None) -> float:
    """Absolute eigenvalue cutoff ``zero_tol * scale``; ``scale`` defaults to
    the max-norm of ``H``."""
    return zero_tol * (_max_norm(H) if scale is None else scale)


def circle_scale(B) -> float:
    """Upper bound for ``max |B_ij(e^{i theta})|`` over the circle: the largest
    entrywise sum of absolute coefficients.

    Used as the eigenvalue scale for matrices evaluated from ``B``; the
    pointwise max-norm collapses at rank-drop points of small matrices.
    """
    return max(
        (sum(abs(complex(c)) for _, c in e.terms) for row in B.entries for e in row),
        default=0.0,
    )


def inertia(
    H, zero_tol: float = DEFAULT_ZERO_TOL, method: str = "eigh", scale: float | None = None
) -> Inertia:
    """Inertia of a Hermitian matrix.

    Eigenvalues with ``|lambda| <= zero_tol * scale`` count as zero, where
    ``scale`` defaults to ``max|H_ij|``.  ``method="ldl"`` uses a
    Bunch-Kaufman factorization ``P L D L* P*`` and Sylvester's law instead
    of a full eigendecomposition.
    """
    H = check_hermitian(H)
    thr = zero_threshold(H, zero_tol, scale)
    if method == "eigh":
        ev = np.linalg.eigvalsh(0.5 * (H + H.conj().T))
    elif method == "ldl":
        _, D, _ = scipy.linalg.ldl(H, lower=True, hermitian=True)
        ev = _block_diagonal_eigenvalues(D)
    else:
        raise ValueError(f"unknown inertia method {method!r}")
    return Inertia(int(np.sum(ev > thr)), int(np.sum(ev < -thr)), int(np.sum(np.abs(ev) <= thr)))


def _block_diagonal_eigenvalues(D: np.ndarray) -> np.ndarray:
    n = D.shape[0]
    out = []
    k = 0
    while k < n:
        if k + 1 < n and D[k + 1, k] != 0:
            out.extend(np.linalg.eigvalsh(D[k:k + 2, k:k + 2]))
            k += 2
        else:
            out.append(D[k, k].real)
            k += 1
    return np.array(out)


# --- roots on the circle -----------------------------------------------------

def _newton_polish(coeffs: np.ndarray, z: complex, steps: int = 8) -> complex:
    dcoeffs = np.polyder(coeffs)
    for _ in range(steps):
        f = np.polyval(coeffs, z)
        df = np.polyval(dcoeffs, z)
        if df == 0:
            break
        step = f / df
        z = z - step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return z


def _merge_cyclic(angles: list[float], tol: float) -> list[float]:
    angles = sorted(angles)
    merged: list[list[float]] = []
    for a in angles:
        if merged and a - merged[-1][-1] <= tol:
            merged[-1].append(a)
        else:
            merged.append([a])
    if len(merged) > 1 and merged[0][0] + TWO_PI - merged[-1][-1] <= tol:
        tail = merged.pop()
        merged[0] = [a - TWO_PI for a in tail] + merged[0]
    out = [float(np.mean(c)) % TWO_PI for c in merged]
    return sorted(0.0 if a >= TWO_PI else a for a in out)


def circle_roots(p: LaurentPoly, tol: float = DEFAULT_ROOT_TOL) -> list[float]:
    """Angles ``theta`` in ``[0, 2 pi)`` with ``p(e^{i theta}) = 0``, ascending.

    Works on the exact square-free part of ``z^m p(z)`` so that roots where an
    eigenvalue only touches zero are still simple; companion-matrix roots are
    then Newton-polished and kept when within 1e-8 of the unit circle.
    Angles closer than ``tol`` (cyclically) are merged.
    """
    p = LaurentPoly.coerce(p)
    if p.is_zero():
        raise ZeroPolynomial("polynomial is identically zero")
    if p.span == 0:
        return []
    s = square_free_part(p)
    coeffs = np.array([complex(s.coefficient(k)) for k in range(s.max_exp, -1, -1)])
    angles = []
    for r in np.roots(coeffs):
        r = _newton_polish(coeffs, complex(r))
        if abs(abs(r) - 1.0) <= UNIT_CIRCLE_TOL:
            angles.append(math.atan2(r.imag, r.real) % TWO_PI)
    return _merge_cyclic(angles, tol)


# --- step function -----------------------------------------------------------

@dataclass(frozen=True)
class SignatureStepFunction:
    """Integer-valued step function on the circle.

    ``values[i]`` is the value on the open arc from ``breakpoints[i]`` to
    ``breakpoints[i+1]``; the last arc wraps around to ``breakpoints[0] + 2 pi``.
    With no breakpoints there is a single value on the whole circle.
    """

    dim: int
    breakpoints: tuple[float, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(float(b) for b in self.breakpoints))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != max(1, len(self.breakpoints)):
            raise ValueError("need one value per arc")
        if any(not 0.0 <= b < TWO_PI for b in self.breakpoints):
            raise ValueError("breakpoints must lie in [0, 2 pi)")
        if any(b >= c for b, c in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(abs(v) > self.dim for v in self.values):
            raise ValueError("|value| exceeds the matrix dimension")

    @classmethod
    def constant(cls, dim: int, value: int) -> SignatureStepFunction:
        return cls(dim, (), (value,))

    def arcs(self) -> Iterator[tuple[float, float, int]]:
        """Yield ``(start, end, value)``; the final arc may end beyond 2 pi."""
        bps = self.breakpoints
        if not bps:
            yield 0.0, TWO_PI, self.values[0]
            return
        for i, v in enumerate(self.values):
            end = bps[i + 1] if i + 1 < len(bps) else bps[0] + TWO_PI
            yield bps[i], end, v

    def midpoints(self) -> list[float]:
        return [((a + b) / 2) % TWO_PI for a, b, _ in self.arcs()]

    def value_at(self, theta: float) -> int:
        """Value at ``theta``; at a breakpoint, the value of the arc starting there."""
        if not self.breakpoints:
            return self.values[0]
        t = theta % TWO_PI
        i = bisect.bisect_right(self.breakpoints, t) - 1
        return self.values[i]  # i == -1 is the wrapping arc

    def __neg__(self):
        return SignatureStepFunction(self.dim, self.breakpoints, tuple(-v for v in self.values))

    def __add__(self, other):
        """Pointwise sum, i.e. the step function of a direct sum.
        Breakpoints closer than the default root tolerance are merged."""
        if not isinstance(other, SignatureStepFunction):
            return NotImplemented
        bps = tuple(_merge_cyclic(list(self.breakpoints + other.breakpoints), DEFAULT_ROOT_TOL))
        probe = SignatureStepFunction(0, bps, (0,) * max(1, len(bps)))
        mids = probe.midpoints()
        vals = tuple(self.value_at(m) + other.value_at(m) for m in mids)
        return SignatureStepFunction(self.dim + other.dim, bps, vals)

    def to_csv(self) -> str:
        lines = ["theta_start,theta_end,value"]
        for a, b, v in self.arcs():
            lines.append(f"{a:.12g},{b:.12g},{v}")
        return "\n".join(lines) + "\n"

    def to_svg(self, width: int = 640, height: int = 240) -> str:
        pad = 30
        span = max(1, self.dim)

        def x(t):
            return pad + (width - 2 * pad) * t / TWO_PI

        def y(v):
            return height / 2 - (height / 2 - pad) * v / span

        pieces = []
        for a, b, v in self.arcs():
            if b > TWO_PI:
                pieces += [(a, TWO_PI, v), (0.0, b - TWO_PI, v)]
            else:
                pieces.append((a, b, v))
        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">',
            f'<line x1="{x(0):.3f}" y1="{y(0):.3f}" x2="{x(TWO_PI):.3f}" y2="{y(0):.3f}" '
            'stroke="#999" stroke-width="1"/>',
        ]
        for b in self.breakpoints:
            out.append(
                f'<line x1="{x(b):.3f}" y1="{pad}" x2="{x(b):.3f}" y2="{height - pad}" '
                'stroke="#c33" stroke-dasharray="4 3" stroke-width="1"/>'
            )
        for a, b, v in pieces:
            out.append(
                f'<line x1="{x(a):.3f}" y1="{y(v):.3f}" x2="{x(b):.3f}" y2="{y(v):.3f}" '
                'stroke="#136" stroke-width="2"/>'
            )
        for t, label in ((0.0, "0"), (math.pi, "pi"), (TWO_PI, "2pi")):
            out.append(f'<text x="{x(t):.3f}" y="{height - 8}" font-size="12" text-anchor="middle">{label}</text>')
        out.append(f'<text x="4" y="{y(span):.3f}" font-size="12">{span}</text>')
        out.append(f'<text x="4" y="{y(-span):.3f}" font-size="12">{-span}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"


def _arc_signature(B: HermitianLaurentMatrix, theta: float, zero_tol: float, scale: float) -> int:
    I = inertia(evaluate(B, theta), zero_tol, scale=scale)
    if I.n_zero:
        raise MidpointDegenerate(
            f"B(e^(i*{theta:.12g})) has {I.n_zero} numerically zero eigenvalue(s) at an arc midpoint"
        )
    return I.signature


def signature_step_function(
    B, tol: float = DEFAULT_ROOT_TOL, zero_tol: float = DEFAULT_ZERO_TOL
) -> SignatureStepFunction:
    """theta -> sgn B(e^{i theta}) as a :class:`SignatureStepFunction`."""
    B = HermitianLaurentMatrix.coerce(B)
    det = det_laurent(B)
    if det.is_zero():
        raise IdenticallySingular("det B is identically zero on the circle")
    bps = circle_roots(det, tol)
    scale = circle_scale(B)
    if not bps:
        return SignatureStepFunction.constant(B.rows, _arc_signature(B, 0.0, zero_tol, scale))
    probe = SignatureStepFunction(B.rows, bps, (0,) * len(bps))
    values = [_arc_signature(B, m, zero_tol, scale) for m in probe.midpoints()]
    return SignatureStepFunction(B.rows, tuple(bps), tuple(values))


def sample_signature(
    B,
    theta: float,
    zero_tol: float = DEFAULT_ZERO_TOL,
    strict: bool = False,
    tol: float = DEFAULT_ROOT_TOL,
) -> int:
    """Signature of ``B(e^{i theta})``; zero eigenvalues are ignored.

    With ``strict=True`` an angle within ``tol`` of a rank-drop point raises
    :class:`NearBreakpoint`.
    """
    B = HermitianLaurentMatrix.coerce(B)
    if strict:
        det = det_laurent(B)
        if det.is_zero():
            raise IdenticallySingular("det B is identically zero on the circle")
        t = theta % TWO_PI
        for b in circle_roots(det, tol):
            d = abs(t - b)
            if min(d, TWO_PI - d) <= tol:
                raise NearBreakpoint(f"theta={theta!r} is within {tol:g} of breakpoint {b!r}")
    return inertia(evaluate(B, theta), zero_tol, scale=circle_scale(B)).signature
