"""Trace functionals applied to the signature step function.

The group von Neumann algebra of Z is L-infinity of the circle, with trace
given by the normalized Haar integral ``(1/2pi) int_0^{2pi} f``.  The
delocalized trace at ``z^n`` picks out the ``n``-th Fourier coefficient.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .circle import (
    DEFAULT_ROOT_TOL,
    DEFAULT_ZERO_TOL,
    SignatureStepFunction,
    circle_scale,
    inertia,
    signature_step_function,
)
from .errors import NotUnitary
from .laurent import HermitianLaurentMatrix, substitute_unitary

TWO_PI = 2.0 * math.pi
NORMALIZATION = "normalized Haar"


@dataclass(frozen=True)
class UnitaryRep:
    """Finite-dimensional unitary representation of Z, fixed by the image of
    the generator ``z``."""

    label: str
    image_of_generator: np.ndarray = field(repr=False)

    def __post_init__(self):
        U = np.atleast_2d(np.asarray(self.image_of_generator, dtype=complex))
        d = U.shape[0]
        if U.shape != (d, d):
            raise NotUnitary(f"generator image must be square, got {U.shape}")
        defect = np.max(np.abs(U.conj().T @ U - np.eye(d)))
        if defect > 1e-10:
            raise NotUnitary(f"representation {self.label!r} is not unitary (defect {defect:.3e})")
        U.setflags(write=False)
        object.__setattr__(self, "image_of_generator", U)

    @property
    def dimension(self) -> int:
        return self.image_of_generator.shape[0]

    @classmethod
    def trivial(cls, d: int = 1) -> UnitaryRep:
        return cls("trivial" if d == 1 else f"trivial^{d}", np.eye(d))

    @classmethod
    def character(cls, angle: float, label: str | None = None) -> UnitaryRep:
        """One-dimensional rep sending ``z`` to ``exp(i*angle)``."""
        return cls(label or f"exp(i*{angle:.12g})", np.array([[cmath.exp(1j * angle)]]))

    @classmethod
    def diagonal(cls, angles, label: str | None = None) -> UnitaryRep:
        angles = list(angles)
        name = label or "diag(" + ",".join(f"{a:.12g}" for a in angles) + ")"
        return cls(name, np.diag(np.exp(1j * np.asarray(angles, dtype=float))))


@dataclass(frozen=True)
class DelocalizedClass:
    """The conjugacy class of ``z^power``; power 0 is the identity (L2) class."""

    power: int

    @property
    def label(self) -> str:
        return f"<z^{self.power}>"


def l2_signature(f: SignatureStepFunction) -> float:
    return sum(v * (b - a) for a, b, v in f.arcs()) / TWO_PI


def delocalized_signature(f: SignatureStepFunction, cls: DelocalizedClass | int) -> complex:
    """Fourier coefficient ``(1/2pi) int f(theta) e^{-i n theta} dtheta``,
    summed arc by arc in closed form."""
    n = cls.power if isinstance(cls, DelocalizedClass) else int(cls)
    if n == 0:
        return complex(l2_signature(f))
    total = 0j
    for a, b, v in f.arcs():
        if v:
            total += v * (cmath.exp(-1j * n * b) - cmath.exp(-1j * n * a))
    return total / (-2j * math.pi * n)


def twisted_signature(B, rep: UnitaryRep, zero_tol: float = DEFAULT_ZERO_TOL) -> int:
    """Signature of the ``nd x nd`` matrix obtained by substituting the
    generator image into every entry of ``B``."""
    B = HermitianLaurentMatrix.coerce(B)
    H = substitute_unitary(B, rep.image_of_generator)
    return inertia(H, zero_tol, scale=circle_scale(B)).signature


def center_valued_signature(
    B, tol: float = DEFAULT_ROOT_TOL, zero_tol: float = DEFAULT_ZERO_TOL
) -> SignatureStepFunction:
    """The signature as an element of the center L-infinity(S^1); since the
    algebra is abelian this is the step function itself."""
    return signature_step_function(B, tol, zero_tol)


def trace_fragment(
    f: SignatureStepFunction,
    B=None,
    reps: list[UnitaryRep] = (),
    classes: list[DelocalizedClass] = (),
) -> dict:
    """JSON fragment ``{"l2", "twisted", "delocalized"}``."""
    twisted = {}
    if reps:
        if B is None:
            raise ValueError("twisted signatures need the matrix B")
        twisted = {r.label: twisted_signature(B, r) for r in reps}
    deloc = {}
    for c in classes:
        v = delocalized_signature(f, c)
        deloc[str(c.power)] = [v.real, v.imag]
    return {"l2": l2_signature(f), "twisted": twisted, "delocalized": deloc}
