"""Rho-invariant difference reports for surgery pairs built from a matrix A.

Given ``A`` over the group ring of Z and ``B = A + A*``, the surgery pair
``(X, Y)`` satisfies

    rho_(2)(X) - rho_(2)(Y)                    = sgn_(2)(B) - sgn(B(1))
    rho_{l1-l2}(X) - rho_{l1-l2}(Y)            = sgn(l1(B)) - sgn(l2(B))
    rho_<g>(X) - rho_<g>(Y)                    = sgn_<g>(B)

Only differences are computable from ``B``; absolute rho-invariants are not.
The manifolds themselves are not constructed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .circle import DEFAULT_ROOT_TOL, DEFAULT_ZERO_TOL, SignatureStepFunction, signature_step_function
from .errors import NonSquare
from .laurent import LaurentMatrix, LaurentPoly, hermitianize
from .snf import InvariantFactors, homology_compare, invariant_factors
from .traces import (
    NORMALIZATION,
    DelocalizedClass,
    UnitaryRep,
    delocalized_signature,
    l2_signature,
    twisted_signature,
)

DISTINGUISH_TOL = 1e-8

CAVEAT = (
    "Values are differences rho(X) - rho(Y) for the surgery pair built from A; "
    "absolute rho-invariants are not determined by B. Realizing the pair needs "
    "dimension 4k >= 6 and a handle decomposition hypothesis, which are not checked."
)
NO_HOMOTOPY_EQUIVALENCE = (
    "homology of Y and Y' agrees but a rho-invariant difference does not: "
    "there is no homotopy equivalence between Y and Y' (orientation-reversing included)"
)


@dataclass
class RhoReport:
    matrix_label: str
    l2_rho_diff: float
    twisted_rho_diffs: dict[str, int] = field(default_factory=dict)
    delocalized_rho_diffs: dict[str, complex] = field(default_factory=dict)
    homology_note: InvariantFactors | None = None
    step_function: SignatureStepFunction | None = None
    notes: list[str] = field(default_factory=list)

    def values(self) -> list[complex]:
        """All signature-derived numbers, in a fixed order (for comparisons)."""
        out: list[complex] = [complex(self.l2_rho_diff)]
        out += [complex(self.twisted_rho_diffs[k]) for k in sorted(self.twisted_rho_diffs)]
        out += [self.delocalized_rho_diffs[k] for k in sorted(self.delocalized_rho_diffs)]
        return out

    def to_json(self) -> dict:
        obj = {
            "matrix_label": self.matrix_label,
            "normalization": NORMALIZATION,
            "quantity": "rho(X) - rho(Y)",
            "l2_rho_diff": self.l2_rho_diff,
            "twisted_rho_diffs": dict(sorted(self.twisted_rho_diffs.items())),
            "delocalized_rho_diffs": {
                k: [v.real, v.imag] for k, v in sorted(self.delocalized_rho_diffs.items())
            },
            "homology": self.homology_note.to_json() if self.homology_note else None,
            "caveat": CAVEAT,
            "notes": list(self.notes),
        }
        if self.step_function is not None:
            f = self.step_function
            obj["step_function"] = {
                "dim": f.dim,
                "breakpoints": list(f.breakpoints),
                "values": list(f.values),
            }
        return obj


def _pair_label(pair: tuple[UnitaryRep, UnitaryRep]) -> str:
    return f"{pair[0].label} - {pair[1].label}"


def build_rho_report(
    A: LaurentMatrix,
    rep_pairs: Sequence[tuple[UnitaryRep, UnitaryRep]] = (),
    classes: Sequence[DelocalizedClass | int] = (),
    label: str = "A",
    tol: float = DEFAULT_ROOT_TOL,
    zero_tol: float = DEFAULT_ZERO_TOL,
    with_homology: bool = True,
) -> RhoReport:
    """Assemble all rho differences for the surgery pair of ``A``."""
    if not A.is_square():
        raise NonSquare(f"A must be square, got {A.shape}")
    classes = [c if isinstance(c, DelocalizedClass) else DelocalizedClass(int(c)) for c in classes]
    B = hermitianize(A)
    homology = invariant_factors(B) if with_homology else None
    if B == LaurentMatrix.zeros(B.rows):
        # B = 0: every signature vanishes identically
        return RhoReport(
            label,
            0.0,
            {_pair_label(p): 0 for p in rep_pairs},
            {c.label: 0j for c in classes},
            homology,
            SignatureStepFunction.constant(B.rows, 0),
            ["B = A + A* is zero"],
        )
    f = signature_step_function(B, tol, zero_tol)
    trivial = twisted_signature(B, UnitaryRep.trivial(), zero_tol)
    twisted = {
        _pair_label(p): twisted_signature(B, p[0], zero_tol) - twisted_signature(B, p[1], zero_tol)
        for p in rep_pairs
    }
    deloc = {c.label: delocalized_signature(f, c) for c in classes}
    return RhoReport(label, l2_signature(f) - trivial, twisted, deloc, homology, f)


class SignFlipComparison(NamedTuple):
    first: RhoReport
    second: RhoReport
    homology_equal: bool
    distinguishable: bool


def compare_sign_flip_family(
    diag_entries: Sequence[LaurentPoly],
    flips: Sequence[int],
    rep_pairs: Sequence[tuple[UnitaryRep, UnitaryRep]] = (),
    classes: Sequence[DelocalizedClass | int] = (1,),
    tol: float = DEFAULT_ROOT_TOL,
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> SignFlipComparison:
    """Compare ``diag(A_i)`` with ``diag(eps_i A_i)``.

    Sign flips are units, so the two hermitianizations always have the same
    invariant factors; any rho difference above 1e-8 then separates the two
    manifolds up to homotopy.
    """
    if len(diag_entries) != len(flips):
        raise ValueError("diag_entries and flips must have equal length")
    if any(e not in (-1, 1) for e in flips):
        raise ValueError("flips must be +1 or -1")
    entries = [LaurentPoly.coerce(p) for p in diag_entries]
    A1 = LaurentMatrix.diagonal(entries)
    A2 = LaurentMatrix.diagonal([p.scale(e) for p, e in zip(entries, flips)])
    r1 = build_rho_report(A1, rep_pairs, classes, "A", tol, zero_tol)
    r2 = build_rho_report(A2, rep_pairs, classes, "A'", tol, zero_tol)
    same = homology_compare(hermitianize(A1), hermitianize(A2))
    distinct = any(abs(a - b) > DISTINGUISH_TOL for a, b in zip(r1.values(), r2.values()))
    if same and distinct:
        r1.notes.append(NO_HOMOTOPY_EQUIVALENCE)
        r2.notes.append(NO_HOMOTOPY_EQUIVALENCE)
    return SignFlipComparison(r1, r2, same, distinct)
