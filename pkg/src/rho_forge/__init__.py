"""Signature and rho-invariants of Hermitian matrices over the group ring of Z."""

from .circle import Inertia, SignatureStepFunction, circle_roots, inertia, sample_signature, signature_step_function
from .errors import (
    DomainError,
    IdenticallySingular,
    MatrixFormatError,
    MidpointDegenerate,
    NonSquare,
    NotHermitian,
    NotInvertible,
    NotUnitary,
    ZeroPolynomial,
)
from .eta import EtaResult, eta_field_on_circle, eta_heat_integral, q_of
from .induction import ClassIntersection, induced_delocalized_signature
from .laurent import (
    GaussianRational,
    HermitianLaurentMatrix,
    LaurentMatrix,
    LaurentPoly,
    Z,
    congruence,
    det_laurent,
    evaluate,
    hermitianize,
    involute,
    star,
    substitute_unitary,
)
from .reports import RhoReport, build_rho_report, compare_sign_flip_family
from .snf import InvariantFactors, homology_compare, snf
from .traces import (
    DelocalizedClass,
    UnitaryRep,
    center_valued_signature,
    delocalized_signature,
    l2_signature,
    twisted_signature,
)

__version__ = "0.1.0"
