"""Delocalized signatures induced along an inclusion Z -> Gamma.

For a finite conjugacy class <g> of Gamma the delocalized trace of an element
coming from Z only sees ``<g> ∩ i(Z)``; the caller supplies that set as the
powers ``n`` with ``z^n`` in the class.  Gamma itself is never modelled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circle import SignatureStepFunction
from .errors import InvalidClassIntersection
from .traces import delocalized_signature, l2_signature


@dataclass(frozen=True)
class ClassIntersection:
    label: str
    powers: frozenset[int]

    def __post_init__(self):
        powers = frozenset(int(p) for p in self.powers)
        object.__setattr__(self, "powers", powers)
        if 0 in powers and powers != {0}:
            raise InvalidClassIntersection("the identity class contains only the identity")
        if len({abs(p) for p in powers}) > 1:
            raise InvalidClassIntersection(
                f"a finite class meets Z in at most {{n, -n}}; got {sorted(powers)}"
            )

    @classmethod
    def central(cls, n: int, label: str | None = None) -> ClassIntersection:
        """``z^n`` central in Gamma: its class is the singleton ``{z^n}``."""
        return cls(label or f"<z^{n}>", frozenset({n}))

    @classmethod
    def from_json(cls, obj: dict) -> ClassIntersection:
        if not isinstance(obj, dict) or not isinstance(obj.get("powers"), list):
            raise InvalidClassIntersection('expected {"label": str, "powers": [int]}')
        if any(isinstance(p, bool) or not isinstance(p, int) for p in obj["powers"]):
            raise InvalidClassIntersection("powers must be integers")
        return cls(str(obj.get("label", "<g>")), frozenset(obj["powers"]))

    def to_json(self) -> dict:
        return {"label": self.label, "powers": sorted(self.powers)}


def induced_delocalized_signature(f: SignatureStepFunction, ci: ClassIntersection) -> complex:
    """Sum of the Fourier coefficients of ``f`` over the powers in ``ci``."""
    total = 0j
    for n in sorted(ci.powers):
        total += complex(l2_signature(f)) if n == 0 else delocalized_signature(f, n)
    return total
