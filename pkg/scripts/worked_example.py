"""Walk through A = z + 1/z + 1: step function, traces, rho differences, eta field."""

import math

from rho_forge import (
    LaurentMatrix,
    LaurentPoly,
    UnitaryRep,
    build_rho_report,
    delocalized_signature,
    eta_field_on_circle,
    hermitianize,
    l2_signature,
    signature_step_function,
)


def main():
    A = LaurentMatrix([[LaurentPoly({1: 1, 0: 1, -1: 1})]])
    B = hermitianize(A)
    f = signature_step_function(B)
    print(f"B = {B[0, 0]}")
    for a, b, v in f.arcs():
        print(f"  [{a:.9f}, {b:.9f})  sign {v:+d}")
    print(f"l2 signature       {l2_signature(f):.12f}")
    for n in (1, 2, 3):
        c = delocalized_signature(f, n)
        print(f"c_{n}                {c.real:+.12f} {c.imag:+.3e}i")
    print(f"sqrt(3)/pi         {math.sqrt(3) / math.pi:+.12f}")

    report = build_rho_report(A, [(UnitaryRep.trivial(), UnitaryRep.character(math.pi))], [1, 2])
    print(f"l2 rho difference  {report.l2_rho_diff:.12f}")
    for k, v in report.twisted_rho_diffs.items():
        print(f"twisted rho [{k}]  {v}")

    field = eta_field_on_circle(B, grid_size=16)
    print("max |eta - sign| on 16-point grid:", max(s.deviation for s in field))


if __name__ == "__main__":
    main()
