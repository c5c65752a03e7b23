"""Survey diagonal sign-flip pairs diag(p_i) vs diag(e_i p_i).

For random real symmetric Laurent polynomials, count how often flipping signs
keeps the homology invariants equal while the L2 rho difference changes.
"""

import argparse
import itertools

import numpy as np

from rho_forge import compare_sign_flip_family
from rho_forge.sampling import random_laurent_poly


def symmetric_poly(rng, max_exp):
    p = random_laurent_poly(rng, max_exp=max_exp, complex_coeffs=False)
    return p + p.involute()


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--size", type=int, default=2)
    ap.add_argument("--max-exp", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    hits = total = 0
    for t in range(args.trials):
        diag = []
        while len(diag) < args.size:
            p = symmetric_poly(rng, args.max_exp)
            if not p.is_zero():
                diag.append(p)
        for flips in itertools.product((1, -1), repeat=args.size):
            if all(e == 1 for e in flips):
                continue
            cmp = compare_sign_flip_family(diag, list(flips))
            total += 1
            hits += cmp.homology_equal and cmp.distinguishable
            print(f"trial {t:3d} flips {flips}: homology_equal={cmp.homology_equal} "
                  f"l2 {cmp.first.l2_rho_diff:+.6f} -> {cmp.second.l2_rho_diff:+.6f}")
    print(f"{hits}/{total} pairs have equal homology and distinct L2 rho difference")


if __name__ == "__main__":
    main()
