"""``rho-forge`` command line interface.

Exit status: 0 on success, 1 on unreadable input or bad arguments, 2 on
domain errors (singular determinant, non-unitary representation, ...).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .circle import DEFAULT_ROOT_TOL, DEFAULT_ZERO_TOL, SignatureStepFunction, signature_step_function
from .errors import DomainError, MatrixFormatError, NotHermitian
from .eta import DEFAULT_ETA_TOL, eta_field_on_circle
from .induction import ClassIntersection, induced_delocalized_signature
from .laurent import HermitianLaurentMatrix, hermitianize, load_matrix
from .reports import RhoReport, build_rho_report, compare_sign_flip_family
from .sampling import random_hermitian
from .snf import snf
from .traces import NORMALIZATION, UnitaryRep, delocalized_signature, l2_signature, twisted_signature

COMMANDS = ("sig-function", "l2-sig", "twisted-sig", "deloc-sig", "rho-diff", "sign-flip", "eta-check", "snf", "induce")
FORMATS = ("text", "json", "csv", "svg")
DEFAULT_SEED = 0


@dataclass
class CliConfig:
    command: str
    input_path: Path | None
    root_tol: float = DEFAULT_ROOT_TOL
    zero_tol: float = DEFAULT_ZERO_TOL
    eta_rel_tol: float = DEFAULT_ETA_TOL
    output_format: str = "text"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")
        if min(self.root_tol, self.zero_tol, self.eta_rel_tol) <= 0:
            raise ValueError("tolerances must be positive")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def num(x: float) -> str:
    return f"{x:.12g}"


def cnum(z: complex) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{num(z.real)} {sign} {num(abs(z.imag))}i"


def angle(theta: float, max_den: int = 24) -> str:
    """Radians, plus a pi-multiple when one matches to 1e-9."""
    frac = Fraction(theta / math.pi).limit_denominator(max_den)
    if abs(float(frac) * math.pi - theta) <= 1e-9:
        p, q = frac.numerator, frac.denominator
        if p == 0:
            tag = "0"
        else:
            head = "π" if p == 1 else f"{p}π"
            tag = head if q == 1 else f"{head}/{q}"
        return f"{num(theta)} (≈ {tag})"
    return num(theta)


def _positive_float(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {s!r}")
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _int_list(s: str) -> list[int]:
    try:
        return [int(p) for p in s.replace(" ", "").split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--root-tol", type=_positive_float, default=DEFAULT_ROOT_TOL,
                        help="merge distance for circle roots, radians")
    common.add_argument("--zero-tol", type=_positive_float, default=DEFAULT_ZERO_TOL,
                        help="relative eigenvalue cutoff (times max |entry|)")
    common.add_argument("--eta-tol", type=_positive_float, default=DEFAULT_ETA_TOL)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("-o", "--output", type=Path, help="write the artifact here instead of stdout")

    def with_input(p, required=True):
        p.add_argument("input", type=Path, nargs=None if required else "?",
                       help="matrix literal (JSON)")
        p.add_argument("--as-a", action="store_true",
                       help="treat the input as A and use B = A + A*")
        return p

    parser = _Parser(prog="rho-forge", description="Signature and rho-invariants over the group ring of Z.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    with_input(sub.add_parser("sig-function", parents=[common], help="signature step function on S^1"))
    with_input(sub.add_parser("l2-sig", parents=[common], help="L2-signature"))
    p = with_input(sub.add_parser("twisted-sig", parents=[common], help="signature twisted by a unitary rep"))
    p.add_argument("--lambda", dest="lam", type=float, help="angle of a 1-dimensional rep z -> exp(i*angle)")
    p.add_argument("--rep", help="JSON (inline or file): {\"label\": str, \"generator\": [[[re, im], ...], ...]}")
    p = with_input(sub.add_parser("deloc-sig", parents=[common], help="delocalized signature at <z^n>"))
    p.add_argument("--n", type=_int_list, default=[1], help="comma-separated powers")
    p = sub.add_parser("rho-diff", parents=[common], help="rho-invariant differences for the surgery pair of A")
    p.add_argument("input", type=Path)
    p.add_argument("--n", type=_int_list, default=[1])
    p.add_argument("--lambda", dest="lam", type=float, action="append", default=[],
                   help="add the rep pair (z -> exp(i*angle), trivial)")
    p.add_argument("--rep", action="append", default=[], help="add the rep pair (REP, trivial)")
    p = sub.add_parser("sign-flip", parents=[common], help="compare diag(A_i) against diag(eps_i A_i)")
    p.add_argument("input", type=Path, help="diagonal matrix A")
    p.add_argument("--flips", type=_int_list, required=True)
    p.add_argument("--n", type=_int_list, default=[1])
    p.add_argument("--lambda", dest="lam", type=float, action="append", default=[])
    p = with_input(sub.add_parser("eta-check", parents=[common], help="heat-kernel eta vs signature on a grid"),
                   required=False)
    p.add_argument("--dim", type=int, default=3, help="size of the random matrix when no input is given")
    p.add_argument("--grid", type=int, default=32)
    p.add_argument("--method", choices=("trace", "spectral"), default="trace")
    p = sub.add_parser("snf", parents=[common], help="Smith normal form invariants")
    p.add_argument("input", type=Path)
    p = with_input(sub.add_parser("induce", parents=[common], help="delocalized signature induced to Gamma"))
    p.add_argument("--powers", type=_int_list, help="powers n with z^n in <g>")
    p.add_argument("--central", type=int, help="shorthand for a central z^n")
    p.add_argument("--label", default="<g>")
    return parser


def _load_b(path: Path, as_a: bool) -> HermitianLaurentMatrix:
    M = load_matrix(path)
    if as_a:
        return hermitianize(M)
    if not M.is_hermitian():
        raise NotHermitian(f"{path} is not Hermitian; pass --as-a to use A + A*")
    return HermitianLaurentMatrix(M)


def _load_rep(text: str) -> UnitaryRep:
    p = Path(text)
    try:
        raw = p.read_text() if not text.lstrip().startswith("{") and p.exists() else text
        obj = json.loads(raw)
        gen = np.array([[complex(re, im) for re, im in row] for row in obj["generator"]])
        label = str(obj.get("label", "rep"))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise MatrixFormatError(f"bad --rep: {exc}") from exc
    return UnitaryRep(label, gen)


def _emit_step(f: SignatureStepFunction, fmt: str) -> str:
    if fmt == "csv":
        return f.to_csv()
    if fmt == "svg":
        return f.to_svg()
    if fmt == "json":
        return json.dumps({"dim": f.dim, "breakpoints": list(f.breakpoints), "values": list(f.values)},
                          indent=2) + "\n"
    lines = [f"dim = {f.dim}", f"breakpoints ({len(f.breakpoints)}):"]
    lines += [f"  {angle(b)}" for b in f.breakpoints]
    lines.append("arcs:")
    lines += [f"  ({num(a)}, {num(b)}): {v:+d}" for a, b, v in f.arcs()]
    return "\n".join(lines) + "\n"


def _report_text(r: RhoReport) -> list[str]:
    out = [f"[{r.matrix_label}] rho(X) - rho(Y), {NORMALIZATION}",
           f"  l2: {num(r.l2_rho_diff)}"]
    out += [f"  twisted {k}: {v}" for k, v in sorted(r.twisted_rho_diffs.items())]
    out += [f"  delocalized {k}: {cnum(v)}" for k, v in sorted(r.delocalized_rho_diffs.items())]
    if r.homology_note:
        out.append(f"  homology: {r.homology_note.summary()}")
    out += [f"  note: {n}" for n in r.notes]
    return out


def run(args: argparse.Namespace) -> str:
    cfg = CliConfig(args.command, getattr(args, "input", None), args.root_tol, args.zero_tol,
                    args.eta_tol, args.format)
    cmd, fmt = cfg.command, cfg.output_format
    tol, ztol = cfg.root_tol, cfg.zero_tol

    if cmd in ("sig-function", "l2-sig", "twisted-sig", "deloc-sig", "induce"):
        B = _load_b(cfg.input_path, args.as_a)

    if cmd == "sig-function":
        return _emit_step(signature_step_function(B, tol, ztol), fmt)

    if cmd == "l2-sig":
        v = l2_signature(signature_step_function(B, tol, ztol))
        if fmt == "json":
            return json.dumps({"l2": v, "normalization": NORMALIZATION}) + "\n"
        return f"sgn_(2) = {num(v)} ({NORMALIZATION})\n"

    if cmd == "twisted-sig":
        if (args.lam is None) == (args.rep is None):
            raise UsageError("give exactly one of --lambda or --rep")
        rep = UnitaryRep.character(args.lam) if args.rep is None else _load_rep(args.rep)
        v = twisted_signature(B, rep, ztol)
        if fmt == "json":
            return json.dumps({"twisted": {rep.label: v}}) + "\n"
        return f"sgn_[{rep.label}] = {v}\n"

    if cmd == "deloc-sig":
        f = signature_step_function(B, tol, ztol)
        vals = {n: delocalized_signature(f, n) for n in args.n}
        if fmt == "json":
            return json.dumps({"delocalized": {str(n): [v.real, v.imag] for n, v in vals.items()},
                               "normalization": NORMALIZATION}) + "\n"
        return "".join(f"sgn_<z^{n}> = {cnum(v)} ({NORMALIZATION})\n" for n, v in vals.items())

    if cmd == "induce":
        if args.central is not None:
            ci = ClassIntersection.central(args.central, args.label if args.label != "<g>" else None)
        elif args.powers is not None:
            ci = ClassIntersection(args.label, frozenset(args.powers))
        else:
            raise UsageError("give --powers or --central")
        v = induced_delocalized_signature(signature_step_function(B, tol, ztol), ci)
        if fmt == "json":
            return json.dumps({"class": ci.to_json(), "value": [v.real, v.imag]}) + "\n"
        return f"sgn_{ci.label} = {cnum(v)} (powers {sorted(ci.powers)}, {NORMALIZATION})\n"

    if cmd == "rho-diff":
        A = load_matrix(cfg.input_path)
        pairs = [(UnitaryRep.character(a), UnitaryRep.trivial()) for a in args.lam]
        for text in args.rep:
            rep = _load_rep(text)
            pairs.append((rep, UnitaryRep.trivial(rep.dimension)))
        r = build_rho_report(A, pairs, args.n, label=cfg.input_path.stem, tol=tol, zero_tol=ztol)
        if fmt in ("csv", "svg"):
            return _emit_step(r.step_function, fmt)
        if fmt == "json":
            return json.dumps(r.to_json(), indent=2) + "\n"
        return "\n".join(_report_text(r)) + "\n"

    if cmd == "sign-flip":
        A = load_matrix(cfg.input_path)
        if not A.is_square() or any(A[i, j] for i in range(A.rows) for j in range(A.cols) if i != j):
            raise MatrixFormatError("sign-flip needs a square diagonal matrix")
        pairs = [(UnitaryRep.character(a), UnitaryRep.trivial()) for a in args.lam]
        cmp = compare_sign_flip_family([A[i, i] for i in range(A.rows)], args.flips, pairs, args.n, tol, ztol)
        if fmt in ("csv", "svg"):
            return _emit_step(cmp.second.step_function, fmt)
        if fmt == "json":
            return json.dumps({"A": cmp.first.to_json(), "A_flipped": cmp.second.to_json(),
                               "homology_equal": cmp.homology_equal,
                               "distinguishable": cmp.distinguishable}, indent=2) + "\n"
        lines = _report_text(cmp.first) + _report_text(cmp.second)
        lines += [f"homology_equal = {str(cmp.homology_equal).lower()}",
                  f"distinguishable = {str(cmp.distinguishable).lower()}"]
        return "\n".join(lines) + "\n"

    if cmd == "eta-check":
        if cfg.input_path is not None:
            B = _load_b(cfg.input_path, args.as_a)
        else:
            B = random_hermitian(np.random.default_rng(args.seed), args.dim, nonsingular=False)
        samples = eta_field_on_circle(B, args.grid, cfg.eta_rel_tol, args.method, ztol)
        worst = max(s.deviation for s in samples)
        if fmt == "json":
            return json.dumps({"samples": [[s.theta, s.eta, s.signature, s.deviation] for s in samples],
                               "max_deviation": worst, "eta_tol": cfg.eta_rel_tol}, indent=2) + "\n"
        if fmt == "csv":
            rows = ["theta,eta,sgn,abs_diff"] + [
                f"{num(s.theta)},{num(s.eta)},{s.signature},{s.deviation:.12g}" for s in samples]
            return "\n".join(rows) + "\n"
        if fmt == "svg":
            raise UsageError("eta-check has no svg output")
        rows = [f"{'theta':>16} {'eta':>18} {'sgn':>4} {'|eta-sgn|':>20}"]
        rows += [f"{num(s.theta):>16} {num(s.eta):>18} {s.signature:>4} {s.deviation:>20.12g}" for s in samples]
        rows.append(f"max|eta - sgn| = {worst:.12g} (tolerance {num(cfg.eta_rel_tol)})")
        return "\n".join(rows) + "\n"

    if cmd == "snf":
        inv = snf(load_matrix(cfg.input_path)).invariants
        if fmt == "json":
            return json.dumps(inv.to_json()) + "\n"
        return f"kernel rank = {inv.kernel_rank}\ninvariant factors = [{', '.join(str(f) for f in inv.factors)}]\n"

    raise UsageError(f"unhandled command {cmd}")  # pragma: no cover


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        out = run(args)
    except (UsageError, MatrixFormatError, ValueError) as exc:
        print(f"rho-forge: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"rho-forge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.output:
        args.output.write_text(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
