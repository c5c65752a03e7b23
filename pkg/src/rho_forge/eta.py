"""Heat-kernel eta invariant of a finite Hermitian matrix.

    eta(H) = (1/sqrt(pi)) int_0^inf t^{-1/2} tr(H exp(-t H^2)) dt

With ``t = s^2`` the integrand becomes the smooth ``(2/sqrt(pi)) tr(H exp(-s^2 H^2))``.
For each eigenvalue ``lambda`` the integral up to ``S`` equals
``sign(lambda) erf(S |lambda|)``, which gives an analytic truncation bound and
shows that the full integral is the signature ``n_plus - n_minus``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg
import scipy.special

from .circle import DEFAULT_ZERO_TOL, TWO_PI, check_hermitian, circle_scale, inertia, zero_threshold
from .laurent import HermitianLaurentMatrix, evaluate

DEFAULT_ETA_TOL = 1e-6

# Gauss-Kronrod 7/15 on [-1, 1]; odd-indexed Kronrod nodes are the Gauss nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]


def gk15(func: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> tuple[float, float]:
    """One Gauss-Kronrod panel: ``(kronrod_estimate, |kronrod - gauss|)``.

    ``func`` is called once with the vector of 15 nodes.
    """
    half = 0.5 * (b - a)
    vals = np.asarray(func(0.5 * (a + b) + half * NODES), dtype=float)
    k = half * float(KRONROD_WEIGHTS @ vals)
    g = half * float(GAUSS_WEIGHTS @ vals)
    return k, abs(k - g)


def adaptive_gk(
    func: Callable[[np.ndarray], np.ndarray],
    breaks: list[float],
    abs_tol: float,
    max_panels: int = 20000,
) -> tuple[float, float, int]:
    """Globally adaptive Gauss-Kronrod over consecutive intervals ``breaks``.

    The panel with the largest error estimate is bisected until the summed
    estimate drops below ``abs_tol``.  Returns ``(value, error, panels)``.
    """
    heap = []
    for a, b in zip(breaks, breaks[1:]):
        v, e = gk15(func, a, b)
        heap.append((-e, a, b, v))
    heapq.heapify(heap)
    total_err = sum(-h[0] for h in heap)
    while total_err > abs_tol and len(heap) < max_panels:
        neg_e, a, b, _ = heapq.heappop(heap)
        m = 0.5 * (a + b)
        if not a < m < b:
            heapq.heappush(heap, (neg_e, a, b, _))
            break
        v1, e1 = gk15(func, a, m)
        v2, e2 = gk15(func, m, b)
        heapq.heappush(heap, (-e1, a, m, v1))
        heapq.heappush(heap, (-e2, m, b, v2))
        total_err += neg_e + e1 + e2
    value = math.fsum(h[3] for h in heap)
    err = sum(-h[0] for h in heap)
    return value, err, len(heap)


@dataclass(frozen=True)
class EtaResult:
    value: float
    truncation_T: float
    tail_bound: float
    integrand_samples: list[tuple[float, float]] = field(default_factory=list, repr=False)
    quadrature_error: float = 0.0
    panels: int = 0


def _trace_integrand(Hs: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    H2 = Hs @ Hs

    def integrand(s: np.ndarray) -> np.ndarray:
        E = scipy.linalg.expm(-(s ** 2)[:, None, None] * H2[None, :, :])
        tr = np.einsum("ij,kji->k", Hs, E).real
        return (2.0 / math.sqrt(math.pi)) * tr

    return integrand


def _spectral_integrand(ev: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    def integrand(s: np.ndarray) -> np.ndarray:
        return (2.0 / math.sqrt(math.pi)) * (np.exp(-np.multiply.outer(s ** 2, ev ** 2)) @ ev)

    return integrand


def eta_heat_integral(
    H,
    rel_tol: float = DEFAULT_ETA_TOL,
    method: str = "trace",
    zero_tol: float = DEFAULT_ZERO_TOL,
    scale: float | None = None,
) -> EtaResult:
    """Truncated heat-kernel eta integral of a Hermitian matrix.

    ``method="trace"`` evaluates ``tr(H exp(-s^2 H^2))`` with matrix
    exponentials; ``method="spectral"`` uses the eigenvalues directly.  Both
    use the same adaptive quadrature.  The eigenvalues are computed once in
    either case to pick the cutoff ``T`` and the tail bound; eigenvalues with
    ``|lambda| <= zero_tol * scale`` (default ``scale = max|H_ij|``) are
    treated as kernel.  The matrix is
    first divided by its spectral norm, which leaves the integral unchanged.
    """
    if method not in ("trace", "spectral"):
        raise ValueError(f"unknown method {method!r}")
    H = check_hermitian(H)
    H = 0.5 * (H + H.conj().T)
    n = H.shape[0]
    thr = zero_threshold(H, zero_tol, scale)
    ev = np.linalg.eigvalsh(H)
    nonzero = np.abs(ev) > thr
    if not nonzero.any():
        return EtaResult(0.0, 0.0, 0.0, [])
    scale = float(np.max(np.abs(ev)))
    Hs = H / scale
    evs = np.where(nonzero, ev / scale, 0.0)
    lam_min = float(np.min(np.abs(evs[nonzero])))

    # tail: sum over nonzero eigenvalues of erfc(S |lambda|) <= n erfc(S lam_min)
    tail_target = 0.25 * rel_tol
    S = float(scipy.special.erfcinv(tail_target / n)) / lam_min
    tail = n * float(scipy.special.erfc(S * lam_min))

    breaks = [0.0]
    edge = min(1.0, S)
    while edge < S:
        breaks.append(edge)
        edge *= 2.0
    breaks.append(S)

    integrand = _trace_integrand(Hs) if method == "trace" else _spectral_integrand(evs)
    value, qerr, panels = adaptive_gk(integrand, breaks, 0.5 * rel_tol)
    mids = np.array([0.5 * (a + b) for a, b in zip(breaks, breaks[1:])])
    samples = [(float(s * s), float(v)) for s, v in zip(mids, integrand(mids))]
    return EtaResult(value, S * S, tail, samples, qerr, panels)


def q_of(H, zero_tol: float = DEFAULT_ZERO_TOL) -> np.ndarray:
    """Sign function of ``H`` by spectral calculus, with ``q(0) = 0``."""
    H = check_hermitian(H)
    H = 0.5 * (H + H.conj().T)
    thr = zero_threshold(H, zero_tol)
    ev, V = np.linalg.eigh(H)
    q = np.where(ev > thr, 1.0, np.where(ev < -thr, -1.0, 0.0))
    return (V * q) @ V.conj().T


@dataclass(frozen=True)
class EtaSample:
    theta: float
    eta: float
    signature: int

    @property
    def deviation(self) -> float:
        return abs(self.eta - self.signature)


def eta_field_on_circle(
    B,
    grid_size: int = 64,
    rel_tol: float = DEFAULT_ETA_TOL,
    method: str = "trace",
    zero_tol: float = DEFAULT_ZERO_TOL,
) -> list[EtaSample]:
    """``theta -> eta(B(e^{i theta}))`` on the grid ``(k + 1/2) 2pi/grid_size``."""
    if grid_size < 8:
        raise ValueError("grid_size must be at least 8")
    B = HermitianLaurentMatrix.coerce(B)
    scale = circle_scale(B)
    out = []
    for k in range(grid_size):
        theta = (k + 0.5) * TWO_PI / grid_size
        Hth = evaluate(B, theta)
        res = eta_heat_integral(Hth, rel_tol, method, zero_tol, scale)
        out.append(EtaSample(theta, res.value, inertia(Hth, zero_tol, scale=scale).signature))
    return out
