"""Dirichlet operator of the killed walk: assembly, spectrum, exact non-exit.

The operator acts on functions vanishing outside the domain; its diagonal is
the full incident weight of each site (boundary edges included) and its
off-diagonal entries are minus the interior edge weights.  Killing at the
boundary makes it symmetric positive definite, so the non-exit probability is
an explicit eigenvalue sum.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .conductance import ConductanceField, require_same_domain, sample_field, site_totals
from .domain import Domain
from .errors import ArgumentOutOfRange, NonConvergence, UnsupportedDomain
from .tail_law import TailLaw
from .transforms import log_pair_sum_tail

logger = logging.getLogger(__name__)

_CLAMP_TOL = 1e-10


@dataclass(eq=False)
class DirichletOperator:
    domain: Domain
    matrix: np.ndarray


@dataclass(eq=False)
class SpectralDecomposition:
    eigenvalues: np.ndarray      # ascending
    eigenvectors: np.ndarray     # orthonormal columns, matching order


def assemble(f: ConductanceField, dom: Domain) -> DirichletOperator:
    require_same_domain(f, dom)
    n = dom.n_sites
    a = np.zeros((n, n))
    np.fill_diagonal(a, site_totals(f))
    inside = dom.edge_b >= 0
    for ia, ib, w in zip(dom.edge_a[inside], dom.edge_b[inside], f.weights[inside]):
        a[ia, ib] = -w
        a[ib, ia] = -w
    return DirichletOperator(dom, a)


def eigen(op: DirichletOperator, max_sweeps: int = 100, tol: float = 1e-14) -> SpectralDecomposition:
    """Full symmetric eigendecomposition by cyclic Jacobi rotations."""
    a = np.array(op.matrix, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return SpectralDecomposition(a[0].copy(), v)
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return SpectralDecomposition(np.zeros(n), v)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2) * 2.0)
        if off <= tol * scale:
            order = np.argsort(np.diag(a), kind="stable")
            return SpectralDecomposition(np.diag(a)[order].copy(), v[:, order].copy())
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0:
                    tk = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    tk = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(tk * tk + 1.0)
                s = tk * c
                tau = s / (1.0 + c)
                app, aqq = a[p, p], a[q, q]
                a[p, p] = app - tk * apq
                a[q, q] = aqq + tk * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for r in range(n):
                    if r == p or r == q:
                        continue
                    arp, arq = a[r, p], a[r, q]
                    a[r, p] = arp - s * (arq + tau * arp)
                    a[p, r] = a[r, p]
                    a[r, q] = arq + s * (arp - tau * arq)
                    a[q, r] = a[r, q]
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = vp - s * (vq + tau * vp)
                v[:, q] = vq + s * (vp - tau * vq)
    raise NonConvergence(f"Jacobi sweeps exhausted (max_sweeps={max_sweeps})")


def _nonexit_from_decomposition(dec: SpectralDecomposition, start: int, t: float) -> float:
    weights = dec.eigenvectors[start, :] * dec.eigenvectors.sum(axis=0)
    val = float(np.sum(np.exp(-t * dec.eigenvalues) * weights))
    if val < -_CLAMP_TOL or val > 1.0 + _CLAMP_TOL:
        logger.warning("non-exit probability %r clamped to [0, 1]", val)
    return float(np.clip(val, 0.0, 1.0))


def semigroup_nonexit(
    f: ConductanceField, dom: Domain, t: float, start_index: int | None = None
) -> float:
    """Exact probability that the walk has not exited by time t."""
    if not (np.isfinite(t) and t >= 0):
        raise ArgumentOutOfRange(f"time must be finite and nonnegative, got {t!r}")
    dec = eigen(assemble(f, dom))
    start = dom.origin_index if start_index is None else int(start_index)
    return _nonexit_from_decomposition(dec, start, float(t))


def sandwich_check(f: ConductanceField, dom: Domain, t: float) -> dict:
    """Two-sided control of the non-exit probability by the principal eigenvalue.

    Checks p0 <= |B|**2 * exp(-t*lambda1) and exp(-t*lambda1) <= sum over
    starting sites of their non-exit probabilities; both margins should be
    nonnegative up to rounding.
    """
    if not (np.isfinite(t) and t >= 0):
        raise ArgumentOutOfRange(f"time must be finite and nonnegative, got {t!r}")
    dec = eigen(assemble(f, dom))
    n = dom.n_sites
    lam1 = float(dec.eigenvalues[0])
    p0 = _nonexit_from_decomposition(dec, dom.origin_index, t)
    site_sum = float(sum(_nonexit_from_decomposition(dec, z, t) for z in range(n)))
    principal = float(np.exp(-t * lam1))
    upper = n * n * principal
    return {
        "t": float(t),
        "lambda1": lam1,
        "p0": p0,
        "upper": upper,
        "upper_margin": upper - p0,
        "principal": principal,
        "site_sum": site_sum,
        "lower_margin": site_sum - principal,
    }


@dataclass
class EigenTailPoint:
    eps: float
    prob: float
    log_prob: float
    scaled_log: float    # eps**eta * log_prob


def eigen_tail(
    law: TailLaw,
    dom: Domain,
    eps_list,
    method: str = "quadrature",
    n_fields: int = 2000,
    rng: np.random.Generator | None = None,
) -> list[EigenTailPoint]:
    """Lower-tail curve of the principal Dirichlet eigenvalue.

    On a single-site domain in d=1 the eigenvalue is the sum of the two
    boundary weights and the tail is computed by quadrature; otherwise it is
    estimated by Monte Carlo over sampled fields.
    """
    eps_arr = np.asarray(list(eps_list), dtype=float)
    if eps_arr.size == 0 or not np.all(eps_arr > 0):
        raise ArgumentOutOfRange("eps values must be strictly positive")
    points: list[EigenTailPoint] = []
    if method == "quadrature":
        if dom.n_sites != 1 or dom.d != 1:
            raise UnsupportedDomain("quadrature tail requires a single-site domain in d=1")
        for eps in eps_arr:
            lp = log_pair_sum_tail(law, float(eps))
            points.append(
                EigenTailPoint(float(eps), float(np.exp(lp)), lp, float(eps**law.eta * lp))
            )
    elif method == "mc":
        if rng is None:
            raise ArgumentOutOfRange("Monte Carlo tail estimation requires an rng")
        lam = np.empty(int(n_fields))
        for i in range(int(n_fields)):
            dec = eigen(assemble(sample_field(law, dom, rng), dom))
            lam[i] = dec.eigenvalues[0]
        for eps in eps_arr:
            p = float(np.mean(lam <= eps))
            lp = float(np.log(p)) if p > 0 else float("-inf")
            scaled = float(eps**law.eta * lp) if p > 0 else float("nan")
            points.append(EigenTailPoint(float(eps), p, lp, scaled))
    else:
        raise ArgumentOutOfRange(f"unknown tail method {method!r}")
    return points
