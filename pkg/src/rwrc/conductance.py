"""Edge-weight environments on a domain.

A conductance field assigns a strictly positive weight to every canonical
edge.  Besides sampling and rescaling, this module computes the profile-
optimal environment shape: for a profile g, the weight that minimizes the
per-edge tradeoff between occupation cost and environment cost is
``(dcoef*eta)**(1/(eta+1)) * |g(a)-g(b)|**(-2/(eta+1))``; edges with equal
profile values are unconstrained and receive the cap value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .domain import Domain, build_domain, domains_equal
from .errors import FieldMismatch, NonPositiveArgument, NonPositiveScale, NonPositiveWeight
from .profiles import ProbabilityProfile, edge_differences
from .tail_law import TailLaw, log_density, sample

DEFAULT_CAP = 1e6


@dataclass(eq=False)
class ConductanceField:
    domain: Domain
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if w.shape[0] != self.domain.n_edges:
            raise FieldMismatch(
                f"field has {w.shape[0]} weights for a domain with {self.domain.n_edges} edges"
            )
        if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
            raise NonPositiveWeight("edge weights must be strictly positive and finite")
        self.weights = w


def sample_field(law: TailLaw, dom: Domain, rng: np.random.Generator) -> ConductanceField:
    """Independent draw of every edge weight, in canonical edge order."""
    return ConductanceField(dom, sample(law, rng, dom.n_edges))


def scale_field(f: ConductanceField, c: float) -> ConductanceField:
    if not (np.isfinite(c) and c > 0):
        raise NonPositiveScale(f"scale must be positive and finite, got {c!r}")
    return ConductanceField(f.domain, f.weights * float(c))


def optimal_profile(
    g: ProbabilityProfile, law: TailLaw, cap: float = DEFAULT_CAP
) -> ConductanceField:
    """Environment shape minimizing occupation cost plus environment cost for g.

    Edges where g takes equal values at both endpoints impose no constraint
    and are set to ``cap``.
    """
    if not (np.isfinite(cap) and cap > 0):
        raise NonPositiveArgument(f"cap must be positive and finite, got {cap!r}")
    diffs = np.abs(edge_differences(g.domain, g.values))
    pref = (law.dcoef * law.eta) ** (1.0 / (law.eta + 1.0))
    safe = np.where(diffs > 0.0, diffs, 1.0)
    w = np.where(diffs > 0.0, pref * safe ** (-2.0 / (law.eta + 1.0)), float(cap))
    return ConductanceField(g.domain, w)


def log_prior_density(f: ConductanceField, law: TailLaw) -> float:
    """Joint log density of the field under independent per-edge draws."""
    return float(np.sum(log_density(law, f.weights)))


def site_totals(f: ConductanceField) -> np.ndarray:
    """Total incident weight at every site (the jump rate of the walk there)."""
    return f.weights[f.domain.site_edges].sum(axis=1)


def require_same_domain(f: ConductanceField, dom: Domain) -> None:
    if f.domain is not dom and not domains_equal(f.domain, dom):
        raise FieldMismatch("field domain does not match the requested domain")


def field_to_json(f: ConductanceField) -> str:
    """Domain plus weights in canonical edge order."""
    return json.dumps(
        {"domain": {"d": f.domain.d, "sites": f.domain.sites.tolist()}, "weights": f.weights.tolist()}
    )


def field_from_json(text: str) -> ConductanceField:
    doc = json.loads(text)
    dom = build_domain(doc["domain"]["sites"], int(doc["domain"]["d"]))
    return ConductanceField(dom, np.asarray(doc["weights"], dtype=float))
