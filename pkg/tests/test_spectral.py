import math

import numpy as np
import pytest

from rwrc.conductance import ConductanceField, sample_field
from rwrc.domain import box_domain, build_domain
from rwrc.errors import DomainMismatch, UnsupportedDomain
from rwrc.profiles import ProbabilityProfile
from rwrc.rates import dv_rate_I
from rwrc.spectral import (
    assemble,
    eigen,
    eigen_tail,
    sandwich_check,
    semigroup_nonexit,
)
from rwrc.tail_law import TailLaw, cdf
from rwrc.transforms import log_pair_sum_tail
from rwrc.variational import solve_L
from rwrc.walk import nonexit_mc


def test_assemble_single_site():
    dom = box_domain(1, 0)
    f = ConductanceField(dom, np.array([2.0, 5.0]))
    op = assemble(f, dom)
    assert op.matrix.shape == (1, 1)
    assert op.matrix[0, 0] == 7.0


def test_assemble_two_sites():
    dom = build_domain([[0], [1]], 1)
    # canonical edge order: (-1,0), (0,1), (1,2)
    f = ConductanceField(dom, np.array([3.0, 2.0, 4.0]))
    op = assemble(f, dom)
    assert np.allclose(op.matrix, [[5.0, -2.0], [-2.0, 6.0]])
    assert np.allclose(op.matrix, op.matrix.T)


def test_assemble_domain_mismatch():
    f = ConductanceField(box_domain(1, 0), np.array([1.0, 1.0]))
    with pytest.raises(DomainMismatch):
        assemble(f, box_domain(1, 1))


def test_quadratic_form_is_dirichlet_rate():
    law = TailLaw(1.0, 1.0)
    rng = np.random.default_rng(3)
    for dom in (build_domain([[0], [1]], 1), box_domain(1, 1), box_domain(2, 1)):
        for _ in range(30):
            f = sample_field(law, dom, rng)
            op = assemble(f, dom)
            g = ProbabilityProfile.normalized(dom, rng.random(dom.n_sites) + 0.05)
            quad = float(g.values @ op.matrix @ g.values)
            assert quad == pytest.approx(dv_rate_I(f, g), rel=1e-12, abs=1e-12)


def test_eigen_1x1():
    dom = box_domain(1, 0)
    dec = eigen(assemble(ConductanceField(dom, np.array([1.5, 2.5])), dom))
    assert dec.eigenvalues[0] == pytest.approx(4.0, rel=1e-14)
    assert abs(dec.eigenvectors[0, 0]) == pytest.approx(1.0, rel=1e-14)


def test_eigen_2x2_hand_values():
    dom = build_domain([[0], [1]], 1)
    f = ConductanceField(dom, np.array([1.0, 1.0, 1.0]))
    dec = eigen(assemble(f, dom))
    assert np.allclose(dec.eigenvalues, [1.0, 3.0], rtol=1e-12)


def test_eigen_matches_lapack():
    law = TailLaw(1.0, 1.0)
    rng = np.random.default_rng(9)
    for dom in (box_domain(1, 2), box_domain(2, 1)):
        for _ in range(25):
            f = sample_field(law, dom, rng)
            a = assemble(f, dom).matrix
            dec = eigen(assemble(f, dom))
            ref = np.linalg.eigvalsh(a)
            scale = np.linalg.norm(a)
            assert np.allclose(dec.eigenvalues, ref, atol=1e-10 * scale, rtol=1e-10)
            v = dec.eigenvectors
            assert np.allclose(v.T @ v, np.eye(dom.n_sites), atol=1e-10)
            res = a @ v - v * dec.eigenvalues[None, :]
            assert np.abs(res).max() <= 1e-10 * scale
            assert dec.eigenvalues[0] > 0
            assert np.all(np.diff(dec.eigenvalues) >= -1e-12 * scale)


def test_semigroup_values():
    dom = box_domain(1, 0)
    f = ConductanceField(dom, np.array([1.0, 1.0]))
    assert semigroup_nonexit(f, dom, 0.0) == pytest.approx(1.0, abs=1e-14)
    assert semigroup_nonexit(f, dom, 1.0) == pytest.approx(math.exp(-2.0), rel=1e-13)


def test_semigroup_monotone_in_t():
    dom = box_domain(1, 1)
    f = sample_field(TailLaw(1.0, 1.0), dom, np.random.default_rng(12))
    ts = np.linspace(0.0, 6.0, 25)
    vals = [semigroup_nonexit(f, dom, t) for t in ts]
    assert np.all(np.diff(vals) <= 1e-14)


def test_semigroup_vs_mc():
    dom = build_domain([[0], [1]], 1)
    f = sample_field(TailLaw(1.0, 1.0), dom, np.random.default_rng(14))
    p = semigroup_nonexit(f, dom, 1.0)
    est, _ = nonexit_mc(f, dom, 1.0, 100_000, np.random.default_rng(15))
    se = math.sqrt(p * (1 - p) / 100_000)
    assert abs(est - p) <= 3 * se


def test_rayleigh_bound():
    dom = build_domain([[0], [1], [2]], 1)
    f = sample_field(TailLaw(1.0, 1.0), dom, np.random.default_rng(16))
    dec = eigen(assemble(f, dom))
    g = solve_L(dom, 1.0).minimizer
    assert dec.eigenvalues[0] <= dv_rate_I(f, g) + 1e-12


def test_sandwich_single_site_equalities():
    dom = box_domain(1, 0)
    f = ConductanceField(dom, np.array([1.2, 0.7]))
    for t in (0.0, 1.0, 5.0):
        rep = sandwich_check(f, dom, t)
        assert rep["upper_margin"] == pytest.approx(0.0, abs=1e-14)
        assert rep["lower_margin"] == pytest.approx(0.0, abs=1e-14)
    rep0 = sandwich_check(f, dom, 0.0)
    assert rep0["p0"] == 1.0 and rep0["upper"] == 1.0


def test_sandwich_property():
    dom = build_domain([[0], [1]], 1)
    law = TailLaw(1.0, 1.0)
    rng = np.random.default_rng(18)
    for _ in range(100):
        f = sample_field(law, dom, rng)
        for t in (1.0, 10.0):
            rep = sandwich_check(f, dom, t)
            assert rep["upper_margin"] >= -1e-10
            assert rep["lower_margin"] >= -1e-10


def test_eigen_tail_quadrature():
    law = TailLaw(1.0, 1.0)
    dom = box_domain(1, 0)
    pts = eigen_tail(law, dom, [0.01], method="quadrature")
    # scaled tail heads to -D*L^(eta+1) = -4
    assert abs(pts[0].scaled_log - (-4.0)) <= 0.05 * 4.0
    probs = [p.prob for p in eigen_tail(law, dom, [0.1, 0.5, 1.0, 2.0], method="quadrature")]
    assert np.all(np.diff(probs) >= 0)


def test_eigen_tail_containment_bound():
    # P(lambda <= eps) >= P(both weights <= eps/2) = cdf(eps/2)^2
    law = TailLaw(1.0, 1.0)
    dom = box_domain(1, 0)
    for eps in (0.5, 1.0, 3.0):
        p = eigen_tail(law, dom, [eps], method="quadrature")[0].prob
        assert p >= cdf(law, eps / 2.0) ** 2


def test_eigen_tail_mc_vs_quadrature():
    law = TailLaw(1.0, 1.0)
    dom = box_domain(1, 0)
    n = 40_000
    pts = eigen_tail(law, dom, [0.8, 1.5], method="mc", n_fields=n, rng=np.random.default_rng(25))
    for pt in pts:
        exact = math.exp(log_pair_sum_tail(law, pt.eps))
        se = math.sqrt(exact * (1 - exact) / n)
        assert abs(pt.prob - exact) <= 3 * se
    probs = [p.prob for p in pts]
    assert np.all(np.diff(probs) >= 0)


def test_eigen_tail_mc_multisite():
    law = TailLaw(1.0, 1.0)
    dom = build_domain([[0], [1]], 1)
    pts = eigen_tail(law, dom, [0.5], method="mc", n_fields=4000, rng=np.random.default_rng(26))
    assert 0.0 <= pts[0].prob <= 1.0


def test_eigen_tail_quadrature_requires_single_site():
    with pytest.raises(UnsupportedDomain):
        eigen_tail(TailLaw(1.0, 1.0), build_domain([[0], [1]], 1), [0.1], method="quadrature")
