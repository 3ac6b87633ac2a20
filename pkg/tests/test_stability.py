"""Jacobians, trace/determinant verdicts and the closed-form rules."""

import numpy as np
import pytest

import corruption_mfg as cm
from support import BASELINE, THREE_EQ, fd_jacobian, make_params, random_params, random_simplex


# ---------------------------------------------------------------------------
# jacobian


def test_jacobian_interaction_free_corrupt_point():
    x = cm.PopulationState(1 / 3, 1 / 3, 1 / 3)
    j = cm.jacobian(BASELINE, x, cm.CORRUPT_PROFILE)
    assert np.allclose(j, [[-2.0, -1.0], [1.0, -1.0]], atol=1e-15)


def test_jacobian_honest_boundary_eigenvalues():
    rng = np.random.default_rng(30)
    x = cm.PopulationState(0.0, 1.0, 0.0)
    for _ in range(50):
        p = random_params(rng)
        j = cm.jacobian(p, x, cm.HONEST_PROFILE)
        eig = sorted(np.linalg.eigvals(j).real)
        expected = sorted((-p.r, p.q_inf - p.q_soc - p.lam - p.b))
        assert np.allclose(eig, expected, atol=1e-10)


def test_jacobian_matches_finite_differences():
    rng = np.random.default_rng(31)
    for i in range(300):
        p = random_params(rng)
        x = random_simplex(rng, margin=1e-5)
        s = cm.ALL_PROFILES[i % 4]
        diff = np.max(np.abs(cm.jacobian(p, x, s) - fd_jacobian(p, x, s)))
        assert diff <= 1e-6


# ---------------------------------------------------------------------------
# trace/determinant verdict


def test_trace_det_hand_case():
    v = cm.trace_det_verdict(np.array([[-2.0, -1.0], [1.0, -1.0]]))
    assert v.classification is cm.Classification.STABLE
    assert v.trace == -3.0 and v.det == 3.0
    # roots of xi^2 + 3 xi + 3: complex pair with real part -1.5
    assert v.eigen_real_parts == (-1.5, -1.5)
    assert v.flag("trace_negative") and v.flag("det_positive")


def test_trace_det_saddle_and_source():
    saddle = cm.trace_det_verdict(np.array([[1.0, 0.0], [0.0, -2.0]]))
    assert saddle.classification is cm.Classification.UNSTABLE
    assert saddle.det < 0
    source = cm.trace_det_verdict(np.array([[0.5, 0.0], [0.0, 0.3]]))
    assert source.classification is cm.Classification.UNSTABLE
    assert source.trace > 0 and source.det > 0


def test_trace_det_marginal_center():
    center = cm.trace_det_verdict(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    assert center.classification is cm.Classification.MARGINAL


def test_eigen_real_parts_match_numpy():
    rng = np.random.default_rng(32)
    for _ in range(300):
        m = rng.normal(size=(2, 2)) * 3.0
        v = cm.trace_det_verdict(m)
        expected = sorted(np.linalg.eigvals(m).real)
        assert np.allclose(sorted(v.eigen_real_parts), expected, atol=1e-9)
        if v.classification is cm.Classification.STABLE:
            assert max(expected) < 0
        if max(expected) > 1e-6:
            assert v.classification is cm.Classification.UNSTABLE


# ---------------------------------------------------------------------------
# sufficient band for the corrupt point


def test_band_holds_for_equal_couplings():
    for q in (0.0, 0.3, 2.5):
        assert cm.corrupt_stability_band(make_params(q_soc=q, q_inf=q, w_C=3.0 + q))


def test_band_fails_for_three_equilibria_set():
    # q_soc - q_inf = -1.5 < -lam q_soc / r = -0.05
    assert not cm.corrupt_stability_band(THREE_EQ)


def test_band_implies_stable_corrupt_root():
    rng = np.random.default_rng(33)
    accepted = 0
    while accepted < 300:
        p = random_params(rng)
        if not cm.corrupt_stability_band(p):
            continue
        accepted += 1
        x_h, x_c = cm.corrupt_root(p)
        x = cm.PopulationState(1.0 - x_h - x_c, x_h, x_c)
        v = cm.trace_det_verdict(cm.jacobian(p, x, cm.CORRUPT_PROFILE))
        assert v.classification is cm.Classification.STABLE


# ---------------------------------------------------------------------------
# classify_equilibrium


def test_classify_interaction_free_corrupt():
    rep = cm.enumerate_equilibria(BASELINE)[0]
    v = cm.classify_equilibrium(BASELINE, rep)
    assert v.classification is cm.Classification.STABLE
    assert v.method is cm.Method.CLOSED_FORM
    assert v.flag("sufficient_band")


def test_classify_three_equilibria_verdicts():
    reports = cm.enumerate_equilibria(THREE_EQ)
    verdicts = [cm.classify_equilibrium(THREE_EQ, rep) for rep in reports]

    corrupt, interior, boundary = verdicts
    # sufficient band is inconclusive at the corrupt root: eigenvalue fallback
    assert corrupt.method is cm.Method.FALLBACK
    assert not corrupt.flag("sufficient_band")
    assert corrupt.classification is cm.Classification.STABLE

    assert interior.classification is cm.Classification.STABLE
    assert interior.method is cm.Method.CLOSED_FORM
    assert interior.flag("char_coefficients_positive")

    assert boundary.classification is cm.Classification.UNSTABLE
    assert boundary.method is cm.Method.CLOSED_FORM
    # edge rate q_inf - q_soc - lam - b = 1.2 > 0
    assert max(boundary.eigen_real_parts) == pytest.approx(1.2, abs=1e-12)


def test_classify_no_interaction_both_cases_stable():
    for p in (BASELINE, make_params(w_H=5.0, w_C=5.5)):
        rep = cm.no_interaction_equilibrium(p)
        v = cm.classify_equilibrium(p, rep)
        assert v.classification is cm.Classification.STABLE
        assert v.method is cm.Method.CLOSED_FORM


def test_honest_boundary_rule_matches_eigenvalues():
    rng = np.random.default_rng(34)
    found = 0
    while found < 200:
        p = random_params(rng)
        rep = cm.honest_boundary(p)
        if rep is None or rep.behavior is cm.Behavior.INDIFFERENT:
            continue
        found += 1
        v = cm.classify_equilibrium(p, rep)
        edge = p.q_inf - p.q_soc - p.lam - p.b
        if abs(edge) > 1e-9:
            want = cm.Classification.STABLE if edge < 0 else cm.Classification.UNSTABLE
            assert v.classification is want
            assert v.method is cm.Method.CLOSED_FORM


def test_honest_interior_always_stable():
    # Whenever the interior honest point exists, both characteristic
    # coefficients are positive and the verdict is stable.
    rng = np.random.default_rng(35)
    found = 0
    while found < 200:
        p = random_params(rng)
        reports = [
            r for r in cm.enumerate_equilibria(p)
            if r.provenance is cm.Provenance.HONEST_INTERIOR
        ]
        if not reports:
            continue
        found += 1
        v = cm.classify_equilibrium(p, reports[0])
        assert v.classification is cm.Classification.STABLE
        assert -v.trace > 0 and v.det > 0
