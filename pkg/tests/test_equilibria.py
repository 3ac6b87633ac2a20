"""Equilibrium constructors and the full enumeration."""

import numpy as np
import pytest

import corruption_mfg as cm
from support import (
    BASELINE,
    THREE_EQ,
    bisect_root,
    make_params,
    max_rhs,
    random_params,
)


# ---------------------------------------------------------------------------
# the quadratic Q


def test_q_hand_coefficients():
    assert cm.q_coefficients(BASELINE) == (0.0, 3.0, -1.0)
    assert cm.q_polynomial(BASELINE, 1 / 3) == pytest.approx(0.0, abs=1e-15)
    p = make_params(q_soc=1.0, q_inf=2.0)
    assert cm.q_coefficients(p) == (0.0, 4.0, -1.0)  # degenerate to linear
    p3 = THREE_EQ
    alpha, beta, gamma = cm.q_coefficients(p3)
    assert alpha == pytest.approx(-1.45, abs=1e-15)
    assert beta == pytest.approx(1.82, abs=1e-15)
    assert gamma == pytest.approx(-0.2, abs=1e-15)


def test_q_sign_structure():
    rng = np.random.default_rng(20)
    for _ in range(500):
        p = random_params(rng)
        assert cm.q_polynomial(p, 0.0) == pytest.approx(-p.r * p.b, abs=0)
        assert cm.q_polynomial(p, 0.0) < 0
        q1 = cm.q_polynomial(p, 1.0)
        assert q1 > 0
        assert q1 == pytest.approx(p.lam * (p.q_soc + p.r + p.b), rel=1e-12)


# ---------------------------------------------------------------------------
# corrupt root


def test_corrupt_root_interaction_free():
    x_h, x_c = cm.corrupt_root(BASELINE)
    assert x_h == pytest.approx(1 / 3, abs=1e-15)
    assert x_c == pytest.approx(1 / 3, abs=1e-15)


def test_corrupt_root_linear_degenerate():
    x_h, _ = cm.corrupt_root(make_params(q_soc=1.0, q_inf=2.0))
    assert x_h == pytest.approx(0.25, abs=1e-15)


def test_corrupt_root_against_bisection():
    x_h, _ = cm.corrupt_root(THREE_EQ)
    oracle = bisect_root(lambda t: cm.q_polynomial(THREE_EQ, t), 0.0, 1.0, tol=1e-13)
    assert abs(x_h - oracle) <= 1e-10
    assert x_h == pytest.approx(0.12168759, abs=1e-6)

    rng = np.random.default_rng(21)
    for _ in range(200):
        p = random_params(rng)
        x_h, x_c = cm.corrupt_root(p)
        oracle = bisect_root(lambda t: cm.q_polynomial(p, t), 0.0, 1.0, tol=1e-13)
        assert abs(x_h - oracle) <= 1e-10


def test_corrupt_root_bounds_and_residual():
    rng = np.random.default_rng(22)
    for _ in range(500):
        p = random_params(rng)
        x_h, x_c = cm.corrupt_root(p)
        assert 0.0 < x_h < 1.0
        assert 0.0 < x_c < 1.0
        assert x_h + x_c < 1.0
        coeff_scale = max(abs(c) for c in cm.q_coefficients(p))
        assert abs(cm.q_polynomial(p, x_h)) <= 1e-12 * coeff_scale


# ---------------------------------------------------------------------------
# honest interior point


def test_honest_interior_hand_value():
    p = make_params(lam=0.1, r=1.0, b=0.2, q_soc=0.5, q_inf=1.0, w_C=1.1)
    # x_bar = 2 * (0.1 - 0.2) < 0, gap = 0.5: point = (0.3/0.5, 0.2/0.75)
    pair = cm.honest_interior(p)
    assert pair is not None
    assert pair[0] == pytest.approx(0.6, abs=1e-15)
    assert pair[1] == pytest.approx(0.2 / 0.75, abs=1e-15)


def test_honest_interior_absent_without_dominant_infection():
    assert cm.honest_interior(make_params(q_soc=2.0, q_inf=2.0, w_C=1.5)) is None
    assert cm.honest_interior(make_params(q_soc=3.0, q_inf=1.0, w_C=1.5)) is None


def test_honest_interior_absent_when_ratio_exceeds_one():
    # gap = 0.5 but (b + lam) / gap = 2.2 >= 1
    assert cm.honest_interior(make_params(q_soc=0.5, q_inf=1.0, w_C=1.5)) is None


def test_honest_interior_absent_when_threshold_exceeds_it():
    # Same kinetics as the three-equilibria set but a higher corrupt wage
    # pushes x_bar = 0.25 above the candidate point 0.2.
    p = make_params(lam=0.1, r=1.0, b=0.2, q_soc=0.5, q_inf=2.0, w_C=1.325)
    assert cm.classifier_xbar(p).value == pytest.approx(0.25, abs=1e-12)
    assert cm.honest_interior(p) is None


def test_honest_interior_matches_companion_relation():
    # x_C** must also satisfy the shared fixed-point relation
    # x_C = (1 - x_H) r / (r + b + q_soc x_H).
    rng = np.random.default_rng(23)
    found = 0
    while found < 100:
        p = random_params(rng)
        pair = cm.honest_interior(p)
        if pair is None:
            continue
        found += 1
        x_h, x_c = pair
        expected = (1.0 - x_h) * p.r / (p.r + p.b + p.q_soc * x_h)
        assert abs(x_c - expected) <= 1e-12


# ---------------------------------------------------------------------------
# honest boundary


def test_honest_boundary_present_for_low_threshold():
    p = make_params(q_soc=1.0, f=1.0, w_H=5.0)  # x_bar = -1/6
    rep = cm.honest_boundary(p)
    assert rep is not None
    assert rep.state.as_tuple() == (0.0, 1.0, 0.0)
    assert rep.behavior is cm.Behavior.HONEST
    assert rep.diagnostics.residual == 0.0


def test_honest_boundary_absent_for_high_threshold():
    assert cm.honest_boundary(make_params(q_soc=1.0)) is None  # x_bar = 8
    assert cm.honest_boundary(BASELINE) is None  # x_bar = +inf


def test_honest_boundary_tie():
    p = make_params(q_soc=1.0, w_C=3.0)  # x_bar = 1 exactly
    rep = cm.honest_boundary(p)
    assert rep is not None
    assert rep.behavior is cm.Behavior.INDIFFERENT
    assert rep.warnings


# ---------------------------------------------------------------------------
# enumeration


def test_enumerate_unique_corrupt():
    reports = cm.enumerate_equilibria(BASELINE)
    assert len(reports) == 1
    rep = reports[0]
    assert rep.provenance is cm.Provenance.CORRUPT_ROOT
    assert rep.behavior is cm.Behavior.CORRUPT
    assert rep.state.x_H == pytest.approx(1 / 3, abs=1e-12)
    assert rep.diagnostics.residual <= 1e-9


def test_enumerate_three_equilibria_ordering():
    # Independent oracles: threshold by hand, root by bisection, interior by hand.
    p = THREE_EQ
    x_bar = (1.0 / 0.5) * (1.0 * 0.275 / 1.0 - 0.2)
    assert x_bar == pytest.approx(0.15, abs=1e-12)
    assert cm.q_polynomial(p, 0.15) > 0
    root_oracle = bisect_root(lambda t: cm.q_polynomial(p, t), 0.0, 1.0, tol=1e-13)
    interior_oracle = (0.2 + 0.1) / (2.0 - 0.5)

    reports = cm.enumerate_equilibria(p)
    assert [rep.provenance for rep in reports] == [
        cm.Provenance.CORRUPT_ROOT,
        cm.Provenance.HONEST_INTERIOR,
        cm.Provenance.HONEST_BOUNDARY,
    ]
    xs = [rep.state.x_H for rep in reports]
    assert xs[0] == pytest.approx(root_oracle, abs=1e-10)
    assert xs[1] == pytest.approx(interior_oracle, abs=1e-12)
    assert xs[2] == 1.0
    assert 0.0 < xs[0] < x_bar < xs[1] < 1.0
    assert [rep.behavior for rep in reports] == [
        cm.Behavior.CORRUPT,
        cm.Behavior.HONEST,
        cm.Behavior.HONEST,
    ]


def test_enumerate_unique_honest_boundary():
    # x_bar < 0 and no dominant infection: only the boundary survives.
    p = make_params(f=1.0, q_soc=1.0, q_inf=0.0, w_H=5.0, w_C=5.5)
    reports = cm.enumerate_equilibria(p)
    assert len(reports) == 1
    assert reports[0].provenance is cm.Provenance.HONEST_BOUNDARY
    assert reports[0].state.x_H == 1.0


def test_enumerate_properties_random():
    rng = np.random.default_rng(24)
    for _ in range(2000):
        p = random_params(rng)
        reports = cm.enumerate_equilibria(p)
        assert 1 <= len(reports) <= 3
        assert [r.state.x_H for r in reports] == sorted(r.state.x_H for r in reports)
        for rep in reports:
            assert max_rhs(p, rep.state, rep.strategy) <= 1e-9
            assert cm.mfg_consistent(p, rep)


def test_enumerate_rejects_invalid_params():
    with pytest.raises(cm.ParameterError):
        cm.enumerate_equilibria(make_params(w_C=0.5))


# ---------------------------------------------------------------------------
# interaction-free constructor


def test_no_interaction_corrupt_case():
    rep = cm.no_interaction_equilibrium(BASELINE)  # 10 >= 0 + 1*2
    assert rep.behavior is cm.Behavior.CORRUPT
    assert rep.provenance is cm.Provenance.NO_INTERACTION
    for got, want in zip(rep.state.as_tuple(), (1 / 3, 1 / 3, 1 / 3)):
        assert got == pytest.approx(want, abs=1e-12)


def test_no_interaction_honest_case():
    rep = cm.no_interaction_equilibrium(make_params(w_H=5.0, w_C=5.5))  # 5.5 < 10
    assert rep.behavior is cm.Behavior.HONEST
    assert rep.state.as_tuple() == (0.0, 1.0, 0.0)


def test_no_interaction_tie():
    rep = cm.no_interaction_equilibrium(make_params(w_C=2.0))  # exactly bf + 2
    assert rep.behavior is cm.Behavior.INDIFFERENT
    assert rep.warnings


def test_no_interaction_requires_zero_couplings():
    with pytest.raises(ValueError):
        cm.no_interaction_equilibrium(make_params(q_soc=0.5))


def test_no_interaction_agrees_with_enumeration():
    rng = np.random.default_rng(25)
    for _ in range(300):
        p = random_params(rng, zero_q=True)
        rep = cm.no_interaction_equilibrium(p)
        if rep.behavior is cm.Behavior.INDIFFERENT:
            continue
        reports = cm.enumerate_equilibria(p)
        assert len(reports) == 1
        assert reports[0].behavior is rep.behavior
        assert reports[0].state.x_H == pytest.approx(rep.state.x_H, abs=1e-12)
        assert reports[0].state.x_C == pytest.approx(rep.state.x_C, abs=1e-12)


# ---------------------------------------------------------------------------
# brute-force grid oracle


@pytest.mark.parametrize(
    "p",
    [
        BASELINE,
        THREE_EQ,
        make_params(f=1.0, q_soc=1.0, q_inf=0.0, w_H=5.0, w_C=5.5),
    ],
    ids=["interaction_free", "three_equilibria", "honest_only"],
)
def test_grid_oracle_equivalence(p):
    """Exhaustive scan of the simplex: every near-fixed, regime-consistent
    grid point sits next to a returned equilibrium, and each returned
    equilibrium is reachable by the same filter."""
    reports = cm.enumerate_equilibria(p)
    scale = cm.rate_scale(p)
    n = 200
    grid = np.arange(n + 1) / n
    cutoff = 0.0025 * scale
    pairs = [(cm.CORRUPT_PROFILE, cm.Behavior.CORRUPT), (cm.HONEST_PROFILE, cm.Behavior.HONEST)]
    matched = {id(rep): False for rep in reports}
    for profile, behavior in pairs:
        for x_h in grid:
            for x_c in grid:
                if x_h + x_c > 1.0:
                    continue
                x = cm.PopulationState(1.0 - x_h - x_c, float(x_h), float(x_c))
                if max_rhs(p, x, profile) > cutoff:
                    continue
                resp = cm.best_response(p, x)
                if resp.behavior is not cm.Behavior.INDIFFERENT and resp.behavior is not behavior:
                    continue
                dists = {
                    id(rep): max(abs(x.x_H - rep.state.x_H), abs(x.x_C - rep.state.x_C))
                    for rep in reports
                    if rep.strategy == profile or rep.behavior is cm.Behavior.INDIFFERENT
                }
                assert dists, "filtered grid point with no candidate equilibrium"
                best = min(dists, key=dists.get)
                assert dists[best] <= 0.025
                matched[best] = True
    assert all(matched.values()), "an equilibrium was never found by the grid scan"
