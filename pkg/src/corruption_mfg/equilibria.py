"""Enumeration of all stationary mean-field equilibria.

A stationary equilibrium is a distribution fixed under the common-strategy
kinetics whose strategy is individually optimal against that distribution.
There are at most three, built by three explicit constructors:

* the *corrupt root*: the unique zero in (0, 1) of a quadratic ``Q`` in
  ``x_H``, admissible while corruption stays optimal there;
* the *honest interior* point ``x_H = (b + lam) / (q_inf - q_soc)`` when the
  infection pressure dominates the social norm strongly enough;
* the *honest boundary* ``x = (0, 1, 0)``, present whenever honesty is
  optimal in a fully honest society (``x_bar < 1``).

A separate constructor covers the interaction-free case
``q_soc = q_inf = 0``, where a single wage/fine inequality decides between
the corrupt interior point and the honest boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .hjb import TIE_TOL, best_response, classifier_xbar
from .model import (
    Behavior,
    CORRUPT_PROFILE,
    HONEST_PROFILE,
    ModelParams,
    PopulationState,
    StrategyProfile,
    kinetic_rhs,
    validate_params,
)

# Relative threshold under which the quadratic's leading coefficient is
# treated as zero: (r+lam) q_soc - r q_inf crosses zero on a natural
# parameter surface, so the linear fallback must be seamless.
DEGENERATE_LEADING = 1e-14


class Provenance(Enum):
    """Which constructor produced an equilibrium."""

    CORRUPT_ROOT = "corrupt_root"
    HONEST_INTERIOR = "honest_interior"
    HONEST_BOUNDARY = "honest_boundary"
    NO_INTERACTION = "no_interaction"


@dataclass(frozen=True)
class EquilibriumDiagnostics:
    """Evidence attached to a report: Q at the point, the threshold, residual."""

    q_value: float
    x_bar: float
    residual: float
    flags: tuple[tuple[str, bool], ...] = ()

    def flag(self, name: str) -> bool:
        return dict(self.flags).get(name, False)


@dataclass(frozen=True)
class EquilibriumReport:
    state: PopulationState
    behavior: Behavior
    strategy: StrategyProfile
    provenance: Provenance
    diagnostics: EquilibriumDiagnostics
    warnings: tuple[str, ...] = ()


def q_coefficients(p: ModelParams) -> tuple[float, float, float]:
    """Coefficients (alpha, beta, gamma) of the corrupt fixed-point quadratic."""
    alpha = (p.r + p.lam) * p.q_soc - p.r * p.q_inf
    beta = p.r * (p.q_inf - p.q_soc) + p.lam * p.r + p.lam * p.b + p.r * p.b
    gamma = -p.r * p.b
    return alpha, beta, gamma


def q_polynomial(p: ModelParams, x_H: float) -> float:
    """Evaluate the corrupt-branch fixed-point quadratic at ``x_H``.

    ``Q(0) = -r b < 0`` and ``Q(1) = lam (q_soc + r + b) > 0`` for every
    valid parameter set, so Q has exactly one root in (0, 1).
    """
    alpha, beta, gamma = q_coefficients(p)
    return (alpha * x_H + beta) * x_H + gamma


def _companion_x_c(p: ModelParams, x_H: float) -> float:
    # Fixed-point relation shared by every interior equilibrium.
    return (1.0 - x_H) * p.r / (p.r + p.b + p.q_soc * x_H)


def corrupt_root(p: ModelParams) -> tuple[float, float]:
    """The corrupt-branch fixed point ``(x_H*, x_C*)``.

    ``x_H*`` is the unique root of Q in (0, 1), extracted with the
    product-form companion root to avoid cancellation and polished with one
    Newton step; ``x_C* = (1 - x_H*) r / (r + b + q_soc x_H*)``.
    """
    alpha, beta, gamma = q_coefficients(p)
    if abs(alpha) <= DEGENERATE_LEADING * abs(beta):
        root = -gamma / beta
    else:
        disc = beta * beta - 4.0 * alpha * gamma
        sign_b = 1.0 if beta >= 0.0 else -1.0
        q = -0.5 * (beta + sign_b * math.sqrt(disc))
        candidates = [c for c in (q / alpha, gamma / q) if 0.0 < c < 1.0]
        if len(candidates) != 1:
            # Sign change Q(0) < 0 < Q(1) guarantees exactly one; reaching
            # here means a parameter invariant was violated upstream.
            raise ArithmeticError(f"expected one root of Q in (0,1), got {candidates}")
        root = candidates[0]
        slope = 2.0 * alpha * root + beta
        if slope != 0.0:
            polished = root - ((alpha * root + beta) * root + gamma) / slope
            if 0.0 < polished < 1.0:
                root = polished
    return root, _companion_x_c(p, root)


def honest_interior(p: ModelParams) -> tuple[float, float] | None:
    """The interior honest fixed point ``(x_H**, x_C**)``, if admissible.

    Exists iff ``q_inf > q_soc`` and ``max(x_bar, 0) <= (b + lam) /
    (q_inf - q_soc) < 1``; then ``x_C** = r (q_inf - q_soc - b - lam) /
    ((r + b) q_inf + (lam - r) q_soc)``.
    """
    gap = p.q_inf - p.q_soc
    if gap <= 0.0:
        return None
    x_h = (p.b + p.lam) / gap
    if x_h >= 1.0:
        return None
    x_bar = classifier_xbar(p).value
    if max(x_bar, 0.0) > x_h:
        return None
    x_c = p.r * (gap - p.b - p.lam) / ((p.r + p.b) * p.q_inf + (p.lam - p.r) * p.q_soc)
    return x_h, x_c


def _report(
    p: ModelParams,
    state: PopulationState,
    behavior: Behavior,
    strategy: StrategyProfile,
    provenance: Provenance,
    x_bar: float,
    flags: tuple[tuple[str, bool], ...] = (),
    warnings: tuple[str, ...] = (),
) -> EquilibriumReport:
    residual = max(abs(v) for v in kinetic_rhs(p, state, strategy))
    diag = EquilibriumDiagnostics(
        q_value=q_polynomial(p, state.x_H), x_bar=x_bar, residual=residual, flags=flags
    )
    return EquilibriumReport(state, behavior, strategy, provenance, diag, warnings)


def honest_boundary(p: ModelParams) -> EquilibriumReport | None:
    """The all-honest boundary equilibrium ``x = (0, 1, 0)``, if present.

    Present with honest behavior iff ``x_bar < 1``; absent when
    ``x_bar > 1`` (corruption is optimal even in a fully honest society);
    at ``x_bar = 1`` reported indifferent with a warning.
    """
    threshold = classifier_xbar(p)
    x_bar = threshold.value
    state = PopulationState(0.0, 1.0, 0.0)
    if threshold.indifferent_everywhere or abs(x_bar - 1.0) <= TIE_TOL:
        return _report(
            p, state, Behavior.INDIFFERENT, HONEST_PROFILE, Provenance.HONEST_BOUNDARY,
            x_bar, flags=(("classifier_tie", True),),
            warnings=("classifier threshold ties with x_H = 1; both regimes are optimal here",),
        )
    if x_bar > 1.0:
        return None
    return _report(p, state, Behavior.HONEST, HONEST_PROFILE, Provenance.HONEST_BOUNDARY, x_bar)


def _corrupt_report(p: ModelParams, x_bar: float, tie: bool) -> EquilibriumReport:
    x_h, x_c = corrupt_root(p)
    state = PopulationState(1.0 - x_h - x_c, x_h, x_c)
    behavior = Behavior.INDIFFERENT if tie else Behavior.CORRUPT
    warnings = (
        ("corrupt root sits on the classifier boundary; both regimes are optimal here",)
        if tie
        else ()
    )
    return _report(
        p, state, behavior, CORRUPT_PROFILE, Provenance.CORRUPT_ROOT, x_bar,
        flags=(("classifier_tie", tie),), warnings=warnings,
    )


def enumerate_equilibria(p: ModelParams) -> list[EquilibriumReport]:
    """All stationary equilibria for ``p``, sorted by ``x_H`` (1 to 3 of them).

    The corrupt root is admitted when ``x_bar > 1`` or when ``x_bar`` lies in
    (0, 1] with ``Q(x_bar) >= 0`` (equivalently ``x_H* <= x_bar``; both forms
    are evaluated and must agree).  The honest boundary is admitted when
    ``x_bar < 1`` and the honest interior point whenever it exists.
    """
    validate_params(p)
    threshold = classifier_xbar(p)
    x_bar = threshold.value
    reports: list[EquilibriumReport] = []

    if threshold.indifferent_everywhere:
        reports.append(
            _report(
                p,
                _corrupt_state(p),
                Behavior.INDIFFERENT,
                CORRUPT_PROFILE,
                Provenance.CORRUPT_ROOT,
                x_bar,
                flags=(("indifferent_everywhere", True),),
                warnings=("regimes tie at every x (q_soc = 0 with zero bracket)",),
            )
        )
    elif x_bar > 1.0 + TIE_TOL:
        reports.append(_corrupt_report(p, x_bar, tie=False))
    elif x_bar > 0.0:
        q_at_bar = q_polynomial(p, min(x_bar, 1.0))
        x_h_star, _ = corrupt_root(p)
        below = x_h_star <= x_bar + TIE_TOL
        if (q_at_bar >= 0.0) != below and abs(x_h_star - x_bar) > TIE_TOL:
            raise ArithmeticError(
                "admissibility checks disagree: "
                f"Q(x_bar)={q_at_bar!r} vs x_H*={x_h_star!r}, x_bar={x_bar!r}"
            )
        if below:
            reports.append(_corrupt_report(p, x_bar, tie=abs(x_h_star - x_bar) <= TIE_TOL))

    boundary = honest_boundary(p)
    if boundary is not None:
        reports.append(boundary)

    interior = honest_interior(p)
    if interior is not None:
        x_h, x_c = interior
        tie = abs(x_h - x_bar) <= TIE_TOL
        reports.append(
            _report(
                p,
                PopulationState(1.0 - x_h - x_c, x_h, x_c),
                Behavior.INDIFFERENT if tie else Behavior.HONEST,
                HONEST_PROFILE,
                Provenance.HONEST_INTERIOR,
                x_bar,
                flags=(("classifier_tie", tie),),
                warnings=(
                    ("interior honest point sits on the classifier boundary",) if tie else ()
                ),
            )
        )

    reports.sort(key=lambda rep: rep.state.x_H)
    return reports


def _corrupt_state(p: ModelParams) -> PopulationState:
    x_h, x_c = corrupt_root(p)
    return PopulationState(1.0 - x_h - x_c, x_h, x_c)


def no_interaction_equilibrium(p: ModelParams) -> EquilibriumReport:
    """The unique equilibrium when ``q_soc = q_inf = 0``.

    Corruption is individually optimal iff
    ``w_C - w_R >= b f + (w_H - w_R)(1 + b/r)``; then the equilibrium is
    ``x_H* = r b / (lam r + lam b + r b)``, ``x_C* = r (1 - x_H*) / (r + b)``.
    Otherwise the honest boundary ``x = (0, 1, 0)`` is the equilibrium.
    Equality is reported indifferent with a warning.
    """
    validate_params(p)
    if p.q_soc != 0.0 or p.q_inf != 0.0:
        raise ValueError("no-interaction constructor requires q_soc = q_inf = 0")
    x_bar = classifier_xbar(p).value
    margin = (p.w_C - p.w_R) - (p.b * p.f + (p.w_H - p.w_R) * (1.0 + p.b / p.r))
    if margin > TIE_TOL:
        x_h = p.r * p.b / (p.lam * p.r + p.lam * p.b + p.r * p.b)
        x_c = p.r * (1.0 - x_h) / (p.r + p.b)
        return _report(
            p, PopulationState(1.0 - x_h - x_c, x_h, x_c), Behavior.CORRUPT,
            CORRUPT_PROFILE, Provenance.NO_INTERACTION, x_bar,
        )
    if margin < -TIE_TOL:
        return _report(
            p, PopulationState(0.0, 1.0, 0.0), Behavior.HONEST,
            HONEST_PROFILE, Provenance.NO_INTERACTION, x_bar,
        )
    x_h = p.r * p.b / (p.lam * p.r + p.lam * p.b + p.r * p.b)
    x_c = p.r * (1.0 - x_h) / (p.r + p.b)
    return _report(
        p, PopulationState(1.0 - x_h - x_c, x_h, x_c), Behavior.INDIFFERENT,
        CORRUPT_PROFILE, Provenance.NO_INTERACTION, x_bar,
        flags=(("payoff_tie", True),),
        warnings=("corrupt and honest payoffs tie exactly; both behaviors are optimal",),
    )


def mfg_consistent(p: ModelParams, report: EquilibriumReport) -> bool:
    """Check that the report's behavior is a best response at its state.

    Ties at the classifier boundary accept any behavior.
    """
    response = best_response(p, report.state)
    if response.behavior is Behavior.INDIFFERENT or report.behavior is Behavior.INDIFFERENT:
        return True
    return response.behavior is report.behavior
