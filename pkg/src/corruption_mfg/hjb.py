"""Stationary dynamic-programming layer: value functions and best responses.

For a frozen background distribution ``x`` the tagged agent's long-run
average payoff solves a three-line stationary Bellman system.  Normalizing
``g_R = 0`` and shifting wages by ``w_R`` reduces it to a 2x2 linear system
per behavioral regime, solved here in closed form.  The regime boundary is a
single threshold ``x_bar`` on the honest fraction: corruption pays iff
``x_H <= x_bar``.  A discounted-criterion variant (3x3 solve, no
normalization) is provided alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Behavior, ModelParams, PopulationState

# Absolute tolerance for payoff ties and for x_H vs x_bar comparisons.
# Inside the band the agent is reported indifferent rather than letting
# round-off pick a regime.
TIE_TOL = 1e-9


class SingularSystemError(RuntimeError):
    """The discounted Bellman system is singular (parameter invariant breach)."""


@dataclass(frozen=True)
class ValueFunction:
    """Stationary payoffs per state.

    With ``normalized=True`` the values use the ``g_R = 0`` convention on
    ``w_R``-shifted wages and ``mu`` is the absolute optimal average payoff
    per unit time, ``mu = r * g_H + w_R``.  Discounted values are absolute
    (``normalized=False``) and carry no ``mu``.
    """

    g_R: float
    g_H: float
    g_C: float
    mu: float | None = None
    normalized: bool = True


@dataclass(frozen=True)
class RegimeSolution:
    """Closed-form value under an assumed regime, plus its self-consistency.

    ``consistent`` records whether the value ordering of ``g_C`` vs ``g_H``
    supports the assumed regime within :data:`TIE_TOL`.
    """

    value: ValueFunction
    assumed_regime: Behavior
    consistent: bool


@dataclass(frozen=True)
class ClassifierThreshold:
    """The regime threshold on the honest fraction, possibly infinite.

    ``value`` is +/-inf when ``q_soc = 0`` (sign of the bracket decides);
    ``indifferent_everywhere`` flags the measure-zero corner ``q_soc = 0``
    with a zero bracket, where both regimes tie at every ``x``.
    """

    value: float
    indifferent_everywhere: bool = False


def _threshold(p: ModelParams, rate: float) -> ClassifierThreshold:
    bracket = rate * (p.w_C - p.w_H) / (p.w_H - p.w_R + rate * p.f) - p.b
    if p.q_soc > 0.0:
        return ClassifierThreshold(bracket / p.q_soc)
    if bracket > 0.0:
        return ClassifierThreshold(math.inf)
    if bracket < 0.0:
        return ClassifierThreshold(-math.inf)
    return ClassifierThreshold(math.inf, indifferent_everywhere=True)


def classifier_xbar(p: ModelParams) -> ClassifierThreshold:
    """Threshold ``(1/q_soc) [ r (w_C - w_H) / (w_H - w_R + r f) - b ]``.

    Corruption is individually optimal where ``x_H <= x_bar`` and honesty
    where ``x_H >= x_bar``.  The denominator is positive because
    ``w_H > w_R`` is required of valid parameters.
    """
    return _threshold(p, p.r)


def classifier_xbar_discounted(p: ModelParams, delta: float) -> ClassifierThreshold:
    """Discounted-criterion threshold: ``r`` is replaced by ``r + delta``.

    Reduces exactly to :func:`classifier_xbar` at ``delta = 0``.
    """
    return _threshold(p, p.r + delta)


def solve_regime_corrupt(p: ModelParams, x: PopulationState) -> RegimeSolution:
    """Average-payoff values assuming corruption is optimal (u_H=1, u_C=0).

    On shifted wages with ``g_R = 0`` the two remaining Bellman lines are
    linear in ``(g_H, g_C)``::

        w_H + (lam + q_inf x_C) (g_C - g_H)            = r g_H
        w_C - k f - k g_C                              = r g_H,   k = b + q_soc x_H

    whose solution has common denominator ``r (a + k) + a k`` with
    ``a = lam + q_inf x_C``; the denominator is strictly positive for valid
    parameters.
    """
    a = p.lam + p.q_inf * x.x_C
    k = p.b + p.q_soc * x.x_H
    w_h = p.w_H - p.w_R
    net_c = (p.w_C - p.w_R) - k * p.f
    den = p.r * (a + k) + a * k
    g_C = ((p.r + a) * net_c - p.r * w_h) / den
    g_H = (a * net_c + k * w_h) / den
    value = ValueFunction(0.0, g_H, g_C, mu=p.r * g_H + p.w_R)
    return RegimeSolution(value, Behavior.CORRUPT, consistent=g_C >= g_H - TIE_TOL)


def solve_regime_honest(p: ModelParams, x: PopulationState) -> RegimeSolution:
    """Average-payoff values assuming honesty is optimal (u_H=0, u_C=1).

    Same reduction as :func:`solve_regime_corrupt` with the max resolved the
    other way; the denominator becomes ``r (lam + c + k) + c k`` with
    ``c = q_inf x_C``.
    """
    c = p.q_inf * x.x_C
    k = p.b + p.q_soc * x.x_H
    w_h = p.w_H - p.w_R
    net_c = (p.w_C - p.w_R) - k * p.f
    den = p.r * (p.lam + c + k) + c * k
    g_C = ((p.r + c) * net_c + (p.lam - p.r) * w_h) / den
    g_H = (c * net_c + (p.lam + k) * w_h) / den
    value = ValueFunction(0.0, g_H, g_C, mu=p.r * g_H + p.w_R)
    return RegimeSolution(value, Behavior.HONEST, consistent=g_C <= g_H + TIE_TOL)


@dataclass(frozen=True)
class BestResponse:
    """Optimal behavior at a background ``x``, with both branch solutions attached."""

    behavior: Behavior
    value: ValueFunction
    corrupt: RegimeSolution
    honest: RegimeSolution
    threshold: ClassifierThreshold


def best_response(p: ModelParams, x: PopulationState) -> BestResponse:
    """Classify the optimal regime at ``x`` and return the solving value.

    Corrupt when ``x_H < x_bar - TIE_TOL``, honest when ``x_H > x_bar +
    TIE_TOL``, indifferent inside the tie band (both branch values then agree
    within tolerance; the corrupt branch is reported as ``value``).
    """
    threshold = classifier_xbar(p)
    corrupt = solve_regime_corrupt(p, x)
    honest = solve_regime_honest(p, x)
    if threshold.indifferent_everywhere:
        behavior = Behavior.INDIFFERENT
    elif x.x_H < threshold.value - TIE_TOL:
        behavior = Behavior.CORRUPT
    elif x.x_H > threshold.value + TIE_TOL:
        behavior = Behavior.HONEST
    else:
        behavior = Behavior.INDIFFERENT
    value = honest.value if behavior is Behavior.HONEST else corrupt.value
    return BestResponse(behavior, value, corrupt, honest, threshold)


def solve_discounted(
    p: ModelParams, x: PopulationState, delta: float, regime: Behavior
) -> ValueFunction:
    """Absolute discounted values with the max resolved by ``regime``.

    Solves the 3x3 linear system (delta > 0 makes it strictly diagonally
    dominant, hence nonsingular)::

        (delta + r) g_R - r g_H                              = w_R
        (delta + a) g_H - a g_C                              = w_H
        (delta + lam u_C + k) g_C - lam u_C g_H - k g_R      = w_C - k f

    with ``a = lam u_H + q_inf x_C`` and ``k = b + q_soc x_H``.
    """
    if delta <= 0:
        raise ValueError("delta must be > 0 for the discounted criterion")
    u = regime.profile()
    a = p.lam * u.u_H + p.q_inf * x.x_C
    k = p.b + p.q_soc * x.x_H
    swap_back = p.lam * u.u_C
    mat = np.array(
        [
            [delta + p.r, -p.r, 0.0],
            [0.0, delta + a, -a],
            [-k, -swap_back, delta + swap_back + k],
        ]
    )
    rhs = np.array([p.w_R, p.w_H, p.w_C - k * p.f])
    try:
        g = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"discounted system singular at delta={delta}") from exc
    return ValueFunction(float(g[0]), float(g[1]), float(g[2]), mu=None, normalized=False)
