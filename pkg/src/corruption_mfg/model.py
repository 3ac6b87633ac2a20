"""Core types and transition kinetics of the three-state corruption game.

Agents occupy one of three states: ``H`` (honest), ``C`` (corrupt) and ``R``
(reserved, the low-wage punishment job after detection).  Honest and corrupt
agents hold a binary intent ``u`` (stay / switch), executed at rate ``lam``;
detected corruption sends an agent to ``R`` at rate ``b + q_soc * x_H``
(principal's effort plus social-norm pressure), corrupt peers push honest
agents toward corruption at rate ``q_inf * x_C``, and reserved agents are
re-recruited into ``H`` at rate ``r``.

This module holds the parameter set, population/strategy value types, the
mean-field drift of the fraction vector ``x = (x_R, x_H, x_C)`` and the rate
tables of the finite-population chain and of a single tagged agent.  All
functions are pure; all value types are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

STATES = ("R", "H", "C")

# Simplex acceptance: integrators drift at round-off scale, so states are
# accepted with |sum - 1| <= SUM_TOL and components >= COMPONENT_FLOOR,
# then clamped into [0, 1].
SUM_TOL = 1e-9
COMPONENT_FLOOR = -1e-12


class ParameterError(ValueError):
    """A model parameter violates the admissibility inequalities."""


class SimplexError(ValueError):
    """A fraction vector is not on the 2-simplex within tolerance."""


@dataclass(frozen=True)
class ModelParams:
    """Exogenous coefficients of the game.

    Rates (per unit time): ``lam`` intent execution, ``r`` recruitment out of
    R, ``b`` principal's detection effort, ``q_soc`` social-norm boost to
    detection per unit honest fraction, ``q_inf`` corruption-infection rate
    per unit corrupt fraction.  Payoffs: wages ``w_R < w_H < w_C`` per unit
    time and fine ``f`` charged (as a flow, times the detection rate) while
    corrupt.  ``delta`` is the optional discount rate used only by the
    discounted-criterion operations.
    """

    lam: float
    r: float
    b: float
    f: float
    q_soc: float
    q_inf: float
    w_R: float
    w_H: float
    w_C: float
    delta: float | None = None


def validate_params(p: ModelParams) -> ModelParams:
    """Return ``p`` unchanged iff every admissibility inequality holds.

    Raises :class:`ParameterError` naming the first violated inequality, in
    the order: lam > 0, r > 0, b > 0, f >= 0, q_soc >= 0, q_inf >= 0,
    w_C > w_H, w_H > w_R, w_R >= 0, delta > 0 (when set).
    """
    for name in ("lam", "r", "b", "f", "q_soc", "q_inf", "w_R", "w_H", "w_C"):
        v = getattr(p, name)
        if not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ParameterError(f"{name} must be a finite number, got {v!r}")
    checks = (
        (p.lam > 0, "lambda > 0 violated"),
        (p.r > 0, "r > 0 violated"),
        (p.b > 0, "b > 0 violated"),
        (p.f >= 0, "f >= 0 violated"),
        (p.q_soc >= 0, "q_soc >= 0 violated"),
        (p.q_inf >= 0, "q_inf >= 0 violated"),
        (p.w_C > p.w_H, "w_C > w_H violated"),
        (p.w_H > p.w_R, "w_H > w_R violated"),
        (p.w_R >= 0, "w_R >= 0 violated"),
    )
    for ok, message in checks:
        if not ok:
            raise ParameterError(message)
    if p.delta is not None:
        if not math.isfinite(p.delta) or p.delta <= 0:
            raise ParameterError("delta > 0 violated")
    return p


@dataclass(frozen=True)
class PopulationState:
    """A point ``(x_R, x_H, x_C)`` on the 2-simplex (mean-field distribution)."""

    x_R: float
    x_H: float
    x_C: float

    def __post_init__(self):
        total = self.x_R + self.x_H + self.x_C
        if abs(total - 1.0) > SUM_TOL:
            raise SimplexError(f"fractions sum to {total!r}, not 1")
        for name in ("x_R", "x_H", "x_C"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < COMPONENT_FLOOR or v > 1.0 + SUM_TOL:
                raise SimplexError(f"{name} = {v!r} outside [0, 1]")
            object.__setattr__(self, name, min(max(v, 0.0), 1.0))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x_R, self.x_H, self.x_C)


@dataclass(frozen=True)
class PopulationCounts:
    """Agent head-counts ``(n_R, n_H, n_C)`` of a finite population."""

    n_R: int
    n_H: int
    n_C: int

    def __post_init__(self):
        for name in ("n_R", "n_H", "n_C"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")
        if self.N < 1:
            raise ValueError("total population must be >= 1")

    @property
    def N(self) -> int:
        return self.n_R + self.n_H + self.n_C

    def fractions(self) -> PopulationState:
        n = self.N
        return PopulationState(self.n_R / n, self.n_H / n, self.n_C / n)


@dataclass(frozen=True)
class StrategyProfile:
    """Binary switching intent for the two controllable states.

    ``u_H = 1`` means honest agents try to become corrupt, ``u_C = 1`` means
    corrupt agents try to clean themselves; 0 means stay put.  There is no
    control in state R.
    """

    u_H: int
    u_C: int

    def __post_init__(self):
        if self.u_H not in (0, 1) or self.u_C not in (0, 1):
            raise ValueError(f"controls must be 0 or 1, got ({self.u_H!r}, {self.u_C!r})")


CORRUPT_PROFILE = StrategyProfile(u_H=1, u_C=0)
HONEST_PROFILE = StrategyProfile(u_H=0, u_C=1)
ALL_PROFILES = (
    StrategyProfile(0, 0),
    StrategyProfile(0, 1),
    StrategyProfile(1, 0),
    StrategyProfile(1, 1),
)


class Behavior(Enum):
    """Named behavioral regimes of an individually optimal strategy."""

    CORRUPT = "corrupt"
    HONEST = "honest"
    INDIFFERENT = "indifferent"

    def profile(self) -> StrategyProfile:
        if self is Behavior.CORRUPT:
            return CORRUPT_PROFILE
        if self is Behavior.HONEST:
            return HONEST_PROFILE
        raise ValueError("indifferent behavior has no canonical strategy profile")

    @classmethod
    def from_profile(cls, u: StrategyProfile) -> "Behavior | None":
        if u == CORRUPT_PROFILE:
            return cls.CORRUPT
        if u == HONEST_PROFILE:
            return cls.HONEST
        return None


@dataclass(frozen=True)
class TransitionRateTable:
    """Sparse table of ``(source, target, rate)`` entries over {R, H, C}.

    Zero-rate transitions may be omitted; at most one entry per ordered pair.
    """

    entries: tuple[tuple[str, str, float], ...]

    def __post_init__(self):
        seen = set()
        for src, tgt, rate in self.entries:
            if src not in STATES or tgt not in STATES or src == tgt:
                raise ValueError(f"bad transition {src!r} -> {tgt!r}")
            if not math.isfinite(rate) or rate < 0:
                raise ValueError(f"rate for {src} -> {tgt} must be finite and >= 0, got {rate!r}")
            if (src, tgt) in seen:
                raise ValueError(f"duplicate entry for {src} -> {tgt}")
            seen.add((src, tgt))

    def rate(self, source: str, target: str) -> float:
        for src, tgt, rate in self.entries:
            if src == source and tgt == target:
                return rate
        return 0.0

    def as_dict(self) -> dict[tuple[str, str], float]:
        return {(src, tgt): rate for src, tgt, rate in self.entries}


def _rhs(lam, r, b, q_soc, q_inf, u_H, u_C, x_R, x_H, x_C):
    # Shared flow terms so the three components cancel exactly in floats.
    detection = (b + q_soc * x_H) * x_C
    recruitment = r * x_R
    switching = lam * (x_H * u_H - x_C * u_C)
    infection = q_inf * x_H * x_C
    return (
        detection - recruitment,
        recruitment - switching - infection,
        -detection + switching + infection,
    )


def kinetic_rhs(
    p: ModelParams, x: PopulationState, s: StrategyProfile
) -> tuple[float, float, float]:
    """Mean-field drift ``(dx_R/dt, dx_H/dt, dx_C/dt)`` under common strategy ``s``.

    Flows: C -> R at ``(b + q_soc x_H) x_C``, R -> H at ``r x_R``, net H <-> C
    switching ``lam (x_H u_H - x_C u_C)`` plus infection ``q_inf x_H x_C``.
    The three components sum to zero exactly (mass conservation).
    """
    return _rhs(p.lam, p.r, p.b, p.q_soc, p.q_inf, s.u_H, s.u_C, x.x_R, x.x_H, x.x_C)


def population_rates(
    p: ModelParams, n: PopulationCounts, s: StrategyProfile
) -> TransitionRateTable:
    """Aggregate jump rates of the finite-N population chain at counts ``n``.

    One agent moves per event: C->R at ``n_C (b + q_soc n_H/N)``, R->H at
    ``n_R r``, H->C at ``n_H (lam u_H + q_inf n_C/N)``, C->H at
    ``lam n_C u_C``.  Zero-rate entries are omitted.
    """
    N = n.N
    rates = (
        ("C", "R", n.n_C * (p.b + p.q_soc * n.n_H / N)),
        ("R", "H", n.n_R * p.r),
        ("H", "C", n.n_H * (p.lam * s.u_H + p.q_inf * n.n_C / N)),
        ("C", "H", p.lam * n.n_C * s.u_C),
    )
    return TransitionRateTable(tuple(e for e in rates if e[2] > 0.0))


def individual_rates(
    p: ModelParams, x: PopulationState, u: StrategyProfile
) -> TransitionRateTable:
    """Jump rates of one tagged agent with intent ``u`` against background ``x``.

    R->H at ``r``, H->C at ``lam u_H + q_inf x_C``, C->H at ``lam u_C``,
    C->R at ``b + q_soc x_H``.  Zero-rate entries are omitted.
    """
    rates = (
        ("R", "H", p.r),
        ("H", "C", p.lam * u.u_H + p.q_inf * x.x_C),
        ("C", "H", p.lam * u.u_C),
        ("C", "R", p.b + p.q_soc * x.x_H),
    )
    return TransitionRateTable(tuple(e for e in rates if e[2] > 0.0))
