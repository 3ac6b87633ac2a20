"""Linear stability of the stationary equilibria.

Mass conservation makes the third direction redundant, so the kinetics are
reduced to the plane ``(x_H, x_C)`` via ``x_R = 1 - x_H - x_C`` and a fixed
point is classified through the 2x2 Jacobian there: asymptotically stable
iff its trace is negative and its determinant positive (equivalently both
eigenvalue real parts negative).

Closed-form shortcuts are applied first where available: a sufficient band
on ``q_soc - q_inf`` for the corrupt root, the explicit boundary eigenvalues
``{-r, q_inf - q_soc - lam - b}`` for the all-honest point, and positivity
of both characteristic coefficients for the honest interior point.  Every
closed-form verdict is cross-checked against the eigenvalues and a
disagreement outside the margin band raises (it would signal a bug, not a
property of the model).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .equilibria import EquilibriumReport, Provenance
from .model import CORRUPT_PROFILE, ModelParams, PopulationState, StrategyProfile

# Half-width of the sign-test band around zero; inside it a verdict is
# Marginal rather than a round-off coin flip.
MARGIN = 1e-9


class Classification(Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    MARGINAL = "marginal"


class Method(Enum):
    """How a verdict was reached."""

    CLOSED_FORM = "closed_form"        # explicit rule applied and confirmed
    TRACE_DET = "trace_det"            # direct eigenvalue/trace-det test
    FALLBACK = "trace_det_fallback"    # closed-form rule inconclusive


class StabilityContradictionError(RuntimeError):
    """A closed-form verdict contradicted the eigenvalue verdict (bug signal)."""


@dataclass(frozen=True)
class StabilityVerdict:
    classification: Classification
    method: Method
    eigen_real_parts: tuple[float, float]
    trace: float
    det: float
    flags: tuple[tuple[str, bool], ...] = ()

    def flag(self, name: str) -> bool:
        return dict(self.flags).get(name, False)


def jacobian(p: ModelParams, x: PopulationState, s: StrategyProfile) -> np.ndarray:
    """Analytic Jacobian of the reduced ``(x_H, x_C)`` kinetics at ``x``.

    Rows differentiate::

        dx_H/dt = r (1 - x_H - x_C) - lam (x_H u_H - x_C u_C) - q_inf x_H x_C
        dx_C/dt = -(b + q_soc x_H) x_C + lam (x_H u_H - x_C u_C) + q_inf x_H x_C
    """
    lam, r, b = p.lam, p.r, p.b
    u_h, u_c = s.u_H, s.u_C
    x_h, x_c = x.x_H, x.x_C
    return np.array(
        [
            [-r - lam * u_h - p.q_inf * x_c, -r + lam * u_c - p.q_inf * x_h],
            [
                lam * u_h + (p.q_inf - p.q_soc) * x_c,
                -(b + p.q_soc * x_h) - lam * u_c + p.q_inf * x_h,
            ],
        ]
    )


def eigen_real_parts(trace: float, det: float) -> tuple[float, float]:
    """Real parts of the roots of ``xi^2 - trace xi + det``, ascending."""
    disc = trace * trace - 4.0 * det
    if disc >= 0.0:
        root = disc**0.5
        return tuple(sorted(((trace - root) / 2.0, (trace + root) / 2.0)))
    return (trace / 2.0, trace / 2.0)


def _classify(real_parts: tuple[float, float]) -> Classification:
    top = max(real_parts)
    if top < -MARGIN:
        return Classification.STABLE
    if top > MARGIN:
        return Classification.UNSTABLE
    return Classification.MARGINAL


def trace_det_verdict(m: np.ndarray) -> StabilityVerdict:
    """Planar verdict from the trace/determinant test of a 2x2 matrix."""
    m = np.asarray(m, dtype=float)
    trace = float(m[0, 0] + m[1, 1])
    det = float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    parts = eigen_real_parts(trace, det)
    return StabilityVerdict(
        _classify(parts),
        Method.TRACE_DET,
        parts,
        trace,
        det,
        flags=(("trace_negative", trace < 0.0), ("det_positive", det > 0.0)),
    )


def corrupt_stability_band(p: ModelParams) -> bool:
    """Sufficient condition for stability of the corrupt fixed point.

    True iff ``-lam q_soc / r <= q_soc - q_inf <= (r q_inf + (r + b)(b r +
    r lam + b lam)) / r^2``.  Only sufficient: outside the band nothing is
    implied and the eigenvalue test decides.
    """
    diff = p.q_soc - p.q_inf
    lower = -p.lam * p.q_soc / p.r
    upper = (p.r * p.q_inf + (p.r + p.b) * (p.b * p.r + p.r * p.lam + p.b * p.lam)) / p.r**2
    return lower <= diff <= upper


def _closed_form(p: ModelParams, e: EquilibriumReport):
    """(classification-or-None, flags) from the rule matching the provenance."""
    corrupt_like = e.provenance is Provenance.CORRUPT_ROOT or (
        e.provenance is Provenance.NO_INTERACTION and e.strategy == CORRUPT_PROFILE
    )
    if corrupt_like:
        band = corrupt_stability_band(p)
        verdict = Classification.STABLE if band else None
        return verdict, (("sufficient_band", band),)
    if e.provenance is Provenance.HONEST_BOUNDARY or e.provenance is Provenance.NO_INTERACTION:
        # Boundary eigenvalues are exactly {-r, q_inf - q_soc - lam - b}.
        edge = p.q_inf - p.q_soc - p.lam - p.b
        if edge < -MARGIN:
            verdict = Classification.STABLE
        elif edge > MARGIN:
            verdict = Classification.UNSTABLE
        else:
            verdict = Classification.MARGINAL
        return verdict, (("boundary_rate_negative", edge < 0.0),)
    # Honest interior: stable when both characteristic coefficients
    # (-trace and det of the Jacobian) are positive; true whenever the
    # existence condition holds, checked numerically here.
    j = jacobian(p, e.state, e.strategy)
    trace = float(j[0, 0] + j[1, 1])
    det = float(np.linalg.det(j))
    positive = -trace > MARGIN and det > MARGIN
    verdict = Classification.STABLE if positive else None
    return verdict, (("char_coefficients_positive", positive),)


def classify_equilibrium(p: ModelParams, e: EquilibriumReport) -> StabilityVerdict:
    """Stability verdict for an equilibrium report.

    The matching closed-form rule is evaluated first, then always
    cross-checked against the eigenvalues of the reduced Jacobian at the
    report's state under its strategy; a contradiction outside the margin
    band raises :class:`StabilityContradictionError`.
    """
    eig = trace_det_verdict(jacobian(p, e.state, e.strategy))
    closed, flags = _closed_form(p, e)
    if closed is None:
        method = Method.FALLBACK
    else:
        conflict = {closed, eig.classification} == {
            Classification.STABLE,
            Classification.UNSTABLE,
        }
        if conflict:
            raise StabilityContradictionError(
                f"closed-form verdict {closed.value} contradicts eigenvalues "
                f"{eig.eigen_real_parts} at {e.provenance.value}"
            )
        method = Method.CLOSED_FORM
    return StabilityVerdict(
        eig.classification, method, eig.eigen_real_parts, eig.trace, eig.det,
        flags=flags + eig.flags,
    )
