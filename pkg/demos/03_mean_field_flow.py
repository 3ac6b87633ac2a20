"""The population flow in time: stable points attract, unstable ones leak.

Integrating the mean-field kinetics under a fixed common strategy shows the
phase portrait behind the stability verdicts: perturb a stable equilibrium
and the flow pulls it back; start near the unstable all-honest boundary
and corruption reignites, carrying the society to the corrupt trap of its
own strategy regime.

Run: python demos/03_mean_field_flow.py
"""

import numpy as np

import corruption_mfg as cm

p = cm.ModelParams(lam=0.1, r=1, b=0.2, f=0, q_soc=0.5, q_inf=2.0,
                   w_R=0, w_H=1, w_C=1.275)
reports = cm.enumerate_equilibria(p)
corrupt_eq, interior_eq, boundary_eq = reports


def describe(traj, label, target):
    d = np.abs(traj.states - np.array(target.as_tuple())).max(axis=1)
    marks = [0, len(d) // 50, len(d) // 10, len(d) // 3, len(d) - 1]
    track = "  ".join("t=%-5.1f d=%.2e" % (traj.times[i], d[i]) for i in marks)
    print("  %-34s %s" % (label, track))


print("distance to the nearest equilibrium along the flow")
print()

print("corrupt-strategy flow (everyone plays: stay corrupt, go corrupt):")
for eps in (1e-3, 0.05, 0.2):
    x0 = cm.PopulationState(corrupt_eq.state.x_R + eps,
                            corrupt_eq.state.x_H,
                            corrupt_eq.state.x_C - eps)
    traj = cm.integrate_ode(p, x0, corrupt_eq.strategy, 60.0, 0.01)
    describe(traj, "kick of %.0e off the corrupt root" % eps, corrupt_eq.state)
print()

print("honest-strategy flow (everyone plays: stay honest, clean up):")
x0 = cm.PopulationState(boundary_eq.state.x_R + 0.0,
                        boundary_eq.state.x_H - 1e-3,
                        boundary_eq.state.x_C + 1e-3)
traj = cm.integrate_ode(p, x0, boundary_eq.strategy, 60.0, 0.01)
describe(traj, "1e-3 of corrupt seeded at x_H=1", boundary_eq.state)
describe(traj, "  ... same run, vs interior point", interior_eq.state)
print()
print("the tiny corrupt seed grows: the boundary is unstable, and the flow")
print("lands on the stable interior honest equilibrium instead.")
print()

# Order-of-accuracy check in passing: halving the step moves the endpoint
# by ~2^4 less, the signature of the classical fourth-order scheme.
x0 = cm.PopulationState(0.5, 0.3, 0.2)
ends = {dt: cm.integrate_ode(p, x0, corrupt_eq.strategy, 5.0, dt).states[-1]
        for dt in (0.02, 0.01, 0.005)}
e1 = np.abs(ends[0.02] - ends[0.01]).max()
e2 = np.abs(ends[0.01] - ends[0.005]).max()
print("step-halving endpoint shifts: %.3e -> %.3e (observed order %.2f)"
      % (e1, e2, np.log2(e1 / e2)))
