"""Step-size control on the Brusselator.

Integrates the Brusselator with the 4(3) pair at a_tol = r_tol = 1e-4 and
shows how the controller walks the step size: a table of accepted/rejected
attempts, the error sequence, and (when matplotlib is around) a plot of the
solution with the step sizes underneath.

Run:  python demos/brusselator_steps.py
"""
import numpy as np

from rkforge.generated.erk43b import ERK43b, ERK43b_info
from rkforge.problems import benchmark_case

case = benchmark_case("brusselator")
tol = 1e-4

traj = ERK43b(case.problem, tol, tol, case.y_0, case.t_start, case.t_stop)
log = ERK43b_info(case.problem, tol, tol, case.y_0, case.t_start, case.t_stop)

print(f"Brusselator, ERK43b, a_tol = r_tol = {tol:g}, t in [0, 20]")
print(f"  accepted steps : {log.accepted_t.size}")
print(f"  rejected steps : {log.rejected_t.size}  at t = {np.round(log.rejected_t, 4)}")
print(f"  step size range: {log.accepted_h.min():.3e} .. {log.accepted_h.max():.3e}")
print(f"  local error    : mean {log.errors.mean():.3e}, max {log.errors.max():.3e}")
print(f"  end state      : y(20) = {traj.states[-1]}")

# the rejections cluster where the solution turns sharply
for t_rej in log.rejected_t:
    k = np.searchsorted(traj.times, t_rej)
    print(f"  rejection near t = {t_rej:.3f}, solution there ~ {traj.states[min(k, len(traj.states)-1)]}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping the plot")
else:
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(8, 6),
                                   height_ratios=[2, 1])
    ax1.plot(traj.times, traj.states[:, 0], label="x1")
    ax1.plot(traj.times, traj.states[:, 1], label="x2")
    ax1.legend()
    ax1.set_ylabel("state")
    ax1.set_title("Brusselator with ERK43b, tol 1e-4")
    ax2.semilogy(log.accepted_t, log.accepted_h, ".", ms=3, label="accepted h")
    if log.rejected_t.size:
        ax2.semilogy(log.rejected_t, log.rejected_h, "x", color="red",
                     label="rejected h")
    ax2.legend()
    ax2.set_xlabel("t")
    ax2.set_ylabel("step size")
    fig.savefig("brusselator_steps.png", dpi=120)
    print("wrote brusselator_steps.png")
