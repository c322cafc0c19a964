"""Runtime core: generic embedded-RK step kernel, error control, and drivers.

The step-size controller follows the classical design: per-component scale
sc = a_tol + max(|y|, |y_hat|) * r_tol, RMS error E over scaled differences,
acceptance iff E <= 1, and the two-error update

    h_next = h / max(f_min, min(f_max, E_m^a * E_prev^(-b) / f_s))

with a = 0.7/p - 0.75*b and b = 0.4/p by default.  Note the clamp acts on the
divisor, so growth is capped at 1/f_min while shrinkage is capped at f_max.
Rejected steps retry with h / min(f_max, E_m^a / f_s).

Generated solver modules call the same three functions (error_norm,
propose_step_size, rescale_rejected) and the same driver loop, so the control
arithmetic has a single home.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .tableau import ButcherTableau, render_coefficient_literal

__all__ = [
    "Tolerances",
    "ControllerParams",
    "ODEProblem",
    "Trajectory",
    "StepLog",
    "StageValues",
    "StepKernel",
    "IntegrationOptions",
    "IntegrationError",
    "MaxStepsExceeded",
    "StepSizeUnderflow",
    "DivergenceError",
    "interpreted_kernel",
    "erk_step_generic",
    "error_norm",
    "propose_step_size",
    "rescale_rejected",
    "adaptive_integrate",
    "fixed_integrate",
    "integrate_info",
]


@dataclass(frozen=True)
class Tolerances:
    """Absolute and relative tolerance; at least one must be positive."""

    a_tol: float
    r_tol: float

    def __post_init__(self):
        if self.a_tol < 0 or self.r_tol < 0:
            raise ValueError("tolerances must be nonnegative")
        if self.a_tol + self.r_tol == 0:
            raise ValueError("a_tol and r_tol cannot both be zero")


@dataclass(frozen=True)
class ControllerParams:
    """Safety/clamp factors and exponents of the step-size controller.

    With the recommended exponents, alpha_exp equals beta_exp, so at steady
    state the divisor is 1/f_s and the raw update would shrink h forever.
    The driver therefore keeps the previous error floored at e_prev_floor
    (classic practice), which turns the update into a stable controller with
    equilibrium error f_s**(1/alpha_exp) * e_prev_floor.
    """

    f_s: float = 0.9
    f_min: float = 0.1
    f_max: float = 5.0
    alpha_exp: float = 0.0
    beta_exp: float = 0.0
    p_ctrl: int = 1
    e_prev_floor: float = 1e-4

    def __post_init__(self):
        if not (0 < self.f_min < 1 < self.f_max):
            raise ValueError("need 0 < f_min < 1 < f_max")
        if not (0 < self.f_s < 1):
            raise ValueError("need 0 < f_s < 1")
        if self.alpha_exp <= 0 or self.beta_exp < 0:
            raise ValueError("need alpha_exp > 0 and beta_exp >= 0")

    @classmethod
    def for_order(cls, p: int, f_s: float = 0.9, f_min: float = 0.1,
                  f_max: float = 5.0) -> "ControllerParams":
        """Recommended universal exponents for a method of main order p."""
        if p < 1:
            raise ValueError("order must be positive")
        beta = 0.4 / p
        alpha = 0.7 / p - 0.75 * beta
        return cls(f_s=f_s, f_min=f_min, f_max=f_max,
                   alpha_exp=alpha, beta_exp=beta, p_ctrl=p)


@dataclass(frozen=True)
class ODEProblem:
    """First-order system: rhs(t, y) -> dy/dt, with fixed dimension."""

    dimension: int
    rhs: Callable[[float, np.ndarray], Sequence[float]]
    name: str = ""


# Stage values k of one step: an (s, N) float array, row i depending only on
# rows < i.
StageValues = np.ndarray


@dataclass(frozen=True)
class Trajectory:
    """Accepted grid points and states; times[0] = t_start, times[-1] = t_stop."""

    times: np.ndarray
    states: np.ndarray


@dataclass(frozen=True)
class StepLog:
    """Accepted/rejected step records of one adaptive integration."""

    accepted_t: np.ndarray
    accepted_h: np.ndarray
    rejected_t: np.ndarray
    rejected_h: np.ndarray
    errors: np.ndarray


@dataclass(frozen=True)
class StepKernel:
    """One embedded step: step(f, t, y, h) -> (y_next, y_hat_next).

    Both the generic interpreter kernel and every generated specialized
    kernel satisfy this contract.
    """

    name: str
    order: int
    stages: int
    step: Callable


@dataclass(frozen=True)
class IntegrationOptions:
    h0: float | None = None          # default (t_stop - t_start) / 100
    max_steps: int = 10 ** 6
    h_min: float | None = None       # default 1e4 * eps * max(|t0|, |t1|, 1)
    controller: ControllerParams | None = None
    propagate_embedded: bool = False


class IntegrationError(RuntimeError):
    """Driver failure; carries the last good time/state and the partial log."""

    def __init__(self, message: str, t: float, y: np.ndarray, log: StepLog | None = None):
        super().__init__(message)
        self.t = t
        self.y = y
        self.log = log


class MaxStepsExceeded(IntegrationError):
    pass


class StepSizeUnderflow(IntegrationError):
    pass


class DivergenceError(IntegrationError):
    pass


_FLOAT_CACHE: dict[int, tuple] = {}


def _float_coefficients(t: ButcherTableau):
    """Tableau coefficients as float64 arrays, via the rendered literals so the
    interpreter and the generated code agree bit for bit."""
    key = id(t)
    cached = _FLOAT_CACHE.get(key)
    if cached is not None and cached[0] is t:
        return cached[1:]
    a = np.array([[float(render_coefficient_literal(x)) for x in row] for row in t.a])
    b = np.array([float(render_coefficient_literal(x)) for x in t.b])
    b_hat = np.array([float(render_coefficient_literal(x)) for x in t.b_hat])
    c = np.array([float(render_coefficient_literal(x)) for x in t.c])
    _FLOAT_CACHE[key] = (t, a, b, b_hat, c)
    return a, b, b_hat, c


def erk_step_generic(t: ButcherTableau, prob: ODEProblem, t_m: float,
                     y_m: np.ndarray, h: float):
    """One embedded step by the array-driven interpreter.

    Returns (y_next, y_hat_next, stages).  This is the reference kernel the
    generated specialized code is checked against.
    """
    if h <= 0:
        raise ValueError("step size must be positive")
    a, b, b_hat, c = _float_coefficients(t)
    y_m = np.asarray(y_m, dtype=float)
    n = y_m.shape[0]
    k = np.empty((t.s, n))
    k[0] = _eval_rhs(prob, t_m, y_m, n)
    for i in range(1, t.s):
        y_i = y_m + h * (a[i, :i] @ k[:i])
        k[i] = _eval_rhs(prob, t_m + c[i] * h, y_i, n)
    y_next = y_m + h * (b @ k)
    y_hat_next = y_m + h * (b_hat @ k)
    return y_next, y_hat_next, k


def _eval_rhs(prob: ODEProblem, t: float, y: np.ndarray, n: int) -> np.ndarray:
    out = np.asarray(prob.rhs(t, y), dtype=float)
    if out.shape != (n,):
        raise ValueError(
            f"rhs returned shape {out.shape}, expected ({n},)")
    return out


def interpreted_kernel(t: ButcherTableau) -> StepKernel:
    """The generic interpreter (erk_step_generic) packaged as a step kernel.

    Lets any tableau drive the integration drivers without code generation,
    and serves as the baseline the generated specialized kernels are
    benchmarked against.
    """

    def step(f, t_m, y_m, h):
        prob = ODEProblem(dimension=y_m.shape[0], rhs=f, name=t.name)
        y_next, y_hat_next, _ = erk_step_generic(t, prob, t_m, y_m, h)
        return y_next, y_hat_next

    return StepKernel(name=t.name, order=t.p, stages=t.s, step=step)


def error_norm(y: np.ndarray, y_hat: np.ndarray, tol: Tolerances) -> float:
    """RMS of componentwise differences scaled by sc = a_tol + max|.|*r_tol.

    A zero scale (possible only with a_tol = 0) contributes 0 when the
    difference is zero too, and forces E = +inf otherwise, so the step gets
    rejected rather than silently accepted.
    """
    y = np.asarray(y, dtype=float)
    y_hat = np.asarray(y_hat, dtype=float)
    if y.shape != y_hat.shape or y.ndim != 1 or y.size == 0:
        raise ValueError("y and y_hat must be equal-length nonempty vectors")
    diff = y - y_hat
    if not np.all(np.isfinite(diff)):
        return math.inf
    sc = tol.a_tol + np.maximum(np.abs(y), np.abs(y_hat)) * tol.r_tol
    zero_scale = sc == 0.0
    if np.any(zero_scale):
        if np.any(diff[zero_scale] != 0.0):
            return math.inf
        sc = np.where(zero_scale, 1.0, sc)
    return math.sqrt(float(np.mean((diff / sc) ** 2)))


def propose_step_size(h_m: float, e_m: float, e_prev: float,
                      cp: ControllerParams) -> float:
    """Step proposal after an accepted step (clamp on the divisor)."""
    if h_m <= 0:
        raise ValueError("h_m must be positive")
    if e_prev <= 0:
        raise ValueError("e_prev must be positive")
    if e_m == 0.0:
        divisor = cp.f_min
    else:
        divisor = max(cp.f_min,
                      min(cp.f_max,
                          e_m ** cp.alpha_exp * e_prev ** (-cp.beta_exp) / cp.f_s))
    return h_m / divisor


def rescale_rejected(h_m: float, e_m: float, cp: ControllerParams) -> float:
    """Retry step size after a rejection (E_m > 1)."""
    if h_m <= 0:
        raise ValueError("h_m must be positive")
    return h_m / min(cp.f_max, e_m ** cp.alpha_exp / cp.f_s)


def _as_problem(f, y_0, name="") -> ODEProblem:
    if isinstance(f, ODEProblem):
        return f
    return ODEProblem(dimension=len(y_0), rhs=f, name=name)


def _vectorized_rhs(prob: ODEProblem):
    n = prob.dimension
    rhs = prob.rhs

    def f(t, y):
        out = np.asarray(rhs(t, y), dtype=float)
        if out.shape != (n,):
            raise ValueError(f"rhs returned shape {out.shape}, expected ({n},)")
        return out

    return f


def _adaptive_loop(kernel: StepKernel, prob: ODEProblem, tol: Tolerances,
                   y_0, t_start: float, t_stop: float,
                   options: IntegrationOptions | None,
                   record_states: bool):
    if t_stop <= t_start:
        raise ValueError("need t_stop > t_start")
    opts = options or IntegrationOptions()
    cp = opts.controller or ControllerParams.for_order(kernel.order)
    y = np.asarray(y_0, dtype=float).copy()
    if not np.all(np.isfinite(y)):
        raise ValueError("initial state must be finite")
    f = _vectorized_rhs(prob)
    step = kernel.step

    h = opts.h0 if opts.h0 is not None else (t_stop - t_start) / 100.0
    if h <= 0:
        raise ValueError("initial step size must be positive")
    h_min = opts.h_min if opts.h_min is not None else (
        1e4 * np.finfo(float).eps * max(abs(t_start), abs(t_stop), 1.0))

    t = t_start
    e_prev = 1.0
    times = [t_start]
    states = [y.copy()] if record_states else None
    acc_t: list[float] = []
    acc_h: list[float] = []
    rej_t: list[float] = []
    rej_h: list[float] = []
    errs: list[float] = []
    attempts = 0

    def partial_log():
        return StepLog(np.array(acc_t), np.array(acc_h), np.array(rej_t),
                       np.array(rej_h), np.array(errs))

    while t < t_stop:
        if attempts >= opts.max_steps:
            raise MaxStepsExceeded(
                f"no convergence within {opts.max_steps} step attempts "
                f"(reached t = {t})", t, y, partial_log())
        h_use = min(h, t_stop - t)
        if h_use < h_min and t + h_use < t_stop:
            raise StepSizeUnderflow(
                f"step size underflow: h = {h_use} < h_min = {h_min} at t = {t}",
                t, y, partial_log())
        attempts += 1
        y_next, y_hat_next = step(f, t, y, h_use)
        if not (np.all(np.isfinite(y_next)) and np.all(np.isfinite(y_hat_next))):
            # Treat a non-finite trial as an infinitely bad step: reject and
            # retry smaller; persistent failure ends in StepSizeUnderflow.
            e_m = math.inf
        else:
            e_m = error_norm(y_next, y_hat_next, tol)
        if e_m <= 1.0:
            y = y_hat_next if opts.propagate_embedded else y_next
            final = h_use >= t_stop - t
            t_new = t_stop if final else min(t + h_use, t_stop)
            acc_t.append(t_new)
            acc_h.append(h_use)
            errs.append(e_m)
            t = t_new
            times.append(t)
            if record_states:
                states.append(y.copy())
            h = propose_step_size(h_use, e_m, e_prev, cp)
            e_prev = max(e_m, cp.e_prev_floor)
        else:
            rej_t.append(t)
            rej_h.append(h_use)
            h = rescale_rejected(h_use, e_m, cp)

    log = partial_log()
    times_arr = np.array(times)
    states_arr = np.array(states) if record_states else None
    return times_arr, states_arr, y, log


def adaptive_integrate(method: StepKernel, prob, tol: Tolerances, y_0,
                       t_start: float, t_stop: float, last: bool = False,
                       options: IntegrationOptions | None = None):
    """Adaptive integration; returns a Trajectory, or (t_n, y_n) when ``last``.

    ``method`` is any step kernel (generic interpreter or generated
    specialized code); ``prob`` is an ODEProblem or a bare rhs callable.
    """
    prob = _as_problem(prob, y_0)
    times, states, y, _ = _adaptive_loop(method, prob, tol, y_0, t_start, t_stop,
                                         options, record_states=not last)
    if last:
        return times[-1], y
    return Trajectory(times=times, states=states)


def integrate_info(method: StepKernel, prob, tol: Tolerances, y_0,
                   t_start: float, t_stop: float,
                   options: IntegrationOptions | None = None) -> StepLog:
    """Adaptive integration returning the accepted/rejected step log."""
    prob = _as_problem(prob, y_0)
    _, _, _, log = _adaptive_loop(method, prob, tol, y_0, t_start, t_stop,
                                  options, record_states=False)
    return log


def fixed_integrate(method: StepKernel, prob, h: float, y_0,
                    t_start: float, t_stop: float, last: bool = False):
    """Uniform steps of size h, final step truncated to land on t_stop.

    No error control; the embedded solution is computed but unused.
    """
    if h <= 0:
        raise ValueError("step size must be positive")
    if t_stop <= t_start:
        raise ValueError("need t_stop > t_start")
    prob = _as_problem(prob, y_0)
    f = _vectorized_rhs(prob)
    step = method.step
    span = t_stop - t_start
    n_steps = max(1, math.ceil(span / h - 1e-9))
    y = np.asarray(y_0, dtype=float).copy()
    times = np.empty(n_steps + 1)
    times[0] = t_start
    states = None
    if not last:
        states = np.empty((n_steps + 1, y.shape[0]))
        states[0] = y
    t = t_start
    for m in range(n_steps):
        t_next = t_start + (m + 1) * h
        if m == n_steps - 1 or t_next > t_stop:
            t_next = t_stop
        y, _ = step(f, t, y, t_next - t)
        if not np.all(np.isfinite(y)):
            raise DivergenceError(
                f"non-finite state produced at t = {t}", t, y)
        t = t_next
        times[m + 1] = t
        if not last:
            states[m + 1] = y
    if last:
        return t, y
    return Trajectory(times=times, states=states)
