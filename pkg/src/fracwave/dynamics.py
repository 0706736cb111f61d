"""Time evolution for the fractional cubic Schrödinger family.

Variants:

* ``FRACTIONAL_NLS``: i u_t = |D|^alpha u + |u|^2 u  (Strang splitting,
  exact linear and exact nonlinear substeps, global order 2).
* ``HALF_WAVE``: the alpha = 1 member of the same family.
* ``SZEGO``: i u_t = P_+(|u|^2 u), integrated by plain RK4 (no linear part;
  step-size guard dt <= 0.5 / ||u||_{L^inf}^2).
* ``QUADRATIC_PAIR``: the coupled system i u1_t = |D| u1 + u2 conj(u1),
  i u2_t = |D| u2 + u1^2 / 2, Strang splitting with an RK4 nonlinear substep.

Negative final times are run through the conjugation u(t) <-> conj(u)(-t)
for the scalar NLS variants and the pair system; the Szegő projection does
not commute with conjugation, so the Szegő flow is reversed by negating its
right-hand side instead.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.fft import next_fast_len

from .field import (
    TorusField,
    cubic_term,
    fractional_derivative,
    field_from_grid,
    grid_values,
    inner_product,
    l2_norm,
    multiply,
    pointwise_modulus_squared,
    szego_project,
)


class Variant(enum.Enum):
    FRACTIONAL_NLS = "fractional_nls"
    HALF_WAVE = "half_wave"
    SZEGO = "szego"
    QUADRATIC_PAIR = "quadratic_pair"


@dataclass(frozen=True)
class EvolutionSpec:
    variant: Variant
    alpha: float | None = None

    def __post_init__(self):
        if self.variant is Variant.FRACTIONAL_NLS:
            if self.alpha is None or not (0.0 < self.alpha <= 2.0):
                raise ValueError("FRACTIONAL_NLS needs alpha in (0, 2]")
        elif self.variant in (Variant.HALF_WAVE, Variant.QUADRATIC_PAIR):
            if self.alpha not in (None, 1.0):
                raise ValueError(f"{self.variant.name} has alpha = 1 fixed")
            object.__setattr__(self, "alpha", 1.0)
        elif self.variant is Variant.SZEGO:
            if self.alpha is not None:
                raise ValueError("SZEGO has no linear dispersion parameter")


@dataclass(frozen=True)
class PairField:
    u1: TorusField
    u2: TorusField

    def __post_init__(self):
        if self.u1.max_mode != self.u2.max_mode:
            raise ValueError("pair components must share max_mode")

    @property
    def max_mode(self) -> int:
        return self.u1.max_mode

    def conj(self) -> "PairField":
        return PairField(self.u1.conj(), self.u2.conj())


@dataclass(frozen=True)
class ConservedReport:
    Q: float
    M: float
    H: float
    Qtilde: float | None = None
    Htilde: float | None = None


class BlowupError(RuntimeError):
    """Raised when the solver state stops being finite."""

    def __init__(self, message: str, last_valid_time: float):
        super().__init__(f"{message} (last valid time t = {last_valid_time:g})")
        self.last_valid_time = last_valid_time


@dataclass
class Trajectory:
    """Time-sampled solver states (every ``sample_every`` steps)."""

    spec: EvolutionSpec
    dt: float
    times: list[float] = dc_field(default_factory=list)
    states: list = dc_field(default_factory=list)  # TorusField | PairField

    def append(self, t: float, state) -> None:
        self.times.append(t)
        self.states.append(state)


def linear_propagate(u: TorusField, t: float, alpha: float) -> TorusField:
    """e^{-i t |D|^alpha} u: exact phase rotation, isometric in every H^s."""
    k = np.abs(u.modes).astype(float)
    return u.with_coeffs(u.coeffs * np.exp(-1j * t * k**alpha))


def nonlinear_phase_step(
    u: TorusField, tau: float, grid_size: int | None = None
) -> TorusField:
    """Exact flow of i u_t = |u|^2 u over time tau, re-projected to |k| <= K.

    The flow multiplies u pointwise by e^{-i |u|^2 tau}, which preserves the
    pointwise modulus; the evaluation grid must satisfy grid_size >= 4K+2.
    """
    K = u.max_mode
    if grid_size is None:
        grid_size = next_fast_len(4 * K + 2)
    if grid_size < 4 * K + 2:
        raise ValueError(f"grid_size {grid_size} < 4K+2 = {4 * K + 2}")
    v = grid_values(u, grid_size)
    return field_from_grid(v * np.exp(-1j * tau * np.abs(v) ** 2), K)


def conserved_quantities(u: TorusField, alpha: float) -> ConservedReport:
    """Mass Q = ||u||^2/2, momentum M = (Du, u), Hamiltonian H_alpha.

    The L^4 term of H_alpha is evaluated spectrally:
    ||u||_{L^4}^4 = || |u|^2 ||_{L^2}^2 with the full-bandwidth |u|^2.
    """
    k = u.modes.astype(float)
    a2 = np.abs(u.coeffs) ** 2
    Q = 0.5 * float(a2.sum())
    M = float((k * a2).sum())
    l4_4 = float(np.sum(np.abs(pointwise_modulus_squared(u).coeffs) ** 2))
    H = 0.5 * float((np.abs(k) ** alpha * a2).sum()) + 0.25 * l4_4
    return ConservedReport(Q=Q, M=M, H=H)


def szego_energy(u: TorusField) -> float:
    """Hamiltonian of the Szegő flow: ||u||_{L^4}^4 / 4."""
    return 0.25 * float(np.sum(np.abs(pointwise_modulus_squared(u).coeffs) ** 2))


def pair_conserved(p: PairField) -> ConservedReport:
    """Conserved functionals of the quadratic pair system."""
    k = np.abs(p.u1.modes.astype(float))
    a1, a2 = np.abs(p.u1.coeffs) ** 2, np.abs(p.u2.coeffs) ** 2
    Qt = float(a1.sum() + 2.0 * a2.sum())
    sq = multiply(p.u1, p.u1)
    coupling = inner_product(sq, p.u2).real
    Ht = 0.5 * (float((k * a1).sum()) + float((k * a2).sum()) + coupling)
    Q = 0.5 * float(a1.sum() + a2.sum())
    kk = p.u1.modes.astype(float)
    M = float((kk * a1).sum() + (kk * a2).sum())
    return ConservedReport(Q=Q, M=M, H=Ht, Qtilde=Qt, Htilde=Ht)


def _check_finite(state, t: float) -> None:
    if isinstance(state, PairField):
        ok = np.all(np.isfinite(state.u1.coeffs)) and np.all(
            np.isfinite(state.u2.coeffs)
        )
    else:
        ok = np.all(np.isfinite(state.coeffs))
    if not ok:
        raise BlowupError("solver state is no longer finite", t)


def _strang_step_nls(u: TorusField, dt: float, alpha: float, m: int) -> TorusField:
    u = linear_propagate(u, dt / 2.0, alpha)
    u = nonlinear_phase_step(u, dt, m)
    return linear_propagate(u, dt / 2.0, alpha)


def _szego_rhs(u: TorusField, sign: float) -> TorusField:
    return (-1j * sign) * szego_project(cubic_term(u))


def _rk4(state, rhs, dt: float):
    k1 = rhs(state)
    k2 = rhs(_axpy(state, dt / 2.0, k1))
    k3 = rhs(_axpy(state, dt / 2.0, k2))
    k4 = rhs(_axpy(state, dt, k3))
    incr = _combine(k1, k2, k3, k4, dt)
    return _axpy(state, 1.0, incr)


def _axpy(state, a, other):
    if isinstance(state, PairField):
        return PairField(
            state.u1.with_coeffs(state.u1.coeffs + a * other.u1.coeffs),
            state.u2.with_coeffs(state.u2.coeffs + a * other.u2.coeffs),
        )
    return state.with_coeffs(state.coeffs + a * other.coeffs)


def _combine(k1, k2, k3, k4, dt):
    if isinstance(k1, PairField):
        return PairField(
            k1.u1.with_coeffs(
                dt / 6.0 * (k1.u1.coeffs + 2 * k2.u1.coeffs + 2 * k3.u1.coeffs + k4.u1.coeffs)
            ),
            k1.u2.with_coeffs(
                dt / 6.0 * (k1.u2.coeffs + 2 * k2.u2.coeffs + 2 * k3.u2.coeffs + k4.u2.coeffs)
            ),
        )
    return k1.with_coeffs(
        dt / 6.0 * (k1.coeffs + 2 * k2.coeffs + 2 * k3.coeffs + k4.coeffs)
    )


def _pair_nonlinear_rhs(p: PairField) -> PairField:
    K = p.max_mode
    du1 = -1j * multiply(p.u2, p.u1.conj()).truncate(K)
    du2 = -0.5j * multiply(p.u1, p.u1).truncate(K)
    return PairField(du1, du2)


def evolve(
    u0,
    spec: EvolutionSpec,
    T: float,
    dt: float,
    sample_every: int = 1,
) -> Trajectory:
    """Advance u0 to time T, sampling the state every ``sample_every`` steps.

    Negative T runs the reversed flow (see module docstring); the returned
    trajectory then carries the nonpositive sample times.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if T == 0:
        raise ValueError("T must be nonzero")
    if sample_every < 1:
        raise ValueError("sample_every must be >= 1")

    backward = T < 0
    T = abs(T)
    if backward:
        if spec.variant is not Variant.SZEGO:
            u0 = u0.conj()

    n_steps = int(round(T / dt))
    if n_steps < 1 or abs(n_steps * dt - T) > 1e-9 * max(1.0, T):
        raise ValueError("T must be an integer multiple of dt")

    traj = Trajectory(spec=spec, dt=dt)

    sign = -1.0 if (backward and spec.variant is Variant.SZEGO) else 1.0

    if spec.variant in (Variant.FRACTIONAL_NLS, Variant.HALF_WAVE):
        alpha = spec.alpha
        m = next_fast_len(4 * u0.max_mode + 2)
        step = lambda u: _strang_step_nls(u, dt, alpha, m)
    elif spec.variant is Variant.SZEGO:
        step = lambda u: _rk4(u, lambda v: _szego_rhs(v, sign), dt)
    elif spec.variant is Variant.QUADRATIC_PAIR:
        def step(p: PairField) -> PairField:
            h = dt / 2.0
            p = PairField(
                linear_propagate(p.u1, h, 1.0), linear_propagate(p.u2, h, 1.0)
            )
            p = _rk4(p, _pair_nonlinear_rhs, dt)
            return PairField(
                linear_propagate(p.u1, h, 1.0), linear_propagate(p.u2, h, 1.0)
            )
    else:  # pragma: no cover
        raise ValueError(f"unknown variant {spec.variant}")

    def record(i: int, state) -> None:
        t = i * dt
        traj.append(-t if backward else t, _maybe_conj_back(state, backward, spec))

    state = u0
    record(0, state)
    for i in range(1, n_steps + 1):
        state = step(state)
        if i % sample_every == 0 or i == n_steps:
            try:
                _check_finite(state, (i - 1) * dt)
            except BlowupError as err:
                err.trajectory = traj  # partial samples up to the failure
                raise
            record(i, state)
    return traj


def _maybe_conj_back(state, backward: bool, spec: EvolutionSpec):
    if backward and spec.variant is not Variant.SZEGO:
        return state.conj()
    return state


class PicardDivergenceError(RuntimeError):
    """Fixed-point iteration of the Duhamel map failed to contract."""

    def __init__(self, residuals: list[float]):
        super().__init__(
            "Picard iteration residuals grew instead of contracting: "
            + ", ".join(f"{r:.3e}" for r in residuals)
        )
        self.residuals = residuals


def picard_iterate(
    u0: TorusField,
    alpha: float,
    T: float,
    n_quad: int = 33,
    max_iter: int = 50,
    tol: float = 1e-12,
) -> TorusField:
    """Solve u(T) by fixed-point iteration of the Duhamel integral map.

    u(t) = S(t) u0 - i * int_0^t S(t-s) |u(s)|^2 u(s) ds, discretized on
    n_quad uniform nodes with composite trapezoid quadrature.  Intended as a
    short-time cross-check of :func:`evolve`; divergence raises
    :class:`PicardDivergenceError` with the residual history.
    """
    if n_quad < 2:
        raise ValueError("n_quad must be >= 2")
    ts = np.linspace(0.0, T, n_quad)
    h = ts[1] - ts[0]
    free = [linear_propagate(u0, t, alpha) for t in ts]
    traj = list(free)
    residuals: list[float] = []

    for _ in range(max_iter):
        nl = [cubic_term(u) for u in traj]
        new = [free[0]]
        # cumulative trapezoid of S(t_j - s) N(u(s)) over s in [0, t_j]
        for j in range(1, n_quad):
            acc = np.zeros_like(u0.coeffs)
            for i in range(j + 1):
                w = h if 0 < i < j else h / 2.0
                acc = acc + w * linear_propagate(nl[i], ts[j] - ts[i], alpha).coeffs
            new.append(free[j].with_coeffs(free[j].coeffs - 1j * acc))
        res = max(l2_norm(a - b) for a, b in zip(new, traj))
        residuals.append(res)
        traj = new
        if res < tol:
            return traj[-1]
        if len(residuals) >= 3 and residuals[-1] > residuals[-2] > residuals[-3]:
            raise PicardDivergenceError(residuals)
    return traj[-1]
