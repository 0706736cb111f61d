"""Band-limited functions on the 1-D torus, stored as Fourier coefficients.

Conventions used throughout the package (fixed here, documented once):

* A field with ``max_mode = K`` keeps the coefficients ``c_k`` for
  ``k = -K, ..., K`` of ``u(x) = sum_k c_k exp(i k x)``.
* The torus carries the *normalized* measure (total mass 1), so that
  ``||u||_{L^2}^2 = sum_k |c_k|^2`` and the inner product is
  ``(u, v) = sum_k u_k conj(v_k)``.
* The Sobolev weight is the inhomogeneous ``(1 + k^2)^s``; homogeneous
  seminorms are obtained by combining :func:`fractional_derivative` with the
  L^2 norm.
* Pointwise products are computed alias-free by exact zero padding, never by
  the 2/3 rule, so spectral arithmetic is exact up to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import next_fast_len


@dataclass(frozen=True)
class TorusField:
    """Immutable band-limited function on the torus.

    ``coeffs[i]`` is the Fourier coefficient of mode ``k = i - max_mode``.
    """

    max_mode: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.max_mode < 0:
            raise ValueError("max_mode must be >= 0")
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.shape != (2 * self.max_mode + 1,):
            raise ValueError(
                f"expected {2 * self.max_mode + 1} coefficients, got {c.shape}"
            )
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def modes(self) -> np.ndarray:
        """Wavenumbers k = -K..K matching ``coeffs``."""
        return np.arange(-self.max_mode, self.max_mode + 1)

    def coeff(self, k: int) -> complex:
        if abs(k) > self.max_mode:
            return 0.0 + 0.0j
        return complex(self.coeffs[k + self.max_mode])

    def with_coeffs(self, coeffs: np.ndarray) -> "TorusField":
        return TorusField(self.max_mode, coeffs)

    def truncate(self, max_mode: int) -> "TorusField":
        """Galerkin projection onto |k| <= max_mode (or zero padding up)."""
        K, Knew = self.max_mode, max_mode
        out = np.zeros(2 * Knew + 1, dtype=np.complex128)
        m = min(K, Knew)
        out[Knew - m : Knew + m + 1] = self.coeffs[K - m : K + m + 1]
        return TorusField(Knew, out)

    def conj(self) -> "TorusField":
        """Complex conjugate field: coefficients conj(c_{-k})."""
        return TorusField(self.max_mode, np.conj(self.coeffs[::-1]))

    def __add__(self, other: "TorusField") -> "TorusField":
        K = max(self.max_mode, other.max_mode)
        return TorusField(
            K, self.truncate(K).coeffs + other.truncate(K).coeffs
        )

    def __sub__(self, other: "TorusField") -> "TorusField":
        K = max(self.max_mode, other.max_mode)
        return TorusField(
            K, self.truncate(K).coeffs - other.truncate(K).coeffs
        )

    def __mul__(self, scalar: complex) -> "TorusField":
        return TorusField(self.max_mode, self.coeffs * scalar)

    __rmul__ = __mul__


def zero_field(max_mode: int) -> TorusField:
    return TorusField(max_mode, np.zeros(2 * max_mode + 1, dtype=np.complex128))


def from_modes(max_mode: int, entries: dict[int, complex]) -> TorusField:
    """Build a field from a sparse {k: coefficient} mapping."""
    c = np.zeros(2 * max_mode + 1, dtype=np.complex128)
    for k, v in entries.items():
        if abs(k) > max_mode:
            raise ValueError(f"mode {k} exceeds max_mode {max_mode}")
        c[k + max_mode] = v
    return TorusField(max_mode, c)


def random_decaying_field(
    max_mode: int,
    sigma: float,
    amplitude: float = 1.0,
    rng: np.random.Generator | None = None,
    seed: int | None = None,
) -> TorusField:
    """Random smooth data: c_k = amplitude * r_k e^{i theta_k} (1+k^2)^{-sigma/2}.

    ``r_k`` is uniform on [0, 1) and ``theta_k`` uniform on [0, 2 pi).  The
    generator is the counter-based Philox engine so streams are reproducible
    across platforms from the seed alone.
    """
    if rng is None:
        rng = np.random.Generator(np.random.Philox(seed))
    k = np.arange(-max_mode, max_mode + 1)
    r = rng.random(2 * max_mode + 1)
    theta = rng.random(2 * max_mode + 1) * 2.0 * np.pi
    c = amplitude * r * np.exp(1j * theta) * (1.0 + k.astype(float) ** 2) ** (
        -sigma / 2.0
    )
    return TorusField(max_mode, c)


def grid_values(u: TorusField, grid_size: int) -> np.ndarray:
    """Evaluate u at x_j = 2 pi j / grid_size, j = 0..grid_size-1 (exact)."""
    K = u.max_mode
    if grid_size < 2 * K + 1:
        raise ValueError(f"grid_size {grid_size} < 2K+1 = {2 * K + 1}")
    spec = np.zeros(grid_size, dtype=np.complex128)
    k = u.modes
    spec[np.mod(k, grid_size)] = u.coeffs
    return grid_size * np.fft.ifft(spec)


def field_from_grid(values: np.ndarray, max_mode: int) -> TorusField:
    """Fourier coefficients |k| <= max_mode of equispaced samples.

    Exact when the sampled function is band-limited below the aliasing
    threshold of the grid.
    """
    m = len(values)
    if m < 2 * max_mode + 1:
        raise ValueError("grid too small for requested max_mode")
    spec = np.fft.fft(values) / m
    k = np.arange(-max_mode, max_mode + 1)
    return TorusField(max_mode, spec[np.mod(k, m)])


def fractional_derivative(u: TorusField, rho: float) -> TorusField:
    """|D|^rho u: multiply coefficient k by |k|^rho (mode 0 -> 0 for rho > 0)."""
    if rho < 0:
        raise ValueError("negative-order smoothing is not supported")
    k = np.abs(u.modes).astype(float)
    if rho == 0:
        return u
    with np.errstate(divide="ignore"):
        mult = k**rho
    mult[u.max_mode] = 0.0  # |0|^rho with rho > 0
    return u.with_coeffs(u.coeffs * mult)


def sobolev_norm(u: TorusField, s: float) -> float:
    """H^s norm with inhomogeneous weight (1+k^2)^s."""
    w = (1.0 + u.modes.astype(float) ** 2) ** s
    return float(np.sqrt(np.sum(w * np.abs(u.coeffs) ** 2)))


def l2_norm(u: TorusField) -> float:
    return float(np.linalg.norm(u.coeffs))


def inner_product(u: TorusField, v: TorusField) -> complex:
    """(u, v) = sum_k u_k conj(v_k) over the shared modes."""
    K = max(u.max_mode, v.max_mode)
    return complex(np.vdot(v.truncate(K).coeffs, u.truncate(K).coeffs))


def lp_norm(u: TorusField, p: float, grid_size: int) -> float:
    """L^p norm by equispaced quadrature under the normalized measure.

    p = inf returns the grid maximum of |u|.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if grid_size < 2 * u.max_mode + 2:
        raise ValueError(
            f"grid_size {grid_size} < 2K+2 = {2 * u.max_mode + 2}"
        )
    vals = np.abs(grid_values(u, grid_size))
    if np.isinf(p):
        return float(vals.max())
    return float(np.mean(vals**p) ** (1.0 / p))


def linf_norm(u: TorusField, grid_size: int | None = None) -> float:
    if grid_size is None:
        grid_size = max(4 * u.max_mode + 2, 64)
    return lp_norm(u, np.inf, grid_size)


def multiply(u: TorusField, v: TorusField) -> TorusField:
    """Exact full-bandwidth product: output max_mode Ku + Kv, alias-free."""
    Ko = u.max_mode + v.max_mode
    m = next_fast_len(2 * Ko + 1)
    w = grid_values(u, m) * grid_values(v, m)
    return field_from_grid(w, Ko)


def pointwise_modulus_squared(u: TorusField) -> TorusField:
    """Exact coefficients of |u|^2 (output max_mode 2K)."""
    return multiply(u, u.conj())


def cubic_term(u: TorusField) -> TorusField:
    """Exact coefficients of |u|^2 u on |k| <= K (Galerkin truncation).

    Computed on a zero-padded grid of size >= 4K+1, so the retained modes
    carry no aliasing error at all.
    """
    K = u.max_mode
    m = next_fast_len(4 * K + 1)
    vals = grid_values(u, m)
    return field_from_grid(vals * np.abs(vals) ** 2, K)


def cubic_term_full(u: TorusField) -> TorusField:
    """Exact coefficients of |u|^2 u on the full bandwidth |k| <= 3K."""
    return multiply(pointwise_modulus_squared(u), u)


def szego_project(u: TorusField) -> TorusField:
    """Zero out the negative Fourier modes (k = 0 is kept). Idempotent."""
    c = u.coeffs.copy()
    c[: u.max_mode] = 0.0
    return u.with_coeffs(c)
