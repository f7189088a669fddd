"""Sampling of symmetric rotationally invariant alpha-stable processes.

Two independent samplers are provided: an exact one (Chambers-Mallows-Stuck
in one dimension, Gaussian subordination by a positive alpha/2-stable
subordinator in higher dimensions) and a Levy-Ito sampler that simulates
large jumps as a compound Poisson process and replaces the compensated
small-jump part below a cutoff ``eps`` by its moment-matching Gaussian
approximation (bias O(eps^{(2-alpha)/2})).

The normalisation is fixed throughout so that increments over ``dt`` have
characteristic function exp(-dt |xi|^alpha).  With that convention the Levy
measure is ``nu(dz) = levy_measure_constant(d, alpha) |z|^{-d-alpha} dz``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.special import gamma, jv

from . import rng as _rng
from .errors import DomainError, ParameterError

__all__ = [
    "StableParams",
    "CadlagPath",
    "PathEnsemble",
    "HeatKernelTable",
    "CharFunctionEstimate",
    "levy_measure_constant",
    "levy_tail_mass",
    "small_jump_variance",
    "sample_increments",
    "sample_ensemble",
    "sample_via_levy_ito",
    "levy_ito_ensemble",
    "heat_kernel",
    "heat_kernel_table",
    "empirical_char_function",
]


@dataclass(frozen=True)
class StableParams:
    """Stability index and spatial dimension of the driving process."""

    alpha: float
    dim: int = 1

    def __post_init__(self):
        if not (0.0 < self.alpha < 2.0):
            raise ParameterError(f"alpha must lie in (0, 2), got {self.alpha}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise ParameterError(f"dim must be an integer >= 1, got {self.dim}")


@dataclass
class CadlagPath:
    """A sampled trajectory on a time grid with recorded large jumps.

    ``values[0]`` is the starting point (0 for noise paths); ``jumps`` lists
    ``(time, jump_vector)`` for every simulated jump of magnitude at least
    ``jump_cutoff`` (``inf`` means no jumps are recorded).
    """

    times: np.ndarray
    values: np.ndarray
    jumps: list = field(default_factory=list)
    jump_cutoff: float = np.inf

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim == 1:
            self.values = self.values[:, None]
        if self.times.ndim != 1 or self.times.shape[0] != self.values.shape[0]:
            raise ParameterError("times and values must have matching leading length")
        if self.times.shape[0] >= 2 and not np.all(np.diff(self.times) > 0):
            raise ParameterError("times must be strictly increasing")
        if self.jump_cutoff < 0:
            raise ParameterError("jump_cutoff must be >= 0")
        for t, z in self.jumps:
            if np.linalg.norm(z) < self.jump_cutoff * (1 - 1e-12):
                raise ParameterError(f"recorded jump at t={t} below jump_cutoff")

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def value_at(self, t: float) -> np.ndarray:
        idx = grid_index(self.times, t)
        return self.values[idx]


@dataclass
class PathEnsemble:
    """A stack of i.i.d. paths sharing one time grid (``values`` is
    ``(n_paths, n_times, dim)``)."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim == 2:
            self.values = self.values[:, :, None]

    @property
    def n_paths(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[2]

    def path(self, i: int) -> CadlagPath:
        return CadlagPath(self.times, self.values[i].copy())

    def __iter__(self):
        return (self.path(i) for i in range(self.n_paths))


def grid_index(times: np.ndarray, t: float) -> int:
    """Index of ``t`` on the grid; raises if ``t`` is not a grid point."""
    idx = int(np.argmin(np.abs(times - t)))
    if abs(times[idx] - t) > 1e-12 * max(1.0, abs(t)):
        raise ParameterError(f"t={t} is not on the path grid")
    return idx


# ---------------------------------------------------------------------------
# Normalisation constants for the Levy measure nu(dz) = c |z|^{-d-alpha} dz.
# ---------------------------------------------------------------------------

def levy_measure_constant(dim: int, alpha: float) -> float:
    """Constant c(d, alpha) making exp(-t|xi|^alpha) the Fourier multiplier."""
    return alpha * 2.0 ** (alpha - 1.0) * gamma((dim + alpha) / 2.0) / (
        np.pi ** (dim / 2.0) * gamma(1.0 - alpha / 2.0)
    )


def sphere_surface(dim: int) -> float:
    """Surface measure of the unit sphere in R^d (2 points for d=1)."""
    return 2.0 * np.pi ** (dim / 2.0) / gamma(dim / 2.0)


def levy_tail_mass(params: StableParams, eps: float) -> float:
    """nu({|z| >= eps}), the intensity of jumps of magnitude >= eps."""
    if eps <= 0:
        raise ParameterError("eps must be positive")
    c = levy_measure_constant(params.dim, params.alpha)
    return c * sphere_surface(params.dim) * eps ** (-params.alpha) / params.alpha


def small_jump_variance(params: StableParams, eps: float) -> float:
    """Per-coordinate variance rate of the compensated part below eps."""
    c = levy_measure_constant(params.dim, params.alpha)
    return c * sphere_surface(params.dim) * eps ** (2.0 - params.alpha) / (
        params.dim * (2.0 - params.alpha)
    )


# ---------------------------------------------------------------------------
# Exact samplers.
# ---------------------------------------------------------------------------

def _standard_symmetric_stable_1d(alpha: float, size, gen: np.random.Generator) -> np.ndarray:
    """Chambers-Mallows-Stuck draw with characteristic function exp(-|xi|^alpha)."""
    u = gen.uniform(-np.pi / 2.0, np.pi / 2.0, size)
    w = gen.exponential(1.0, size)
    if abs(alpha - 1.0) < 1e-14:
        return np.tan(u)
    return (
        np.sin(alpha * u)
        / np.cos(u) ** (1.0 / alpha)
        * (np.cos((1.0 - alpha) * u) / w) ** ((1.0 - alpha) / alpha)
    )


def _positive_stable(alpha_prime: float, size, gen: np.random.Generator) -> np.ndarray:
    """Kanter draw of the one-sided stable law with E exp(-u S) = exp(-u^a')."""
    u = gen.uniform(0.0, np.pi, size)
    e = gen.exponential(1.0, size)
    a = alpha_prime
    factor = (np.sin(a * u) / np.sin(u)) ** (a / (1.0 - a)) * (
        np.sin((1.0 - a) * u) / np.sin(u)
    )
    return (factor / e) ** ((1.0 - a) / a)


def _standard_increments(params: StableParams, size: int, gen: np.random.Generator) -> np.ndarray:
    """(size, dim) array of unit-time standardised stable vectors."""
    if params.dim == 1:
        return _standard_symmetric_stable_1d(params.alpha, size, gen)[:, None]
    s = _positive_stable(params.alpha / 2.0, size, gen)
    z = gen.standard_normal((size, params.dim))
    return np.sqrt(2.0 * s)[:, None] * z


def sample_increments(params: StableParams, dt: float, n_steps: int, seed: int) -> CadlagPath:
    """Sample one path of the alpha-stable process on ``{0, dt, ..., n*dt}``.

    Increments are i.i.d. with characteristic function exp(-dt |xi|^alpha);
    the result is deterministic given ``(params, dt, n_steps, seed)``.
    """
    if dt <= 0:
        raise ParameterError("dt must be positive")
    if n_steps < 0:
        raise ParameterError("n_steps must be >= 0")
    times = dt * np.arange(n_steps + 1)
    gen = _rng.make_generator(seed, _rng.STREAM_INCREMENTS, 0)
    incs = dt ** (1.0 / params.alpha) * _standard_increments(params, n_steps, gen)
    values = np.vstack([np.zeros((1, params.dim)), np.cumsum(incs, axis=0)])
    return CadlagPath(times, values, jumps=[], jump_cutoff=np.inf)


def sample_ensemble(
    params: StableParams,
    dt,
    n_steps: int,
    n_paths: int,
    seed: int,
    threads: int = 1,
) -> PathEnsemble:
    """Sample ``n_paths`` independent paths; ``dt`` may be a scalar or an
    array of per-step durations (for non-uniform grids).

    Chunked per-path keys make the result independent of ``threads``.
    """
    dt = np.asarray(dt, dtype=float)
    if np.any(dt <= 0):
        raise ParameterError("dt must be positive")
    if dt.ndim == 0:
        step_times = dt * np.arange(n_steps + 1)
        scales = np.full(n_steps, float(dt) ** (1.0 / params.alpha))
    else:
        if dt.shape != (n_steps,):
            raise ParameterError("per-step dt must have length n_steps")
        step_times = np.concatenate([[0.0], np.cumsum(dt)])
        scales = dt ** (1.0 / params.alpha)
    values = np.empty((n_paths, n_steps + 1, params.dim))
    values[:, 0, :] = 0.0

    def fill(chunk_idx, start, stop):
        gen = _rng.make_generator(seed, _rng.STREAM_INCREMENTS, chunk_idx)
        m = stop - start
        raw = _standard_increments(params, m * n_steps, gen).reshape(m, n_steps, params.dim)
        np.cumsum(raw * scales[None, :, None], axis=1, out=values[start:stop, 1:, :])

    _rng.chunked_fill(n_paths, fill, threads=threads)
    return PathEnsemble(step_times, values)


# ---------------------------------------------------------------------------
# Levy-Ito sampler.
# ---------------------------------------------------------------------------

def _jump_directions(dim: int, size: int, gen: np.random.Generator) -> np.ndarray:
    if dim == 1:
        return np.where(gen.random(size) < 0.5, -1.0, 1.0)[:, None]
    z = gen.standard_normal((size, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def sample_via_levy_ito(
    params: StableParams,
    dt: float,
    n_steps: int,
    small_jump_cutoff: float,
    seed: int,
) -> CadlagPath:
    """Approximate path from the Levy-Ito decomposition.

    Jumps of magnitude >= ``small_jump_cutoff`` are simulated exactly as a
    compound Poisson process (and recorded), the remainder is replaced by a
    Brownian motion matching the variance of the compensated small-jump
    integral.  As the cutoff decreases the law converges to the exact one.
    """
    eps = small_jump_cutoff
    if not (0.0 < eps <= 1.0):
        raise ParameterError(f"small_jump_cutoff must lie in (0, 1], got {eps}")
    if dt <= 0:
        raise ParameterError("dt must be positive")
    gen = _rng.make_generator(seed, _rng.STREAM_LEVY_ITO, 0)
    horizon = dt * n_steps
    times = dt * np.arange(n_steps + 1)

    sigma2 = small_jump_variance(params, eps)
    gauss = np.sqrt(sigma2 * dt) * gen.standard_normal((n_steps, params.dim))
    values = np.vstack([np.zeros((1, params.dim)), np.cumsum(gauss, axis=0)])

    jumps: list = []
    if horizon > 0:
        n_jumps = gen.poisson(levy_tail_mass(params, eps) * horizon)
        if n_jumps > 0:
            jt = np.sort(gen.uniform(0.0, horizon, n_jumps))
            radii = eps * gen.random(n_jumps) ** (-1.0 / params.alpha)
            vecs = radii[:, None] * _jump_directions(params.dim, n_jumps, gen)
            # a jump in (t_k, t_{k+1}] lands in the increment ending at t_{k+1}
            slots = np.clip(np.searchsorted(times, jt, side="left"), 1, n_steps)
            for t, z, k in zip(jt, vecs, slots):
                values[k:] += z
                jumps.append((float(t), z.copy()))
    return CadlagPath(times, values, jumps=jumps, jump_cutoff=eps)


def levy_ito_ensemble(
    params: StableParams,
    dt: float,
    n_steps: int,
    n_paths: int,
    small_jump_cutoff: float,
    seed: int,
    threads: int = 1,
) -> PathEnsemble:
    """Vectorised Levy-Ito ensemble (jump records are not kept)."""
    eps = small_jump_cutoff
    if not (0.0 < eps <= 1.0):
        raise ParameterError(f"small_jump_cutoff must lie in (0, 1], got {eps}")
    horizon = dt * n_steps
    times = dt * np.arange(n_steps + 1)
    lam = levy_tail_mass(params, eps) * horizon
    sigma2 = small_jump_variance(params, eps)
    values = np.empty((n_paths, n_steps + 1, params.dim))
    values[:, 0, :] = 0.0

    def fill(chunk_idx, start, stop):
        gen = _rng.make_generator(seed, _rng.STREAM_LEVY_ITO, chunk_idx)
        m = stop - start
        gauss = np.sqrt(sigma2 * dt) * gen.standard_normal((m, n_steps, params.dim))
        out = np.cumsum(gauss, axis=1)
        counts = gen.poisson(lam, m)
        kmax = int(counts.max()) if m else 0
        if kmax > 0:
            jt = gen.uniform(0.0, horizon, (m, kmax))
            radii = eps * gen.random((m, kmax)) ** (-1.0 / params.alpha)
            dirs = _jump_directions(params.dim, m * kmax, gen).reshape(m, kmax, params.dim)
            live = np.arange(kmax)[None, :] < counts[:, None]
            vecs = np.where(live[:, :, None], radii[:, :, None] * dirs, 0.0)
            slots = np.clip(np.searchsorted(times, jt.ravel(), side="left"), 1, n_steps)
            # accumulate each jump into all later grid increments
            add = np.zeros((m, n_steps + 1, params.dim))
            rows = np.repeat(np.arange(m), kmax)
            np.add.at(add, (rows, slots), vecs.reshape(-1, params.dim))
            out += np.cumsum(add[:, 1:, :], axis=1)
        values[start:stop, 1:, :] = out

    _rng.chunked_fill(n_paths, fill, threads=threads)
    return PathEnsemble(times, values)


# ---------------------------------------------------------------------------
# Fractional heat kernel.
# ---------------------------------------------------------------------------

def _freq_cutoff(alpha: float, t: float) -> float:
    # exp(-t xi^alpha) < 1e-16 beyond this
    return (16.0 * np.log(10.0) / t) ** (1.0 / alpha)


def heat_kernel(params: StableParams, t: float, x) -> float:
    """Density K(t, x) of the process at time ``t`` by Fourier inversion.

    One dimension uses an adaptive cosine-weighted quadrature; higher
    dimensions reduce to a radial Hankel-type integral.
    """
    if t <= 0:
        raise DomainError(f"heat kernel requires t > 0, got t={t}")
    alpha, d = params.alpha, params.dim
    r = float(np.linalg.norm(np.atleast_1d(np.asarray(x, dtype=float))))
    ximax = _freq_cutoff(alpha, t)
    if d == 1:
        val, _ = quad(
            lambda xi: np.exp(-t * xi**alpha),
            0.0,
            ximax,
            weight="cos",
            wvar=r,
            limit=800,
            epsabs=1e-13,
            epsrel=1e-12,
        )
        return val / np.pi
    if r == 0.0:
        val, _ = quad(lambda s: np.exp(-t * s**alpha) * s ** (d - 1), 0.0, ximax, limit=400)
        return sphere_surface(d) * val / (2.0 * np.pi) ** d
    nu_ord = d / 2.0 - 1.0
    val, _ = quad(
        lambda s: np.exp(-t * s**alpha) * s ** (d / 2.0) * jv(nu_ord, s * r),
        0.0,
        ximax,
        limit=800,
        epsabs=1e-13,
        epsrel=1e-12,
    )
    return (2.0 * np.pi) ** (-d / 2.0) * r ** (1.0 - d / 2.0) * val


def heat_kernel_mass(params: StableParams, t: float, r_max: float = None, tail_terms: int = 6) -> float:
    """Total spatial mass of K(t, .) to high accuracy (d = 1).

    Combines adaptive quadrature of the Fourier-inverted kernel on
    ``[0, r_max]`` with the analytic tail integral from the large-``|x|``
    series K(t,x) ~ (1/pi) sum_k (-1)^{k+1} t^k Gamma(k a + 1)
    sin(k pi a / 2) / (k! |x|^{k a + 1}).
    """
    if params.dim != 1:
        raise ParameterError("heat_kernel_mass implements the d=1 case")
    if t <= 0:
        raise DomainError("mass requires t > 0")
    alpha = params.alpha
    if r_max is None:
        r_max = max(300.0, 60.0 * t ** (1 / alpha))
    core, _ = quad(
        lambda x: heat_kernel(params, t, x), 0.0, r_max, limit=400, epsabs=1e-11, epsrel=1e-11
    )
    tail = 0.0
    for k in range(1, tail_terms + 1):
        term = (
            (-1.0) ** (k + 1)
            * t**k
            * gamma(k * alpha + 1.0)
            * np.sin(k * np.pi * alpha / 2.0)
            / (gamma(k + 1.0) * k * alpha * r_max ** (k * alpha))
        )
        tail += term
    return 2.0 * (core + tail / np.pi)


@dataclass
class HeatKernelTable:
    """Tabulated K(t, r) on a product grid of times and radii."""

    alpha: float
    dim: int
    t_grid: np.ndarray
    r_grid: np.ndarray
    values: np.ndarray  # (len(t_grid), len(r_grid))

    def radial_mass(self) -> np.ndarray:
        """Trapezoid mass of each time slice over the radial grid."""
        if self.dim == 1:
            return 2.0 * np.trapezoid(self.values, self.r_grid, axis=1)
        weight = sphere_surface(self.dim) * self.r_grid ** (self.dim - 1)
        return np.trapezoid(self.values * weight[None, :], self.r_grid, axis=1)

    def validate(self, mass_tol: float = 1e-2) -> None:
        if np.any(self.values < -1e-12):
            raise DomainError("heat kernel table contains negative values")
        mass = self.radial_mass()
        if np.any(np.abs(mass - 1.0) > mass_tol):
            raise DomainError(f"radial mass deviates from 1: {mass}")


def heat_kernel_table(params: StableParams, t_grid, r_grid) -> HeatKernelTable:
    t_grid = np.asarray(t_grid, dtype=float)
    r_grid = np.asarray(r_grid, dtype=float)
    if np.any(t_grid <= 0):
        raise DomainError("all table times must be positive")
    if np.any(r_grid < 0):
        raise ParameterError("radii must be nonnegative")
    vals = np.empty((t_grid.size, r_grid.size))
    for i, t in enumerate(t_grid):
        for j, r in enumerate(r_grid):
            vals[i, j] = heat_kernel(params, t, r * np.ones(1) if params.dim == 1 else np.r_[r, np.zeros(params.dim - 1)])
    return HeatKernelTable(params.alpha, params.dim, t_grid, r_grid, vals)


# ---------------------------------------------------------------------------
# Empirical characteristic function.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharFunctionEstimate:
    value: complex
    se: float       # combined (re, im) jackknife standard error
    n_paths: int

    def agrees_with(self, other, n_se: float = 3.0) -> bool:
        if isinstance(other, CharFunctionEstimate):
            return abs(self.value - other.value) <= n_se * np.hypot(self.se, other.se)
        return abs(self.value - other) <= n_se * self.se


def empirical_char_function(paths, t: float, xi) -> CharFunctionEstimate:
    """Sample mean of exp(i xi . L_t) with jackknife standard error.

    ``paths`` is a :class:`PathEnsemble` or an iterable of paths sharing one
    grid; ``t`` must lie on that grid.
    """
    if isinstance(paths, PathEnsemble):
        times, values = paths.times, paths.values
    else:
        plist = list(paths)
        if not plist:
            raise ParameterError("empty path ensemble")
        times = plist[0].times
        for p in plist[1:]:
            if p.times.shape != times.shape or not np.allclose(p.times, times):
                raise ParameterError("all paths must share the same grid")
        values = np.stack([p.values for p in plist])
    if values.shape[0] == 0:
        raise ParameterError("empty path ensemble")
    idx = grid_index(times, t)
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    z = np.exp(1j * values[:, idx, :].dot(xi))
    n = z.size
    mean = z.mean()
    if n > 1:
        # leave-one-out means of a sample mean reduce to the usual SE
        var_re = z.real.var(ddof=1) / n
        var_im = z.imag.var(ddof=1) / n
        se = float(np.sqrt(var_re + var_im))
    else:
        se = 0.0
    return CharFunctionEstimate(complex(mean), se, n)
