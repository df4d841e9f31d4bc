"""Spectral checks of the boundary operators on the upper half-space R^n_+.

Fields live on a periodic grid over R^d, d = n - 1, and take values in the
spinor space of Cl_n.  Generator e_0 pairs with the normal variable t, e_j with
the boundary coordinate x_j.  Everything is a Fourier multiplier:

    R_j         -i xi_j / |xi|        (0 at xi = 0 and on the Nyquist plane of axis j)
    H           sum_j e_j R_j
    P           (Id + e_0 H) / 2       boundary value of the Cauchy extension
    C_t         exp(-t |xi|) P

The Nyquist bins are zeroed so that real inputs give real outputs.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy import fft as sfft
from scipy import integrate, signal

from .clifford import build
from .errors import DimensionMismatch, QuadratureError, UnsupportedDimension

MAX_POINTS = 2**21
TINY = 1e-300


def omega(n: int) -> float:
    """Surface measure of the unit sphere in R^n."""
    return 2 * math.pi ** (n / 2) / math.gamma(n / 2)


@dataclass(frozen=True)
class KernelConstants:
    n: int

    @property
    def omega_n(self) -> float:
        return omega(self.n)


@dataclass(frozen=True)
class Grid:
    d: int
    N: int
    L: float = 2 * math.pi

    def __post_init__(self):
        if self.d not in (1, 2, 3):
            raise UnsupportedDimension(self.d, "boundary dimension must be 1, 2 or 3")
        if self.N < 4 or self.N & (self.N - 1):
            raise UnsupportedDimension(self.N, "N must be a power of two >= 4")
        if self.N**self.d > MAX_POINTS:
            raise UnsupportedDimension(self.N, f"N^d above {MAX_POINTS}")
        if not self.L > 0:
            raise ValueError("period must be positive")

    @property
    def dx(self) -> float:
        return self.L / self.N

    @property
    def size(self) -> int:
        return self.N**self.d

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.d

    @property
    def cell_volume(self) -> float:
        return self.dx**self.d

    def axis(self) -> np.ndarray:
        return -self.L / 2 + self.dx * np.arange(self.N)

    def mesh(self) -> list[np.ndarray]:
        return np.meshgrid(*([self.axis()] * self.d), indexing="ij")

    def points(self) -> np.ndarray:
        return np.stack([m.ravel() for m in self.mesh()], axis=1)

    def wavenumbers(self) -> list[np.ndarray]:
        k = 2 * np.pi * np.fft.fftfreq(self.N, d=self.dx)
        return np.meshgrid(*([k] * self.d), indexing="ij")

    def modulus(self) -> np.ndarray:
        return np.sqrt(sum(k**2 for k in self.wavenumbers()))

    def nyquist(self, j: int) -> np.ndarray:
        """Mask of bins whose axis-j frequency index is N/2."""
        idx = np.meshgrid(*([np.arange(self.N)] * self.d), indexing="ij")[j - 1]
        return idx == self.N // 2

    def to_json(self) -> dict:
        return {"d": self.d, "N": self.N, "L": self.L}


@lru_cache(maxsize=None)
def generator_arrays(n: int, component: str = "+") -> tuple[np.ndarray, ...]:
    """Dense float generators e_0 .. e_{n-1} of one component."""
    r = build(n)
    tag = component if r.semisimple_pair else "single"
    return tuple(g.to_numpy() for g in r.component(tag))


@dataclass
class SpinorField:
    grid: Grid
    n: int
    values: np.ndarray
    component: str = "+"
    imag_residue: float = 0.0

    def __post_init__(self):
        if self.n < self.grid.d + 1:
            raise UnsupportedDimension(self.n, "need n >= d + 1")
        self.values = np.asarray(self.values, dtype=float)
        S = self.spinor_dim
        if self.values.shape != (self.grid.size, S):
            raise DimensionMismatch((self.grid.size, S), self.values.shape, "field values")

    @property
    def spinor_dim(self) -> int:
        return generator_arrays(self.n, self.component)[0].shape[0]

    def cube(self) -> np.ndarray:
        return self.values.reshape(self.grid.shape + (self.spinor_dim,))

    def with_values(self, values: np.ndarray, imag_residue: float = 0.0) -> "SpinorField":
        return replace(self, values=np.asarray(values).reshape(self.grid.size, -1), imag_residue=imag_residue)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.values**2) * self.grid.cell_volume))

    def mean(self) -> np.ndarray:
        return self.values.mean(axis=0)

    def apply(self, matrix: np.ndarray) -> "SpinorField":
        """Pointwise action of a spinor-space matrix."""
        return self.with_values(self.values @ np.asarray(matrix).T)

    def __add__(self, other: "SpinorField") -> "SpinorField":
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "SpinorField") -> "SpinorField":
        return self.with_values(self.values - other.values)

    def __mul__(self, s: float) -> "SpinorField":
        return self.with_values(self.values * s)

    __rmul__ = __mul__

    @classmethod
    def zeros(cls, grid: Grid, n: int, component: str = "+") -> "SpinorField":
        S = generator_arrays(n, component)[0].shape[0]
        return cls(grid, n, np.zeros((grid.size, S)), component)

    @classmethod
    def from_function(cls, grid: Grid, n: int, fn, component: str = "+") -> "SpinorField":
        """``fn(points)`` maps an (P, d) array to (P, S) values."""
        return cls(grid, n, fn(grid.points()), component)


def relative(a: np.ndarray, b: np.ndarray) -> float:
    """||a - b|| / ||b||, 0 when both vanish."""
    den = np.linalg.norm(b)
    num = np.linalg.norm(a - b)
    if den == 0:
        return float(num)
    return float(num / den)


# spectral machinery


# spectra are stored spinor-axis first, shape (S, N, ..., N)


def _axes(grid: Grid) -> tuple[int, ...]:
    return tuple(range(1, grid.d + 1))


def _forward(f: SpinorField) -> np.ndarray:
    data = np.ascontiguousarray(f.values.T).reshape((f.spinor_dim,) + f.grid.shape)
    return sfft.fftn(data, axes=_axes(f.grid), workers=-1)


def _inverse(f: SpinorField, spec: np.ndarray) -> SpinorField:
    out = sfft.ifftn(spec, axes=_axes(f.grid), workers=-1)
    scale = max(float(np.abs(out.real).max(initial=0.0)), TINY)
    residue = float(np.abs(out.imag).max(initial=0.0)) / scale
    return f.with_values(out.real.reshape(f.spinor_dim, -1).T, imag_residue=residue)


@lru_cache(maxsize=32)
def riesz_multiplier(grid: Grid, j: int) -> np.ndarray:
    """-i xi_j / |xi| on the FFT bins (read-only, cached per grid)."""
    if not 1 <= j <= grid.d:
        raise IndexError(f"Riesz index {j} outside 1..{grid.d}")
    k = grid.wavenumbers()[j - 1]
    mag = grid.modulus()
    with np.errstate(invalid="ignore", divide="ignore"):
        m = np.where(mag > 0, -1j * k / np.where(mag > 0, mag, 1), 0)
    m[grid.nyquist(j)] = 0
    m.flags.writeable = False
    return m


def _act(spec: np.ndarray, g: np.ndarray) -> np.ndarray:
    S = spec.shape[0]
    return (g @ spec.reshape(S, -1)).reshape(spec.shape)


def _hilbert_spec(f: SpinorField, spec: np.ndarray) -> np.ndarray:
    gens = generator_arrays(f.n, f.component)
    out = np.zeros_like(spec)
    for j in range(1, f.grid.d + 1):
        out += _act(riesz_multiplier(f.grid, j) * spec, gens[j])
    return out


def _projection_spec(f: SpinorField, spec: np.ndarray, sign: int = 1) -> np.ndarray:
    e0 = generator_arrays(f.n, f.component)[0]
    return 0.5 * (spec + sign * _act(_hilbert_spec(f, spec), e0))


def riesz(f: SpinorField, j: int) -> SpinorField:
    """R_j f, per spinor coordinate."""
    return _inverse(f, riesz_multiplier(f.grid, j) * _forward(f))


def clifford_hilbert(f: SpinorField) -> SpinorField:
    """H f = sum_j e_j R_j f."""
    return _inverse(f, _hilbert_spec(f, _forward(f)))


def hardy_projection(f: SpinorField) -> SpinorField:
    """(f + e_0 H f) / 2."""
    return _inverse(f, _projection_spec(f, _forward(f)))


def complementary_projection(f: SpinorField) -> SpinorField:
    """(f - e_0 H f) / 2."""
    return _inverse(f, _projection_spec(f, _forward(f), -1))


def poisson_multiplier(grid: Grid, t: float) -> np.ndarray:
    return np.exp(-t * grid.modulus())


def cauchy_extension(f: SpinorField, t: float) -> SpinorField:
    """exp(-t|xi|) P f: the Cauchy extension sampled at height t."""
    if not t > 0:
        raise ValueError("t must be positive")
    spec = _projection_spec(f, _forward(f))
    return _inverse(f, poisson_multiplier(f.grid, t) * spec)


# kernels


def kernels(t: float, x: np.ndarray, n: int | None = None):
    """Poisson kernel P_t(x) and conjugate kernels Q_t^(j)(x), j = 1..d.

    ``x`` has shape (..., d); ``n`` defaults to d + 1.
    """
    if not t > 0:
        raise ValueError("t must be positive")
    x = np.asarray(x, dtype=float)
    d = x.shape[-1]
    n = d + 1 if n is None else n
    c = 2 / omega(n)
    den = (t**2 + np.sum(x**2, axis=-1)) ** (n / 2)
    P = c * t / den
    Q = tuple(c * x[..., j] / den for j in range(d))
    return P, Q


def convolution_crosscheck(f: SpinorField, t: float, method: str = "direct") -> float:
    """Relative gap between the spectral Cauchy extension and direct convolution.

    The direct side is  (P_t * f)/2 + sum_j e_0 e_j (Q_t^(j) * f)/2  with the
    kernels sampled on non-wrapped offsets, so the gap measures the
    periodization error of the spectral side plus quadrature error.
    """
    grid = f.grid
    if not t > 0:
        raise ValueError("t must be positive")
    offs = grid.dx * np.arange(-(grid.N - 1), grid.N)
    mesh = np.stack(np.meshgrid(*([offs] * grid.d), indexing="ij"), axis=-1)
    P, Q = kernels(t, mesh, f.n)
    gens = generator_arrays(f.n, f.component)
    cube = f.cube()

    def conv(kernel):
        out = np.stack([signal.convolve(kernel, cube[..., s], mode="valid", method=method) for s in range(f.spinor_dim)])
        return out * grid.cell_volume

    direct = 0.5 * conv(P)
    for j in range(1, grid.d + 1):
        direct += 0.5 * _act(conv(Q[j - 1]), gens[0] @ gens[j])
    spectral = cauchy_extension(f, t).values.T.reshape(direct.shape)
    return relative(direct, spectral)


# reports


@dataclass
class HardyReport:
    test: str
    n: int
    d: int
    N: int
    residual: float
    tolerance: float
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.residual < self.tolerance)

    def to_json(self) -> dict:
        out = {
            "test": self.test,
            "n": self.n,
            "d": self.d,
            "N": self.N,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        out.update(self.extra)
        return out


def random_band_limited(
    grid: Grid,
    n: int,
    rng: np.random.Generator,
    band: int | None = None,
    mean_zero: bool = False,
    component: str = "+",
) -> SpinorField:
    """Real random field whose frequency indices satisfy |k_i| <= band on every axis."""
    S = generator_arrays(n, component)[0].shape[0]
    band = grid.N // 8 if band is None else band
    if not 0 < band < grid.N // 2:
        raise ValueError("band must lie strictly between 0 and N/2")
    raw = rng.standard_normal(grid.shape + (S,))
    spatial = tuple(range(grid.d))
    spec = np.fft.fftn(raw, axes=spatial)
    idx = np.abs(np.fft.fftfreq(grid.N) * grid.N)
    keep = np.ones(grid.shape, dtype=bool)
    for ax in np.meshgrid(*([idx] * grid.d), indexing="ij"):
        keep &= ax <= band
    if mean_zero:
        keep[(0,) * grid.d] = False
    spec *= keep[..., None]
    vals = np.fft.ifftn(spec, axes=spatial).real
    return SpinorField(grid, n, vals.reshape(grid.size, S), component)


def idempotency_residual(f: SpinorField) -> float:
    """||P P f - P f|| / ||P f|| after removing the mean of f (P is 1/2 on constants)."""
    f = f.with_values(f.values - f.mean())
    p = hardy_projection(f)
    return relative(hardy_projection(p).values, p.values)


def involution_residual(f: SpinorField) -> float:
    """||H H f - f|| / ||f|| after removing the mean of f."""
    f = f.with_values(f.values - f.mean())
    return relative(clifford_hilbert(clifford_hilbert(f)).values, f.values)


def _h0_projector(witness, f: SpinorField) -> np.ndarray:
    if witness.n != f.n:
        raise DimensionMismatch(f.n, witness.n, "witness n")
    S = f.spinor_dim
    if witness.h0.ambient_dim != S or 2 * witness.h0.dim != S:
        raise ValueError("witness subspace does not halve the spinor space")
    tag = witness.component_tag
    if tag != "single" and tag != f.component:
        raise ValueError(f"witness component {tag} does not match field component {f.component}")
    q = witness.h0.orthonormal_basis()
    return q.T @ q


def project_h0(f: SpinorField, witness) -> SpinorField:
    """Pointwise orthogonal projection of the values onto H0."""
    return f.apply(_h0_projector(witness, f))


def reconstruction(f: SpinorField, witness) -> SpinorField:
    """The operator R: twice the orthogonal projection onto H0."""
    return f.apply(2 * _h0_projector(witness, f))


def boundary_value(f: SpinorField) -> SpinorField:
    """B C f: the t -> 0 limit of the Cauchy extension, as a multiplier."""
    return hardy_projection(f)


def rbc_identity(f: SpinorField, witness) -> float:
    """||R B C f - f|| / ||f|| for f projected onto H0."""
    f0 = project_h0(f, witness)
    out = reconstruction(boundary_value(f0), witness)
    return relative(out.values, f0.values)


def crb_identity(f: SpinorField, witness, t: float) -> float:
    """||C R B F - F|| / ||F|| for F the Cauchy extension of an H0-valued field."""
    f0 = project_h0(f, witness)
    F = cauchy_extension(f0, t)
    again = cauchy_extension(reconstruction(boundary_value(f0), witness), t)
    return relative(again.values, F.values)


@dataclass
class DiracReport:
    steps: list
    residuals: list
    orders: list
    spectral_residual: float

    @property
    def min_order(self) -> float:
        return min(self.orders)

    def to_json(self) -> dict:
        return {
            "steps": self.steps,
            "residuals": self.residuals,
            "orders": self.orders,
            "min_order": self.min_order,
            "spectral_residual": self.spectral_residual,
        }


def _spatial_dirac(F_spec: np.ndarray, f: SpinorField) -> np.ndarray:
    gens = generator_arrays(f.n, f.component)
    ks = f.grid.wavenumbers()
    out = np.zeros_like(F_spec)
    for j in range(1, f.grid.d + 1):
        out += _act(1j * ks[j - 1] * F_spec, gens[j])
    return out


def dirac_residual(f: SpinorField, steps=(0.1, 0.05, 0.025), t0: float = 0.5) -> DiracReport:
    """Residual of (e_0 d/dt + sum_j e_j d/dx_j) applied to the Cauchy extension.

    d/dt uses central differences with each step in ``steps``; d/dx_j is
    spectral.  The spectral variant replaces d/dt by the multiplier -|xi|.
    """
    steps = [float(h) for h in steps]
    if len(steps) < 3:
        raise ValueError("need at least three step sizes")
    if min(steps) <= 0 or max(steps) >= t0:
        raise ValueError("steps must lie in (0, t0)")
    e0 = generator_arrays(f.n, f.component)[0]
    P_spec = _projection_spec(f, _forward(f))
    mag = f.grid.modulus()
    F_spec = np.exp(-t0 * mag) * P_spec
    spatial = _spatial_dirac(F_spec, f)
    scale = max(np.linalg.norm(spatial), TINY)
    residuals = []
    for h in steps:
        dt = (np.exp(-(t0 + h) * mag) - np.exp(-(t0 - h) * mag)) / (2 * h) * P_spec
        # differences are taken on the real-space samples
        dt = sfft.fftn(sfft.ifftn(dt, axes=_axes(f.grid)).real, axes=_axes(f.grid))
        residuals.append(float(np.linalg.norm(_act(dt, e0) + spatial) / scale))
    orders = [math.log(a / b) / math.log(h1 / h2) for a, b, h1, h2 in zip(residuals, residuals[1:], steps, steps[1:]) if a > 0 and b > 0]
    if not orders:
        orders = [float("inf")]
    exact_dt = -mag * F_spec
    spectral = float(np.linalg.norm(_act(exact_dt, e0) + spatial) / scale)
    return DiracReport(steps=steps, residuals=residuals, orders=orders, spectral_residual=spectral)


# normalization of the test function f(x) = c x_1 exp(-|x|^2)


@dataclass
class SchwartzReport:
    n: int
    c: float
    riesz_values: list
    closed_form: float
    tol: float

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "c": self.c,
            "riesz_at_origin": self.riesz_values,
            "closed_form_c": self.closed_form,
            "quadrature_tol": self.tol,
        }


def _sphere_point(angles: tuple, d: int) -> np.ndarray:
    """Hyperspherical unit vector and its Jacobian factor (without r)."""
    if d == 2:
        (phi,) = angles
        return np.array([math.cos(phi), math.sin(phi)]), 1.0
    th, phi = angles
    st = math.sin(th)
    return np.array([math.cos(th), st * math.cos(phi), st * math.sin(phi)]), st


def _spherical_moment(n: int, j: int, tol: float) -> float:
    """I_j = int_{R^d} u_j u_1 |u|^-n exp(-|u|^2) du in polar coordinates."""
    d = n - 1
    opts = {"epsabs": tol, "epsrel": tol, "limit": 200}
    if d == 1:
        # angles are the two directions +-1, theta_j theta_1 = 1
        val, _ = integrate.quad(lambda r: math.exp(-r * r) * r ** (d + 1 - n), 0, np.inf, **opts)
        return 2 * val if j == 1 else 0.0

    def integrand(r, *angles):
        theta, jac = _sphere_point(angles, d)
        return theta[j - 1] * theta[0] * jac * r ** (d + 1 - n) * math.exp(-r * r)

    ranges = [(0, np.inf), (0, 2 * math.pi)] if d == 2 else [(0, np.inf), (0, math.pi), (0, 2 * math.pi)]
    val, _ = integrate.nquad(integrand, ranges, opts=[opts] * len(ranges))
    return val


def parametric_moment(n: int, tol: float) -> float:
    """I_1 through |u|^-n = Gamma(n/2)^-1 int_0^inf s^(n/2-1) exp(-s|u|^2) ds.

    The Gaussian integral over u is then explicit and one quadrature in s
    remains, so this route shares no coordinates with the polar one.
    """
    d = n - 1

    def integrand(s):
        return s ** (n / 2 - 1) * math.pi ** (d / 2) / (2 * (1 + s) ** (d / 2 + 1))

    val, _ = integrate.quad(integrand, 0, np.inf, epsabs=tol, epsrel=tol, limit=400)
    return val / math.gamma(n / 2)


def schwartz_closed_form(n: int) -> float:
    return -omega(n) * (n - 1) / (omega(n - 1) * math.sqrt(math.pi))


def riesz_at_origin(n: int, c: float, j: int, tol: float = 1e-11, route: str = "polar") -> float:
    """R_j f(0) = (2/omega_n) int (-u_j / |u|^n) c u_1 exp(-|u|^2) du.

    ``route`` is ``polar`` (adaptive cubature in hyperspherical coordinates) or
    ``parametric`` (one-dimensional; j >= 2 vanishes there identically).
    """
    if route == "polar":
        moment = _spherical_moment(n, j, tol)
    elif route == "parametric":
        moment = parametric_moment(n, tol) if j == 1 else 0.0
    else:
        raise ValueError(f"unknown route {route!r}")
    return -c * 2 / omega(n) * moment


def schwartz_normalization(n: int, tol: float = 1e-10) -> SchwartzReport:
    """The c with R_1 f(0) = 1 for f(x) = c x_1 exp(-|x|^2) on R^(n-1)."""
    if not 2 <= n <= 4:
        raise UnsupportedDimension(n, "normalization is implemented for 2 <= n <= 4")
    moment = _spherical_moment(n, 1, tol)
    if not moment > 0 or not math.isfinite(moment):
        raise QuadratureError(f"quadrature returned {moment}")
    c = -omega(n) / (2 * moment)
    values = [riesz_at_origin(n, c, j, tol) for j in range(1, n)]
    return SchwartzReport(n=n, c=c, riesz_values=values, closed_form=schwartz_closed_form(n), tol=tol)


# field I/O


def write_field(f: SpinorField, path) -> tuple[Path, Path]:
    """CSV with columns x1..xd, s0..s(S-1), plus a JSON sidecar."""
    path = Path(path)
    pts = f.grid.points()
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"x{i + 1}" for i in range(f.grid.d)] + [f"s{s}" for s in range(f.spinor_dim)])
        for p, v in zip(pts, f.values):
            w.writerow([repr(float(x)) for x in p] + [repr(float(x)) for x in v])
    side = path.with_suffix(".json")
    meta = {"d": f.grid.d, "N": f.grid.N, "L": f.grid.L, "n": f.n, "component": f.component}
    side.write_text(json.dumps(meta, indent=2))
    return path, side


def read_field(path) -> SpinorField:
    path = Path(path)
    meta = json.loads(path.with_suffix(".json").read_text())
    grid = Grid(meta["d"], meta["N"], meta["L"])
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    data = np.array([[float(x) for x in r] for r in rows[1:]])
    return SpinorField(grid, meta["n"], data[:, grid.d :], meta.get("component", "+"))
