"""Photon-pair observables: spectral densities, widths, rates and the
disorder-chirp equivalence map.

With a cw pump at omega_p the energy delta function collapses every
observable onto the line omega_i = omega_p - omega_s; densities here are
one-dimensional functions of the signal frequency, interpreted per unit
time.  The absolute scale (second-order susceptibility, pump amplitude
normalization, quantization constants) is absorbed into a single
calibration constant pinned to a reference pair rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.constants import c as C_VACUUM, hbar
from scipy.integrate import trapezoid

from . import phasematch, structure
from .dispersion import DispersionModel, PhaseMismatch, base_domain_length, delta_k, refractive_index
from .structure import DomainStack

__all__ = [
    "NoSolutionError",
    "PumpSpec",
    "SpectralGrid",
    "Spectrum",
    "RateReport",
    "FwhmResult",
    "RandomEnsembleSource",
    "ChirpedSource",
    "default_pump",
    "symmetric_grid",
    "coupling_g",
    "mismatch_on_grid",
    "mean_abs_f_sq",
    "spectral_density",
    "signal_spectrum",
    "half_max_interval",
    "fwhm",
    "pair_rate",
    "calibrate",
    "sigma_for_zeta",
    "rate_ratio",
]

DEFAULT_PUMP_WAVELENGTH = 775e-9
DEFAULT_PUMP_POWER = 0.1
DEFAULT_WINDOW = (1.0e-6, 2.6e-6)
DEFAULT_SAMPLES = 2 ** 14
REFERENCE_PAIR_RATE = 2e7          # pairs/s for the reference configuration
REFERENCE_N_DOMAINS = 2000


class NoSolutionError(ValueError):
    """Root bracketing failed for the requested equivalence map."""


@dataclass(frozen=True)
class PumpSpec:
    """cw pump: frequency, optical power and squared amplitude (arb. units,
    proportional to power with a fixed unit constant)."""

    omega_p0: float
    power: float
    amplitude_sq: float = None

    def __post_init__(self):
        if self.power <= 0.0:
            raise ValueError("pump power must be positive")
        if self.amplitude_sq is None:
            object.__setattr__(self, "amplitude_sq", self.power)


def default_pump(power: float = DEFAULT_PUMP_POWER,
                 wavelength: float = DEFAULT_PUMP_WAVELENGTH) -> PumpSpec:
    return PumpSpec(omega_p0=2.0 * np.pi * C_VACUUM / wavelength, power=power)


@dataclass(frozen=True, eq=False)
class SpectralGrid:
    """Uniform signal-frequency grid symmetric about the degenerate frequency.

    For every sample w the mirror omega_p - w is also a sample, which the
    interference transforms rely on.
    """

    omega: np.ndarray
    step: float
    center: float

    def __post_init__(self):
        om = np.asarray(self.omega, dtype=float)
        om.setflags(write=False)
        object.__setattr__(self, "omega", om)

    @property
    def wavelengths(self) -> np.ndarray:
        return 2.0 * np.pi * C_VACUUM / self.omega

    @property
    def detuning(self) -> np.ndarray:
        return self.omega - self.center

    def idler(self, omega_p0: float) -> np.ndarray:
        return omega_p0 - self.omega


def symmetric_grid(omega_p0: float,
                   lambda_min: float = DEFAULT_WINDOW[0],
                   lambda_max: float = DEFAULT_WINDOW[1],
                   n_samples: int = DEFAULT_SAMPLES,
                   model: DispersionModel = None) -> SpectralGrid:
    """Grid covering the signal window [lambda_min, lambda_max] and its
    energy-conservation mirror, symmetric about omega_p/2."""
    if lambda_min >= lambda_max:
        raise ValueError("lambda_min must be below lambda_max")
    if n_samples < 4:
        raise ValueError("n_samples must be at least 4")
    center = omega_p0 / 2.0
    omega_hi = max(2.0 * np.pi * C_VACUUM / lambda_min,
                   omega_p0 - 2.0 * np.pi * C_VACUUM / lambda_max)
    half = omega_hi - center
    if half <= 0.0:
        raise ValueError("window does not bracket the degenerate frequency")
    step = 2.0 * half / (n_samples - 1)
    k = np.arange(n_samples, dtype=float)
    omega = center + (k - (n_samples - 1) / 2.0) * step
    if model is not None:
        refractive_index(model, omega[0])
        refractive_index(model, omega[-1])
    return SpectralGrid(omega, step, center)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Non-negative samples on a spectral grid."""

    grid: SpectralGrid
    values: np.ndarray


@dataclass(frozen=True)
class RateReport:
    pair_rate: float
    calibration_constant: float
    configuration: str
    calibrated: bool


@dataclass(frozen=True)
class RandomEnsembleSource:
    """Analytic ensemble of randomly poled stacks (f_avg_sq path)."""

    n_domains: int
    sigma: float
    l0: float = None


@dataclass(frozen=True)
class ChirpedSource:
    """Analytic chirped stack (closed-form path).

    With envelope=True the Fresnel ripples are averaged out, giving the
    smooth spectral envelope used for width measurements and the
    disorder-chirp map.
    """

    n_domains: int
    zeta: float
    l0: float = None
    envelope: bool = True


def coupling_g(omega_s, omega_i, model: DispersionModel):
    """Two-photon coupling up to the global susceptibility constant:
    sqrt(w_s w_i) / (i c pi sqrt(n_s n_i))."""
    omega_s = np.asarray(omega_s, dtype=float)
    omega_i = np.asarray(omega_i, dtype=float)
    n_s = refractive_index(model, omega_s)
    n_i = refractive_index(model, omega_i)
    g = np.sqrt(omega_s * omega_i) / (1j * C_VACUUM * np.pi * np.sqrt(n_s * n_i))
    return g if np.ndim(g) else complex(g)


def mismatch_on_grid(grid: SpectralGrid, pump: PumpSpec, model: DispersionModel) -> PhaseMismatch:
    return delta_k(model, grid.omega, grid.idler(pump.omega_p0), pump.omega_p0)


def _source_l0(source, pump: PumpSpec, model: DispersionModel) -> float:
    if source.l0 is not None:
        return source.l0
    return base_domain_length(model, pump.omega_p0)


def mean_abs_f_sq(grid: SpectralGrid, pump: PumpSpec, model: DispersionModel, source) -> np.ndarray:
    """<|F|^2> on the grid for a concrete stack (identity average), an
    analytic random ensemble, or an analytic chirped stack."""
    mismatch = mismatch_on_grid(grid, pump, model)
    if isinstance(source, DomainStack):
        return phasematch.f_exact(source, mismatch).abs_sq
    if isinstance(source, RandomEnsembleSource):
        l0 = _source_l0(source, pump, model)
        if source.sigma == 0.0:
            stack = structure.build_periodic(source.n_domains, l0)
            return phasematch.f_exact(stack, mismatch).abs_sq
        return phasematch.f_avg_sq(mismatch, source.n_domains, l0, source.sigma)
    if isinstance(source, ChirpedSource):
        l0 = _source_l0(source, pump, model)
        if source.zeta == 0.0:
            stack = structure.build_periodic(source.n_domains, l0)
            return phasematch.f_exact(stack, mismatch).abs_sq
        zeta_prime = source.zeta / mismatch.delta_k0
        if source.envelope:
            return phasematch.f_chirped_envelope(mismatch, source.n_domains, l0, zeta_prime)
        return phasematch.f_chirped(mismatch, source.n_domains, l0, zeta_prime).abs_sq
    raise TypeError(f"unsupported source {type(source).__name__}")


def spectral_density(grid: SpectralGrid, pump: PumpSpec, model: DispersionModel, source) -> Spectrum:
    """Mean pair-number spectral density (per unit time, uncalibrated):
    |g|^2 |xi_p|^2 / (2 pi) * <|F|^2> on the energy-conservation line."""
    g = coupling_g(grid.omega, grid.idler(pump.omega_p0), model)
    weight = np.abs(g) ** 2 * pump.amplitude_sq / (2.0 * np.pi)
    return Spectrum(grid, weight * mean_abs_f_sq(grid, pump, model, source))


def signal_spectrum(density: Spectrum, normalize: bool = False) -> Spectrum:
    """Signal-field spectrum hbar w_s * density; with normalize=True the
    result is rescaled so exactly one photon is emitted."""
    values = hbar * density.grid.omega * density.values
    if normalize:
        photons = trapezoid(values / (hbar * density.grid.omega), density.grid.omega)
        if photons <= 0.0:
            raise ValueError("cannot normalize an identically zero spectrum")
        values = values / photons
    return Spectrum(density.grid, values)


@dataclass(frozen=True)
class FwhmResult:
    width_omega: float
    width_wavelength: float
    omega_lo: float
    omega_hi: float


def half_max_interval(x: np.ndarray, y: np.ndarray):
    """Outermost crossings of half the global maximum, linearly interpolated.

    Returns (x_lo, x_hi) for ascending x.  Raises ValueError on a
    non-positive curve.
    """
    y = np.asarray(y, dtype=float)
    peak = y.max()
    if not peak > 0.0:
        raise ValueError("curve has no positive maximum; width undefined")
    half = peak / 2.0
    above = y >= half
    first = int(np.argmax(above))
    last = int(len(y) - 1 - np.argmax(above[::-1]))

    def _cross(i_out, i_in):
        return x[i_out] + (half - y[i_out]) * (x[i_in] - x[i_out]) / (y[i_in] - y[i_out])

    lo = x[0] if first == 0 else _cross(first - 1, first)
    hi = x[-1] if last == len(y) - 1 else _cross(last + 1, last)
    return float(lo), float(hi)


def fwhm(spectrum: Spectrum) -> FwhmResult:
    """Full width at half maximum of the raw curve, in rad/s and meters."""
    lo, hi = half_max_interval(spectrum.grid.omega, spectrum.values)
    width_wavelength = 2.0 * np.pi * C_VACUUM * (1.0 / lo - 1.0 / hi)
    return FwhmResult(hi - lo, width_wavelength, lo, hi)


def integrated_density(density: Spectrum) -> float:
    return float(trapezoid(density.values, density.grid.omega))


def pair_rate(density: Spectrum, calibration: float = None, configuration: str = "") -> RateReport:
    """Photon-pair rate, integral of the density; uncalibrated results are
    flagged rather than rejected."""
    raw = integrated_density(density)
    if calibration is None:
        return RateReport(raw, 1.0, configuration or "uncalibrated", calibrated=False)
    return RateReport(calibration * raw, calibration, configuration, calibrated=True)


def calibrate(model: DispersionModel,
              grid: SpectralGrid = None,
              pump: PumpSpec = None,
              reference_rate: float = REFERENCE_PAIR_RATE,
              reference_n_domains: int = REFERENCE_N_DOMAINS) -> float:
    """Fix the global constant so the periodic reference stack reproduces
    the reference pair rate at the reference pump power."""
    pump = pump or default_pump()
    grid = grid or symmetric_grid(pump.omega_p0, model=model)
    stack = structure.build_periodic(reference_n_domains, base_domain_length(model, pump.omega_p0))
    raw = integrated_density(spectral_density(grid, pump, model, stack))
    if raw <= 0.0:
        raise ValueError("reference configuration produced a zero raw rate")
    return reference_rate / raw


def _chirped_width_target(zeta, n_domains, grid, pump, model):
    source = ChirpedSource(n_domains=n_domains, zeta=zeta, envelope=True)
    spec = signal_spectrum(spectral_density(grid, pump, model, source))
    return fwhm(spec).width_omega


def _random_width(sigma, n_domains, grid, pump, model):
    source = RandomEnsembleSource(n_domains=n_domains, sigma=sigma)
    spec = signal_spectrum(spectral_density(grid, pump, model, source))
    return fwhm(spec).width_omega


def sigma_for_zeta(zeta: float, n_domains: int, model: DispersionModel,
                   grid: SpectralGrid = None, pump: PumpSpec = None,
                   rtol: float = 1e-3,
                   sigma_lo: float = 1e-9, sigma_hi: float = 5e-6) -> float:
    """Disorder parameter sigma whose ensemble signal spectrum has the same
    width as the chirped spectrum at the given chirp parameter.

    Bisection on the monotone width(sigma) map over [sigma_lo, sigma_hi];
    raises NoSolutionError when the target is not bracketed.
    """
    pump = pump or default_pump()
    grid = grid or symmetric_grid(pump.omega_p0, model=model)
    target = _chirped_width_target(zeta, n_domains, grid, pump, model)
    lo, hi = sigma_lo, sigma_hi
    w_lo = _random_width(lo, n_domains, grid, pump, model)
    w_hi = _random_width(hi, n_domains, grid, pump, model)
    if not (w_lo <= target <= w_hi):
        raise NoSolutionError(
            f"chirped width {target:.4e} rad/s not bracketed by sigma in "
            f"[{sigma_lo:.2e}, {sigma_hi:.2e}] m (widths [{w_lo:.4e}, {w_hi:.4e}])"
        )
    mid = 0.5 * (lo + hi)
    for _ in range(200):
        width = _random_width(mid, n_domains, grid, pump, model)
        if abs(width - target) <= rtol * target and (hi - lo) <= rtol * hi:
            break
        if width < target:
            lo = mid
        else:
            hi = mid
        mid = 0.5 * (lo + hi)
    return mid


def rate_ratio(zeta: float, n_domains: int, model: DispersionModel,
               grid: SpectralGrid = None, pump: PumpSpec = None,
               sigma: float = None) -> float:
    """Pair-rate ratio random/chirped at width-matched disorder.

    The ratio is calibration- and pump-power-independent.  `sigma` may be
    supplied to reuse a previously solved match.
    """
    pump = pump or default_pump()
    grid = grid or symmetric_grid(pump.omega_p0, model=model)
    if sigma is None:
        sigma = sigma_for_zeta(zeta, n_domains, model, grid, pump)
    random_rate = integrated_density(spectral_density(
        grid, pump, model, RandomEnsembleSource(n_domains=n_domains, sigma=sigma)))
    l0 = base_domain_length(model, pump.omega_p0)
    if zeta == 0.0:
        chirp_stack = structure.build_periodic(n_domains, l0)
    else:
        chirp_stack = structure.build_chirped(n_domains, l0, zeta,
                                              np.pi / l0)
    chirped_rate = integrated_density(spectral_density(grid, pump, model, chirp_stack))
    return random_rate / chirped_rate
