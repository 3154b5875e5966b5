"""Hong-Ou-Mandel coincidence traces and phase-compensated temporal
correlation profiles.

The coincidence rate behind a balanced beam splitter is

    R_n(tau) = 1 - Re[ e^(i w_p tau) Int dw e^(-2 i w tau) <|F|^2> ] / R0 ,

a cosine transform of <|F|^2> about the degenerate frequency.  The
sum-frequency intensity I_sum(tau), the measurable proxy for the two-photon
temporal wave packet, is the squared modulus of the Fourier transform of the
collapsed two-photon amplitude; for the stationary cw-pumped state the
detection-time average cancels into the unit-area normalization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from . import phasematch, spectra
from .dispersion import DispersionModel
from .spectra import PumpSpec, SpectralGrid, half_max_interval
from .structure import DomainStack

__all__ = [
    "PhaseUnavailableError",
    "PhaseUnwrapError",
    "TwoPhotonAmplitude",
    "HomTrace",
    "SumFrequencyTrace",
    "default_hom_delays",
    "hom_trace",
    "two_photon_amplitude",
    "compensate_phase",
    "sum_frequency_trace",
    "fft_delay_axis",
    "trace_fwhm",
]

COMPENSATION_MODES = ("none", "ideal", "quadratic")
# |Phi| below this fraction of the band maximum counts as a gap for unwrapping.
UNWRAP_GAP_FRACTION = 1e-8


class PhaseUnavailableError(ValueError):
    """Requested a phase-carrying amplitude from a phase-free source."""


class PhaseUnwrapError(ValueError):
    """Amplitude magnitude vanishes inside the phase-fit window."""


@dataclass(frozen=True, eq=False)
class TwoPhotonAmplitude:
    """Collapsed two-photon spectral amplitude on a symmetric grid.

    compensation records the phase state; quadratic compensation stores the
    removed polynomial coefficients (highest power first).
    """

    grid: SpectralGrid
    values: np.ndarray
    compensation: str = "none"
    fit_coefficients: tuple = None


@dataclass(frozen=True, eq=False)
class HomTrace:
    """Normalized coincidence rates over relative delays, with the
    zero-delay baseline R0 (m^2 rad/s)."""

    delays: np.ndarray
    rates: np.ndarray
    baseline: float


@dataclass(frozen=True, eq=False)
class SumFrequencyTrace:
    """Unit-area sum-frequency intensity over relative delays."""

    delays: np.ndarray
    intensity: np.ndarray
    compensation: str


def default_hom_delays(span: float = 200e-15, step: float = 0.25e-15) -> np.ndarray:
    n = int(round(span / step))
    return np.arange(-n, n + 1) * step


def _trapezoid_weights(x: np.ndarray) -> np.ndarray:
    w = np.empty_like(x)
    w[1:-1] = (x[2:] - x[:-2]) / 2.0
    w[0] = (x[1] - x[0]) / 2.0
    w[-1] = (x[-1] - x[-2]) / 2.0
    return w


def hom_trace(mean_abs_f_sq: np.ndarray, grid: SpectralGrid, pump: PumpSpec,
              delays: np.ndarray = None) -> HomTrace:
    """Coincidence-rate trace from <|F|^2> sampled on the grid.

    Works identically for concrete stacks and ensemble averages; two sources
    with the same <|F|^2> produce the same trace.
    """
    curve = np.asarray(mean_abs_f_sq, dtype=float)
    if curve.size == 0 or curve.size != grid.omega.size:
        raise ValueError("mean_abs_f_sq must be sampled on the grid")
    delays = default_hom_delays() if delays is None else np.asarray(delays, dtype=float)
    weights = _trapezoid_weights(grid.omega)
    baseline = float(np.dot(weights, curve))
    if baseline <= 0.0:
        raise ValueError("zero baseline: <|F|^2> integrates to zero")
    # e^(i w_p tau) e^(-2 i w tau) = e^(-2 i (w - w_p/2) tau)
    phases = np.cos(2.0 * np.outer(delays, grid.detuning))
    rates = 1.0 - (phases @ (weights * curve)) / baseline
    return HomTrace(delays, rates, baseline)


def two_photon_amplitude(source, grid: SpectralGrid, pump: PumpSpec,
                         model: DispersionModel) -> TwoPhotonAmplitude:
    """Collapsed amplitude g * xi_p * F(dk) of a concrete stack.

    Ensemble sources carry no phase information; computing their amplitude
    per realization is the caller's job.
    """
    if not isinstance(source, DomainStack):
        raise PhaseUnavailableError(
            f"{type(source).__name__} carries |F|^2 only; build per-realization "
            "stacks to obtain phases"
        )
    mismatch = spectra.mismatch_on_grid(grid, pump, model)
    f = phasematch.f_exact(source, mismatch).value
    g = spectra.coupling_g(grid.omega, grid.idler(pump.omega_p0), model)
    values = g * np.sqrt(pump.amplitude_sq) * f
    return TwoPhotonAmplitude(grid, values, compensation="none")


def compensate_phase(amplitude: TwoPhotonAmplitude, mode: str) -> TwoPhotonAmplitude:
    """Remove spectral phase: all of it ('ideal') or its fitted quadratic
    part ('quadratic'); magnitudes are preserved exactly.

    The quadratic fit runs over the band where |Phi|^2 is at least half its
    maximum, on the unwrapped phase, weighted by |Phi|^2.
    """
    if amplitude.compensation != "none":
        raise ValueError(f"amplitude already compensated ({amplitude.compensation})")
    if mode not in ("ideal", "quadratic"):
        raise ValueError(f"mode must be 'ideal' or 'quadratic', got {mode!r}")
    magnitude = np.abs(amplitude.values)
    if mode == "ideal":
        return TwoPhotonAmplitude(amplitude.grid, magnitude.astype(complex), "ideal")

    power = magnitude ** 2
    band = power >= power.max() / 2.0
    lo, hi = np.flatnonzero(band)[[0, -1]]
    window = slice(lo, hi + 1)
    gaps = magnitude[window] < UNWRAP_GAP_FRACTION * magnitude.max()
    if gaps.any():
        idx = lo + int(np.argmax(gaps))
        raise PhaseUnwrapError(
            f"|Phi| vanishes inside the fit window at sample {idx} "
            f"(omega = {amplitude.grid.omega[idx]:.6e} rad/s)"
        )
    detuning = amplitude.grid.detuning
    phase = np.unwrap(np.angle(amplitude.values[window]))
    # polyfit squares the weights; passing |Phi| weights residuals by |Phi|^2
    coeffs = np.polyfit(detuning[window], phase, 2, w=magnitude[window])
    residual_phase = np.angle(amplitude.values) - np.polyval(coeffs, detuning)
    values = magnitude * np.exp(1j * residual_phase)
    return TwoPhotonAmplitude(amplitude.grid, values, "quadratic", tuple(coeffs))


def sum_frequency_trace(amplitude: TwoPhotonAmplitude, delays: np.ndarray = None,
                        pad_factor: int = 16) -> SumFrequencyTrace:
    """Unit-area sum-frequency intensity |Int dw Phi(w) e^(-i w tau)|^2.

    With delays=None the delay axis comes from an FFT of the spectral grid,
    zero-padded by pad_factor for sub-step delay resolution; an explicit
    delay list is evaluated by direct transform.
    """
    dw = np.diff(amplitude.grid.omega)
    if not np.allclose(dw, dw[0], rtol=1e-9):
        raise ValueError("sum_frequency_trace requires a uniform grid")
    step = amplitude.grid.step
    if delays is not None:
        delays = np.asarray(delays, dtype=float)
        kernel = np.exp(-1j * np.outer(delays, amplitude.grid.detuning))
        intensity = np.abs(step * (kernel @ amplitude.values)) ** 2
    else:
        n = amplitude.values.size * pad_factor
        transform = np.fft.fft(amplitude.values, n)
        intensity = np.abs(step * transform) ** 2
        delays = 2.0 * np.pi * np.fft.fftfreq(n, d=step)
        order = np.argsort(delays)
        delays, intensity = delays[order], intensity[order]
    area = trapezoid(intensity, delays)
    if area <= 0.0:
        raise ValueError("intensity integrates to zero; cannot normalize")
    return SumFrequencyTrace(delays, intensity / area, amplitude.compensation)


def fft_delay_axis(grid: SpectralGrid, pad_factor: int = 16) -> np.ndarray:
    """Sorted delay axis of the FFT path of sum_frequency_trace."""
    n = grid.omega.size * pad_factor
    return np.sort(2.0 * np.pi * np.fft.fftfreq(n, d=grid.step))


def trace_fwhm(delays: np.ndarray, values: np.ndarray) -> float:
    """FWHM of a temporal trace (outermost half-max crossings)."""
    lo, hi = half_max_interval(np.asarray(delays), np.asarray(values))
    return hi - lo
