"""Phase-matching function of a poled stack and its analytic forms.

The stochastic phase-matching function of a stack with boundaries z_0..z_N is

    F(dk) = sum_n (-1)^(n-1) integral_{z_(n-1)}^{z_n} exp(i dk z) dz ,

a length-dimensioned complex amplitude.  f_exact evaluates it in closed
per-domain form, f_boundary_sum evaluates the large-N boundary-sum
approximation (2i/dk) sum_j (-1)^j exp(i dk z_j), f_avg_sq gives the exact
ensemble average of |F|^2 over Gaussian domain-length disorder, and
f_chirped / f_chirped_envelope give the closed-form response of a
quadratically chirped stack.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import erf as _scipy_erf

from .dispersion import PhaseMismatch

__all__ = [
    "NumericalDomainError",
    "PhaseMatchSample",
    "f_exact",
    "f_boundary_sum",
    "f_avg_sq",
    "f_chirped",
    "f_chirped_envelope",
    "cerf",
    "BOUNDARY_SUM_MIN_MISMATCH",
    "CERF_REGION_BOUND",
]

# f_boundary_sum carries a 1/dk artifact of the approximation; reject tiny dk.
BOUNDARY_SUM_MIN_MISMATCH = 1e-3
# cerf is validated where exp(-z^2) cannot overflow: Im(z)^2 - Re(z)^2 <= bound.
CERF_REGION_BOUND = 650.0
# Boundary-sum evaluation is chunked to bound the (boundaries x mismatch) matrix.
_CHUNK_ELEMENTS = 8_000_000


class NumericalDomainError(ValueError):
    """Input lies outside the numerically validated domain of an operation."""


@dataclass(frozen=True)
class PhaseMatchSample:
    """Phase-matching amplitude (m) and |F|^2 (m^2) at a mismatch.

    Ensemble-averaged paths carry abs_sq only (value is None).
    """

    value: object
    abs_sq: object
    at: PhaseMismatch


def _signed_boundary_sum(boundaries: np.ndarray, dk: np.ndarray) -> np.ndarray:
    """sum_j (-1)^j exp(i dk z_j), summed in fixed index order per chunk."""
    signs = np.where(np.arange(boundaries.size) % 2 == 0, 1.0, -1.0)
    out = np.empty(dk.shape, dtype=complex)
    chunk = max(1, _CHUNK_ELEMENTS // boundaries.size)
    for i in range(0, dk.size, chunk):
        block = dk[i:i + chunk]
        phases = np.exp(1j * np.multiply.outer(boundaries, block))
        out[i:i + chunk] = np.einsum("j,jk->k", signs, phases)
    return out


def f_exact(stack, mismatch: PhaseMismatch) -> PhaseMatchSample:
    """Exact F: per-domain integrals summed over the stack.

    For dk != 0 the per-domain integrals telescope to the boundary sum with
    half-weight end corrections,

        F = (2i/dk) [ sum_j (-1)^j e^(i dk z_j)
                      - (e^(i dk z_0) + (-1)^N e^(i dk z_N)) / 2 ] ,

    which is evaluated here (algebraically identical to the domain-by-domain
    form, at half the cost).  Near dk = 0 each domain integral takes its
    analytic limit, the signed domain-length sum.
    """
    z = stack.boundaries
    dk = np.atleast_1d(np.asarray(mismatch.delta_k, dtype=float))
    value = np.empty(dk.shape, dtype=complex)

    # |dk| L << 1 would cancel catastrophically in the telescoped form.
    tiny = np.abs(dk) * stack.total_length < 1e-8
    if tiny.any():
        alternating = np.where(np.arange(stack.n_domains) % 2 == 0, 1.0, -1.0)
        value[tiny] = np.dot(alternating, stack.domain_lengths)
    regular = ~tiny
    if regular.any():
        dkr = dk[regular]
        s = _signed_boundary_sum(z, dkr)
        ends = 0.5 * (np.exp(1j * dkr * z[0])
                      + (-1.0) ** stack.n_domains * np.exp(1j * dkr * z[-1]))
        value[regular] = (2j / dkr) * (s - ends)

    if np.ndim(mismatch.delta_k) == 0:
        v = complex(value[0])
        return PhaseMatchSample(v, abs(v) ** 2, mismatch)
    return PhaseMatchSample(value, np.abs(value) ** 2, mismatch)


def f_boundary_sum(stack, mismatch: PhaseMismatch) -> PhaseMatchSample:
    """Large-N approximation F = (2i/dk) sum_j (-1)^j exp(i dk z_j).

    Kept separate from f_exact so the approximation error is measurable.
    Raises NumericalDomainError for |dk| < BOUNDARY_SUM_MIN_MISMATCH * dk0.
    """
    dk = np.atleast_1d(np.asarray(mismatch.delta_k, dtype=float))
    threshold = BOUNDARY_SUM_MIN_MISMATCH * abs(mismatch.delta_k0)
    if np.any(np.abs(dk) < threshold):
        raise NumericalDomainError(
            f"boundary sum needs |delta_k| >= {threshold:.3e} rad/m; "
            "use f_exact near delta_k = 0"
        )
    value = (2j / dk) * _signed_boundary_sum(stack.boundaries, dk)
    if np.ndim(mismatch.delta_k) == 0:
        v = complex(value[0])
        return PhaseMatchSample(v, abs(v) ** 2, mismatch)
    return PhaseMatchSample(value, np.abs(value) ** 2, mismatch)


def f_avg_sq(mismatch: PhaseMismatch, n_domains: int, l0: float, sigma: float):
    """Ensemble average of |F|^2 over Gaussian domain-length disorder.

    Closed form for independent declinations with density exp(-dl^2/sigma^2):

        <|F|^2> = (4/dk^2) [ (N+1) (1-|H|^2)/|1-H|^2
                             - 2 Re( H (1 - H^(N+1)) / (1-H)^2 ) ]

    with H = exp(i dk_small l0) exp(-(sigma dk)^2 / 4).  The Gaussian damping
    carries the total mismatch dk; the per-boundary phase carries the
    detuning dk_small.  Returns |F|^2 in m^2 (same shape as the mismatch).

    Requires sigma > 0: at sigma = 0 the geometric series degenerates; route
    that case through f_exact on a periodic stack.
    """
    if sigma <= 0.0:
        raise ValueError("f_avg_sq requires sigma > 0; use a periodic stack for sigma = 0")
    if n_domains < 1:
        raise ValueError("n_domains must be >= 1")
    dk = np.asarray(mismatch.delta_k, dtype=float)
    small = np.asarray(mismatch.delta_k_small, dtype=float)
    H = np.exp(1j * small * l0 - (sigma * dk) ** 2 / 4.0)
    one_minus = 1.0 - H
    habs2 = np.abs(H) ** 2
    leading = (n_domains + 1) * (1.0 - habs2) / np.abs(one_minus) ** 2
    tail = 2.0 * np.real(H * (1.0 - H ** (n_domains + 1)) / one_minus ** 2)
    result = 4.0 / dk ** 2 * (leading - tail)
    return result if result.ndim else float(result)


_SQRT_MINUS_I = np.exp(-1j * np.pi / 4.0)


def f_chirped(mismatch: PhaseMismatch, n_domains: int, l0: float, zeta_prime: float) -> PhaseMatchSample:
    """Closed-form F of a quadratically chirped stack (continuum limit).

    Completing the square in the boundary sum over z_n = n l0
    + zeta' (n - N/2)^2 l0^2 gives a Fresnel integral:

        F = (2i/dk) e^(i q l0 N/2) e^(-i q^2/(4 dk zeta'))
            * sqrt(pi) / (2 sqrt(-i) sqrt(zeta' dk) l0)
            * [ cerf(f(N)) - cerf(f(-N)) ] ,

        f(x) = (sqrt(-i)/2) (sqrt(zeta' dk) x l0 + q / sqrt(zeta' dk)) ,

    with q the detuning from the degenerate mismatch.  The phase is quoted
    for the unshifted chirp law; a rigid stack shift only rotates it.
    Agrees with f_exact on the built stack to well below 1% over the
    phase-matched band at N ~ 2000.
    """
    if zeta_prime <= 0.0:
        raise NumericalDomainError("f_chirped requires zeta_prime > 0; use the periodic path at zero chirp")
    dk = np.asarray(mismatch.delta_k, dtype=float)
    if np.any(dk <= 0.0):
        raise NumericalDomainError("f_chirped requires delta_k > 0")
    small = np.asarray(mismatch.delta_k_small, dtype=float)
    root = np.sqrt(zeta_prime * dk)
    upper = _SQRT_MINUS_I / 2.0 * (root * n_domains * l0 + small / root)
    lower = _SQRT_MINUS_I / 2.0 * (-root * n_domains * l0 + small / root)
    bracket = cerf(upper) - cerf(lower)
    amplitude = (2j / dk) * np.sqrt(np.pi) / (2.0 * _SQRT_MINUS_I * root * l0)
    phase = np.exp(1j * small * l0 * n_domains / 2.0 - 1j * small ** 2 / (4.0 * dk * zeta_prime))
    value = amplitude * phase * bracket
    if np.ndim(mismatch.delta_k) == 0:
        v = complex(value)
        return PhaseMatchSample(v, abs(v) ** 2, mismatch)
    return PhaseMatchSample(value, np.abs(value) ** 2, mismatch)


def f_chirped_envelope(mismatch: PhaseMismatch, n_domains: int, l0: float,
                       zeta_prime: float, kernel_periods: float = 8.0):
    """Fresnel-ripple-averaged |F|^2 of a chirped stack.

    The closed form carries an oscillation of quasi-period 4 pi / (N l0) in
    detuning (the Fresnel transient of the erf terms).  This helper evaluates
    |f_chirped|^2 on an internal uniform detuning grid and applies a boxcar
    of `kernel_periods` ripple periods, capped at a quarter of the swept
    band, yielding the smooth spectral envelope used for width measurements.
    Returns |F|^2 (m^2) at the requested mismatch.
    """
    dk0 = float(mismatch.delta_k0)
    small = np.atleast_1d(np.asarray(mismatch.delta_k_small, dtype=float))
    band_edge = zeta_prime * dk0 * n_domains * l0
    ripple = 4.0 * np.pi / (n_domains * l0)
    width = min(kernel_periods * ripple, 0.5 * band_edge)
    lo = min(small.min(), -1.3 * band_edge) - width
    hi = max(small.max(), 1.3 * band_edge) + width
    step = ripple / 12.0
    grid = np.arange(lo, hi + step, step)
    # keep the internal grid in the dk > 0 domain of the closed form
    grid = grid[grid > -0.9 * dk0]
    from .dispersion import mismatch_from_detuning
    raw = f_chirped(mismatch_from_detuning(dk0, grid), n_domains, l0, zeta_prime).abs_sq
    n_ker = max(3, int(round(width / step)) | 1)
    kernel = np.ones(n_ker) / n_ker
    smooth = np.convolve(raw, kernel, mode="same")
    out = np.interp(small, grid, smooth)
    return out if np.ndim(mismatch.delta_k_small) else float(out[0])


def cerf(z):
    """Error function for complex argument.

    Validated where exp(-z^2) stays representable, i.e.
    Im(z)^2 - Re(z)^2 <= CERF_REGION_BOUND; this covers the whole real axis,
    the Fresnel ray arg z = -pi/4 at any magnitude, and |Im z| <= ~25
    elsewhere.  Relative accuracy is at the 1e-13 level of the underlying
    Faddeeva evaluation.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag ** 2 - z.real ** 2 > CERF_REGION_BOUND):
        raise NumericalDomainError(
            "cerf argument outside validated region Im(z)^2 - Re(z)^2 <= "
            f"{CERF_REGION_BOUND:g}"
        )
    result = _scipy_erf(z)
    return result if result.ndim else complex(result)
