"""Reservoir description and the weak-coupling (Markovian) predictor.

The reservoir is either the semi-infinite tight-binding chain, with band
omega in [-2*kappa, 2*kappa] and spectral coupling

    v(omega) = sqrt(1/(2*pi)) * (kappa1/kappa) * (4*kappa**2 - omega**2)**(1/4),

or a tabulated spectral density |g(omega)|**2 on a frequency grid.

From the spectral density follow the memory kernel Phi(tau), the decay rate
R = pi*|g(omega_a)|**2, the frequency shift Delta (a principal-value
integral), and the weak-coupling amplitude law

    c_a(t) = exp(-(R - i*Delta) * integral of f**2 up to t).
"""

import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import coupling as _cp
from .errors import AccuracyWarning, DomainError
from .quadrature import composite_simpson, gauss_legendre_nodes

__all__ = [
    "TightBindingChain",
    "Tabulated",
    "ContinuumSpec",
    "MarkovConstants",
    "spectral_coupling",
    "memory_function",
    "decay_constants",
    "markov_amplitude",
    "markov_final_population",
]

#: default panel count for the k-space memory-kernel quadrature
_K_PANELS = 4096


@dataclass(frozen=True)
class TightBindingChain:
    """Semi-infinite chain with hopping kappa and edge coupling kappa1."""

    kappa: float
    kappa1: float

    def __post_init__(self):
        if self.kappa <= 0 or self.kappa1 <= 0:
            raise DomainError("chain rates kappa, kappa1 must be positive")

    @property
    def band(self):
        return (-2.0 * self.kappa, 2.0 * self.kappa)


@dataclass(frozen=True)
class Tabulated:
    """Spectral density |g(omega)|**2 sampled on an increasing grid."""

    omega: tuple
    g_squared: tuple

    def __post_init__(self):
        om = tuple(float(x) for x in self.omega)
        gs = tuple(float(x) for x in self.g_squared)
        if len(om) != len(gs) or len(om) < 2:
            raise DomainError("omega and g_squared grids must match, length >= 2")
        if any(b <= a for a, b in zip(om[:-1], om[1:])):
            raise DomainError("omega grid must be strictly increasing")
        if any(g < 0 for g in gs):
            raise DomainError("spectral density samples must be nonnegative")
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "g_squared", gs)

    @property
    def band(self):
        return (self.omega[0], self.omega[-1])


ContinuumSpec = Union[TightBindingChain, Tabulated]


@dataclass(frozen=True)
class MarkovConstants:
    """Golden-rule decay rate R, frequency shift Delta, state frequency."""

    R: float
    Delta: float
    omega_a: float

    def __post_init__(self):
        if self.R < 0:
            raise DomainError("decay rate must be nonnegative")


def _g_squared(spec, omega):
    """|g(omega)|**2, zero outside the band support."""
    om = np.asarray(omega, dtype=float)
    if isinstance(spec, TightBindingChain):
        val = 4.0 * spec.kappa ** 2 - om ** 2
        out = np.where(val > 0.0,
                       (spec.kappa1 / spec.kappa) ** 2 / (2.0 * np.pi)
                       * np.sqrt(np.maximum(val, 0.0)),
                       0.0)
        return out
    if isinstance(spec, Tabulated):
        grid = np.asarray(spec.omega)
        gs = np.asarray(spec.g_squared)
        out = np.interp(om, grid, gs, left=0.0, right=0.0)
        return out
    raise TypeError(f"not a continuum spec: {spec!r}")


def spectral_coupling(spec, omega):
    """v(omega) = sqrt(|g(omega)|**2); zero outside the band."""
    out = np.sqrt(_g_squared(spec, omega))
    if np.ndim(omega) == 0:
        return float(out)
    return out


def memory_function(spec, omega_a, tau, panels=_K_PANELS):
    """Reservoir response kernel Phi(tau) at detuning frame omega_a.

    Phi(tau) = integral over the band of |g|**2 exp(-i (omega-omega_a) tau).
    For the chain the substitution omega = -2 kappa cos k removes the
    band-edge inverse-square-root weight; the k integral runs over uniform
    Simpson panels. Tabulated densities integrate on their own grid.
    """
    t = np.asarray(tau, dtype=float)
    if np.any(t < 0):
        raise DomainError("the memory kernel is defined for tau >= 0")
    if isinstance(spec, TightBindingChain):
        k = np.linspace(0.0, np.pi, panels + 1)
        sin2 = np.sin(k) ** 2
        pref = 2.0 * spec.kappa1 ** 2 / np.pi
        phase = np.exp(1j * np.multiply.outer(t, 2.0 * spec.kappa * np.cos(k)))
        vals = composite_simpson((pref * sin2) * phase, np.pi / panels)
        out = vals * np.exp(1j * omega_a * t)
    elif isinstance(spec, Tabulated):
        om = np.asarray(spec.omega)
        gs = np.asarray(spec.g_squared)
        phase = np.exp(-1j * np.multiply.outer(t, om - omega_a))
        out = np.trapezoid(gs * phase, om, axis=-1)
    else:
        raise TypeError(f"not a continuum spec: {spec!r}")
    if np.ndim(tau) == 0:
        return complex(out)
    return out


def memory_integral(spec, omega_a, tau_max=200.0, samples=8192):
    """Quadrature of the memory kernel over [0, tau_max].

    Converges to R - i*Delta as tau_max grows (the kernel decays like
    tau**(-3/2) for the chain); used to cross-check :func:`decay_constants`
    through an independent route.
    """
    if samples % 2 != 0:
        samples += 1
    tau = np.linspace(0.0, tau_max, samples + 1)
    vals = np.empty(samples + 1, dtype=complex)
    chunk = 512
    for i in range(0, samples + 1, chunk):
        vals[i:i + chunk] = memory_function(spec, omega_a, tau[i:i + chunk],
                                            panels=2048)
    return complex(composite_simpson(vals, tau_max / samples))


def _delta_chain(spec, omega_a, nodes=240):
    """Principal-value shift for the chain via symmetric pairing in k.

    Delta = (2 kappa1^2 / pi) PV int_0^pi sin^2 k / (-2 kappa cos k - omega_a) dk.
    Inside the band the simple zero at k_a is handled by integrating the
    paired sum I(k_a+u) + I(k_a-u), whose odd part cancels; Gauss-Legendre
    nodes never touch u = 0.
    """
    kap, kap1 = spec.kappa, spec.kappa1
    pref = 2.0 * kap1 ** 2 / np.pi

    def integrand(k):
        return pref * np.sin(k) ** 2 / (-2.0 * kap * np.cos(k) - omega_a)

    if abs(omega_a) >= 2.0 * kap:
        # no singularity inside (0, pi); the band-edge case has a removable
        # endpoint limit that Gauss-Legendre never evaluates
        x, w = gauss_legendre_nodes(4 * nodes, 0.0, np.pi)
        return float(np.dot(w, integrand(x)))

    k_a = float(np.arccos(-omega_a / (2.0 * kap)))
    a = 0.9 * min(k_a, np.pi - k_a)
    u, wu = gauss_legendre_nodes(nodes, 0.0, a)
    paired = integrand(k_a + u) + integrand(k_a - u)
    total = float(np.dot(wu, paired))
    for lo, hi in ((0.0, k_a - a), (k_a + a, np.pi)):
        if hi > lo:
            x, w = gauss_legendre_nodes(nodes, lo, hi)
            total += float(np.dot(w, integrand(x)))
    return total


def _delta_tabulated(spec, omega_a):
    """Principal-value shift on a tabulated grid by singularity subtraction."""
    om = np.asarray(spec.omega)
    gs = np.asarray(spec.g_squared)
    lo, hi = spec.band
    if omega_a <= lo or omega_a >= hi:
        if omega_a == lo or omega_a == hi:
            raise DomainError("shift at the exact grid edge is not supported "
                              "for tabulated densities")
        return float(np.trapezoid(gs / (om - omega_a), om))
    g_a = float(np.interp(omega_a, om, gs))
    spacing = float(np.max(np.diff(om)[np.searchsorted(om, omega_a) - 1:
                                       np.searchsorted(om, omega_a) + 1]))
    if spacing > 0.02 * (hi - lo):
        warnings.warn(
            f"tabulated grid spacing {spacing:.3g} near omega_a may limit the "
            f"shift accuracy to about {spacing:.2g} in relative terms",
            AccuracyWarning, stacklevel=3)
    with np.errstate(divide="ignore", invalid="ignore"):
        reg = (gs - g_a) / (om - omega_a)
    # at the node closest to omega_a use the local slope of the interpolant
    i = int(np.argmin(np.abs(om - omega_a)))
    if not np.isfinite(reg[i]) or abs(om[i] - omega_a) < 1e-12 * (hi - lo):
        j0, j1 = max(i - 1, 0), min(i + 1, len(om) - 1)
        reg[i] = (gs[j1] - gs[j0]) / (om[j1] - om[j0])
    value = float(np.trapezoid(reg, om))
    value += g_a * np.log((hi - omega_a) / (omega_a - lo))
    return value


def decay_constants(spec, omega_a):
    """Golden-rule constants of the reservoir at state frequency omega_a.

    R = pi * |g(omega_a)|**2 (zero outside the band); Delta is the
    principal-value integral of |g|**2/(omega - omega_a) over the band.
    Together they satisfy R - i*Delta = integral of Phi over tau >= 0.
    """
    R = float(np.pi * _g_squared(spec, omega_a))
    if isinstance(spec, TightBindingChain):
        Delta = _delta_chain(spec, omega_a)
    elif isinstance(spec, Tabulated):
        Delta = _delta_tabulated(spec, omega_a)
    else:
        raise TypeError(f"not a continuum spec: {spec!r}")
    return MarkovConstants(R=R, Delta=Delta, omega_a=float(omega_a))


def _squared_integral_upto(spec, window_start, t, tol=1e-10):
    """Integral of f**2 from -infinity to t, split at window_start.

    The head (-infinity, window_start] is exact for meromorphic envelopes
    via partial fractions; for other variants it is dropped with a warning.
    """
    terms = _cp.as_pole_terms(spec)
    if terms:
        if any(x.pole_location.imag == 0 for x in terms):
            raise DomainError("pole on the real axis")
        head = _cp.square_head_integral(terms, window_start)
        scale = max(abs(x.pole_location) for x in terms)
    else:
        head = 0.0 + 0.0j
        scale = 1.0
        if terms is None:
            f_ws = abs(_cp.eval_coupling(spec, window_start))
            warnings.warn(
                "dropping the coupling history before the window start "
                f"(bounded by about {f_ws ** 2 * abs(window_start):.2g})",
                AccuracyWarning, stacklevel=3)
    if t <= window_start:
        return head
    body, _ = _cp._integrate_squared(spec, window_start, t, tol, scale)
    return head + body


def markov_amplitude(constants, coupling, t, window_start):
    """Weak-coupling amplitude c_a(t) for a system prepared at t -> -infinity.

    Evaluates exp(-(R - i*Delta) * integral of f**2 up to t); the segment
    before ``window_start`` is restored analytically when the envelope is
    meromorphic.
    """
    total = _squared_integral_upto(coupling, window_start, t)
    z = -(constants.R - 1j * constants.Delta) * total
    return complex(np.exp(z))


def markov_final_population(constants, coupling, window=None, tolerance=1e-8):
    """Discrete-state population left after the interaction, P_s.

    P_s = exp(-2 Re[(R - i*Delta) * A]) with A the squared-envelope
    integral over the whole real line.
    """
    A = _cp.effective_interaction_time(coupling, window=window,
                                       tolerance=tolerance).value
    expo = -2.0 * np.real((constants.R - 1j * constants.Delta) * A)
    return float(np.exp(expo))
