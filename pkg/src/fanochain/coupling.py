"""Time-dependent complex coupling envelopes.

An envelope is one of five immutable spec types:

* :class:`PoleExpansion` -- finite sum of complex poles, the family that is
  analytic in the lower half of the complex time plane when every pole sits
  strictly above the real axis.
* :class:`RealPartOnly` -- the real part of another envelope (the Hermitian
  restriction of a complex coupling).
* :class:`BesselEnvelope` -- the cycle-averaged coupling J0(A0 + dA(t)) left
  behind by a fast on-site modulation of amplitude Omega*(A0 + dA(t)).
* :class:`Sampled` -- complex values on a uniform real-time grid, linearly
  interpolated.
* :class:`Zero` -- no interaction.

Operations on envelopes: pointwise evaluation (anywhere in the complex plane
for the meromorphic variants), the squared-envelope integral that controls
the weak-coupling decay exponent, the discrete Hilbert partner that completes
a real envelope into a lower-half-plane analytic one, and a residue-theorem
certificate that the squared integral vanishes on any horizontal contour
below all poles.
"""

import warnings
from dataclasses import dataclass
from math import comb
from typing import Union

import numpy as np
from scipy.special import jv

from .errors import (
    AccuracyWarning,
    DivergenceError,
    DomainError,
    EdgeTruncationWarning,
    InvalidContourError,
    SingularityError,
    WindowTooSmallError,
)
from .quadrature import adaptive_simpson

__all__ = [
    "PoleTerm",
    "PoleExpansion",
    "RealPartOnly",
    "BesselEnvelope",
    "Sampled",
    "Zero",
    "CouplingSpec",
    "EffectiveTime",
    "eval_coupling",
    "effective_interaction_time",
    "hilbert_partner",
    "certify_zero_contour_integral",
    "bessel_effective_coupling",
    "bessel_j0",
]

#: relative closeness to a pole that counts as "evaluation at the pole"
_POLE_EPS = 1e-12


@dataclass(frozen=True)
class PoleTerm:
    """One term A/(t - p)**k of a pole expansion."""

    amplitude: complex
    pole_location: complex
    order: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise DomainError(f"pole order must be >= 1, got {self.order}")
        object.__setattr__(self, "amplitude", complex(self.amplitude))
        object.__setattr__(self, "pole_location", complex(self.pole_location))


@dataclass(frozen=True)
class PoleExpansion:
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def analytic_in_lower_half_plane(self):
        """True when every pole lies strictly above the real axis."""
        return all(t.pole_location.imag > 0 for t in self.terms)


@dataclass(frozen=True)
class RealPartOnly:
    inner: "CouplingSpec"


@dataclass(frozen=True)
class BesselEnvelope:
    """f(t) = J0(base + dA(t)); the drive amplitude is Omega*(base + dA)."""

    base: float
    perturbation: "CouplingSpec"
    frequency: float

    def __post_init__(self):
        if self.frequency <= 0:
            raise DomainError("modulation frequency must be positive")


@dataclass(frozen=True)
class Sampled:
    """Complex samples on the uniform grid t_start + j*dt, j = 0..n-1."""

    t_start: float
    dt: float
    values: tuple

    def __post_init__(self):
        if self.dt <= 0:
            raise DomainError("sample spacing must be positive")
        vals = tuple(complex(v) for v in self.values)
        if len(vals) < 2:
            raise DomainError("a sampled envelope needs at least two samples")
        object.__setattr__(self, "values", vals)

    @property
    def t_end(self):
        return self.t_start + (len(self.values) - 1) * self.dt


@dataclass(frozen=True)
class Zero:
    pass


CouplingSpec = Union[PoleExpansion, RealPartOnly, BesselEnvelope, Sampled, Zero]


@dataclass(frozen=True)
class EffectiveTime:
    """Integral of f**2 over the real line with a quadrature error bound."""

    value: complex
    quadrature_error_estimate: float

    def __post_init__(self):
        if self.quadrature_error_estimate < 0:
            raise DomainError("error estimate must be nonnegative")


def bessel_j0(z):
    """Bessel J0 for real or complex argument (scalar or array)."""
    return jv(0, z)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def eval_coupling(spec, t):
    """Evaluate an envelope at time ``t`` (scalar or array, real or complex).

    Meromorphic variants accept any complex ``t`` away from their poles; the
    real-part variant is continued off the real axis by Schwarz reflection so
    that it agrees exactly with ``Re f`` at real times; sampled envelopes are
    defined on their real grid only.
    """
    tarr = np.asarray(t, dtype=complex)
    out = _eval(spec, tarr)
    if np.isscalar(t) or np.ndim(t) == 0:
        return complex(out)
    return out


def _eval(spec, tarr):
    if isinstance(spec, Zero):
        return np.zeros_like(tarr)
    if isinstance(spec, PoleExpansion):
        out = np.zeros_like(tarr)
        for term in spec.terms:
            d = tarr - term.pole_location
            if np.min(np.abs(d)) < _POLE_EPS * (1.0 + abs(term.pole_location)):
                raise SingularityError(
                    f"evaluation at pole {term.pole_location}")
            out = out + term.amplitude / d ** term.order
        return out
    if isinstance(spec, RealPartOnly):
        inner = spec.inner
        return 0.5 * (_eval(inner, tarr) + np.conj(_eval(inner, np.conj(tarr))))
    if isinstance(spec, BesselEnvelope):
        return jv(0, spec.base + _eval(spec.perturbation, tarr))
    if isinstance(spec, Sampled):
        if np.any(np.abs(tarr.imag) > 0):
            raise DomainError("sampled envelopes are defined at real times only")
        tr = tarr.real
        if np.any(tr < spec.t_start - 1e-12) or np.any(tr > spec.t_end + 1e-12):
            raise DomainError(
                f"time outside sampled range [{spec.t_start}, {spec.t_end}]")
        grid = spec.t_start + spec.dt * np.arange(len(spec.values))
        vals = np.asarray(spec.values)
        return np.interp(tr, grid, vals.real) + 1j * np.interp(tr, grid, vals.imag)
    raise TypeError(f"not a coupling spec: {spec!r}")


# ---------------------------------------------------------------------------
# pole-expansion internals: reflection, tail bounds, exact pieces
# ---------------------------------------------------------------------------

def as_pole_terms(spec):
    """Flatten ``spec`` into pole terms when it is meromorphic, else None.

    The real-part variant of a pole expansion is itself a pole expansion
    (half the original terms plus their Schwarz reflections into the
    opposite half-plane).
    """
    if isinstance(spec, Zero):
        return []
    if isinstance(spec, PoleExpansion):
        return list(spec.terms)
    if isinstance(spec, RealPartOnly):
        inner = as_pole_terms(spec.inner)
        if inner is None:
            return None
        out = []
        for term in inner:
            out.append(PoleTerm(0.5 * term.amplitude, term.pole_location, term.order))
            out.append(PoleTerm(0.5 * np.conj(term.amplitude),
                                np.conj(term.pole_location), term.order))
        return out
    return None


def _tail_bound(terms, T):
    """Bound on |integral of f**2 over |t| > T| for a pole expansion.

    Uses |f(t)| <= M / |t|**m for |t| >= T >= 2*max|p|, with
    M = sum_n 2**k_n |A_n| T**(m - k_n) and m the least pole order.
    """
    if not terms:
        return 0.0, 1.0
    m = min(t.order for t in terms)
    pmax = max(abs(t.pole_location) for t in terms)
    T = max(T, 2.0 * pmax)
    M = sum((2.0 ** t.order) * abs(t.amplitude) * T ** (m - t.order) for t in terms)
    return 2.0 * M * M * T ** (1 - 2 * m) / (2 * m - 1), T


def _window_for_tolerance(terms, tol):
    """Smallest symmetric window half-width whose tail bound is below tol."""
    pmax = max((abs(t.pole_location) for t in terms), default=1.0)
    T = max(4.0 * pmax, 4.0)
    for _ in range(200):
        bound, T_eff = _tail_bound(terms, T)
        if bound <= tol:
            return T_eff
        T *= 1.5
    raise WindowTooSmallError("tail bound does not reach the tolerance")


def _dyadic_breakpoints(t_min, t_max, scale):
    """Panel edges clustering around t = 0 at the feature scale.

    A single adaptive pass over a very wide window can terminate before ever
    sampling the central bump; pre-splitting into dyadic bands prevents that.
    """
    pts = [t_min, t_max]
    s = max(scale, 1e-6)
    while s < max(abs(t_min), abs(t_max)):
        for x in (-s, s):
            if t_min < x < t_max:
                pts.append(x)
        s *= 2.0
    if t_min < 0.0 < t_max:
        pts.append(0.0)
    return np.array(sorted(set(pts)))


def _integrate_squared(spec, t_min, t_max, tol, scale, shift=0.0):
    """Quadrature of f(t - i*shift)**2 over [t_min, t_max] on the real axis."""

    def f2(x):
        v = _eval(spec, np.asarray(x - 1j * shift, dtype=complex))
        return complex(v * v)

    edges = _dyadic_breakpoints(t_min, t_max, scale)
    per_panel = tol / len(edges)
    total = 0.0 + 0.0j
    err = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        v, e = adaptive_simpson(f2, a, b, per_panel)
        total += v
        err += e
    return total, err


def _feature_scale(terms):
    return max((abs(t.pole_location) for t in terms), default=1.0)


def effective_interaction_time(spec, window=None, tolerance=1e-8):
    """Integral of f**2 over the whole real line.

    For meromorphic envelopes the window may be omitted: it is then grown
    until the analytic tail bound drops below ``tolerance``. With an explicit
    window the tail bound must already be below ``tolerance`` or a
    :class:`WindowTooSmallError` is raised. Sampled envelopes are integrated
    over their own grid (they are zero outside it by construction).
    """
    if isinstance(spec, Zero):
        return EffectiveTime(0.0 + 0.0j, 0.0)

    if isinstance(spec, RealPartOnly) and isinstance(spec.inner, Sampled):
        inner = spec.inner
        spec = Sampled(inner.t_start, inner.dt,
                       tuple(v.real for v in inner.values))

    if isinstance(spec, Sampled):
        # exact integral of the square of the piecewise-linear interpolant:
        # each segment contributes dt*(a^2 + a*b + b^2)/3
        vals = np.asarray(spec.values)
        a, b = vals[:-1], vals[1:]
        value = spec.dt * np.sum(a * a + a * b + b * b) / 3.0
        return EffectiveTime(complex(value), 0.0)

    if isinstance(spec, BesselEnvelope):
        return _bessel_effective_time(spec, window, tolerance)

    terms = as_pole_terms(spec)
    if terms is None:
        raise DomainError(
            f"no integration rule for {type(spec).__name__} over this inner "
            "variant; use a meromorphic, sampled, or Bessel envelope")
    if not terms:
        return EffectiveTime(0.0 + 0.0j, 0.0)
    if any(t.pole_location.imag == 0 for t in terms):
        raise DivergenceError("pole on the real axis: integral of f**2 diverges")

    if window is None:
        T = _window_for_tolerance(terms, 0.5 * tolerance)
        t_min, t_max = -T, T
        tail = 0.5 * tolerance
    else:
        t_min, t_max = window
        tail, _ = _tail_bound(terms, min(abs(t_min), abs(t_max)))
        if tail > tolerance:
            raise WindowTooSmallError(
                f"tail bound {tail:.3g} exceeds tolerance {tolerance:.3g}")
    value, err = _integrate_squared(spec, t_min, t_max, 0.5 * tolerance,
                                    _feature_scale(terms))
    return EffectiveTime(value, float(err + tail))


def _bessel_effective_time(spec, window, tolerance):
    resid = abs(complex(jv(0, spec.base)))
    if resid > 1e-8:
        raise DivergenceError(
            "J0(base) = %.3g: the effective envelope does not decay" % resid)
    terms = as_pole_terms(spec.perturbation)
    if terms is None:
        if window is None:
            raise WindowTooSmallError(
                "cannot bound the tail of a non-meromorphic perturbation; "
                "pass an explicit window")
        value, err = _integrate_squared(spec, window[0], window[1],
                                        0.5 * tolerance, 1.0)
        warnings.warn("tail beyond the window dropped (no analytic bound)",
                      AccuracyWarning, stacklevel=3)
        return EffectiveTime(value, float(err))
    # near its root J0 is Lipschitz with |J0'| <= max|J1| < 0.582, so
    # |f| <= 0.6|dA| wherever |dA| <= 1 and the pole tail bound transfers
    scaled = [PoleTerm(0.6 * t.amplitude, t.pole_location, t.order) for t in terms]
    if window is None:
        T = _window_for_tolerance(scaled, 0.5 * tolerance)
        t_min, t_max = -T, T
        tail = 0.5 * tolerance
    else:
        t_min, t_max = window
        tail, _ = _tail_bound(scaled, min(abs(t_min), abs(t_max)))
        if tail > tolerance:
            raise WindowTooSmallError(
                f"tail bound {tail:.3g} exceeds tolerance {tolerance:.3g}")
    value, err = _integrate_squared(spec, t_min, t_max, 0.5 * tolerance,
                                    _feature_scale(terms))
    return EffectiveTime(value, float(err + tail))


# ---------------------------------------------------------------------------
# Hilbert partner
# ---------------------------------------------------------------------------

def hilbert_partner(real_samples, edge_threshold=0.1):
    """Imaginary partner of a real envelope sampled on a uniform grid.

    Returns the grid of values f_I such that f_R + i*f_I is the boundary
    value of a function analytic and decaying in the lower half time plane.
    The convention is fixed by the requirement that the real part of a
    single upper-half-plane pole maps back to that pole's imaginary part.

    The transform runs over the DFT with the negative-frequency half of the
    spectrum doubled and the positive half removed. Slow 1/t tails, which
    the periodic DFT mishandles, are first peeled off onto a synthetic
    single-pole model with a known partner: the model's 1/t coefficients are
    estimated from the edge moments and the (tail-corrected) window mass of
    the input.
    """
    r = np.asarray(real_samples, dtype=float)
    n = r.size
    if n < 16:
        raise DomainError("need at least 16 samples")
    peak = np.max(np.abs(r))
    if peak == 0.0:
        return np.zeros(n)
    if max(abs(r[0]), abs(r[-1])) > edge_threshold * peak:
        warnings.warn(
            "envelope does not decay at the grid edges; the partner will be "
            "inaccurate", EdgeTruncationWarning, stacklevel=2)

    # index coordinates: the Hilbert pair is invariant under affine rescaling
    t = np.arange(n, dtype=float) - 0.5 * (n - 1)
    span = float(n)
    T = 0.5 * span
    m = max(8, n // 50)
    tl, tr = t[:m], t[-m:]
    a = 0.5 * (np.mean(tl * r[:m]) + np.mean(tr * r[-m:]))
    a2 = 0.5 * (np.mean(tl * tl * r[:m] - a * tl) + np.mean(tr * tr * r[-m:] - a * tr))
    mass = np.trapezoid(r) + 2.0 * a2 / T
    b = -mass / np.pi

    h = 0.01 * span
    den = t * t + h * h
    model_r = (a * t - b * h) / den
    model_i = (a * h + b * t) / den

    spec = np.fft.fft(r - model_r)
    mask = np.zeros(n)
    mask[0] = 1.0
    if n % 2 == 0:
        mask[n // 2] = 1.0
        mask[n // 2 + 1:] = 2.0
    else:
        mask[(n + 1) // 2:] = 2.0
    return np.fft.ifft(spec * mask).imag + model_i


# ---------------------------------------------------------------------------
# contour certificate
# ---------------------------------------------------------------------------

def certify_zero_contour_integral(spec, delta, tolerance=1e-8):
    """Numerical residual of the squared-envelope integral on a shifted line.

    Integrates f(x - i*delta)**2 over real x. For a pole expansion with all
    poles strictly above the line Im t = -delta the residue theorem makes
    the exact value zero; the returned complex residual measures how well
    the quadrature reproduces that.
    """
    if delta < 0:
        raise DomainError("contour shift must be nonnegative")
    if not isinstance(spec, PoleExpansion):
        raise DomainError("the contour certificate applies to pole expansions")
    for term in spec.terms:
        if term.pole_location.imag <= -delta + _POLE_EPS:
            raise InvalidContourError(
                f"pole {term.pole_location} lies on or below Im t = {-delta}")
    if not spec.terms:
        return 0.0 + 0.0j
    # on the shifted line the poles sit at p + i*delta relative to the
    # integration variable, so the tail machinery sees shifted locations
    shifted = [PoleTerm(t.amplitude, t.pole_location + 1j * delta, t.order)
               for t in spec.terms]
    T = _window_for_tolerance(shifted, 0.25 * tolerance)
    value, _ = _integrate_squared(spec, -T, T, 0.25 * tolerance,
                                  _feature_scale(shifted), shift=delta)
    return value


# ---------------------------------------------------------------------------
# driven-model effective coupling
# ---------------------------------------------------------------------------

def bessel_effective_coupling(A_envelope, Omega, t):
    """Cycle-averaged coupling J0(A(t)/Omega) for a drive envelope A(t)."""
    if Omega <= 0:
        raise DomainError("drive frequency must be positive")
    val = jv(0, eval_coupling(A_envelope, t) / Omega)
    if np.ndim(t) == 0:
        return complex(val)
    return val


# ---------------------------------------------------------------------------
# exact half-line integrals of f**2 for meromorphic envelopes
# ---------------------------------------------------------------------------

def square_partial_fractions(terms):
    """Partial-fraction coefficients of f**2 for a pole expansion f.

    Returns ``{(pole, order): coefficient}`` with f**2 equal to the sum of
    coefficient/(t - pole)**order. Pairs sharing a pole multiply directly;
    distinct poles expand through the two-pole partial-fraction identity.
    """
    # group same-pole terms first
    coeffs = {}

    def add(p, k, c):
        if c != 0:
            key = (p, k)
            coeffs[key] = coeffs.get(key, 0.0 + 0.0j) + c

    for i, u in enumerate(terms):
        for v in terms[i:]:
            factor = 1.0 if v is u else 2.0
            c = factor * u.amplitude * v.amplitude
            p, a = u.pole_location, u.order
            q, b = v.pole_location, v.order
            if p == q:
                add(p, a + b, c)
                continue
            # 1/((t-p)^a (t-q)^b) = sum_i c_i/(t-p)^(a-i) + sym.
            for m in range(a):
                h = ((-1.0) ** m) * comb(b - 1 + m, m) * (p - q) ** (-(b + m))
                add(p, a - m, c * h)
            for m in range(b):
                h = ((-1.0) ** m) * comb(a - 1 + m, m) * (q - p) ** (-(a + m))
                add(q, b - m, c * h)
    return coeffs


def square_head_integral(terms, upto):
    """Exact integral of f**2 from -infinity to ``upto`` for a pole expansion.

    The antiderivative of each partial-fraction piece is elementary; the
    residue coefficients sum to zero (f**2 falls off at least as 1/t**2), so
    the logarithms combine into a finite limit at -infinity. Poles on the
    real axis are rejected upstream.
    """
    coeffs = square_partial_fractions(terms)
    total = 0.0 + 0.0j
    for (p, k), c in coeffs.items():
        if k >= 2:
            total += c * (upto - p) ** (1 - k) / (1 - k)
        else:
            # log branch: principal log is continuous along any horizontal
            # line avoiding the poles; the -infinity limit contributes
            # -i*pi*sign(Im p) per unit residue
            total += c * (np.log(upto - p) + 1j * np.pi * np.sign(p.imag))
    return total
