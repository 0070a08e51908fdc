import numpy as np
import pytest

import fanochain as fc
from fanochain.coupling import as_pole_terms, square_head_integral

FIG3 = fc.PoleExpansion((fc.PoleTerm(1.0, 2.0j, 2),))
J0_ROOT = 2.404825557695773


def second_order_pole_pair(t):
    """Exact real/imaginary parts of 1/(t-2i)**2 on the real axis."""
    return (t ** 2 - 4) / (t ** 2 + 4) ** 2, 4 * t / (t ** 2 + 4) ** 2


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def test_pole_eval_at_origin():
    assert fc.eval_coupling(FIG3, 0.0) == pytest.approx(-0.25)


def test_pole_eval_on_axis():
    # (2 - 2i)^2 = -8i, so f(2) = i/8
    assert fc.eval_coupling(FIG3, 2.0) == pytest.approx(0.125j)


def test_eval_array_matches_scalars():
    t = np.array([0.0, 1.0, -3.0, 2.0 - 1.0j])
    vec = fc.eval_coupling(FIG3, t)
    for i, ti in enumerate(t):
        assert vec[i] == pytest.approx(fc.eval_coupling(FIG3, ti))


def test_eval_at_pole_raises():
    with pytest.raises(fc.SingularityError):
        fc.eval_coupling(FIG3, 2.0j)


def test_real_part_only_is_exact_real_part():
    spec = fc.RealPartOnly(FIG3)
    t = np.linspace(-7.0, 7.0, 101)
    inner = fc.eval_coupling(FIG3, t)
    outer = fc.eval_coupling(spec, t)
    assert np.array_equal(outer.real, inner.real)
    assert np.all(outer.imag == 0.0)


def test_real_part_schwarz_continuation():
    # the continuation of Re f off the real axis is the average of f and its
    # reflected conjugate; check against the explicit formula at one point
    spec = fc.RealPartOnly(FIG3)
    z = 1.0 - 0.5j
    f = fc.eval_coupling(FIG3, z)
    f_refl = np.conj(fc.eval_coupling(FIG3, np.conj(z)))
    assert fc.eval_coupling(spec, z) == pytest.approx(0.5 * (f + f_refl))


def test_sampled_interpolation_and_domain():
    spec = fc.Sampled(t_start=0.0, dt=1.0, values=(0.0, 2.0 + 2.0j))
    assert fc.eval_coupling(spec, 0.5) == pytest.approx(1.0 + 1.0j)
    with pytest.raises(fc.DomainError):
        fc.eval_coupling(spec, 3.0)
    with pytest.raises(fc.DomainError):
        fc.eval_coupling(spec, 0.5 + 0.1j)


def test_zero_envelope():
    assert fc.eval_coupling(fc.Zero(), 1.3) == 0.0


def test_pole_term_validation():
    with pytest.raises(fc.DomainError):
        fc.PoleTerm(1.0, 1.0j, 0)


# ---------------------------------------------------------------------------
# effective interaction time
# ---------------------------------------------------------------------------

def test_effective_time_vanishes_for_analytic_family():
    out = fc.effective_interaction_time(FIG3, tolerance=1e-8)
    assert abs(out.value) < 1e-8
    assert out.quadrature_error_estimate <= 1e-8


def test_effective_time_real_part_matches_trapezoid_oracle():
    # oracle: high-resolution trapezoid quadrature of the exact square
    t = np.linspace(-1e4, 1e4, 4_000_001)
    f_r, _ = second_order_pole_pair(t)
    oracle = np.trapezoid(f_r ** 2, t)
    assert oracle == pytest.approx(np.pi / 32, rel=1e-7)
    # cross-check by residue algebra: integral of |f|^2 is pi/16, and the
    # vanishing full-line integral of f^2 forces the real part to carry half
    assert oracle == pytest.approx(0.5 * np.pi / 16, rel=1e-7)

    out = fc.effective_interaction_time(fc.RealPartOnly(FIG3), tolerance=1e-8)
    assert out.value.real == pytest.approx(oracle, abs=1e-7)
    assert abs(out.value.imag) < 1e-8


def test_effective_time_quadratic_scaling():
    base = fc.RealPartOnly(FIG3)
    doubled = fc.RealPartOnly(fc.PoleExpansion((fc.PoleTerm(2.0, 2.0j, 2),)))
    a1 = fc.effective_interaction_time(base).value
    a2 = fc.effective_interaction_time(doubled).value
    # both integrals carry the 1e-8 quadrature tolerance, scaled by 4 on one side
    assert a2 == pytest.approx(4.0 * a1, abs=1e-7)


def test_effective_time_window_too_small():
    with pytest.raises(fc.WindowTooSmallError):
        fc.effective_interaction_time(fc.RealPartOnly(FIG3),
                                      window=(-30.0, 30.0), tolerance=1e-8)


def test_effective_time_sampled_grid():
    # constant envelope c on [0, 4]: the integral is exactly 4 c^2
    c = 0.3 + 0.1j
    spec = fc.Sampled(t_start=0.0, dt=1.0, values=(c,) * 5)
    out = fc.effective_interaction_time(spec)
    assert out.value == pytest.approx(4.0 * c * c)


def test_effective_time_sampled_is_exact_for_the_interpolant():
    # one linear segment from 1+2i to 3-i: the square integrates to 10/3 + i
    spec = fc.Sampled(t_start=0.0, dt=1.0, values=(1.0 + 2.0j, 3.0 - 1.0j))
    out = fc.effective_interaction_time(spec)
    assert out.value == pytest.approx(10.0 / 3.0 + 1.0j, rel=1e-14)
    # the real-part restriction integrates (1 + 2t)^2 instead
    real_out = fc.effective_interaction_time(fc.RealPartOnly(spec))
    assert real_out.value == pytest.approx(13.0 / 3.0, rel=1e-14)


def test_effective_time_unsupported_nesting_is_a_domain_error():
    nested = fc.RealPartOnly(fc.BesselEnvelope(base=2.404825557695773,
                                               perturbation=fc.Zero(),
                                               frequency=8.0))
    with pytest.raises(fc.DomainError):
        fc.effective_interaction_time(nested)


def test_effective_time_rejects_real_pole():
    bad = fc.PoleExpansion((fc.PoleTerm(1.0, 3.0 + 0.0j, 2),))
    with pytest.raises(fc.DivergenceError):
        fc.effective_interaction_time(bad)


def test_effective_time_bessel_requires_decay():
    env = fc.BesselEnvelope(base=2.0, perturbation=fc.Zero(), frequency=8.0)
    with pytest.raises(fc.DivergenceError):
        fc.effective_interaction_time(env)


def test_effective_time_bessel_at_root_vanishes():
    env = fc.BesselEnvelope(base=J0_ROOT, perturbation=FIG3, frequency=8.0)
    out = fc.effective_interaction_time(env, tolerance=1e-7)
    # J0(root + dA) is analytic in the lower half-plane and decays, so its
    # squared integral vanishes just like the plain pole expansion's
    assert abs(out.value) < 1e-6


def test_effective_time_error_estimate_nonnegative():
    with pytest.raises(fc.DomainError):
        fc.EffectiveTime(value=0.0, quadrature_error_estimate=-1.0)


# ---------------------------------------------------------------------------
# Hilbert partner
# ---------------------------------------------------------------------------

def test_hilbert_partner_second_order_pole():
    # span 400 = 200x the pole height, 4096 points
    t = np.linspace(-200.0, 200.0, 4096)
    f_r, f_i = second_order_pole_pair(t)
    out = fc.hilbert_partner(f_r)
    interior = np.abs(t) <= 100.0
    err = np.max(np.abs(out - f_i)[interior]) / np.max(np.abs(f_i))
    assert err <= 1e-3


def test_hilbert_partner_first_order_pole():
    # f = 1/(t - i): f_R = t/(t^2+1), f_I = 1/(t^2+1); span 100x the height
    t = np.linspace(-50.0, 50.0, 2048)
    out = fc.hilbert_partner(t / (t ** 2 + 1))
    exact = 1.0 / (t ** 2 + 1)
    interior = np.abs(t) <= 25.0
    err = np.max(np.abs(out - exact)[interior]) / np.max(np.abs(exact))
    assert err <= 1e-3


def test_hilbert_partner_zero():
    assert np.array_equal(fc.hilbert_partner(np.zeros(256)), np.zeros(256))


@pytest.mark.parametrize("terms,span,npts", [
    ((fc.PoleTerm(1.0, 1.0j, 1),), 100.0, 2048),
    ((fc.PoleTerm(1.0j, 1.0j, 1),), 100.0, 2048),
    ((fc.PoleTerm(1.0 + 2.0j, 1.5j, 1),), 150.0, 4096),
    ((fc.PoleTerm(1.0, 2.0j, 2),), 400.0, 2048),
    ((fc.PoleTerm(0.5 - 1.0j, 2.0j, 3),), 200.0, 2048),
    ((fc.PoleTerm(1.0, 1.0j, 1), fc.PoleTerm(1.0, 3.0j, 2)), 300.0, 4096),
])
def test_hilbert_partner_pole_battery(terms, span, npts):
    spec = fc.PoleExpansion(terms)
    t = np.linspace(-span / 2, span / 2, npts)
    f = fc.eval_coupling(spec, t)
    out = fc.hilbert_partner(f.real)
    interior = np.abs(t) <= span / 4
    err = np.max(np.abs(out - f.imag)[interior]) / np.max(np.abs(f.imag))
    assert err <= 1e-3


def test_hilbert_partner_involution():
    t = np.linspace(-200.0, 200.0, 4096)
    f_r, _ = second_order_pole_pair(t)
    twice = fc.hilbert_partner(fc.hilbert_partner(f_r))
    interior = np.abs(t) <= 100.0
    err = np.max(np.abs(twice + f_r)[interior]) / np.max(np.abs(f_r))
    assert err <= 1e-3


def test_hilbert_partner_warns_on_bad_edges():
    t = np.linspace(-10.0, 10.0, 512)
    with pytest.warns(fc.EdgeTruncationWarning):
        fc.hilbert_partner(np.cos(t))


def test_hilbert_partner_needs_enough_samples():
    with pytest.raises(fc.DomainError):
        fc.hilbert_partner(np.ones(4))


# ---------------------------------------------------------------------------
# contour certificate
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("spec,delta", [
    (FIG3, 0.0),
    (FIG3, 1.0),
    (fc.PoleExpansion((fc.PoleTerm(1.0, 1.0j, 2),
                       fc.PoleTerm(1.0, 3.0j, 2))), 0.0),
])
def test_certificate_residual_below_tolerance(spec, delta):
    residual = fc.certify_zero_contour_integral(spec, delta, tolerance=1e-8)
    assert abs(residual) <= 1e-8


def test_certificate_independent_of_shift():
    r0 = fc.certify_zero_contour_integral(FIG3, 0.0, tolerance=1e-9)
    r1 = fc.certify_zero_contour_integral(FIG3, 0.7, tolerance=1e-9)
    assert abs(r1 - r0) <= 1e-8


def test_certificate_rejects_pole_below_contour():
    low = fc.PoleExpansion((fc.PoleTerm(1.0, -2.0j, 2),))
    with pytest.raises(fc.InvalidContourError):
        fc.certify_zero_contour_integral(low, 1.0)
    on_line = fc.PoleExpansion((fc.PoleTerm(1.0, -1.0j, 2),))
    with pytest.raises(fc.InvalidContourError):
        fc.certify_zero_contour_integral(on_line, 1.0)


def test_certificate_rejects_other_variants():
    with pytest.raises(fc.DomainError):
        fc.certify_zero_contour_integral(fc.RealPartOnly(FIG3), 0.0)


@pytest.mark.parametrize("order,height", [(1, 1.0), (1, 5.0), (2, 2.0),
                                          (2, 5.0), (3, 1.0), (3, 4.0)])
def test_analytic_family_effective_time_battery(order, height):
    spec = fc.PoleExpansion((fc.PoleTerm(1.0 + 0.5j, height * 1j, order),))
    out = fc.effective_interaction_time(spec, tolerance=1e-8)
    assert abs(out.value) < 1e-8


# ---------------------------------------------------------------------------
# Bessel effective coupling
# ---------------------------------------------------------------------------

def test_bessel_zero_envelope_gives_unity():
    assert fc.bessel_effective_coupling(fc.Zero(), 8.0, 0.0) == pytest.approx(1.0)


def test_bessel_at_first_root():
    env = fc.Sampled(t_start=-1.0, dt=1.0, values=(2.404826 * 8.0,) * 3)
    val = fc.bessel_effective_coupling(env, 8.0, 0.0)
    assert abs(val) < 1e-6


def test_bessel_linearization_near_root():
    env = fc.Sampled(t_start=-1.0, dt=1.0, values=((J0_ROOT + 0.01) * 8.0,) * 3)
    val = fc.bessel_effective_coupling(env, 8.0, 0.0)
    assert val.real == pytest.approx(-0.005191474972894669, rel=0.02)


def test_bessel_requires_positive_frequency():
    with pytest.raises(fc.DomainError):
        fc.bessel_effective_coupling(fc.Zero(), -1.0, 0.0)


def test_bessel_envelope_eval_consistency():
    env = fc.BesselEnvelope(base=2.33, perturbation=FIG3, frequency=8.0)
    t = 1.7
    expected = fc.bessel_j0(2.33 + fc.eval_coupling(FIG3, t))
    assert fc.eval_coupling(env, t) == pytest.approx(expected)


# ---------------------------------------------------------------------------
# exact half-line squared integrals (meromorphic machinery)
# ---------------------------------------------------------------------------

def test_square_head_integral_full_line_real_part():
    terms = as_pole_terms(fc.RealPartOnly(FIG3))
    total = square_head_integral(terms, 1e9)
    assert total == pytest.approx(np.pi / 32, abs=1e-9)


def test_square_head_integral_matches_quadrature():
    terms = as_pole_terms(fc.RealPartOnly(FIG3))
    head = square_head_integral(terms, -15.0)
    t = np.linspace(-4e4, -15.0, 2_000_001)
    f_r, _ = second_order_pole_pair(t)
    oracle = np.trapezoid(f_r ** 2, t)
    assert head == pytest.approx(oracle, abs=1e-8)


def test_square_head_integral_analytic_family_is_exact_zero_at_infinity():
    terms = as_pole_terms(FIG3)
    assert abs(square_head_integral(terms, 1e9)) < 1e-12
