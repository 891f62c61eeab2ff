import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqtoeplitz import quadrature as Q
from eqtoeplitz.symbols import Bump, Composed, Laurent, boundary_restriction
from eqtoeplitz.mobius import MobiusTransform

Z, ZB = Laurent.z(), Laurent.zbar()


def test_mu_t_mass():
    r = Q.disc_rule("mu_t", 32, 64, t=6.0)
    assert abs(Q.integrate(lambda z: np.ones_like(z), r) - 1) < 1e-14


@pytest.mark.parametrize("t", [1.5, 2.0, 6.0, 9.5])
def test_mu_t_second_moment(t):
    r = Q.disc_rule("mu_t", 32, 64, t=t)
    assert abs(Q.integrate(lambda z: np.abs(z) ** 2, r) - 1 / t) < 1e-14


def test_mu_t_monomials_exact():
    t = 4.2
    r = Q.disc_rule("mu_t", 16, 32, t=t)
    from eqtoeplitz.bergman import basis_norm_sq
    for j in range(16):
        assert Q.integrate(lambda z: np.abs(z) ** (2 * j), r) == pytest.approx(basis_norm_sq(j, t), rel=1e-12)


def test_mu_0_small_disc():
    r = Q.disc_rule("mu_0", 32, 64, rmax=0.5)
    assert Q.integrate(lambda z: np.ones_like(z), r) == pytest.approx(4 * np.pi / 3, rel=1e-13)


def test_mu_0_hyperbolic_disc_area():
    R = 1.7
    rho = np.tanh(R / 2)
    r = Q.disc_rule("mu_0", 32, 64, rmax=rho)
    assert Q.integrate(lambda z: np.ones_like(z), r) == pytest.approx(4 * np.pi * np.sinh(R / 2) ** 2, rel=1e-12)


def test_rule_validation():
    with pytest.raises(ValueError):
        Q.disc_rule("mu_t", 32, 64, t=1.0)
    with pytest.raises(ValueError):
        Q.disc_rule("mu_t", 3, 64, t=3.0)
    with pytest.raises(ValueError):
        Q.disc_rule("nonsense", 8, 8)


def test_angular_symmetry():
    r = Q.disc_rule("mu_t", 16, 32, t=3.0)
    assert abs(Q.integrate(Z, r)) < 1e-15


def test_integrate_linear(rng):
    r = Q.disc_rule("lebesgue", 16, 32)
    f = lambda z: np.exp(z)  # noqa: E731
    g = lambda z: z ** 2 * np.conj(z)  # noqa: E731
    a, b = 0.3 - 1j, 2.0
    lhs = Q.integrate(lambda z: a * f(z) + b * g(z), r)
    assert abs(lhs - a * Q.integrate(f, r) - b * Q.integrate(g, r)) < 1e-13


@pytest.mark.parametrize("t", [3.0, 5.0, 8.0])
@pytest.mark.parametrize("b0", [0, 0.5, 0.3 + 0.6j])
def test_delta_integral(t, b0):
    r = Q.disc_rule("mu_0", 64, 128, decay=t)
    assert abs(Q.delta_integral(t, b0, r) / (4 * np.pi / (t - 1)) - 1) < 1e-6


def test_delta_integral_t5_is_pi():
    r = Q.disc_rule("mu_0", 64, 128, decay=5.0)
    assert abs(Q.delta_integral(5.0, 0.2 - 0.1j, r) - np.pi) < 1e-6


def test_delta_pair_s2_of_z():
    t, n = 6.0, 48
    ra = Q.disc_rule("mu_t", n, 2 * n, t=t)
    rb = Q.disc_rule("mu_0", n, 2 * n, decay=t)
    v = Q.delta_pair_integral(lambda a, b: np.abs(a - b) ** 2, t, ra, rb)
    # ||H_z||^2 + ||H_zbar||^2 = 1 + 0, and |a-b|^2 = |z(a)-z(b)|^2 counts both Hankels
    assert abs(v.real - 1) < 1e-2


def test_delta_pair_antisymmetric_tensor():
    t = 4.0
    r = Q.disc_rule("mu_0", 12, 24, decay=t)
    v = Q.delta_pair_integral(lambda a, b: a * np.conj(b) - b * np.conj(a) + (a - b) ** 3, t, r, r,
                              scheme="tensor")
    assert abs(v) < 1e-12


def test_delta_pair_tail_warning():
    t = 6.0
    ra = Q.disc_rule("mu_t", 8, 16, t=t)
    rb = Q.disc_rule("mu_0", 8, 16, decay=t)
    with pytest.warns(RuntimeWarning, match="outer-ring share"):
        Q.delta_pair_integral(lambda a, b: np.abs(a - b) ** 2, t, ra, rb)


def test_delta_pair_separable_matches_tensor(accel_path):
    t = 5.0
    r = Q.disc_rule("mu_0", 10, 20, decay=t)
    terms = [(lambda a: a, lambda b: np.conj(b)), (lambda a: np.ones_like(a), lambda b: np.abs(b) ** 2)]
    ref = Q.delta_pair_integral(lambda a, b: a * np.conj(b) + np.abs(b) ** 2, t, r, r, scheme="tensor")
    assert abs(Q.delta_pair_separable(terms, t, r, r) - ref) < 1e-12 * max(1, abs(ref))


def test_two_form_examples():
    assert abs(Q.two_form_integral(ZB, Z) - 1) < 1e-12
    assert abs(Q.two_form_integral(Z, Z)) == 0
    # zbar^2 d(z^2) = 2 z^-1 dz on the circle, so the residue gives 2
    assert abs(Q.two_form_integral(Laurent.zbar(2), Laurent.z(2)) - 2) < 1e-12
    assert abs(Q.two_form_integral(Laurent.zbar(2), Z)) < 1e-12


def test_two_form_holomorphic_vanishes():
    assert abs(Q.two_form_integral(Laurent.z(3), Z + Laurent.z(2))) < 1e-14


polys = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.floats(-2, 2), st.floats(-2, 2)),
                 min_size=1, max_size=4)


def _laurent(terms):
    c = {}
    for j, k, re, im in terms:
        c[(j, k)] = c.get((j, k), 0) + complex(re, im)
    return Laurent(c)


@settings(max_examples=30, deadline=None)
@given(polys, polys, polys, st.floats(-2, 2), st.floats(-3, 3))
def test_two_form_bilinear_antisymmetric(pf, pg, ph, alpha, const):
    f, g, h = _laurent(pf), _laurent(pg), _laurent(ph)
    rule = Q.disc_area_rule(24, 48)
    I = lambda a, b: Q.two_form_integral(a, b, rule=rule)  # noqa: E731
    scale = 1 + abs(I(f, g)) + abs(I(h, g))
    assert abs(I(f, g) + I(g, f)) < 1e-12 * scale
    assert abs(I(f + h * alpha, g) - I(f, g) - alpha * I(h, g)) < 1e-10 * scale
    assert abs(I(f + const, g) - I(f, g)) < 1e-12 * scale


@pytest.mark.parametrize("f,g", [(ZB, Z), (Laurent.zbar(2), Z), (ZB + Laurent.z(2), Z + Laurent.zbar(3)),
                                 (Laurent.zbar(2) * Z, Laurent.z(3))])
def test_stokes_cross_check(f, g):
    inner = Q.two_form_integral(f, g)
    bnd = Q.boundary_form_integral(boundary_restriction(f, samples=128), boundary_restriction(g, samples=128))
    assert abs(inner - bnd) < 1e-8


def test_boundary_form_examples():
    bf = boundary_restriction(ZB, samples=128)
    bg = boundary_restriction(Z, samples=128)
    assert abs(Q.boundary_form_integral(bf, bg) - 1) < 1e-14
    from eqtoeplitz.symbols import Constant
    bc = boundary_restriction(Constant(2.5), samples=128)
    assert abs(Q.boundary_form_integral(bc, bg)) < 1e-15


def test_boundary_form_rejects_mismatched_grids():
    with pytest.raises(ValueError):
        Q.boundary_form_integral(boundary_restriction(Z, samples=128), boundary_restriction(Z, samples=96))


def test_hyperbolic_measure_invariance():
    # int f dmu_0 = int f o g^-1 dmu_0 for a bump deep inside the disc
    f = Bump(0.1 + 0.2j, 0.3)
    g = MobiusTransform.boost(0.5, 1.0)
    fg = Composed(f, g.inverse())
    r = Q.disc_rule("mu_0", 96, 192, rmax=0.95)
    assert abs(Q.integrate(f, r) - Q.integrate(fg, r)) < 1e-6


def test_region_rule_fundamental_domain_area(pants):
    # area of F below |z| < 0.5 is the full small disc (circles sit at |z| > 0.6)
    rule = pants.area_rule(32, 32, rmax=0.5)
    assert np.sum(rule.to_mu0()) == pytest.approx(4 * np.pi / 3, rel=1e-10)
