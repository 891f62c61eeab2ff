import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqtoeplitz.mobius import (DiscDomainError, GeodesicCircle, GroupWord, MobiusTransform, Pairing,
                               apply, classical_pairings, count_reduced_words, delta, derivative,
                               enumerate_group, hyperbolic_distance, verify_schottky)

from conftest import random_disc

angles = st.floats(0, 2 * np.pi)
lengths = st.floats(0, 4)
radii = st.floats(0, 0.95)


def _g(length, direction, rot):
    return MobiusTransform.boost(length, direction) @ MobiusTransform.rotation(rot)


def test_apply_identity():
    assert apply(MobiusTransform.identity(), 0.3 + 0.1j) == pytest.approx(0.3 + 0.1j, abs=1e-15)


def test_apply_boost_at_zero():
    g = MobiusTransform(np.cosh(1), np.sinh(1))
    assert apply(g, 0.0) == pytest.approx(np.tanh(1), abs=1e-15)
    assert abs(np.tanh(1) - 0.761594) < 1e-6


def test_apply_rotation():
    th, r = 0.7, 0.4
    g = MobiusTransform(np.exp(0.5j * th), 0)
    assert apply(g, r) == pytest.approx(r * np.exp(1j * th), abs=1e-15)


def test_apply_rejects_boundary():
    with pytest.raises(DiscDomainError):
        apply(MobiusTransform.identity(), 1.0)


def test_derivative_examples():
    assert derivative(MobiusTransform.identity(), 0.2j) == pytest.approx(1)
    g = MobiusTransform(np.cosh(1), np.sinh(1))
    assert derivative(g, 0.0) == pytest.approx(1 / np.cosh(1) ** 2, abs=1e-15)
    assert abs(1 / np.cosh(1) ** 2 - 0.419974) < 1e-6
    th = 1.1
    z = np.array([0.1, 0.5j, -0.3 + 0.2j])
    np.testing.assert_allclose(derivative(MobiusTransform.rotation(th), z), np.exp(1j * th), atol=1e-15)


def test_derivative_chain_rule(rng):
    g, h = _g(1.2, 0.3, 0.5), _g(0.7, 2.0, -1.0)
    z = random_disc(rng, 50)
    np.testing.assert_allclose((g @ h).derivative(z), g.derivative(h(z)) * h.derivative(z), rtol=1e-12)


def test_delta_examples():
    assert delta(0.5, 0.5) == pytest.approx(1.0, abs=1e-15)
    b = 0.3 - 0.6j
    assert delta(0.0, b) == pytest.approx(1 - abs(b) ** 2, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(lengths, angles, angles, radii, angles, radii, angles)
def test_delta_invariance(length, direction, rot, r1, a1, r2, a2):
    g = _g(length, direction, rot)
    p, q = r1 * np.exp(1j * a1), r2 * np.exp(1j * a2)
    assert abs(delta(g(p), g(q)) - delta(p, q)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(lengths, angles, lengths, angles, radii, angles)
def test_group_law(l1, d1, l2, d2, r, a):
    g, h = MobiusTransform.boost(l1, d1), MobiusTransform.boost(l2, d2)
    z = r * np.exp(1j * a)
    assert abs((g @ h)(z) - g(h(z))) < 1e-12
    gh = g @ h
    assert abs(abs(gh.a) ** 2 - abs(gh.b) ** 2 - 1) < 1e-12


def test_hyperbolic_distance_matches_boost():
    g = MobiusTransform.boost(1.3)
    assert hyperbolic_distance(0.0, g(0.0)) == pytest.approx(1.3, rel=1e-12)


@pytest.mark.parametrize("L,count", [(0, 1), (1, 5), (3, 53)])
def test_enumerate_counts(L, count):
    gens = [p.generator for p in classical_pairings(2, 0.3)]
    words = enumerate_group(gens, L)
    assert len(words) == count == count_reduced_words(2, L)


def test_enumerate_rejects_negative():
    with pytest.raises(ValueError):
        enumerate_group([MobiusTransform.boost(1)], -1)


def test_enumerate_no_duplicates():
    gens = [p.generator for p in classical_pairings(2, 0.3)]
    words = enumerate_group(gens, 3)
    for i in range(len(words)):
        for j in range(i):
            assert words[i][1].distance(words[j][1]) > 1e-9


def test_words_reduced_and_consistent():
    gens = [p.generator for p in classical_pairings(2, 0.3)]
    for w, g in enumerate_group(gens, 2):
        assert w.transform(gens).distance(g) < 1e-12
    with pytest.raises(ValueError):
        GroupWord(((0, 1), (0, -1)))
    w = GroupWord(((0, 1), (1, -1)))
    assert len(w * w.inverse()) == 0


def test_geodesic_circle_orthogonal():
    c = GeodesicCircle.from_angles(0.4, 0.3)
    assert abs(c.center) ** 2 == pytest.approx(1 + c.radius ** 2)
    for e in c.endpoints():
        assert abs(e) == pytest.approx(1.0)


def test_schottky_well_separated():
    rep = verify_schottky(classical_pairings(2, 0.3))
    assert rep.ok and not rep.non_icc


def test_schottky_overlap_reports_pair():
    c = [GeodesicCircle.from_angles(a, 0.5) for a in (0.0, 0.6, np.pi, 3.0)]
    rep = verify_schottky([Pairing(c[0], c[2]), Pairing(c[1], c[3])])
    assert not rep.ok
    assert rep.overlaps and rep.messages


def test_schottky_single_pairing_flags_non_icc():
    rep = verify_schottky(classical_pairings(1, 0.3))
    assert rep.ok and rep.non_icc


def test_pairing_generator_maps_circles():
    for p in classical_pairings(2, 0.3) + classical_pairings(2, 0.3, interlaced=True):
        img = p.generator(np.array(p.circle1.endpoints()))
        np.testing.assert_allclose(np.abs(img - p.circle2.center), p.circle2.radius, atol=1e-10)
