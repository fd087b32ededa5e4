import cmath
import math

import numpy as np
import pytest

from conftest import random_isometry, random_point
from repvol.hyperbolic import (
    AmbientChoiceRequired,
    ExtendedPoint,
    Isometry,
    IsometryClass,
    NoCommonFixedPoint,
    act,
    chordal_distance,
    classify,
    common_fixed_point,
    distance,
    fixed_points,
    from_klein,
    mobius_from_points,
    to_klein,
)

T = Isometry(((1, 1), (0, 1)))
D2 = Isometry(((2, 0), (0, 0.5)))


def hs_oracle(m, x, y, h):
    """Quaternion form of the half-space action: (aq + b)(cq + d)^-1."""
    a, b, c, d = (np.array([[z, -w.conjugate()], [w, z.conjugate()]]) for z, w in
                  ((m[0][0], 0), (m[0][1], 0), (m[1][0], 0), (m[1][1], 0)))
    q = np.array([[complex(x, y), -h], [h, complex(x, -y)]])
    out = (a @ q + b) @ np.linalg.inv(c @ q + d)
    return out[0, 0].real, out[0, 0].imag, out[1, 0].real


def test_act_examples():
    p = ExtendedPoint.interior(0.3, -0.2, 1.7)
    assert act(Isometry.identity(), p) == p
    assert act(T, ExtendedPoint.ideal(3, 0)) == ExtendedPoint.ideal(3, 1)
    q = act(D2, ExtendedPoint.interior(0, 0, 1))
    assert q.coords == pytest.approx((0, 0, 4))
    assert act(D2, ExtendedPoint.infinity(3)).is_infinity


def test_act_against_quaternion_oracle(rng):
    for _ in range(50):
        g = random_isometry(rng)
        p = random_point(rng, 3, ideal_prob=0.0)
        q = act(g, p)
        assert q.coords == pytest.approx(hs_oracle(g.matrix, *p.coords), abs=1e-9)


def test_act_is_a_group_action(rng):
    for dim in (2, 3):
        for _ in range(30):
            g, h = random_isometry(rng, dim), random_isometry(rng, dim)
            p = random_point(rng, dim, inf_prob=0.1)
            assert chordal_distance(act(g @ h, p), act(g, act(h, p))) < 1e-10


def test_act_preserves_distance(rng):
    for dim in (2, 3):
        for _ in range(100):
            g = random_isometry(rng, dim)
            p, q = random_point(rng, dim, 0.0), random_point(rng, dim, 0.0)
            assert abs(distance(act(g, p), act(g, q)) - distance(p, q)) <= 1e-9


def test_distance_basepoint():
    assert distance(ExtendedPoint.interior(0, 0, 1), ExtendedPoint.interior(0, 0, math.e)) == pytest.approx(1.0)


@pytest.mark.parametrize("m, kind", [
    (((1, 1), (0, 1)), IsometryClass.PARABOLIC),
    (((2, 0), (0, 0.5)), IsometryClass.LOXODROMIC),
    (((-1, 0), (0, -1)), IsometryClass.IDENTITY),
    (((0, -1), (1, 0)), IsometryClass.ELLIPTIC),
])
def test_classify_examples(m, kind):
    assert classify(Isometry(m)).kind is kind


def test_classify_conjugation_invariant(rng):
    for m in (((1, 1), (0, 1)), ((2, 0), (0, 0.5)), ((0, -1), (1, 0)), ((1, 0), (0, 1))):
        g = Isometry(m)
        for _ in range(10):
            h = random_isometry(rng, scale=0.7)
            assert classify(g.conjugate_by(h)).kind is classify(g).kind


def test_sign_quotient():
    g = Isometry(((1, 2j), (0, 1)))
    neg = Isometry(((-1, -2j), (0, -1)))
    assert g == neg and hash(g) == hash(neg)
    assert g.distance_to(neg) == 0.0


def test_isometry_validation():
    with pytest.raises(ValueError):
        Isometry(((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        Isometry(((0, 1), (1, 0)), 2, normalize=True)  # orientation reversing
    with pytest.raises(ValueError):
        Isometry(((1j, 0), (0, -1j)), 2)
    assert Isometry(((2, 0), (0, 2)), normalize=True) == Isometry.identity()


def test_fixed_points_examples():
    assert [p.is_infinity for p in fixed_points(T)] == [True]
    pts = fixed_points(D2)
    assert pts[0].is_infinity and pts[1] == ExtendedPoint.ideal(3, 0)
    (p,) = fixed_points(Isometry(((1, 0), (1, 1))))
    assert p == ExtendedPoint.ideal(3, 0)
    with pytest.raises(AmbientChoiceRequired):
        fixed_points(Isometry.identity())
    assert fixed_points(Isometry(((0, -1), (1, 0)), 2)) == []


def test_fixed_points_are_fixed(rng):
    for dim in (2, 3):
        for _ in range(50):
            g = random_isometry(rng, dim)
            for xi in fixed_points(g):
                assert chordal_distance(act(g, xi), xi) <= 1e-9


def test_attracting_fixed_point_first(rng):
    for _ in range(30):
        g = random_isometry(rng)
        if classify(g).kind is not IsometryClass.LOXODROMIC:
            continue
        attracting, repelling = fixed_points(g)
        p = random_point(rng, 3, 0.0)
        for _ in range(60):
            p = act(g, p)
        assert chordal_distance(p, attracting) < chordal_distance(p, repelling)


def test_common_fixed_point():
    assert common_fixed_point([T, Isometry(((1, 1j), (0, 1)))]).is_infinity
    assert common_fixed_point([Isometry.identity()]).is_infinity
    with pytest.raises(NoCommonFixedPoint):
        common_fixed_point([T, Isometry(((0, -1), (1, 0)))])


def test_klein_chart_examples():
    assert to_klein(ExtendedPoint.interior(0, 0, 1)) == pytest.approx([0, 0, 0])
    assert to_klein(ExtendedPoint.infinity(3)) == pytest.approx([0, 0, 1])
    assert to_klein(ExtendedPoint.interior(0, 0, 2)) == pytest.approx([0, 0, 0.6])


def test_klein_roundtrip(rng):
    for dim in (2, 3):
        for _ in range(200):
            p = random_point(rng, dim, ideal_prob=0.4, inf_prob=0.05)
            k = to_klein(p)
            back = from_klein(k, dim, ideal=p.is_ideal)
            assert np.allclose(to_klein(back), k, atol=1e-12)
            if not p.is_infinity:
                assert back.coords == pytest.approx(p.coords, rel=1e-10, abs=1e-12)


def test_klein_interior_lies_in_ball(rng):
    for _ in range(100):
        p = random_point(rng, 3, 0.0)
        assert np.linalg.norm(to_klein(p)) < 1


def test_mobius_from_points(rng):
    w = cmath.exp(1j * math.pi / 3)
    g = mobius_from_points([0, 1, None], [w, 2 + 1j, -1j])
    for src, dst in ((0, w), (1, 2 + 1j), (None, -1j)):
        image = act(g, ExtendedPoint.ideal(3, src))
        assert chordal_distance(image, ExtendedPoint.ideal(3, dst)) < 1e-12
    h = mobius_from_points([0, 1, None], [None, 2, 3], dim=2)
    assert h.dim == 2
    assert act(h, ExtendedPoint.ideal(2, 0)).is_infinity
    with pytest.raises(ValueError):
        mobius_from_points([0, 1, None], [None, 2, -1], dim=2)


def test_extended_point_validation():
    with pytest.raises(ValueError):
        ExtendedPoint.interior(0, 0, -1)
    with pytest.raises(ValueError):
        ExtendedPoint.ideal(2, 1j)
    with pytest.raises(ValueError):
        ExtendedPoint(4, "ideal", None)
