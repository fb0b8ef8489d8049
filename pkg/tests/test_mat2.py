import cmath
import math
import random
from fractions import Fraction

import pytest

from charvar.errors import (DegeneratePairError, InvalidInputError,
                            ZeroTranslationError)
from charvar.mat2 import (CHORDAL_TOL, IsomTag, Mat2, PairTag, chordal,
                          classify_isometry, fixed_points, jorgensen_test,
                          pair_classify, translation_length, ProjPoint)


def rand_sl2(rng, spread=2.0):
    while True:
        a, b, c = [complex(rng.uniform(-spread, spread), rng.uniform(-spread, spread))
                   for _ in range(3)]
        if abs(a) > 1e-2:
            return Mat2(a, b, c, (1 + b * c) / a)


def test_det_enforced():
    with pytest.raises(InvalidInputError):
        Mat2(1, 0, 0, 2)
    with pytest.raises(InvalidInputError):
        Mat2(Fraction(1), Fraction(0), Fraction(0), Fraction(2))
    Mat2(Fraction(2), Fraction(1), Fraction(1), Fraction(1))  # det 1, fine


def test_classify_examples():
    assert classify_isometry(Mat2(1, 1, 0, 1)).tag is IsomTag.PARABOLIC
    cls = classify_isometry(Mat2.diag(2, Fraction(1, 2)))
    assert cls.tag is IsomTag.LOXODROMIC
    assert abs(cls.length - 2 * math.log(2)) < 1e-12
    w = cmath.exp(1j * math.pi / 3)
    cls = classify_isometry(Mat2.diag(w, 1 / w))
    assert cls.tag is IsomTag.ELLIPTIC and cls.order == 3
    assert classify_isometry(Mat2.identity()).tag is IsomTag.IDENTITY
    assert classify_isometry(-Mat2.identity()).tag is IsomTag.IDENTITY


def test_classify_elliptic_order_trace_relation():
    # elliptic of order m must satisfy tr^2 = 4 cos^2(k pi / m), gcd(k, m) = 1
    for m in (2, 3, 5, 7, 12):
        for k in range(1, m):
            if math.gcd(k, m) != 1:
                continue
            w = cmath.exp(1j * math.pi * k / m)
            cls = classify_isometry(Mat2.diag(w, 1 / w))
            assert cls.tag is IsomTag.ELLIPTIC
            assert cls.order == m


def test_classify_invariance_random():
    rng = random.Random(0)
    for _ in range(10_000):
        m = rand_sl2(rng)
        s = rand_sl2(rng)
        c1 = classify_isometry(m)
        c2 = classify_isometry(-m)
        c3 = classify_isometry(m.conjugated_by(s))
        assert c1.tag == c2.tag == c3.tag


def test_translation_length():
    assert abs(translation_length(Mat2.diag(2, 0.5)) - 2 * math.log(2)) < 1e-12
    lam = cmath.exp(1 + 0.73j)
    assert abs(translation_length(Mat2.diag(lam, 1 / lam)) - 2.0) < 1e-12
    # real hyperbolic with trace 3: 2 arccosh(3/2)
    m = Mat2(3, -1, 1, 0)
    assert abs(translation_length(m) - 2 * math.acosh(1.5)) < 1e-9
    assert abs(translation_length(m) - 1.9248473) < 1e-6
    with pytest.raises(ZeroTranslationError):
        translation_length(Mat2(1, 1, 0, 1))
    with pytest.raises(ZeroTranslationError):
        translation_length(Mat2.diag(1j, -1j))


def test_translation_length_multiplicative():
    rng = random.Random(1)
    found = 0
    while found < 200:
        m = rand_sl2(rng)
        if classify_isometry(m).tag is not IsomTag.LOXODROMIC:
            continue
        found += 1
        l1 = translation_length(m)
        for n in (2, 3, 4):
            ln = translation_length(m.power(n))
            assert abs(ln - n * l1) <= 1e-9 * (1 + ln)


def test_fixed_points_examples():
    pts = fixed_points(Mat2(1, 1, 0, 1))
    assert len(pts) == 1 and pts[0].is_infinity
    pts = fixed_points(Mat2.diag(2, 0.5))
    vals = sorted((p.is_infinity, None if p.is_infinity else round(abs(p.value()), 9))
                  for p in pts)
    assert vals == [(False, 0.0), (True, None)]
    pts = fixed_points(Mat2(0, 1, -1, 0))
    got = sorted(p.value().imag for p in pts)
    assert abs(got[0] + 1) < 1e-9 and abs(got[1] - 1) < 1e-9
    with pytest.raises(InvalidInputError):
        fixed_points(Mat2.identity())


def test_pair_classify_examples():
    assert pair_classify(Mat2(2, 0, 0, 0.5), Mat2(3, 1, 0, Fraction(1, 3))) \
        is PairTag.REDUCIBLE
    assert pair_classify(Mat2.diag(2, 0.5), Mat2(0, 1, -1, 0)) is PairTag.N_CONJUGATE
    assert pair_classify(Mat2(1, 1, 0, 1), Mat2(1, 0, 1, 1)) \
        is PairTag.STRICTLY_IRREDUCIBLE
    assert pair_classify(Mat2.diag(2, 0.5), Mat2.diag(3, Fraction(1, 3))) \
        is PairTag.DIAGONALIZABLE
    with pytest.raises(DegeneratePairError):
        pair_classify(Mat2.identity(), -Mat2.identity())


def test_pair_classify_finite_image():
    # Klein four group inside the diagonal-or-antidiagonal subgroup
    assert pair_classify(Mat2(0, 1, -1, 0), Mat2(0, 1j, 1j, 0)) \
        is PairTag.IRREDUCIBLE_FINITE
    # dihedral image of order 10
    z5 = cmath.exp(2j * math.pi / 5)
    assert pair_classify(Mat2.diag(z5, 1 / z5), Mat2(0, 1, -1, 0)) \
        is PairTag.IRREDUCIBLE_FINITE


def test_pair_classify_conjugation_invariance():
    rng = random.Random(2)
    pairs = [
        (Mat2(2, 0, 0, 0.5), Mat2(3, 1, 0, 1 / 3)),
        (Mat2.diag(2, 0.5), Mat2(0, 1, -1, 0)),
        (Mat2(1, 1, 0, 1), Mat2(1, 0, 1, 1)),
    ]
    for a, b in pairs:
        base = pair_classify(a, b)
        for _ in range(25):
            s = rand_sl2(rng, 1.2)
            assert pair_classify(a.conjugated_by(s), b.conjugated_by(s)) == base


def test_trace_identity_random():
    rng = random.Random(3)
    for _ in range(10_000):
        u = rand_sl2(rng)
        v = rand_sl2(rng)
        lhs = (u @ v).trace() + (u @ v.inv()).trace()
        rhs = u.trace() * v.trace()
        assert abs(lhs - rhs) <= 1e-10 * (1 + abs(rhs))


def test_jorgensen_examples():
    assert jorgensen_test(Mat2(1, 1, 0, 1), Mat2(1, 0, 1, 1)) is True
    assert jorgensen_test(Mat2.identity(), Mat2.identity()) is False
    assert jorgensen_test(Mat2(1, 0.001, 0, 1), Mat2(1, 0, 0.001, 1)) is False


def test_chordal_metric():
    p0 = ProjPoint.of(0)
    pinf = ProjPoint.infinity()
    assert chordal(p0, pinf) == pytest.approx(1.0)
    assert chordal(p0, ProjPoint.of(1e-12)) < CHORDAL_TOL


def test_matrix_power_and_inverse():
    rng = random.Random(4)
    for _ in range(50):
        m = rand_sl2(rng)
        ident = m @ m.inv()
        assert abs(ident.a - 1) < 1e-9 and abs(ident.d - 1) < 1e-9
        assert abs((m.power(3)).trace() - (m @ m @ m).trace()) < 1e-8 * (1 + abs(m.power(3).trace()))
