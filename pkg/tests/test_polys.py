import math
import random
from fractions import Fraction

import pytest

from charvar.errors import InvalidInputError, NotSymmetricError
from charvar.polys import (LaurentPoly, SparsePoly, chebyshev_like,
                           complex_roots, distinct_roots, is_squarefree_in,
                           poly_gcd, resultant, squarefree_part_in, symmetrize)

XZ = ("x", "z")
X = SparsePoly.var(XZ, "x")
Z = SparsePoly.var(XZ, "z")


def test_arithmetic_basics():
    f = X * X - 2 * Z + 3
    g = Z - 1
    assert (f + g) - g == f
    assert f * g == g * f
    assert (f ** 2) == f * f
    assert f.eval({"x": 2, "z": 5}) == 4 - 10 + 3
    assert f.degree("x") == 2 and f.degree("z") == 1


def test_subs_and_derivative():
    f = Z ** 3 - Z
    assert f.derivative("z") == 3 * Z ** 2 - 1
    g = f.subs("z", X + 1)
    assert g.eval({"x": 2, "z": 0}) == 27 - 3


def test_gcd_examples():
    assert poly_gcd(Z * Z - 1, Z - 1) == Z - 1
    f = (X * X - 4) * (Z - 1)
    assert poly_gcd(f, SparsePoly.zero(XZ)) == f.sign_normalized()
    g = (X - 2) * (Z - 1) ** 2
    assert poly_gcd(f, g) == ((X - 2) * (Z - 1)).sign_normalized()
    assert poly_gcd(SparsePoly.zero(XZ), SparsePoly.zero(XZ)).is_zero()


def test_gcd_sign_normalization():
    f = -2 * (Z - 1)
    g = 4 * (Z - 1) * (Z + 3)
    got = poly_gcd(f, g)
    assert got == Z - 1
    assert got.leading_coeff() > 0


def test_resultant_examples():
    MV = ("m", "x")
    m = SparsePoly.var(MV, "m")
    x = SparsePoly.var(MV, "x")
    assert resultant(m * m - x * m + 1, m - 2, "m") == 5 - 2 * x
    AB = ("z", "a", "b")
    z = SparsePoly.var(AB, "z")
    a = SparsePoly.var(AB, "a")
    b = SparsePoly.var(AB, "b")
    assert resultant(z - a, z - b, "z") == a - b
    f = m * m - 1
    assert resultant(f, f, "m").is_zero()


def test_resultant_requires_positive_degree():
    MV = ("m", "x")
    m = SparsePoly.var(MV, "m")
    with pytest.raises(InvalidInputError):
        resultant(m - 1, SparsePoly.const(MV, 3), "m")


def test_resultant_vanishes_iff_common_factor():
    rng = random.Random(0)
    for _ in range(200):
        def rand_poly(deg):
            return SparsePoly(XZ, {(rng.randint(0, 1), k): rng.randint(-3, 3)
                                   for k in range(deg + 1)})
        share = rng.random() < 0.5
        w = Z - rng.randint(-2, 2) * X - rng.randint(-2, 2)
        f = rand_poly(2) + Z ** 3
        g = rand_poly(2) + Z ** 3 + X * Z
        if share:
            f = f * w
            g = g * w
        res = resultant(f, g, "z")
        common = poly_gcd(f, g)
        if common.degree("z") > 0:
            assert res.is_zero()
        else:
            assert not res.is_zero()


def test_divexact():
    f = (X - 2) * (Z ** 2 + X)
    assert f.divexact(X - 2) == Z ** 2 + X
    with pytest.raises(InvalidInputError):
        (f + 1).divexact(X - 2)


def test_complex_roots_examples():
    p = SparsePoly.from_univariate("z", [-1, 0, 1])      # z^2 - 1
    roots = sorted(complex_roots(p), key=lambda v: v.real)
    assert abs(roots[0] + 1) < 1e-10 and abs(roots[1] - 1) < 1e-10

    p = SparsePoly.from_univariate("z", [-1, 1])         # z - 1
    assert abs(complex_roots(p)[0] - 1) < 1e-12

    p = SparsePoly.from_univariate("z", [-1, -1, 1])     # z^2 - z - 1
    roots = sorted(complex_roots(p), key=lambda v: v.real)
    phi = (1 + math.sqrt(5)) / 2
    assert abs(roots[1] - phi) < 1e-10
    assert abs(roots[0] + (phi - 1)) < 1e-10


def test_complex_roots_multiplicity_and_product():
    rng = random.Random(3)
    for _ in range(40):
        deg = rng.randint(1, 9)
        coeffs = [rng.randint(-6, 6) for _ in range(deg)] + [rng.randint(1, 6)]
        p = SparsePoly.from_univariate("z", coeffs)
        deg_actual = p.degree("z")
        roots = complex_roots(p)
        assert len(roots) == deg_actual
        prod = 1.0 + 0j
        for r in roots:
            prod *= r
        lead = coeffs[-1]
        const = coeffs[0]
        expect = (-1) ** deg_actual * Fraction(const, lead)
        if const != 0:
            assert abs(prod - complex(expect)) <= 1e-8 * (1 + abs(complex(expect)))


def test_complex_roots_repeated():
    # (z - 2)^3 (z + 1)
    p = SparsePoly.from_univariate("z", [-8, 4, 6, -5, 1]) * 1
    p = (SparsePoly.from_univariate("z", [-2, 1]) ** 3) * \
        SparsePoly.from_univariate("z", [1, 1])
    roots = complex_roots(p)
    near2 = [r for r in roots if abs(r - 2) < 1e-4]
    assert len(near2) == 3


def test_complex_roots_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        complex_roots(SparsePoly.zero(("z",)))
    with pytest.raises(InvalidInputError):
        complex_roots(SparsePoly.const(("z",), 5))


def test_symmetrize_examples():
    m2 = LaurentPoly("m", {2: 1, -2: 1})
    assert symmetrize(m2) == SparsePoly.from_univariate("x", [-2, 0, 1])
    m1 = LaurentPoly("m", {1: 1, -1: 1})
    assert symmetrize(m1) == SparsePoly.var(("x",), "x")
    m3 = LaurentPoly("m", {3: 1, -3: 1})
    assert symmetrize(m3) == SparsePoly.from_univariate("x", [0, -3, 0, 1])
    with pytest.raises(NotSymmetricError):
        symmetrize(LaurentPoly("m", {1: 1}))


def test_symmetrize_roundtrip():
    rng = random.Random(7)
    m = LaurentPoly("m", {1: 1})
    minv = LaurentPoly("m", {-1: 1})
    for _ in range(100):
        deg = rng.randint(0, 10)
        coeffs = [rng.randint(-5, 5) for _ in range(deg + 1)]
        # f(x) -> f(m + 1/m) -> symmetrize -> must return f
        f = SparsePoly.from_univariate("x", coeffs)
        sub = LaurentPoly.zero("m")
        base = m + minv
        power = LaurentPoly("m", {0: 1})
        for k, c in enumerate(coeffs):
            if k > 0:
                power = power * base
            sub = sub + power * c
        assert symmetrize(sub) == f


def test_squarefree_part():
    f = (Z - 1) ** 2 * (Z + X)
    sf = squarefree_part_in(f, "z")
    assert sf.sign_normalized() == ((Z - 1) * (Z + X)).sign_normalized()
    assert is_squarefree_in(sf, "z")
    assert not is_squarefree_in(f, "z")


def test_json_roundtrip_bit_exact():
    f = 3 * X ** 2 * Z - Z + SparsePoly.const(XZ, Fraction(1, 2))
    obj = f.to_json_obj()
    back = SparsePoly.from_json_obj(obj)
    assert back == f
    assert back.to_json_obj() == obj


def test_chebyshev_identity():
    rng = random.Random(11)
    for n in range(0, 9):
        p = chebyshev_like(n)
        for _ in range(10):
            u = complex(rng.uniform(0.3, 2.0), rng.uniform(-1, 1))
            lhs = p.eval({"t": u + 1 / u})
            rhs = u ** n + u ** (-n)
            assert abs(lhs - rhs) < 1e-9 * (1 + abs(rhs))


def test_distinct_roots_clustering():
    p = (SparsePoly.from_univariate("z", [-1, 1]) ** 2) * \
        SparsePoly.from_univariate("z", [3, 1])
    assert len(distinct_roots(p)) == 2
