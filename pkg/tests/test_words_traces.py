import random

import pytest

from charvar.errors import InvalidInputError
from charvar.mat2 import Mat2, evaluate_word
from charvar.polys import SparsePoly
from charvar.traces import (FrickePoint, f_gamma, f_power_transform,
                            power_trace, trace_poly)
from charvar.words import Word, commutator

XYZ = ("x", "y", "z")


def rand_sl2(rng):
    while True:
        a, b, c = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(3)]
        if abs(a) > 1e-3:
            return Mat2(a, b, c, (1 + b * c) / a)


def rand_word(rng, max_len=12):
    return Word([rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, max_len))])


def test_word_reduction_and_parsing():
    w = Word.from_string("abAB")
    assert len(w) == 4
    assert Word.from_string("aA").is_identity()
    assert str(Word.from_string("abB")) == "a"
    assert (w * w.inverse()).is_identity()
    assert Word.from_string("ab") ** -2 == Word.from_string("BABA")
    with pytest.raises(InvalidInputError):
        Word.from_string("a!b")


def test_word_exponent_sums():
    w = Word.from_string("aabAB")
    assert w.exponent_sum(1) == 1
    assert w.exponent_sum(2) == 0
    assert w.total_exponent() == 1


def test_conjugacy_key_invariance():
    rng = random.Random(1)
    for _ in range(100):
        w = rand_word(rng, 8)
        u = rand_word(rng, 5)
        assert w.conjugacy_key() == w.inverse().conjugacy_key()
        assert w.conjugacy_key() == w.conjugate_by(u).conjugacy_key()


def test_trace_poly_base_cases():
    assert trace_poly(Word.from_string("a")) == SparsePoly.var(XYZ, "x")
    assert trace_poly(Word.from_string("ab")) == SparsePoly.var(XYZ, "z")
    assert trace_poly(Word()) == SparsePoly.const(XYZ, 2)
    x = SparsePoly.var(XYZ, "x")
    y = SparsePoly.var(XYZ, "y")
    z = SparsePoly.var(XYZ, "z")
    assert trace_poly(Word.from_string("aB")) == x * y - z


def test_commutator_trace_polynomial():
    x = SparsePoly.var(XYZ, "x")
    y = SparsePoly.var(XYZ, "y")
    z = SparsePoly.var(XYZ, "z")
    w = commutator(Word.from_string("a"), Word.from_string("b"))
    assert trace_poly(w) == x * x + y * y + z * z - x * y * z - 2


def test_power_trace():
    t = SparsePoly.var(("t",), "t")
    assert power_trace(1) == t
    assert power_trace(2) == t * t - 2
    assert power_trace(3) == t ** 3 - 3 * t
    for n in range(0, 9):
        assert power_trace(n) == power_trace(-n)
        assert power_trace(n).degree("t") == n or n == 0


def test_trace_oracle_random_words():
    rng = random.Random(0)
    for _ in range(400):
        w = rand_word(rng)
        if w.is_identity():
            continue
        A, B = rand_sl2(rng), rand_sl2(rng)
        M = evaluate_word([A, B], w)
        val = trace_poly(w).eval({"x": A.trace(), "y": B.trace(),
                                  "z": (A @ B).trace()})
        assert abs(val - M.trace()) <= 1e-9 * (1 + abs(M.trace()))


def test_trace_poly_conjugacy_invariance_structural():
    rng = random.Random(2)
    for _ in range(200):
        w = rand_word(rng, 8)
        u = rand_word(rng, 5)
        assert trace_poly(w) == trace_poly(w.inverse())
        assert trace_poly(w) == trace_poly(w.conjugate_by(u))


def test_f_gamma_examples():
    assert f_gamma(Word.from_string("a"), FrickePoint(2, 0.3, 1.7)) == 0
    assert f_gamma(Word.from_string("a"), FrickePoint(0, 0.3, 1.7)) == -4
    assert f_gamma(Word.from_string("ab"), FrickePoint(2, 2, 1)) == -3


def test_f_gamma_sign_invariance_even_words():
    # even exponent sum in each generator: value invariant under sign flips
    rng = random.Random(4)
    w = Word.from_string("aabbaabb")
    for _ in range(20):
        pt = FrickePoint(*[complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
                           for _ in range(3)])
        flipped = FrickePoint(-pt.x, -pt.y, pt.z)
        v1, v2 = f_gamma(w, pt), f_gamma(w, flipped)
        assert abs(v1 - v2) <= 1e-9 * (1 + abs(v1))


def test_f_power_transform_matches_f_gamma():
    rng = random.Random(5)
    w = Word.from_string("ab")
    for n in range(1, 9):
        q = f_power_transform(n)
        assert q.degree("f") == n
        for _ in range(25):
            pt = FrickePoint(*[complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
                               for _ in range(3)])
            lhs = f_gamma(w ** n, pt)
            rhs = q.eval({"f": f_gamma(w, pt)})
            assert abs(lhs - rhs) <= 1e-7 * (1 + abs(lhs))


def test_trace_poly_degree_multiplicativity():
    # deg tau_{a^n} = n, matching the degree growth of trace functions
    for n in range(1, 6):
        assert trace_poly(Word.from_string("a") ** n).degree("x") == n


def test_trace_poly_rank_guard():
    with pytest.raises(InvalidInputError):
        trace_poly(Word.from_string("abc"))
