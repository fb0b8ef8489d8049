"""Trace-polynomial calculus on the rank-2 free group.

Every word w(a, b) has a polynomial tau_w in Z[x, y, z] such that for all
SL2 pairs (A, B) with x = tr A, y = tr B, z = tr AB:

    tau_w(x, y, z) = tr w(A, B).

The engine is the identity tr(UV) + tr(U^-1 V) = tr(U) tr(V), applied
recursively with memoization on conjugacy-canonical keys, so tau depends
only on the conjugacy class of w and is invariant under w -> w^-1.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import InvalidInputError
from .polys import SparsePoly, chebyshev_like
from .words import Word

XYZ = ("x", "y", "z")

_memo: dict[tuple, SparsePoly] = {}


class FrickePoint(NamedTuple):
    """Trace coordinates (tr A, tr B, tr AB) of an SL2 pair.

    A PSL2 character only determines these up to the sign changes
    (x, y, z) -> (ex, dy, edz) with e, d in {+-1}; consumers that make
    PSL2-level claims must use sign-invariant combinations such as
    tau^2 - 4.
    """

    x: complex
    y: complex
    z: complex


def _const(c) -> SparsePoly:
    return SparsePoly.const(XYZ, c)


def _gen_trace(g: int) -> SparsePoly:
    return SparsePoly.var(XYZ, "x" if abs(g) == 1 else "y")


def power_trace(n: int, var: str = "t") -> SparsePoly:
    """Polynomial p_n with tr(A^n) = p_n(tr A) for every SL2 matrix A.

    Degree |n|, with p_{-n} = p_n (Cayley-Hamilton recursion
    p_{n+1} = t p_n - p_{n-1}).
    """
    return chebyshev_like(abs(n), var)


def trace_poly(w: Word) -> SparsePoly:
    """The Fricke trace polynomial tau_w in Z[x, y, z]."""
    if w.rank() > 2:
        raise InvalidInputError("trace_poly handles rank-2 words only")
    return _trace_key(w.conjugacy_key())


def _trace_key(key: tuple[int, ...]) -> SparsePoly:
    cached = _memo.get(key)
    if cached is not None:
        return cached
    result = _compute(key)
    _memo[key] = result
    return result


def _canon(letters) -> tuple[int, ...]:
    return Word(letters).conjugacy_key()


def _compute(key: tuple[int, ...]) -> SparsePoly:
    n = len(key)
    if n == 0:
        return _const(2)
    if n == 1:
        return _gen_trace(key[0])
    if n == 2 and key[0] > 0 and key[1] > 0 and abs(key[0]) != abs(key[1]):
        # the positive mixed pair: canonical form of ab up to conjugacy/inverse
        return SparsePoly.var(XYZ, "z")

    # repeated adjacent letter (cyclically): tr(g*g*s) = tr(g) tr(g*s) - tr(s)
    for i in range(n):
        j = (i + 1) % n
        if key[i] == key[j]:
            rot = key[j:] + key[:j]          # starts with the second g
            g, rest = rot[0], rot[1:]
            t_g = _gen_trace(g)
            return t_g * _trace_key(_canon((g,) + rest[:-1])) - \
                _trace_key(_canon(rest[:-1]))

    # a negative letter: tr(g^-1 s) = tr(g) tr(s) - tr(g s)
    for i in range(n):
        if key[i] < 0:
            rot = key[i:] + key[:i]
            g, rest = -rot[0], rot[1:]
            t_g = _gen_trace(g)
            return t_g * _trace_key(_canon(rest)) - _trace_key(_canon((g,) + rest))

    # all letters positive, no cyclic repeats: alternating (ab)^k
    if n % 2 != 0:
        raise AssertionError("odd alternating cyclic word cannot be reduced")
    k = n // 2
    return power_trace(k, "z").with_vars(XYZ)


def f_gamma(w: Word, pt: FrickePoint) -> complex:
    """The trace function tr(w)^2 - 4 evaluated at a Fricke point.

    The square makes the value insensitive to a simultaneous sign flip of
    tau_w; it is the only trace-level quantity exported across modules for
    PSL2-level statements.  For a fixed SL2 lift the value is exact; for a
    PSL2 character, words with odd exponent sum in a generator pick up the
    sign orbit of the lift, which the squaring here absorbs.
    """
    v = trace_poly(w).eval({"x": pt.x, "y": pt.y, "z": pt.z})
    return v * v - 4


def f_power_transform(n: int, var: str = "f") -> SparsePoly:
    """The degree-|n| polynomial q_n with f_{w^n} = q_n(f_w).

    Derived from p_n: with f = t^2 - 4, p_n(t)^2 - 4 is even in t and
    rewrites exactly as a polynomial in f.
    """
    p = power_trace(n, "t")
    sq = p * p - 4
    # substitute t^2 = f + 4; sq has only even t-exponents
    out = SparsePoly.zero((var,))
    fplus4 = SparsePoly.var((var,), var) + 4
    for e, c in sq.terms.items():
        k = e[0]
        if k % 2 != 0:
            raise AssertionError("p_n^2 - 4 must be even in t")
        out = out + fplus4 ** (k // 2) * c
    return out
