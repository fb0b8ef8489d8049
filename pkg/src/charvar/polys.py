"""Sparse multivariate polynomials over exact rational coefficients.

This is the computational substrate for trace polynomials, character
curves, and Alexander polynomials.  Coefficients are Python ints or
``Fraction``s (never floats); gcds and resultants are exact; the only
floating-point code is the simultaneous root finder ``complex_roots``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import ConsistencyError, InvalidInputError, NotSymmetricError

ROOT_CLUSTER_RADIUS = 1e-6  # distinct-root clustering radius
ROOT_TOL = 1e-10  # accuracy target for individual roots


def _norm_coeff(c):
    """Normalise a coefficient: Fractions with denominator 1 become ints."""
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return int(c)
        return c
    if isinstance(c, int):
        return c
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


def _coeff_str(c) -> str:
    return str(c)


def _coeff_from_str(s: str):
    return _norm_coeff(Fraction(s))


class SparsePoly:
    """Multivariate polynomial with exact coefficients and a fixed variable list.

    Terms are stored as a dict from exponent tuples to nonzero coefficients.
    Equality is structural; the canonical term order is graded lexicographic.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: dict | None = None):
        self.vars = tuple(vars)
        clean: dict[tuple, object] = {}
        if terms:
            k = len(self.vars)
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != k:
                    raise InvalidInputError("exponent tuple/variable mismatch")
                c = _norm_coeff(c if isinstance(c, (int, Fraction)) else Fraction(c))
                if c != 0:
                    clean[exps] = clean.get(exps, 0) + c
                    if clean[exps] == 0:
                        del clean[exps]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "SparsePoly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: Sequence[str], c) -> "SparsePoly":
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "SparsePoly":
        vars = tuple(vars)
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): 1})

    @classmethod
    def from_univariate(cls, name: str, coeffs: Iterable) -> "SparsePoly":
        """Build a univariate polynomial from low-to-high coefficients."""
        return cls((name,), {(i,): c for i, c in enumerate(coeffs) if c})

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise InvalidInputError("not a constant polynomial")
        return self.terms.get((0,) * len(self.vars), 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def sorted_terms(self):
        """Terms in ascending graded-lex order (the canonical order)."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def leading_coeff(self):
        """Coefficient of the graded-lex leading term."""
        if not self.terms:
            return 0
        return self.terms[max(self.terms, key=lambda e: (sum(e), e))]

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "SparsePoly"):
        if self.vars != other.vars:
            raise InvalidInputError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(self.vars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = _norm_coeff(s if isinstance(s, (int, Fraction)) else Fraction(s))
        out = SparsePoly.__new__(SparsePoly)
        out.vars, out.terms = self.vars, terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = SparsePoly.__new__(SparsePoly)
        out.vars = self.vars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return SparsePoly.zero(self.vars)
            out = SparsePoly.__new__(SparsePoly)
            out.vars = self.vars
            out.terms = {e: _norm_coeff(c * other) for e, c in self.terms.items()}
            return out
        self._check(other)
        terms: dict[tuple, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = SparsePoly.__new__(SparsePoly)
        out.vars = self.vars
        out.terms = {e: _norm_coeff(c) for e, c in terms.items()}
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidInputError("negative power of a polynomial")
        result = SparsePoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and substitution -----------------------------------------

    def derivative(self, name: str) -> "SparsePoly":
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            terms[tuple(ne)] = c * e[i]
        return SparsePoly(self.vars, terms)

    def eval(self, values: dict):
        """Evaluate at a point; values may be numeric or Fractions."""
        vals = [values[v] for v in self.vars]
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def subs(self, name: str, repl: "SparsePoly") -> "SparsePoly":
        """Substitute a polynomial (in this polynomial's variables) for a variable."""
        self._check(repl)
        i = self.vars.index(name)
        out = SparsePoly.zero(self.vars)
        powers = {0: SparsePoly.const(self.vars, 1)}

        def pw(k):
            if k not in powers:
                powers[k] = pw(k - 1) * repl
            return powers[k]

        for e, c in self.terms.items():
            rest = list(e)
            k = rest[i]
            rest[i] = 0
            mono = SparsePoly(self.vars, {tuple(rest): c})
            out = out + mono * pw(k)
        return out

    def with_vars(self, newvars: Sequence[str]) -> "SparsePoly":
        """Reinterpret in a larger (or reordered) variable list."""
        newvars = tuple(newvars)
        idx = [newvars.index(v) for v in self.vars]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(newvars)
            for pos, k in zip(idx, e):
                ne[pos] = k
            terms[tuple(ne)] = c
        return SparsePoly(newvars, terms)

    def drop_var(self, name: str) -> "SparsePoly":
        """Remove a variable that the polynomial does not actually use."""
        if self.degree(name) > 0:
            raise InvalidInputError(f"polynomial still depends on {name}")
        i = self.vars.index(name)
        nv = self.vars[:i] + self.vars[i + 1:]
        return SparsePoly(nv, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def as_univariate(self, name: str) -> list["SparsePoly"]:
        """Coefficient list (low to high) w.r.t. one variable; coefficients keep all vars."""
        i = self.vars.index(name)
        d = self.degree(name)
        coeffs = [SparsePoly.zero(self.vars) for _ in range(max(d, 0) + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            coeffs[k] = coeffs[k] + SparsePoly(self.vars, {tuple(ne): c})
        return coeffs

    # -- content, primitive part, normal form -------------------------------

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators / lcm of denominators)."""
        if not self.terms:
            return Fraction(0)
        nums = []
        dens = []
        for c in self.terms.values():
            f = Fraction(c)
            nums.append(abs(f.numerator))
            dens.append(f.denominator)
        g = reduce(math.gcd, nums)
        l = reduce(math.lcm, dens)
        return Fraction(g, l)

    def primitive_part(self) -> "SparsePoly":
        if not self.terms:
            return self
        c = self.content()
        return self * (1 / c)

    def sign_normalized(self) -> "SparsePoly":
        """Primitive part with graded-lex leading coefficient > 0."""
        if not self.terms:
            return self
        p = self.primitive_part()
        if p.leading_coeff() < 0:
            p = -p
        return p

    def divexact(self, other: "SparsePoly") -> "SparsePoly":
        """Exact division; raises if ``other`` does not divide ``self``."""
        self._check(other)
        if other.is_zero():
            raise InvalidInputError("division by zero polynomial")
        if self.is_zero():
            return self
        rem = self
        q = SparsePoly.zero(self.vars)
        lead_e = max(other.terms, key=lambda e: (sum(e), e))
        lead_c = other.terms[lead_e]
        while not rem.is_zero():
            re = max(rem.terms, key=lambda e: (sum(e), e))
            diff = tuple(a - b for a, b in zip(re, lead_e))
            if any(d < 0 for d in diff):
                raise InvalidInputError("inexact polynomial division")
            coeff = Fraction(rem.terms[re]) / Fraction(lead_c)
            mono = SparsePoly(self.vars, {diff: coeff})
            q = q + mono
            rem = rem - mono * other
        return q

    def divides(self, other: "SparsePoly") -> bool:
        try:
            other.divexact(self)
            return True
        except InvalidInputError:
            return False

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[*e, _coeff_str(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SparsePoly":
        vars = tuple(obj["vars"])
        terms = {}
        for row in obj["terms"]:
            *e, c = row
            terms[tuple(int(x) for x in e)] = _coeff_from_str(c)
        return cls(vars, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in reversed(self.sorted_terms()):
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.vars, e) if k
            )
            if mono:
                cs = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                bits.append(f"{cs}{mono}")
            else:
                bits.append(f"{c}")
        s = " + ".join(bits).replace("+ -", "- ")
        return s


# ---------------------------------------------------------------------------
# gcd / resultant
# ---------------------------------------------------------------------------


def _int_content_gcd(a: Fraction, b: Fraction) -> Fraction:
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    return Fraction(math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
                    a.denominator * b.denominator)


def _univar_gcd(f: SparsePoly, g: SparsePoly, name: str) -> SparsePoly:
    """Monic Euclid for polynomials univariate in ``name`` with rational coefficients."""
    fa = {e: Fraction(c) for e, c in f.terms.items()}
    ga = {e: Fraction(c) for e, c in g.terms.items()}
    i = f.vars.index(name)

    def to_list(d):
        if not d:
            return []
        n = max(e[i] for e in d)
        out = [Fraction(0)] * (n + 1)
        for e, c in d.items():
            out[e[i]] = c
        while out and out[-1] == 0:
            out.pop()
        return out

    a, b = to_list(fa), to_list(ga)
    while b:
        # a mod b
        while len(a) >= len(b) and a:
            q = a[-1] / b[-1]
            off = len(a) - len(b)
            for k in range(len(b)):
                a[off + k] -= q * b[k]
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    terms = {}
    for k, c in enumerate(a):
        if c:
            e = [0] * len(f.vars)
            e[i] = k
            terms[tuple(e)] = c
    return SparsePoly(f.vars, terms).sign_normalized()


def _used_vars(f: SparsePoly) -> set:
    used = set()
    for e in f.terms:
        for v, k in zip(f.vars, e):
            if k:
                used.add(v)
    return used


def _pseudo_rem(f: SparsePoly, g: SparsePoly, name: str) -> SparsePoly:
    """Pseudo-remainder of f by g w.r.t. ``name`` (lc(g)^delta * f = q*g + r)."""
    dg = g.degree(name)
    gc = g.as_univariate(name)
    lcg = gc[dg]
    r = f
    x = SparsePoly.var(f.vars, name)
    while not r.is_zero() and r.degree(name) >= dg:
        dr = r.degree(name)
        lcr = r.as_univariate(name)[dr]
        r = r * lcg - g * lcr * x ** (dr - dg)
    return r


def poly_gcd(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Primitive gcd, sign-normalized so the leading coefficient is positive.

    gcd(0, 0) = 0 and gcd(f, 0) is the primitive part of f.
    """
    if f.vars != g.vars:
        raise InvalidInputError("gcd requires identical variable lists")
    if f.is_zero() and g.is_zero():
        return SparsePoly.zero(f.vars)
    if f.is_zero():
        return g.sign_normalized()
    if g.is_zero():
        return f.sign_normalized()
    used = _used_vars(f) | _used_vars(g)
    if not used:
        c = _int_content_gcd(Fraction(f.constant_value()), Fraction(g.constant_value()))
        return SparsePoly.const(f.vars, c)
    if len(used) == 1:
        return _univar_gcd(f, g, next(iter(used)))

    # several variables: primitive PRS in a main variable
    name = max(used, key=lambda v: min(f.degree(v), g.degree(v)))

    def content_wrt(p: SparsePoly) -> SparsePoly:
        coeffs = [c for c in p.as_univariate(name) if not c.is_zero()]
        acc = coeffs[0]
        for c in coeffs[1:]:
            acc = poly_gcd(acc, c)
            if acc.is_constant():
                break
        return acc.sign_normalized()

    cf, cg = content_wrt(f), content_wrt(g)
    pf, pg = f.divexact(cf), g.divexact(cg)
    ccont = poly_gcd(cf, cg)
    a, b = (pf, pg) if pf.degree(name) >= pg.degree(name) else (pg, pf)
    while not b.is_zero() and b.degree(name) > 0:
        r = _pseudo_rem(a, b, name)
        if r.is_zero():
            a, b = b, r
            break
        a, b = b, r.divexact(content_wrt(r)) if r.degree(name) >= 0 else r
    if b.is_zero():
        return (ccont * a.divexact(content_wrt(a))).sign_normalized()
    # non-zero remainder of degree 0 in the main variable: gcd has no main-var part
    return ccont.sign_normalized()


def resultant(f: SparsePoly, g: SparsePoly, name: str) -> SparsePoly:
    """Sylvester resultant of f, g with respect to one variable.

    Vanishes exactly on the locus where f and g share a root in ``name``.
    """
    if f.vars != g.vars:
        raise InvalidInputError("resultant requires identical variable lists")
    m, n = f.degree(name), g.degree(name)
    if m <= 0 or n <= 0:
        raise InvalidInputError("resultant arguments must have positive degree "
                                f"in {name}")
    if n == 2 and g.as_univariate(name)[2].is_constant():
        return _resultant_against_monicish_quadratic(f, g, name)
    fc = f.as_univariate(name)
    gc = g.as_univariate(name)
    size = m + n
    rows = []
    for i in range(n):  # rows of f coefficients
        row = [SparsePoly.zero(f.vars)] * size
        for k, c in enumerate(fc):
            row[i + (m - k)] = c
        rows.append(row)
    for i in range(m):  # rows of g coefficients
        row = [SparsePoly.zero(f.vars)] * size
        for k, c in enumerate(gc):
            row[i + (n - k)] = c
        rows.append(row)
    return _bareiss_det(rows)


def _resultant_against_monicish_quadratic(f: SparsePoly, g: SparsePoly,
                                          name: str) -> SparsePoly:
    """res(f, c2*v^2 + c1*v + c0) with constant c2, by reduction modulo g.

    With roots r1, r2 of g: res = c2^deg(f) * f(r1) * f(r2); after reducing
    f to alpha*v + beta (mod g), the product is evaluated with the symmetric
    functions r1 + r2 = -c1/c2 and r1*r2 = c0/c2.
    """
    c = g.as_univariate(name)
    c2 = Fraction(c[2].constant_value())
    s = c[1] * Fraction(-1, 1) * (1 / c2)   # r1 + r2
    p = c[0] * (1 / c2)                     # r1 * r2
    fc = f.as_univariate(name)
    deg = len(fc) - 1
    # v^k = A_k*v + B_k modulo the monic form of g
    A = SparsePoly.zero(f.vars)
    B = SparsePoly.const(f.vars, 1)
    alpha = SparsePoly.zero(f.vars)
    beta = SparsePoly.zero(f.vars)
    for k, ck in enumerate(fc):
        if not ck.is_zero():
            alpha = alpha + ck * A
            beta = beta + ck * B
        A, B = s * A + B, -(p * A)
    res = alpha * alpha * p + alpha * beta * s + beta * beta
    scale = c2 ** deg
    return res * scale


def _bareiss_det(rows: list[list[SparsePoly]]) -> SparsePoly:
    """Fraction-free determinant of a matrix of polynomials."""
    n = len(rows)
    vars = rows[0][0].vars
    m = [row[:] for row in rows]
    sign = 1
    prev = SparsePoly.const(vars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return SparsePoly.zero(vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.divexact(prev)
            m[i][k] = SparsePoly.zero(vars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def squarefree_part_in(f: SparsePoly, name: str) -> SparsePoly:
    """Square-free part of f with respect to one variable (exact gcd check)."""
    if f.degree(name) <= 0:
        return f
    g = poly_gcd(f, f.derivative(name))
    if g.is_constant():
        return f
    return f.divexact(g)


def is_squarefree_in(f: SparsePoly, name: str) -> bool:
    g = poly_gcd(f, f.derivative(name))
    return g.is_constant()


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Single-variable Laurent polynomial with exact coefficients."""

    __slots__ = ("var", "terms")

    def __init__(self, var: str, terms: dict | None = None):
        self.var = var
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = _norm_coeff(c if isinstance(c, (int, Fraction)) else Fraction(c))
                if c != 0:
                    self.terms[int(k)] = self.terms.get(int(k), 0) + c
            self.terms = {k: c for k, c in self.terms.items() if c != 0}

    @classmethod
    def zero(cls, var: str = "t"):
        return cls(var, {})

    @classmethod
    def unit(cls, var: str = "t", k: int = 0, c=1):
        return cls(var, {k: c})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.var == other.var and self.terms == other.terms

    def __hash__(self):
        return hash((self.var, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly(self.var, {0: other})
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return LaurentPoly(self.var, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.var, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly(self.var, {0: other})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.var, {k: c * other for k, c in self.terms.items()})
        terms: dict[int, object] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                terms[k1 + k2] = terms.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(self.var, terms)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.var, {e + k: c for e, c in self.terms.items()})

    def involution(self) -> "LaurentPoly":
        """The substitution m -> 1/m."""
        return LaurentPoly(self.var, {-k: c for k, c in self.terms.items()})

    def is_symmetric(self) -> bool:
        return self == self.involution()

    def eval(self, value):
        total = 0
        for k, c in self.terms.items():
            total = total + c * value ** k if k >= 0 else total + c / value ** (-k)
        return total

    def min_deg(self) -> int:
        return min(self.terms) if self.terms else 0

    def max_deg(self) -> int:
        return max(self.terms) if self.terms else 0

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            if k == 0:
                bits.append(f"{c}")
            else:
                e = f"{self.var}^{k}" if k != 1 else self.var
                cs = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                bits.append(f"{cs}{e}")
        return " + ".join(bits).replace("+ -", "- ")


def chebyshev_like(n: int, var: str = "t") -> SparsePoly:
    """Polynomial p_n with p_n(u + 1/u) = u^n + u^-n (p_0 = 2, p_1 = t)."""
    n = abs(n)
    p0 = SparsePoly.const((var,), 2)
    if n == 0:
        return p0
    t = SparsePoly.var((var,), var)
    p1 = t
    for _ in range(n - 1):
        p0, p1 = p1, t * p1 - p0
    return p1


def symmetrize(f: LaurentPoly, out_var: str = "x") -> SparsePoly:
    """Rewrite a symmetric Laurent polynomial f(m) as g(m + 1/m).

    Raises ``NotSymmetricError`` if f is not invariant under m -> 1/m.
    """
    if not f.is_symmetric():
        raise NotSymmetricError("input is not invariant under m -> 1/m")
    out = SparsePoly.zero((out_var,))
    for k in sorted(set(abs(e) for e in f.terms), reverse=True):
        c = f.terms.get(k, 0)
        if k == 0:
            out = out + SparsePoly.const((out_var,), c)
        else:
            out = out + chebyshev_like(k, out_var) * c
    return out


# ---------------------------------------------------------------------------
# complex root finding (simultaneous iteration)
# ---------------------------------------------------------------------------


def _aberth_roots(coeffs: list[complex]) -> list[complex]:
    """All roots of a polynomial given by low-to-high complex coefficients.

    Simultaneous (Ehrlich-Aberth) iteration started on a perturbed circle
    whose radius is the Cauchy bound.
    """
    c = list(coeffs)
    while c and abs(c[-1]) == 0:
        c.pop()
    n = len(c) - 1
    if n < 1:
        return []
    lead = c[-1]
    cn = [x / lead for x in c]
    radius = 1.0 + max(abs(x) for x in cn[:-1]) if n >= 1 else 1.0

    def p_and_dp(z):
        p = cn[-1]
        dp = 0j
        for k in range(n - 1, -1, -1):
            dp = dp * z + p
            p = p * z + cn[k]
        return p, dp

    roots = [radius * cmath.exp(2j * math.pi * (k / n) + 0.4j) * (1 + 1e-4 * k)
             for k in range(n)]
    for _ in range(400):
        moved = 0.0
        for i in range(n):
            z = roots[i]
            p, dp = p_and_dp(z)
            if p == 0:
                continue
            if dp == 0:
                roots[i] = z + 1e-6 * (1 + abs(z))
                moved = math.inf
                continue
            w = p / dp
            s = sum(1.0 / (z - roots[j]) for j in range(n) if j != i)
            denom = 1.0 - w * s
            step = w if denom == 0 else w / denom
            roots[i] = z - step
            moved = max(moved, abs(step))
        if moved < 1e-15 * (1.0 + radius):
            break
    # Newton polish
    for i in range(n):
        z = roots[i]
        for _ in range(3):
            p, dp = p_and_dp(z)
            if dp == 0 or p == 0:
                break
            z = z - p / dp
        roots[i] = z
    return roots


def _cluster(points: list[complex], radius: float) -> list[tuple[complex, int]]:
    """Greedy clustering; returns (mean, multiplicity) pairs."""
    remaining = list(points)
    clusters = []
    while remaining:
        seed = remaining.pop(0)
        group = [seed]
        rest = []
        for z in remaining:
            if abs(z - seed) <= radius:
                group.append(z)
            else:
                rest.append(z)
        remaining = rest
        mean = sum(group) / len(group)
        clusters.append((mean, len(group)))
    return clusters


def complex_roots(f: SparsePoly, cluster_radius: float = ROOT_CLUSTER_RADIUS
                  ) -> list[complex]:
    """All complex roots (with multiplicity) of a univariate polynomial.

    Roots from the simultaneous iteration are cross-checked against the
    companion-matrix eigenvalues; disagreement raises ``ConsistencyError``.
    """
    if f.is_zero():
        raise InvalidInputError("zero polynomial has no well-defined roots")
    used = _used_vars(f)
    if len(used) > 1:
        raise InvalidInputError("complex_roots requires a univariate polynomial")
    if not used:
        raise InvalidInputError("constant polynomial: degree < 1")
    name = next(iter(used))
    i = f.vars.index(name)
    deg = f.degree(name)
    coeffs = [0j] * (deg + 1)
    scale = max(abs(Fraction(c)) for c in f.terms.values())
    for e, c in f.terms.items():
        coeffs[e[i]] = complex(Fraction(c) / scale)
    roots = _aberth_roots(coeffs)
    # cross-check with companion matrix eigenvalues
    np_roots = list(np.roots(np.array(coeffs[::-1], dtype=complex)))
    if len(np_roots) != len(roots):
        raise ConsistencyError("root count mismatch against companion matrix")
    unmatched = list(np_roots)
    for r in roots:
        best = min(range(len(unmatched)), key=lambda k: abs(unmatched[k] - r),
                   default=None)
        if best is None or abs(unmatched[best] - r) > 1e-5 * (1 + abs(r)):
            raise ConsistencyError(
                f"simultaneous-iteration root {r} not confirmed by companion matrix")
        unmatched.pop(best)
    # refine cluster means (mean of a cluster cancels the dominant error term)
    clustered = _cluster(roots, cluster_radius)
    out = []
    for mean, mult in clustered:
        out.extend([mean] * mult)
    return out


def distinct_roots(f: SparsePoly, cluster_radius: float = ROOT_CLUSTER_RADIUS
                   ) -> list[complex]:
    roots = complex_roots(f, cluster_radius)
    return [z for z, _ in _cluster(roots, cluster_radius)]
