"""Two-bridge knot exteriors: presentation, Alexander polynomial,
nonabelian character curve, dihedral census, and trace-function degrees.

Conventions.  The knot of slope p/q (p odd, gcd(p, q) = 1) has the
two-generator presentation  < a, b : a w = w b >  with both generators
meridians and

    w = b^e1 a^e2 b^e3 ... a^e_{p-1},     e_i = (-1)^floor(i*q'/p),

where q' is the odd representative of q mod 2p (q or q + p).  Nonabelian
representations are normalised to

    a -> [[m, 1], [0, 1/m]],    b -> [[m, 0], [t, 1/m]],

so that x = tr a = m + 1/m and z = tr ab = x^2 - 2 + t.  The relation
a w = w b reduces to the single entry equation

    W22 - (1/m - m) W12 = 0,          W = image of w,

because W21 = t W12 holds identically (a consequence of the palindromic
symmetry of the exponent sequence; verified at build time, with a gcd
fallback if it ever failed).  The character curve Phi(x, z) is obtained
by eliminating m against m^2 - x m + 1 and substituting t = z - x^2 + 2;
it is recomputed by an independent numeric interpolation route and the
two results must agree structurally.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from random import Random

import numpy as np

from .errors import ConsistencyError, InvalidInputError
from .mat2 import Mat2, evaluate_word, pair_classify, PairTag
from .polys import (LaurentPoly, SparsePoly, distinct_roots, is_squarefree_in,
                    poly_gcd, resultant, squarefree_part_in)
from .traces import trace_poly
from .words import Word

LIFT_RESIDUAL_TOL = 1e-8
LONGITUDE_COMM_TOL = 1e-7

_MT = ("m", "t")
_XZ = ("x", "z")


@dataclass(frozen=True)
class TwoBridgeKnot:
    """Normalized Schubert parameters: p odd >= 3, 0 < q < p, gcd(p, q) = 1."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0:
            raise InvalidInputError(f"p = {self.p} must be an odd integer >= 3")
        q = self.q % self.p
        if q == 0 or math.gcd(self.p, q) != 1:
            raise InvalidInputError(f"q = {self.q} must be prime to p = {self.p}")
        object.__setattr__(self, "q", q)

    @property
    def is_torus_knot(self) -> bool:
        """True when q = +-1 (mod p): the (p, 2) torus knot; otherwise hyperbolic."""
        return self.q % self.p in (1, self.p - 1)

    @property
    def is_hyperbolic(self) -> bool:
        return not self.is_torus_knot

    def schubert_class(self) -> tuple[int, int]:
        """Canonical representative (p, min(q, q^-1 mod p)) of the knot type."""
        qinv = pow(self.q, -1, self.p)
        return (self.p, min(self.q, qinv))

    def equivalent_to(self, other: "TwoBridgeKnot") -> bool:
        return self.schubert_class() == other.schubert_class()

    def meridian_degree_target(self) -> int:
        return (self.p - 1) // 2


def normalized_knots(p_max: int):
    """All normalized (p, q), odd p in [3, p_max], in deterministic order."""
    for p in range(3, p_max + 1, 2):
        for q in range(1, p):
            if math.gcd(p, q) == 1:
                yield TwoBridgeKnot(p, q)


@dataclass(frozen=True)
class Presentation2B:
    """Relator data for < a, b : a w = w b >."""

    knot: TwoBridgeKnot
    eps: tuple[int, ...]
    q_rep: int          # odd representative of q used in the exponent formula
    w: Word

    @property
    def relator(self) -> Word:
        a = Word((1,))
        b = Word((2,))
        return a * self.w * b.inverse() * self.w.inverse()


def build_presentation(knot: TwoBridgeKnot) -> Presentation2B:
    """Standard alternating presentation word for the knot group.

    An odd representative of q mod 2p keeps the exponent sequence
    palindromic (e_i = e_{p-i}), which downstream algebra relies on.
    """
    p = knot.p
    q = knot.q if knot.q % 2 == 1 else knot.q + p
    eps = tuple((-1) ** ((i * q) // p) for i in range(1, p))
    letters = []
    for i, e in enumerate(eps, start=1):
        g = 2 if i % 2 == 1 else 1   # odd slots are b, even slots are a
        letters.append(g if e == 1 else -g)
    return Presentation2B(knot, eps, q, Word(letters))


def torus_center_word(knot: TwoBridgeKnot) -> Word:
    """The word (a w)^2, central in the group when the knot is a torus knot."""
    if not knot.is_torus_knot:
        raise InvalidInputError("center word only defined for torus knots")
    pres = build_presentation(knot)
    u = Word((1,)) * pres.w
    return u * u


# ---------------------------------------------------------------------------
# Alexander polynomial via free differential calculus
# ---------------------------------------------------------------------------


def _fox_derivative_ab(word: Word, gen: int) -> LaurentPoly:
    """Fox derivative d(word)/d(gen) pushed to Z[t, 1/t] with a, b -> t."""
    out = LaurentPoly.zero("t")
    height = 0  # total exponent of the prefix
    for g in word:
        if g == gen:
            out = out + LaurentPoly.unit("t", height, 1)
        elif g == -gen:
            out = out + LaurentPoly.unit("t", height - 1, -1)
        height += 1 if g > 0 else -1
    return out


def alexander(knot: TwoBridgeKnot) -> LaurentPoly:
    """Alexander polynomial, normalized so D(t) = D(1/t) and D(1) = 1.

    Computed from the Fox derivative of the relator; the postconditions
    D(1) = 1 and |D(-1)| = p are verified and failure is a hard error.
    """
    pres = build_presentation(knot)
    d = _fox_derivative_ab(pres.relator, 1)
    if d.is_zero():
        raise ConsistencyError("vanishing Fox derivative")
    span = d.max_deg() - d.min_deg()
    if span % 2 != 0:
        raise ConsistencyError("Alexander polynomial with odd coefficient span")
    d = d.shift(-(d.max_deg() + d.min_deg()) // 2)
    if not d.is_symmetric():
        raise ConsistencyError("Alexander polynomial failed t <-> 1/t symmetry")
    if abs(d.eval(Fraction(1))) != 1:
        raise ConsistencyError(f"Alexander value at 1 is {d.eval(Fraction(1))},"
                               " expected +-1")
    if d.terms[d.max_deg()] < 0:
        d = -d
    det = abs(d.eval(Fraction(-1)))
    if det != knot.p:
        raise ConsistencyError(f"|Alexander(-1)| = {det} but p = {knot.p}")
    return d


# ---------------------------------------------------------------------------
# character curve
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterCurve:
    """Defining polynomial of the nonabelian character variety slice x = y."""

    knot: TwoBridgeKnot
    poly: SparsePoly                     # primitive, sign-normalized, in (x, z)
    z_degree: int
    square_free: bool
    provenance: str                      # symbolic | numeric-reconstructed | cross-checked
    removed_factors: tuple = field(default=())

    def eval(self, x, z):
        return self.poly.eval({"x": x, "z": z})


def _cleared_generator_matrices():
    def sp(terms):
        return SparsePoly(_MT, terms)
    A = [sp({(2, 0): 1}), sp({(1, 0): 1}), sp({}), sp({(0, 0): 1})]
    Ai = [sp({(0, 0): 1}), sp({(1, 0): -1}), sp({}), sp({(2, 0): 1})]
    B = [sp({(2, 0): 1}), sp({}), sp({(1, 1): 1}), sp({(0, 0): 1})]
    Bi = [sp({(0, 0): 1}), sp({}), sp({(1, 1): -1}), sp({(2, 0): 1})]
    return A, Ai, B, Bi


def _poly_mat_mul(P, Q):
    return [P[0] * Q[0] + P[1] * Q[2], P[0] * Q[1] + P[1] * Q[3],
            P[2] * Q[0] + P[3] * Q[2], P[2] * Q[1] + P[3] * Q[3]]


def _word_matrix_cleared(w: Word):
    """m^len(w) * image of w, with entries in Z[m, t]."""
    A, Ai, B, Bi = _cleared_generator_matrices()
    table = {1: A, -1: Ai, 2: B, -2: Bi}
    W = [SparsePoly.const(_MT, 1), SparsePoly.zero(_MT),
         SparsePoly.zero(_MT), SparsePoly.const(_MT, 1)]
    for g in w:
        W = _poly_mat_mul(W, table[g])
    return W


def _strip_variable_power(h: SparsePoly, index: int) -> tuple[SparsePoly, int]:
    vmin = min(e[index] for e in h.terms)
    if vmin == 0:
        return h, 0
    terms = {tuple(k - (vmin if j == index else 0) for j, k in enumerate(e)): c
             for e, c in h.terms.items()}
    return SparsePoly(h.vars, terms), vmin


def _entry_equation(pres: Presentation2B) -> SparsePoly:
    """The denominator-cleared relation polynomial h(m, t)."""
    W = _word_matrix_cleared(pres.w)
    m = SparsePoly.var(_MT, "m")
    one = SparsePoly.const(_MT, 1)
    t = SparsePoly.var(_MT, "t")
    e1 = W[2] - t * W[1]
    h = m * W[3] - (one - m * m) * W[1]
    if not e1.is_zero():
        # palindromic shortcut failed; fall back to the full system
        h = poly_gcd(e1, h)
    h, _ = _strip_variable_power(h, 0)
    return h.primitive_part()


def _eliminate_to_xz(h: SparsePoly) -> SparsePoly:
    """Resultant against m^2 - x m + 1, then t -> z - x^2 + 2."""
    V = ("m", "t", "x")
    quad = SparsePoly(V, {(2, 0, 0): 1, (1, 0, 1): -1, (0, 0, 0): 1})
    R = resultant(h.with_vars(V), quad, "m").drop_var("m")
    V2 = ("t", "x", "z")
    repl = SparsePoly(V2, {(0, 0, 1): 1, (0, 2, 0): -1, (0, 0, 0): 2})
    return R.with_vars(V2).subs("t", repl).drop_var("t")


def _reducible_lift_check(knot: TwoBridgeKnot, factor: SparsePoly,
                          rng: Random) -> bool:
    """True when generic zeros of the factor only admit reducible lifts."""
    hits = 0
    for _ in range(12):
        x0 = complex(rng.uniform(0.3, 1.8), rng.uniform(0.1, 0.9))
        zs = _univar_roots(factor, "z", {"x": x0})
        for z0 in zs[:2]:
            lifts = lift_representation(knot, x0, z_filter=z0)
            if not lifts:
                continue
            for lift in lifts:
                if pair_classify(lift.a_mat, lift.b_mat) != PairTag.REDUCIBLE:
                    return False
            hits += 1
        if hits >= 3:
            return True
    return hits > 0


def _univar_roots(f: SparsePoly, name: str, values: dict) -> list[complex]:
    """Roots in one variable after numeric substitution of the others."""
    values = {**values, name: 0}
    coeffs = [as_c(c.eval(values)) for c in f.as_univariate(name)]
    while coeffs and abs(coeffs[-1]) <= 1e-12 * max(abs(v) for v in coeffs):
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    return list(np.roots(np.array(coeffs[::-1], dtype=complex)))


def as_c(v) -> complex:
    return complex(v) if not isinstance(v, Fraction) else complex(v)


def _symbolic_curve(knot: TwoBridgeKnot, rng: Random) -> tuple[SparsePoly, tuple]:
    pres = build_presentation(knot)
    h = _entry_equation(pres)
    h, t_power = _strip_variable_power(h, 1)
    removed = []
    if t_power:
        removed.append("z - x^2 + 2")
    F = _eliminate_to_xz(h)
    # drop content independent of z (elimination artifacts in x alone)
    z_coeffs = [c for c in F.as_univariate("z") if not c.is_zero()]
    cont = z_coeffs[0]
    for c in z_coeffs[1:]:
        cont = poly_gcd(cont, c)
        if cont.is_constant():
            break
    if not cont.is_constant():
        F = F.divexact(cont)
    F = squarefree_part_in(F, "z").sign_normalized()
    # guarded removal of components made of reducible characters
    x = SparsePoly.var(_XZ, "x")
    z = SparsePoly.var(_XZ, "z")
    for cand, label in ((z - x * x + 2, "z - x^2 + 2"), (z - 2, "z - 2")):
        if cand.divides(F) and _reducible_lift_check(knot, cand, rng):
            F = F.divexact(cand).sign_normalized()
            removed.append(label)
    return F.sign_normalized(), tuple(removed)


def _numeric_matrices(m0: complex):
    """Generator images with entries as polynomials in t (low-to-high lists)."""
    A = [[m0], [1 + 0j], [0j], [1 / m0]]
    Ai = [[1 / m0], [-1 + 0j], [0j], [m0]]
    B = [[m0], [0j], [0j, 1 + 0j], [1 / m0]]
    Bi = [[1 / m0], [0j], [0j, -1 + 0j], [m0]]
    return {1: A, -1: Ai, 2: B, -2: Bi}


def _tpoly_mul(u, v):
    out = [0j] * (len(u) + len(v) - 1)
    for i, ci in enumerate(u):
        for j, cj in enumerate(v):
            out[i + j] += ci * cj
    return out


def _tpoly_add(u, v):
    out = [0j] * max(len(u), len(v))
    for i, c in enumerate(u):
        out[i] += c
    for i, c in enumerate(v):
        out[i] += c
    return out


def _tpoly_mat_mul(P, Q):
    return [_tpoly_add(_tpoly_mul(P[0], Q[0]), _tpoly_mul(P[1], Q[2])),
            _tpoly_add(_tpoly_mul(P[0], Q[1]), _tpoly_mul(P[1], Q[3])),
            _tpoly_add(_tpoly_mul(P[2], Q[0]), _tpoly_mul(P[3], Q[2])),
            _tpoly_add(_tpoly_mul(P[2], Q[1]), _tpoly_mul(P[3], Q[3]))]


def _entry_equation_numeric(pres: Presentation2B, m0: complex) -> list[complex]:
    """Coefficients (low to high in t) of the relation equation at fixed m."""
    table = _numeric_matrices(m0)
    W = [[1 + 0j], [0j], [0j], [1 + 0j]]
    for g in pres.w:
        W = _tpoly_mat_mul(W, table[g])
    return _tpoly_add(W[3], [-(1 / m0 - m0) * c for c in W[1]])


def _t_roots_at(pres: Presentation2B, x0: complex) -> list[complex]:
    m0 = x0 / 2 + cmath.sqrt(x0 * x0 / 4 - 1)
    eb = _entry_equation_numeric(pres, m0)
    while eb and abs(eb[-1]) <= 1e-13 * max(abs(v) for v in eb):
        eb.pop()
    if len(eb) <= 1:
        return []
    return list(np.roots(np.array(eb[::-1], dtype=complex)))


def _numeric_curve(knot: TwoBridgeKnot) -> SparsePoly:
    """Reconstruct the curve by interpolation over a complex circle of x samples.

    Independent of the symbolic elimination: works from the numeric entry
    equation at >= (degree bound + 2) sample values of x, fits the monic
    z-polynomial of the fiber, interpolates each coefficient, and snaps the
    result to integers.
    """
    pres = build_presentation(knot)
    p = knot.p
    n_nodes = 3 * (p - 1) + 4
    rho = 1.13
    nodes = [rho * cmath.exp(2j * math.pi * k / n_nodes) for k in range(n_nodes)]
    fiber_rows = []
    fiber_deg = None
    for x0 in nodes:
        ts = _t_roots_at(pres, x0)
        zs = [x0 * x0 - 2 + t for t in ts]
        if fiber_deg is None:
            fiber_deg = len(zs)
        if len(zs) != fiber_deg or fiber_deg == 0:
            raise ConsistencyError("numeric fiber degree is unstable across samples")
        mono = np.poly(zs)          # monic, high to low
        fiber_rows.append(mono[::-1][:fiber_deg])
    mu = np.array(fiber_rows)
    terms = {}
    for j in range(fiber_deg):
        dft = np.fft.fft(mu[:, j]) / n_nodes
        for i in range(n_nodes):
            ci = dft[i] / rho ** i
            nearest = round(ci.real)
            if abs(ci - nearest) > 1e-4:
                raise ConsistencyError(
                    f"numeric curve coefficient {ci} (x^{i} z^{j}) is not an integer")
            if nearest != 0:
                terms[(i, j)] = nearest
    terms[(0, fiber_deg)] = 1
    phi = SparsePoly(_XZ, terms)
    # held-out validation: the reconstructed polynomial must vanish on fresh fibers
    for x0 in (1.31 + 0.57j, -0.64 + 1.22j):
        for t in _t_roots_at(pres, x0):
            z0 = x0 * x0 - 2 + t
            scale = sum(abs(Fraction(c)) for c in phi.terms.values())
            if abs(phi.eval({"x": x0, "z": z0})) > 1e-5 * scale:
                raise ConsistencyError("numeric curve fails held-out fiber check")
    return phi.sign_normalized()


@lru_cache(maxsize=None)
def _character_curve_cached(p: int, q: int) -> CharacterCurve:
    knot = TwoBridgeKnot(p, q)
    rng = Random(20_000 + 97 * p + q)
    sym, removed = _symbolic_curve(knot, rng)
    num = _numeric_curve(knot)
    if sym != num:
        raise ConsistencyError(
            "character curve mismatch between symbolic elimination and numeric "
            f"reconstruction for (p, q) = ({p}, {q}):\n  symbolic: {sym}\n"
            f"  numeric:  {num}")
    degz = sym.degree("z")
    target = knot.meridian_degree_target()
    if degz != target:
        raise ConsistencyError(
            f"z-degree of the character curve is {degz}, expected {target}")
    return CharacterCurve(knot=knot, poly=sym, z_degree=degz,
                          square_free=is_squarefree_in(sym, "z"),
                          provenance="cross-checked", removed_factors=removed)


def character_poly(knot: TwoBridgeKnot) -> CharacterCurve:
    """The nonabelian character polynomial Phi(x, z), doubly computed.

    Symbolic elimination and numeric reconstruction must agree structurally;
    any disagreement raises ``ConsistencyError`` (CLI exit code 3).
    """
    return _character_curve_cached(knot.p, knot.q)


# ---------------------------------------------------------------------------
# dihedral census
# ---------------------------------------------------------------------------


def dihedral_census(knot: TwoBridgeKnot) -> list[complex]:
    """The z-values of the irreducible dihedral characters: roots of Phi(0, z).

    A meridian trace of 0 means the meridian image has order 2 in PSL2.
    The count of distinct roots must equal (p - 1)/2 and the slice must be
    square-free by exact gcd; violations are hard failures.
    """
    curve = character_poly(knot)
    phi0 = SparsePoly(("z",),
                      {(e[1],): c for e, c in curve.poly.terms.items() if e[0] == 0})
    target = knot.meridian_degree_target()
    if phi0.is_zero() or phi0.degree("z") != target:
        raise ConsistencyError("dihedral slice Phi(0, z) has wrong degree")
    if not is_squarefree_in(phi0, "z"):
        raise ConsistencyError("dihedral slice Phi(0, z) is not square-free")
    roots = distinct_roots(phi0)
    if len(roots) != target:
        raise ConsistencyError(
            f"dihedral census found {len(roots)} characters, expected {target}")
    return sorted(roots, key=lambda v: (round(v.real, 9), round(v.imag, 9)))


# ---------------------------------------------------------------------------
# lifting points of the curve to explicit representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lift:
    m: complex
    t: complex
    z: complex
    a_mat: Mat2
    b_mat: Mat2
    residual: float
    parabolic_meridian: bool


def lift_representation(knot: TwoBridgeKnot, x: complex,
                        z_filter: complex | None = None,
                        tol: float = LIFT_RESIDUAL_TOL) -> list[Lift]:
    """Explicit matrix representations with meridian trace x.

    Each returned lift satisfies the relator residual bound
    ||rho(a w) - rho(w b)|| <= tol.  An empty list (possible at special x)
    is not an error.
    """
    pres = build_presentation(knot)
    x = complex(x)
    parabolic = abs(x * x - 4) <= 1e-9
    m0 = x / 2 + cmath.sqrt(x * x / 4 - 1)
    eb = _entry_equation_numeric(pres, m0)
    eb_arr = [complex(v) for v in eb]
    while eb_arr and abs(eb_arr[-1]) <= 1e-13 * max(abs(v) for v in eb_arr):
        eb_arr.pop()
    if len(eb_arr) <= 1:
        return []
    ts = np.roots(np.array(eb_arr[::-1], dtype=complex))

    def polish(t0):
        for _ in range(8):
            val = sum(c * t0 ** k for k, c in enumerate(eb_arr))
            dval = sum(k * c * t0 ** (k - 1) for k, c in enumerate(eb_arr) if k)
            if abs(dval) < 1e-14:
                break
            step = val / dval
            t0 = t0 - step
            if abs(step) < 1e-15 * (1 + abs(t0)):
                break
        return t0

    out = []
    for t0 in ts:
        t0 = polish(complex(t0))
        z0 = x * x - 2 + t0
        if z_filter is not None and abs(z0 - z_filter) > 1e-5 * (1 + abs(z_filter)):
            continue
        a_mat = Mat2(m0, 1, 0, 1 / m0)
        b_mat = Mat2(m0, 0, t0, 1 / m0)
        wmat = evaluate_word([a_mat, b_mat], pres.w)
        lhs = a_mat @ wmat
        rhs = wmat @ b_mat
        residual = math.sqrt(sum(abs(u - v) ** 2 for u, v in
                                 zip(lhs.entries(), rhs.entries())))
        residual /= 1.0 + wmat.norm()
        if residual <= tol:
            out.append(Lift(m=m0, t=t0, z=z0, a_mat=a_mat, b_mat=b_mat,
                            residual=residual, parabolic_meridian=parabolic))
    return out


# ---------------------------------------------------------------------------
# longitude
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _longitude_cached(p: int, q: int) -> Word:
    knot = TwoBridgeKnot(p, q)
    pres = build_presentation(knot)
    w = pres.w
    wr = w.reversed()
    a = Word((1,))
    e_total = w.total_exponent()
    e_a = w.exponent_sum(1)
    candidates = [w * wr * a ** (-2 * e_total),
                  wr * w * a ** (-2 * e_total),
                  w * wr * a ** (-2 * e_a),
                  wr * w * a ** (-2 * e_a)]
    rng = Random(31_000 + 97 * p + q)
    samples = _sample_irreducible_lifts(knot, rng, want=20)
    for lam in candidates:
        if lam.total_exponent() != 0:
            continue
        if _commutes_on_samples(lam, samples):
            return lam
    raise ConsistencyError("no candidate longitude word passed the "
                           "meridian-commutation check")


def _sample_irreducible_lifts(knot: TwoBridgeKnot, rng: Random, want: int):
    samples = []
    guard = 0
    while len(samples) < want and guard < 200:
        guard += 1
        x0 = complex(rng.uniform(-1.8, 1.8), rng.uniform(-1.2, 1.2))
        if abs(x0 * x0 - 4) < 0.05:
            continue
        for lift in lift_representation(knot, x0):
            if pair_classify(lift.a_mat, lift.b_mat) not in (
                    PairTag.REDUCIBLE, PairTag.DIAGONALIZABLE):
                samples.append(lift)
                if len(samples) >= want:
                    break
    if not samples:
        raise ConsistencyError("could not sample irreducible representations")
    return samples


def _commutes_on_samples(lam: Word, samples) -> bool:
    for lift in samples:
        gens = [lift.a_mat, lift.b_mat]
        lmat = evaluate_word(gens, lam)
        amat = gens[0]
        comm = lmat @ amat @ lmat.inv() @ amat.inv()
        dev = math.sqrt(sum(abs(u - v) ** 2 for u, v in
                            zip(comm.entries(), Mat2.identity().entries())))
        if dev / (1.0 + lmat.norm()) > LONGITUDE_COMM_TOL:
            return False
    return True


def longitude_word(knot: TwoBridgeKnot) -> Word:
    """A nullhomologous peripheral word commuting with the meridian a.

    Tries w * reverse(w) * a^(-2e) and close variants; the machine-checked
    commutation on sampled irreducible representations is the contract, the
    formula itself is only a candidate generator.
    """
    return _longitude_cached(knot.p, knot.q)


# ---------------------------------------------------------------------------
# trace-function degree on the curve
# ---------------------------------------------------------------------------


def _tau_xx(w: Word) -> SparsePoly:
    """tau_w specialised to both meridian traces equal: vars (x, z)."""
    tau = trace_poly(w)
    terms = {}
    for (i, j, k), c in tau.terms.items():
        key = (i + j, k)
        terms[key] = terms.get(key, 0) + c
    return SparsePoly(_XZ, terms)


def _count_fiber(curve: CharacterCurve, g: SparsePoly, c: complex,
                 cluster: float = 1e-6) -> int:
    """Number of geometric solutions of {Phi = 0, g = c}."""
    phi = curve.poly
    if g.degree("z") <= 0:
        gx = SparsePoly(("x",), {(e[0],): v for e, v in g.terms.items()})
        coeffs = [complex(Fraction(v)) for v in
                  (cf.constant_value() for cf in gx.as_univariate("x"))]
        coeffs[0] -= c
        xs = np.roots(np.array(coeffs[::-1], dtype=complex))
        xs = _dedupe(list(xs), cluster)
        total = 0
        for x0 in xs:
            zs = _univar_roots(phi, "z", {"x": x0})
            total += len(_dedupe(zs, cluster))
        return total
    if not isinstance(c, Fraction):
        raise InvalidInputError("resultant branch needs a rational constant")
    gc = g - SparsePoly.const(_XZ, c)
    res = resultant(phi, gc, "z")
    xs = _dedupe(_univar_roots_of_univar(res, "x"), cluster)
    total = 0
    for x0 in xs:
        zs = _univar_roots(phi, "z", {"x": x0})
        good = [z0 for z0 in zs
                if abs(gc.eval({"x": x0, "z": z0})) <= 1e-6 * (1 + abs(x0) + abs(z0)) ** g.total_degree()]
        total += len(_dedupe(good, cluster))
    return total


def _univar_roots_of_univar(f: SparsePoly, name: str) -> list[complex]:
    coeffs = [complex(Fraction(c.constant_value())) for c in f.as_univariate(name)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    return list(np.roots(np.array(coeffs[::-1], dtype=complex)))


def _dedupe(points: list[complex], radius: float) -> list[complex]:
    out: list[complex] = []
    for z in points:
        if not any(abs(z - u) <= radius * (1 + abs(z)) for u in out):
            out.append(complex(z))
    return out


def cs_degree(knot: TwoBridgeKnot, w: Word, seed: int = 0) -> int:
    """Degree of the trace function of w on the full nonabelian curve.

    Counts the generic fiber of tau_w^2 - 4 over the curve Phi = 0 and
    halves it: the defining polynomial lives on the SL2 slice x = y, whose
    two-to-one sign identification (x, z) ~ (-x, z) realises the PSL2
    curve.  Three random fiber constants must give the same count.
    """
    if w.is_identity():
        return 0
    curve = character_poly(knot)
    g = _tau_xx(w)
    g = g * g - 4
    rng = Random(500_000 + 1009 * knot.p + knot.q + seed)
    z_free = g.degree("z") <= 0
    for attempt in range(4):
        counts = []
        for _ in range(3):
            if z_free:
                c = complex(rng.uniform(2.0, 9.0), rng.uniform(1.0, 5.0))
            else:
                c = Fraction(rng.randint(200, 900), rng.randint(7, 13))
            counts.append(_count_fiber(curve, g, c))
        if len(set(counts)) == 1 and counts[0] % 2 == 0:
            return counts[0] // 2
    raise ConsistencyError(f"unstable generic fiber count {counts} for {w}")
