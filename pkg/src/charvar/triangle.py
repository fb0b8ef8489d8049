"""Triangle groups and twist-knot epimorphism searches.

The Euclidean (2, 3, 6) group is built in exact Q(sqrt 3) arithmetic, so
every relation test in the epimorphism search is an equality of field
elements, with no tolerances.  Hyperbolic (p, q, r) groups are realised
numerically by rotations about the vertices of a geodesic triangle in the
unit disk, then conjugated into SL2(R) form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ConsistencyError, InvalidInputError
from .mat2 import Mat2, evaluate_word, proj_distance
from .scalars import ExactComplex, quad
from .traces import FrickePoint
from .twobridge import TwoBridgeKnot, character_poly
from .words import Word

HYPERBOLIC_BUILD_TOL = 1e-10
SCENARIO_RESIDUAL_TOL = 1e-8

_EC_ONE = ExactComplex.of(1, 0)
_EC_ZERO = ExactComplex.of(0, 0)


@dataclass(frozen=True)
class EuclIsom:
    """Orientation-preserving Euclidean isometry z -> R z + v, exact over Q(sqrt 3)."""

    rot: ExactComplex
    trans: ExactComplex

    def __post_init__(self):
        if self.rot.norm2() != quad(1):
            raise InvalidInputError("rotation part must have unit norm")

    @classmethod
    def identity(cls) -> "EuclIsom":
        return cls(_EC_ONE, _EC_ZERO)

    @classmethod
    def rotation(cls, rot: ExactComplex, center: ExactComplex) -> "EuclIsom":
        # z -> R(z - c) + c
        return cls(rot, center - rot * center)

    def __mul__(self, other: "EuclIsom") -> "EuclIsom":
        return EuclIsom(self.rot * other.rot, self.rot * other.trans + self.trans)

    def inverse(self) -> "EuclIsom":
        rinv = self.rot.inverse()
        return EuclIsom(rinv, -(rinv * self.trans))

    def __pow__(self, n: int) -> "EuclIsom":
        if n < 0:
            return self.inverse() ** (-n)
        out = EuclIsom.identity()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def is_identity(self) -> bool:
        return self.rot == _EC_ONE and self.trans.is_zero()

    def is_translation(self) -> bool:
        return self.rot == _EC_ONE and not self.trans.is_zero()

    def rotation_order(self, cap: int = 24) -> int | None:
        """Order of the rotation part (None if it exceeds the cap)."""
        r = _EC_ONE
        for k in range(1, cap + 1):
            r = r * self.rot
            if r == _EC_ONE:
                return k
        return None

    def fixed_point(self) -> ExactComplex:
        if self.rot == _EC_ONE:
            raise InvalidInputError("translations have no fixed point")
        return self.trans * (_EC_ONE - self.rot).inverse()


def eucl_word(gens: list[EuclIsom], w: Word) -> EuclIsom:
    out = EuclIsom.identity()
    for g in w:
        m = gens[abs(g) - 1]
        out = out * (m if g > 0 else m.inverse())
    return out


@dataclass(frozen=True)
class TriangleGroup:
    """Rotation triangle group with generators x, y and z = (xy)^-1."""

    pqr: tuple[int, int, int]
    geometry: str                       # "euclidean" | "hyperbolic"
    x: object                           # EuclIsom or Mat2
    y: object
    z: object


def _rot_exact(numerator: int, denominator: int) -> ExactComplex:
    """exp(i pi numerator/denominator) for angles in the (2,3,6) lattice."""
    angle = Fraction(numerator, denominator) % 2
    table = {
        Fraction(0): (1, 0, 0, 0), Fraction(1): (-1, 0, 0, 0),
        Fraction(1, 3): (Fraction(1, 2), 0, 0, Fraction(1, 2)),
        Fraction(2, 3): (-Fraction(1, 2), 0, 0, Fraction(1, 2)),
        Fraction(4, 3): (-Fraction(1, 2), 0, 0, -Fraction(1, 2)),
        Fraction(5, 3): (Fraction(1, 2), 0, 0, -Fraction(1, 2)),
    }
    if angle not in table:
        raise InvalidInputError(f"angle pi*{angle} is outside the exact table")
    ra, rb, ia, ib = table[angle]
    return ExactComplex(quad(ra, rb), quad(ia, ib))


def build_euclidean_236() -> TriangleGroup:
    """The orientation-preserving (2, 3, 6) triangle group, exactly.

    Vertices of the base triangle: the order-6 point at the origin, the
    order-2 point at 1, and the order-3 point at 1 + i/sqrt(3).  x is the
    half turn, y the order-3 rotation, chosen so that xy is a rotation by
    pi/3 (order 6) and v = x (yx)^3 is a nontrivial translation.
    """
    p_half = ExactComplex.of(1, 0)
    p_third = ExactComplex(quad(1), quad(0, Fraction(1, 3)))
    x = EuclIsom.rotation(_rot_exact(1, 1), p_half)
    y = EuclIsom.rotation(_rot_exact(-2, 3), p_third)
    xy = x * y
    if not (x * x).is_identity() or not (y ** 3).is_identity():
        raise ConsistencyError("generator orders broken in exact build")
    if (xy.rotation_order() or 0) != 6:
        raise ConsistencyError("xy must be a rotation of order 6")
    if xy.rot != _rot_exact(1, 3):
        raise ConsistencyError("xy must rotate by pi/3")
    yx = y * x
    if xy.fixed_point() == yx.fixed_point():
        raise ConsistencyError("xy and yx must rotate about distinct points")
    v = x * (yx ** 3)
    if not v.is_translation():
        raise ConsistencyError("x (yx)^3 must be a nontrivial translation")
    return TriangleGroup((2, 3, 6), "euclidean", x, y, xy.inverse())


def is_hyperbolic_triple(p: int, q: int, r: int) -> bool:
    return Fraction(1, p) + Fraction(1, q) + Fraction(1, r) < 1


def _disk_rotation(angle: float, center: complex) -> Mat2:
    """Rotation of the unit disk by ``angle`` about an interior point."""
    half = angle / 2.0
    k = Mat2(cmath.exp(1j * half), 0, 0, cmath.exp(-1j * half))
    s = 1.0 / math.sqrt(1.0 - abs(center) ** 2)
    t = Mat2(s, -center * s, -center.conjugate() * s, s)      # center -> 0
    return t.inv() @ k @ t


def _disk_to_upper_half_plane(m: Mat2) -> Mat2:
    """Conjugate a disk-model isometry to SL2(R) via the Cayley transform."""
    s = 1.0 / math.sqrt(2.0)
    cayley = Mat2(s, s * 1j, s * 1j, s)    # maps upper half plane -> disk
    out = cayley.inv() @ m @ cayley
    entries = list(out.entries())
    if any(abs(e.imag) > 1e-9 * (1.0 + abs(e)) for e in entries):
        raise ConsistencyError("disk isometry did not conjugate into SL2(R)")
    return Mat2.normalized(*(e.real for e in entries))


def build_hyperbolic(p: int, q: int, r: int) -> TriangleGroup:
    """Rotation (p, q, r) triangle group as SL2(R) matrices.

    Generators are rotations by 2 pi/p and 2 pi/q about two vertices of the
    geodesic triangle with angles pi/p, pi/q, pi/r, placed with the first
    vertex at the disk origin and the second on the positive real axis.
    Generator traces and the defining relations are verified to 1e-10.
    """
    if min(p, q, r) < 2:
        raise InvalidInputError("triangle orders must be >= 2")
    if not is_hyperbolic_triple(p, q, r):
        raise InvalidInputError(f"(1/{p} + 1/{q} + 1/{r}) >= 1: not hyperbolic")
    alpha, beta, gamma = math.pi / p, math.pi / q, math.pi / r
    cosh_c = (math.cos(alpha) * math.cos(beta) + math.cos(gamma)) / \
        (math.sin(alpha) * math.sin(beta))
    c = math.acosh(cosh_c)
    b_pos = math.tanh(c / 2.0)
    best = None
    for s1 in (1, -1):
        for s2 in (1, -1):
            xd = _disk_rotation(s1 * 2 * alpha, 0j)
            yd = _disk_rotation(s2 * 2 * beta, complex(b_pos, 0))
            tr = abs((xd @ yd).trace())
            err = abs(tr - 2 * math.cos(gamma))
            if best is None or err < best[0]:
                best = (err, xd, yd)
    err, xd, yd = best
    if err > HYPERBOLIC_BUILD_TOL:
        raise ConsistencyError(f"triangle closure residual {err} too large")
    x = _disk_to_upper_half_plane(xd)
    y = _disk_to_upper_half_plane(yd)
    z = (x @ y).inv()
    for mat, order, name in ((x, p, "x"), (y, q, "y"), (z, r, "z")):
        dev = proj_distance(mat.power(order), Mat2.identity())
        if dev > HYPERBOLIC_BUILD_TOL * (1 + mat.norm() ** order):
            raise ConsistencyError(f"{name}^{order} != +-I (residual {dev})")
    return TriangleGroup((p, q, r), "hyperbolic", x, y, z)


# ---------------------------------------------------------------------------
# twist knots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistKnotGroup:
    """< a, b : a w^n = w^n b > with w = a b^-1 a^-1 b.

    n = 1 is the trefoil, n = -1 the figure-eight knot; n = 0 (the trivial
    knot) is rejected.
    """

    n: int

    def __post_init__(self):
        if self.n == 0:
            raise InvalidInputError("n = 0 gives the trivial knot")

    @property
    def commutator_word(self) -> Word:
        return Word.from_string("aBAb")

    def two_bridge_form(self) -> TwoBridgeKnot | None:
        """The Schubert form for the two classical cases, else None."""
        if self.n == 1:
            return TwoBridgeKnot(3, 1)
        if self.n == -1:
            return TwoBridgeKnot(5, 3)
        return None


def euclidean_epi_search(n_values: Iterable[int]) -> set[int]:
    """Twist-knot parameters n admitting the order-6 meridian assignment
    onto the Euclidean (2, 3, 6) group, tested exactly.

    The candidate assignments are a -> xy and b -> (xy)^-j (yx) (xy)^j for
    j in {0, 1, 2}; the relation a w^n = w^n b is evaluated in exact
    Q(sqrt 3) arithmetic.
    """
    grp = build_euclidean_236()
    xy = grp.x * grp.y
    yx = grp.y * grp.x
    hits: set[int] = set()
    for n in n_values:
        if n == 0:
            raise InvalidInputError("0 is not a twist-knot parameter")
        for j in range(3):
            conj = xy ** (-j)
            rho_a = xy
            rho_b = conj * yx * conj.inverse()
            w = rho_a * rho_b.inverse() * rho_a.inverse() * rho_b
            wn = w ** n
            if (rho_a * wn) == (wn * rho_b):
                hits.add(n)
                break
    return hits


@dataclass(frozen=True)
class ScenarioReport:
    n: int
    scenario: str
    pqr: tuple[int, int, int]
    s: int
    residual: float
    satisfied: bool
    fricke: FrickePoint


def knapp_scenario_check(n: int, scenario: str, q: int, r: int, s: int,
                         tol: float = SCENARIO_RESIDUAL_TOL) -> ScenarioReport:
    """Residual of the twist-knot relation under one normal-form assignment.

    Scenario "a" on the (2, q, r) group (r >= 3 odd): a -> y^s, b -> x y^s x^-1
    with gcd(s, q) = 1.  Scenario "b" on the (2, 3, r) group (r >= 7 odd):
    a -> z^s, b -> (y x y^-1) z^s (y x y^-1) with gcd(s, r) = 1.  The
    reported residual is min over SL2 lift signs of
    ||rho(a) rho(w)^n - rho(w)^n rho(b)||.
    """
    if n == 0:
        raise InvalidInputError("n must be nonzero")
    if scenario == "a":
        if r < 3 or r % 2 == 0:
            raise InvalidInputError("scenario (a) needs odd r >= 3")
        if q < 2 or math.gcd(s, q) != 1:
            raise InvalidInputError("scenario (a) needs gcd(s, q) = 1, q >= 2")
        grp = build_hyperbolic(2, q, r)
        rho_a = grp.y.power(s)
        rho_b = rho_a.conjugated_by(grp.x)
    elif scenario == "b":
        if q != 3:
            raise InvalidInputError("scenario (b) lives on (2, 3, r)")
        if r < 7 or r % 2 == 0:
            raise InvalidInputError("scenario (b) needs odd r >= 7")
        if math.gcd(s, r) != 1:
            raise InvalidInputError("scenario (b) needs gcd(s, r) = 1")
        grp = build_hyperbolic(2, 3, r)
        rho_a = grp.z.power(s)
        u = grp.y @ grp.x @ grp.y.inv()
        rho_b = rho_a.conjugated_by(u)
    else:
        raise InvalidInputError(f"unknown scenario {scenario!r}")
    w = rho_a @ rho_b.inv() @ rho_a.inv() @ rho_b
    wn = w.power(n)
    lhs = rho_a @ wn
    rhs = wn @ rho_b
    residual = proj_distance(lhs, rhs) / (1.0 + wn.norm())
    fricke = FrickePoint(complex(rho_a.trace()), complex(rho_b.trace()),
                         complex((rho_a @ rho_b).trace()))
    return ScenarioReport(n=n, scenario=scenario, pqr=grp.pqr, s=s,
                          residual=residual, satisfied=residual <= tol,
                          fricke=fricke)


def hyperbolic_epi_scan(n_values: Iterable[int], max_order: int = 12,
                        tol: float = SCENARIO_RESIDUAL_TOL) -> list[ScenarioReport]:
    """Scan both scenarios over all valid parameters with orders <= max_order."""
    reports = []
    n_list = [n for n in n_values if n != 0]
    for n in n_list:
        for q in range(2, max_order + 1):
            for r in range(3, max_order + 1, 2):
                if not is_hyperbolic_triple(2, q, r):
                    continue
                for s in range(1, q):
                    if math.gcd(s, q) == 1:
                        reports.append(knapp_scenario_check(n, "a", q, r, s, tol))
        for r in range(7, max_order + 1, 2):
            if not is_hyperbolic_triple(2, 3, r):
                continue
            for s in range(1, r):
                if math.gcd(s, r) == 1:
                    reports.append(knapp_scenario_check(n, "b", 3, r, s, tol))
    return reports


def scenario_point_on_twist_curve(report: ScenarioReport) -> float | None:
    """|Phi| at the induced Fricke point when n = +-1 (cross-module check).

    The satisfied scenarios for n = 1 (trefoil) and n = -1 (figure eight)
    must land on the corresponding two-bridge character curve; the minimum
    over the lift sign orbit is returned, or None for other n.
    """
    knot = TwistKnotGroup(report.n).two_bridge_form()
    if knot is None:
        return None
    curve = character_poly(knot)
    x, z = report.fricke.x, report.fricke.z
    # lift-sign orbit on the x = y slice: both meridian signs flip together,
    # so (x, z) ~ (-x, z); at x = 0 single flips also keep the slice
    candidates = [(x, z), (-x, z)]
    if abs(x) <= 1e-8:
        candidates += [(x, -z), (-x, -z)]
    return min(abs(curve.eval(cx, cz)) for cx, cz in candidates)
