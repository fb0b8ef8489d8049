"""Unit-determinant 2x2 matrices, Moebius geometry on CP^1, and the
classification of single isometries and of representation pairs.

A PSL2 element is the pair {M, -M}; every operation here that makes a
PSL2-level claim is invariant under a global sign flip of its inputs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (DegeneratePairError, InvalidInputError,
                     ZeroTranslationError)
from .scalars import REL_TOL, as_complex, is_exact
from .words import Word

CHORDAL_TOL = 1e-8  # point matching tolerance on CP^1
ELLIPTIC_ORDER_CAP = 10 ** 6
ELLIPTIC_ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix with determinant 1 (exactly, or within tolerance)."""

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if is_exact(self.a) and is_exact(self.b) and is_exact(self.c) and is_exact(self.d):
            if det != 1:
                raise InvalidInputError(f"determinant is {det}, must be 1")
        else:
            # det is quadratic in the entries, so the drift budget scales
            # with the squared entry size
            scale = 1.0 + max(abs(as_complex(e)) for e in
                              (self.a, self.b, self.c, self.d)) ** 2
            if abs(as_complex(det) - 1) > 1e-7 * scale:
                raise InvalidInputError(f"determinant {det} not within tolerance of 1")

    # -- constructors --------------------------------------------------

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def diag(cls, u, v) -> "Mat2":
        return cls(u, 0, 0, v)

    @classmethod
    def normalized(cls, a, b, c, d) -> "Mat2":
        """Scale floating entries so the determinant is exactly-ish 1."""
        det = as_complex(a * d - b * c)
        if det == 0:
            raise InvalidInputError("singular matrix cannot be normalized")
        s = cmath.sqrt(det)
        return cls(as_complex(a) / s, as_complex(b) / s,
                   as_complex(c) / s, as_complex(d) / s)

    # -- algebra --------------------------------------------------------

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d)

    def inv(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def power(self, n: int) -> "Mat2":
        if n < 0:
            return self.inv().power(-n)
        result = Mat2.identity()
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def trace(self):
        return self.a + self.d

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def to_complex(self) -> "Mat2":
        return Mat2(*(as_complex(e) for e in self.entries()))

    def conjugated_by(self, s: "Mat2") -> "Mat2":
        return s @ self @ s.inv()

    def norm(self) -> float:
        return math.sqrt(sum(abs(as_complex(e)) ** 2 for e in self.entries()))

    def __repr__(self):
        return f"Mat2[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def mat_close(m: Mat2, n: Mat2, tol: float = REL_TOL) -> bool:
    scale = 1.0 + max(m.norm(), n.norm())
    return all(abs(as_complex(x) - as_complex(y)) <= tol * scale
               for x, y in zip(m.entries(), n.entries()))


def proj_close(m: Mat2, n: Mat2, tol: float = REL_TOL) -> bool:
    """Equality in PSL2: m close to n or to -n."""
    return mat_close(m, n, tol) or mat_close(m, -n, tol)


def is_pm_identity(m: Mat2, tol: float = REL_TOL) -> bool:
    return proj_close(m, Mat2.identity(), tol)


def proj_distance(m: Mat2, n: Mat2) -> float:
    """min(|M - N|, |M + N|), the PSL2-level deviation."""
    d1 = math.sqrt(sum(abs(as_complex(x) - as_complex(y)) ** 2
                       for x, y in zip(m.entries(), n.entries())))
    d2 = math.sqrt(sum(abs(as_complex(x) + as_complex(y)) ** 2
                       for x, y in zip(m.entries(), n.entries())))
    return min(d1, d2)


def evaluate_word(gens: Sequence[Mat2], w: Word) -> Mat2:
    """Image of a word under generator images gens[0], gens[1], ..."""
    out = Mat2.identity()
    for g in w:
        m = gens[abs(g) - 1]
        out = out @ (m if g > 0 else m.inv())
    return out


# ---------------------------------------------------------------------------
# CP^1 points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjPoint:
    """Point of CP^1 in normalized homogeneous coordinates (u : v)."""

    u: complex
    v: complex

    @classmethod
    def of(cls, z) -> "ProjPoint":
        z = as_complex(z)
        n = math.sqrt(abs(z) ** 2 + 1.0)
        return cls(z / n, 1.0 / n)

    @classmethod
    def infinity(cls) -> "ProjPoint":
        return cls(1.0 + 0j, 0j)

    @property
    def is_infinity(self) -> bool:
        return abs(self.v) <= CHORDAL_TOL * abs(self.u)

    def value(self) -> complex:
        if self.is_infinity:
            raise InvalidInputError("point at infinity has no affine value")
        return self.u / self.v

    def __repr__(self):
        return "ProjPoint(inf)" if self.is_infinity else f"ProjPoint({self.value():.6g})"


def chordal(p: ProjPoint, q: ProjPoint) -> float:
    """Chordal distance |u1 v2 - u2 v1| for normalized representatives."""
    n1 = math.sqrt(abs(p.u) ** 2 + abs(p.v) ** 2)
    n2 = math.sqrt(abs(q.u) ** 2 + abs(q.v) ** 2)
    return abs(p.u * q.v - q.u * p.v) / (n1 * n2)


def apply_moebius(m: Mat2, p: ProjPoint) -> ProjPoint:
    mc = m.to_complex()
    u = mc.a * p.u + mc.b * p.v
    v = mc.c * p.u + mc.d * p.v
    n = math.sqrt(abs(u) ** 2 + abs(v) ** 2)
    if n == 0:
        raise InvalidInputError("matrix annihilates a projective point")
    return ProjPoint(u / n, v / n)


# ---------------------------------------------------------------------------
# isometry classification
# ---------------------------------------------------------------------------


class IsomTag(Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


@dataclass(frozen=True)
class IsomClass:
    tag: IsomTag
    order: Optional[int] = None          # PSL2 order for elliptic; None if irrational
    length: Optional[float] = None       # translation length for loxodromic

    def __repr__(self):
        if self.tag is IsomTag.ELLIPTIC:
            return f"IsomClass(elliptic, order={self.order or 'irrational'})"
        if self.tag is IsomTag.LOXODROMIC:
            return f"IsomClass(loxodromic, length={self.length:.9g})"
        return f"IsomClass({self.tag.value})"


def _elliptic_order(theta_over_pi: float) -> Optional[int]:
    """Least m with m*theta == 0 mod pi, within tolerance, or None."""
    frac = Fraction(theta_over_pi).limit_denominator(ELLIPTIC_ORDER_CAP)
    m = frac.denominator
    if abs(m * theta_over_pi - round(m * theta_over_pi)) <= ELLIPTIC_ANGLE_TOL * m:
        return max(m, 1)
    return None


def classify_isometry(m: Mat2, tol: float = REL_TOL) -> IsomClass:
    """Identity / parabolic / elliptic (with PSL2 order) / loxodromic.

    The answer is a PSL2 invariant: it only consults tr^2 and +-I tests.
    """
    if is_pm_identity(m, tol):
        return IsomClass(IsomTag.IDENTITY)
    tr = as_complex(m.trace())
    t2 = tr * tr
    scale = 1.0 + abs(t2)
    if abs(t2 - 4) <= tol * scale:
        return IsomClass(IsomTag.PARABOLIC)
    if abs(t2.imag) <= tol * scale and -tol * scale <= t2.real < 4:
        c = math.sqrt(max(t2.real, 0.0)) / 2.0
        theta = math.acos(min(max(c, -1.0), 1.0))
        order = _elliptic_order(theta / math.pi)
        if order is not None and order < 2:
            order = 2  # theta = pi/2 with rounding; a non-identity rotation
        return IsomClass(IsomTag.ELLIPTIC, order=order)
    lam = tr / 2 + cmath.sqrt(t2 / 4 - 1)
    if abs(lam) < 1:
        lam = 1 / lam
    return IsomClass(IsomTag.LOXODROMIC, length=2.0 * math.log(abs(lam)))


def translation_length(m: Mat2, tol: float = REL_TOL) -> float:
    """2 log|lambda| for the eigenvalue with |lambda| >= 1.

    Defined for loxodromic input only; elliptic/parabolic/identity raise
    ``ZeroTranslationError``.  For real-trace hyperbolics this inverts
    2 cosh(l/2) = |tr|.
    """
    cls = classify_isometry(m, tol)
    if cls.tag is not IsomTag.LOXODROMIC:
        raise ZeroTranslationError(f"{cls.tag.value} isometry has zero translation length")
    return cls.length


def fixed_points(m: Mat2, tol: float = REL_TOL) -> list[ProjPoint]:
    """The one or two fixed points of the Moebius action on CP^1."""
    if is_pm_identity(m, tol):
        raise InvalidInputError("identity fixes the whole sphere")
    mc = m.to_complex()
    a, b, c, d = mc.a, mc.b, mc.c, mc.d
    scale = 1.0 + max(abs(a), abs(b), abs(c), abs(d))
    cls = classify_isometry(m, tol)
    parabolic = cls.tag is IsomTag.PARABOLIC
    if abs(c) <= tol * scale:
        if parabolic:
            return [ProjPoint.infinity()]
        return [ProjPoint.infinity(), ProjPoint.of(b / (d - a))]
    if parabolic:
        return [ProjPoint.of((a - d) / (2 * c))]
    disc = cmath.sqrt((a - d) ** 2 + 4 * b * c)
    z1 = (a - d + disc) / (2 * c)
    z2 = (a - d - disc) / (2 * c)
    return [ProjPoint.of(z1), ProjPoint.of(z2)]


# ---------------------------------------------------------------------------
# pair classification
# ---------------------------------------------------------------------------


class PairTag(Enum):
    REDUCIBLE = "reducible"
    DIAGONALIZABLE = "diagonalizable"
    N_CONJUGATE = "N-conjugate-not-D"
    STRICTLY_IRREDUCIBLE = "strictly-irreducible"
    IRREDUCIBLE_FINITE = "irreducible-not-strict-finite-image"


def _common_points(ps: list[ProjPoint], qs: list[ProjPoint],
                   tol: float) -> list[ProjPoint]:
    return [p for p in ps if any(chordal(p, q) <= tol for q in qs)]


def _preserves_set(m: Mat2, pts: list[ProjPoint], tol: float) -> bool:
    images = [apply_moebius(m, p) for p in pts]
    for img in images:
        if not any(chordal(img, p) <= tol for p in pts):
            return False
    return True


def pair_classify(m1: Mat2, m2: Mat2, tol: float = CHORDAL_TOL) -> PairTag:
    """Classify the pair action on CP^1 by its smallest invariant set.

    * a common fixed point        -> reducible
    * >= 2 common fixed points    -> diagonalizable (conjugate into the
      diagonal subgroup)
    * an invariant 2-point set    -> conjugate into the diagonal-or-
      antidiagonal subgroup; tagged by whether the image group is finite
    * none of the above           -> strictly irreducible
    """
    id1 = is_pm_identity(m1)
    id2 = is_pm_identity(m2)
    if id1 and id2:
        raise DegeneratePairError("both matrices are +-I")
    if id1 or id2:
        g = m2 if id1 else m1
        fp = fixed_points(g)
        return PairTag.REDUCIBLE if len(fp) == 1 else PairTag.DIAGONALIZABLE

    f1 = fixed_points(m1)
    f2 = fixed_points(m2)
    common = _common_points(f1, f2, tol)
    if len(common) >= 2:
        return PairTag.DIAGONALIZABLE
    if len(common) == 1:
        return PairTag.REDUCIBLE

    # irreducible: hunt for an invariant 2-point set
    two_set = None
    if len(f1) == 2 and _preserves_set(m2, f1, tol):
        two_set = f1
    elif len(f2) == 2 and _preserves_set(m1, f2, tol):
        two_set = f2
    else:
        sq1 = is_pm_identity(m1.power(2))
        sq2 = is_pm_identity(m2.power(2))
        if sq1 and sq2:
            prod = m1 @ m2
            if not is_pm_identity(prod):
                cls = classify_isometry(prod)
                if cls.tag is not IsomTag.PARABOLIC:
                    cand = fixed_points(prod)
                    if len(cand) == 2 and _preserves_set(m1, cand, tol) \
                            and _preserves_set(m2, cand, tol):
                        two_set = cand
    if two_set is None:
        return PairTag.STRICTLY_IRREDUCIBLE

    # the index-<=2 "rotation" subgroup decides finiteness of the image
    def fixes_pointwise(m):
        return all(chordal(apply_moebius(m, p), p) <= tol for p in two_set)

    if fixes_pointwise(m1):
        rot = m1
    elif fixes_pointwise(m2):
        rot = m2
    else:
        rot = m1 @ m2
    if is_pm_identity(rot):
        return PairTag.IRREDUCIBLE_FINITE
    cls = classify_isometry(rot)
    if cls.tag is IsomTag.ELLIPTIC and cls.order is not None:
        return PairTag.IRREDUCIBLE_FINITE
    return PairTag.N_CONJUGATE


def jorgensen_test(m1: Mat2, m2: Mat2) -> bool:
    """The necessary inequality |tr^2(A) - 4| + |tr[A,B] - 2| >= 1.

    ``False`` certifies that the group generated is not both discrete and
    non-elementary; ``True`` is inconclusive.
    """
    a = m1.to_complex()
    b = m2.to_complex()
    tr_a = a.trace()
    comm = a @ b @ a.inv() @ b.inv()
    value = abs(tr_a * tr_a - 4) + abs(comm.trace() - 2)
    return value >= 1.0 - 1e-12


def common_fixed_points(mats: Sequence[Mat2], tol: float = CHORDAL_TOL
                        ) -> Optional[list[ProjPoint]]:
    """Points of CP^1 fixed by every matrix in the list.

    Returns None when every matrix is +-I (whole sphere fixed).
    """
    nontrivial = [m for m in mats if not is_pm_identity(m)]
    if not nontrivial:
        return None
    pts = fixed_points(nontrivial[0])
    for m in nontrivial[1:]:
        pts = _common_points(pts, fixed_points(m), tol)
        if not pts:
            break
    return pts
