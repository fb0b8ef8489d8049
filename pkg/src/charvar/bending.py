"""Bending deformations of representations of amalgams and HNN extensions
over abelian edge groups.

A representation of Gamma_1 *_{Gamma_0} Gamma_2 is bent by conjugating the
Gamma_2 side by an element S of the identity component of the centraliser
of the edge image; for an HNN extension the stable letter A is replaced by
A S.  The module decides, structurally and exactly, whether the bending
family of characters is constant, and cross-validates the verdict by
sampling; a disagreement between the two is a hard failure.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum
from random import Random
from typing import Optional, Sequence

from .errors import ConsistencyError, InvalidInputError
from .mat2 import (Mat2, apply_moebius, chordal, classify_isometry,
                   common_fixed_points, evaluate_word, fixed_points,
                   is_pm_identity, proj_close, proj_distance, IsomTag)
from .words import Word

CHAR_MATCH_TOL = 1e-8       # per-word relative tolerance for character equality
WITNESS_GAP = 1e-3          # a nonconstant verdict must produce this much variation
SAMPLE_COUNT = 100
WORD_COUNT = 50
WORD_LENGTH_CAP = 12


# ---------------------------------------------------------------------------
# splitting data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplittingRep:
    """Generator images for a representation of a one-edge splitting.

    amalgam: ``gens1``/``gens2`` are the images of the two vertex groups;
    ``edge_words_1``/``edge_words_2`` express the edge generators as words
    in each side, and their images must agree in PSL2.

    hnn: ``gens1`` is the vertex group, ``stable`` the image A of the stable
    letter; ``edge_words_1`` are the edge generators gamma and
    ``edge_words_2`` their images under the edge isomorphism, so that
    A rho(gamma) A^-1 = rho(phi(gamma)).
    """

    variant: str                         # "amalgam" | "hnn"
    gens1: tuple[Mat2, ...]
    gens2: tuple[Mat2, ...] = ()
    stable: Optional[Mat2] = None
    edge_words_1: tuple[Word, ...] = ()
    edge_words_2: tuple[Word, ...] = ()

    def __post_init__(self):
        if self.variant not in ("amalgam", "hnn"):
            raise InvalidInputError(f"unknown splitting variant {self.variant!r}")
        if len(self.edge_words_1) != len(self.edge_words_2):
            raise InvalidInputError("edge word lists must have equal length")
        if self.variant == "amalgam":
            if self.stable is not None:
                raise InvalidInputError("amalgam has no stable letter")
        else:
            if self.stable is None:
                raise InvalidInputError("hnn splitting needs a stable letter")
            if self.gens2:
                raise InvalidInputError("hnn splitting has a single vertex group")
        edge = self.edge_images()
        _require_abelian(edge, "edge image")
        if _is_klein_four(edge):
            raise InvalidInputError(
                "edge image isomorphic to Z/2 + Z/2 does not admit bending")
        for lhs, rhs in zip(self._edge_lhs(), self._edge_rhs()):
            if not proj_close(lhs, rhs, 1e-7):
                raise InvalidInputError("edge compatibility violated: "
                                        f"{lhs} vs {rhs}")

    def _edge_lhs(self):
        if self.variant == "amalgam":
            return [evaluate_word(self.gens1, w) for w in self.edge_words_1]
        a = self.stable
        return [a @ evaluate_word(self.gens1, w) @ a.inv()
                for w in self.edge_words_1]

    def _edge_rhs(self):
        side = self.gens2 if self.variant == "amalgam" else self.gens1
        return [evaluate_word(side, w) for w in self.edge_words_2]

    def edge_images(self) -> list[Mat2]:
        return [evaluate_word(self.gens1, w) for w in self.edge_words_1]

    def all_letters(self) -> int:
        """Number of abstract generators of the whole group."""
        if self.variant == "amalgam":
            return len(self.gens1) + len(self.gens2)
        return len(self.gens1) + 1

    def image_of_letter(self, g: int) -> Mat2:
        n1 = len(self.gens1)
        if g <= n1:
            return self.gens1[g - 1]
        if self.variant == "amalgam":
            return self.gens2[g - n1 - 1]
        if g == n1 + 1:
            return self.stable
        raise InvalidInputError(f"letter index {g} out of range")

    def evaluate(self, w: Word) -> Mat2:
        out = Mat2.identity()
        for g in w:
            m = self.image_of_letter(abs(g))
            out = out @ (m if g > 0 else m.inv())
        return out


def _require_abelian(mats: Sequence[Mat2], what: str):
    for i, u in enumerate(mats):
        for v in mats[i + 1:]:
            if not is_pm_identity(u @ v @ u.inv() @ v.inv(), 1e-7):
                raise InvalidInputError(f"{what} is not abelian")


def _is_klein_four(mats: Sequence[Mat2]) -> bool:
    """Does the (abelian) group generated contain two distinct involutions?"""
    invols = []
    for m in mats:
        if is_pm_identity(m):
            continue
        if not is_pm_identity(m.power(2)):
            return False  # an element of order > 2 rules out Z/2 + Z/2
        invols.append(m)
    for i, u in enumerate(invols):
        for v in invols[i + 1:]:
            if not proj_close(u, v, 1e-7):
                return True
    return False


# ---------------------------------------------------------------------------
# centraliser component
# ---------------------------------------------------------------------------


class CentralizerTag(Enum):
    FULL_GROUP = "full-group"
    DIAGONAL = "D-conjugate"
    PARABOLIC = "P-conjugate"


@dataclass(frozen=True)
class CentralizerDesc:
    tag: CentralizerTag
    conjugator: Mat2      # brings the identity component to diag / upper unipotent


def _conjugator_to_standard(points: list) -> Mat2:
    """Moebius map sending the given one or two fixed points to 0, infinity."""
    if len(points) == 1:
        z = points[0]
        if z.is_infinity:
            return Mat2.identity()
        v = z.value()
        return Mat2.normalized(0, 1, -1, v)     # z -> infinity
    z1, z2 = points
    if z2.is_infinity:
        z1, z2 = z2, z1
    if z1.is_infinity:
        v2 = z2.value()
        return Mat2.normalized(1, -v2, 0, 1)    # z2 -> 0, infinity fixed
    v1, v2 = z1.value(), z2.value()
    # z2 -> 0, z1 -> infinity
    return Mat2.normalized(1, -v2, 1, -v1)


def centralizer_component(edge: Sequence[Mat2]) -> CentralizerDesc:
    """Identity component of the centraliser of an abelian set of matrices.

    full-group when the set is contained in {+-I}; otherwise conjugate to
    the diagonal subgroup (a diagonalizable non-central element exists) or
    to the upper unipotent subgroup (unipotent-only edge).
    """
    _require_abelian(edge, "centralizer input")
    nontrivial = [m for m in edge if not is_pm_identity(m)]
    if not nontrivial:
        return CentralizerDesc(CentralizerTag.FULL_GROUP, Mat2.identity())
    for m in nontrivial:
        if classify_isometry(m).tag is not IsomTag.PARABOLIC:
            pts = fixed_points(m)
            if len(pts) != 2:
                continue
            if _is_klein_four(nontrivial):
                raise InvalidInputError(
                    "Z/2 + Z/2 centraliser has trivial identity component")
            return CentralizerDesc(CentralizerTag.DIAGONAL,
                                   _conjugator_to_standard(pts))
    pts = fixed_points(nontrivial[0])
    conj = _conjugator_to_standard(pts)
    # send the common fixed point to infinity: upper triangular unipotents
    return CentralizerDesc(CentralizerTag.PARABOLIC, conj)


def centralizer_sample(desc: CentralizerDesc, rng: Random) -> Mat2:
    """A random element of the identity component of the centraliser."""
    if desc.tag is CentralizerTag.FULL_GROUP:
        while True:
            a, b, c = [complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
                       for _ in range(3)]
            if abs(a) > 0.1:
                return Mat2(a, b, c, (1 + b * c) / a)
    if desc.tag is CentralizerTag.DIAGONAL:
        s = cmath.exp(complex(rng.uniform(-1.2, 1.2), rng.uniform(-math.pi, math.pi)))
        core = Mat2.diag(s, 1 / s)
    else:
        u = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        core = Mat2(1, u, 0, 1)
    g = desc.conjugator
    return g.inv() @ core @ g


# ---------------------------------------------------------------------------
# the bend itself
# ---------------------------------------------------------------------------


def bend(rep: SplittingRep, s: Mat2) -> SplittingRep:
    """Bend by an element of the centraliser of the edge image.

    amalgam: conjugates the Gamma_2 images by S; hnn: replaces the stable
    letter image A by A S.  S must commute with every edge generator image.
    """
    for e in rep.edge_images():
        if not is_pm_identity(s @ e @ s.inv() @ e.inv(), 1e-6):
            raise InvalidInputError("bending element is outside the edge centraliser")
    if rep.variant == "amalgam":
        bent = tuple(s @ g @ s.inv() for g in rep.gens2)
        return replace(rep, gens2=bent)
    return replace(rep, stable=rep.stable @ s)


# ---------------------------------------------------------------------------
# the constant-trace predicate for a single conjugation
# ---------------------------------------------------------------------------


def _common_eigenvector(mats: Sequence[Mat2], tol: float = 1e-8) -> bool:
    pts = common_fixed_points(mats)
    return pts is None or len(pts) > 0


def constconj_predicate(a: Mat2, b: Mat2, c: Mat2, rng: Random | None = None,
                        n_samples: int = SAMPLE_COUNT) -> bool:
    """Is trace(A S B S^-1) = trace(AB) for every S commuting with C?

    Structural answer: yes iff either C = +-I and one of A, B is +-I, or
    C != +-I and A or B commutes with C, or A, B, C have a common
    eigenvector.  The answer is cross-validated on random samples of S;
    disagreement raises ``ConsistencyError``.
    """
    if is_pm_identity(c):
        structural = is_pm_identity(a) or is_pm_identity(b)
    else:
        comm_ac = mat_commutes(a, c)
        comm_bc = mat_commutes(b, c)
        structural = comm_ac or comm_bc or _common_eigenvector([a, b, c])
    rng = rng or Random(1234)
    desc = _sl2_centralizer_desc(c)
    worst = 0.0
    base = (a @ b).trace()
    for _ in range(n_samples):
        s = _sl2_centralizer_sample(desc, c, rng)
        val = (a @ s @ b @ s.inv()).trace()
        worst = max(worst, abs(val - base) / (1.0 + abs(base)))
    sampled_constant = worst <= 1e-9 * n_samples
    if sampled_constant != structural:
        raise ConsistencyError(
            f"constant-conjugation predicate mismatch: structural={structural} "
            f"sampling worst deviation={worst:.3e}")
    return structural


def mat_commutes(u: Mat2, v: Mat2, tol: float = 1e-9) -> bool:
    """Commutation in SL2 (not merely PSL2): UV = VU within tolerance."""
    lhs = u @ v
    rhs = v @ u
    scale = 1.0 + lhs.norm() + rhs.norm()
    return all(abs(complex(x) - complex(y)) <= tol * scale
               for x, y in zip(lhs.entries(), rhs.entries()))


def _sl2_centralizer_desc(c: Mat2) -> str:
    if is_pm_identity(c):
        return "full"
    if classify_isometry(c).tag is IsomTag.PARABOLIC:
        return "parabolic"
    return "diagonalizable"


def _sl2_centralizer_sample(kind: str, c: Mat2, rng: Random) -> Mat2:
    if kind == "full":
        while True:
            a, b, cc = [complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
                        for _ in range(3)]
            if abs(a) > 0.1:
                return Mat2(a, b, cc, (1 + b * cc) / a)
    pts = fixed_points(c)
    conj = _conjugator_to_standard(pts)
    if kind == "parabolic":
        u = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        sign = rng.choice((1, -1))
        core = Mat2(sign, sign * u, 0, sign)
    else:
        s = cmath.exp(complex(rng.uniform(-1.2, 1.2), rng.uniform(-math.pi, math.pi)))
        core = Mat2.diag(s, 1 / s)
    return conj.inv() @ core @ conj


# ---------------------------------------------------------------------------
# constancy of the bending family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstancyVerdict:
    constant: bool
    case: str                            # which structural clause matched
    witness_word: Optional[Word] = None  # for nonconstant: word whose character moves
    witness_gap: float = 0.0


def _subgroup_abelian(mats: Sequence[Mat2]) -> bool:
    try:
        _require_abelian(mats, "subgroup")
        return True
    except InvalidInputError:
        return False


def _subgroup_reducible(mats: Sequence[Mat2]) -> bool:
    pts = common_fixed_points(mats)
    return pts is None or len(pts) > 0


def _amalgam_structural(rep: SplittingRep) -> tuple[bool, str]:
    edge = rep.edge_images()
    edge_trivial = all(is_pm_identity(m) for m in edge)
    g1_trivial = all(is_pm_identity(m) for m in rep.gens1)
    g2_trivial = all(is_pm_identity(m) for m in rep.gens2)
    if edge_trivial:
        if g1_trivial or g2_trivial:
            return True, "amalgam-trivial-edge-trivial-side"
        return False, "amalgam-trivial-edge"
    if _subgroup_abelian(rep.gens1) and _subgroup_reducible(rep.gens1):
        return True, "amalgam-side1-abelian-reducible"
    if _subgroup_abelian(rep.gens2) and _subgroup_reducible(rep.gens2):
        return True, "amalgam-side2-abelian-reducible"
    if _subgroup_reducible(list(rep.gens1) + list(rep.gens2)):
        return True, "amalgam-rep-reducible"
    return False, "amalgam-generic"


def _hnn_structural(rep: SplittingRep) -> tuple[bool, str]:
    edge = rep.edge_images()
    if all(is_pm_identity(m) for m in edge):
        return False, "hnn-trivial-edge"
    desc = centralizer_component(edge)
    conj = desc.conjugator
    a_std = conj @ rep.stable @ conj.inv()
    gens_std = [conj @ g @ conj.inv() for g in rep.gens1]
    if desc.tag is CentralizerTag.DIAGONAL:
        # constant iff the vertex group is diagonal and A swaps the two axes
        tol = 1e-7

        def is_diag(m):
            scale = 1.0 + m.norm()
            return abs(complex(m.b)) <= tol * scale and abs(complex(m.c)) <= tol * scale

        def is_antidiag(m):
            scale = 1.0 + m.norm()
            return abs(complex(m.a)) <= tol * scale and abs(complex(m.d)) <= tol * scale

        if all(is_diag(m) for m in gens_std) and is_antidiag(a_std):
            return True, "hnn-diagonal-swap"
        return False, "hnn-diagonal-generic"
    # parabolic edge: constant iff everything is upper triangular
    tol = 1e-7

    def is_upper(m):
        return abs(complex(m.c)) <= tol * (1.0 + m.norm())

    if all(is_upper(m) for m in gens_std) and is_upper(a_std):
        return True, "hnn-upper-triangular"
    return False, "hnn-parabolic-generic"


def _random_word(n_letters: int, rng: Random) -> Word:
    length = rng.randint(1, WORD_LENGTH_CAP)
    letters = []
    for _ in range(length):
        g = rng.randint(1, n_letters)
        letters.append(g if rng.random() < 0.5 else -g)
    return Word(letters)


def _sampling_verdict(rep: SplittingRep, rng: Random
                      ) -> tuple[float, Optional[Word], float]:
    """Max character deviation over sampled bends and test words."""
    edge = rep.edge_images()
    if all(is_pm_identity(m) for m in edge):
        desc = CentralizerDesc(CentralizerTag.FULL_GROUP, Mat2.identity())
    else:
        desc = centralizer_component(edge)
    n_letters = rep.all_letters()
    words = [_random_word(n_letters, rng) for _ in range(WORD_COUNT)]
    base_traces = []
    for w in words:
        tr = complex(rep.evaluate(w).trace())
        base_traces.append(tr * tr)      # PSL2-safe character value
    worst = 0.0
    witness = None
    for _ in range(SAMPLE_COUNT):
        s = centralizer_sample(desc, rng)
        bent = bend(rep, s)
        for w, base in zip(words, base_traces):
            tr = complex(bent.evaluate(w).trace())
            dev = abs(tr * tr - base) / (1.0 + abs(base))
            if dev > worst:
                worst = dev
                witness = w
    return worst, witness, worst


def bending_constancy(rep: SplittingRep, seed: int = 0) -> ConstancyVerdict:
    """Decide whether every bend of the representation has the same character.

    The structural conditions of the amalgam/HNN constancy criteria are
    evaluated exactly (fixed-point and subgroup-membership tests after
    conjugating the edge centraliser to standard position), then
    cross-validated by sampling 100 bends against 50 random words.  A
    structural/sampling disagreement raises ``ConsistencyError``.
    """
    if rep.variant == "amalgam":
        constant, case = _amalgam_structural(rep)
    else:
        constant, case = _hnn_structural(rep)
    rng = Random(777_000 + seed)
    worst, witness, gap = _sampling_verdict(rep, rng)
    if constant and worst > CHAR_MATCH_TOL * 10:
        raise ConsistencyError(
            f"structural verdict 'constant' ({case}) contradicted by sampled "
            f"character deviation {worst:.3e}")
    if not constant and worst < WITNESS_GAP:
        raise ConsistencyError(
            f"structural verdict 'nonconstant' ({case}) but sampling only "
            f"found deviation {worst:.3e}")
    if constant:
        return ConstancyVerdict(True, case)
    return ConstancyVerdict(False, case, witness_word=witness, witness_gap=gap)
