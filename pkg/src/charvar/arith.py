"""Elementary number theory and the closed-form domination bounds.

Includes the Moebius-inversion formula for the first Betti number of the
adjoint-twisted cohomology of a dihedral representation, and the chain
bounds / minimality classification for two-bridge knot exteriors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError
from .twobridge import TwoBridgeKnot


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n <= 0:
        raise InvalidInputError(f"divisors defined for n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def prime_factorization(n: int) -> dict[int, int]:
    if n <= 0:
        raise InvalidInputError(f"factorization defined for n >= 1, got {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def moebius(n: int) -> int:
    fac = prime_factorization(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    out = n
    for p in prime_factorization(n):
        out = out // p * (p - 1)
    return out


def is_prime(n: int) -> bool:
    return n > 1 and list(prime_factorization(n)) == [n]


@dataclass(frozen=True)
class B1Input:
    """Inputs for the adjoint first-Betti-number formula of a dihedral
    representation with image of order 2n.

    ``b1_cover`` maps every divisor d of n to the first Betti number of the
    associated 2d-fold cover; the caller supplies these (their topological
    computation is out of scope here).
    """

    n: int
    b1_gamma: int
    b1_gamma2: int
    b1_cover: dict[int, int]

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInputError("the formula requires n >= 2")
        need = set(divisors(self.n))
        have = set(self.b1_cover)
        if need != have:
            raise InvalidInputError(
                f"b1_cover must be defined exactly on the divisors of {self.n}; "
                f"missing {sorted(need - have)}, extra {sorted(have - need)}")
        values = [self.b1_gamma, self.b1_gamma2, *self.b1_cover.values()]
        if any(v < 0 for v in values):
            raise InvalidInputError("Betti numbers must be nonnegative")


def b1_adjoint(data: B1Input) -> int:
    """b1(Gamma2) - b1(Gamma) + (1/phi(n)) * sum_{d|n} mu(n/d) b1(cover_2d).

    Exact rational evaluation; a non-integer result signals inconsistent
    inputs and raises.
    """
    n = data.n
    total = Fraction(0)
    for d in divisors(n):
        total += moebius(n // d) * data.b1_cover[d]
    value = Fraction(data.b1_gamma2 - data.b1_gamma) + total / euler_phi(n)
    if value.denominator != 1:
        raise InvalidInputError(f"formula value {value} is not an integer; "
                                "the cover Betti numbers are inconsistent")
    return int(value)


@dataclass(frozen=True)
class ChainBoundReport:
    """Domination-chain bounds for a two-bridge knot exterior."""

    p: int
    q: int
    class_rep: tuple[int, int]           # Schubert-normalized (p, q)
    strict_epi_bound: int                # chains of proper epimorphisms: n < this
    strict_epi_bound_is_strict: bool
    dom_bound: int                       # nonzero-degree chains: n + 1 <= tau(p)
    dom_bound_chain_reading: int         # alternative reading: longest divisor chain
    deg1_bound: int                      # degree-one chains: n + 1 <= omega(p)
    minimality: str                      # minimal | torus-knot | indeterminate
    prime_power_degree_one_rigid: bool   # no strict 1-domination when p is a prime power

    def __post_init__(self):
        if self.dom_bound < self.deg1_bound:
            raise InvalidInputError("divisor bound cannot undercut the prime bound")


def chain_bounds(knot: TwoBridgeKnot) -> ChainBoundReport:
    """All closed-form bounds attached to the knot exterior.

    * chains of non-injective virtual epimorphisms through small manifolds
      have length n < (p - 1)/2;
    * chains of non-homeomorphism nonzero-degree maps have n + 1 bounded by
      the divisor count tau(p) (the "multiplicative factors" reading; the
      longest-divisor-chain reading Omega(p) + 1 is reported alongside);
    * degree-one chains have n + 1 bounded by the number of distinct prime
      factors of p;
    * for prime p the exterior is minimal iff it is hyperbolic, i.e.
      q != +-1 (mod p); composite p stays indeterminate.
    """
    p, q = knot.p, knot.q
    fac = prime_factorization(p)
    tau = 1
    big_omega = 0
    for e in fac.values():
        tau *= e + 1
        big_omega += e
    if knot.is_torus_knot:
        minimality = "torus-knot"
    elif is_prime(p):
        minimality = "minimal"
    else:
        minimality = "indeterminate"
    return ChainBoundReport(
        p=p, q=q,
        class_rep=knot.schubert_class(),
        strict_epi_bound=(p - 1) // 2,
        strict_epi_bound_is_strict=True,
        dom_bound=tau,
        dom_bound_chain_reading=big_omega + 1,
        deg1_bound=len(fac),
        minimality=minimality,
        prime_power_degree_one_rigid=(len(fac) == 1),
    )
