"""Periodic points of toral automorphisms and the Bowen-Franks groups.

|Per^k(A)| is the order of Z^n / (A^k - I) Z^n, i.e. |det(A^k - I)|; the
Smith normal form of A^k - I gives the group structure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from sympy import isprime, nextprime

from .intmat import IntMatrix, char_poly, det, mat_pow, smith_normal_form
from .polyalg import IntPoly, resultant

DEFAULT_PRIME_CAP = 101


class NonHyperbolicError(ValueError):
    """A^k - I is singular, so Per^k(A) is not finite."""


def _shifted_power(A: IntMatrix, k: int) -> IntMatrix:
    if k < 1:
        raise ValueError("period must be a positive integer")
    M = mat_pow(A, k) - IntMatrix.identity(A.n)
    return M


def per_count(A: IntMatrix, k: int) -> int:
    """|Per^k(A)| = |det(A^k - I)|."""
    d = det(_shifted_power(A, k))
    if d == 0:
        raise NonHyperbolicError(f"A^{k} - I is singular")
    return abs(d)


def per_count_resultant(A: IntMatrix, k: int) -> int:
    """The same count through |Res(p_A, x^k - 1)|; an independent route."""
    return abs(resultant(char_poly(A), IntPoly.x_pow_minus_one(k)))


def bf_invariants(A: IntMatrix, k: int) -> list[int]:
    """Invariant factors > 1 of the Bowen-Franks group Z^n / (A^k - I) Z^n."""
    snf = smith_normal_form(_shifted_power(A, k))
    if 0 in snf.d:
        raise NonHyperbolicError(f"A^{k} - I is singular")
    return [d for d in snf.d if d > 1]


@dataclass(frozen=True)
class PerCountEntry:
    count: int
    invariants: tuple[int, ...]


def per_count_table(A: IntMatrix, ks: Iterable[int]) -> dict[int, PerCountEntry]:
    """Counts and group structure for each k, cross-checked three ways."""
    out = {}
    for k in ks:
        c = per_count(A, k)
        inv = tuple(bf_invariants(A, k))
        prod = 1
        for d in inv:
            prod *= d
        res = per_count_resultant(A, k)
        if not c == prod == res:
            raise AssertionError(f"count mismatch at k={k}: det {c}, snf {prod}, resultant {res}")
        out[k] = PerCountEntry(c, inv)
    return out


def non_fixed_count(A: IntMatrix, p: int) -> int:
    """|Per^p(A) - Per^1(A)| for an odd prime p."""
    if p == 2 or not isprime(p):
        raise ValueError(f"{p} is not an odd prime")
    return per_count(A, p) - per_count(A, 1)


def threshold(n: int) -> int:
    """|Per^1(-I)| = 2^n on the n-torus."""
    if n < 1:
        raise ValueError("dimension must be positive")
    return 2**n


def odd_primes(cap: int) -> Iterable[int]:
    p = 3
    while p <= cap:
        yield p
        p = nextprime(p)


def smallest_admissible_prime(A: IntMatrix, cap: int = DEFAULT_PRIME_CAP) -> Optional[int]:
    """Least odd prime p <= cap with |Per^p(A) - Per^1(A)| > 2^n."""
    bound = threshold(A.n)
    for p in odd_primes(cap):
        if non_fixed_count(A, p) > bound:
            return p
    return None


# --- affine maps on the torus --------------------------------------------------

@dataclass(frozen=True)
class Degenerate:
    """B - I is singular: the fixed set is empty or positive-dimensional."""

    solvable: bool


def affine_fixed_points(B: IntMatrix, c: Sequence) -> Union[int, Degenerate]:
    """Number of theta in T^n with B theta + c = theta.

    Solves (B - I) theta = -c mod Z^n through U (B - I) V = diag(d): with
    theta = V phi the system decouples into d_i phi_i = (-U c)_i mod 1.
    """
    n = B.n
    if len(c) != n:
        raise ValueError("translation vector has the wrong length")
    M = B - IntMatrix.identity(n)
    snf = smith_normal_form(M)
    rhs = snf.U.apply([-Fraction(x) for x in c])
    count = 1
    solvable = True
    degenerate = False
    for d, r in zip(snf.d, rhs):
        if d == 0:
            degenerate = True
            if Fraction(r).denominator != 1:
                solvable = False
        else:
            count *= d
    if degenerate:
        return Degenerate(solvable)
    return count


# --- the involution lemma on finite sets ------------------------------------------

@dataclass(frozen=True)
class FinitePermutation:
    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError("not a bijection of {0..N-1}")

    @classmethod
    def identity(cls, size: int) -> FinitePermutation:
        return cls(tuple(range(size)))

    @classmethod
    def from_cycles(cls, size: int, cycles: Iterable[Sequence[int]]) -> FinitePermutation:
        img = list(range(size))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __mul__(self, other: FinitePermutation) -> FinitePermutation:
        """Composition: (self * other)(x) = self(other(x))."""
        return FinitePermutation(tuple(self.image[i] for i in other.image))

    def power(self, k: int) -> FinitePermutation:
        out = FinitePermutation.identity(len(self))
        for _ in range(k):
            out = self * out
        return out

    def is_identity(self) -> bool:
        return self.image == tuple(range(len(self.image)))


class OrbitVerdict(enum.Enum):
    CONCLUSION_HOLDS = "ConclusionHolds"
    HYPOTHESIS_FAILS = "HypothesisFails"
    COUNTEREXAMPLE = "CounterexampleFound"


@dataclass(frozen=True)
class OrbitCheck:
    verdict: OrbitVerdict
    detail: str = ""
    witness: Optional[int] = None


def involution_orbit_check(f: FinitePermutation, g: FinitePermutation, p: int) -> OrbitCheck:
    """Check: a commuting involution never maps a p-periodic, non-fixed point
    into its own f-orbit (p an odd prime).
    """
    if len(f) != len(g):
        raise ValueError("permutations act on different sets")
    if p == 2 or not isprime(p):
        raise ValueError(f"{p} is not an odd prime")
    size = len(f)
    if f * g != g * f:
        return OrbitCheck(OrbitVerdict.HYPOTHESIS_FAILS, "fg = gf")
    if not (g * g).is_identity():
        return OrbitCheck(OrbitVerdict.HYPOTHESIS_FAILS, "g^2 = id")
    if g.is_identity():
        return OrbitCheck(OrbitVerdict.HYPOTHESIS_FAILS, "g != id")
    fp = f.power(p)
    thetas = [x for x in range(size) if fp(x) == x and f(x) != x and g(x) != x]
    if not thetas:
        return OrbitCheck(OrbitVerdict.HYPOTHESIS_FAILS, "theta in Per^p(f) - Per^1(f) with g(theta) != theta")
    for theta in thetas:
        orbit = set()
        x = theta
        for _ in range(p):
            orbit.add(x)
            x = f(x)
        if g(theta) in orbit:
            return OrbitCheck(OrbitVerdict.COUNTEREXAMPLE, f"g({theta}) lies on the f-orbit of {theta}", theta)
    return OrbitCheck(OrbitVerdict.CONCLUSION_HOLDS, f"checked {len(thetas)} points")
