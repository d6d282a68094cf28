"""Integer polynomial algebra for degrees up to 4 (and a little beyond).

Polynomials are stored low degree first. Anything needing division runs
over ``Fraction`` and is brought back to a primitive integer polynomial
where that keeps sizes down; no step uses floating point.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


class IntPoly:
    """Integer polynomial; ``coeffs[i]`` is the coefficient of x**i."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int]):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @classmethod
    def x_pow_minus_one(cls, k: int) -> IntPoly:
        return cls([-1] + [0] * (k - 1) + [1])

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        return parse_poly(text)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def lc(self) -> int:
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"IntPoly({list(self._c)})"

    def __str__(self) -> str:
        return format_poly(self._c)

    def __add__(self, other: IntPoly) -> IntPoly:
        n = max(len(self._c), len(other._c))
        a = self._c + (0,) * (n - len(self._c))
        b = other._c + (0,) * (n - len(other._c))
        return IntPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> IntPoly:
        return IntPoly(-x for x in self._c)

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: Union[IntPoly, int]) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(other * x for x in self._c)
        if not self._c or not other._c:
            return IntPoly([])
        out = [0] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self._c) if i)

    def reversal(self) -> IntPoly:
        """x**deg * p(1/x)."""
        return IntPoly(reversed(self._c))

    def content(self) -> int:
        return math.gcd(*self._c) if self._c else 0

    def primitive(self) -> IntPoly:
        """Primitive part with positive leading coefficient."""
        if not self._c:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly(c // g for c in self._c)

    def divmod(self, other: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Exact division by a monic (or unit-leading) divisor."""
        q, r = _qdivmod([Fraction(c) for c in self._c], [Fraction(c) for c in other._c])
        if any(c.denominator != 1 for c in q + r):
            raise ValueError("division is not exact over Z")
        return IntPoly(int(c) for c in q), IntPoly(int(c) for c in r)

    def __floordiv__(self, other: IntPoly) -> IntPoly:
        return self.divmod(other)[0]

    def __mod__(self, other: IntPoly) -> IntPoly:
        return self.divmod(other)[1]


@dataclass(frozen=True)
class Signature:
    r1: int
    r2: int


# --- formatting and parsing ------------------------------------------------

def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    if not any(coeffs):
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


_TERM = re.compile(r"([+-]?)(\d*)(?:\*?([a-z])(?:\^(\d+))?)?")


def parse_poly(text: str) -> IntPoly:
    """Parse ``x^4+2x^3-2x+1`` or a coefficient list ``1,2,0,-2,1``.

    The coefficient list is read highest degree first.
    """
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial")
    if re.fullmatch(r"[+-]?\d+(,[+-]?\d+)*", s) and "," in s:
        return IntPoly(reversed([int(t) for t in s.split(",")]))
    coeffs: dict[int, int] = {}
    pos = 0
    var = None
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        sign, num, v, exp = m.groups()
        if not num and not v:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        if pos > 0 and not sign:
            raise ValueError(f"missing operator in {text!r} at position {pos}")
        if v:
            if var is None:
                var = v
            elif v != var:
                raise ValueError(f"mixed variables in {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if v else 0
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    deg = max(coeffs)
    return IntPoly(coeffs.get(i, 0) for i in range(deg + 1))


# --- rational polynomial helpers (lists of Fraction, low degree first) -----

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list, list]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(list(a))
    if len(r) < len(b):
        return [], r
    q = [Fraction(0)] * (len(r) - len(b) + 1)
    inv = 1 / Fraction(b[-1])
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] * inv
        q[shift] = f
        for i, c in enumerate(b):
            r[i + shift] -= f * c
        r.pop()
        _trim(r)
    return q, r


def _to_primitive(a: Sequence[Fraction]) -> IntPoly:
    """Scale a rational polynomial to a primitive integer one, positive lc."""
    a = _trim(list(a))
    if not a:
        return IntPoly([])
    den = math.lcm(*(Fraction(c).denominator for c in a))
    return IntPoly(int(c * den) for c in a).primitive()


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """gcd over Q, returned primitive with positive leading coefficient."""
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in q.coeffs]
    while _trim(b):
        _, r = _qdivmod(a, b)
        a, b = b, [Fraction(c) for c in _to_primitive(r).coeffs]
    return _to_primitive(a)


def squarefree_part(p: IntPoly) -> IntPoly:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive()
    q, r = _qdivmod([Fraction(c) for c in p.coeffs], [Fraction(c) for c in g.coeffs])
    assert not _trim(r)
    return _to_primitive(q)


def exact_quotient(p: IntPoly, q: IntPoly) -> IntPoly:
    """p / q over Q, asserting the remainder vanishes; result primitive."""
    quo, rem = _qdivmod([Fraction(c) for c in p.coeffs], [Fraction(c) for c in q.coeffs])
    if _trim(rem):
        raise ValueError(f"{q} does not divide {p}")
    return _to_primitive(quo)


# --- resultants and discriminants ------------------------------------------

def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder of lc(b)^(deg a - deg b + 1) * a by b."""
    r = list(a.coeffs)
    db = b.degree
    lb = b.lc
    e = a.degree - db + 1
    while len(r) - 1 >= db and any(r):
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for i, c in enumerate(b.coeffs):
            r[i + shift] -= lr * c
        r.pop()
        e -= 1
        _trim(r)
    if e > 0:
        r = [c * lb**e for c in r]
    return IntPoly(r)


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Resultant by the subresultant PRS; Res(p, q) = lc(p)^deg q * prod q(roots of p)."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    if p.degree == 0:
        return p.lc ** q.degree
    if q.degree == 0:
        return q.lc ** p.degree
    a, b = p, q
    ca, cb = a.content(), b.content()
    a = IntPoly(c // ca for c in a.coeffs)
    b = IntPoly(c // cb for c in b.coeffs)
    t = ca ** q.degree * cb ** p.degree
    s = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            s = -s
    g = h = 1
    while b.degree > 0:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            s = -s
        r = _prem(a, b)
        if r.is_zero():
            return 0
        a = b
        den = g * h**delta
        b = IntPoly(c // den for c in r.coeffs)
        g = a.lc
        if delta == 0:
            h = h
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)
    # b is a nonzero constant here
    if a.degree == 1:
        hh = b.lc
    else:
        hh = b.lc ** a.degree // h ** (a.degree - 1)
    return s * t * hh


def discriminant(p: IntPoly) -> int:
    d = p.degree
    if d < 2:
        raise ValueError("discriminant needs degree >= 2")
    res = resultant(p, p.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, r = divmod(sign * res, p.lc)
    assert r == 0
    return q


# --- irreducibility --------------------------------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    pos = sorted(set(small + [n // d for d in small]))
    return pos + [-d for d in pos]


def is_irreducible(p: IntPoly) -> bool:
    """Irreducibility over Q for monic integer polynomials of degree 1..4.

    Uses the rational root test, plus for quartics an enumeration of monic
    quadratic times quadratic splittings over Z (enough by Gauss's lemma).
    """
    d = p.degree
    if d < 1 or d > 4:
        raise ValueError(f"degree must be between 1 and 4, got {d}")
    if p.lc != 1:
        raise ValueError(f"polynomial must be monic: {p}")
    if d == 1:
        return True
    a0 = p.coeffs[0]
    if a0 == 0:
        return False
    if any(p(r) == 0 for r in _divisors(a0)):
        return False
    if d < 4:
        return True
    _, a1, a2, a3, _ = p.coeffs
    # (x^2 + a x + b)(x^2 + c x + e): b e = a0, a + c = a3, b + e + a c = a2, a e + b c = a1
    for b in _divisors(a0):
        e = a0 // b
        disc = a3 * a3 - 4 * (a2 - b - e)
        if disc < 0:
            continue
        r = math.isqrt(disc)
        if r * r != disc:
            continue
        for num in {a3 + r, a3 - r}:
            if num % 2:
                continue
            a = num // 2
            c = a3 - a
            if a * e + b * c == a1:
                return False
    return True


# --- Sturm sequences and real roots ---------------------------------------

def sturm_chain(p: IntPoly) -> list[IntPoly]:
    """Sturm chain with every member scaled to a primitive integer polynomial.

    Only positive scalings are applied, so sign patterns are preserved.
    """
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        _, r = _qdivmod([Fraction(c) for c in chain[-2].coeffs], [Fraction(c) for c in chain[-1].coeffs])
        r = _trim([-c for c in r])
        if not r:
            break
        den = math.lcm(*(c.denominator for c in r))
        ints = [int(c * den) for c in r]
        g = math.gcd(*ints)
        chain.append(IntPoly(c // g for c in ints))
    return chain


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_at(p: IntPoly, x) -> int:
    if x == math.inf:
        return _sign(p.lc)
    if x == -math.inf:
        return _sign(p.lc) * (-1 if p.degree % 2 else 1)
    return _sign(p(Fraction(x)))


def _variations(chain: list[IntPoly], x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _require_squarefree(p: IntPoly) -> None:
    if p.degree >= 1 and poly_gcd(p, p.derivative()).degree > 0:
        raise ValueError(f"polynomial is not squarefree: {p}")


def real_root_count(p: IntPoly, lo: Number | float = -math.inf, hi: Number | float = math.inf) -> int:
    """Number of distinct real roots in (lo, hi]; infinite endpoints allowed."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    _require_squarefree(p)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if p.degree == 0:
        return 0
    chain = sturm_chain(p)
    return _variations(chain, lo) - _variations(chain, hi)


def signature(p: IntPoly) -> Signature:
    _require_squarefree(p)
    r1 = real_root_count(p)
    return Signature(r1, (p.degree - r1) // 2)


# --- roots on the unit circle ---------------------------------------------

def _chebyshev_sums(d: int) -> list[IntPoly]:
    """T[i](y) with x**i + x**-i = T[i](x + 1/x); T[0] is the constant 2."""
    T = [IntPoly([2]), IntPoly([0, 1])]
    y = IntPoly([0, 1])
    while len(T) <= d:
        T.append(y * T[-1] - T[-2])
    return T


def has_unimodular_root(p: IntPoly) -> bool:
    """True iff p has a complex root of modulus exactly 1 (decided exactly)."""
    if p.degree < 1:
        raise ValueError("degree must be >= 1")
    if p.coeffs[0] == 0:
        # the root 0 is irrelevant; drop the factors of x
        k = next(i for i, c in enumerate(p.coeffs) if c)
        p = IntPoly(p.coeffs[k:])
        if p.degree < 1:
            return False
    g = squarefree_part(poly_gcd(p, p.reversal()))
    if g.degree <= 0:
        return False
    if g(1) == 0 or g(-1) == 0:
        return True
    c = g.coeffs
    deg = g.degree
    if deg % 2 or any(c[i] != c[deg - i] for i in range(deg + 1)):
        # roots closed under inversion and +-1 excluded: must be palindromic
        raise AssertionError(f"expected a self-reciprocal factor, got {g}")
    half = deg // 2
    T = _chebyshev_sums(half)
    h = IntPoly([c[half]])
    for i in range(1, half + 1):
        h = h + T[i] * c[half + i]
    return real_root_count(h, -2, 2) > 0 or h(-2) == 0


# --- cyclotomic polynomials ------------------------------------------------

SUPPORTED_CYCLOTOMIC = (1, 2, 3, 4, 5, 6, 8, 10, 12)


@lru_cache(maxsize=None)
def cyclotomic_any(m: int) -> IntPoly:
    """Phi_m for any m >= 1, by dividing x^m - 1 by the lower cyclotomics."""
    if m < 1:
        raise ValueError("m must be positive")
    q = IntPoly.x_pow_minus_one(m)
    for d in range(1, m):
        if m % d == 0:
            q = q // cyclotomic_any(d)
    return q


def cyclotomic(m: int) -> IntPoly:
    """Phi_m for the orders with phi(m) <= 4 that roots of unity in the fields here can have."""
    if m not in SUPPORTED_CYCLOTOMIC:
        raise ValueError(f"unsupported cyclotomic index {m}")
    return cyclotomic_any(m)


def totient(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def cyclotomic_factorization(p: IntPoly) -> dict[int, int] | None:
    """Multiplicities {m: e} when p is a product of cyclotomics, else None."""
    if p.degree < 0 or abs(p.lc) != 1:
        return None
    rest = p if p.lc == 1 else -p
    out: dict[int, int] = {}
    m = 1
    while rest.degree > 0:
        # phi(m) >= sqrt(m/2), so no useful m exceeds 2 * deg^2
        if m > 2 * max(rest.degree, 1) ** 2 + 2:
            return None
        phi = cyclotomic_any(m)
        if phi.degree <= rest.degree:
            q, r = rest.divmod(phi)
            if r.is_zero():
                out[m] = out.get(m, 0) + 1
                rest = q
                continue
        m += 1
    return out if rest == IntPoly([1]) else None
