"""Exact linear algebra over the integers.

Everything here works on Python ints, so there is no overflow and no
rounding. Matrices are small (n <= 8) and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .polyalg import IntPoly

MAX_DIM = 8


class IntMatrix:
    """Square matrix of arbitrary-precision integers, stored row-major."""

    __slots__ = ("_rows", "_n")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or n > MAX_DIM:
            raise ValueError(f"dimension must be between 1 and {MAX_DIM}, got {n}")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        self._rows = rows
        self._n = n

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> IntMatrix:
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def diag(cls, values: Sequence[int]) -> IntMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, text: str) -> IntMatrix:
        """Parse either the inline form ``"0 1; 1 5"`` or the file form.

        The file form has the dimension on the first line followed by n rows;
        lines starting with ``#`` are ignored.
        """
        lines = [ln.strip() for ln in text.strip().splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise ValueError("empty matrix text")
        if len(lines) == 1 and ";" in lines[0]:
            rows = [r.split() for r in lines[0].split(";") if r.strip()]
        elif len(lines) == 1 and len(lines[0].split()) == 1 and ";" not in lines[0]:
            rows = [lines[0].split()]
        else:
            head = lines[0].split()
            if len(head) == 1 and len(lines) == int(head[0]) + 1:
                rows = [ln.split() for ln in lines[1:]]
            else:
                rows = [ln.split() for ln in lines]
        try:
            return cls([[int(x) for x in r] for r in rows])
        except ValueError as exc:
            raise ValueError(f"cannot parse matrix: {exc}") from None

    @property
    def n(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def entries(self) -> tuple[int, ...]:
        return tuple(x for r in self._rows for x in r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._rows]})"

    def __str__(self) -> str:
        return "; ".join(" ".join(str(x) for x in r) for r in self._rows)

    def to_text(self) -> str:
        """File form: dimension line followed by the rows."""
        body = "\n".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"{self._n}\n{body}\n"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def _check(self, other: IntMatrix) -> None:
        if other.n != self.n:
            raise ValueError("dimension mismatch")

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._check(other)
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._check(other)
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-a for a in r] for r in self._rows])

    def __mul__(self, k: int) -> IntMatrix:
        if not isinstance(k, int):
            return NotImplemented
        return IntMatrix([[k * a for a in r] for r in self._rows])

    __rmul__ = __mul__

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        self._check(other)
        cols = list(zip(*other._rows))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows])

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector (any numeric entries)."""
        return tuple(sum(a * x for a, x in zip(r, v)) for r in self._rows)

    def transpose(self) -> IntMatrix:
        return IntMatrix(zip(*self._rows))

    def trace(self) -> int:
        return sum(self._rows[i][i] for i in range(self._n))

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self._n)

    def __pow__(self, k: int) -> IntMatrix:
        return mat_pow(self, k)


@dataclass(frozen=True)
class SnfResult:
    d: tuple[int, ...]
    U: IntMatrix
    V: IntMatrix


def det(M: IntMatrix) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = M.n
    if n == 1:
        return M[0, 0]
    if n == 2:
        return M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    a = [list(r) for r in M.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def char_poly(M: IntMatrix) -> IntPoly:
    """det(xI - M) via Faddeev-LeVerrier; every division is exact over Z."""
    n = M.n
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    ident = IntMatrix.identity(n)
    Mk = IntMatrix.zero(n)
    for k in range(1, n + 1):
        Mk = M @ Mk + ident * coeffs[n - k + 1]
        tr = (M @ Mk).trace()
        assert tr % k == 0
        coeffs[n - k] = -tr // k
    return IntPoly(coeffs)


def companion(p: IntPoly) -> IntMatrix:
    """Companion matrix: ones on the superdiagonal, last row -a_0 ... -a_{n-1}."""
    if p.degree < 2:
        raise ValueError("companion matrix needs degree >= 2")
    if p.lc != 1:
        raise ValueError(f"polynomial must be monic: {p}")
    n = p.degree
    rows = [[int(j == i + 1) for j in range(n)] for i in range(n - 1)]
    rows.append([-c for c in p.coeffs[:n]])
    return IntMatrix(rows)


def is_unimodular(M: IntMatrix) -> bool:
    return abs(det(M)) == 1


def adjugate(M: IntMatrix) -> IntMatrix:
    n = M.n
    if n == 1:
        return IntMatrix([[1]])
    rows = M.rows
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = IntMatrix(
                [[rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            )
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return IntMatrix(adj)


def inverse(M: IntMatrix) -> IntMatrix:
    """Integer inverse of a unimodular matrix."""
    d = det(M)
    if abs(d) != 1:
        raise ValueError(f"matrix is not unimodular (det = {d})")
    return adjugate(M) * d


def mat_pow(M: IntMatrix, k: int) -> IntMatrix:
    if k < 0:
        return mat_pow(inverse(M), -k)
    result = IntMatrix.identity(M.n)
    base = M
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def _snf_pivot(a: list[list[int]], t: int, n: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, n):
        for j in range(t, n):
            v = abs(a[i][j])
            if v and (best is None or v < best[0]):
                best = (v, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(M: IntMatrix) -> SnfResult:
    """Smith normal form with unimodular transforms, U @ M @ V = diag(d).

    Pivot is the entry of least nonzero absolute value, first in row-major
    order on ties. Invariant factors come out nonnegative with each dividing
    the next.
    """
    n = M.n
    a = [list(r) for r in M.rows]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(n):
        while True:
            piv = _snf_pivot(a, t, n)
            if piv is None:
                break
            i, j = piv
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, n):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]

    d = tuple(a[i][i] for i in range(n))
    return SnfResult(d, IntMatrix(U), IntMatrix(V))


# Rational helpers shared by the number-field and centralizer code.

QMatrix = tuple[tuple[Fraction, ...], ...]


def q_matrix(rows: Iterable[Iterable]) -> QMatrix:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def q_matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> QMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in a)


def q_inverse(a: Sequence[Sequence]) -> QMatrix:
    """Gauss-Jordan inverse over Q; raises ValueError when singular."""
    n = len(a)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(r[n:]) for r in m)


def q_det(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in r] for r in a]
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        result *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return result


def q_char_poly(a: Sequence[Sequence]) -> list[Fraction]:
    """Characteristic polynomial coefficients (low to high) of a rational matrix."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = q_matrix([[int(i == j) for j in range(n)] for i in range(n)])
    Mk = q_matrix([[0] * n for _ in range(n)])
    for k in range(1, n + 1):
        AM = q_matmul(a, Mk)
        Mk = tuple(
            tuple(x + coeffs[n - k + 1] * e for x, e in zip(r, ir)) for r, ir in zip(AM, ident)
        )
        tr = sum(q_matmul(a, Mk)[i][i] for i in range(n))
        coeffs[n - k] = -tr / k
    return coeffs


def to_int_matrix(a: Sequence[Sequence]) -> IntMatrix | None:
    """The integer matrix equal to ``a``, or None if some entry is fractional."""
    if any(Fraction(x).denominator != 1 for r in a for x in r):
        return None
    return IntMatrix([[int(x) for x in r] for r in a])
