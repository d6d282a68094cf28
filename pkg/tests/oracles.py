"""Independent reference computations used by the tests.

Nothing here imports htacert internals; each oracle takes a different route
(cofactor expansion, Sylvester matrices, brute force, floating point) to the
value the package computes exactly.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath
import numpy as np
import sympy


def cofactor_det(rows) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def sylvester_resultant(p: list[int], q: list[int]) -> int:
    """Res(p, q) as the determinant of the Sylvester matrix; coefficients high first."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(p) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(q) + [0] * (size - n - 1 - i))
    return int(sympy.Matrix(rows).det())


def determinantal_divisors(rows) -> list[int]:
    """gcd of all k x k minors, k = 1..n."""
    n = len(rows)
    M = sympy.Matrix(rows)
    out = []
    for k in range(1, n + 1):
        g = 0
        for I in itertools.combinations(range(n), k):
            for J in itertools.combinations(range(n), k):
                g = math.gcd(g, int(M.extract(list(I), list(J)).det()))
        out.append(g)
    return out


def matmul(a, b):
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def matpow(a, k):
    n = len(a)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = matmul(out, a)
    return out


def kernel_count_mod(M, D: int) -> int:
    """#{x in (Z/D)^n : M x = 0 mod D} by enumerating every x."""
    n = len(M)
    grids = np.meshgrid(*([np.arange(D, dtype=np.int64)] * n), indexing="ij")
    X = np.stack([g.ravel() for g in grids])
    Y = (np.array(M, dtype=np.int64) % D) @ X % D
    return int(np.count_nonzero(~Y.any(axis=0)))


def numeric_roots(coeffs_high_first, dps: int = 60):
    with mpmath.workdps(dps):
        return mpmath.polyroots([int(c) for c in coeffs_high_first], maxsteps=400, extraprec=4 * dps)


def has_root_near_unit_circle(coeffs_high_first, tol=mpmath.mpf("1e-15")) -> bool:
    with mpmath.workdps(60):
        return any(abs(abs(z) - 1) < tol for z in numeric_roots(coeffs_high_first))


def affine_fixed_brute(B, c) -> int:
    """Fixed points of theta -> B theta + c on T^n, all lying on a finite grid."""
    n = len(B)
    M = [[B[i][j] - (i == j) for j in range(n)] for i in range(n)]
    D = abs(cofactor_det(M))
    q = math.lcm(*[Fraction(x).denominator for x in c])
    step = D * q
    count = 0
    for pt in itertools.product(range(step), repeat=n):
        theta = [Fraction(x, step) for x in pt]
        img = [sum(B[i][j] * theta[j] for j in range(n)) + Fraction(c[i]) for i in range(n)]
        if all((img[i] - theta[i]).denominator == 1 for i in range(n)):
            count += 1
    return count


def quadratic_unit_oracle(D: int, eps_a: int, eps_b: int) -> bool:
    """No unit a + b*omega strictly between 1 and eps, by enumeration.

    A unit 1 < u < eps has conjugate |u'| < 1, so b sqrt(D) = u - u' lies in
    (0, eps + 1) and a lies within 1 of -b omega'.
    """
    odd = D % 4 == 1
    sqrtD = math.sqrt(D)
    omega = (1 + sqrtD) / 2 if odd else sqrtD / 2
    omega_conj = (1 - sqrtD) / 2 if odd else -sqrtD / 2
    eps = eps_a + eps_b * omega
    bound_b = math.ceil((eps + 1) / sqrtD)
    found = []
    for b in range(1, bound_b + 1):
        a_center = -b * omega_conj
        for a in range(math.floor(a_center) - 2, math.ceil(a_center) + 3):
            if odd:
                N = a * a + a * b - b * b * (D - 1) // 4
            else:
                N = a * a - b * b * (D // 4)
            u = a + b * omega
            if abs(N) == 1 and 1 + 1e-9 < u < eps - 1e-9:
                found.append((a, b))
    return not found
