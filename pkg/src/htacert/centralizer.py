"""The centralizer C(A) of an irreducible A in GL(n, Z), computed exactly.

The ring isomorphism Q[A] -> Q(lambda), v(A) -> v(lambda), identifies C(A)
with the units u of the field whose matrix v(A) has integer entries. With a
rank-one unit group every unit is zeta^j * eps^s, so C(A) is found by
scanning (s, j) in increasing order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .intmat import IntMatrix, QMatrix, char_poly, inverse, is_unimodular, mat_pow, q_matrix, to_int_matrix
from .numfield import (
    DEFAULT_MAX_BITS,
    FieldData,
    FieldElement,
    NumberField,
    find_torsion_generator,
    in_order,
)
from .polyalg import cyclotomic_factorization, squarefree_part

INFINITE = math.inf
DEFAULT_S_MAX = 64


class ScanLimitError(RuntimeError):
    """No integral power of the fundamental unit was found below s_max."""

    def __init__(self, s_max: int, zlambda_power: Optional[int]):
        self.s_max = s_max
        self.zlambda_power = zlambda_power
        msg = f"no integral image for s <= {s_max}"
        if zlambda_power is not None:
            msg += f"; eps^{zlambda_power} lies in Z[lambda], so the scan would stop by s = {zlambda_power}"
        super().__init__(msg)


@dataclass
class CentralizerDescription:
    """C(A) = <B> x <J> with gamma(B) = zeta^j * eps^s."""

    B: IntMatrix
    B_inverse: IntMatrix
    J: IntMatrix
    torsion_order: int
    power_index: int
    torsion_power: int
    generated_by_A: bool
    matched_representative: Optional[str] = None
    rejected: list[tuple[int, int, QMatrix]] = field(default_factory=list)


def gamma_matrix(u: FieldElement, A: IntMatrix) -> QMatrix:
    """v(A) for u = v(lambda); the inverse of the isomorphism gamma."""
    if char_poly(A) != u.field.poly:
        raise ValueError(f"char poly of A is {char_poly(A)}, field is defined by {u.field.poly}")
    n = A.n
    acc = [[Fraction(0)] * n for _ in range(n)]
    power = IntMatrix.identity(n)
    for k, c in enumerate(u.coords):
        if c:
            for i in range(n):
                for j in range(n):
                    acc[i][j] += c * power[i, j]
        power = power @ A
    return q_matrix(acc)


def _check_member(M: IntMatrix, A: IntMatrix) -> None:
    assert is_unimodular(M), f"{M} is not unimodular"
    assert M @ A == A @ M, f"{M} does not commute with A"


def matrix_order(M: IntMatrix, cap: int = 64) -> int | float:
    """Least k <= cap with M^k = I, or INFINITE when M has infinite order.

    Infinite order is certified exactly: either the characteristic polynomial
    is not a product of cyclotomics, or M is not annihilated by its squarefree
    part (so M is not diagonalizable).
    """
    if not is_unimodular(M):
        raise ValueError("matrix_order needs a unimodular matrix")
    P = M
    for k in range(1, cap + 1):
        if P.is_identity():
            return k
        P = P @ M
    chi = char_poly(M)
    if cyclotomic_factorization(chi) is None:
        return INFINITE
    sq = squarefree_part(chi)
    acc = IntMatrix.zero(M.n)
    for c in reversed(sq.coeffs):
        acc = acc @ M + IntMatrix.identity(M.n) * c
    if acc != IntMatrix.zero(M.n):
        return INFINITE
    raise ValueError(f"matrix has finite order larger than cap={cap}")


def half_order_is_minus_identity(J: IntMatrix) -> bool:
    """For J of even order 2k, whether J^k = -I."""
    order = matrix_order(J)
    if order == INFINITE or order % 2:
        raise ValueError(f"J must have finite even order, got {order}")
    return mat_pow(J, order // 2) == -IntMatrix.identity(J.n)


def power_to_minus_identity(J: IntMatrix, l: int) -> Optional[int]:
    """Least t >= 1 with (J^l)^t = -I, or None if no power of J^l is -I."""
    order = matrix_order(J)
    if order == INFINITE:
        raise ValueError("J must have finite order")
    if not 0 < l < order:
        raise ValueError(f"need 0 < l < {order}")
    minus = -IntMatrix.identity(J.n)
    if minus not in _cyclic_group(J, int(order)):
        raise ValueError("-I is not in <J>")
    base = mat_pow(J, l)
    P = base
    for t in range(1, 2 * int(order) + 1):
        if P == minus:
            return t
        P = P @ base
    return None


def _cyclic_group(J: IntMatrix, order: int) -> set[IntMatrix]:
    out = set()
    P = IntMatrix.identity(J.n)
    for _ in range(order):
        out.add(P)
        P = P @ J
    return out


def find_J(A: IntMatrix, zeta: FieldElement, order: int) -> IntMatrix:
    """Canonical matrix generator of <gamma^-1(zeta)>.

    Among the images of zeta^r, gcd(r, order) = 1, the one with the
    lexicographically smallest entry sequence is returned.
    """
    candidates = []
    for r in range(1, order + 1):
        if math.gcd(r, order) != 1:
            continue
        M = to_int_matrix(gamma_matrix(zeta**r, A))
        if M is None:
            raise ValueError(f"zeta^{r} has a non-integral image")
        candidates.append(M)
    J = min(candidates, key=lambda M: M.entries())
    _check_member(J, A)
    assert mat_pow(J, order).is_identity()
    if order % 2 == 0:
        assert mat_pow(J, order // 2) == -IntMatrix.identity(A.n)
    return J


def _least_zlambda_power(eps: FieldElement, zeta: FieldElement, m: int, limit: int) -> Optional[int]:
    for s in range(1, limit + 1):
        e = eps**s
        if any(in_order(zeta**j * e) for j in range(m)):
            return s
    return None


def integral_unit_scan(
    A: IntMatrix,
    fd: FieldData,
    s_max: int = DEFAULT_S_MAX,
    torsion: Optional[tuple[int, FieldElement]] = None,
    max_bits: int = DEFAULT_MAX_BITS,
) -> CentralizerDescription:
    """Compute C(A) = <B> x <J> by testing which zeta^j eps^s have integral images.

    The torsion part is the set of integral zeta^j (s = 0); B is the first
    integral zeta^j eps^s with s >= 1, scanning s and then j upward.
    """
    K = NumberField(char_poly(A))
    if fd.poly != K.poly:
        raise ValueError(f"field data is for {fd.poly}, A has char poly {K.poly}")
    if torsion is None:
        torsion = find_torsion_generator(K, fd.integral_basis, max_bits)
    m, zeta = torsion
    eps = fd.unit(K)

    tors_step = next(j for j in range(1, m + 1) if to_int_matrix(gamma_matrix(zeta**j, A)) is not None)
    t_order = m // tors_step
    t_gen = zeta**tors_step
    J = find_J(A, t_gen, t_order)

    rejected = []
    zeta_pows = [zeta**j for j in range(m)]
    eps_s = K.one
    for s in range(1, s_max + 1):
        eps_s = eps_s * eps
        for j in range(m):
            img = gamma_matrix(zeta_pows[j] * eps_s, A)
            B = to_int_matrix(img)
            if B is None:
                if j == 0:
                    rejected.append((s, j, img))
                continue
            _check_member(B, A)
            Binv = inverse(B)
            group_J = _cyclic_group(J, t_order)
            reps = {
                "A": A,
                "-A": -A,
                "A^-1": inverse(A),
                "-A^-1": -inverse(A),
            }
            matched = None
            for name, R in reps.items():
                if any(R @ Jp == B for Jp in group_J):
                    matched = name
                    break
            desc = CentralizerDescription(
                B=B,
                B_inverse=Binv,
                J=J,
                torsion_order=t_order,
                power_index=s,
                torsion_power=j,
                generated_by_A=matched is not None,
                matched_representative=matched,
                rejected=rejected,
            )
            return desc
    raise ScanLimitError(s_max, _least_zlambda_power(eps, zeta, m, 64 * max(s_max, 1)))

