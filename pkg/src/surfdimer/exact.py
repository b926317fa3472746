"""Exact rational matrix kernels: Pfaffian, determinant, inverse, minors."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NotSkew, OddSize, SingularMatrix

Matrix = list[list[Fraction]]


def to_fractions(A: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in A]


def check_skew(A: Sequence[Sequence]) -> None:
    n = len(A)
    for i in range(n):
        if len(A[i]) != n:
            raise NotSkew("matrix is not square")
        if A[i][i] != 0:
            raise NotSkew(f"diagonal entry {i} is nonzero")
        for j in range(i + 1, n):
            if A[i][j] != -A[j][i]:
                raise NotSkew(f"entries ({i},{j}) and ({j},{i}) are not opposite")


def pfaffian(A: Sequence[Sequence]) -> Fraction:
    """Pfaffian by skew-symmetric elimination over the rationals.

    Each step pivots the first row onto its first nonzero entry (a
    simultaneous row/column swap, which flips the sign), then replaces the
    trailing block by its Schur complement so that
    ``Pf(A) = a_01 * Pf(S)``.
    """
    n = len(A)
    if n % 2:
        raise OddSize(f"Pfaffian of odd size {n}")
    check_skew(A)
    M = to_fractions(A)
    result = Fraction(1)
    for k in range(0, n, 2):
        pivot = next((j for j in range(k + 1, n) if M[k][j] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k + 1:
            M[k + 1], M[pivot] = M[pivot], M[k + 1]
            for row in M:
                row[k + 1], row[pivot] = row[pivot], row[k + 1]
            result = -result
        p = M[k][k + 1]
        result *= p
        r0, r1 = M[k], M[k + 1]
        for i in range(k + 2, n):
            ci = (r1[i], r0[i])
            if ci == (0, 0):
                continue
            Mi = M[i]
            for j in range(k + 2, n):
                if r0[j] == 0 and r1[j] == 0:
                    continue
                # S_ij = A_ij + (A_1i A_0j - A_0i A_1j) / A_01
                Mi[j] += (ci[0] * r0[j] - ci[1] * r1[j]) / p
    return result


def determinant(A: Sequence[Sequence]) -> Fraction:
    """Determinant by Gaussian elimination with row pivoting."""
    M = to_fractions(A)
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if M[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            M[c], M[pivot] = M[pivot], M[c]
            det = -det
        p = M[c][c]
        det *= p
        for r in range(c + 1, n):
            if M[r][c] != 0:
                f = M[r][c] / p
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def inverse(A: Sequence[Sequence]) -> Matrix:
    M = to_fractions(A)
    n = len(M)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def delete(A: Sequence[Sequence], indices) -> Matrix:
    """Remove the listed rows and columns."""
    drop = set(indices)
    keep = [i for i in range(len(A)) if i not in drop]
    return [[A[i][j] for j in keep] for i in keep]


def submatrix(A: Sequence[Sequence], indices: Sequence[int]) -> Matrix:
    return [[A[i][j] for j in indices] for i in indices]


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation listing ``seq`` (distinct comparable items)."""
    inv = 0
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                inv += 1
    return -1 if inv % 2 else 1


def pfaffian_expansion(A: Sequence[Sequence]) -> Fraction:
    """Pfaffian as the signed sum over all pairings of the indices.

    Exponential; used as an oracle on small matrices.
    """
    n = len(A)
    if n % 2:
        raise OddSize(f"Pfaffian of odd size {n}")

    def rec(rest: tuple[int, ...]) -> Fraction:
        if not rest:
            return Fraction(1)
        i = rest[0]
        total = Fraction(0)
        for k in range(1, len(rest)):
            j = rest[k]
            if A[i][j] == 0:
                continue
            sign = -1 if (k - 1) % 2 else 1
            total += sign * Fraction(A[i][j]) * rec(rest[1:k] + rest[k + 1 :])
        return total

    return rec(tuple(range(n)))
