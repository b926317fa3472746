"""Exterior-algebra oracle for Pfaffian and determinant identities.

Elements of the Grassmann algebra on ``n`` generators are dicts from
monomials (bitmasks of generator indices, read in increasing order) to
rational coefficients.  Nothing here calls the elimination-based Pfaffian;
that independence is the point of the module.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .errors import MismatchedAlgebra, NotSkew, OddDimension, TooLarge
from .exact import determinant, permutation_sign


def _reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenated monomial ``a`` then ``b``."""
    swaps = 0
    rest = b
    while rest:
        low = rest & -rest
        j = low.bit_length() - 1
        swaps += (a >> (j + 1)).bit_count()
        rest ^= low
    return -1 if swaps & 1 else 1


class GrassmannElement:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None) -> None:
        self.n = n
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def scalar(cls, n: int, c=1) -> "GrassmannElement":
        return cls(n, {0: c})

    @classmethod
    def generator(cls, n: int, i: int) -> "GrassmannElement":
        return cls(n, {1 << i: 1})

    def _check(self, other: "GrassmannElement") -> None:
        if self.n != other.n:
            raise MismatchedAlgebra(f"{self.n} vs {other.n} generators")

    def __add__(self, other: "GrassmannElement") -> "GrassmannElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GrassmannElement(self.n, out)

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "GrassmannElement") -> "GrassmannElement":
        return self + (-other)

    def scale(self, c) -> "GrassmannElement":
        return GrassmannElement(self.n, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GrassmannElement):
            return self.scale(Fraction(other))
        return multiply(self, other)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        return isinstance(other, GrassmannElement) and self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            gens = "".join(f"e{i}" for i in range(self.n) if (k >> i) & 1) or "1"
            parts.append(f"{self.terms[k]}*{gens}")
        return " + ".join(parts)

    def coefficient(self, monomial: int) -> Fraction:
        return self.terms.get(monomial, Fraction(0))

    def top(self) -> Fraction:
        """Berezin integral with the standard order of generators."""
        return self.coefficient((1 << self.n) - 1)

    def integrate(self, order: Sequence[int]) -> Fraction:
        """Coefficient of the monomial written in the given generator order."""
        if sorted(order) != list(range(self.n)):
            raise ValueError("integration order must list every generator once")
        return permutation_sign(order) * self.top()


def multiply(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    a._check(b)
    out: dict[int, Fraction] = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            if ka & kb:
                continue
            k = ka | kb
            out[k] = out.get(k, 0) + _reorder_sign(ka, kb) * va * vb
    return GrassmannElement(a.n, out)


def exp_nilpotent(x: GrassmannElement) -> GrassmannElement:
    """``exp(x)`` for ``x`` without constant term; the series terminates."""
    if x.coefficient(0):
        raise ValueError("exp_nilpotent needs an element with zero constant term")
    result = GrassmannElement.scalar(x.n)
    power = GrassmannElement.scalar(x.n)
    k = 0
    while True:
        k += 1
        power = multiply(power, x).scale(Fraction(1, k))
        if not power.terms:
            return result
        result = result + power


def quadratic_element(A: Sequence[Sequence]) -> GrassmannElement:
    """``1/2 sum_ij a_ij phi_i phi_j`` for skew ``A``."""
    n = len(A)
    terms = {}
    for i in range(n):
        for j in range(n):
            if i != j and A[i][j] != 0:
                sign = 1 if i < j else -1
                key = (1 << i) | (1 << j)
                terms[key] = terms.get(key, 0) + Fraction(1, 2) * sign * Fraction(A[i][j])
    return GrassmannElement(n, terms)


def _check_skew(A: Sequence[Sequence]) -> None:
    n = len(A)
    for i in range(n):
        for j in range(n):
            if A[i][j] != -A[j][i]:
                raise NotSkew(f"entries ({i},{j}) and ({j},{i}) are not opposite")


def integral_neutral(A: Sequence[Sequence]) -> Fraction:
    """Gaussian Berezin integral of a skew matrix; equals its Pfaffian."""
    if len(A) % 2:
        raise OddDimension(f"odd number of generators ({len(A)})")
    _check_skew(A)
    return exp_nilpotent(quadratic_element(A)).top()


def integral_charged(A: Sequence[Sequence]) -> Fraction:
    """``int exp(sum psi_i a_ij psi*_j) dpsi dpsi*`` for square ``A``.

    Generators are ordered ``psi_1..psi_k, psi*_1..psi*_k``.  Equals
    ``(-1)^(k(k-1)/2) det A``.
    """
    k = len(A)
    n = 2 * k
    terms = {}
    for i in range(k):
        for j in range(k):
            if A[i][j] != 0:
                terms[(1 << i) | (1 << (k + j))] = Fraction(A[i][j])
    return exp_nilpotent(GrassmannElement(n, terms)).top()


def block_skew(A: Sequence[Sequence]) -> list[list[Fraction]]:
    """``[[0, A], [-A^T, 0]]``."""
    k = len(A)
    out = [[Fraction(0)] * (2 * k) for _ in range(2 * k)]
    for i in range(k):
        for j in range(k):
            out[i][k + j] = Fraction(A[i][j])
            out[k + j][i] = -Fraction(A[i][j])
    return out


def charged_sign(k: int) -> int:
    return -1 if (k * (k - 1) // 2) % 2 else 1


def charged_check(A: Sequence[Sequence]) -> dict:
    """Charged integral, signed determinant and block Pfaffian side by side."""
    k = len(A)
    integral = integral_charged(A)
    det = determinant(A)
    block = integral_neutral(block_skew(A))
    expected = charged_sign(k) * det
    return {
        "integral": integral,
        "signed_det": expected,
        "block_pf": block,
        "ok": integral == expected == block,
    }


def pf_squared_check(A: Sequence[Sequence]) -> bool:
    pf = integral_neutral(A)
    return pf * pf == determinant(A)


def random_skew(rng: random.Random, n: int, span: int = 9, denom: int = 4) -> list[list[Fraction]]:
    """Seeded random skew matrix with small rational entries."""
    A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = Fraction(rng.randint(-span, span), rng.randint(1, denom))
            A[i][j] = x
            A[j][i] = -x
    return A


def random_square(rng: random.Random, n: int, span: int = 9, denom: int = 4) -> list[list[Fraction]]:
    return [
        [Fraction(rng.randint(-span, span), rng.randint(1, denom)) for _ in range(n)]
        for _ in range(n)
    ]


def partition_as_grassmann(m, w, basis=None, max_vertices: int = 12) -> Fraction:
    """Partition function as a signed sum of Berezin integrals.

    Each class integral is taken with the measure ordered along the base
    matching's pairs and weighted by the class's Arf invariant and the
    orientation signs of those pairs.
    """
    from .kasteleyn import class_representatives
    from .matchings import matching_list
    from .pfaffian import kasteleyn_matrix, orientation_sign
    from .spinform import arf, build_form
    from .surface_map import cocycle_basis, homology_basis

    if m.n_vertices > max_vertices:
        raise TooLarge(f"{m.n_vertices} vertices exceeds the Grassmann cap of {max_vertices}")
    found = matching_list(m)
    if not found:
        return Fraction(0)
    D0 = found[0]
    basis = basis or homology_basis(m)
    pairs = sorted(
        (min(m.endpoints[e]), max(m.endpoints[e]), e) for e in D0
    )
    order = [x for i, j, _ in pairs for x in (i, j)]
    total = Fraction(0)
    for rep in class_representatives(m, cocycles=cocycle_basis(m, basis)):
        K = rep.orientation
        A = kasteleyn_matrix(m, K, w).entries
        sign = arf(build_form(m, basis, K, D0))
        for i, j, e in pairs:
            sign *= orientation_sign(m, K, e, i, j)
        total += sign * exp_nilpotent(quadratic_element(A)).integrate(order)
    return total / (1 << m.genus)
