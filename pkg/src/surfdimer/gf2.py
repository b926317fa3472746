"""GF(2) linear algebra on Python integers used as bit vectors.

Bit ``i`` of an integer is coordinate ``i``.  Matrices are sequences of row
integers.
"""
from __future__ import annotations

from typing import Iterable, Sequence


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits(x: int) -> Iterable[int]:
    """Indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def from_indices(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out ^= 1 << i
    return out


def to_string(x: int, width: int) -> str:
    """Bits in coordinate order, coordinate 0 first."""
    return "".join("1" if (x >> i) & 1 else "0" for i in range(width))


def from_string(s: str) -> int:
    out = 0
    for i, ch in enumerate(s):
        if ch == "1":
            out |= 1 << i
        elif ch != "0":
            raise ValueError(f"not a bit string: {s!r}")
    return out


class Echelon:
    """Incrementally built row-echelon basis with provenance tags.

    Every stored row carries a tag recording which tagged generators were
    combined to produce it, so reducing a vector also expresses it in terms
    of those generators.
    """

    def __init__(self) -> None:
        self._rows: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, row: int) -> tuple[int, int]:
        """Return ``(residual, tag)`` with ``row = residual + combination(tag)``.

        The residual is fully reduced: none of its set bits is a pivot.
        """
        residual, tag = row, 0
        limit = row.bit_length()
        while True:
            rest = residual & ((1 << limit) - 1)
            if not rest:
                return residual, tag
            top = rest.bit_length() - 1
            hit = self._rows.get(top)
            if hit is not None:
                residual ^= hit[0]
                tag ^= hit[1]
            limit = top

    def add(self, row: int, tag: int = 0) -> bool:
        """Insert ``row``; return False if it was already in the span."""
        residual, rtag = self.reduce(row)
        if not residual:
            return False
        self._rows[residual.bit_length() - 1] = (residual, rtag ^ tag)
        return True

    def contains(self, row: int) -> bool:
        return self.reduce(row)[0] == 0


def rank(rows: Iterable[int]) -> int:
    ech = Echelon()
    return sum(ech.add(r) for r in rows)


def inverse(rows: Sequence[int], n: int) -> list[int]:
    """Inverse of an ``n x n`` matrix; raises ``ZeroDivisionError`` if singular."""
    work = [(rows[i], 1 << i) for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if (work[r][0] >> col) & 1), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular over GF(2)")
        work[col], work[pivot] = work[pivot], work[col]
        prow, pinv = work[col]
        for r in range(n):
            if r != col and (work[r][0] >> col) & 1:
                work[r] = (work[r][0] ^ prow, work[r][1] ^ pinv)
    return [work[i][1] for i in range(n)]


def mat_vec(rows: Sequence[int], x: int) -> int:
    """Row-major product ``M x``."""
    out = 0
    for i, r in enumerate(rows):
        if parity(r & x):
            out |= 1 << i
    return out


def transpose(rows: Sequence[int], ncols: int) -> list[int]:
    out = [0] * ncols
    for i, r in enumerate(rows):
        for j in bits(r):
            out[j] |= 1 << i
    return out


def bilinear(rows: Sequence[int], x: int, y: int) -> int:
    """``x^T M y`` over GF(2)."""
    return parity(x & mat_vec(rows, y))
