"""Quadratic forms on H_1(surface; Z/2) attached to (orientation, matching).

A form is stored by its values on the homology basis plus the intersection
Gram matrix; every other value follows from the polarization identity
``q(x + y) = q(x) + q(y) + x.y``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import gf2
from .errors import DegenerateForm, NotSimple
from .kasteleyn import Orientation
from .surface_map import HomologyBasis, SurfaceMap, check_closed, is_simple, left_darts, visits


@dataclass(frozen=True)
class QuadraticForm:
    values: int  # bit i = q(a_i)
    gram: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.gram)

    @property
    def genus(self) -> int:
        return self.dim // 2

    def __call__(self, x: int) -> int:
        out = gf2.parity(self.values & x)
        idx = list(gf2.bits(x))
        for a, i in enumerate(idx):
            row = self.gram[i]
            for j in idx[a + 1 :]:
                out ^= (row >> j) & 1
        return out

    def dot(self, x: int, y: int) -> int:
        return gf2.bilinear(self.gram, x, y)

    def describe(self) -> str:
        n = self.dim
        g = ",".join(gf2.to_string(r, n) for r in self.gram)
        sign = "+1" if arf(self) == 1 else "-1"
        return f"b={gf2.to_string(self.values, n) or '-'} G={g or '-'} Arf={sign}"


def eps_curve(m: SurfaceMap, K: Orientation, walk: Sequence[int]) -> int:
    """Product over the walk of +1 (dart along K) / -1 (against K)."""
    check_closed(m, walk)
    s = 1
    for d in walk:
        if not K.agrees(d):
            s = -s
    return s


def ell_left(m: SurfaceMap, D: Sequence[int], walk: Sequence[int]) -> int:
    """Number of vertices of a simple cycle whose dimer leaves it on the left."""
    check_closed(m, walk)
    if not is_simple(m, walk):
        raise NotSimple("walk repeats a vertex")
    dimer_dart = {}
    for e in D:
        dimer_dart[m.endpoints[e][0]] = 2 * e
        dimer_dart[m.endpoints[e][1]] = 2 * e + 1
    on_curve = {d >> 1 for d in walk}
    count = 0
    for v, incoming, outgoing in visits(m, walk):
        d = dimer_dart[v]
        if d >> 1 in on_curve:
            continue
        if d in set(left_darts(m, incoming, outgoing)):
            count += 1
    return count


def curve_value(m: SurfaceMap, K: Orientation, D: Sequence[int], walk: Sequence[int]) -> int:
    """q of the class of one simple cycle: (-1)^q = -eps(C) (-1)^ell(C)."""
    neg = eps_curve(m, K, walk) == -1
    return (1 + neg + ell_left(m, D, walk)) & 1


def build_form(
    m: SurfaceMap, basis: HomologyBasis, K: Orientation, D: Sequence[int]
) -> QuadraticForm:
    values = 0
    for i, walk in enumerate(basis.cycles):
        values |= curve_value(m, K, D, walk) << i
    return QuadraticForm(values, basis.gram)


def arf_sum(q: QuadraticForm) -> int:
    return sum(1 - 2 * q(x) for x in range(1 << q.dim))


def arf(q: QuadraticForm) -> int:
    s = arf_sum(q)
    if abs(s) != 1 << q.genus or q.dim % 2:
        raise DegenerateForm(f"character sum {s} is not +-2^{q.genus}")
    return 1 if s > 0 else -1


def delta_of_pair(q: QuadraticForm, q2: QuadraticForm) -> int:
    """Unique class ``Delta`` with ``(q + q2)(x) = Delta . x`` for all x."""
    if q.gram != q2.gram:
        raise ValueError("forms live on different Gram matrices")
    linear = q.values ^ q2.values
    inv = gf2.inverse(q.gram, q.dim)
    return gf2.mat_vec(inv, linear)


def all_forms(gram: Sequence[int]) -> Iterator[QuadraticForm]:
    gram = tuple(gram)
    for values in range(1 << len(gram)):
        yield QuadraticForm(values, gram)


def standard_gram(g: int) -> tuple[int, ...]:
    """Symplectic Gram matrix with hyperbolic pairs (2i, 2i+1)."""
    rows = [0] * (2 * g)
    for i in range(g):
        rows[2 * i] |= 1 << (2 * i + 1)
        rows[2 * i + 1] |= 1 << (2 * i)
    return tuple(rows)


def arf_census(g: int) -> tuple[int, int]:
    """(number of Arf +1 forms, number of Arf -1 forms) on a genus-g lattice."""
    plus = sum(1 for q in all_forms(standard_gram(g)) if arf(q) == 1)
    return plus, (1 << (2 * g)) - plus
