"""Kasteleyn matrices and the Pfaffian formulas for dimer observables."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .errors import (
    IdentityViolated,
    OddVertexCount,
    SharedVertex,
    SingularMatrix,
    ZeroPartition,
)
from .kasteleyn import Orientation, OrientationClass, class_representatives
from .matchings import ClassResolvedPartition, check_matching, matching_list
from .spinform import QuadraticForm, arf, build_form
from .surface_map import HomologyBasis, SurfaceMap, cocycle_basis, homology_basis

pfaffian_exact = exact.pfaffian


@dataclass(frozen=True)
class KasteleynMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


def kasteleyn_matrix(m: SurfaceMap, K: Orientation, w: Sequence) -> KasteleynMatrix:
    n = m.n_vertices
    A = [[Fraction(0)] * n for _ in range(n)]
    for e, (u, v) in enumerate(m.endpoints):
        if u == v:
            continue
        i, j = (u, v) if K.tail(e) == 2 * e else (v, u)
        A[i][j] += w[e]
        A[j][i] -= w[e]
    return KasteleynMatrix(tuple(tuple(r) for r in A))


def orientation_sign(m: SurfaceMap, K: Orientation, e: int, i: int, j: int) -> int:
    """+1 if ``K`` orients edge ``e`` from vertex ``i`` to vertex ``j``."""
    return 1 if m.vertex_of[K.tail(e)] == i else -1


def matching_sign(m: SurfaceMap, K: Orientation, D: Sequence[int]) -> int:
    """Sign of the matching's term in the Pfaffian of the Kasteleyn matrix."""
    pairs = []
    for e in D:
        u, v = m.endpoints[e]
        i, j = min(u, v), max(u, v)
        pairs.append((i, j, e))
    pairs.sort()
    seq = [x for i, j, _ in pairs for x in (i, j)]
    s = exact.permutation_sign(seq)
    for i, j, e in pairs:
        s *= orientation_sign(m, K, e, i, j)
    return s


@dataclass(frozen=True)
class ClassTerm:
    """One summand of the partition formula."""

    mask: int
    orientation: Orientation
    form: QuadraticForm | None
    arf: int
    eps: int
    pf: Fraction

    @property
    def sigma(self) -> int:
        return self.arf * self.eps

    @property
    def summand(self) -> Fraction:
        return self.sigma * self.pf


@dataclass
class Setup:
    """Everything derived from a map that the Pfaffian formulas share."""

    m: SurfaceMap
    basis: HomologyBasis
    classes: list[OrientationClass]
    D0: tuple[int, ...] | None

    @classmethod
    def of(cls, m: SurfaceMap, basis: HomologyBasis | None = None, D0=None) -> "Setup":
        if m.n_vertices % 2:
            raise OddVertexCount(f"{m.n_vertices} vertices")
        basis = basis or homology_basis(m)
        classes = class_representatives(m, cocycles=cocycle_basis(m, basis))
        if D0 is None:
            found = matching_list(m)
            D0 = found[0] if found else None
        else:
            D0 = check_matching(m, D0)
        return cls(m, basis, classes, D0)


def _term(setup: Setup, w: Sequence, rep: OrientationClass) -> ClassTerm:
    m, K = setup.m, rep.orientation
    pf = exact.pfaffian(kasteleyn_matrix(m, K, w).entries)
    if setup.D0 is None:
        return ClassTerm(rep.mask, K, None, 0, 0, pf)
    q = build_form(m, setup.basis, K, setup.D0)
    return ClassTerm(rep.mask, K, q, arf(q), matching_sign(m, K, setup.D0), pf)


def class_terms(
    m: SurfaceMap,
    w: Sequence,
    basis: HomologyBasis | None = None,
    D0=None,
    workers: int = 1,
    setup: Setup | None = None,
) -> list[ClassTerm]:
    """Per-class Arf, sign and Pfaffian, in ascending mask order."""
    setup = setup or Setup.of(m, basis, D0)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda r: _term(setup, w, r), setup.classes))
    return [_term(setup, w, r) for r in setup.classes]


def partition_pfaffian(
    m: SurfaceMap,
    basis: HomologyBasis | None,
    w: Sequence,
    D0=None,
    workers: int = 1,
) -> Fraction:
    """Z = 2^-g * sum over classes of Arf * eps(D0) * Pf."""
    terms = class_terms(m, w, basis, D0, workers)
    if terms and terms[0].form is None:
        if any(t.pf != 0 for t in terms):
            raise IdentityViolated("no matching but nonzero Pfaffian", terms[0].pf, 0)
        return Fraction(0)
    total = sum((t.summand for t in terms), Fraction(0))
    return total / (1 << m.genus)


def z_alpha_pfaffian(
    m: SurfaceMap,
    basis: HomologyBasis | None,
    w: Sequence,
    D0,
    alpha: int,
    terms: list[ClassTerm] | None = None,
) -> Fraction:
    """Z_alpha(D0) by character inversion over the 2^2g classes."""
    if terms is None:
        terms = class_terms(m, w, basis, D0)
    total = Fraction(0)
    for t in terms:
        sign = -1 if t.form(alpha) else 1
        total += sign * t.eps * t.pf
    return total / (1 << (2 * m.genus))


@dataclass(frozen=True)
class IdentityReport:
    mask: int
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def pfaffian_identity(
    m: SurfaceMap,
    basis: HomologyBasis,
    K: Orientation,
    w: Sequence,
    D0,
    table: ClassResolvedPartition,
    mask: int = 0,
    strict: bool = True,
) -> IdentityReport:
    """eps(D0) Pf(A^K) against sum_alpha (-1)^q(alpha) Z_alpha(D0)."""
    lhs = matching_sign(m, K, D0) * exact.pfaffian(kasteleyn_matrix(m, K, w).entries)
    q = build_form(m, basis, K, D0)
    rhs = Fraction(0)
    for alpha, z in table.table.items():
        rhs += -z if q(alpha) else z
    rep = IdentityReport(mask, lhs, rhs)
    if strict and not rep.holds:
        raise IdentityViolated(f"Pfaffian identity (class {mask})", lhs, rhs)
    return rep


def _edge_pairs(m: SurfaceMap, edges: Sequence[int]) -> list[int]:
    I: list[int] = []
    for e in edges:
        I.extend(m.endpoints[e])
    return I


def _edge_factor(m: SurfaceMap, K: Orientation, w: Sequence, edges: Sequence[int]) -> Fraction:
    """Product of each edge's own signed contribution to its matrix entry.

    On a simple graph this is the product of the entries ``a_ij``; with
    parallel edges it picks out the derivative in that edge's weight alone.
    """
    prod = Fraction(1)
    for e in edges:
        u, v = m.endpoints[e]
        prod *= orientation_sign(m, K, e, u, v) * Fraction(w[e])
    return prod


def correlation_pfaffian(
    m: SurfaceMap,
    basis: HomologyBasis | None,
    w: Sequence,
    edges: Sequence[int],
    allow_shared: bool = False,
    workers: int = 1,
    setup: Setup | None = None,
) -> Fraction:
    """Local correlation via Pfaffian minors of every class matrix.

    Uses ``(-1)^sigma(I) Pf(A_I)`` (deleting the matched rows and columns)
    rather than inverses, so singular class matrices are handled.  Loops
    count as sharing a vertex.
    """
    return correlations_pfaffian(m, basis, w, [edges], allow_shared, workers, setup)[0]


def correlations_pfaffian(
    m: SurfaceMap,
    basis: HomologyBasis | None,
    w: Sequence,
    edge_sets: Sequence[Sequence[int]],
    allow_shared: bool = False,
    workers: int = 1,
    setup: Setup | None = None,
) -> list[Fraction]:
    """Batch form of :func:`correlation_pfaffian` sharing the per-class work."""
    sets = []
    for edges in edge_sets:
        edges = list(dict.fromkeys(edges))
        I = _edge_pairs(m, edges)
        shared = len(set(I)) != len(I)
        if shared and not allow_shared:
            raise SharedVertex(f"edges {edges} share a vertex")
        sets.append((edges, I, shared))
    setup = setup or Setup.of(m, basis)
    if setup.D0 is None:
        raise ZeroPartition("graph admits no perfect matching")

    def one(rep: OrientationClass) -> tuple[Fraction, list[Fraction]]:
        K = rep.orientation
        A = kasteleyn_matrix(m, K, w).entries
        q = build_form(m, setup.basis, K, setup.D0)
        sigma = arf(q) * matching_sign(m, K, setup.D0)
        pf = exact.pfaffian(A)
        # complementary minors come cheaply from the inverse when it exists
        inv = exact.inverse(A) if pf != 0 else None
        nums = []
        for edges, I, shared in sets:
            if shared:
                nums.append(Fraction(0))
                continue
            if inv is not None:
                minor = (-1) ** len(edges) * pf * exact.pfaffian(exact.submatrix(inv, I))
            else:
                rest = [x for x in range(m.n_vertices) if x not in set(I)]
                minor = exact.permutation_sign(I + rest) * exact.pfaffian(exact.delete(A, I))
            nums.append(sigma * _edge_factor(m, K, w, edges) * minor)
        return sigma * pf, nums

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, setup.classes))
    else:
        parts = [one(r) for r in setup.classes]
    den = sum((p[0] for p in parts), Fraction(0))
    if den == 0:
        raise ZeroPartition("partition function vanishes")
    return [sum((p[1][k] for p in parts), Fraction(0)) / den for k in range(len(sets))]


def correlation_inverse(
    m: SurfaceMap,
    basis: HomologyBasis | None,
    w: Sequence,
    edges: Sequence[int],
    setup: Setup | None = None,
) -> Fraction:
    """Correlation through inverse Kasteleyn matrices.

    Only valid when every class matrix is invertible; raises
    :class:`SingularMatrix` otherwise.
    """
    edges = list(dict.fromkeys(edges))
    I = _edge_pairs(m, edges)
    if len(set(I)) != len(I):
        return Fraction(0)
    setup = setup or Setup.of(m, basis)
    k = len(edges)
    num = den = Fraction(0)
    for rep in setup.classes:
        K = rep.orientation
        A = kasteleyn_matrix(m, K, w)
        pf = exact.pfaffian(A.entries)
        if pf == 0:
            raise SingularMatrix(f"class {rep.mask} has a singular Kasteleyn matrix")
        inv = exact.inverse(A.entries)
        q = build_form(m, setup.basis, K, setup.D0)
        sigma = arf(q) * matching_sign(m, K, setup.D0)
        prod = _edge_factor(m, K, w, edges)
        minor = exact.pfaffian(exact.submatrix(inv, I))
        num += sigma * pf * prod * minor
        den += sigma * pf
    return (-1) ** k * num / den


def correlation_planar(m: SurfaceMap, K: Orientation, w: Sequence, edges: Sequence[int]) -> Fraction:
    """Single-matrix correlation formula for genus 0."""
    if m.genus != 0:
        raise ValueError("single Pfaffian formula needs a planar map")
    edges = list(dict.fromkeys(edges))
    I = _edge_pairs(m, edges)
    if len(set(I)) != len(I):
        return Fraction(0)
    A = kasteleyn_matrix(m, K, w)
    inv = exact.inverse(A.entries)
    prod = _edge_factor(m, K, w, edges)
    return (-1) ** len(edges) * prod * exact.pfaffian(exact.submatrix(inv, I))
