"""Kasteleyn orientations: construction, checks, equivalence and classes."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import gf2
from .errors import NotACocycle, NotKasteleyn, OddVertexCount
from .surface_map import (
    CocycleBasis,
    EdgeChain,
    SurfaceMap,
    cocycle_basis,
    dual_spanning_tree,
    spanning_tree,
)


@dataclass(frozen=True)
class Orientation:
    """Edge orientation; bit ``e`` set means edge ``e`` has tail dart ``2e + 1``.

    With bit ``e`` clear the edge points from its first endpoint to its
    second.
    """

    bits: int
    n_edges: int

    def tail(self, e: int) -> int:
        return 2 * e + ((self.bits >> e) & 1)

    def agrees(self, d: int) -> bool:
        """True if ``d`` runs along the orientation of its edge."""
        return self.tail(d >> 1) == d

    def reversed(self, z: EdgeChain) -> "Orientation":
        return Orientation(self.bits ^ z, self.n_edges)

    def to_string(self) -> str:
        return gf2.to_string(self.bits, self.n_edges)

    @classmethod
    def from_string(cls, s: str) -> "Orientation":
        return cls(gf2.from_string(s), len(s))

    @classmethod
    def from_tails(cls, tails: Sequence[int]) -> "Orientation":
        b = 0
        for e, d in enumerate(tails):
            if d >> 1 != e:
                raise ValueError(f"dart {d} does not belong to edge {e}")
            b |= (d & 1) << e
        return cls(b, len(tails))


@dataclass(frozen=True)
class FaceCheck:
    """Result of :func:`is_kasteleyn`; ``disagreements[f]`` counts boundary
    darts of face ``f`` running against the orientation."""

    ok: bool
    disagreements: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.ok

    @property
    def bad_faces(self) -> list[int]:
        return [f for f, k in enumerate(self.disagreements) if k % 2 == 0]


def face_disagreements(m: SurfaceMap, K: Orientation, f: int) -> int:
    return sum(1 for d in m.faces[f] if not K.agrees(d))


def is_kasteleyn(m: SurfaceMap, K: Orientation) -> FaceCheck:
    counts = tuple(face_disagreements(m, K, f) for f in range(m.n_faces))
    return FaceCheck(all(k % 2 for k in counts), counts)


def construct(m: SurfaceMap) -> Orientation:
    """Build one Kasteleyn orientation from a dual spanning tree.

    Edges off the dual tree point from the lower vertex id to the higher
    one (loops keep tail ``2e``).  Tree edges are then fixed from the leaves
    toward the root face so that each completed face has an odd number of
    disagreeing boundary darts.  The root face closes up iff V is even.
    """
    parent, order = dual_spanning_tree(m)
    tree = {e for e in parent if e >= 0}
    b = 0
    for e, (u, v) in enumerate(m.endpoints):
        if e not in tree and v < u:
            b |= 1 << e
    for f in reversed(order[1:]):
        e = parent[f]
        # the parent edge is the only edge of f still free
        others = sum(
            1 for d in m.faces[f] if d >> 1 != e and ((b >> (d >> 1)) & 1) != (d & 1)
        )
        d_here = next(d for d in m.faces[f] if d >> 1 == e)
        # choose so that total disagreements on f is odd
        want_agree = others % 2 == 1
        if want_agree:
            b = (b & ~(1 << e)) | ((d_here & 1) << e)
        else:
            b = (b & ~(1 << e)) | (((d_here & 1) ^ 1) << e)
    K = Orientation(b, m.n_edges)
    if m.n_faces and face_disagreements(m, K, order[0]) % 2 == 0:
        raise OddVertexCount(
            f"no Kasteleyn orientation: {m.n_vertices} vertices (root face fails)"
        )
    return K


def flip_vertex(m: SurfaceMap, K: Orientation, v: int) -> Orientation:
    return K.reversed(m.vertex_star(v))


def act_cocycle(m: SurfaceMap, K: Orientation, z: EdgeChain) -> Orientation:
    if not m.is_cocycle(z):
        raise NotACocycle("edge set meets some face boundary oddly")
    return K.reversed(z)


@dataclass(frozen=True)
class Equivalence:
    theta: EdgeChain
    equivalent: bool
    witness: frozenset | None


def equivalence(m: SurfaceMap, K: Orientation, K2: Orientation) -> Equivalence:
    """Compare two Kasteleyn orientations.

    The disagreement set is a cocycle; the orientations are equivalent iff it
    is a sum of vertex stars.  The witness is the smaller flip set taking
    ``K`` to ``K2``.
    """
    for name, X in (("first", K), ("second", K2)):
        if not is_kasteleyn(m, X):
            raise NotKasteleyn(f"{name} orientation is not Kasteleyn")
    theta = K.bits ^ K2.bits
    parent, order = spanning_tree(m)
    label = [0] * m.n_vertices
    for v in order[1:]:
        d = parent[v]
        label[v] = label[m.vertex_of[d ^ 1]] ^ ((theta >> (d >> 1)) & 1)
    ok = all(
        ((theta >> e) & 1) == (label[u] ^ label[v]) for e, (u, v) in enumerate(m.endpoints)
    )
    if not ok:
        return Equivalence(theta, False, None)
    S = frozenset(v for v in range(m.n_vertices) if label[v])
    comp = frozenset(range(m.n_vertices)) - S
    if len(comp) < len(S):
        S = comp
    return Equivalence(theta, True, S)


@dataclass(frozen=True)
class OrientationClass:
    """Representative of a class, tagged by the cocycle-basis subset acting on
    the base orientation (bit ``i`` of ``mask`` = basis cocycle ``i``)."""

    mask: int
    orientation: Orientation
    cocycle: EdgeChain


def class_representatives(
    m: SurfaceMap,
    base: Orientation | None = None,
    cocycles: CocycleBasis | None = None,
) -> list[OrientationClass]:
    """One orientation per equivalence class, ordered by mask."""
    if base is None:
        base = construct(m)
    if cocycles is None:
        cocycles = cocycle_basis(m)
    out = []
    for mask in range(1 << len(cocycles.cocycles)):
        z = 0
        for i in gf2.bits(mask):
            z ^= cocycles.cocycles[i]
        out.append(OrientationClass(mask, act_cocycle(m, base, z), z))
    return out
