"""Graphs cellularly embedded in closed oriented surfaces.

A map is stored as a rotation system.  Edge ``e`` owns darts ``2e`` (at its
first endpoint) and ``2e + 1`` (at its second endpoint), so the edge
involution is ``d ^ 1``.  ``next_ccw[d]`` is the next dart counter-clockwise
around ``vertex_of[d]``; faces are the orbits of ``d -> next_ccw[d ^ 1]``.

A face walk arrives at a vertex on dart ``r`` and leaves on ``next_ccw[r]``,
so its face occupies the corner swept from the incoming dart to the
outgoing dart in ``next_ccw`` order.  That side is what "left" means
throughout the package: face boundaries, the Kasteleyn condition, the
left push-off used for intersections and the dimer count ``ell`` all use
the orientation of the surface induced by the face walks.

Edge chains (1-chains with GF(2) coefficients) are Python ints, bit ``e``
standing for edge ``e``.  Closed walks are tuples of darts.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from . import gf2
from .errors import BadInvolution, DanglingDart, NotACycle, NotClosed, NotConnected

EdgeChain = int
DartWalk = tuple[int, ...]


def opposite(d: int) -> int:
    return d ^ 1


def edge_of(d: int) -> int:
    return d >> 1


class SurfaceMap:
    """Immutable combinatorial map of a connected graph on a closed surface."""

    __slots__ = (
        "n_vertices",
        "n_edges",
        "endpoints",
        "vertex_of",
        "next_ccw",
        "rotations",
        "faces",
        "face_of",
        "_face_chains",
        "_stars",
    )

    def __init__(
        self,
        n_vertices: int,
        endpoints: Sequence[tuple[int, int]],
        rotations: Sequence[Sequence[int]],
    ) -> None:
        n_edges = len(endpoints)
        n_darts = 2 * n_edges
        if len(rotations) != n_vertices:
            raise BadInvolution(f"expected {n_vertices} rotations, got {len(rotations)}")
        vertex_of = [-1] * n_darts
        for e, (u, v) in enumerate(endpoints):
            for x in (u, v):
                if not 0 <= x < n_vertices:
                    raise BadInvolution(f"edge {e} has endpoint {x} out of range")
            vertex_of[2 * e] = u
            vertex_of[2 * e + 1] = v

        next_ccw = [-1] * n_darts
        for v, rot in enumerate(rotations):
            for i, d in enumerate(rot):
                if not 0 <= d < n_darts:
                    raise BadInvolution(f"rotation at vertex {v} names unknown dart {d}")
                if vertex_of[d] != v:
                    raise BadInvolution(
                        f"dart {d} belongs to vertex {vertex_of[d]}, listed at {v}"
                    )
                if next_ccw[d] != -1:
                    raise BadInvolution(f"dart {d} listed twice")
                next_ccw[d] = rot[(i + 1) % len(rot)]
        missing = [d for d in range(n_darts) if next_ccw[d] == -1]
        if missing:
            raise DanglingDart(f"darts missing from rotations: {missing}")

        self.n_vertices = n_vertices
        self.n_edges = n_edges
        self.endpoints = tuple((int(u), int(v)) for u, v in endpoints)
        self.vertex_of = tuple(vertex_of)
        self.next_ccw = tuple(next_ccw)
        self.rotations = tuple(tuple(r) for r in rotations)

        if not self._connected():
            raise NotConnected("underlying graph is not connected")

        face_of = [-1] * n_darts
        faces = []
        for start in range(n_darts):
            if face_of[start] != -1:
                continue
            orbit = []
            d = start
            while face_of[d] == -1:
                face_of[d] = len(faces)
                orbit.append(d)
                d = next_ccw[d ^ 1]
            faces.append(tuple(orbit))
        self.faces = tuple(faces)
        self.face_of = tuple(face_of)

        chi = n_vertices - n_edges + len(faces)
        if chi % 2 or chi > 2:
            raise BadInvolution(f"Euler characteristic {chi} is not even and <= 2")

        self._face_chains = tuple(walk_chain(f) for f in faces)
        stars = [0] * n_vertices
        for d in range(n_darts):
            stars[vertex_of[d]] ^= 1 << (d >> 1)
        self._stars = tuple(stars)

    def _connected(self) -> bool:
        if self.n_vertices == 0:
            return True
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for u, v in self.endpoints:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n_vertices

    # --- basic counts -------------------------------------------------------
    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def info(self) -> tuple[int, int, int, int]:
        return self.n_vertices, self.n_edges, self.n_faces, self.genus

    # --- chains -------------------------------------------------------------
    def face_chain(self, f: int) -> EdgeChain:
        """Boundary of face ``f`` as a GF(2) chain (edges seen twice cancel)."""
        return self._face_chains[f]

    def vertex_star(self, v: int) -> EdgeChain:
        """Coboundary of vertex ``v`` (loops at ``v`` cancel)."""
        return self._stars[v]

    def is_cycle(self, z: EdgeChain) -> bool:
        deg = [0] * self.n_vertices
        for e in gf2.bits(z):
            u, v = self.endpoints[e]
            deg[u] ^= 1
            deg[v] ^= 1
        return not any(deg)

    def is_cocycle(self, z: EdgeChain) -> bool:
        return all(not gf2.parity(z & c) for c in self._face_chains)

    def darts_at(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    def edges_between(self, u: int, v: int) -> list[int]:
        return [
            e for e, (a, b) in enumerate(self.endpoints) if {a, b} == {u, v} and a != b
        ]

    def has_multi_edges(self) -> bool:
        seen = set()
        for u, v in self.endpoints:
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            if key in seen:
                return True
            seen.add(key)
        return False

    def __repr__(self) -> str:
        V, E, F, g = self.info()
        return f"SurfaceMap(V={V}, E={E}, F={F}, g={g})"


def build(
    n_vertices: int,
    endpoints: Sequence[tuple[int, int]],
    rotations: Sequence[Sequence[int]],
) -> SurfaceMap:
    """Validate a raw rotation system and trace its faces."""
    return SurfaceMap(n_vertices, endpoints, rotations)


def info(m: SurfaceMap) -> tuple[int, int, int, int]:
    return m.info()


# --- walks -------------------------------------------------------------------
def walk_chain(walk: Sequence[int]) -> EdgeChain:
    out = 0
    for d in walk:
        out ^= 1 << (d >> 1)
    return out


def check_closed(m: SurfaceMap, walk: Sequence[int]) -> None:
    k = len(walk)
    for i in range(k):
        if m.vertex_of[walk[(i + 1) % k]] != m.vertex_of[walk[i] ^ 1]:
            raise NotClosed(f"walk breaks after dart {walk[i]}")


def walk_vertices(m: SurfaceMap, walk: Sequence[int]) -> list[int]:
    return [m.vertex_of[d] for d in walk]


def is_simple(m: SurfaceMap, walk: Sequence[int]) -> bool:
    vs = walk_vertices(m, walk)
    return len(set(vs)) == len(vs)


def visits(m: SurfaceMap, walk: Sequence[int]) -> Iterator[tuple[int, int, int]]:
    """Yield ``(vertex, incoming dart, outgoing dart)`` for each step of a walk.

    The incoming dart sits at the vertex and points back along the edge the
    walk arrived on.
    """
    k = len(walk)
    for i in range(k):
        out = walk[i]
        yield m.vertex_of[out], walk[i - 1] ^ 1, out


def left_darts(m: SurfaceMap, incoming: int, outgoing: int) -> Iterator[int]:
    """Darts strictly between ``incoming`` and ``outgoing`` in ``next_ccw`` order.

    These point into the region on the left of a walk passing through the
    vertex (the side on which face walks keep their face).  When the walk
    backtracks (``incoming == outgoing``) every other dart is on the left.
    """
    d = m.next_ccw[incoming]
    while d != outgoing:
        yield d
        d = m.next_ccw[d]


def intersection_parity(
    m: SurfaceMap, a: Sequence[int], b: Union[Sequence[int], EdgeChain]
) -> int:
    """Mod-2 intersection number of a closed walk with a cycle.

    ``a`` is pushed slightly to its left; the pushed curve crosses ``b`` once
    for each dart of a ``b``-edge leaving a vertex of ``a`` into that left
    region.  Edges shared with ``a`` run parallel to the pushed curve and do
    not count.  ``b`` may be a walk or an edge chain.
    """
    chain = b if isinstance(b, int) else walk_chain(b)
    if not isinstance(b, int):
        check_closed(m, b)
    check_closed(m, a)
    count = 0
    for _, incoming, outgoing in visits(m, a):
        for d in left_darts(m, incoming, outgoing):
            count += (chain >> (d >> 1)) & 1
    return count & 1


def spanning_tree(m: SurfaceMap, root: int = 0) -> tuple[list[int], list[int]]:
    """BFS tree; returns ``(parent_dart, order)``.

    ``parent_dart[v]`` is the dart at ``v`` pointing to its parent (``-1`` at
    the root).  Darts are scanned in rotation order for reproducibility.
    """
    parent = [-2] * m.n_vertices
    parent[root] = -1
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for d in m.rotations[x]:
            y = m.vertex_of[d ^ 1]
            if parent[y] == -2:
                parent[y] = d ^ 1
                order.append(y)
                queue.append(y)
    return parent, order


def _path_to_root(m: SurfaceMap, parent: list[int], v: int) -> list[int]:
    """Darts walking from ``v`` up to the root."""
    out = []
    while parent[v] != -1:
        out.append(parent[v])
        v = m.vertex_of[parent[v] ^ 1]
    return out


def fundamental_cycle(m: SurfaceMap, parent: list[int], e: int) -> DartWalk:
    """Simple closed walk: edge ``e`` forward, then back through the tree."""
    d = 2 * e
    u, v = m.vertex_of[d], m.vertex_of[d ^ 1]
    up_v = _path_to_root(m, parent, v)
    up_u = _path_to_root(m, parent, u)
    # strip the common part near the root
    while up_v and up_u and up_v[-1] == up_u[-1]:
        up_v.pop()
        up_u.pop()
    down_to_u = [x ^ 1 for x in reversed(up_u)]
    return (d, *up_v, *down_to_u)


@dataclass(frozen=True)
class HomologyBasis:
    """Simple cycles whose classes form a basis of first homology mod 2."""

    cycles: tuple[DartWalk, ...]
    chains: tuple[EdgeChain, ...]
    gram: tuple[int, ...]
    _reducer: gf2.Echelon = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.cycles)

    def gram_entry(self, i: int, j: int) -> int:
        return (self.gram[i] >> j) & 1

    def dot(self, x: int, y: int) -> int:
        """Intersection pairing of two classes given in basis coordinates."""
        return gf2.bilinear(self.gram, x, y)


def homology_basis(m: SurfaceMap) -> HomologyBasis:
    """Basis of H_1 from fundamental cycles, reduced modulo face boundaries."""
    reducer = gf2.Echelon()
    for c in (m.face_chain(f) for f in range(m.n_faces)):
        reducer.add(c, 0)
    parent, _ = spanning_tree(m)
    tree_edges = {p >> 1 for p in parent if p >= 0}
    cycles: list[DartWalk] = []
    chains: list[int] = []
    for e in range(m.n_edges):
        if len(cycles) == 2 * m.genus:
            break
        if e in tree_edges:
            continue
        walk = fundamental_cycle(m, parent, e)
        chain = walk_chain(walk)
        if reducer.add(chain, 1 << len(cycles)):
            cycles.append(walk)
            chains.append(chain)
    if len(cycles) != 2 * m.genus:
        raise AssertionError("fundamental cycles did not span homology")
    n = len(cycles)
    gram = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and intersection_parity(m, cycles[i], chains[j]):
                gram[i] |= 1 << j
    return HomologyBasis(tuple(cycles), tuple(chains), tuple(gram), reducer)


def class_of(m: SurfaceMap, basis: HomologyBasis, z: Union[EdgeChain, Sequence[int]]) -> int:
    """Coordinates (bitmask over basis cycles) of the homology class of ``z``."""
    chain = z if isinstance(z, int) else walk_chain(z)
    if not m.is_cycle(chain):
        raise NotACycle("chain has odd degree at some vertex")
    residual, tag = basis._reducer.reduce(chain)
    if residual:
        raise AssertionError("cycle outside span of boundaries and basis")
    return tag


@dataclass(frozen=True)
class CocycleBasis:
    """Cocycles dual to a homology basis.

    ``pairing[j]`` has bit ``i`` equal to ``|cocycles[j] & basis.chains[i]| mod 2``.
    """

    cocycles: tuple[EdgeChain, ...]
    pairing: tuple[int, ...]


def dual_spanning_tree(m: SurfaceMap, root: int = 0) -> tuple[list[int], list[int]]:
    """BFS tree of the dual graph.

    Returns ``(parent_edge, order)``: ``parent_edge[f]`` is the edge crossed to
    reach face ``f`` from its parent (``-1`` at the root).
    """
    parent = [-2] * m.n_faces
    parent[root] = -1
    order = [root]
    queue = deque([root])
    while queue:
        f = queue.popleft()
        for d in m.faces[f]:
            g = m.face_of[d ^ 1]
            if parent[g] == -2:
                parent[g] = d >> 1
                order.append(g)
                queue.append(g)
    return parent, order


def _dual_path_to_root(m: SurfaceMap, parent: list[int], f: int) -> list[int]:
    out = []
    while parent[f] != -1:
        e = parent[f]
        out.append(e)
        a, b = m.face_of[2 * e], m.face_of[2 * e + 1]
        f = b if a == f else a
    return out


def cocycle_basis(m: SurfaceMap, basis: HomologyBasis | None = None) -> CocycleBasis:
    """2g cocycles whose classes form a basis of H^1.

    Candidates are fundamental cycles of a dual spanning tree (edge sets
    crossed by a closed dual path), kept when they enlarge the rank of the
    pairing against ``basis``.
    """
    if basis is None:
        basis = homology_basis(m)
    parent, _ = dual_spanning_tree(m)
    tree = {e for e in parent if e >= 0}
    found: list[int] = []
    pairs: list[int] = []
    ech = gf2.Echelon()
    for e in range(m.n_edges):
        if len(found) == basis.rank:
            break
        if e in tree:
            continue
        f, g = m.face_of[2 * e], m.face_of[2 * e + 1]
        z = 1 << e
        for x in _dual_path_to_root(m, parent, f) + _dual_path_to_root(m, parent, g):
            z ^= 1 << x
        pv = sum(gf2.parity(z & c) << i for i, c in enumerate(basis.chains))
        if ech.add(pv):
            found.append(z)
            pairs.append(pv)
    if len(found) != basis.rank:
        raise AssertionError("dual cycles did not span cohomology")
    return CocycleBasis(tuple(found), tuple(pairs))


def cohomology_coordinates(basis: HomologyBasis, z: EdgeChain) -> int:
    """Evaluate a cocycle on the basis cycles (bit ``i`` = ``z(a_i)``)."""
    return sum(gf2.parity(z & c) << i for i, c in enumerate(basis.chains))
