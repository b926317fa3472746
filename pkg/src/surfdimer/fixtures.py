"""Generators for the reference maps used by tests, the CLI and benchmarks."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from importlib import resources

from .matchings import WeightSystem
from .surface_map import SurfaceMap, build


def square() -> SurfaceMap:
    """4-cycle 0-1-2-3 in the sphere."""
    endpoints = [(0, 1), (1, 2), (2, 3), (3, 0)]
    # dart 2e at u, 2e+1 at v; each vertex has two darts
    rotations = [(0, 7), (1, 2), (3, 4), (5, 6)]
    return build(4, endpoints, rotations)


def theta_torus(n_parallel: int = 3) -> SurfaceMap:
    """Two vertices joined by parallel edges, same rotation at both ends."""
    endpoints = [(0, 1)] * n_parallel
    rot0 = tuple(2 * e for e in range(n_parallel))
    rot1 = tuple(2 * e + 1 for e in range(n_parallel))
    return build(2, endpoints, [rot0, rot1])


def one_face_dipole(n_parallel: int = 5) -> SurfaceMap:
    """Two vertices, ``n_parallel`` (odd) edges, rotation giving a single face.

    The second rotation is the lexicographically first one, with the first
    fixed as ``0, 2, 4, ...``, that traces one face.
    """
    endpoints = [(0, 1)] * n_parallel
    rot0 = tuple(2 * e for e in range(n_parallel))
    for rest in itertools.permutations(range(1, n_parallel)):
        rot1 = (1,) + tuple(2 * e + 1 for e in rest)
        m = build(2, endpoints, [rot0, rot1])
        if m.n_faces == 1:
            return m
    raise ValueError(f"no one-face rotation for {n_parallel} edges")


def bouquet_torus() -> SurfaceMap:
    """One vertex with two interleaved loops: the square torus."""
    return build(1, [(0, 0), (0, 0)], [(0, 2, 1, 3)])


def torus_grid(nx: int, ny: int) -> SurfaceMap:
    """Square lattice with periodic boundary; vertex ``(x, y)`` is ``y*nx + x``.

    Edge ``2*v`` goes east from ``v``, edge ``2*v + 1`` goes north.
    """
    def vid(x, y):
        return (y % ny) * nx + (x % nx)

    endpoints = []
    for y in range(ny):
        for x in range(nx):
            endpoints.append((vid(x, y), vid(x + 1, y)))
            endpoints.append((vid(x, y), vid(x, y + 1)))
    rotations = []
    for y in range(ny):
        for x in range(nx):
            v = vid(x, y)
            east = 2 * (2 * v)
            north = 2 * (2 * v + 1)
            west = 2 * (2 * vid(x - 1, y)) + 1
            south = 2 * (2 * vid(x, y - 1) + 1) + 1
            rotations.append((east, north, west, south))
    return build(nx * ny, endpoints, rotations)


def planar_grid(nx: int, ny: int) -> SurfaceMap:
    """Open ``nx x ny`` grid graph in the sphere."""
    def vid(x, y):
        return y * nx + x

    endpoints = []
    darts: dict[int, dict[str, int]] = {v: {} for v in range(nx * ny)}
    for y in range(ny):
        for x in range(nx):
            if x + 1 < nx:
                e = len(endpoints)
                endpoints.append((vid(x, y), vid(x + 1, y)))
                darts[vid(x, y)]["E"] = 2 * e
                darts[vid(x + 1, y)]["W"] = 2 * e + 1
            if y + 1 < ny:
                e = len(endpoints)
                endpoints.append((vid(x, y), vid(x, y + 1)))
                darts[vid(x, y)]["N"] = 2 * e
                darts[vid(x, y + 1)]["S"] = 2 * e + 1
    rotations = [
        tuple(darts[v][k] for k in "ENWS" if k in darts[v]) for v in range(nx * ny)
    ]
    return build(nx * ny, endpoints, rotations)


def random_map(rng: random.Random, n_vertices: int, n_edges: int, loops: bool = True) -> SurfaceMap:
    """Connected random multigraph with a uniformly shuffled rotation system.

    At least one edge is always present (a map needs a dart to have a face).
    """
    n_edges = max(n_edges, 1)
    endpoints = []
    for v in range(1, n_vertices):
        endpoints.append((rng.randrange(v), v))
    while len(endpoints) < n_edges:
        u, v = rng.randrange(n_vertices), rng.randrange(n_vertices)
        if u == v and (not loops and n_vertices > 1):
            continue
        endpoints.append((u, v))
    rng.shuffle(endpoints)
    rotations: list[list[int]] = [[] for _ in range(n_vertices)]
    for e, (u, v) in enumerate(endpoints):
        rotations[u].append(2 * e)
        rotations[v].append(2 * e + 1)
    for r in rotations:
        rng.shuffle(r)
    return build(n_vertices, endpoints, rotations)


FIXTURE_FILES = {
    "FIX-SQ": "fix_sq.smg",
    "FIX-G1": "fix_g1.smg",
    "FIX-G2": "fix_g2.smg",
    "FIX-T44": "fix_t44.smg",
    "FIX-T34": "fix_t34.smg",
    "FIX-TRI43": "fix_tri43.smg",
}


def fixture_path(name: str):
    return resources.files("surfdimer") / "data" / FIXTURE_FILES[name]


def load(name: str) -> tuple[SurfaceMap, WeightSystem]:
    from .smg import parse_text

    return parse_text(fixture_path(name).read_text())


def generated(name: str) -> tuple[SurfaceMap, WeightSystem]:
    """Rebuild a shipped fixture from its generator (used to freeze the files)."""
    if name == "FIX-SQ":
        m = square()
        return m, WeightSystem([1, 2, 3, 5])
    if name == "FIX-G1":
        m = theta_torus(3)
        return m, WeightSystem.uniform(m)
    if name == "FIX-G2":
        m = one_face_dipole(5)
        return m, WeightSystem([1, 2, 3, 5, 7])
    if name == "FIX-T44":
        m = torus_grid(4, 4)
        return m, WeightSystem.uniform(m)
    if name == "FIX-T34":
        m = torus_grid(3, 4)
        ws = [Fraction(1 + (e % 3), 1 + (e % 2)) for e in range(m.n_edges)]
        return m, WeightSystem(ws)
    if name == "FIX-TRI43":
        m = triangular_torus(4, 3)
        ws = [Fraction(1 + (e % 4), 1 + (e % 3)) for e in range(m.n_edges)]
        return m, WeightSystem(ws)
    raise KeyError(name)


def triangular_torus(nx: int, ny: int) -> SurfaceMap:
    """Periodic triangular lattice: square torus grid plus north-east diagonals.

    Edge ``3*v`` goes east, ``3*v + 1`` north, ``3*v + 2`` north-east.
    """
    def vid(x, y):
        return (y % ny) * nx + (x % nx)

    endpoints = []
    for y in range(ny):
        for x in range(nx):
            endpoints.append((vid(x, y), vid(x + 1, y)))
            endpoints.append((vid(x, y), vid(x, y + 1)))
            endpoints.append((vid(x, y), vid(x + 1, y + 1)))
    rotations = []
    for y in range(ny):
        for x in range(nx):
            v = vid(x, y)
            east, north, ne = 2 * (3 * v), 2 * (3 * v + 1), 2 * (3 * v + 2)
            west = 2 * (3 * vid(x - 1, y)) + 1
            south = 2 * (3 * vid(x, y - 1) + 1) + 1
            sw = 2 * (3 * vid(x - 1, y - 1) + 2) + 1
            rotations.append((east, ne, north, west, sw, south))
    return build(nx * ny, endpoints, rotations)
