"""Reader and writer for the ``smg v1`` surface-map text format.

::

    smg v1
    vertices 4
    edges 4
    edge 0 0 1 1/1
    edge 1 1 2 2/1
    ...
    rot 0: 0a 3b
    rot 1: 0b 1a
    ...

Dart token ``<e>a`` is edge ``e`` at its first endpoint (dart ``2e``),
``<e>b`` at its second (dart ``2e + 1``).  Rotations list darts
counter-clockwise.  Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import InvalidMap, SmgSyntaxError, ValidationError
from .matchings import WeightSystem
from .surface_map import SurfaceMap, build

HEADER = "smg v1"
_DART = re.compile(r"^(\d+)([ab])$")
_WEIGHT = re.compile(r"^(\d+)/(\d+)$")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield no, line


def _col(line: str, token: str) -> int:
    return line.find(token) + 1


def _int(tok: str, no: int, line: str) -> int:
    if not tok.isdigit():
        raise SmgSyntaxError(f"expected a non-negative integer, got {tok!r}", no, _col(line, tok))
    return int(tok)


def parse_text(text: str) -> tuple[SurfaceMap, WeightSystem]:
    it = iter(_lines(text))
    try:
        no, line = next(it)
    except StopIteration:
        raise SmgSyntaxError("empty input", 1, 1) from None
    if line.strip() != HEADER:
        raise SmgSyntaxError(f"expected header {HEADER!r}", no, 1)

    counts = {}
    for key in ("vertices", "edges"):
        try:
            no, line = next(it)
        except StopIteration:
            raise SmgSyntaxError(f"missing '{key}' line", None) from None
        toks = line.split()
        if len(toks) != 2 or toks[0] != key:
            raise SmgSyntaxError(f"expected '{key} <n>'", no, 1)
        counts[key] = _int(toks[1], no, line)
    V, E = counts["vertices"], counts["edges"]

    endpoints: list[tuple[int, int]] = []
    weights: list[Fraction] = []
    rotations: list[list[int] | None] = [None] * V
    for no, line in it:
        toks = line.split()
        if toks[0] == "edge":
            if len(toks) != 5:
                raise SmgSyntaxError("expected 'edge <id> <u> <v> <p>/<q>'", no, 1)
            eid, u, v = (_int(t, no, line) for t in toks[1:4])
            if eid != len(endpoints):
                raise ValidationError(f"edge ids must be dense and ordered, got {eid}", no, _col(line, toks[1]))
            if u >= V or v >= V:
                raise ValidationError("endpoint out of range", no, _col(line, toks[2]))
            mw = _WEIGHT.match(toks[4])
            if not mw:
                raise SmgSyntaxError(f"bad weight {toks[4]!r}", no, _col(line, toks[4]))
            p, q = int(mw.group(1)), int(mw.group(2))
            if q == 0 or p == 0:
                raise ValidationError(f"weight {toks[4]} is not a positive rational", no, _col(line, toks[4]))
            endpoints.append((u, v))
            weights.append(Fraction(p, q))
        elif toks[0] == "rot":
            if len(toks) < 2 or not toks[1].endswith(":"):
                raise SmgSyntaxError("expected 'rot <v>: <dart> ...'", no, 1)
            vtok = toks[1][:-1]
            vv = _int(vtok, no, line)
            if vv >= V:
                raise ValidationError(f"vertex {vv} out of range", no, _col(line, vtok))
            if rotations[vv] is not None:
                raise ValidationError(f"duplicate rotation for vertex {vv}", no, 1)
            darts = []
            for tok in toks[2:]:
                md = _DART.match(tok)
                if not md:
                    raise SmgSyntaxError(f"bad dart token {tok!r}", no, _col(line, tok))
                darts.append(2 * int(md.group(1)) + (md.group(2) == "b"))
            rotations[vv] = darts
        else:
            raise SmgSyntaxError(f"unknown directive {toks[0]!r}", no, 1)

    if len(endpoints) != E:
        raise ValidationError(f"header announces {E} edges, found {len(endpoints)}", None)
    missing = [v for v, r in enumerate(rotations) if r is None]
    if missing:
        raise ValidationError(f"no rotation for vertices {missing}", None)
    seen: set[int] = set()
    for r in rotations:
        for d in r:
            if d in seen:
                raise ValidationError(f"dart token {d >> 1}{'ab'[d & 1]} appears twice", None)
            seen.add(d)
    try:
        m = build(V, endpoints, rotations)
    except InvalidMap as exc:
        raise ValidationError(f"{type(exc).__name__}: {exc}", None) from exc
    return m, WeightSystem(weights)


def parse(path) -> tuple[SurfaceMap, WeightSystem]:
    return parse_text(Path(path).read_text())


def _dart_token(d: int) -> str:
    return f"{d >> 1}{'ab'[d & 1]}"


def _rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def emit(m: SurfaceMap, w: Sequence) -> str:
    out = [HEADER, f"vertices {m.n_vertices}", f"edges {m.n_edges}"]
    for e, (u, v) in enumerate(m.endpoints):
        out.append(f"edge {e} {u} {v} {_rational(w[e])}")
    for v, rot in enumerate(m.rotations):
        out.append(f"rot {v}: " + " ".join(_dart_token(d) for d in rot))
    return "\n".join(out) + "\n"
