"""Text file formats and instance descriptors.

Matroid files::

    uniform <r> <n>
    gf2 <rows> <cols>        followed by <rows> lines of <cols> bits
    graphic <nv>             followed by one "u v" line per edge

Graph files: ``graph <n>`` then one ``u v`` line per edge (0-based, no loops or
repeated edges). System files: ``system <n>`` then ``2**n`` lines ``mask value``
with the mask in binary, element 0 the least significant bit.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from . import catalog
from .connectivity import ConnectivitySystem, GroundSet, SyntheticSystem, verify_axioms
from .errors import DomainError, ParseError
from .graph import SimpleGraph
from .matroid import BinaryMatroid, GraphicMatroid, Matroid, UniformMatroid

InstanceObject = Union[Matroid, SimpleGraph, ConnectivitySystem]


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer for {what}, got {tok!r}") from None


def _edges(rows: list[list[str]], nv: int) -> list[tuple[int, int]]:
    edges = []
    for row in rows:
        if len(row) != 2:
            raise ParseError(f"edge line must be 'u v', got {' '.join(row)!r}")
        u, v = _int(row[0], "vertex"), _int(row[1], "vertex")
        if not (0 <= u < nv and 0 <= v < nv):
            raise ParseError(f"edge ({u}, {v}) out of range for {nv} vertices")
        edges.append((u, v))
    return edges


def parse_matroid(text: str) -> Matroid:
    rows = _lines(text)
    if not rows:
        raise ParseError("empty matroid file")
    head, body = rows[0], rows[1:]
    kind = head[0]
    try:
        if kind == "uniform":
            if len(head) != 3 or body:
                raise ParseError("expected 'uniform <r> <n>'")
            return UniformMatroid(_int(head[1], "r"), _int(head[2], "n"))
        if kind == "gf2":
            if len(head) != 3:
                raise ParseError("expected 'gf2 <rows> <cols>'")
            nr, nc = _int(head[1], "rows"), _int(head[2], "cols")
            if len(body) != nr:
                raise ParseError(f"expected {nr} matrix rows, got {len(body)}")
            matrix = []
            for row in body:
                bits = "".join(row)
                if len(bits) != nc or set(bits) - {"0", "1"}:
                    raise ParseError(f"bad matrix row {bits!r}")
                matrix.append([int(b) for b in bits])
            return BinaryMatroid.from_rows(matrix)
        if kind == "graphic":
            if len(head) != 2:
                raise ParseError("expected 'graphic <nv>'")
            nv = _int(head[1], "nv")
            edges = _edges(body, nv)
            if not edges:
                raise ParseError("graphic matroid needs at least one edge")
            return GraphicMatroid(nv, edges)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown matroid kind {kind!r}")


def parse_graph(text: str) -> SimpleGraph:
    rows = _lines(text)
    if not rows or rows[0][0] != "graph" or len(rows[0]) != 2:
        raise ParseError("expected 'graph <n>' header")
    n = _int(rows[0][1], "n")
    try:
        return SimpleGraph.from_edges(n, _edges(rows[1:], n), name="file")
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def parse_system(text: str) -> SyntheticSystem:
    """Parse a ``system`` table; tables breaking symmetry or submodularity are rejected."""
    rows = _lines(text)
    if not rows or rows[0][0] != "system" or len(rows[0]) != 2:
        raise ParseError("expected 'system <n>' header")
    n = _int(rows[0][1], "n")
    if not 0 <= n <= 16:
        raise ParseError("system size must be between 0 and 16")
    size = 1 << n
    table: list[int | None] = [None] * size
    for row in rows[1:]:
        if len(row) != 2:
            raise ParseError(f"expected 'mask value', got {' '.join(row)!r}")
        bits, val = row
        if set(bits) - {"0", "1"} or len(bits) > max(n, 1):
            raise ParseError(f"bad mask {bits!r}")
        m = int(bits, 2)
        if m >= size:
            raise ParseError(f"mask {bits!r} out of range")
        if table[m] is not None:
            raise ParseError(f"mask {bits!r} given twice")
        table[m] = _int(val, "value")
    missing = [i for i, v in enumerate(table) if v is None]
    if missing:
        raise ParseError(f"{len(missing)} masks missing, first {missing[0]:0{max(n, 1)}b}")
    try:
        K = SyntheticSystem(GroundSet.of_size(n), table, validate=False)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc
    bad = verify_axioms(K, limit=1)
    if bad:
        raise ParseError(f"table violates the connectivity axioms: {bad[0]}")
    return K


def format_system(K: ConnectivitySystem) -> str:
    n = K.n
    lines = [f"system {n}"]
    lines += [f"{m:0{max(n, 1)}b} {v}" for m, v in enumerate(K.table())]
    return "\n".join(lines) + "\n"


def format_graph(G: SimpleGraph) -> str:
    return "\n".join([f"graph {G.n}"] + [f"{u} {v}" for u, v in G.edges()]) + "\n"


def parse_file(text: str) -> InstanceObject:
    rows = _lines(text)
    if not rows:
        raise ParseError("empty input")
    kind = rows[0][0]
    if kind == "graph":
        return parse_graph(text)
    if kind == "system":
        return parse_system(text)
    return parse_matroid(text)


@dataclass
class Instance:
    descriptor: str
    obj: InstanceObject
    digest: str

    @property
    def kind(self) -> str:
        if isinstance(self.obj, Matroid):
            return "matroid"
        if isinstance(self.obj, SimpleGraph):
            return "graph"
        return "system"

    def system(self) -> ConnectivitySystem:
        if isinstance(self.obj, (Matroid, SimpleGraph)):
            return self.obj.system()
        return self.obj


def _params(rest: str, count: int, what: str) -> list[str]:
    parts = [p for p in rest.split(",") if p]
    if len(parts) != count:
        raise ParseError(f"{what} expects {count} comma-separated parameters")
    return parts


def load_instance(descriptor: str, seed: int | None = None) -> Instance:
    """Resolve descriptors such as ``uniform:2,4``, ``fano``, ``graph:C5``,
    ``graphic:K4``, ``gf2:110,011``, ``random_graph:5,0.5,1`` or ``file:path``."""
    kind, _, rest = descriptor.partition(":")
    digest_src = descriptor.encode()
    try:
        if kind == "file":
            data = Path(rest).read_bytes()
            digest_src = data
            obj: InstanceObject = parse_file(data.decode())
        elif kind == "uniform":
            r, n = _params(rest, 2, "uniform")
            obj = catalog.uniform(_int(r, "r"), _int(n, "n"))
        elif kind == "fano":
            obj = catalog.fano()
        elif kind == "gf2":
            rows = [[int(b) for b in row] for row in rest.split(",")]
            obj = catalog.from_gf2(rows)
        elif kind == "graphic":
            obj = catalog.graphic(catalog.named_graph(rest))
        elif kind == "graph":
            obj = catalog.named_graph(rest)
        elif kind == "random_gf2":
            parts = rest.split(",")
            if len(parts) == 2 and seed is not None:
                parts.append(str(seed))
            r, c, s = _params(",".join(parts), 3, "random_gf2")
            obj = catalog.random_gf2(_int(r, "rows"), _int(c, "cols"), _int(s, "seed"))
        elif kind == "random_graph":
            parts = rest.split(",")
            if len(parts) == 2 and seed is not None:
                parts.append(str(seed))
            n, p, s = _params(",".join(parts), 3, "random_graph")
            obj = catalog.random_graph(_int(n, "n"), float(p), _int(s, "seed"))
        else:
            raise ParseError(f"unknown instance kind {kind!r}")
    except OSError as exc:
        raise ParseError(f"cannot read {rest!r}: {exc}") from exc
    except (DomainError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from exc
    return Instance(descriptor, obj, hashlib.sha256(digest_src).hexdigest()[:16])


__all__ = [
    "Instance",
    "format_graph",
    "format_system",
    "load_instance",
    "parse_file",
    "parse_graph",
    "parse_matroid",
    "parse_system",
]
