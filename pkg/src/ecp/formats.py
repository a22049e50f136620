"""Graph ingestion and serialization: graph6, edge lists and JSON."""

from __future__ import annotations

import json

from .errors import FormatError, ValidityError
from .graphs import Graph

G6_HEADER = b">>graph6<<"
FORMATS = ("graph6", "edgelist", "json")


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph6 cannot encode more than 68719476735 vertices")


def to_graph6(g: Graph) -> bytes:
    out = bytearray(_encode_n(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | g.q(i, j)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    base = 0
    if data.startswith(G6_HEADER):
        base = len(G6_HEADER)
        data = data[base:]
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise FormatError(f"byte {c!r} outside the graph6 range 63..126", base + i)
    if not data:
        raise FormatError("empty graph6 string", base)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated 8-byte graph6 header", base + len(data))
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        pos = 8
    else:
        if len(data) < 4:
            raise FormatError("truncated 4-byte graph6 header", base + len(data))
        n = 0
        for c in data[1:4]:
            n = (n << 6) | (c - 63)
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise FormatError(f"expected {need} adjacency bytes for {n} vertices, got {len(body)}", base + pos + min(len(body), need))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            c = body[k // 6] - 63
            if c >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if nbits % 6 and (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1):
        raise FormatError("nonzero padding bits", base + pos + need - 1)
    return Graph.from_edges(n, edges)


def to_edgelist(g: Graph) -> str:
    lines = [f"n={g.n}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def from_edgelist(text: bytes | str) -> Graph:
    """Parse ``u v`` lines; ``#`` starts a comment line; an optional first
    ``n=<count>`` line declares isolated vertices."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError("edge list is not UTF-8", exc.start) from None
    declared = None
    edges = []
    offset = 0
    seen_content = False
    for raw in text.splitlines(keepends=True):
        line = raw.strip()
        here = offset + (len(raw) - len(raw.lstrip()))
        offset += len(raw.encode("utf-8"))
        if not line or line.startswith("#"):
            continue
        if line.startswith("n="):
            if seen_content:
                raise FormatError("n=<count> must be the first line", here)
            try:
                declared = int(line[2:])
            except ValueError:
                raise FormatError(f"bad vertex count {line[2:]!r}", here) from None
            if declared < 0:
                raise FormatError("negative vertex count", here)
            seen_content = True
            continue
        seen_content = True
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise FormatError(f"expected 'u v', got {line!r}", here)
        edges.append((int(parts[0]), int(parts[1])))
    n = max((max(e) + 1 for e in edges), default=0)
    if declared is not None:
        if declared < n:
            raise ValidityError(f"edge endpoint {n - 1} exceeds declared n={declared}")
        n = declared
    return Graph.from_edges(n, edges)


def to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()]})


def from_json(text: bytes | str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(obj, dict) or "edges" not in obj:
        raise FormatError("graph JSON needs an 'edges' list", 0)
    edges = [tuple(e) for e in obj["edges"]]
    n = obj.get("n", max((max(e) + 1 for e in edges), default=0))
    return Graph.from_edges(n, edges)


def parse_graph(text: bytes | str, format: str) -> Graph:
    if format == "graph6":
        return from_graph6(text)
    if format == "edgelist":
        return from_edgelist(text)
    if format == "json":
        return from_json(text)
    raise FormatError(f"unknown format {format!r}")


def serialize_graph(g: Graph, format: str) -> bytes:
    if format == "graph6":
        return to_graph6(g)
    if format == "edgelist":
        return to_edgelist(g).encode("utf-8")
    if format == "json":
        return to_json(g).encode("utf-8")
    raise FormatError(f"unknown format {format!r}")


def format_for_path(path: str) -> str | None:
    if path.endswith(".g6"):
        return "graph6"
    if path.endswith(".el"):
        return "edgelist"
    if path.endswith(".json"):
        return "json"
    return None
