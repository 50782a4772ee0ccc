"""Reading and writing graphs and packing instances.

Two graph encodings are supported: graph6 (one ASCII line) and a plain edge
list whose first line is ``n m`` followed by ``m`` lines ``u v``.  An instance
file holds the blue graph, then the red graph, then optionally a line
``perm: p0 p1 ... p(n-1)``.
"""

from __future__ import annotations

import hashlib
import re
from pathlib import Path
from typing import Optional

from .graph import Graph, GraphError

HEADER = ">>graph6<<"
_EDGELIST_HEAD = re.compile(r"^\s*(\d+)\s+(\d+)\s*$")


class FormatError(ValueError):
    pass


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise FormatError(f"graph too large for graph6: n={n}")


def _decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise FormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) > 1 and data[1] == 126:
        chunk, start = data[2:8], 8
    else:
        chunk, start = data[1:4], 4
    n = 0
    for c in chunk:
        n = (n << 6) | (c - 63)
    return n, start


def to_graph6(g: Graph, header: bool = False) -> str:
    bits = []
    for j in range(1, g.n):
        row = g.adj[j]
        bits.extend(1 if i in row else 0 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return (HEADER if header else "") + _encode_n(g.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER) :]
    data = s.encode("ascii")
    if any(c < 63 or c > 126 for c in data):
        raise FormatError("graph6 string contains characters outside 63..126")
    n, pos = _decode_n(data)
    if n < 1:
        raise FormatError("graph6 graph must have at least one vertex")
    needed = n * (n - 1) // 2
    body = data[pos:]
    if len(body) * 6 < needed or len(body) != (needed + 5) // 6:
        raise FormatError(f"graph6 body has wrong length for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    g, rest = _take_edgelist(lines)
    if rest:
        raise FormatError(f"unexpected trailing lines after edge list: {rest[0]!r}")
    return g


def _take_edgelist(lines: list[str]) -> tuple[Graph, list[str]]:
    head = _EDGELIST_HEAD.match(lines[0]) if lines else None
    if head is None:
        raise FormatError("edge list must start with a line 'n m'")
    n, m = int(head.group(1)), int(head.group(2))
    if len(lines) < 1 + m:
        raise FormatError(f"edge list promises {m} edges but has {len(lines) - 1} lines")
    edges = []
    for ln in lines[1 : 1 + m]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    try:
        return Graph(n, edges), lines[1 + m :]
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def _take_graph(lines: list[str]) -> tuple[Graph, list[str]]:
    if not lines:
        raise FormatError("missing graph")
    if _EDGELIST_HEAD.match(lines[0]):
        return _take_edgelist(lines)
    return from_graph6(lines[0]), lines[1:]


def parse_graph(text: str) -> Graph:
    """Parse a single graph, detecting graph6 versus edge list."""
    lines = _content_lines(text)
    g, rest = _take_graph(lines)
    if rest:
        raise FormatError(f"unexpected trailing content: {rest[0]!r}")
    return g


def emit_graph(g: Graph, fmt: str = "graph6") -> str:
    if fmt == "graph6":
        return to_graph6(g) + "\n"
    if fmt == "edgelist":
        return to_edgelist(g)
    raise FormatError(f"unknown graph format {fmt!r}")


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def parse_perm(line: str) -> list[int]:
    body = line.split(":", 1)[1] if ":" in line else line
    return [int(tok) for tok in body.split()]


def parse_instance_text(text: str) -> tuple[Graph, Graph, Optional[list[int]]]:
    """Return ``(blue, red, perm)``; ``perm`` is ``None`` when absent."""
    lines = _content_lines(text)
    blue, lines = _take_graph(lines)
    red, lines = _take_graph(lines)
    perm = None
    if lines:
        if not lines[0].startswith("perm:") or len(lines) > 1:
            raise FormatError(f"unexpected content after the two graphs: {lines[0]!r}")
        perm = parse_perm(lines[0])
    if blue.n != red.n:
        raise FormatError(f"graphs have different vertex counts: {blue.n} vs {red.n}")
    if perm is not None and sorted(perm) != list(range(blue.n)):
        raise FormatError("perm line is not a permutation of 0..n-1")
    return blue, red, perm


def emit_instance_text(
    blue: Graph, red: Graph, perm: Optional[list[int]] = None, fmt: str = "graph6"
) -> str:
    out = emit_graph(blue, fmt) + emit_graph(red, fmt)
    if perm is not None:
        out += "perm: " + " ".join(map(str, perm)) + "\n"
    return out


def read_instance(path: str | Path) -> tuple[Graph, Graph, Optional[list[int]]]:
    return parse_instance_text(Path(path).read_text())


def write_instance(path: str | Path, blue: Graph, red: Graph, perm=None, fmt: str = "graph6") -> None:
    Path(path).write_text(emit_instance_text(blue, red, perm, fmt))


def graph_digest(*graphs: Graph) -> str:
    """Hex SHA-256 over the canonical edge-list bytes of the given graphs."""
    h = hashlib.sha256()
    for g in graphs:
        h.update(to_edgelist(g).encode("ascii"))
        h.update(b"--\n")
    return h.hexdigest()
