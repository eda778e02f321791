"""Simple undirected graphs on vertices 1..n, graph6/edge-list I/O and named families.

Adjacency is held as one bitmask per vertex (bit ``j - 1`` of ``rows[i - 1]`` is set
when ``i`` and ``j`` are adjacent).  Everything in this package targets small orders,
so the dense representation is fine.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph input (bad endpoints, loops, bad graph6)."""


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"vertex count must be positive, got {self.n}")
        if len(self.rows) != self.n:
            raise GraphError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {i + 1} references a vertex outside 1..{self.n}")
            if row >> i & 1:
                raise GraphError(f"self-loop at vertex {i + 1}")
            for j in _bits(row):
                if not self.rows[j] >> i & 1:
                    raise GraphError(f"adjacency not symmetric at ({i + 1}, {j + 1})")

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u - 1] >> (v - 1) & 1)

    def neighbors(self, v: int) -> list[int]:
        return [j + 1 for j in _bits(self.rows[v - 1])]

    def degree(self, v: int) -> int:
        return self.rows[v - 1].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i, row in enumerate(self.rows) for j in _bits(row) if j > i]

    @property
    def m(self) -> int:
        return sum(self.degrees()) // 2

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for i, row in enumerate(self.rows):
            for j in _bits(row):
                A[i, j] = 1
        return A

    def is_regular(self) -> bool:
        return len(set(self.degrees())) == 1

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen = 0
        out = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            comp = frontier = 1 << start
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            out.append([v + 1 for v in _bits(comp)])
        return out

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Subgraph induced on ``vertices``, relabelled 1..len(vertices) in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            r = 0
            for u in self.neighbors(v):
                if u in index:
                    r |= 1 << index[u]
            rows.append(r)
        return Graph(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v - 1]``."""
        return from_edge_list(self.n, [(perm[u - 1], perm[v - 1]) for u, v in self.edges()])


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on 1..n; duplicate edges are collapsed."""
    if n < 1:
        raise GraphError(f"vertex count must be positive, got {n}")
    rows = [0] * n
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        rows[u - 1] |= 1 << (v - 1)
        rows[v - 1] |= 1 << (u - 1)
    return Graph(n, tuple(rows))


def from_adjacency(A) -> Graph:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise GraphError(f"adjacency matrix must be square, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise GraphError("adjacency matrix is not symmetric")
    if not np.isin(A, (0, 1)).all() or np.any(np.diag(A)):
        raise GraphError("adjacency matrix must be 0/1 with zero diagonal")
    n = A.shape[0]
    return from_edge_list(n, [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if A[i, j]])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        offset += g.n
    return from_edge_list(offset, edges)


# ---------------------------------------------------------------- graph6

def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError("graph too large for graph6")


def to_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        row_j = g.rows[j]
        bits.extend(row_j >> i & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def parse_graph6(text: str) -> Graph:
    """Decode one header-free graph6 line."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphError("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(c < 0 or c > 63 for c in codes):
        raise GraphError("graph6 byte out of range 63..126")
    if codes[0] != 63:
        n, body = codes[0], codes[1:]
    elif len(codes) >= 2 and codes[1] != 63:
        if len(codes) < 4:
            raise GraphError("truncated graph6 length prefix")
        n = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        body = codes[4:]
    else:
        if len(codes) < 8:
            raise GraphError("truncated graph6 length prefix")
        n = 0
        for c in codes[2:8]:
            n = (n << 6) | c
        body = codes[8:]
    if n < 1:
        raise GraphError("graph6 encodes an empty vertex set")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}")
    bits = []
    for c in body:
        bits.extend(c >> s & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise GraphError("nonzero padding bits in graph6 string")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------- edge-list text

def parse_edge_list_text(text: str) -> Graph:
    """Parse the ``n m`` header followed by ``m`` lines ``u v``."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise GraphError("edge list must start with a line 'n m'")
    try:
        n, m = map(int, lines[0])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges but {len(edges)} were given")
    return from_edge_list(n, edges)


def to_edge_list_text(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


# ---------------------------------------------------------------- named families

FIG_NDM_EDGES = (
    (1, 2), (1, 5), (1, 6), (1, 7), (1, 11),
    (2, 4), (2, 7), (2, 9), (2, 10),
    (3, 6), (3, 7), (3, 8), (3, 10),
    (4, 5), (4, 7), (4, 8), (4, 9),
    (5, 7), (5, 8), (5, 11),
    (6, 7), (6, 9), (6, 11),
    (7, 10),
    (8, 9), (8, 10),
    (9, 11),
    (10, 11),
)


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return from_edge_list(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])


def complete(n: int) -> Graph:
    return from_edge_list(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with the centre at vertex 1."""
    return from_edge_list(leaves + 1, [(1, j) for j in range(2, leaves + 2)])


def edgeless(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_minus_matching(n: int) -> Graph:
    """K_n with the perfect matching {(i, i + n/2)} removed."""
    _need_even(n, "complete_minus_matching")
    h = n // 2
    return from_edge_list(
        n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if j - i != h]
    )


def cone_cover(g: Graph) -> Graph:
    """Add vertex n + 1 joined to every vertex of ``g``."""
    c = g.n + 1
    return from_edge_list(c, g.edges() + [(v, c) for v in range(1, c)])


def singular_even(n: int) -> Graph:
    """N(i) = V - {i, n + 1 - i}; the identity labelling is distance magic."""
    _need_even(n, "singular_even")
    return from_edge_list(
        n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if i + j != n + 1]
    )


def fig_ndm() -> Graph:
    """The 11-vertex, 28-edge nonsingular distance magic graph."""
    return from_edge_list(11, FIG_NDM_EDGES)


def _need_even(n: int, family: str):
    if n % 2:
        raise GraphError(f"{family} requires even n, got {n}")
    if n < 4:
        raise GraphError(f"{family} requires n >= 4, got {n}")


FAMILIES = (
    "path", "cycle", "complete", "complete_minus_matching", "cone_cover",
    "disjoint_union", "singular_even", "fig_ndm",
)


def construct(family: str, *args) -> Graph:
    """Dispatch to a named family.

    ``cone_cover`` takes a Graph, ``disjoint_union`` takes any number of Graphs,
    ``fig_ndm`` takes nothing and every other family takes the order ``n``.
    """
    builders = {
        "path": path,
        "cycle": cycle,
        "complete": complete,
        "complete_minus_matching": complete_minus_matching,
        "cone_cover": cone_cover,
        "disjoint_union": disjoint_union,
        "singular_even": singular_even,
        "fig_ndm": fig_ndm,
    }
    try:
        build = builders[family]
    except KeyError:
        raise GraphError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    return build(*args)
