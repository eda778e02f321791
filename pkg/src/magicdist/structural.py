"""Cheap necessary conditions for distance magic graphs, and 2-distance magic structure."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .graph import Graph
from .labeling import ModularLabeling, InapplicableError, verify_p_distance_magic


@dataclass(frozen=True)
class FilterVerdict:
    filter: str
    outcome: str  # "pass" | "reject"
    witness: Any = None

    def __bool__(self):
        return self.outcome == "pass"

    def to_json(self) -> dict:
        return {"filter": self.filter, "outcome": self.outcome, "witness": self.witness}


def symm_diff_filter(g: Graph) -> FilterVerdict:
    """Reject when two vertices have neighbourhoods differing in exactly 1 or 2 vertices."""
    rows = g.rows
    for x in range(g.n):
        for y in range(x + 1, g.n):
            if (rows[x] ^ rows[y]).bit_count() in (1, 2):
                return FilterVerdict("symm_diff", "reject", [x + 1, y + 1])
    return FilterVerdict("symm_diff", "pass")


def contains_p3_or_c4(g: Graph) -> tuple[bool, list[int] | None]:
    """Find a 4-cycle if there is one, otherwise a path on three vertices.

    Returns the witness vertices in traversal order (``None`` when neither exists).
    """
    c4 = _find_c4(g)
    if c4:
        return True, c4
    for v in range(1, g.n + 1):
        nb = g.neighbors(v)
        if len(nb) >= 2:
            return True, [nb[0], v, nb[1]]
    return False, None


def _find_c4(g: Graph):
    rows = g.rows
    for a in range(g.n):
        for c in range(a + 1, g.n):
            common = rows[a] & rows[c]
            if common.bit_count() >= 2:
                low = common & -common
                b = low.bit_length() - 1
                d = (common ^ low).bit_length() - 1
                return [a + 1, b + 1, c + 1, d + 1]
    return None


def regular_filters(g: Graph) -> FilterVerdict:
    degs = g.degrees()
    if len(set(degs)) != 1:
        return FilterVerdict("regular", "pass")
    r = degs[0]
    if r % 2:
        return FilterVerdict("regular", "reject", {"regularity": r})
    if r == 2:
        for comp in g.components():
            if len(comp) != 4:
                return FilterVerdict("regular", "reject", {"regularity": 2, "component": comp})
    return FilterVerdict("regular", "pass")


def greedy_matching(g: Graph) -> list[tuple[int, int]]:
    """Maximal matching taken greedily over edges in lexicographic order."""
    used = set()
    matching = []
    for u, v in g.edges():
        if u not in used and v not in used:
            matching.append((u, v))
            used.update((u, v))
    return matching


@dataclass(frozen=True)
class TwoDMStructure:
    k: int
    vertices: tuple[int, ...]  # V_1: vertices labelled 1
    internal_degrees: tuple[int, ...]
    components: tuple[tuple[int, ...], ...] | None = None
    matching: tuple[tuple[int, int], ...] | None = None
    perfect: bool = False


def two_dm_structure(g: Graph, f: ModularLabeling) -> TwoDMStructure:
    """Shape of the subgraph G_1 induced by label-1 vertices of a 2-distance magic labelling.

    Constant 0 forces every vertex of G_1 to have even degree inside G_1 (each component
    Eulerian); constant 1 forces odd degrees, and a maximal matching of G_1 is returned.
    Vertex names in the result are those of ``g``.
    """
    if f.p != 2:
        raise InapplicableError("two_dm_structure needs a labelling with p = 2")
    cert = verify_p_distance_magic(g, f)
    if not cert:
        raise InapplicableError(f"labelling is not 2-distance magic: {cert}")
    v1 = tuple(v for v in range(1, g.n + 1) if f.values[v - 1] == 1)
    sub = g.induced(v1)
    degs = tuple(sub.degrees())
    if cert.k == 0:
        assert all(d % 2 == 0 for d in degs), degs
        comps = tuple(tuple(v1[i - 1] for i in comp) for comp in sub.components())
        return TwoDMStructure(0, v1, degs, components=comps)
    assert all(d % 2 == 1 for d in degs), degs
    matching = tuple((v1[a - 1], v1[b - 1]) for a, b in greedy_matching(sub))
    return TwoDMStructure(1, v1, degs, matching=matching, perfect=2 * len(matching) == len(v1))
