"""Automorphism groups as explicit element lists, canonical graph6 forms, and the action
of Aut(G) on distance magic labellings.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, to_graph6, GraphError, _encode_n
from .labeling import Labeling

MAX_ORDER = 12


class InvariantViolation(AssertionError):
    """A labelling orbit contradicted the trivial-stabiliser property."""


@dataclass(frozen=True)
class Permutation:
    """Bijection on 1..n; ``mapping[i - 1]`` is the image of ``i``."""
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if sorted(self.mapping) != list(range(1, len(self.mapping) + 1)):
            raise ValueError(f"{self.mapping} is not a permutation")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        m = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                m[a - 1] = b
        return cls(tuple(m))

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1]

    def __len__(self):
        return len(self.mapping)

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition: ``(self * other)(i) == self(other(i))``."""
        return Permutation(tuple(self.mapping[j - 1] for j in other.mapping))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.mapping, start=1))


def is_automorphism(g: Graph, sigma: Permutation | Sequence[int]) -> bool:
    m = sigma.mapping if isinstance(sigma, Permutation) else tuple(sigma)
    for i, row in enumerate(g.rows):
        img = 0
        r = row
        while r:
            low = r & -r
            img |= 1 << (m[low.bit_length() - 1] - 1)
            r ^= low
        if g.rows[m[i] - 1] != img:
            return False
    return True


@dataclass(frozen=True)
class AutGroup:
    n: int
    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def orbits(self) -> list[list[int]]:
        """Vertex orbits, each sorted, ordered by smallest member."""
        seen = set()
        out = []
        for v in range(1, self.n + 1):
            if v in seen:
                continue
            orb = sorted({s(v) for s in self.elements})
            seen.update(orb)
            out.append(orb)
        return out


def equitable_colors(g: Graph, colors: Sequence[int] | None = None) -> list[int]:
    """Refine a vertex colouring until neighbours' colour counts are constant on classes.

    Starts from degrees when no colouring is given.  New colour indices are assigned by
    sorting the signatures, so isomorphic inputs get matching colourings.
    """
    nbrs = [[j for j in range(g.n) if g.rows[i] >> j & 1] for i in range(g.n)]
    col = list(colors) if colors is not None else [len(x) for x in nbrs]
    col = _compress(col)
    while True:
        sigs = [(col[i], tuple(sorted(col[j] for j in nbrs[i]))) for i in range(g.n)]
        new = _compress(sigs)
        if len(set(new)) == len(set(col)):
            return new
        col = new


def _compress(keys):
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def automorphisms(g: Graph) -> AutGroup:
    """All adjacency-preserving bijections, by backtracking inside the equitable partition."""
    n = g.n
    if n > MAX_ORDER:
        raise GraphError(f"explicit automorphism listing supports n <= {MAX_ORDER}")
    col = equitable_colors(g)
    rows = g.rows
    # map vertices in an order that keeps each new vertex attached to already-mapped ones
    order = _mapping_order(g, col)
    img = [-1] * n
    used = 0
    found = []

    def extend(depth):
        nonlocal used
        if depth == n:
            found.append(Permutation(tuple(x + 1 for x in img)))
            return
        u = order[depth]
        for v in range(n):
            if used >> v & 1 or col[v] != col[u]:
                continue
            ok = True
            for t in order[:depth]:
                if (rows[u] >> t & 1) != (rows[v] >> img[t] & 1):
                    ok = False
                    break
            if not ok:
                continue
            img[u] = v
            used |= 1 << v
            extend(depth + 1)
            used &= ~(1 << v)
            img[u] = -1

    extend(0)
    found.sort(key=lambda s: s.mapping)
    return AutGroup(n, tuple(found))


def _mapping_order(g: Graph, col):
    n = g.n
    sizes = {}
    for c in col:
        sizes[c] = sizes.get(c, 0) + 1
    placed = []
    mask = 0
    remaining = set(range(n))
    while remaining:
        def key(v):
            return (-(g.rows[v] & mask).bit_count(), sizes[col[v]], v)
        v = min(remaining, key=key)
        remaining.discard(v)
        placed.append(v)
        mask |= 1 << v
    return placed


def canonical_form(g: Graph) -> str:
    """Lexicographically smallest graph6 string over all relabellings of ``g``.

    Vertices are placed one position at a time; the graph6 bits of column ``j`` are
    fixed once position ``j`` is filled, so only candidates giving the smallest column
    survive, and transposable twins are expanded once.
    """
    n = g.n
    if n > MAX_ORDER:
        raise GraphError(f"canonical_form supports n <= {MAX_ORDER}")
    if n == 1:
        return to_graph6(g)
    rows = g.rows
    best: list[tuple[int, ...]] = []

    def twin_classes(cands):
        reps = []
        for v in cands:
            for w in reps:
                # the transposition (v w) is an automorphism fixing everything placed
                if (rows[v] & ~(1 << w)) == (rows[w] & ~(1 << v)):
                    break
            else:
                reps.append(v)
        return reps

    def search(placed, free, cols):
        depth = len(placed)
        if depth == n:
            if not best or cols < best[0]:
                best[:] = [cols]
            return
        options = []
        for v in twin_classes(free):
            column = tuple(rows[v] >> u & 1 for u in placed)
            options.append((column, v))
        low = min(c for c, _ in options)
        # compare against the incumbent on the fixed prefix
        if best:
            prefix = cols + low
            inc = best[0][: len(prefix)]
            if prefix > inc:
                return
        for column, v in options:
            if column == low:
                search(placed + [v], [x for x in free if x != v], cols + column)

    search([], list(range(n)), ())
    bits = list(best[0])
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6))
    return _encode_n(n) + body


def act(sigma: Permutation, f: Labeling | Sequence[int]) -> Labeling:
    """(sigma . f)(i) = f(sigma^{-1}(i))."""
    values = f.values if isinstance(f, Labeling) else tuple(f)
    if len(values) != len(sigma):
        raise ValueError("permutation and labelling sizes differ")
    inv = sigma.inverse()
    return Labeling(tuple(values[inv(i) - 1] for i in range(1, len(values) + 1)))


@dataclass(frozen=True)
class LabelingOrbits:
    group_order: int
    orbits: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def to_json(self) -> dict:
        return {
            "group_order": self.group_order,
            "orbit_count": len(self.orbits),
            "orbit_sizes": self.sizes,
            "representatives": [list(o[0]) for o in self.orbits],
        }


def labeling_orbits(g: Graph, labelings: Iterable, group: AutGroup | None = None) -> LabelingOrbits:
    """Partition a union of Aut(G)-orbits of distance magic labellings into orbits.

    Every orbit must have exactly |Aut(G)| members (trivial stabilisers); anything else
    raises :class:`InvariantViolation`.
    """
    group = group or automorphisms(g)
    pool = {tuple(f.values if isinstance(f, Labeling) else f) for f in labelings}
    remaining = set(pool)
    orbits = []
    for f in sorted(pool):
        if f not in remaining:
            continue
        orbit = set()
        for s in group:
            image = act(s, f).values
            if image == f and not s.is_identity():
                raise InvariantViolation(f"nonidentity automorphism {s.mapping} fixes {f}")
            orbit.add(image)
        if not orbit <= pool:
            raise ValueError("labelling set is not closed under the automorphism group")
        if len(orbit) != group.order:
            raise InvariantViolation(f"orbit of {f} has size {len(orbit)}, expected {group.order}")
        remaining -= orbit
        orbits.append(tuple(sorted(orbit)))
    assert len(pool) % group.order == 0
    return LabelingOrbits(group.order, tuple(orbits))
