"""Backtracking enumeration of (p-)distance magic labellings, CRT composition of modular
labellings, and an exhaustive census of small distance magic graphs.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .automorphism import automorphisms, canonical_form, MAX_ORDER
from .graph import Graph, parse_graph6, GraphError
from .labeling import (
    InapplicableError,
    InvalidLabelingError,
    Labeling,
    MagicCertificate,
    ModularLabeling,
    label_multiset,
    residue_label,
    verify_distance_magic,
    verify_p_distance_magic,
)
from .spectral import even_regular_zero_filter, is_singular
from .structural import regular_filters, symm_diff_filter

log = logging.getLogger(__name__)

MAX_INTERNAL_CENSUS_ORDER = 8


@dataclass(frozen=True)
class SearchConfig:
    limit: int | None = None
    prune_filters: bool = True
    symmetry_reduction: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be >= 1 when given")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


# ---------------------------------------------------------------- distance magic search

def _branch_order(nbrs: list[int], n: int) -> list[int]:
    """Static vertex order that completes neighbourhoods as early as possible."""
    rem = [x.bit_count() for x in nbrs]
    deg = list(rem)
    order = []
    placed = 0
    for _ in range(n):
        best = None
        for v in range(n):
            if placed >> v & 1:
                continue
            # vertices w whose neighbourhood contains v
            tight = min((rem[w] for w in range(n) if nbrs[w] >> v & 1), default=n + 1)
            key = (tight, -deg[v], v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        order.append(v)
        placed |= 1 << v
        for w in range(n):
            if nbrs[w] >> v & 1:
                rem[w] -= 1
    return order


def candidate_constants(g: Graph) -> list[int]:
    """Magic constants not excluded by degree bounds and the identity sum w = n*k."""
    n = g.n
    degs = g.degrees()
    if len(set(degs)) == 1:
        r = degs[0]
        total = r * n * (n + 1) // 2
        return [total // n] if total % n == 0 else []
    big, small = max(degs), min(degs)
    lo = big * (big + 1) // 2
    hi = small * n - small * (small - 1) // 2
    asc = sorted(degs)
    s_min = sum(d * lab for d, lab in zip(sorted(degs, reverse=True), range(1, n + 1)))
    s_max = sum(d * lab for d, lab in zip(asc, range(1, n + 1)))
    lo = max(lo, -(-s_min // n))
    hi = min(hi, s_max // n)
    return list(range(lo, hi + 1))


def _dm_backtrack(n, nbrs, k, order, label1_allowed=None, fixed=None) -> Iterator[tuple[int, ...]]:
    """Yield label tuples (indexed by vertex) whose every weight equals ``k``.

    ``fixed`` optionally pins the label of the first vertex in ``order`` (used to shard
    the search); ``label1_allowed`` restricts which vertices may carry label 1.
    """
    lab = [0] * n
    s = [0] * n
    rem = [x.bit_count() for x in nbrs]
    # watchers[v]: vertices whose neighbourhood contains v
    watchers = [[w for w in range(n) if nbrs[w] >> v & 1] for v in range(n)]
    full = ((1 << (n + 1)) - 1) & ~1  # labels 1..n as bits

    def feasible(avail):
        labels = [l for l in range(1, n + 1) if avail >> l & 1]
        m = len(labels)
        low = [0] * (m + 1)
        high = [0] * (m + 1)
        for i in range(m):
            low[i + 1] = low[i] + labels[i]
            high[i + 1] = high[i] + labels[m - 1 - i]
        for w in range(n):
            r = rem[w]
            need = k - s[w]
            if r == 0:
                if need:
                    return False
            elif need < low[r] or need > high[r]:
                return False
        return True

    if not feasible(full):
        return

    def rec(depth, avail):
        if depth == n:
            yield tuple(lab)
            return
        v = order[depth]
        cands = [fixed] if (depth == 0 and fixed is not None) else range(1, n + 1)
        for l in cands:
            if not avail >> l & 1:
                continue
            if l == 1 and label1_allowed is not None and not label1_allowed >> v & 1:
                continue
            lab[v] = l
            for w in watchers[v]:
                s[w] += l
                rem[w] -= 1
            nxt = avail & ~(1 << l)
            if feasible(nxt):
                yield from rec(depth + 1, nxt)
            for w in watchers[v]:
                s[w] -= l
                rem[w] += 1
            lab[v] = 0

    yield from rec(0, full)


def _passes_prefilters(g: Graph) -> bool:
    if g.m == 0:
        return True
    return bool(symm_diff_filter(g)) and bool(regular_filters(g))


def _iter_dm(g: Graph, label1_allowed=None, fixed=None) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield ``(k, labels)`` over every candidate constant in ascending order."""
    nbrs = list(g.rows)
    order = _branch_order(nbrs, g.n)
    for k in candidate_constants(g):
        for labels in _dm_backtrack(g.n, nbrs, k, order, label1_allowed, fixed):
            yield k, labels


def _shard(args):
    g, label1_allowed, fixed, limit = args
    out = []
    for item in _iter_dm(g, label1_allowed, fixed):
        out.append(item)
        if limit is not None and len(out) >= limit:
            break
    return out


def _collect(g: Graph, cfg: SearchConfig, label1_allowed=None) -> list[tuple[int, tuple[int, ...]]]:
    if cfg.threads == 1 or g.n < 4:
        out = []
        for item in _iter_dm(g, label1_allowed):
            out.append(item)
            if cfg.limit is not None and len(out) >= cfg.limit:
                break
        return out
    # one shard per label of the first branching vertex; the sequential run visits
    # constants in ascending order and, within a constant, shards in label order
    jobs = [(g, label1_allowed, l, cfg.limit) for l in range(1, g.n + 1)]
    with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
        parts = list(pool.map(_shard, jobs))
    merged = []
    for k in sorted({k for part in parts for k, _ in part}):
        for part in parts:
            merged.extend(item for item in part if item[0] == k)
    return merged if cfg.limit is None else merged[: cfg.limit]


def find_dm_labelings(g: Graph, cfg: SearchConfig | None = None) -> list[tuple[Labeling, MagicCertificate]]:
    """Distance magic labellings of ``g`` with their certificates.

    Without a limit the list is complete and sorted lexicographically by label
    sequence.  With a limit, the first ``limit`` labellings in search order are returned
    (sorted), which is the same set however many workers are used.
    """
    cfg = cfg or SearchConfig()
    if cfg.prune_filters and not _passes_prefilters(g):
        return []
    if cfg.symmetry_reduction and g.n <= MAX_ORDER:
        group = automorphisms(g)
        reps = 0
        for orb in group.orbits():
            reps |= 1 << (orb[0] - 1)
        base = _collect(g, SearchConfig(threads=cfg.threads), label1_allowed=reps)
        seen = set()
        for _, labels in base:
            for sigma in group:
                seen.add(_act(sigma.mapping, labels))
        found = sorted(seen)
        if cfg.limit is not None:
            found = found[: cfg.limit]
    else:
        found = sorted(labels for _, labels in _collect(g, cfg))
    out = []
    for labels in found:
        cert = verify_distance_magic(g, labels)
        assert cert, labels
        out.append((Labeling(labels), cert))
    return out


def _act(mapping, labels):
    n = len(labels)
    out = [0] * n
    for i in range(n):
        out[mapping[i] - 1] = labels[i]
    return tuple(out)


def count_dm_labelings(g: Graph, threads: int = 1) -> int:
    """Number of distance magic labellings of ``g``.

    Only labellings that put label 1 on an orbit representative are generated; each
    counts for the size of that orbit.
    """
    if not _passes_prefilters(g):
        return 0
    if g.n > MAX_ORDER:
        return sum(1 for _ in _iter_dm(g))
    group = automorphisms(g)
    reps = 0
    orbit_size = {}
    for orb in group.orbits():
        reps |= 1 << (orb[0] - 1)
        orbit_size[orb[0] - 1] = len(orb)
    if threads > 1:
        items = _collect(g, SearchConfig(threads=threads), label1_allowed=reps)
    else:
        items = _iter_dm(g, label1_allowed=reps)
    total = 0
    for _, labels in items:
        total += orbit_size[labels.index(1)]
    return total


def is_distance_magic(g: Graph) -> bool:
    return bool(find_dm_labelings(g, SearchConfig(limit=1)))


# ---------------------------------------------------------------- p-distance magic search

def _pdm_backtrack(n, nbrs, p, counts, order) -> Iterator[tuple[int, tuple[int, ...]]]:
    lab = [0] * n
    s = [0] * n
    rem = [x.bit_count() for x in nbrs]
    watchers = [[w for w in range(n) if nbrs[w] >> v & 1] for v in range(n)]
    counts = dict(counts)
    values = sorted(counts)
    k0 = 0 if any(r == 0 for r in rem) else None

    def ok(k):
        for w in range(n):
            r = rem[w]
            if r == 0:
                if s[w] % p != k:
                    return False
            elif r == 1:
                want = (k - s[w]) % p
                if not any(c and v % p == want for v, c in counts.items()):
                    return False
        return True

    def rec(depth, k):
        if depth == n:
            yield k, tuple(lab)
            return
        v = order[depth]
        for l in values:
            if not counts[l]:
                continue
            counts[l] -= 1
            lab[v] = l
            kk = k
            for w in watchers[v]:
                s[w] += l
                rem[w] -= 1
                if rem[w] == 0 and kk is None:
                    kk = s[w] % p
            if kk is None or ok(kk):
                yield from rec(depth + 1, kk)
            for w in watchers[v]:
                s[w] -= l
                rem[w] += 1
            lab[v] = 0
            counts[l] += 1

    yield from rec(0, k0)


def find_p_dm_labelings(g: Graph, p: int, cfg: SearchConfig | None = None) -> list[tuple[ModularLabeling, MagicCertificate]]:
    """All bijections onto {1..n}_p whose weights agree mod p (up to ``cfg.limit``), sorted."""
    if p < 1:
        raise InvalidLabelingError(f"modulus must be >= 1, got {p}")
    cfg = cfg or SearchConfig()
    nbrs = list(g.rows)
    order = _branch_order(nbrs, g.n)
    found = []
    for _, labels in _pdm_backtrack(g.n, nbrs, p, label_multiset(g.n, p), order):
        found.append(labels)
        if cfg.limit is not None and len(found) >= cfg.limit:
            break
    out = []
    for labels in sorted(found):
        f = ModularLabeling(p, labels)
        cert = verify_p_distance_magic(g, f)
        assert cert, f
        out.append((f, cert))
    return out


def p_dm_constants(g: Graph, p: int) -> set[int]:
    return {cert.k for _, cert in find_p_dm_labelings(g, p)}


# ---------------------------------------------------------------- CRT composition

@dataclass(frozen=True)
class CrtResult:
    labeling: tuple[int, ...]
    constant: int
    consistent: bool
    p: int
    q: int

    def to_json(self) -> dict:
        return {
            "labeling": list(self.labeling),
            "modulus": self.p * self.q,
            "constant": self.constant,
            "consistent": self.consistent,
        }


def crt_pair(a: int, p: int, b: int, q: int) -> int:
    """The x in 0..pq-1 with x = a (mod p) and x = b (mod q), for coprime p, q."""
    if math.gcd(p, q) != 1:
        raise ValueError(f"moduli {p} and {q} are not coprime")
    if p == 1 or q == 1:
        return (a if q == 1 else b) % (p * q)
    t = ((b - a) * pow(p, -1, q)) % q
    return (a + p * t) % (p * q)


def crt_combine(g: Graph, f_p: ModularLabeling, f_q: ModularLabeling) -> CrtResult:
    """Combine a p- and a q-distance magic labelling vertex by vertex.

    Residue 0 is written as pq.  ``consistent`` is set when the combined labels form the
    multiset {1..n}_pq, in which case the result is itself pq-distance magic.
    """
    p, q = f_p.p, f_q.p
    if math.gcd(p, q) != 1:
        raise ValueError(f"moduli {p} and {q} are not coprime")
    if len(f_p) != g.n or len(f_q) != g.n:
        raise InvalidLabelingError("labellings do not match the graph order")
    cp = verify_p_distance_magic(g, f_p)
    cq = verify_p_distance_magic(g, f_q)
    if not cp or not cq:
        raise InapplicableError(f"inputs must be distance magic mod {p} and mod {q}: {cp or cq}")
    pq = p * q
    y = tuple(residue_label(crt_pair(a, p, b, q), pq) for a, b in zip(f_p.values, f_q.values))
    for yi, a, b in zip(y, f_p.values, f_q.values):
        assert (yi - a) % p == 0 and (yi - b) % q == 0
    k = crt_pair(cp.k, p, cq.k, q)
    consistent = Counter(y) == label_multiset(g.n, pq)
    if consistent:
        cert = verify_p_distance_magic(g, ModularLabeling(pq, y))
        assert cert and cert.k == k
    return CrtResult(y, k, consistent, p, q)


# ---------------------------------------------------------------- census

@dataclass(frozen=True)
class CensusRecord:
    graph6: str
    labeling_count: int
    magic_constant: int
    singular: bool
    degenerate: bool = False

    def graph(self) -> Graph:
        return parse_graph6(self.graph6)

    def to_json(self) -> dict:
        return {
            "graph6": self.graph6,
            "labeling_count": self.labeling_count,
            "magic_constant": self.magic_constant,
            "singular": self.singular,
            "degenerate": self.degenerate,
        }


def _pairs(n):
    # graph6 bit order: column j, rows i < j
    return [(i, j) for j in range(1, n) for i in range(j)]


_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def _vector_prefilter(n: int, start: int, stop: int, include_degenerate: bool) -> np.ndarray:
    """Edge-set ids in [start, stop) surviving the cheap degree and neighbourhood tests."""
    ids = np.arange(start, stop, dtype=np.int64)
    rows = np.zeros((ids.size, n), dtype=np.uint8)
    for e, (i, j) in enumerate(_pairs(n)):
        bit = ((ids >> e) & 1).astype(np.uint8)
        rows[:, i] |= bit << j
        rows[:, j] |= bit << i
    deg = _POP8[rows]
    keep = np.ones(ids.size, dtype=bool)
    edgeless = deg.max(axis=1) == 0
    # an isolated vertex has weight 0, so no other vertex may have neighbours
    keep &= ~((deg.min(axis=1) == 0) & ~edgeless)
    regular = deg.min(axis=1) == deg.max(axis=1)
    keep &= ~(regular & (deg[:, 0] % 2 == 1))
    for x in range(n):
        for y in range(x + 1, n):
            d = _POP8[rows[:, x] ^ rows[:, y]]
            keep &= ~((d == 1) | (d == 2))
    if not include_degenerate:
        keep &= ~edgeless
    return ids[keep]


def _graph_from_id(n: int, gid: int) -> Graph:
    rows = [0] * n
    for e, (i, j) in enumerate(_pairs(n)):
        if gid >> e & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def _dm_survivor(g: Graph) -> bool:
    """Remaining filters, cheapest first, then an existence search."""
    for check in (regular_filters, even_regular_zero_filter):
        verdict = check(g)
        if not verdict:
            log.debug("%s", verdict.to_json())
            return False
    return any(True for _ in _iter_dm(g))


def _census_chunk(args):
    n, start, stop, include_degenerate = args
    hits = []
    for gid in _vector_prefilter(n, start, stop, include_degenerate):
        g = _graph_from_id(n, int(gid))
        if _dm_survivor(g):
            hits.append(g)
    return hits


def _record(g: Graph, canon: str) -> CensusRecord:
    found = find_dm_labelings(g, SearchConfig(limit=1, prune_filters=False))
    k = found[0][1].k
    return CensusRecord(canon, count_dm_labelings(g), k, is_singular(g), degenerate=g.m == 0)


def census_dm_graphs(
    n: int | None = None,
    corpus: Iterable[str] | None = None,
    threads: int = 1,
    include_degenerate: bool = False,
    chunk: int = 1 << 16,
) -> list[CensusRecord]:
    """Distance magic graphs of order ``n`` up to isomorphism, sorted by canonical graph6.

    Without ``corpus`` all labelled graphs on n vertices are scanned (n <= 8).  With a
    corpus of graph6 lines every listed graph is tested instead (``n`` then only filters
    by order when given).  Edgeless graphs are trivially magic with constant 0; they are
    reported, flagged ``degenerate``, only when ``include_degenerate`` is set.
    """
    survivors: list[Graph] = []
    if corpus is None:
        if n is None or n < 1:
            raise ValueError("census needs a positive order n")
        if n > MAX_INTERNAL_CENSUS_ORDER:
            raise GraphError(f"internal generation supports n <= {MAX_INTERNAL_CENSUS_ORDER}; pass a graph6 corpus")
        total = 1 << (n * (n - 1) // 2)
        jobs = [(n, a, min(a + chunk, total), include_degenerate) for a in range(0, total, chunk)]
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for hits in pool.map(_census_chunk, jobs):
                    survivors.extend(hits)
        else:
            for job in jobs:
                survivors.extend(_census_chunk(job))
    else:
        for line in corpus:
            line = line.strip()
            if not line or line.startswith(">>"):
                continue
            g = parse_graph6(line)
            if n is not None and g.n != n:
                continue
            if g.m == 0:
                if include_degenerate:
                    survivors.append(g)
                continue
            verdict = symm_diff_filter(g)
            if not verdict:
                log.debug("%s", verdict.to_json())
                continue
            if _dm_survivor(g):
                survivors.append(g)
    classes: dict[str, Graph] = {}
    for g in survivors:
        classes.setdefault(canonical_form(g), g)
    return [_record(classes[c], c) for c in sorted(classes)]
