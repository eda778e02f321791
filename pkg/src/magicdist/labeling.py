"""Vertex labellings, neighbourhood weights and (p-)distance magic verification."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .graph import Graph


class InvalidLabelingError(ValueError):
    """The values are not a bijection onto {1..n} (or onto the multiset {1..n}_p)."""


class InapplicableError(ValueError):
    """A check was requested on a graph outside its hypotheses."""


def residue_label(value: int, p: int) -> int:
    """``value`` mod ``p`` with residue 0 written as ``p``."""
    return (value - 1) % p + 1


def label_multiset(n: int, p: int) -> Counter:
    return Counter(residue_label(i, p) for i in range(1, n + 1))


@dataclass(frozen=True)
class Labeling:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if sorted(self.values) != list(range(1, len(self.values) + 1)):
            raise InvalidLabelingError(f"{self.values} is not a permutation of 1..{len(self.values)}")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __str__(self):
        return ",".join(map(str, self.values))


@dataclass(frozen=True)
class ModularLabeling:
    """Labels over {1..p}.

    Construction does not enforce the multiset condition, because shifted labellings
    generally leave it; call :meth:`is_valid` or go through a verifier.
    """
    p: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.p < 1:
            raise InvalidLabelingError(f"modulus must be >= 1, got {self.p}")
        if any(not 1 <= v <= self.p for v in self.values):
            raise InvalidLabelingError(f"labels must lie in 1..{self.p}")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __str__(self):
        return f"p={self.p}:" + ",".join(map(str, self.values))

    def is_valid(self) -> bool:
        return Counter(self.values) == label_multiset(len(self.values), self.p)


AnyLabeling = Union[Labeling, ModularLabeling]


@dataclass(frozen=True)
class MagicCertificate:
    k: int
    weights: tuple[int, ...]
    p: int | None = None
    degenerate: bool = False

    def __bool__(self):
        return True


@dataclass(frozen=True)
class WeightMismatch:
    """Two vertices whose weights disagree (mod ``p`` when modular)."""
    u: int
    v: int
    w_u: int
    w_v: int
    weights: tuple[int, ...] = field(repr=False)
    p: int | None = None

    def __bool__(self):
        return False

    def __str__(self):
        mod = f" (mod {self.p})" if self.p else ""
        return f"w({self.u})={self.w_u} != w({self.v})={self.w_v}{mod}"


def parse_labeling(text: str) -> AnyLabeling:
    """Parse ``"1,3,2"`` or ``"p=2:1,2,2,1"``."""
    s = text.strip()
    p = None
    if s.lower().startswith("p="):
        head, _, s = s.partition(":")
        try:
            p = int(head[2:])
        except ValueError:
            raise InvalidLabelingError(f"bad modulus in {text!r}") from None
    try:
        values = tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise InvalidLabelingError(f"cannot parse labels from {text!r}") from None
    if not values:
        raise InvalidLabelingError("empty labeling")
    return ModularLabeling(p, values) if p is not None else Labeling(values)


def weights(g: Graph, f: AnyLabeling | Sequence[int]) -> tuple[int, ...]:
    values = f.values if isinstance(f, (Labeling, ModularLabeling)) else tuple(f)
    if len(values) != g.n:
        raise InvalidLabelingError(f"labeling has {len(values)} entries for a graph on {g.n} vertices")
    w = tuple(sum(values[u - 1] for u in g.neighbors(v)) for v in range(1, g.n + 1))
    if isinstance(f, ModularLabeling):
        return tuple(x % f.p for x in w)
    return w


def _first_mismatch(w, p=None):
    key = (lambda x: x % p) if p else (lambda x: x)
    for v in range(1, len(w)):
        if key(w[v]) != key(w[0]):
            return v
    return None


def verify_distance_magic(g: Graph, f: Labeling | Sequence[int]) -> MagicCertificate | WeightMismatch:
    """Certificate with the magic constant, or the first pair of vertices that disagree.

    Graphs without edges get a certificate with ``k = 0`` flagged ``degenerate``.
    """
    if not isinstance(f, Labeling):
        f = Labeling(f)
    w = weights(g, f)
    bad = _first_mismatch(w)
    if bad is not None:
        return WeightMismatch(1, bad + 1, w[0], w[bad], w)
    k = w[0]
    n = g.n
    assert sum(w) == sum(x * d for x, d in zip(f.values, g.degrees())) == n * k
    assert k <= magic_constant_bound(n)
    return MagicCertificate(k, w, degenerate=g.m == 0)


def verify_p_distance_magic(g: Graph, f: ModularLabeling) -> MagicCertificate | WeightMismatch:
    if not f.is_valid():
        raise InvalidLabelingError(f"{f} is not a bijection onto {{1..{len(f)}}}_{f.p}")
    w = weights(g, f)
    bad = _first_mismatch(w)
    if bad is not None:
        return WeightMismatch(1, bad + 1, w[0], w[bad], w, p=f.p)
    return MagicCertificate(w[0], w, p=f.p, degenerate=g.m == 0)


def reduce_mod_p(f: Labeling | Sequence[int], p: int) -> ModularLabeling:
    if p < 1:
        raise InvalidLabelingError(f"modulus must be >= 1, got {p}")
    return ModularLabeling(p, tuple(residue_label(v, p) for v in f))


def modulo_regularity(g: Graph, p: int) -> int | None:
    """``r`` when every degree is congruent to ``r`` mod ``p``, else None."""
    residues = {d % p for d in g.degrees()}
    return residues.pop() if len(residues) == 1 else None


def shift_labeling(g: Graph, f: ModularLabeling, i: int) -> tuple[ModularLabeling, int]:
    """Add ``i`` to every label and return the shifted labelling with its constant.

    The new constant is ``(k + i*r) mod p`` for an r (mod p)-regular graph.  The shifted
    labels form the multiset {1..n}_p again only when p divides n or i; the weights are
    congruent either way.
    """
    if i < 1:
        raise ValueError("shift must be a positive integer")
    r = modulo_regularity(g, f.p)
    if r is None:
        raise InapplicableError(f"graph is not modulo-{f.p} regular")
    cert = verify_p_distance_magic(g, f)
    if not cert:
        raise InapplicableError(f"input is not {f.p}-distance magic: {cert}")
    predicted = (cert.k + i * r) % f.p
    shifted = ModularLabeling(f.p, tuple(residue_label(v + i, f.p) for v in f.values))
    w = weights(g, shifted)
    assert all(x == predicted for x in w), (w, predicted)
    return shifted, predicted


def magic_constant_bound(n: int) -> Fraction:
    """Upper bound (n^2 - 1)/2 on the magic constant of an order-n graph."""
    if n < 1:
        raise ValueError("order must be positive")
    return Fraction(n * n - 1, 2)
