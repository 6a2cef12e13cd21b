"""
Jordan-form data of punctual fibers and the orbit-closure order.

An orbit of commuting data over a fixed support is labeled by one
partition per support point. O1 lies in the closure of O2 iff the
supports agree and rank(J1^j) <= rank(J2^j) pointwise for every j.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, List, Sequence, Tuple

from ..errors import ArityMismatch, MalformedInput
from .azumaya_point import Point, RepPoint, SupportLengthData, point_key
from .exact_linalg import Matrix, block_diag, char_poly, matrix_power, rank
from .polynomials import split_roots
from .scalars import gr

Partition = Tuple[int, ...]


def canonical_partition(parts: Iterable[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if not parts or any(p <= 0 for p in parts):
        raise MalformedInput(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise MalformedInput(f"partition must be weakly decreasing: {parts}")
    return parts


def _as_point(point) -> Point:
    if isinstance(point, (list, tuple)):
        return tuple(gr(c) for c in point)
    return (gr(point),)


@dataclass(frozen=True)
class JordanData:
    entries: Tuple[Tuple[Point, Partition], ...]

    def __post_init__(self):
        entries = tuple((_as_point(p), canonical_partition(parts)) for p, parts in self.entries)
        entries = tuple(sorted(entries, key=lambda e: point_key(e[0])))
        points = [p for p, _ in entries]
        if len(set(points)) != len(points):
            raise MalformedInput("jordan data lists a point twice")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def single(cls, partition: Sequence[int], point=0) -> "JordanData":
        return cls(((point, tuple(partition)),))

    @property
    def rank(self) -> int:
        return sum(sum(parts) for _, parts in self.entries)

    def support(self) -> SupportLengthData:
        return SupportLengthData(tuple((p, sum(parts)) for p, parts in self.entries))

    def partition_at(self, point) -> Partition:
        point = _as_point(point)
        for p, parts in self.entries:
            if p == point:
                return parts
        raise KeyError(point)


@dataclass(frozen=True)
class OrbitLabel:
    jordan: JordanData

    @property
    def rank(self) -> int:
        return self.jordan.rank


def orbit_label(jordan: JordanData) -> OrbitLabel:
    return OrbitLabel(jordan)


# ====================== Partitions ======================
def partitions(n: int) -> Iterator[Partition]:
    """All partitions of n, in reverse lexicographic order: (n), (n-1,1), ..."""

    def rec(remaining: int, largest: int) -> Iterator[Partition]:
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - part, part):
                yield (part,) + rest

    if n <= 0:
        return iter(())
    return rec(n, n)


def conjugate_partition(parts: Partition) -> Partition:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def block_rank(parts: Partition, j: int) -> int:
    """rank(J^j) of a nilpotent Jordan matrix with the given block sizes."""
    return sum(max(p - j, 0) for p in parts)


def rank_sequence(parts: Partition) -> Tuple[int, ...]:
    out, j = [], 1
    while block_rank(parts, j):
        out.append(block_rank(parts, j))
        j += 1
    return tuple(out)


def partition_from_ranks(length: int, ranks: Sequence[int]) -> Partition:
    """Block sizes from rank(N^0) = length, rank(N^1), ... (trailing zeros implied)."""
    seq = [length] + list(ranks) + [0]
    at_least = [seq[j] - seq[j + 1] for j in range(len(seq) - 1)]
    blocks = []
    for size in range(len(at_least), 0, -1):
        exactly = at_least[size - 1] - (at_least[size] if size < len(at_least) else 0)
        blocks.extend([size] * exactly)
    return tuple(blocks)


def jordan_matrix(point, parts: Partition) -> Matrix:
    """Block-diagonal Jordan matrix with eigenvalue `point`, largest block first."""
    return block_diag(*(Matrix.jordan_block(p, point) for p in parts))


# ====================== Jordan data of a point ======================
def jordan_data(t: RepPoint) -> JordanData:
    if t.arity != 1:
        raise ArityMismatch(f"jordan_data needs one matrix, got {t.arity}")
    m = t.matrices[0]
    entries = []
    for root, mult in split_roots(char_poly(m)):
        shifted = m.shift(root)
        # whole-space ranks; the other eigenspaces contribute a constant
        ranks = [rank(matrix_power(shifted, j)) for j in range(mult + 1)]
        local = [ranks[j] - ranks[mult] for j in range(1, mult + 1)]
        entries.append(((root,), partition_from_ranks(mult, [x for x in local if x])))
    return JordanData(tuple(entries))


# ====================== Order ======================
def precede(j1: JordanData, j2: JordanData) -> bool:
    """j1 <= j2 in the orbit-closure order."""
    if j1.support() != j2.support():
        return False
    for (_, p1), (_, p2) in zip(j1.entries, j2.entries):
        if any(block_rank(p1, j) > block_rank(p2, j) for j in range(1, sum(p1) + 1)):
            return False
    return True


def orbit_closure_contains(outer: OrbitLabel, inner: OrbitLabel) -> bool:
    return precede(inner.jordan, outer.jordan)


def maximal_orbit(s: SupportLengthData) -> OrbitLabel:
    return OrbitLabel(JordanData(tuple((p, (length,)) for p, length in s.entries)))


def minimal_orbit(s: SupportLengthData) -> OrbitLabel:
    return OrbitLabel(JordanData(tuple((p, (1,) * length) for p, length in s.entries)))


def orbits_over(s: SupportLengthData) -> List[OrbitLabel]:
    """Every orbit label with the given support-length data."""
    points = [p for p, _ in s.entries]
    choices = [list(partitions(length)) for _, length in s.entries]
    return [OrbitLabel(JordanData(tuple(zip(points, combo)))) for combo in product(*choices)]


def filtration_ranks(j: JordanData) -> Tuple[Tuple[Point, Tuple[int, ...]], ...]:
    return tuple((p, rank_sequence(parts)) for p, parts in j.entries)


def is_complete_flag(label: OrbitLabel) -> bool:
    """Maximal orbit: each local module is cyclic, filtered by a complete flag."""
    return all(len(parts) == 1 for _, parts in label.jordan.entries)


def is_unfiltered(label: OrbitLabel) -> bool:
    """Minimal orbit: the local nilpotent action is zero."""
    return all(parts[0] == 1 for _, parts in label.jordan.entries)
