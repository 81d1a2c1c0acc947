"""Partitions of the weight and the cochain shapes they index.

A cochain shape ``(k_3, k_4, ...)`` counts how many wedge factors come from
each dual space S_i^*.  Shapes of degree m and weight w solve
``sum k_i = m`` and ``sum k_i (i - 2) = w``; for generators of degree >= 3
they are in bijection with partitions of w of length m via
``k_{i+2} = #{parts equal to i}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

Partition = tuple[int, ...]


def is_partition(p) -> bool:
    return all(x >= 1 for x in p) and all(a >= b for a, b in zip(p, p[1:]))


@lru_cache(maxsize=None)
def _partitions_bounded(w: int, m: int, largest: int) -> tuple[Partition, ...]:
    if m == 0:
        return ((),) if w == 0 else ()
    if w < m:
        return ()
    out = []
    for first in range(min(largest, w - (m - 1)), 0, -1):
        for rest in _partitions_bounded(w - first, m - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(w: int, m: int) -> list[Partition]:
    """Partitions of w into exactly m positive parts, lexicographically descending."""
    if w < 0 or m < 0:
        raise ValueError("w and m must be non-negative")
    return list(_partitions_bounded(w, m, w))


@dataclass(frozen=True, order=True)
class CochainShape:
    """Multiplicities ``k_i`` of generators of degree i, for i >= min_gen.

    ``counts[j]`` is ``k_{min_gen + j}``; trailing zeros are stripped so equal
    shapes compare equal.
    """

    min_gen: int
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(self.counts)
        if any(k < 0 for k in counts):
            raise ValueError(f"negative multiplicity in {counts}")
        while counts and counts[-1] == 0:
            counts = counts[:-1]
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_map(cls, ks: dict[int, int], min_gen: int = 3) -> CochainShape:
        if any(i < min_gen for i, k in ks.items() if k):
            raise ValueError(f"generator degree below min_gen={min_gen}: {ks}")
        top = max(ks, default=min_gen - 1)
        return cls(min_gen, tuple(ks.get(i, 0) for i in range(min_gen, top + 1)))

    def as_map(self) -> dict[int, int]:
        return {self.min_gen + j: k for j, k in enumerate(self.counts) if k}

    @property
    def degree(self) -> int:
        return sum(self.counts)

    @property
    def weight(self) -> int:
        return sum(k * (self.min_gen + j - 2) for j, k in enumerate(self.counts))

    def __str__(self):
        return " x ".join(f"L^{k} S{i}" if k > 1 else f"S{i}" for i, k in self.as_map().items()) or "1"


def shape_from_partition(p: Partition, min_gen: int = 3) -> CochainShape:
    """``k_{i+2} = #{j : l_j = i}``."""
    if not is_partition(p):
        raise ValueError(f"not a partition: {p}")
    ks: dict[int, int] = {}
    for part in p:
        ks[part + 2] = ks.get(part + 2, 0) + 1
    return CochainShape.from_map(ks, min_gen)


def partition_from_shape(s: CochainShape) -> Partition:
    """Inverse of :func:`shape_from_partition` (generators of degree 2 carry no cells)."""
    parts = []
    for i, k in sorted(s.as_map().items(), reverse=True):
        if i > 2:
            parts += [i - 2] * k
    return tuple(parts)


def _shape_key(s: CochainShape):
    return s.counts


def shapes_for(w: int, m: int, min_gen: int = 3) -> list[CochainShape]:
    """All shapes of degree m and weight w, descending lexicographically in (k_min_gen, k_min_gen+1, ...)."""
    if w < 0 or m < 0:
        raise ValueError("w and m must be non-negative")
    if min_gen not in (2, 3):
        raise ValueError(f"min_gen must be 2 or 3, got {min_gen}")
    out = []
    k2_range = range(m + 1) if min_gen == 2 else range(1)
    for k2 in k2_range:
        for p in partitions_of(w, m - k2):
            ks = shape_from_partition(p, 3).as_map()
            if k2:
                ks[2] = k2
            out.append(CochainShape.from_map(ks, min_gen))
    return sorted(out, key=_shape_key, reverse=True)
