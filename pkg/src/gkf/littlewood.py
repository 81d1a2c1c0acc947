"""Littlewood-Richardson coefficients and stable Sp(4) tensor products.

The stable (Newell-Littlewood) product of two symplectic labels produces
partitions that may be longer than n; those are brought back to honest
labels by King's modification rule.  This is the tableau-based route to
tensor product decompositions; :func:`gkf.characters.tensor_decompose_klimyk`
is the independent weight-diagram route.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator

from .characters import Label, normalize_label
from .partitions import Partition


def _strip(p: Iterable[int]) -> Partition:
    p = tuple(p)
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _horizontal_strips(shape: Partition, k: int) -> Iterator[Partition]:
    """Partitions nu containing ``shape`` with nu/shape a horizontal strip of k cells."""
    rows = list(shape) + [0]

    def rec(i: int, left: int, acc: list[int]):
        if i == len(rows):
            if left == 0:
                yield _strip(acc)
            return
        cap = left if i == 0 else min(left, rows[i - 1] - rows[i])
        for add in range(cap, -1, -1):
            yield from rec(i + 1, left - add, acc + [rows[i] + add])

    yield from rec(0, k, [])


def _is_lattice(filling: dict[int, list[int]]) -> bool:
    counts = Counter()
    for r in sorted(filling):
        for label in reversed(filling[r]):
            counts[label] += 1
            if label > 1 and counts[label] > counts[label - 1]:
                return False
    return True


@lru_cache(maxsize=None)
def _lr(alpha: Partition, beta: Partition) -> tuple[tuple[Partition, int], ...]:
    out: Counter = Counter()

    def rec(shape: Partition, label: int, filling: dict[int, list[int]]):
        if label > len(beta):
            if _is_lattice(filling):
                out[shape] += 1
            return
        for nu in _horizontal_strips(shape, beta[label - 1]):
            new = {r: list(v) for r, v in filling.items()}
            for r, x in enumerate(nu):
                old = shape[r] if r < len(shape) else 0
                if x > old:
                    new.setdefault(r, []).extend([label] * (x - old))
            rec(nu, label + 1, new)

    rec(alpha, 1, {})
    return tuple(sorted(out.items()))


def lr_coefficients(alpha: Iterable[int], beta: Iterable[int]) -> dict[Partition, int]:
    """``{nu: c^nu_{alpha beta}}`` by counting Littlewood-Richardson tableaux of shape nu/alpha, content beta."""
    a, b = _strip(alpha), _strip(beta)
    for p in (a, b):
        if any(x < y for x, y in zip(p, p[1:])) or any(x < 0 for x in p):
            raise ValueError(f"not a partition: {p}")
    return dict(_lr(a, b))


def _contained(p: Partition, q: Partition) -> bool:
    return len(p) <= len(q) and all(x <= y for x, y in zip(p, q))


def _subpartitions(p: Partition) -> Iterator[Partition]:
    def rec(i: int, cap: int, acc: list[int]):
        if i == len(p):
            yield _strip(acc)
            return
        for x in range(min(cap, p[i]), -1, -1):
            yield from rec(i + 1, x, acc + [x])

    yield from rec(0, p[0] if p else 0, [])


@lru_cache(maxsize=None)
def skew_decomposition(lam: Partition, delta: Partition) -> tuple[tuple[Partition, int], ...]:
    """``s_{lam/delta} = sum_alpha c^lam_{delta alpha} s_alpha``."""
    if not _contained(delta, lam):
        return ()
    size = sum(lam) - sum(delta)
    out = {}
    for alpha in _subpartitions(lam):
        if sum(alpha) != size:
            continue
        c = lr_coefficients(delta, alpha).get(lam, 0)
        if c:
            out[alpha] = c
    return tuple(sorted(out.items()))


def _boundary_strip_removal(p: Partition, h: int) -> tuple[int, Partition] | None:
    """Remove the rim strip of h cells that starts at the foot of the first column.

    Returns (number of columns of the strip, remaining partition), or None if
    the strip does not exist or leaves a non-partition.
    """
    rows = list(p)
    r, c = len(rows) - 1, 0
    cells = []
    while len(cells) < h:
        if r < 0:
            return None
        cells.append((r, c))
        if c + 1 < rows[r]:
            c += 1
        else:
            r -= 1
    removed: dict[int, int] = Counter(row for row, _ in cells)
    new = []
    for i, x in enumerate(rows):
        k = removed.get(i, 0)
        # removed cells must be the rightmost cells of their row
        if k and max(col for row, col in cells if row == i) != x - 1:
            return None
        new.append(x - k)
    if any(a < b for a, b in zip(new, new[1:])):
        return None
    return len({col for _, col in cells}), _strip(new)


def modify_label(nu: Iterable[int], n: int = 2) -> tuple[int, Label | None]:
    """King's modification rule for Sp(2n): ``(sign, label)``, or ``(0, None)`` when the term vanishes.

    While the label is longer than n, strip a rim hook of length
    ``2 * len - 2n - 2`` from the foot of the first column, multiplying by
    ``(-1)^(columns of the hook)``.  A hook of length 0 or a failed removal
    kills the term.
    """
    p = _strip(nu)
    sign = 1
    while len(p) > n:
        h = 2 * len(p) - 2 * n - 2
        if h <= 0:
            return 0, None
        res = _boundary_strip_removal(p, h)
        if res is None:
            return 0, None
        cols, p = res
        sign *= (-1) ** cols
    return sign, normalize_label(p, n)


def tensor_raw(lam: Iterable[int], mu: Iterable[int]) -> dict[Partition, int]:
    """Newell-Littlewood product before modification: sum over delta, alpha, beta."""
    lam, mu = _strip(lam), _strip(mu)
    out: Counter = Counter()
    for delta in _subpartitions(lam):
        if not _contained(delta, mu):
            continue
        for alpha, ca in skew_decomposition(lam, delta):
            for beta, cb in skew_decomposition(mu, delta):
                for nu, c in lr_coefficients(alpha, beta).items():
                    out[nu] += ca * cb * c
    return dict(sorted(out.items()))


def apply_modification(raw: dict[Partition, int], n: int = 2) -> dict[Label, int]:
    out: Counter = Counter()
    for nu, m in raw.items():
        sign, label = modify_label(nu, n)
        if sign:
            out[label] += sign * m
    return {k: v for k, v in sorted(out.items()) if v}


def tensor_decompose_stable(lam: Iterable[int], mu: Iterable[int], n: int = 2) -> dict[Label, int]:
    """V_lam (x) V_mu via Littlewood-Richardson products and King modification."""
    lam, mu = normalize_label(lam, n), normalize_label(mu, n)
    result = apply_modification(tensor_raw(lam, mu), n)
    if any(v < 0 for v in result.values()):
        raise ArithmeticError(f"negative multiplicity after modification: {lam} x {mu}: {result}")
    return result
