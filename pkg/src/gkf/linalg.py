"""Exact sparse linear algebra over the rationals.

Small systems are reduced directly over :class:`fractions.Fraction`.  Large
ones go through a modular path: the null space is computed modulo a few
64-bit primes (dense, via python-flint), lifted by CRT and rational
reconstruction, and then *verified exactly* over Q.  Since the nullity modulo
any prime bounds the rational nullity from above, ``k`` verified, independent
kernel vectors with a modular nullity of ``k`` certify the result.

Both paths return the same canonical kernel basis: one vector per non-pivot
column of the reduced row echelon form, scaled so that the first nonzero
coordinate equals 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

try:
    import flint
except ImportError:  # pragma: no cover - exercised only without python-flint
    flint = None

__all__ = [
    "SparseVector",
    "SparseRationalMatrix",
    "rank",
    "kernel_basis",
    "coords_in_span",
    "modular_rank",
    "rational_reconstruction",
]

# Matrices with more cells than this use the modular kernel path.
MODULAR_THRESHOLD = 60_000


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, eq=False)
class SparseVector:
    """Vector of length ``dimension`` stored as ``{index: Fraction}``."""

    dimension: int
    entries: Mapping[int, Fraction]

    def __post_init__(self):
        clean = {}
        for i, x in self.entries.items():
            if not 0 <= i < self.dimension:
                raise IndexError(f"index {i} out of range for dimension {self.dimension}")
            if x:
                clean[i] = _as_fraction(x)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, values: Iterable) -> SparseVector:
        values = list(values)
        return cls(len(values), {i: x for i, x in enumerate(values) if x})

    def __getitem__(self, i: int) -> Fraction:
        return self.entries.get(i, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.dimension == other.dimension and self.entries == other.entries

    def __hash__(self):
        return hash((self.dimension, frozenset(self.entries.items())))

    def __repr__(self):
        return f"SparseVector({self.dimension}, {dict(sorted(self.entries.items()))})"

    def to_dense(self) -> list[Fraction]:
        out = [Fraction(0)] * self.dimension
        for i, x in self.entries.items():
            out[i] = x
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def scaled(self, c) -> SparseVector:
        c = _as_fraction(c)
        return SparseVector(self.dimension, {i: c * x for i, x in self.entries.items()})


class SparseRationalMatrix:
    """Immutable sparse matrix over Q, stored column-wise.

    Zeros are never stored.  ``entries`` gives the ``(row, col) -> Fraction``
    view; columns are kept internally because every operator in this package
    is assembled one column (one basis element's image) at a time.
    """

    __slots__ = ("n_rows", "n_cols", "_cols")

    def __init__(self, n_rows: int, n_cols: int, entries: Mapping[tuple[int, int], object] = ()):
        self.n_rows = n_rows
        self.n_cols = n_cols
        cols: dict[int, dict[int, Fraction]] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (r, c), x in items:
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise IndexError(f"entry ({r}, {c}) outside {n_rows}x{n_cols}")
            if x:
                cols.setdefault(c, {})[r] = _as_fraction(x)
        self._cols = cols

    @classmethod
    def from_columns(cls, n_rows: int, columns: Iterable[Mapping[int, object]]) -> SparseRationalMatrix:
        """Build from an iterable of ``{row: value}`` maps, one per column."""
        m = cls(n_rows, 0)
        cols = {}
        n_cols = 0
        for c, col in enumerate(columns):
            n_cols = c + 1
            clean = {}
            for r, x in col.items():
                if not 0 <= r < n_rows:
                    raise IndexError(f"row {r} outside {n_rows} rows")
                if x:
                    clean[r] = _as_fraction(x)
            if clean:
                cols[c] = clean
        m.n_cols = n_cols
        m._cols = cols
        return m

    @classmethod
    def from_dense(cls, rows: Iterable[Iterable]) -> SparseRationalMatrix:
        rows = [list(r) for r in rows]
        n_cols = len(rows[0]) if rows else 0
        return cls(len(rows), n_cols, {(i, j): x for i, r in enumerate(rows) for j, x in enumerate(r) if x})

    @classmethod
    def identity(cls, n: int) -> SparseRationalMatrix:
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return {(r, c): x for c, col in self._cols.items() for r, x in col.items()}

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self._cols.values())

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        return self._cols.get(c, {}).get(r, Fraction(0))

    def column(self, c: int) -> dict[int, Fraction]:
        return dict(self._cols.get(c, {}))

    def columns(self) -> Iterator[tuple[int, dict[int, Fraction]]]:
        for c in sorted(self._cols):
            yield c, self._cols[c]

    def rows(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.n_rows)]
        for c, col in self._cols.items():
            for r, x in col.items():
                out[r][c] = x
        return out

    def transpose(self) -> SparseRationalMatrix:
        return SparseRationalMatrix(self.n_cols, self.n_rows, {(c, r): x for (r, c), x in self.entries.items()})

    T = property(transpose)

    def is_zero(self) -> bool:
        return not self._cols

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.n_cols for _ in range(self.n_rows)]
        for c, col in self._cols.items():
            for r, x in col.items():
                out[r][c] = x
        return out

    def apply(self, v: SparseVector) -> SparseVector:
        if v.dimension != self.n_cols:
            raise ValueError(f"vector of dimension {v.dimension} vs {self.n_cols} columns")
        acc: dict[int, Fraction] = {}
        for c, x in v.entries.items():
            for r, y in self._cols.get(c, {}).items():
                acc[r] = acc.get(r, 0) + x * y
        return SparseVector(self.n_rows, acc)

    def __matmul__(self, other):
        if isinstance(other, SparseVector):
            return self.apply(other)
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = {}
        for c, col in other._cols.items():
            acc: dict[int, Fraction] = {}
            for k, x in col.items():
                for r, y in self._cols.get(k, {}).items():
                    acc[r] = acc.get(r, 0) + x * y
            acc = {r: x for r, x in acc.items() if x}
            if acc:
                cols[c] = acc
        out = SparseRationalMatrix(self.n_rows, other.n_cols)
        out._cols = cols
        return out

    def __sub__(self, other: SparseRationalMatrix) -> SparseRationalMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        acc = self.entries
        for rc, x in other.entries.items():
            acc[rc] = acc.get(rc, 0) - x
        return SparseRationalMatrix(self.n_rows, self.n_cols, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __repr__(self):
        return f"SparseRationalMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz})"

    # -- text serialization -------------------------------------------------

    def to_text(self) -> str:
        """``rows cols nnz`` header, then ``row col num/den`` in row-major order."""
        items = sorted(self.entries.items())
        lines = [f"{self.n_rows} {self.n_cols} {len(items)}"]
        lines += [f"{r} {c} {x.numerator}/{x.denominator}" for (r, c), x in items]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> SparseRationalMatrix:
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise ValueError("empty matrix text")
        try:
            n_rows, n_cols, nnz = map(int, lines[0].split())
        except ValueError as exc:
            raise ValueError(f"bad header line {lines[0]!r}") from exc
        if len(lines) - 1 != nnz:
            raise ValueError(f"header announces {nnz} entries, found {len(lines) - 1}")
        entries = {}
        for ln in lines[1:]:
            r, c, x = ln.split()
            entries[int(r), int(c)] = Fraction(x)
        return cls(n_rows, n_cols, entries)


# -- exact elimination --------------------------------------------------------


def _rref_rows(rows: Iterable[Mapping[int, Fraction]]) -> dict[int, dict[int, Fraction]]:
    """Reduced row echelon form of the row space, as ``{pivot_col: row}``.

    Every pivot row has a 1 at its pivot and zeros at every other pivot
    column, so the result is canonical: it depends only on the row space.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        row = {c: _as_fraction(x) for c, x in raw.items() if x}
        for c in [c for c in row if c in pivots]:
            f = row.get(c)
            if not f:
                continue
            for k, y in pivots[c].items():
                v = row.get(k, 0) - f * y
                if v:
                    row[k] = v
                else:
                    row.pop(k, None)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {k: x * inv for k, x in row.items()}
        for prow in pivots.values():
            f = prow.get(p)
            if f:
                for k, y in row.items():
                    v = prow.get(k, 0) - f * y
                    if v:
                        prow[k] = v
                    else:
                        del prow[k]
        pivots[p] = row
    return pivots


def _kernel_from_rref(pivots: Mapping[int, Mapping[int, Fraction]], n_cols: int) -> list[SparseVector]:
    free_vecs: dict[int, dict[int, Fraction]] = {}
    for p, row in pivots.items():
        for k, x in row.items():
            if k != p:
                free_vecs.setdefault(k, {})[p] = -x
    out = []
    for f in range(n_cols):
        if f in pivots:
            continue
        entries = free_vecs.get(f, {})
        entries[f] = Fraction(1)
        out.append(_normalize(SparseVector(n_cols, entries)))
    return out


def _normalize(v: SparseVector) -> SparseVector:
    if v.is_zero():
        return v
    lead = v.entries[min(v.entries)]
    return v if lead == 1 else v.scaled(1 / lead)


# -- modular path -------------------------------------------------------------


def _primes_below(start: int) -> Iterator[int]:
    p = start - 1 if start % 2 == 0 else start - 2
    while p > 2:
        if _is_probable_prime(p):
            yield p
        p -= 2


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:  # deterministic for n < 3.3e24
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


PRIMES_START = 1 << 62


def rational_reconstruction(a: int, m: int) -> Fraction | None:
    """Smallest rational ``n/d`` with ``n ≡ a·d (mod m)``, ``|n|, d <= sqrt(m/2)``."""
    a %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _mod_entry(x: Fraction, p: int) -> int:
    return x.numerator * pow(x.denominator, -1, p) % p


def _nmod_matrix(m: SparseRationalMatrix, p: int):
    a = flint.nmod_mat(m.n_rows, m.n_cols, p)
    for c, col in m._cols.items():
        for r, x in col.items():
            a[r, c] = _mod_entry(x, p)
    return a


def _usable_prime(m: SparseRationalMatrix, p: int) -> bool:
    return all(x.denominator % p for col in m._cols.values() for x in col.values())


def modular_rank(m: SparseRationalMatrix, p: int | None = None) -> int:
    """Rank modulo a prime: a lower bound for the rational rank."""
    if m.n_rows == 0 or m.n_cols == 0 or m.is_zero():
        return 0
    primes = _primes_below(PRIMES_START) if p is None else iter([p])
    for q in primes:
        if _usable_prime(m, q):
            return _nmod_matrix(m, q).rank()
    raise ValueError(f"no usable prime for modular rank (p={p})")


def _modular_nullspace(m: SparseRationalMatrix, p: int) -> tuple[list[int], list[dict[int, int]]]:
    """Canonical kernel mod p as (free columns, residue vectors)."""
    a = _nmod_matrix(m, p)
    x, nullity = a.nullspace()
    vecs = []
    for j in range(nullity):
        vec = {}
        for i in range(m.n_cols):
            v = int(x[i, j])
            if v:
                vec[i] = v
        vecs.append(vec)
    free = [max(v) for v in vecs]
    order = sorted(range(nullity), key=free.__getitem__)
    return [free[j] for j in order], [vecs[j] for j in order]


def _verify_kernel(m: SparseRationalMatrix, v: SparseVector) -> bool:
    return m.apply(v).is_zero()


def _kernel_modular(m: SparseRationalMatrix, max_primes: int = 40) -> list[SparseVector] | None:
    # Primes are grouped by the free-column set of their reduced echelon form;
    # unlucky primes land in a group whose lift never verifies.
    groups: dict[tuple[int, ...], tuple[list[dict[int, int]], int]] = {}
    used = 0
    for p in _primes_below(PRIMES_START):
        if used >= max_primes:
            return None
        if not _usable_prime(m, p):
            continue
        used += 1
        free, vecs = _modular_nullspace(m, p)
        if not free:
            return []
        key = tuple(free)
        if key in groups:
            residues, modulus = groups[key]
            residues = [_crt_merge(r, modulus, v, p) for r, v in zip(residues, vecs)]
            modulus *= p
        else:
            residues, modulus = vecs, p
        groups[key] = (residues, modulus)
        lifted = _lift(residues, modulus, m.n_cols)
        if lifted is not None and all(_verify_kernel(m, v) for v in lifted):
            return [_normalize(v) for v in lifted]
    return None


def _crt_merge(r: dict[int, int], m1: int, v: dict[int, int], m2: int) -> dict[int, int]:
    inv = pow(m1, -1, m2)
    out = {}
    for i in r.keys() | v.keys():
        a, b = r.get(i, 0), v.get(i, 0)
        x = a + m1 * ((b - a) * inv % m2)
        if x:
            out[i] = x
    return out


def _lift(residues: list[dict[int, int]], modulus: int, dim: int) -> list[SparseVector] | None:
    out = []
    for res in residues:
        entries = {}
        for i, a in res.items():
            q = rational_reconstruction(a, modulus)
            if q is None:
                return None
            entries[i] = q
        out.append(SparseVector(dim, entries))
    return out


# -- public operations --------------------------------------------------------


def _use_modular(m: SparseRationalMatrix) -> bool:
    return flint is not None and m.n_rows * m.n_cols > MODULAR_THRESHOLD


def kernel_basis(m: SparseRationalMatrix, method: str = "auto") -> list[SparseVector]:
    """Canonical basis of the null space ``{v : m v = 0}``.

    ``method`` is ``"exact"``, ``"modular"`` or ``"auto"`` (modular for large
    matrices when python-flint is importable).  The modular path falls back to
    exact elimination if reconstruction does not verify.
    """
    if method not in ("auto", "exact", "modular"):
        raise ValueError(f"unknown method {method!r}")
    if m.n_cols == 0:
        return []
    if m.is_zero():
        return [SparseVector(m.n_cols, {i: 1}) for i in range(m.n_cols)]
    if method == "modular" or (method == "auto" and _use_modular(m)):
        if flint is None:
            raise RuntimeError("modular kernel requested but python-flint is not installed")
        out = _kernel_modular(m)
        if out is not None:
            return out
    return _kernel_from_rref(_rref_rows(m.rows()), m.n_cols)


def rank(m: SparseRationalMatrix, method: str = "auto") -> int:
    """Exact rank over Q."""
    if m.is_zero():
        return 0
    if method == "modular" or (method == "auto" and _use_modular(m)):
        return m.n_cols - len(kernel_basis(m, method="modular"))
    if m.n_rows < m.n_cols:
        return len(_rref_rows(m.transpose().rows()))
    return len(_rref_rows(m.rows()))


def coords_in_span(v: SparseVector, basis: list[SparseVector]) -> list[Fraction] | None:
    """Coefficients ``c`` with ``v == sum(c[i] * basis[i])``, or None if v is outside the span.

    The basis vectors must be linearly independent; a dependent basis raises
    ``ValueError``.
    """
    k = len(basis)
    for b in basis:
        if b.dimension != v.dimension:
            raise ValueError("dimension mismatch between vector and basis")
    if v.is_zero():
        return [Fraction(0)] * k
    # Row-reduce the basis while tracking combinations: row i = sum t[i][j] basis[j].
    pivots: list[tuple[int, dict[int, Fraction], dict[int, Fraction]]] = []
    for j, b in enumerate(basis):
        row = dict(b.entries)
        combo = {j: Fraction(1)}
        for p, prow, pcombo in pivots:
            f = row.get(p)
            if f:
                _axpy(row, -f, prow)
                _axpy(combo, -f, pcombo)
        if not row:
            raise ValueError("basis vectors are linearly dependent")
        p = min(row)
        inv = 1 / row[p]
        row = {i: x * inv for i, x in row.items()}
        combo = {i: x * inv for i, x in combo.items()}
        pivots.append((p, row, combo))
    rest = dict(v.entries)
    coeffs: dict[int, Fraction] = {}
    for p, prow, pcombo in pivots:
        f = rest.get(p)
        if f:
            _axpy(rest, -f, prow)
            _axpy(coeffs, f, pcombo)
    if rest:
        return None
    return [coeffs.get(j, Fraction(0)) for j in range(k)]


def _axpy(target: dict, a, source: Mapping) -> None:
    for i, x in source.items():
        y = target.get(i, 0) + a * x
        if y:
            target[i] = y
        else:
            target.pop(i, None)
