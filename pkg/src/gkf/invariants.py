"""sp(2n)-module structure of cochain slices.

Multiplicities come from maximal weight vectors: a
copy of V_lam contributes exactly one vector of weight lam that is killed by
the simple raising operators.  Invariants are the weight-0 vectors killed by
both raising operators; they are then checked against all quadratics.
"""

from __future__ import annotations

import logging
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from . import __version__
from .characters import decomposition_dim, is_dominant
from .cochains import Cochain, ComplexSlice, Wedge, gen_exp, gen_id, wedge_weight
from .linalg import SparseRationalMatrix, SparseVector, kernel_basis, modular_rank, rank
from .poisson import ExponentVector, coadjoint_on_dual, degree, sp_generators

log = logging.getLogger(__name__)

CACHE_FORMAT = 1


class InvariantViolation(RuntimeError):
    """A computed invariant fails an exact consistency check (indicates a convention bug)."""


# -- the action on wedges -----------------------------------------------------


@lru_cache(maxsize=None)
def _coadjoint_ids(n: int, d: ExponentVector, g: int) -> tuple[tuple[int, Fraction], ...]:
    return tuple((gen_id(a), x) for a, x in coadjoint_on_dual(d, gen_exp(n, g)))


def act_wedge(n: int, d: ExponentVector, w: Wedge) -> dict[Wedge, Fraction]:
    """Derivation extension of the coadjoint action of e_D to a wedge monomial."""
    out: dict[Wedge, Fraction] = {}
    for i, g in enumerate(w):
        rest = w[:i] + w[i + 1:]
        for a, x in _coadjoint_ids(n, d, g):
            # insert a into rest; moving it from slot i to its sorted slot
            lo, hi = 0, len(rest)
            while lo < hi:
                mid = (lo + hi) // 2
                if rest[mid] < a:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < len(rest) and rest[lo] == a:
                continue
            key = rest[:lo] + (a,) + rest[lo:]
            v = out.get(key, 0) + (x if (lo - i) % 2 == 0 else -x)
            if v:
                out[key] = v
            else:
                del out[key]
    return out


def apply_action(d: ExponentVector, c: Cochain) -> Cochain:
    out = Cochain(c.n)
    for w, x in c.items():
        for k, y in act_wedge(c.n, d, w).items():
            out.add_term(k, x * y)
    return out


def action_matrix(d: ExponentVector, s: ComplexSlice) -> SparseRationalMatrix:
    """Matrix of the quadratic e_D acting on the slice (an even derivation, no Koszul signs)."""
    if degree(d) != 2:
        raise ValueError(f"action needs a quadratic generator, got {d}")
    idx = s.index
    cols = []
    for w in s.basis:
        cols.append({idx[k]: x for k, x in act_wedge(s.n, d, w).items()})
    return SparseRationalMatrix.from_columns(s.dim, cols)


# -- weights ------------------------------------------------------------------

_weight_cache: dict[tuple, dict[tuple[int, ...], list[int]]] = {}


def weight_spaces(s: ComplexSlice) -> dict[tuple[int, ...], list[int]]:
    """``{Cartan weight: basis indices}`` for the slice."""
    key = s.key
    if key not in _weight_cache:
        out: dict[tuple[int, ...], list[int]] = {}
        for i, w in enumerate(s.basis):
            out.setdefault(wedge_weight(s.n, w), []).append(i)
        _weight_cache.clear()
        _weight_cache[key] = out
    return _weight_cache[key]


def weight_subspace(s: ComplexSlice, lam) -> list[int]:
    """Indices of basis wedges of total Cartan weight lam."""
    return list(weight_spaces(s).get(tuple(lam), []))


def _raising_matrix(s: ComplexSlice, indices: list[int]) -> SparseRationalMatrix:
    """Stacked simple raising operators restricted to the given basis vectors."""
    gens = sp_generators(s.n)
    basis = s.basis
    rows: dict[tuple[int, Wedge], int] = {}
    cols = []
    for i in indices:
        col = {}
        for j, d in enumerate(gens.raising):
            for k, x in act_wedge(s.n, d, basis[i]).items():
                r = rows.setdefault((j, k), len(rows))
                col[r] = x
        cols.append(col)
    return SparseRationalMatrix.from_columns(len(rows), cols)


def highest_weight_vectors(s: ComplexSlice, lam) -> list[Cochain]:
    """Basis of the weight-lam vectors killed by every simple raising operator."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    idx = weight_subspace(s, lam)
    if not idx:
        return []
    m = _raising_matrix(s, idx)
    basis = s.basis
    out = []
    for v in kernel_basis(m):
        out.append(Cochain(s.n, {basis[idx[j]]: x for j, x in v.entries.items()}))
    return out


# -- invariants ---------------------------------------------------------------


@dataclass
class InvariantBasis:
    """Basis of the trivial isotypic component of a slice."""

    slice: ComplexSlice
    vectors: list[Cochain] = field(default_factory=list)

    def __len__(self):
        return len(self.vectors)

    def as_vectors(self) -> list[SparseVector]:
        return [self.slice.to_vector(v) for v in self.vectors]


def check_invariant(c: Cochain, quadratics=None) -> None:
    """Raise :class:`InvariantViolation` unless every quadratic annihilates c."""
    for d in quadratics or sp_generators(c.n).quadratics:
        img = apply_action(d, c)
        if img:
            raise InvariantViolation(f"e_{d} does not annihilate the cochain ({len(img)} terms survive)")


def _cache_path(cache_dir: Path, s: ComplexSlice) -> Path:
    shapes = "_".join("-".join(map(str, sh.counts)) for sh in s.shapes)
    return Path(cache_dir) / f"inv_n{s.n}_w{s.w}_m{s.m}_g{s.min_gen}_{shapes}.txt"


def _cache_header(s: ComplexSlice) -> str:
    shapes = ";".join(",".join(map(str, sh.counts)) for sh in s.shapes)
    return f"# gkf-invariants n={s.n} w={s.w} m={s.m} min_gen={s.min_gen} shapes={shapes} version={__version__}/{CACHE_FORMAT}"


def save_invariant_basis(basis: InvariantBasis, cache_dir) -> Path:
    s = basis.slice
    vecs = basis.as_vectors()
    m = SparseRationalMatrix(len(vecs), s.dim, {(i, j): x for i, v in enumerate(vecs) for j, x in v.entries.items()})
    path = _cache_path(cache_dir, s)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(_cache_header(s) + "\n" + m.to_text())
    os.replace(tmp, path)
    return path


class CacheError(RuntimeError):
    pass


def has_cached_basis(s: ComplexSlice, cache_dir) -> bool:
    return _cache_path(cache_dir, s).exists()


def load_invariant_basis(s: ComplexSlice, cache_dir) -> InvariantBasis | None:
    """Cached basis for the slice, None if absent; :class:`CacheError` if the file is corrupt."""
    path = _cache_path(cache_dir, s)
    if not path.exists():
        return None
    text = path.read_text()
    header, _, body = text.partition("\n")
    if header != _cache_header(s):
        raise CacheError(f"{path}: header {header!r} does not match this slice/version")
    try:
        m = SparseRationalMatrix.from_text(body)
    except (ValueError, IndexError) as exc:
        raise CacheError(f"{path}: {exc}") from exc
    if m.n_cols != s.dim:
        raise CacheError(f"{path}: vectors of length {m.n_cols}, slice has dimension {s.dim}")
    vecs = [SparseVector(m.n_cols, row) for row in m.rows()]
    return InvariantBasis(s, [s.from_vector(v) for v in vecs])


def invariant_basis(s: ComplexSlice, cache_dir=None, verify: bool = True) -> InvariantBasis:
    """Invariant cochains of the slice, computed summand by summand.

    Weight-0 vectors killed by the simple raising operators span the trivial
    isotypic part; every vector is then checked against all quadratics.
    """
    if cache_dir is not None:
        cached = load_invariant_basis(s, cache_dir)
        if cached is not None:
            log.info("invariants for %r loaded from cache", s)
            return cached
    zero = (0,) * s.n
    vectors: list[Cochain] = []
    for part in s.summands():
        log.info("extracting invariants of %s (dim %d, weight-0 dim %d)", part, part.dim, len(weight_subspace(part, zero)))
        vectors.extend(highest_weight_vectors(part, zero))
    if verify:
        quads = sp_generators(s.n).quadratics
        for v in vectors:
            check_invariant(v, quads)
    out = InvariantBasis(s, vectors)
    if cache_dir is not None:
        save_invariant_basis(out, cache_dir)
    return out


# -- isotypic decomposition ---------------------------------------------------


@dataclass
class IsotypicReport:
    """Multiplicity of each irreducible V_lam (dominant lam) in a slice."""

    slice: ComplexSlice
    multiplicities: dict[tuple[int, ...], int]

    @property
    def total_dim(self) -> int:
        return decomposition_dim(self.multiplicities, self.slice.n)

    def trivial(self) -> int:
        return self.multiplicities.get((0,) * self.slice.n, 0)


def _multiplicities(part: ComplexSlice, method: str) -> dict[tuple[int, ...], int]:
    spaces = weight_spaces(part)
    out = {}
    for lam in sorted(spaces):
        if not is_dominant(lam):
            continue
        idx = spaces[lam]
        m = _raising_matrix(part, idx)
        if m.n_rows == 0:
            r = 0
        elif method == "modular":
            r = modular_rank(m)
        else:
            r = rank(m, method="exact")
        if len(idx) - r:
            out[lam] = len(idx) - r
    return out


def isotypic_report(s: ComplexSlice) -> IsotypicReport:
    """Irreducible decomposition of the slice by highest-weight counting.

    Multiplicities are ``dim W_lam - rank(raising | W_lam)``.  Ranks are taken
    modulo a large prime, which can only overestimate multiplicities; the
    result is certified exact when the dimensions add up to dim s, and
    recomputed exactly otherwise.
    """
    total: Counter = Counter()
    for part in s.summands():
        mults = _multiplicities(part, "modular")
        if decomposition_dim(mults, s.n) != part.dim:
            log.warning("modular multiplicities of %s failed the dimension check; recomputing exactly", part)
            mults = _multiplicities(part, "exact")
        total.update(mults)
    report = IsotypicReport(s, dict(sorted(total.items())))
    if report.total_dim != s.dim:
        raise InvariantViolation(f"isotypic report of {s!r} sums to {report.total_dim}, not {s.dim}")
    return report
