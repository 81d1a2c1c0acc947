"""Relative complex assembly, Betti numbers and Euler characteristics."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

from .cochains import ComplexSlice, d_cochain
from .invariants import InvariantBasis, InvariantViolation, has_cached_basis, invariant_basis
from .linalg import SparseRationalMatrix, coords_in_span, rank
from .poisson import check_n, dim_homogeneous

log = logging.getLogger(__name__)

# Slices above this dimension are only processed on request (or from cache).
HEAVY_DIM = 100_000
# Largest weight whose results have been checked against published tables.
VALIDATED_WEIGHT = 6


@dataclass
class RelativeComplex:
    """Invariant subcomplex of the weight-w slice of the cochain complex.

    ``bases[m]`` is the invariant basis in degree m (None if the degree was
    skipped), ``matrices[m]`` the matrix of d from degree m to m + 1 in those
    bases (None if either end is missing).
    """

    n: int
    w: int
    min_gen: int
    bases: list[InvariantBasis | None]
    matrices: list[SparseRationalMatrix | None]
    skipped: list[int] = field(default_factory=list)

    @property
    def degrees(self) -> range:
        return range(len(self.bases))

    def dim(self, m: int) -> int | None:
        b = self.bases[m]
        return None if b is None else len(b)

    def rank_out(self, m: int) -> int | None:
        """Rank of d leaving degree m (0 past the top degree)."""
        if m < 0 or m >= len(self.matrices):
            return 0
        mat = self.matrices[m]
        if mat is None:
            return None
        return rank(mat) if mat.n_rows and mat.n_cols else 0


@dataclass
class DegreeRecord:
    degree: int
    dim: int | None
    rank_out: int | None
    betti: int | None


@dataclass
class CohomologyReport:
    n: int
    weight: int
    min_gen: int
    records: list[DegreeRecord]
    euler_from_dims: int | None
    euler_from_betti: int | None
    validated: bool = True

    @property
    def dims(self) -> tuple:
        return tuple(r.dim for r in self.records)

    @property
    def betti(self) -> tuple:
        return tuple(r.betti for r in self.records)

    @property
    def complete(self) -> bool:
        return all(r.dim is not None and r.betti is not None for r in self.records)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "weight": self.weight,
            "min_gen": self.min_gen,
            "validated": self.validated,
            "degrees": [vars(r).copy() for r in self.records],
            "euler_from_dims": self.euler_from_dims,
            "euler_from_betti": self.euler_from_betti,
        }

    def format_table(self) -> str:
        def cell(x):
            return "?" if x is None else str(x)

        head = ["degree"] + [str(r.degree) for r in self.records]
        rows = [
            head,
            ["dim"] + [cell(r.dim) for r in self.records],
            ["Betti"] + [cell(r.betti) for r in self.records],
            ["rank d"] + [cell(r.rank_out) for r in self.records],
        ]
        width = max(len(c) for row in rows for c in row[1:])
        lines = [f"weight {self.weight}, n = {self.n}" + ("" if self.min_gen == 3 else f", min_gen = {self.min_gen}")]
        for row in rows:
            lines.append(f"{row[0]:<7}" + " ".join(c.rjust(width) for c in row[1:]))
        lines.append(f"Euler characteristic: {cell(self.euler_from_dims)}")
        return "\n".join(lines)


def max_degree(n: int, w: int, min_gen: int = 3) -> int:
    """Top degree with possibly nonzero cochains.

    Factors from S_3 and up carry weight >= 1; S_2 factors carry weight 0 but
    there are at most dim S_2 of them.
    """
    return w if min_gen == 3 else w + dim_homogeneous(n, 2)


def _invariant_image(src: InvariantBasis, dst: InvariantBasis, min_gen: int) -> SparseRationalMatrix:
    """Coordinates of d(basis of src) in the basis of dst."""
    dst_vecs = dst.as_vectors()
    cols = []
    for j, c in enumerate(src.vectors):
        img = dst.slice.to_vector(d_cochain(c, min_gen))
        coords = coords_in_span(img, dst_vecs)
        if coords is None:
            raise InvariantViolation(
                f"d of invariant {j} in degree {src.slice.m} leaves the invariant span of degree {dst.slice.m}"
            )
        cols.append({i: x for i, x in enumerate(coords) if x})
    return SparseRationalMatrix.from_columns(len(dst_vecs), cols)


def build_relative_complex(
    n: int,
    w: int,
    min_gen: int = 3,
    heavy: bool = False,
    cache_dir: str | Path | None = None,
) -> RelativeComplex:
    """Invariant bases in every degree and the restricted coboundaries between them.

    Slices of dimension above ``HEAVY_DIM`` are skipped unless ``heavy`` is
    set or their invariant basis is already cached; skipped degrees show up
    as None.
    """
    check_n(n)
    if w < 0:
        raise ValueError("weight must be non-negative")
    top = max_degree(n, w, min_gen)
    if w % 2:
        # the central element -1 of Sp(2n) acts by (-1)^w on weight-w cochains
        zero = [InvariantBasis(ComplexSlice(n, w, m, min_gen), []) for m in range(top + 1)]
        return RelativeComplex(n, w, min_gen, zero, [SparseRationalMatrix(0, 0) for _ in range(top)])
    bases: list[InvariantBasis | None] = []
    skipped = []
    for m in range(top + 1):
        s = ComplexSlice(n, w, m, min_gen)
        if s.dim > HEAVY_DIM and not heavy and not (cache_dir and has_cached_basis(s, cache_dir)):
            log.warning("skipping C^%d|_%d (dim %d); pass heavy=True / --heavy to compute it", m, w, s.dim)
            bases.append(None)
            skipped.append(m)
            continue
        t = time.perf_counter()
        bases.append(invariant_basis(s, cache_dir=cache_dir))
        log.info("C^%d|_%d: dim %d, %d invariants (%.1fs)", m, w, s.dim, len(bases[-1]), time.perf_counter() - t)
    matrices: list[SparseRationalMatrix | None] = []
    for m in range(len(bases) - 1):
        src, dst = bases[m], bases[m + 1]
        if src is None or dst is None:
            matrices.append(None)
        else:
            matrices.append(_invariant_image(src, dst, min_gen))
    for m in range(len(matrices) - 1):
        a, b = matrices[m], matrices[m + 1]
        if a is not None and b is not None and a.n_cols and b.n_rows and not (b @ a).is_zero():
            raise InvariantViolation(f"restricted d squares to a nonzero map at degree {m}")
    return RelativeComplex(n, w, min_gen, bases, matrices, skipped)


def betti(rc: RelativeComplex) -> CohomologyReport:
    """Betti numbers ``dim_m - rank D_m - rank D_{m-1}`` and both Euler characteristics."""
    records = []
    for m in rc.degrees:
        dim = rc.dim(m)
        out, inc = rc.rank_out(m), rc.rank_out(m - 1)
        b = None if None in (dim, out, inc) else dim - out - inc
        if b is not None and b < 0:
            raise InvariantViolation(f"negative Betti number in degree {m}")
        records.append(DegreeRecord(m, dim, out, b))
    dims = [r.dim for r in records]
    bettis = [r.betti for r in records]
    chi_d = None if None in dims else sum((-1) ** m * x for m, x in enumerate(dims))
    chi_b = None if None in bettis else sum((-1) ** m * x for m, x in enumerate(bettis))
    if chi_d is not None and chi_b is not None and chi_d != chi_b:
        raise InvariantViolation(f"Euler characteristics disagree: {chi_d} from dims, {chi_b} from Betti numbers")
    return CohomologyReport(rc.n, rc.w, rc.min_gen, records, chi_d, chi_b, validated=rc.w <= VALIDATED_WEIGHT)


def cohomology(n: int, w: int, min_gen: int = 3, heavy: bool = False, cache_dir=None) -> CohomologyReport:
    return betti(build_relative_complex(n, w, min_gen, heavy, cache_dir))


def slice_dims(n: int, w: int, min_gen: int = 3) -> list[tuple[int, str, int]]:
    """``(degree, shape description, dim)`` for every nonzero slice of weight w."""
    out = []
    for m in range(max_degree(n, w, min_gen) + 1):
        s = ComplexSlice(n, w, m, min_gen)
        if s.dim:
            out.append((m, str(s), s.dim))
    return out


def emit_bases(rc: RelativeComplex, directory: str | Path) -> list[Path]:
    """Write each degree's invariant basis in Z-notation, one cochain per paragraph."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for m, b in enumerate(rc.bases):
        if b is None or not len(b):
            continue
        path = directory / f"n{rc.n}_w{rc.w}_m{m}.txt"
        chunks = [f"# C^{m}|_{rc.w}, {len(b)} invariant cochains"]
        for i, c in enumerate(b.vectors):
            chunks.append(f"[{i}] {len(c)} terms\n{c.render()}")
        path.write_text("\n\n".join(chunks) + "\n")
        written.append(path)
    return written
