"""Weight-graded cochains of ham^1 (or ham^0) and the Chevalley-Eilenberg coboundary.

Dual generators z_C are numbered by integer ids in the fixed total order
"degree ascending, then exponent vector lexicographically", so a wedge
monomial ``z_C1 ^ ... ^ z_Cm`` is a strictly increasing tuple of ids.  Use
:func:`gen_id` / :func:`gen_exp` to move between ids and exponent vectors.

Sign conventions: ``(a ^ b)(x, y) = a(x) b(y) - a(y) b(x)``, the coboundary
of a generator is ``d z_C = -sum_{A<B} <z_C, {e_A, e_B}> z_A ^ z_B`` so that
``d z_C (e_A, e_B) = -<z_C, {e_A, e_B}>``, and d is extended by
``d(a ^ b) = da ^ b + (-1)^|a| a ^ db``.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import comb, prod
from typing import Iterable, Iterator

from .linalg import SparseRationalMatrix, SparseVector
from .partitions import CochainShape, shapes_for
from .poisson import ExponentVector, bracket, check_n, dim_homogeneous, dual_weight, monomials, render_z

Wedge = tuple[int, ...]


# -- generator numbering ------------------------------------------------------


@lru_cache(maxsize=None)
def _offset(n: int, d: int) -> int:
    return sum(dim_homogeneous(n, k) for k in range(d))


@lru_cache(maxsize=None)
def _block(n: int, d: int) -> tuple[ExponentVector, ...]:
    return tuple(monomials(n, d))


@lru_cache(maxsize=None)
def _block_index(n: int, d: int) -> dict[ExponentVector, int]:
    return {c: i for i, c in enumerate(_block(n, d))}


@lru_cache(maxsize=None)
def gen_id(c: ExponentVector) -> int:
    """Position of z_C in the global generator order."""
    n = len(c) // 2
    d = sum(c)
    return _offset(n, d) + _block_index(n, d)[c]


@lru_cache(maxsize=None)
def _gen_exp(n: int, g: int) -> ExponentVector:
    d = 0
    while _offset(n, d + 1) <= g:
        d += 1
    return _block(n, d)[g - _offset(n, d)]


def gen_exp(n: int, g: int) -> ExponentVector:
    """Exponent vector of generator id ``g`` on R^(2n)."""
    return _gen_exp(n, g)


def wedge_from_exps(factors: Iterable[ExponentVector]) -> tuple[int, Wedge]:
    """Canonical (sign, wedge) for a product of generators; sign 0 on repeats."""
    ids = [gen_id(tuple(c)) for c in factors]
    return sort_with_sign(ids)


def sort_with_sign(ids: list[int]) -> tuple[int, Wedge]:
    sign = 1
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            if ids[i] == ids[j]:
                return 0, ()
            if ids[i] > ids[j]:
                sign = -sign
    return sign, tuple(sorted(ids))


def wedge_exps(n: int, w: Wedge) -> tuple[ExponentVector, ...]:
    return tuple(gen_exp(n, g) for g in w)


@lru_cache(maxsize=None)
def gen_weight(n: int, g: int) -> tuple[int, ...]:
    return dual_weight(gen_exp(n, g))


def wedge_weight(n: int, w: Wedge) -> tuple[int, ...]:
    """Total Cartan weight of a wedge monomial (sum of dual weights)."""
    out = [0] * n
    for g in w:
        for i, x in enumerate(gen_weight(n, g)):
            out[i] += x
    return tuple(out)


def wedge_grading_weight(n: int, w: Wedge) -> int:
    """Sum of (|C| - 2) over the factors."""
    return sum(sum(gen_exp(n, g)) - 2 for g in w)


# -- cochains -----------------------------------------------------------------


class Cochain(dict):
    """Sparse rational combination of wedge monomials ``{wedge: Fraction}`` on R^(2n)."""

    def __init__(self, n: int, terms=()):
        super().__init__()
        self.n = n
        items = terms.items() if hasattr(terms, "items") else terms
        for w, x in items:
            self.add_term(w, x)

    def add_term(self, w: Wedge, x) -> None:
        v = self.get(w, 0) + x
        if v:
            self[w] = v if isinstance(v, Fraction) else Fraction(v)
        else:
            self.pop(w, None)

    @property
    def degree(self) -> int | None:
        degs = {len(w) for w in self}
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous degrees {sorted(degs)}")
        return degs.pop() if degs else None

    @property
    def weight(self) -> int | None:
        ws = {wedge_grading_weight(self.n, w) for w in self}
        if len(ws) > 1:
            raise ValueError(f"inhomogeneous weights {sorted(ws)}")
        return ws.pop() if ws else None

    def scaled(self, c) -> Cochain:
        return Cochain(self.n, {w: c * x for w, x in self.items()})

    def __add__(self, other: Cochain) -> Cochain:
        out = Cochain(self.n, self)
        for w, x in other.items():
            out.add_term(w, x)
        return out

    def __sub__(self, other: Cochain) -> Cochain:
        return self + other.scaled(-1)

    def __neg__(self) -> Cochain:
        return self.scaled(-1)

    def __repr__(self):
        return f"Cochain(n={self.n}, {len(self)} terms)"

    def render(self) -> str:
        """Appendix-style text: ``c Z^(3)_{100} ^ Z^(4)_{101} + ...``."""
        if not self:
            return "0"
        parts = []
        for w in sorted(self):
            x = self[w]
            body = " ^ ".join(render_z(gen_exp(self.n, g)) for g in w)
            coef = "" if x == 1 else "-" if x == -1 else f"{x} "
            parts.append(f"{coef}{body}")
        return " + ".join(parts).replace("+ -", "- ")


# -- slices -------------------------------------------------------------------


class ComplexSlice:
    """The weight-w, degree-m piece C^m|_w of the cochain complex on R^(2n).

    ``shapes`` restricts the slice to some direct summands (e.g. only
    Lambda^2 S_3 x Lambda^2 S_4 inside C^4|_6); by default all shapes of
    :func:`gkf.partitions.shapes_for` are included.
    """

    def __init__(self, n: int, w: int, m: int, min_gen: int = 3, shapes: Iterable[CochainShape] | None = None):
        check_n(n)
        if min_gen not in (2, 3):
            raise ValueError(f"min_gen must be 2 or 3, got {min_gen}")
        self.n, self.w, self.m, self.min_gen = n, w, m, min_gen
        all_shapes = shapes_for(w, m, min_gen)
        if shapes is None:
            self.shapes = tuple(all_shapes)
        else:
            shapes = tuple(shapes)
            bad = [s for s in shapes if s not in all_shapes]
            if bad:
                raise ValueError(f"shapes {bad} do not belong to C^{m}|_{w} (min_gen={min_gen})")
            self.shapes = tuple(s for s in all_shapes if s in shapes)

    @property
    def key(self) -> tuple:
        return (self.n, self.w, self.m, self.min_gen, tuple(s.counts for s in self.shapes))

    def __repr__(self):
        return f"ComplexSlice(n={self.n}, w={self.w}, m={self.m}, min_gen={self.min_gen}, dim={self.dim})"

    def __str__(self):
        return " + ".join(str(s) for s in self.shapes) or "0"

    def shape_dim(self, s: CochainShape) -> int:
        return prod(comb(dim_homogeneous(self.n, i), k) for i, k in s.as_map().items())

    @property
    def dim(self) -> int:
        return sum(self.shape_dim(s) for s in self.shapes)

    def iter_shape(self, s: CochainShape) -> Iterator[Wedge]:
        blocks = []
        for i, k in sorted(s.as_map().items()):
            ids = range(_offset(self.n, i), _offset(self.n, i + 1))
            blocks.append(list(combinations(ids, k)))
        for parts in product(*blocks):
            yield tuple(g for part in parts for g in part)

    @cached_property
    def basis(self) -> list[Wedge]:
        out = []
        for s in self.shapes:
            out.extend(self.iter_shape(s))
        return out

    @cached_property
    def index(self) -> dict[Wedge, int]:
        return {w: i for i, w in enumerate(self.basis)}

    def summands(self) -> list[ComplexSlice]:
        return [ComplexSlice(self.n, self.w, self.m, self.min_gen, [s]) for s in self.shapes]

    def next(self) -> ComplexSlice:
        """The full slice one degree up (target of d)."""
        return ComplexSlice(self.n, self.w, self.m + 1, self.min_gen)

    def to_vector(self, c: Cochain) -> SparseVector:
        idx = self.index
        try:
            return SparseVector(self.dim, {idx[w]: x for w, x in c.items()})
        except KeyError as exc:
            raise ValueError(f"cochain term {exc.args[0]} is not in {self!r}") from None

    def from_vector(self, v: SparseVector) -> Cochain:
        basis = self.basis
        return Cochain(self.n, {basis[i]: x for i, x in v.entries.items()})


def complex_slice(n: int, w: int, m: int, min_gen: int = 3, shapes=None) -> ComplexSlice:
    return ComplexSlice(n, w, m, min_gen, shapes)


# -- coboundary ---------------------------------------------------------------


def _bounded_monomials(top: ExponentVector, d: int) -> Iterator[ExponentVector]:
    """Exponent vectors A <= top componentwise with |A| = d."""
    if len(top) == 1:
        if d <= top[0]:
            yield (d,)
        return
    rest_cap = sum(top[1:])
    for a in range(max(0, d - rest_cap), min(top[0], d) + 1):
        for tail in _bounded_monomials(top[1:], d - a):
            yield (a,) + tail


@lru_cache(maxsize=None)
def _d_generator_ids(n: int, g: int, min_gen: int) -> tuple[tuple[int, int, Fraction], ...]:
    c = gen_exp(n, g)
    total = sum(c) + 2
    out: dict[tuple[int, int], Fraction] = {}
    for i in range(n):
        j = 2 * n - 1 - i
        top = list(c)
        top[i] += 1
        top[j] += 1
        top = tuple(top)
        for da in range(min_gen, total - min_gen + 1):
            for a in _bounded_monomials(top, da):
                b = tuple(x - y for x, y in zip(top, a))
                ga, gb = gen_id(a), gen_id(b)
                if ga >= gb:
                    continue
                coef = dict(bracket(a, b)).get(c)
                if coef:
                    out[ga, gb] = out.get((ga, gb), 0) - coef
    return tuple((a, b, x) for (a, b), x in sorted(out.items()) if x)


def d_generator(c: ExponentVector, min_gen: int = 3) -> Cochain:
    """d z_C as a degree-2 cochain; splits with a factor of degree < min_gen are dropped."""
    n = len(c) // 2
    check_n(n)
    return Cochain(n, {(a, b): x for a, b, x in _d_generator_ids(n, gen_id(tuple(c)), min_gen)})


def d_wedge(n: int, w: Wedge, min_gen: int = 3) -> dict[Wedge, Fraction]:
    """d of a single wedge monomial, by the graded Leibniz rule."""
    out: dict[Wedge, Fraction] = {}
    for i, g in enumerate(w):
        rest = w[:i] + w[i + 1:]
        base = -1 if i % 2 else 1
        for a, b, x in _d_generator_ids(n, g, min_gen):
            pa = bisect_left(rest, a)
            if pa < len(rest) and rest[pa] == a:
                continue
            pb = bisect_left(rest, b)
            if pb < len(rest) and rest[pb] == b:
                continue
            sign = base if (abs(pa - i) + abs(pb - i)) % 2 == 0 else -base
            key = rest[:pa] + (a,) + rest[pa:pb] + (b,) + rest[pb:]
            v = out.get(key, 0) + sign * x
            if v:
                out[key] = v
            else:
                del out[key]
    return out


def d_cochain(c: Cochain, min_gen: int = 3) -> Cochain:
    out = Cochain(c.n)
    for w, x in c.items():
        for k, y in d_wedge(c.n, w, min_gen).items():
            out.add_term(k, x * y)
    return out


def d_matrix(src: ComplexSlice, dst: ComplexSlice) -> SparseRationalMatrix:
    """Matrix of d: src -> dst in the enumerated bases (column j = d(basis_j))."""
    assert (src.n, src.w, src.min_gen) == (dst.n, dst.w, dst.min_gen), "slices of different complexes"
    assert dst.m == src.m + 1, f"degree mismatch {src.m} -> {dst.m}"
    idx = dst.index
    cols = []
    for w in src.basis:
        col = {}
        for k, x in d_wedge(src.n, w, src.min_gen).items():
            r = idx.get(k)
            assert r is not None, f"d leaves the target slice: {k}"
            col[r] = x
        cols.append(col)
    return SparseRationalMatrix.from_columns(dst.dim, cols)
