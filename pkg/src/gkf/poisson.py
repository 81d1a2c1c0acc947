"""Poisson algebra of polynomials on R^(2n) in the factorial-normalized basis.

A monomial ``e_A = x_1^a_1 ... x_2n^a_2n / (a_1! ... a_2n!)`` is keyed by its
exponent tuple ``A``; the same tuple also names the dual generator ``z_A``.
Coordinates are paired as ``(x_i, x_{2n+1-i})`` with ``omega(d_i, d_{2n+1-i}) = 1``,
so for n = 2 the pairs are (1, 4) and (2, 3), i.e. ``x_4 = y_1`` and ``x_3 = y_2``.

Cartan weights: ``e_A`` has weight ``(a_1 - a_2n, a_2 - a_{2n-1}, ...)`` and
``z_A`` the negative of that.  With this sign the raising elements
``x_1 x_3`` and ``x_2^2/2`` carry the simple roots (1, -1) and (0, 2) of C_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial, prod

ExponentVector = tuple[int, ...]
PolyElement = dict[ExponentVector, Fraction]

SUPPORTED_N = (1, 2)


def check_n(n: int) -> None:
    if n not in SUPPORTED_N:
        raise ValueError(f"n must be one of {SUPPORTED_N}, got {n}")


@dataclass(frozen=True)
class SymplecticStructure:
    """Pairing of coordinates defining omega; index pairs are 0-based."""

    n: int

    def __post_init__(self):
        check_n(self.n)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, 2 * self.n - 1 - i) for i in range(self.n))

    def omega(self, i: int, j: int) -> int:
        """omega(d/dx_i, d/dx_j) for 0-based indices."""
        for a, b in self.pairs:
            if (i, j) == (a, b):
                return 1
            if (i, j) == (b, a):
                return -1
        return 0


def degree(a: ExponentVector) -> int:
    return sum(a)


def monomials(n: int, d: int) -> list[ExponentVector]:
    """All exponent vectors of length 2n and total degree d, lexicographically ascending."""
    nv = 2 * n
    out = []
    for idx in combinations_with_replacement(range(nv), d):
        a = [0] * nv
        for i in idx:
            a[i] += 1
        out.append(tuple(a))
    return sorted(out)


def dim_homogeneous(n: int, d: int) -> int:
    """dim S_d = (d + 2n - 1)! / (d! (2n - 1)!)."""
    return comb(d + 2 * n - 1, 2 * n - 1)


def monomial_weight(a: ExponentVector) -> tuple[int, ...]:
    n = len(a) // 2
    return tuple(a[i] - a[2 * n - 1 - i] for i in range(n))


def dual_weight(c: ExponentVector) -> tuple[int, ...]:
    n = len(c) // 2
    return tuple(c[2 * n - 1 - i] - c[i] for i in range(n))


def _fact(a: ExponentVector) -> int:
    return prod(factorial(x) for x in a)


@lru_cache(maxsize=None)
def bracket(a: ExponentVector, b: ExponentVector) -> tuple[tuple[ExponentVector, Fraction], ...]:
    """{e_A, e_B} as a tuple of (exponent, coefficient) pairs.

    For each symplectic pair (i, j) the bracket contributes
    ``(a_i b_j - a_j b_i) * C! / (A! B!) * e_C`` with ``C = A + B - eps_i - eps_j``.
    """
    if len(a) != len(b):
        raise ValueError("exponent vectors of different lengths")
    n = len(a) // 2
    out: dict[ExponentVector, Fraction] = {}
    fab = _fact(a) * _fact(b)
    for i in range(n):
        j = 2 * n - 1 - i
        k = a[i] * b[j] - a[j] * b[i]
        if not k:
            continue
        c = list(x + y for x, y in zip(a, b))
        c[i] -= 1
        c[j] -= 1
        c = tuple(c)
        out[c] = out.get(c, 0) + Fraction(k * _fact(c), fab)
    return tuple((c, x) for c, x in sorted(out.items()) if x)


def bracket_poly(f: PolyElement, g: PolyElement) -> PolyElement:
    """Bilinear extension of :func:`bracket` to polynomials."""
    out: PolyElement = {}
    for a, x in f.items():
        for b, y in g.items():
            for c, z in bracket(a, b):
                v = out.get(c, 0) + x * y * z
                if v:
                    out[c] = v
                else:
                    out.pop(c, None)
    return out


@dataclass(frozen=True)
class SpGenerators:
    """Quadratic realization of sp(2n) with its Chevalley-style data."""

    n: int
    quadratics: tuple[ExponentVector, ...]
    cartan: tuple[ExponentVector, ...]
    raising: tuple[ExponentVector, ...]
    lowering: tuple[ExponentVector, ...]


def sp_generators(n: int) -> SpGenerators:
    """The 2n^2 + n quadratic monomials spanning sp(2n) under the bracket."""
    check_n(n)
    quads = tuple(monomials(n, 2))
    nv = 2 * n

    def unit(*idx):
        a = [0] * nv
        for i in idx:
            a[i] += 1
        return tuple(a)

    cartan = tuple(unit(i, nv - 1 - i) for i in range(n))
    # simple roots eps_i - eps_{i+1} (x_i x_{2n-1-i}) and 2 eps_n (x_n^2 / 2)
    raising = tuple(unit(i, nv - 2 - i) for i in range(n - 1)) + (unit(n - 1, n - 1),)
    lowering = tuple(unit(i + 1, nv - 1 - i) for i in range(n - 1)) + (unit(n, n),)
    return SpGenerators(n, quads, cartan, raising, lowering)


@lru_cache(maxsize=None)
def coadjoint_on_dual(d: ExponentVector, c: ExponentVector) -> tuple[tuple[ExponentVector, Fraction], ...]:
    """Action of the quadratic e_D on the dual generator z_C.

    Defined by ``<e_D . z_C, e_A> = -<z_C, {e_D, e_A}>``; the result lives in
    degree |C|.  Returned as a tuple of (exponent, coefficient) pairs.
    """
    if degree(d) != 2:
        raise ValueError(f"coadjoint action needs a quadratic, got {d}")
    n = len(c) // 2
    out: dict[ExponentVector, Fraction] = {}
    for i in range(n):
        j = 2 * n - 1 - i
        a = list(x - y for x, y in zip(c, d))
        a[i] += 1
        a[j] += 1
        if min(a) < 0:
            continue
        a = tuple(a)
        if a in out:
            continue
        for cc, x in bracket(d, a):
            if cc == c:
                out[a] = -x
    return tuple((a, x) for a, x in sorted(out.items()) if x)


def render_z(c: ExponentVector) -> str:
    """Appendix-style name of z_C: ``Z^(l)_{ijk}`` for n = 2, ``Z^(l)_{i}`` for n = 1."""
    body = "".join(str(x) for x in c[:-1]) if max(c) < 10 else ",".join(str(x) for x in c[:-1])
    return f"Z^({sum(c)})_{{{body}}}"
