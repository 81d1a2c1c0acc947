"""Characters of Sp(2n), n = 1, 2: dimensions, weight diagrams, tensor products.

Weights are written in the orthonormal basis eps_1, ..., eps_n.  A label
``(p, q)`` is the dominant weight ``p eps_1 + q eps_2`` and names the
irreducible V_{p,q}; for n = 1 a label is ``(p,)``.  The Weyl group of C_n is
the group of signed permutations, so the dominant representative of any
weight is its vector of absolute values sorted in decreasing order.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Mapping

from .poisson import check_n

Weight = tuple[int, ...]
Label = tuple[int, ...]


def positive_roots(n: int) -> list[Weight]:
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            for s in (1, -1):
                r = [0] * n
                r[i], r[j] = 1, s
                roots.append(tuple(r))
        r = [0] * n
        r[i] = 2
        roots.append(tuple(r))
    return roots


def simple_roots(n: int) -> list[Weight]:
    out = []
    for i in range(n - 1):
        r = [0] * n
        r[i], r[i + 1] = 1, -1
        out.append(tuple(r))
    r = [0] * n
    r[n - 1] = 2
    out.append(tuple(r))
    return out


def rho(n: int) -> Weight:
    return tuple(range(n, 0, -1))


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def is_dominant(lam: Weight) -> bool:
    return all(a >= b for a, b in zip(lam, lam[1:])) and (not lam or lam[-1] >= 0)


def dominant_rep(mu: Weight) -> Weight:
    return tuple(sorted((abs(x) for x in mu), reverse=True))


def normalize_label(lam: Iterable[int], n: int) -> Label:
    """Pad or trim trailing zeros so the label has exactly n entries."""
    lam = tuple(lam)
    if len(lam) > n and any(lam[n:]):
        raise ValueError(f"label {lam} is longer than {n}")
    lam = (lam + (0,) * n)[:n]
    if not is_dominant(lam):
        raise ValueError(f"label {lam} is not dominant")
    return lam


def weyl_dim(lam: Iterable[int], n: int) -> int:
    """Weyl dimension formula for C_n."""
    check_n(n)
    lam = normalize_label(lam, n)
    r = rho(n)
    lr = tuple(a + b for a, b in zip(lam, r))
    num = den = 1
    for alpha in positive_roots(n):
        num *= _dot(lr, alpha)
        den *= _dot(r, alpha)
    q = Fraction(num, den)
    assert q.denominator == 1
    return int(q)


def _in_root_lattice_below(lam: Weight, mu: Weight) -> bool:
    """True iff lam - mu is a non-negative integer combination of simple roots."""
    n = len(lam)
    diff = [a - b for a, b in zip(lam, mu)]
    # simple roots e_i - e_{i+1} (i < n-1) and 2 e_n: coefficients are partial sums
    acc = 0
    for i in range(n - 1):
        acc += diff[i]
        if acc < 0:
            return False
    acc += diff[n - 1]
    return acc >= 0 and acc % 2 == 0


@lru_cache(maxsize=None)
def _dominant_multiplicities(lam: Label) -> dict[Weight, int]:
    n = len(lam)
    r = rho(n)
    lr = tuple(a + b for a, b in zip(lam, r))
    norm_lr = _dot(lr, lr)
    roots = positive_roots(n)
    bound = lam[0] if lam else 0
    candidates = [
        mu for mu in product(range(bound, -1, -1), repeat=n)
        if is_dominant(mu) and _in_root_lattice_below(lam, mu)
    ]

    def height(mu):
        # height of lam - mu in simple roots
        diff = [a - b for a, b in zip(lam, mu)]
        total, acc = 0, 0
        for i in range(n - 1):
            acc += diff[i]
            total += acc
        acc += diff[n - 1]
        return total + acc // 2

    candidates.sort(key=height)
    mult: dict[Weight, int] = {}
    for mu in candidates:
        if mu == lam:
            mult[mu] = 1
            continue
        mr = tuple(a + b for a, b in zip(mu, r))
        denom = norm_lr - _dot(mr, mr)
        total = 0
        for alpha in roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, alpha))
                rep = dominant_rep(nu)
                if not _in_root_lattice_below(lam, rep):
                    break
                m = mult.get(rep, 0)
                total += 2 * m * _dot(nu, alpha)
                k += 1
        assert denom > 0 and total % denom == 0, (lam, mu, total, denom)
        if total:
            mult[mu] = total // denom
    return mult


def _orbit(mu: Weight) -> set[Weight]:
    out = {()}
    for x in mu:
        out = {o + (s,) for o in out for s in {x, -x}}
    return {tuple(p) for o in out for p in permutations(o)}


def freudenthal_multiplicities(lam: Iterable[int], n: int) -> dict[Weight, int]:
    """Full weight diagram ``{weight: multiplicity}`` of V_lam by Freudenthal's recursion."""
    check_n(n)
    lam = normalize_label(lam, n)
    out: dict[Weight, int] = {}
    for mu, m in _dominant_multiplicities(lam).items():
        for nu in _orbit(mu):
            out[nu] = m
    return out


def _reflect_to_dominant(x: Weight) -> tuple[int, Weight]:
    """Sign of the Weyl element sending x into the dominant chamber, and the image.

    Returns sign 0 when x lies on a wall (so the Klimyk term vanishes).
    """
    absx = [abs(v) for v in x]
    if 0 in absx or len(set(absx)) < len(absx):
        return 0, ()
    sign = (-1) ** sum(1 for v in x if v < 0)
    # parity of the permutation sorting absx in decreasing order
    for i in range(len(absx)):
        for j in range(i + 1, len(absx)):
            if absx[i] < absx[j]:
                sign = -sign
    return sign, tuple(sorted(absx, reverse=True))


def tensor_decompose_klimyk(lam: Iterable[int], mu: Iterable[int], n: int) -> dict[Label, int]:
    """V_lam (x) V_mu by the Racah-Klimyk formula; iterates over the weights of V_mu."""
    check_n(n)
    lam, mu = normalize_label(lam, n), normalize_label(mu, n)
    if sum(lam) < sum(mu):
        lam, mu = mu, lam
    r = rho(n)
    out: Counter = Counter()
    for nu, m in freudenthal_multiplicities(mu, n).items():
        x = tuple(a + b + c for a, b, c in zip(lam, nu, r))
        sign, dom = _reflect_to_dominant(x)
        if sign:
            out[tuple(a - b for a, b in zip(dom, r))] += sign * m
    result = {k: v for k, v in out.items() if v}
    if any(v < 0 for v in result.values()):
        raise ArithmeticError(f"negative multiplicity in Klimyk product {lam} x {mu}: {result}")
    return dict(sorted(result.items()))


def character_of(lam: Iterable[int], n: int) -> Counter:
    return Counter(freudenthal_multiplicities(lam, n))


def decompose_character(char: Mapping[Weight, int], n: int) -> dict[Label, int]:
    """Split a (Weyl-invariant) weight multiset into irreducible multiplicities.

    Repeatedly peels off the irreducible whose highest weight is the top
    dominant weight remaining.
    """
    check_n(n)
    rest = Counter({w: m for w, m in char.items() if m})
    out: dict[Label, int] = {}
    while rest:
        dom = [w for w in rest if is_dominant(w)]
        if not dom:
            raise ValueError("character has no dominant weights left; not Weyl invariant")
        top = max(dom, key=lambda w: (sum(w), w))
        m = rest[top]
        if m < 0:
            raise ValueError(f"negative multiplicity at {top}: not a character")
        out[top] = m
        for w, k in freudenthal_multiplicities(top, n).items():
            rest[w] -= m * k
            if not rest[w]:
                del rest[w]
    return dict(sorted(out.items()))


def exterior_power_character(char: Mapping[Weight, int], r: int) -> Counter:
    """Weight multiset of Lambda^r V from that of V (one basis vector per unit multiplicity)."""
    layers: list[Counter] = [Counter({tuple(0 for _ in next(iter(char), ())): 1})] + [Counter() for _ in range(r)]
    for w, m in char.items():
        for _ in range(m):
            for k in range(r, 0, -1):
                for u, c in layers[k - 1].items():
                    layers[k][tuple(a + b for a, b in zip(u, w))] += c
    return Counter({w: c for w, c in layers[r].items() if c})


def tensor_character(a: Mapping[Weight, int], b: Mapping[Weight, int]) -> Counter:
    out: Counter = Counter()
    for u, x in a.items():
        for v, y in b.items():
            out[tuple(s + t for s, t in zip(u, v))] += x * y
    return out


def decomposition_dim(dec: Mapping[Label, int], n: int) -> int:
    return sum(m * weyl_dim(lam, n) for lam, m in dec.items())


def format_label(lam: Label) -> str:
    """``V_{p,q}``, dropping trailing zeros (``V_{4}``, ``V_{0}``)."""
    parts = list(lam)
    while len(parts) > 1 and parts[-1] == 0:
        parts.pop()
    return "V_{" + ",".join(str(x) for x in parts) + "}"


def format_decomposition(dec: Mapping[Label, int]) -> str:
    if not dec:
        return "0"
    terms = []
    for lam in sorted(dec, key=lambda l: (len([x for x in l if x]) > 1, l)):
        m = dec[lam]
        terms.append(("" if m == 1 else f"{m} ") + format_label(lam))
    return " + ".join(terms)


def parse_label(text: str, n: int) -> Label:
    """Parse ``"3,1"``, ``"V_{3,1}"``, ``"(4)"`` into a normalized label."""
    t = text.strip().removeprefix("V").strip("_{}() ")
    parts = [int(x) for x in t.replace(" ", "").split(",") if x] if t else []
    return normalize_label(parts, n)
