from collections import Counter

import pytest

from gkf.characters import character_of, decompose_character, exterior_power_character, tensor_character, weyl_dim
from gkf.cochains import Cochain, ComplexSlice, d_cochain, wedge_weight
from gkf.invariants import (
    CacheError,
    InvariantViolation,
    action_matrix,
    apply_action,
    check_invariant,
    has_cached_basis,
    highest_weight_vectors,
    invariant_basis,
    isotypic_report,
    load_invariant_basis,
    weight_subspace,
)
from gkf.linalg import SparseRationalMatrix, coords_in_span, kernel_basis
from gkf.partitions import CochainShape
from gkf.poisson import bracket, dual_weight, sp_generators

from tables import SLICES, parse

L2S3 = ComplexSlice(2, 2, 2)


def shaped(w, m, counts):
    return ComplexSlice(2, w, m, shapes=[CochainShape(3, counts)])


def slice_character_decomposition(s):
    total = Counter()
    for sh in s.shapes:
        c = Counter({(0,) * s.n: 1})
        for i, k in sh.as_map().items():
            c = tensor_character(c, exterior_power_character(character_of((i,), s.n), k))
        total.update(c)
    return decompose_character(total, s.n)


def test_cartan_action_is_diagonal():
    h1, h2 = sp_generators(2).cartan
    for h, comp in ((h1, 0), (h2, 1)):
        m = action_matrix(h, L2S3)
        assert all(r == c for r, c in m.entries)
        for i, w in enumerate(L2S3.basis):
            # the Cartan elements act by minus the weight, on monomials and duals alike
            assert m[i, i] == -wedge_weight(2, w)[comp]


def test_action_shifts_weight():
    for d in sp_generators(2).quadratics:
        shift = tuple(-x for x in dual_weight(d))  # weight of e_D
        m = action_matrix(d, L2S3)
        for (r, c) in m.entries:
            wr, wc = wedge_weight(2, L2S3.basis[r]), wedge_weight(2, L2S3.basis[c])
            assert tuple(a - b for a, b in zip(wr, wc)) == shift


def test_representation_property():
    quads = sp_generators(2).quadratics
    mats = {d: action_matrix(d, L2S3) for d in quads}
    for a in quads:
        for b in quads:
            lhs = mats[a] @ mats[b] - mats[b] @ mats[a]
            rhs = SparseRationalMatrix(L2S3.dim, L2S3.dim)
            for c, x in bracket(a, b):
                rhs = rhs - SparseRationalMatrix(L2S3.dim, L2S3.dim, {k: -x * v for k, v in mats[c].entries.items()})
            assert lhs == rhs, (a, b)


def test_representation_property_n1():
    s = ComplexSlice(1, 4, 2)
    quads = sp_generators(1).quadratics
    mats = {d: action_matrix(d, s) for d in quads}
    for a in quads:
        for b in quads:
            lhs = mats[a] @ mats[b] - mats[b] @ mats[a]
            entries = Counter()
            for c, x in bracket(a, b):
                for k, v in mats[c].entries.items():
                    entries[k] += x * v
            assert lhs == SparseRationalMatrix(s.dim, s.dim, {k: v for k, v in entries.items() if v})


def test_action_rejects_non_quadratic():
    with pytest.raises(ValueError):
        action_matrix((1, 0, 0, 2), L2S3)


def test_weight_subspaces():
    zero = weight_subspace(L2S3, (0, 0))
    assert len(zero) >= 6
    assert weight_subspace(L2S3, (7, 0)) == []
    spaces = Counter()
    for lam in {wedge_weight(2, w) for w in L2S3.basis}:
        spaces[lam] = len(weight_subspace(L2S3, lam))
    assert sum(spaces.values()) == L2S3.dim


def test_weight_zero_kernel_of_stacked_raising():
    from gkf.invariants import _raising_matrix

    m = _raising_matrix(L2S3, weight_subspace(L2S3, (0, 0)))
    assert len(kernel_basis(m)) == 1


def test_highest_weight_vectors():
    assert len(highest_weight_vectors(L2S3, (0, 0))) == 1
    assert len(highest_weight_vectors(ComplexSlice(2, 2, 1), (0, 0))) == 0
    mults = {lam: len(highest_weight_vectors(L2S3, lam)) for lam in [(0, 0), (1, 1), (2, 2), (3, 3), (4, 0), (5, 1), (2, 0), (3, 1)]}
    assert mults == {(0, 0): 1, (1, 1): 1, (2, 2): 1, (3, 3): 1, (4, 0): 1, (5, 1): 1, (2, 0): 0, (3, 1): 0}
    with pytest.raises(ValueError):
        highest_weight_vectors(L2S3, (0, 1))


def test_highest_weight_vectors_are_killed_by_raising():
    for lam in [(4, 0), (5, 1)]:
        for v in highest_weight_vectors(L2S3, lam):
            for e in sp_generators(2).raising:
                assert apply_action(e, v) == {}


@pytest.mark.parametrize("counts,expected", [((4,), 3), ((2, 1), 1)])
def test_invariant_counts_weight4(counts, expected):
    s = shaped(4, 4 if counts == (4,) else 3, counts)
    assert len(invariant_basis(s)) == expected


def test_invariants_killed_by_everything():
    s = ComplexSlice(2, 4, 4)
    basis = invariant_basis(s)
    g = sp_generators(2)
    for v in basis.vectors:
        for d in g.lowering + g.raising + g.quadratics:
            assert apply_action(d, v) == {}


def test_check_invariant_detects_failure():
    with pytest.raises(InvariantViolation):
        check_invariant(Cochain(2, {L2S3.basis[0]: 1}))


def test_min_gen_agreement_on_invariants():
    for w, m in [(2, 2), (4, 3), (4, 4), (6, 2), (6, 3)]:
        for v in invariant_basis(ComplexSlice(2, w, m)).vectors:
            assert d_cochain(v, min_gen=2) == d_cochain(v, min_gen=3)


def test_d_of_invariant_stays_invariant():
    src, dst = invariant_basis(ComplexSlice(2, 4, 3)), invariant_basis(ComplexSlice(2, 4, 4))
    a = src.vectors[0]
    da = d_cochain(a)
    check_invariant(da)
    coords = coords_in_span(dst.slice.to_vector(da), dst.as_vectors())
    assert coords is not None and any(coords)


def test_isotypic_report_l2s3():
    r = isotypic_report(L2S3)
    assert r.multiplicities == {(0, 0): 1, (1, 1): 1, (2, 2): 1, (3, 3): 1, (4, 0): 1, (5, 1): 1}
    assert r.total_dim == 190 == 1 + 5 + 14 + 30 + 35 + 105
    assert r.trivial() == 1


@pytest.mark.parametrize("key", [k for k in SLICES if k[0] == 4] + [(6, 2, None)])
def test_isotypic_report_tables(key):
    w, m, counts = key
    s = ComplexSlice(2, w, m) if counts is None else shaped(w, m, counts)
    r = isotypic_report(s)
    assert r.multiplicities == parse(SLICES[key])
    assert r.multiplicities == slice_character_decomposition(s)


def test_isotypic_report_matches_characters_n1():
    for m in range(1, 6):
        s = ComplexSlice(1, 6, m)
        assert isotypic_report(s).multiplicities == slice_character_decomposition(s)


def test_isotypic_dimension_identity():
    for w in (2, 4):
        for m in range(1, w + 1):
            s = ComplexSlice(2, w, m)
            r = isotypic_report(s)
            assert sum(k * weyl_dim(lam, 2) for lam, k in r.multiplicities.items()) == s.dim


def test_cache_round_trip(tmp_path):
    s = ComplexSlice(2, 4, 4)
    assert not has_cached_basis(s, tmp_path)
    fresh = invariant_basis(s, cache_dir=tmp_path)
    assert has_cached_basis(s, tmp_path)
    cached = load_invariant_basis(s, tmp_path)
    assert cached.vectors == fresh.vectors
    assert invariant_basis(s, cache_dir=tmp_path).vectors == fresh.vectors


def test_cache_corruption(tmp_path):
    s = ComplexSlice(2, 4, 4)
    invariant_basis(s, cache_dir=tmp_path)
    (path,) = tmp_path.iterdir()
    text = path.read_text()
    path.write_text(text.replace("version=", "version=x"))
    with pytest.raises(CacheError):
        load_invariant_basis(s, tmp_path)
    header, _, body = text.partition("\n")
    path.write_text(header + "\nnot a matrix\n")
    with pytest.raises(CacheError):
        load_invariant_basis(s, tmp_path)
