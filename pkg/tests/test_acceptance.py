"""End-to-end acceptance checks, one group per criterion.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion
is printed in the terminal summary.
"""

import random
import time

import pytest

from gkf.characters import tensor_decompose_klimyk, weyl_dim
from gkf.cochains import Cochain, ComplexSlice, d_cochain, d_matrix, wedge_grading_weight
from gkf.driver import betti, build_relative_complex
from gkf.invariants import apply_action, invariant_basis, isotypic_report
from gkf.linalg import rank
from gkf.littlewood import tensor_decompose_stable
from gkf.partitions import CochainShape
from gkf.poisson import bracket, bracket_poly, dim_homogeneous, monomials, sp_generators

from tables import SLICES, TENSOR_PRODUCTS, parse

C1 = pytest.mark.criterion(1, "weight 2: dims (0,0,1), Betti (0,0,1), chi 1")
C2 = pytest.mark.criterion(2, "weight 4: dims (0,0,0,1,3), rank D3 = 1, Betti (0,0,0,0,2), chi 2")
C3 = pytest.mark.criterion(3, "weight 6: dims (0,0,1,1,0,4,4), rank D2 = 1, rank D5 = 4, Betti 0, chi 0")
C4 = pytest.mark.criterion(4, "irreducible decompositions and trivial multiplicities")
C5 = pytest.mark.criterion(5, "L^2 S3 x L^2 S4: dim 113050 = sum of mult * weyl_dim")
C6 = pytest.mark.criterion(6, "listed tensor products by LR + modification and by Klimyk")
C7 = pytest.mark.criterion(7, "property suites on the weight 2, 4, 6 slices")
C8 = pytest.mark.criterion(8, "n = 1: dim S3 = 4 and C^6|_6 = 0")


# -- 1-3: cohomology tables ----------------------------------------------------


@C1
def test_weight2_table():
    t = time.perf_counter()
    r = betti(build_relative_complex(2, 2))
    assert time.perf_counter() - t < 10
    assert r.dims == (0, 0, 1)
    assert r.betti == (0, 0, 1)
    assert r.euler_from_dims == r.euler_from_betti == 1


@C2
def test_weight4_table():
    t = time.perf_counter()
    rc = build_relative_complex(2, 4)
    r = betti(rc)
    assert time.perf_counter() - t < 300
    assert r.dims == (0, 0, 0, 1, 3)
    assert rc.rank_out(3) == 1
    assert r.betti == (0, 0, 0, 0, 2)
    assert r.euler_from_dims == r.euler_from_betti == 2


@C3
def test_weight6_light_degrees_fast():
    t = time.perf_counter()
    rc = build_relative_complex(2, 6, heavy=False)
    assert time.perf_counter() - t < 600
    assert [rc.dim(m) for m in range(4)] == [0, 0, 1, 1]
    assert rc.rank_out(2) == 1


@C3
def test_weight6_table(weight6_complex):
    rc = weight6_complex
    r = betti(rc)
    assert r.dims == (0, 0, 1, 1, 0, 4, 4)
    assert rc.rank_out(2) == 1
    assert rc.rank_out(5) == 4
    assert rc.matrices[5].shape == (4, 4)
    assert r.betti == (0,) * 7
    assert r.euler_from_dims == r.euler_from_betti == 0


# -- 4-5: decompositions -------------------------------------------------------


@C4
def test_l2s3_decomposition():
    r = isotypic_report(ComplexSlice(2, 2, 2))
    assert r.multiplicities == {(0, 0): 1, (1, 1): 1, (2, 2): 1, (3, 3): 1, (4, 0): 1, (5, 1): 1}


@C4
def test_trivial_multiplicities(weight6_complex):
    assert len(invariant_basis(ComplexSlice(2, 4, 4))) == 3
    assert [weight6_complex.dim(m) for m in (2, 3, 4, 6)] == [1, 1, 0, 4]
    assert weight6_complex.bases[6].slice.shapes == (CochainShape(3, (6,)),)


@C5
def test_113050():
    s = ComplexSlice(2, 6, 4, shapes=[CochainShape(3, (2, 2))])
    assert s.dim == 190 * 595 == 113050
    r = isotypic_report(s)
    assert sum(k * weyl_dim(lam, 2) for lam, k in r.multiplicities.items()) == 113050
    assert r.multiplicities == parse(SLICES[(6, 4, (2, 2))])


# -- 6: tensor products ----------------------------------------------------------


@C6
@pytest.mark.parametrize("pair", sorted(TENSOR_PRODUCTS))
def test_tensor_product(pair):
    lam, mu = pair
    expected = parse(TENSOR_PRODUCTS[pair])
    assert tensor_decompose_stable(lam, mu) == expected
    assert tensor_decompose_klimyk(lam, mu, 2) == expected


# -- 7: properties -----------------------------------------------------------------


@C7
@pytest.mark.parametrize("n", [1, 2])
def test_d_squared_weights_2_4(n):
    for w in (2, 4):
        for m in range(w - 1):
            a = d_matrix(ComplexSlice(n, w, m), ComplexSlice(n, w, m + 1))
            b = d_matrix(ComplexSlice(n, w, m + 1), ComplexSlice(n, w, m + 2))
            assert (b @ a).is_zero()


@C7
def test_d_squared_weight6():
    for m in (0, 1):
        a = d_matrix(ComplexSlice(2, 6, m), ComplexSlice(2, 6, m + 1))
        b = d_matrix(ComplexSlice(2, 6, m + 1), ComplexSlice(2, 6, m + 2))
        assert (b @ a).is_zero()
    # the larger pairs: d(d(v)) for a random integer combination v of the whole basis
    for m in (2, 3, 4):
        s = ComplexSlice(2, 6, m)
        rng = random.Random(m)
        v = Cochain(2, {w: rng.randint(1, 2**30) for w in s.basis})
        dv = d_cochain(v)
        assert all(wedge_grading_weight(2, w) == 6 and len(w) == m + 1 for w in dv)
        assert d_cochain(dv) == {}


@C7
@pytest.mark.parametrize("w", [2, 4, 6])
def test_equivariance_min_gen_2(w):
    quads = sp_generators(2).quadratics
    rng = random.Random(w)
    for m in range(1, w + 1):
        s = ComplexSlice(2, w, m, min_gen=2)
        sample = s.basis if len(s.basis) <= 25 else rng.sample(s.basis, 25)
        for d in quads:
            for b in sample:
                c = Cochain(2, {b: 1})
                assert apply_action(d, d_cochain(c, 2)) == d_cochain(apply_action(d, c), 2)


@C7
def test_min_gen_agreement(weight6_complex):
    for rc in (build_relative_complex(2, 2), build_relative_complex(2, 4), weight6_complex):
        for basis in rc.bases:
            for v in basis.vectors:
                assert d_cochain(v, min_gen=2) == d_cochain(v, min_gen=3)


@C7
def test_jacobi_sample():
    rng = random.Random(5)
    pool = [a for d in range(6) for a in monomials(2, d)]
    for _ in range(150):
        f, g, h = ({rng.choice(pool): 1, rng.choice(pool): 2} for _ in range(3))
        total = {}
        for x, y, z in ((f, g, h), (g, h, f), (h, f, g)):
            for c, v in bracket_poly(x, bracket_poly(y, z)).items():
                total[c] = total.get(c, 0) + v
        assert not any(total.values())


@C7
@pytest.mark.parametrize("w", [2, 4, 6])
def test_representation_property(w):
    quads = sp_generators(2).quadratics
    rng = random.Random(w)
    for m in range(1, w + 1):
        s = ComplexSlice(2, w, m)
        if not s.dim:
            continue
        sample = s.basis if len(s.basis) <= 8 else rng.sample(s.basis, 8)
        for b in sample:
            c = Cochain(2, {b: 1})
            for x in quads:
                for y in quads:
                    lhs = apply_action(x, apply_action(y, c)) - apply_action(y, apply_action(x, c))
                    rhs = Cochain(2)
                    for z, k in bracket(x, y):
                        rhs = rhs + apply_action(z, c).scaled(k)
                    assert lhs == rhs


@C7
def test_restricted_complex(weight6_complex):
    for rc in (build_relative_complex(2, 4), weight6_complex):
        for a, b in zip(rc.matrices, rc.matrices[1:]):
            if a.n_cols and b.n_rows:
                assert (b @ a).is_zero()
        assert rank(rc.matrices[-1]) <= rc.dim(len(rc.matrices))


# -- 8: n = 1 -----------------------------------------------------------------------


@C8
def test_n1_sanity():
    assert dim_homogeneous(1, 3) == ComplexSlice(1, 1, 1).dim == 4
    assert ComplexSlice(1, 6, 6).dim == 0
    assert betti(build_relative_complex(1, 6)).dims[6] == 0
