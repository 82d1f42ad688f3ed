"""Bigraded spaces, Koszul signs, shifts, duals, tensor, homology."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from koszul.bigraded import (
    Bidegree,
    BigradedSpace,
    GradedMap,
    adams_shift_map,
    adams_shift_space,
    complex_homology,
    desuspend_space,
    graded_dual_space,
    homology,
    identity_map,
    koszul_sign,
    suspend_map,
    suspend_space,
    tensor_differential,
    tensor_map,
    tensor_space,
    verify_splitting,
)
from koszul.fields import GF, QQ
from koszul.sparse import SparseMatrix


def test_koszul_sign_examples():
    assert koszul_sign((0, 5), (0, 7)) == 1       # Adams grading ignored
    assert koszul_sign((1, 0), (1, 0)) == -1      # odd-odd swap
    assert koszul_sign((2, 3), (3, 1)) == 1


@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(-8, 8),
       st.integers(-8, 8))
def test_koszul_sign_symmetric_and_parity_multiplicative(i, s, j, t):
    assert koszul_sign((i, s), (j, t)) == koszul_sign((j, t), (i, s))
    assert koszul_sign((i, s), (j, t)) == (-1) ** (i * j)
    # multiplicative in each argument's coh parity
    assert (koszul_sign((i, s), (j, t)) * koszul_sign((i, s), (j + 1, t))
            == koszul_sign((i, s), (2 * j + 1, t)))


def _space(field, dims):
    basis = {d: [f"e{d[0]},{d[1]};{k}" for k in range(n)] for d, n in dims.items()}
    return BigradedSpace(field, basis)


def test_suspend_shifts_first_grading_down():
    V = _space(QQ, {(1, 0): 1})
    SV = suspend_space(V)
    assert SV.dims_table() == {Bidegree(0, 0): 1}


def test_suspend_round_trip_with_differential():
    f = QQ
    V = _space(f, {(0, 1): 2, (1, 1): 2})
    d = GradedMap.from_entries(V, V, (1, 0), [
        ((0, 1), "e0,1;0", "e1,1;1", f.one),
        ((0, 1), "e0,1;1", "e1,1;0", f.of(-2)),
    ])
    SV = suspend_space(V)
    assert desuspend_space(SV) == V
    sd = suspend_map(d)
    # d_SV(sv) = -s d(v)
    assert sd.block((-1, 1)).entries == d.block((0, 1)).neg().entries if hasattr(
        d.block((0, 1)), "neg") else True
    back = suspend_map(suspend_map(d))  # S twice then compare after unshift
    v = [f.one, f.of(3)]
    assert sd.apply((-1, 1), v) == [f.neg(x) for x in d.apply((0, 1), v)]
    assert back.apply((-2, 1), v) == d.apply((0, 1), v)


def test_adams_shift_no_sign():
    f = QQ
    V = _space(f, {(0, 1): 1, (1, 1): 1, (0, 2): 1})
    d = GradedMap.from_entries(V, V, (1, 0), [((0, 1), "e0,1;0", "e1,1;0", f.one)])
    sv = adams_shift_space(V)
    assert sv.dims_table() == {Bidegree(0, 0): 1, Bidegree(1, 0): 1, Bidegree(0, 1): 1}
    sd = adams_shift_map(d)
    assert sd.apply((0, 0), [f.one]) == [f.one]


def test_graded_dual_of_point_and_dims():
    V = _space(QQ, {(0, 0): 1})
    assert graded_dual_space(V).dims_table() == {Bidegree(0, 0): 1}
    W = _space(QQ, {(1, -1): 2})
    assert graded_dual_space(W).dims_table() == {Bidegree(-1, 1): 2}


def _random_map(rng, V, W, degree):
    f = V.field
    entries = []
    for d in V.bidegrees():
        td = Bidegree(*d) + Bidegree(*degree)
        for a in V.labels(d):
            for b in W.labels(td):
                if rng.random() < 0.5:
                    v = rng.randint(-3, 3)
                    if v:
                        entries.append((d, a, b, f.of(v)))
    return GradedMap.from_entries(V, W, degree, entries)


def test_double_dual_identity_on_random_space_and_maps():
    rng = random.Random(5)
    V = _space(QQ, {(0, 1): 2, (1, 2): 1, (-1, 3): 2})
    W = _space(QQ, {(1, 1): 2, (2, 2): 2, (0, 3): 1})
    assert graded_dual_space(graded_dual_space(V)) == V
    for _ in range(5):
        fmap = _random_map(rng, V, W, (1, 0))
        assert fmap.dual().dual() == fmap


def test_dual_reverses_composition():
    rng = random.Random(9)
    U = _space(QQ, {(0, 1): 2, (1, 2): 2})
    V = _space(QQ, {(1, 1): 2, (2, 2): 2})
    W = _space(QQ, {(3, 1): 2, (4, 2): 2})
    for _ in range(5):
        fmap = _random_map(rng, U, V, (1, 0))
        gmap = _random_map(rng, V, W, (2, 0))
        assert gmap.compose(fmap).dual() == fmap.dual().compose(gmap.dual())


def test_homology_zero_differential_is_identity():
    V = _space(QQ, {(0, 1): 2, (1, 1): 1})
    z = GradedMap.zero(V, V, (1, 0))
    hd = complex_homology(V, z)
    assert hd.dims_table() == V.dims_table()
    for d in V.bidegrees():
        for k in range(V.dim(d)):
            e = V.zero_vec(d)
            e[k] = QQ.one
            assert hd.include(d, hd.project(d, e)) == e


def test_homology_of_isomorphism_vanishes():
    V = _space(QQ, {(0, 0): 1, (1, 0): 1})
    d = GradedMap.from_entries(V, V, (1, 0), [((0, 0), "e0,0;0", "e1,0;0", QQ.one)])
    hd = complex_homology(V, d)
    assert hd.dims_table() == {}
    assert verify_splitting(hd, d)


def test_homology_of_exterior_bar_slices():
    # bar complex of Λ(x), deg x = (0,1): all differentials vanish, so the
    # homology in (-m, m) is 1-dimensional for m = 0..3
    V = _space(QQ, {(-m, m): 1 for m in range(4)})
    z = GradedMap.zero(V, V, (1, 0))
    hd = complex_homology(V, z)
    assert hd.dims_table() == {Bidegree(-m, m): 1 for m in range(4)}


def test_homology_dims_independent_of_basis_order():
    f = QQ
    rng = random.Random(17)
    labels = ["a", "b", "c"]
    for _ in range(6):
        perm = labels[:]
        rng.shuffle(perm)
        V = BigradedSpace(f, {(0, 1): perm, (1, 1): ["u", "v"]})
        d = GradedMap.from_entries(V, V, (1, 0), [
            ((0, 1), "a", "u", f.one),
            ((0, 1), "b", "u", f.of(2)),
            ((0, 1), "b", "v", f.one),
        ])
        hd = complex_homology(V, d)
        assert hd.dims_table() == {Bidegree(0, 1): 1}
        assert verify_splitting(hd, d)


def test_splitting_contract_on_random_two_step_complex():
    f = GF(7)
    rng = random.Random(23)
    for _ in range(5):
        V = _space(f, {(0, 1): 3, (1, 1): 3, (2, 1): 2})
        d1 = _random_map(rng, V, V, (1, 0))
        # force d^2 = 0 by zeroing the composition via kernel projection:
        # instead build d with image inside the kernel of a second map by
        # construction: take d = e∘q with q: V0->V1 random, e edge immaterial.
        # Simplest valid differential: route through a fixed middle map.
        h = GradedMap.from_entries(V, V, (1, 0), [
            ((0, 1), V.labels((0, 1))[0], V.labels((1, 1))[0], f.one),
            ((0, 1), V.labels((0, 1))[1], V.labels((1, 1))[0], f.of(rng.randint(1, 6))),
        ])
        hd = complex_homology(V, h)
        assert verify_splitting(hd, h)


def test_tensor_of_spaces_and_unit():
    k = _space(QQ, {(0, 0): 1})
    V = _space(QQ, {(1, 1): 2, (0, 2): 1})
    T = tensor_space(k, V)
    assert sorted(T.dims_table().values()) == sorted(V.dims_table().values())
    assert set(T.dims_table()) == set(V.dims_table())


def test_tensor_map_sign_rule():
    # (1⊗d)(m⊗n) = (-1)^{deg1 m} m ⊗ dn: check the sign for deg1 m = 1
    f = QQ
    M = _space(f, {(1, 1): 1})
    N = _space(f, {(0, 1): 1, (1, 1): 1})
    dN = GradedMap.from_entries(N, N, (1, 0), [((0, 1), "e0,1;0", "e1,1;0", f.one)])
    t = tensor_map(identity_map(M), dN)
    src = Bidegree(1, 2)
    out = t.apply(src, [f.one])
    assert out == [f.of(-1)]


def test_tensor_differential_squares_to_zero():
    f = GF(5)
    V = _space(f, {(0, 1): 2, (1, 1): 2})
    dV = GradedMap.from_entries(V, V, (1, 0), [
        ((0, 1), "e0,1;0", "e1,1;1", f.one)])
    W = _space(f, {(0, 2): 2, (1, 2): 1})
    dW = GradedMap.from_entries(W, W, (1, 0), [
        ((0, 2), "e0,2;0", "e1,2;0", f.of(3))])
    assert dV.compose(dV).is_zero() and dW.compose(dW).is_zero()
    dT = tensor_differential(V, dV, W, dW)
    assert dT.compose(dT).is_zero()
