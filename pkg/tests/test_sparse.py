"""exactla: rank/kernel/image/solve against independent oracles."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from koszul.fields import GF, QQ
from koszul.sparse import SparseMatrix, decompose, rank_kernel_image, solve


def dense_rank_oracle(rows, field):
    """Plain dense Gaussian elimination, written independently of sparse.py."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if not field.is_zero(rows[r][col]):
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, v) for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not field.is_zero(rows[r][col]):
                c = rows[r][col]
                rows[r] = [field.sub(a, field.mul(c, b))
                           for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def random_matrix(rng, field, m, n, density=0.5, span=5):
    entries = {}
    for r in range(m):
        for c in range(n):
            if rng.random() < density:
                v = rng.randint(-span, span)
                if v:
                    entries[(r, c)] = field.of(v)
    return SparseMatrix(m, n, field, entries)


def test_empty_matrix():
    M = SparseMatrix(0, 0, GF(5))
    r, ker, im, _ = rank_kernel_image(M)
    assert r == 0 and ker == [] and im == []


def test_identity_over_f5():
    M = SparseMatrix.identity(3, GF(5))
    r, ker, im, _ = rank_kernel_image(M)
    assert r == 3
    assert ker == []
    assert len(im) == 3


def test_random_rank_matches_dense_oracle_over_q():
    rng = random.Random(7)
    for _ in range(25):
        M = random_matrix(rng, QQ, 6, 4)
        assert decompose(M).rank == dense_rank_oracle(M.to_dense(), QQ)


def test_random_rank_matches_dense_oracle_over_fp():
    rng = random.Random(11)
    f = GF(7)
    for _ in range(25):
        M = random_matrix(rng, f, 5, 7)
        assert decompose(M).rank == dense_rank_oracle(M.to_dense(), f)


def test_solve_identity_returns_rhs():
    f = GF(5)
    M = SparseMatrix.identity(4, f)
    b = [f.of(v) for v in (1, 4, 0, 3)]
    assert solve(M, b) == b


def test_solve_zero_matrix_inconsistent():
    f = QQ
    M = SparseMatrix(3, 2, f)
    assert solve(M, [f.of(1), f.zero, f.zero]) is None
    assert solve(M, [f.zero] * 3) == [f.zero] * 2


def test_solve_random_consistent_system_exact_residual():
    rng = random.Random(3)
    f = GF(7)
    for _ in range(20):
        M = random_matrix(rng, f, 6, 5)
        x0 = [f.of(rng.randint(0, 6)) for _ in range(5)]
        b = M.mul_vec(x0)
        x = solve(M, b)
        assert x is not None
        assert M.mul_vec(x) == b


def test_kernel_vectors_annihilated_and_image_solvable():
    rng = random.Random(19)
    for field in (QQ, GF(13)):
        for _ in range(10):
            M = random_matrix(rng, field, 5, 6)
            r, ker, im, dec = rank_kernel_image(M)
            assert r + len(ker) == M.cols
            zero = [field.zero] * M.rows
            for v in ker:
                assert M.mul_vec(v) == zero
            for col in im:
                assert dec.solve(col) is not None


def test_decomposition_supports_repeated_solves():
    rng = random.Random(23)
    f = QQ
    M = random_matrix(rng, f, 6, 6, density=0.4)
    dec = decompose(M)
    for _ in range(5):
        x0 = [f.of(rng.randint(-3, 3)) for _ in range(6)]
        b = M.mul_vec(x0)
        x = dec.solve(b)
        assert M.mul_vec(x) == b


def test_determinism_identical_inputs_identical_bases():
    rng = random.Random(31)
    M1 = random_matrix(rng, QQ, 7, 7, density=0.3)
    M2 = SparseMatrix(7, 7, QQ, dict(M1.entries))
    d1, d2 = decompose(M1), decompose(M2)
    assert d1.kernel_basis() == d2.kernel_basis()
    assert d1.image_basis() == d2.image_basis()
    assert d1.pivot_cols() == d2.pivot_cols()


def test_dense_and_sparse_paths_agree_on_rref():
    # density above/below the fallback threshold must not change the answer
    rng = random.Random(37)
    for density in (0.15, 0.8):
        M = random_matrix(rng, QQ, 6, 5, density=density)
        dec = decompose(M)
        assert dec.rank == dense_rank_oracle(M.to_dense(), QQ)
        for v in dec.kernel_basis():
            assert M.mul_vec(v) == [QQ.zero] * M.rows


def test_fp_q_rank_agreement_with_snf_oracle():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form

    rng = random.Random(41)
    p = 32003
    fp = GF(p)
    for _ in range(15):
        dense = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(4)]
        sm = sympy.Matrix(dense)
        snf = smith_normal_form(sm, domain=sympy.ZZ)
        divisors = [snf[i, i] for i in range(min(snf.shape)) if snf[i, i] != 0]
        if any(d % p == 0 for d in divisors):
            continue  # p-torsion: ranks may legitimately differ
        Mq = SparseMatrix.from_rows(QQ, [[Fraction(v) for v in row] for row in dense])
        Mp = SparseMatrix.from_rows(fp, dense)
        assert decompose(Mq).rank == decompose(Mp).rank == sm.rank()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3),
                min_size=1, max_size=5))
def test_rank_nullity_property(rows):
    M = SparseMatrix.from_rows(QQ, [[Fraction(v) for v in r] for r in rows])
    dec = decompose(M)
    assert dec.rank + len(dec.kernel_basis()) == M.cols
    assert dec.rank == dense_rank_oracle(M.to_dense(), QQ)
