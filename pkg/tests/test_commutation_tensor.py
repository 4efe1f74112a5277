import itertools

import numpy as np
import pytest

from commutant import (
    ArgumentError,
    DenseTensor,
    DimensionError,
    DomainError,
    Permutation,
    PreconditionError,
    SingularMatrixError,
    balance_unfold,
    build_commutation,
    build_ctensor,
    build_gct,
    build_mode_perm_tensor,
    check_nonneg_inverse,
    complete_right_product,
    ctensor_flatten,
    ctensor_power,
    gct_dense,
    gct_from_permutation,
    gct_identity,
    gct_inverse,
    gct_multiply,
    is_balanced_permutation,
    is_pair_symmetric,
    mode_perm_dense,
    mul_2m,
    mul_2m_on_m,
    permute_modes,
    rank1,
    sym_power,
    tensor_transpose,
)


class TestBuildCtensor:
    def test_3x2_has_exactly_six_ones(self):
        kt = build_ctensor(3, 2)
        assert kt.backing.shape == (2, 3, 3, 2)
        ones = {
            coords
            for coords in itertools.product(range(1, 3), range(1, 4), range(1, 4), range(1, 3))
            if kt.backing.entry(*coords) == 1.0
        }
        assert ones == {
            (1, 1, 1, 1),
            (2, 1, 1, 2),
            (1, 2, 2, 1),
            (2, 2, 2, 2),
            (1, 3, 3, 1),
            (2, 3, 3, 2),
        }
        assert kt.backing.values.sum() == 6.0

    def test_1x1(self):
        kt = build_ctensor(1, 1)
        assert kt.backing.shape == (1, 1, 1, 1)
        assert kt.backing.entry(1, 1, 1, 1) == 1.0

    def test_square_case_positions(self):
        kt = build_ctensor(2, 2)
        for i, j, k, l in itertools.product(range(1, 3), repeat=4):
            want = 1.0 if (j == k and i == l) else 0.0
            assert kt.backing.entry(i, j, k, l) == want

    def test_bad_sizes(self):
        with pytest.raises(ArgumentError):
            build_ctensor(0, 2)


class TestTensorTranspose:
    @pytest.mark.parametrize("m,n", list(itertools.product(range(1, 5), range(1, 5))))
    def test_transposes_everything(self, m, n):
        kt = build_ctensor(m, n)
        rng = np.random.default_rng(m * 10 + n)
        x = rng.standard_normal((m, n))
        assert np.array_equal(tensor_transpose(kt, x), x.T)

    def test_symmetric_fixed_point(self):
        kt = build_ctensor(3, 3)
        x = np.array([[1.0, 2.0, 3.0], [2.0, 5.0, 6.0], [3.0, 6.0, 9.0]])
        assert np.array_equal(tensor_transpose(kt, x), x)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            tensor_transpose(build_ctensor(3, 2), np.zeros((2, 3)))


@pytest.mark.parametrize("m,n", list(itertools.product(range(1, 5), range(1, 5))))
def test_flatten_pairing_reproduces_commutation_matrix(m, n):
    assert np.array_equal(
        ctensor_flatten(build_ctensor(m, n)), build_commutation(m, n).dense()
    )


class TestGct:
    def test_identity_generators(self):
        g = gct_identity(2, 2)
        dense = gct_dense(g)
        for i, j, k, l in itertools.product(range(2), repeat=4):
            want = 1.0 if (i, j) == (k, l) else 0.0
            assert dense.array[i, j, k, l] == want
        # the identity element of the order-2m product
        assert np.array_equal(balance_unfold(dense), np.eye(4))

    def test_entry_product_rule(self):
        rng = np.random.default_rng(40)
        gens = [rng.standard_normal((2, 2)) for _ in range(3)]
        dense = gct_dense(build_gct(gens)).array
        for idx in itertools.product(range(2), repeat=6):
            i, j = idx[:3], idx[3:]
            want = gens[0][i[0], j[0]] * gens[1][i[1], j[1]] * gens[2][i[2], j[2]]
            assert dense[idx] == pytest.approx(want, abs=1e-15)

    def test_single_mode_scalar(self):
        g = build_gct([[[3.0]]])
        assert gct_dense(g).array.reshape(-1).tolist() == [3.0]

    def test_permutation_case_is_balanced(self):
        pi = Permutation([2, 3, 1])
        g = gct_from_permutation(pi, 2)
        assert is_balanced_permutation(gct_dense(g))

    def test_generator_validation(self):
        with pytest.raises(DimensionError):
            build_gct([np.zeros((2, 3))])
        with pytest.raises(DimensionError):
            build_gct([np.eye(2), np.eye(3)])
        with pytest.raises(ArgumentError):
            build_gct([])


class TestGctMultiply:
    def test_structured_matches_dense_random(self):
        rng = np.random.default_rng(41)
        for m, n in [(1, 3), (2, 2), (2, 3), (3, 2)]:
            a = build_gct([rng.standard_normal((n, n)) for _ in range(m)])
            b = build_gct([rng.standard_normal((n, n)) for _ in range(m)])
            structured = gct_dense(gct_multiply(a, b))
            dense = mul_2m(gct_dense(a), gct_dense(b))
            assert np.allclose(structured.array, dense.array, atol=1e-9)

    def test_identity_neutral(self):
        g = gct_from_permutation(Permutation([2, 1, 3]), 2)
        e = gct_identity(2, 3)
        prod = gct_multiply(g, e)
        assert all(np.array_equal(x, y) for x, y in zip(prod.generators, g.generators))

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            gct_multiply(gct_identity(2, 2), gct_identity(2, 3))


class TestGctInverse:
    def test_exact_integer_case(self):
        g = build_gct([np.array([[2.0, 1.0], [1.0, 1.0]])] * 2)
        inv = gct_inverse(g)
        want = np.array([[1.0, -1.0], [-1.0, 2.0]])
        for gen in inv.generators:
            assert np.allclose(gen, want, atol=1e-12)

    def test_permutation_inverse(self):
        pi = Permutation([2, 3, 4, 1])
        g = gct_from_permutation(pi, 3)
        inv = gct_inverse(g)
        want = gct_from_permutation(pi.inverse(), 3)
        for a, b in zip(inv.generators, want.generators):
            assert np.allclose(a, b, atol=1e-12)
        # dense two-sided check
        e = gct_dense(gct_identity(3, 4)).array
        assert np.allclose(mul_2m(gct_dense(g), gct_dense(inv)).array, e, atol=1e-12)
        assert np.allclose(mul_2m(gct_dense(inv), gct_dense(g)).array, e, atol=1e-12)

    def test_singular_generator(self):
        with pytest.raises(SingularMatrixError):
            gct_inverse(build_gct([np.array([[1.0, 2.0], [2.0, 4.0]])]))


class TestGroupAxioms:
    def test_exhaustive_s3_two_modes(self):
        # the 6-element group on 2 modes over n=3: all 36 products
        perms = list(Permutation.all(3))
        assert len(perms) == 6
        for a in perms:
            for b in perms:
                prod = gct_multiply(gct_from_permutation(a, 2), gct_from_permutation(b, 2))
                want = gct_from_permutation(a.compose(b), 2)
                assert all(
                    np.array_equal(x, y)
                    for x, y in zip(prod.generators, want.generators)
                )
                # dense route agrees exactly
                dense = mul_2m(
                    gct_dense(gct_from_permutation(a, 2)),
                    gct_dense(gct_from_permutation(b, 2)),
                )
                assert np.array_equal(dense.array, gct_dense(want).array)
        # identity and inverses
        for a in perms:
            g = gct_from_permutation(a, 2)
            ginv = gct_inverse(g)
            e = gct_multiply(g, ginv)
            for gen in e.generators:
                assert np.allclose(gen, np.eye(3), atol=1e-12)


class TestCtensorPower:
    def test_square_tensor_squares_to_identity_element(self):
        for n in (2, 3):
            sq = ctensor_power(2, n)
            assert np.array_equal(balance_unfold(sq), np.eye(n * n))

    @pytest.mark.parametrize("n", [2, 3])
    def test_collapse_pattern(self, n):
        base = ctensor_power(1, n)
        square = ctensor_power(2, n)
        for exponent in range(1, 7):
            got = ctensor_power(exponent, n)
            want = base if exponent % 2 == 1 else square
            assert np.array_equal(got.array, want.array), f"exponent {exponent}"

    def test_power_matches_repeated_product(self):
        base = build_ctensor(2, 2).backing
        acc = base
        for exponent in range(2, 6):
            acc = mul_2m(acc, base)
            assert np.array_equal(ctensor_power(exponent, 2).array, acc.array)

    def test_bad_exponent(self):
        with pytest.raises(ArgumentError):
            ctensor_power(0, 2)


class TestModePermTensor:
    def test_identity_is_identity_element(self):
        t = build_mode_perm_tensor(Permutation.identity(2), 3)
        assert np.array_equal(balance_unfold(mode_perm_dense(t)), np.eye(9))

    def test_swap_acts_as_transpose(self):
        t = mode_perm_dense(build_mode_perm_tensor(Permutation([2, 1]), 3))
        rng = np.random.default_rng(50)
        x = rng.standard_normal((3, 3))
        assert np.array_equal(mul_2m_on_m(t, x).array, x.T)

    def test_one_nonzero_per_row_block(self):
        tau = Permutation([2, 3, 1])
        dense = mode_perm_dense(build_mode_perm_tensor(tau, 2))
        # exactly one 1 for each leading multi-index
        assert is_balanced_permutation(dense)
        ones = np.argwhere(dense.array == 1.0)
        assert len(ones) == 8
        for row in ones:
            i, j = row[:3], row[3:]
            assert all(j[k] == i[tau(k + 1) - 1] for k in range(3))

    @pytest.mark.parametrize("m,n", [(2, 2), (3, 2), (3, 3)])
    def test_shuffle_equals_contraction_all_tau(self, m, n):
        rng = np.random.default_rng(m * 13 + n)
        for tau in Permutation.all(m):
            acting = mode_perm_dense(build_mode_perm_tensor(tau, n))
            for _ in range(5):
                a = DenseTensor(rng.standard_normal((n,) * m))
                lhs = permute_modes(a, tau).array
                rhs = mul_2m_on_m(acting, a).array
                assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_compose_homomorphism(self):
        # acting tensors compose in the same order as the shuffles compose
        s, t = Permutation([2, 3, 1]), Permutation([2, 1, 3])
        ds = mode_perm_dense(build_mode_perm_tensor(s, 2))
        dt = mode_perm_dense(build_mode_perm_tensor(t, 2))
        dts = mode_perm_dense(build_mode_perm_tensor(t.compose(s), 2))
        assert np.array_equal(mul_2m(dt, ds).array, dts.array)


class TestCompleteRightProduct:
    def test_pushes_through_rank1(self):
        rng = np.random.default_rng(51)
        for m, n in [(2, 2), (3, 2), (3, 4)]:
            b = rng.standard_normal((n, n))
            x = rng.standard_normal(n)
            lhs = complete_right_product(sym_power(x, m), b).array
            rhs = sym_power(b @ x, m).array
            assert np.allclose(lhs, rhs, atol=1e-9)

    def test_general_rank1_factors(self):
        rng = np.random.default_rng(52)
        b = rng.standard_normal((3, 3))
        vs = [rng.standard_normal(3) for _ in range(3)]
        lhs = complete_right_product(rank1(vs), b).array
        rhs = rank1([b @ v for v in vs]).array
        assert np.allclose(lhs, rhs, atol=1e-9)

    def test_matches_gct_action(self):
        # applying one matrix per mode equals acting with the generator tensor
        rng = np.random.default_rng(53)
        b = rng.standard_normal((2, 2))
        a = DenseTensor(rng.standard_normal((2, 2, 2)))
        lhs = complete_right_product(a, b)
        rhs = mul_2m_on_m(gct_dense(build_gct([b, b, b])), a)
        assert np.allclose(lhs.array, rhs.array, atol=1e-12)


class TestPairSymmetry:
    def test_commutation_tensor_is_pair_symmetric(self):
        for n in (2, 3):
            assert is_pair_symmetric(build_ctensor(n, n).backing)
            assert is_pair_symmetric(gct_dense(gct_identity(2, n)))

    def test_perturbation_breaks_it(self):
        arr = np.array(build_ctensor(2, 2).backing.array)
        arr[0, 1, 0, 0] += 0.25
        assert not is_pair_symmetric(arr)

    def test_odd_order_rejected(self):
        with pytest.raises(DimensionError):
            is_pair_symmetric(np.zeros((2, 2, 2)))


class TestBalancedPermutation:
    def test_accepts_permutation_structures(self):
        assert is_balanced_permutation(gct_dense(gct_identity(2, 2)))
        assert is_balanced_permutation(build_ctensor(3, 3).backing)
        pi = Permutation([3, 1, 2])
        assert is_balanced_permutation(gct_dense(gct_from_permutation(pi, 2)))

    def test_rejects_non_permutations(self):
        assert not is_balanced_permutation(np.ones((2, 2, 2, 2)))
        assert not is_balanced_permutation(
            DenseTensor(0.5 * gct_dense(gct_identity(2, 2)).array)
        )


class TestCheckNonnegInverse:
    def test_scaled_identity_pair(self):
        ident = gct_dense(gct_identity(2, 2)).array
        witnesses = check_nonneg_inverse(2.0 * ident, 0.5 * ident)
        assert witnesses == [(i, i) for i in range(4)]

    def test_scaled_permutation_pair(self):
        pi = Permutation([2, 3, 1])
        fwd = gct_dense(gct_from_permutation(pi, 2)).array
        bwd = gct_dense(gct_from_permutation(pi.inverse(), 2)).array
        witnesses = check_nonneg_inverse(3.0 * fwd, bwd / 3.0)
        # one positive entry per row, and they follow the permutation action
        u = balance_unfold(DenseTensor(3.0 * fwd))
        assert len(witnesses) == 9
        for r, c in witnesses:
            assert u[r, c] > 0

    def test_negative_entries_rejected(self):
        ident = gct_dense(gct_identity(2, 2)).array
        with pytest.raises(DomainError):
            check_nonneg_inverse(-ident, ident)

    def test_non_inverse_pair_rejected(self):
        ident = gct_dense(gct_identity(2, 2)).array
        with pytest.raises(PreconditionError):
            check_nonneg_inverse(2.0 * ident, ident)

    def test_positive_non_permutation_pair_rejected(self):
        # dense positive tensors multiply to something far from the identity
        blob = np.ones((2, 2, 2, 2))
        with pytest.raises(PreconditionError):
            check_nonneg_inverse(blob, blob)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            check_nonneg_inverse(np.ones((2, 2, 2, 2)), np.ones((3, 3, 3, 3)))
