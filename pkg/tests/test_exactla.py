from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coalg import FieldSpec, LinearMap, Q, kernel_basis, kronecker, prime_field, rref, solve, swap_map
from oracles import kernel_by_enumeration, sympy_rank, sympy_rref
from strategies import fields, matrices, matrix_pairs_same_field, scalars

F2 = prime_field(2)


def col(values, field=Q):
    return LinearMap.from_columns([values], field)


class TestFieldSpec:
    def test_rejects_composite_and_oversized_moduli(self):
        for bad in (0, 1, 4, 91, 2**31 + 11):
            with pytest.raises(ValueError):
                prime_field(bad)
        assert prime_field(2**31 - 1).modulus == 2**31 - 1

    def test_rationals_take_no_modulus(self):
        with pytest.raises(ValueError):
            FieldSpec("rationals", 3)
        with pytest.raises(ValueError):
            FieldSpec("reals")

    @pytest.mark.parametrize("text", ["2/4", "-0", "07", "1/1", "3/-4", "+1", " 1", "1.5", "", "0/3"])
    def test_rejects_noncanonical_rationals(self, text):
        with pytest.raises(ValueError):
            Q.parse(text)

    @pytest.mark.parametrize("text", ["7", "-1", "05", "5"])
    def test_rejects_bad_residues(self, text):
        with pytest.raises(ValueError):
            prime_field(5).parse(text)

    @given(st.data())
    def test_format_parse_roundtrip(self, data):
        F = data.draw(fields)
        x = F(data.draw(scalars(F)))
        assert F.parse(F.format(x)) == x
        assert F.contains(F.parse(F.format(x)))

    def test_rationals_in_lowest_terms_with_positive_denominator(self):
        x = Q(Fraction(6, -4))
        assert (x.numerator, x.denominator) == (-3, 2)
        assert Q.format(x) == "-3/2"

    def test_fraction_reduction_into_prime_field(self):
        assert prime_field(5)(Fraction(1, 2)) == 3
        with pytest.raises(ZeroDivisionError):
            prime_field(5)(Fraction(1, 5))

    def test_tags(self):
        assert Q.tag() == "q" and FieldSpec.from_tag("q") == Q
        assert FieldSpec.from_tag("fp:7") == prime_field(7)
        with pytest.raises(ValueError):
            FieldSpec.from_tag("fp:8")


class TestLinearMap:
    def test_shape_checks(self):
        with pytest.raises(ValueError):
            LinearMap(2, 2, [1, 2, 3], Q)
        with pytest.raises(ValueError):
            LinearMap.identity(2, Q) @ LinearMap.identity(3, Q)
        with pytest.raises(ValueError):
            LinearMap.identity(2, Q) @ LinearMap.identity(2, F2)

    def test_immutable(self):
        m = LinearMap.identity(2, Q)
        with pytest.raises(AttributeError):
            m.rows = 3

    def test_entries_row_major(self):
        m = LinearMap.from_rows([[1, 2, 3], [4, 5, 6]], Q)
        assert m.entries == tuple(Fraction(x) for x in range(1, 7))
        assert m[1, 0] == 4 and m.column(2) == (3, 6)

    def test_sparse_constructor_accumulates(self):
        m = LinearMap.from_sparse(2, 2, [((0, 1), 1), ((0, 1), 2), ((1, 0), 3), ((1, 0), -3)], Q)
        assert m.to_rows() == ((0, 3), (0, 0))

    def test_reduction_mod_p(self):
        m = LinearMap.from_rows([[3, -1]], prime_field(3))
        assert m.to_rows() == ((0, 2),)
        assert m.is_zero() is False


class TestRref:
    def test_identity(self):
        red, piv, rank = rref(LinearMap.identity(3, Q))
        assert red == LinearMap.identity(3, Q) and piv == [0, 1, 2] and rank == 3

    def test_zero(self):
        red, piv, rank = rref(LinearMap.zeros(2, 4, Q))
        assert red.is_zero() and piv == [] and rank == 0

    def test_hand_example(self):
        m = LinearMap.from_rows([[2, 4], [1, 2]], Q)
        red, piv, rank = rref(m)
        # sympy agrees, and so does the rank of the transpose
        assert red.to_rows() == ((1, 2), (0, 0))
        assert [list(r) for r in red.to_rows()] == sympy_rref(m.to_rows())[0]
        assert rank == 1 == m.T.rank()

    @given(matrices(Q))
    def test_matches_sympy_over_q(self, m):
        red, piv, rank = rref(m)
        if m.rows and m.cols:
            expected, expected_piv = sympy_rref(m.to_rows())
            assert [list(r) for r in red.to_rows()] == expected
            assert piv == expected_piv
        assert rank == len(piv) and piv == sorted(set(piv))

    @given(matrices())
    def test_rank_of_transpose(self, m):
        assert m.rank() == m.T.rank()

    @given(matrices(Q))
    def test_rank_against_sympy(self, m):
        if m.rows and m.cols:
            assert m.rank() == sympy_rank(m.to_rows())


class TestKernel:
    def test_identity_has_trivial_kernel(self):
        assert kernel_basis(LinearMap.identity(4, Q)) == []

    def test_zero_map_kernel_is_standard_basis(self):
        assert kernel_basis(LinearMap.zeros(2, 3, Q)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def test_f2_example_by_enumeration(self):
        m = LinearMap.from_rows([[1, 1]], F2)
        nonzero = [v for v in kernel_by_enumeration([[1, 1]], 2, 2) if any(v)]
        assert kernel_basis(m) == nonzero == [(1, 1)]

    @given(matrices())
    def test_kernel_vectors_are_killed_and_count(self, m):
        basis = kernel_basis(m)
        assert len(basis) == m.cols - m.rank()
        for v in basis:
            assert not any(m.apply(v))

    @given(matrices(prime_field(2), max_dim=3) | matrices(prime_field(3), max_dim=3))
    def test_kernel_size_by_enumeration(self, m):
        p = m.field.modulus
        assert len(kernel_by_enumeration(m.to_rows(), m.cols, p)) == p ** len(kernel_basis(m))

    @given(matrices())
    def test_canonical_shape(self, m):
        # unit in its own free position, zero in the other free positions
        _, piv, _ = rref(m)
        free = [j for j in range(m.cols) if j not in piv]
        for v, f in zip(kernel_basis(m), free):
            assert v[f] == m.field.one
            assert all(not v[g] for g in free if g != f)


class TestSolve:
    def test_identity(self):
        b = col([1, 2])
        assert solve(LinearMap.identity(2, Q), b) == b

    def test_inconsistent(self):
        assert solve(LinearMap.zeros(2, 2, Q), col([1, 0])) is None

    def test_particular_solution_sets_free_variables_to_zero(self):
        x = solve(LinearMap.from_rows([[1, 2], [2, 4]], Q), col([3, 6]))
        assert x == col([3, 0])

    @given(st.data())
    def test_solution_satisfies_system(self, data):
        F = data.draw(fields)
        m = data.draw(matrices(F, max_dim=4))
        x = data.draw(matrices(F, rows=m.cols, cols=2))
        target = m @ x
        sol = solve(m, target)
        assert sol is not None and m @ sol == target


class TestKronecker:
    def test_identities(self):
        assert kronecker(LinearMap.identity(2, Q), LinearMap.identity(3, Q)) == LinearMap.identity(6, Q)

    def test_zero_factor(self):
        a = LinearMap.from_rows([[1, 2], [3, 4]], Q)
        assert kronecker(a, LinearMap.zeros(2, 3, Q)).is_zero()

    def test_scalars(self):
        assert kronecker(LinearMap.from_rows([[2]], Q), LinearMap.from_rows([[3]], Q)).to_rows() == ((6,),)

    def test_flat_index_convention(self):
        a = LinearMap.from_rows([[1], [2]], Q)
        b = LinearMap.from_rows([[1], [10], [100]], Q)
        # (i, j) sits at i * 3 + j
        assert kronecker(a, b).column(0) == (1, 10, 100, 2, 20, 200)

    @given(st.data())
    def test_mixed_product(self, data):
        F = data.draw(fields)
        a, b = data.draw(matrices(F, max_dim=3)), data.draw(matrices(F, max_dim=3))
        x, y = data.draw(matrices(F, rows=a.cols, max_dim=2)), data.draw(matrices(F, rows=b.cols, max_dim=2))
        assert kronecker(a, b) @ kronecker(x, y) == kronecker(a @ x, b @ y)

    @given(st.data())
    def test_associative(self, data):
        F = data.draw(fields)
        a, b, c = (data.draw(matrices(F, max_dim=2)) for _ in range(3))
        assert kronecker(kronecker(a, b), c) == kronecker(a, kronecker(b, c))


class TestSwap:
    def test_trivial_factor(self):
        assert swap_map(1, 5, Q) == LinearMap.identity(5, Q)

    def test_involution(self):
        s = swap_map(2, 2, Q)
        assert s @ s == LinearMap.identity(4, Q)

    def test_rectangular_inverse(self):
        assert swap_map(2, 3, Q) @ swap_map(3, 2, Q) == LinearMap.identity(6, Q)

    def test_index_map(self):
        s = swap_map(2, 3, Q)
        for i in range(2):
            for j in range(3):
                assert s[j * 2 + i, i * 3 + j] == 1

    @given(matrix_pairs_same_field())
    def test_natural(self, uv):
        u, v = uv
        F = u.field
        assert swap_map(u.rows, v.rows, F) @ kronecker(u, v) == kronecker(v, u) @ swap_map(u.cols, v.cols, F)
