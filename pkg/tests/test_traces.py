from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coalg import (
    ColinearIdempotent,
    InvalidIdempotent,
    InvalidInput,
    LinearMap,
    NotIdempotent,
    Q,
    character_module,
    cohh0,
    colinear_character,
    comatrix_coalgebra,
    comparison_pairing,
    cotrace,
    cotrace_representative,
    divided_power_truncation,
    function_bialgebra,
    hattori_stallings,
    hh0,
    injective_retract,
    matrix_algebra,
    regular_module,
    symmetric_group,
    trivial_comodule,
    verify_character_multiplicativity,
    verify_character_triangle,
    verify_trace_square,
)
from coalg.corpus import build, corpus
from oracles import class_functions_dimension
from strategies import transported_coalgebras

half = Fraction(1, 2)


class TestHH0:
    def test_matrix_algebra_has_one_dimensional_hh0(self):
        q = hh0(matrix_algebra(2))
        assert q.dim == 1
        # e11 and e22 are both sent to the trace class, e12 to zero
        assert q.project((1, 0, 0, 0)) == q.project((0, 0, 0, 1)) != (0,)
        assert q.project((0, 1, 0, 0)) == (0,)

    def test_group_algebra_of_s3(self):
        assert hh0(build("group-s3-alg")).dim == 3

    def test_commutative_algebra_is_its_own_hh0(self):
        assert hh0(build("poly2")).dim == 3

    def test_projection_kills_commutators(self):
        a = build("group-s3-alg")
        q = hh0(a)
        for x in range(6):
            for y in range(6):
                ex, ey = [int(i == x) for i in range(6)], [int(i == y) for i in range(6)]
                diff = [u - v for u, v in zip(a.multiply(ex, ey), a.multiply(ey, ex))]
                assert not any(q.project(diff))

    def test_rejects_broken_algebra(self):
        with pytest.raises(InvalidInput):
            hh0(build("mutant-15-poly2"))


class TestCoHH0:
    @pytest.mark.parametrize("key", ["c2", "c3", "c4", "v4", "s3", "d4", "mult2"])
    def test_function_coalgebra_counts_classes(self, key):
        from coalg.corpus import group_tables

        t = group_tables()[key]
        assert cohh0(build(f"fun-{key}")).dim == class_functions_dimension(t.mul)

    def test_comatrix_spanned_by_the_diagonal_sum(self):
        sub = cohh0(comatrix_coalgebra(2))
        assert sub.dim == 1
        assert sub.inclusion.column(0) == (1, 0, 0, 1)

    def test_cocommutative_coalgebra_is_its_own_cohh0(self):
        assert cohh0(divided_power_truncation(3).coalg).dim == 4

    def test_group_coalgebra(self):
        assert cohh0(build("group-s3")).dim == 6


class TestHattoriStallings:
    def test_half_sum_in_c2(self):
        a = build("group-c2-alg")
        assert hattori_stallings(a, [[(half, half)]]) == (half, half)

    def test_identity_matrix(self):
        a = matrix_algebra(2)
        one = a.unit.column(0)
        zero = (0,) * 4
        cls = hattori_stallings(a, [[one, zero], [zero, one]])
        assert cls == tuple(2 * x for x in hattori_stallings(a, [[one]]))

    def test_matrix_unit(self):
        a = matrix_algebra(2)
        assert hattori_stallings(a, [[(1, 0, 0, 0)]]) == hattori_stallings(a, [[(0, 0, 0, 1)]])

    def test_not_idempotent(self):
        with pytest.raises(NotIdempotent):
            hattori_stallings(build("group-c2-alg"), [[(1, 1)]])


def _retract_with(m, blocks):
    """Split ``M`` through ``C^(+k)`` using copies of the coaction scaled by ``blocks``."""
    rho = m.coaction
    iota = None
    for s in blocks:
        piece = rho.scale(s)
        iota = piece if iota is None else iota.vstack(piece)
    return injective_retract(m, iota)


class TestCotrace:
    def test_identity_on_cofree(self):
        c = build("fun-s3")
        # eps itself: value on the cocommuting subspace
        assert cotrace_representative(c, ColinearIdempotent.identity(c, 1)) == c.counit.row(0)

    def test_additivity(self):
        c = build("fun-s3")
        e1 = injective_retract(build("fun-s3-std"))
        e2 = injective_retract(build("fun-s3-sign"))
        d = c.dim
        block = LinearMap.from_sparse(2 * d, 2 * d, [((i, j), x) for (i, j), x in e1.endo.nonzero()]
                                      + [((i + d, j + d), x) for (i, j), x in e2.endo.nonzero()], Q)
        both = ColinearIdempotent(2, block, c)
        total = cotrace(c, both)
        assert total == tuple(x + y for x, y in zip(cotrace(c, e1), cotrace(c, e2)))

    @pytest.mark.parametrize("blocks", [(1, 0), (0, 1), (1, 1), (2, -1, 3)])
    def test_independent_of_the_splitting(self, blocks):
        c, m = build("fun-s3"), build("fun-s3-std")
        e = _retract_with(m, blocks)
        assert e is not None and e.validate().ok
        assert cotrace(c, e) == cotrace(c, injective_retract(m))

    def test_invalid_idempotent(self):
        c = build("divpow2")
        with pytest.raises(InvalidIdempotent):
            cotrace(c, ColinearIdempotent(1, LinearMap.identity(3, Q).scale(2), c))

    @settings(max_examples=20)
    @given(transported_coalgebras(), st.integers(1, 3))
    def test_identity_on_cofree_sums(self, c, n):
        e = ColinearIdempotent.identity(c, n)
        one = cotrace(c, ColinearIdempotent.identity(c, 1))
        assert cotrace(c, e) == tuple(c.field(n * x) for x in one)
        assert verify_trace_square(c, e).ok

    def test_zero(self):
        c = build("comatrix2")
        assert cotrace(c, ColinearIdempotent.zero(c, 2)) == (0,)

    @pytest.mark.parametrize("name", sorted(n for n, e in corpus().items()
                                            if e.kind == "idempotent" and "matrix-idempotent" not in e.tags))
    def test_trace_square_on_corpus_idempotents(self, name):
        e = build(name)
        assert verify_trace_square(e.over, e).ok


class TestCharacters:
    def test_regular_c2(self):
        assert character_module(regular_module(build("group-c2-alg"))) == (2, 0)

    def test_trivial_comodule_is_the_unit(self):
        h = function_bialgebra(symmetric_group(3))
        assert colinear_character(trivial_comodule(h)) == h.alg.unit.column(0)

    def test_standard_representation_values(self):
        # coordinates of the colinear character are the trace of each group element
        chi = colinear_character(build("fun-s3-std"))
        assert sorted(chi) == [-1, -1, 0, 0, 0, 2]

    @pytest.mark.parametrize("name", ["fun-s3-std", "fun-s3-perm", "divpow2-nil-j3", "comatrix2-row"])
    def test_triangle(self, name):
        m = build(name)
        assert verify_character_triangle(m.over, m).ok

    def test_multiplicativity(self):
        h = function_bialgebra(symmetric_group(3))
        assert verify_character_multiplicativity(h, build("fun-s3-std"), build("fun-s3-perm")).ok

    def test_comparison_pairing_is_square_for_cosemisimple(self):
        p = comparison_pairing(build("fun-s3"))
        assert p.shape == (3, 3) and p.rank() == 3
