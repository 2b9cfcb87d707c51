import pytest
from hypothesis import given, strategies as st

from coalg import (
    ColinearIdempotent,
    Comodule,
    InvalidInput,
    LinearMap,
    NotABialgebra,
    NotRational,
    Q,
    SideMismatch,
    check_comodule,
    check_module,
    cofree_comodule,
    colinear_maps,
    comodule_to_module,
    cotensor,
    cyclic_group,
    direct_sum,
    divided_power_truncation,
    dual_comodule,
    find_isomorphism,
    function_bialgebra,
    injective_retract,
    is_colinear,
    kronecker,
    module_maps,
    module_to_comodule,
    nilpotent_comodule,
    prime_field,
    regular_comodule,
    regular_module,
    regular_left_comodule,
    symmetric_group,
    tensor_comodules,
    tensor_modules,
    trivial_comodule,
    trivial_module,
    zero_comodule,
)
from coalg.corpus import build, corpus
from strategies import matrices

F2 = prime_field(2)


def strictly_upper(field, n):
    return matrices(field, rows=n, cols=n).map(
        lambda m: LinearMap.from_rows([[m[i, j] if j > i else 0 for j in range(n)] for i in range(n)], field))


@st.composite
def nilpotent_comodules(draw, max_dim=4):
    field = draw(st.sampled_from([Q, F2, prime_field(3)]))
    n = draw(st.integers(1, max_dim))
    phi = draw(strictly_upper(field, n))
    return nilpotent_comodule(phi, n - 1 + draw(st.integers(0, 1)))


COMODULE_NAMES = sorted(n for n, e in corpus().items() if e.kind == "comodule")


class TestChecks:
    def test_regular_comodule_of_divided_powers(self):
        rep = check_comodule(regular_comodule(divided_power_truncation(2).coalg))
        assert rep.ok and [c.name for c in rep.checks] == ["coassociativity", "counit"]

    def test_shifted_coaction_fails_counit(self):
        # v -> v (x) X[1] on the degree-1 divided powers
        c = divided_power_truncation(1).coalg
        bad = Comodule(LinearMap.from_columns([[0, 1]], Q), c)
        assert {x.name for x in check_comodule(bad).failures()} == {"counit", "coassociativity"}

    def test_jordan_block_comodule(self):
        m = build("divpow1-nil-j2")
        assert m.dim == 2 and check_comodule(m).ok

    def test_trivial_structures_pass(self):
        h = function_bialgebra(symmetric_group(3))
        assert check_comodule(trivial_comodule(h)).ok and check_module(trivial_module(h)).ok

    def test_left_regular(self):
        assert check_comodule(regular_left_comodule(build("fun-s3"))).ok

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            Comodule(LinearMap.zeros(5, 2, Q), build("divpow2"))

    @pytest.mark.parametrize("name", COMODULE_NAMES)
    def test_corpus(self, name):
        assert check_comodule(build(name)).ok


class TestModuleDictionary:
    @pytest.mark.parametrize("name", COMODULE_NAMES)
    def test_round_trip(self, name):
        m = build(name)
        if m.side != "right":
            pytest.skip("left comodule")
        mod = comodule_to_module(m)
        assert check_module(mod).ok
        assert module_to_comodule(mod, m.over) == m

    def test_module_over_wrong_algebra_rejected(self):
        mod = comodule_to_module(build("divpow2-reg"))
        with pytest.raises(InvalidInput):
            module_to_comodule(mod, build("fun-s3"))

    def test_non_rational_rejection_path(self):
        # a valid module over the dual algebra always comes back rational in finite dimension
        mod = comodule_to_module(build("fun-s3-std"))
        assert not isinstance(module_to_comodule(mod, build("fun-s3")), NotRational)

    def test_dual_comodule_is_a_right_module(self):
        mod = dual_comodule(build("fun-s3-std"))
        assert mod.side == "right" and check_module(mod).ok

    def test_left_comodule_refused(self):
        with pytest.raises(SideMismatch):
            comodule_to_module(regular_left_comodule(build("divpow2")))

    @given(nilpotent_comodules(), st.data())
    def test_colinear_iff_module_linear(self, m, data):
        n = nilpotent_comodule(data.draw(strictly_upper(m.field, 2)), m.over.dim - 1) \
            if m.over.dim >= 2 else m
        f = data.draw(matrices(m.field, rows=n.dim, cols=m.dim))
        M, N = comodule_to_module(m), comodule_to_module(n)
        linear = N.action @ kronecker(LinearMap.identity(m.over.dim, m.field), f) == f @ M.action
        assert is_colinear(f, m, n) == linear

    @given(nilpotent_comodules())
    def test_hom_spaces_agree(self, m):
        cm = colinear_maps(m, m)
        mm = module_maps(comodule_to_module(m), comodule_to_module(m))
        assert len(cm) == len(mm)
        assert all(is_colinear(f, m, m) for f in mm)


class TestHom:
    @pytest.mark.parametrize("name", ["divpow2", "fun-s3", "comatrix2", "group-c3"])
    def test_endomorphisms_of_regular_comodule(self, name):
        c = build(name)
        assert len(colinear_maps(regular_comodule(c), regular_comodule(c))) == c.dim

    def test_sign_and_trivial_not_isomorphic(self):
        assert find_isomorphism(build("fun-s3-sign"), build("fun-s3-triv")) is None
        assert colinear_maps(build("fun-s3-sign"), build("fun-s3-triv")) == []

    def test_isomorphism_found_for_conjugated_jordan_block(self):
        phi = LinearMap.from_rows([[0, 1], [0, 0]], Q)
        P = LinearMap.from_rows([[1, 2], [3, 7]], Q)
        Pinv = LinearMap.from_rows([[7, -2], [-3, 1]], Q)
        a, b = nilpotent_comodule(phi, 1), nilpotent_comodule(P @ phi @ Pinv, 1)
        f = find_isomorphism(a, b)
        assert f is not None and f.rank() == 2 and is_colinear(f, a, b)

    def test_non_isomorphic_jordan_types(self):
        a = nilpotent_comodule(LinearMap.from_rows([[0, 1, 0], [0, 0, 0], [0, 0, 0]], Q), 2)
        b = nilpotent_comodule(LinearMap.zeros(3, 3, Q), 2)
        assert find_isomorphism(a, b) is None

    # the F_p search is exhaustive over End(M), so keep End(M) small
    @given(nilpotent_comodules(max_dim=3))
    def test_self_isomorphism(self, m):
        f = find_isomorphism(m, m)
        assert f is not None and f.rank() == m.dim


class TestCotensor:
    def test_cofree_unit(self):
        c = build("divpow2")
        ct = cotensor(regular_comodule(c), regular_left_comodule(c))
        assert ct.dim == c.dim

    def test_function_coalgebra_of_s3(self):
        c = build("fun-s3")
        assert cotensor(regular_comodule(c), regular_left_comodule(c)).dim == 6

    def test_inclusion_lands_in_equalizer(self):
        c = build("comatrix2")
        m, n = regular_comodule(c), regular_left_comodule(c)
        ct = cotensor(m, n)
        I_M, I_N = LinearMap.identity(m.dim, Q), LinearMap.identity(n.dim, Q)
        lhs = kronecker(m.coaction, I_N) @ ct.inclusion
        assert lhs == kronecker(I_M, n.coaction) @ ct.inclusion
        assert ct.inclusion.rank() == ct.dim

    def test_sides_enforced(self):
        c = build("divpow2")
        with pytest.raises(SideMismatch):
            cotensor(regular_comodule(c), regular_comodule(c))

    def test_cocommutative_cotensor_carries_a_comodule(self):
        c = build("divpow2")
        ct = cotensor(build("divpow2-nil-j3"), regular_left_comodule(c))
        assert ct.comodule is not None and find_isomorphism(ct.comodule, build("divpow2-nil-j3"))


class TestInjectives:
    def test_cofree_is_identity(self):
        c = build("fun-s3")
        e = injective_retract(regular_comodule(c))
        assert e == ColinearIdempotent.identity(c, 1)
        e2 = injective_retract(cofree_comodule(c, 2))
        assert e2.n == 2 and e2.endo == LinearMap.identity(12, Q)

    def test_trivial_over_divided_powers_is_not_injective(self):
        h = divided_power_truncation(1)
        assert injective_retract(trivial_comodule(h)) is None

    def test_semisimple_comodules_are_injective(self):
        for name in ("fun-s3-std", "fun-s3-sign", "fun-s3-perm", "fun-c2-sign", "comatrix2-row"):
            m = build(name)
            e = injective_retract(m)
            assert e is not None and e.validate().ok
            assert e.endo.rank() == m.dim
            assert find_isomorphism(e.image(), m) is not None

    def test_zero_comodule(self):
        e = injective_retract(zero_comodule(build("divpow2")))
        assert e is not None and e.endo.rank() == 0

    def test_non_mono_embedding_rejected(self):
        m = build("fun-s3-std")
        with pytest.raises(ValueError):
            injective_retract(m, LinearMap.zeros(6, 2, Q))

    def test_direct_sum_of_injectives(self):
        m = direct_sum(build("fun-s3-std"), build("fun-s3-sign"))
        assert m.dim == 3 and check_comodule(m).ok and injective_retract(m).validate().ok


class TestMonoidal:
    def test_sign_squared_is_trivial(self):
        h = function_bialgebra(cyclic_group(2))
        s = build("fun-c2-sign")
        assert find_isomorphism(tensor_comodules(s, s, h), trivial_comodule(h)) is not None

    def test_unit_laws(self):
        h = function_bialgebra(symmetric_group(3))
        v = build("fun-s3-std")
        assert find_isomorphism(tensor_comodules(trivial_comodule(h), v, h), v) is not None
        assert find_isomorphism(tensor_comodules(v, trivial_comodule(h), h), v) is not None

    def test_std_times_sign_is_std(self):
        h = function_bialgebra(symmetric_group(3))
        v, s = build("fun-s3-std"), build("fun-s3-sign")
        assert find_isomorphism(tensor_comodules(v, s, h), v) is not None

    def test_associator_is_identity_on_vectors(self):
        h = function_bialgebra(symmetric_group(3))
        a, b, c = build("fun-s3-sign"), build("fun-s3-std"), build("fun-s3-perm")
        left = tensor_comodules(tensor_comodules(a, b, h), c, h)
        right = tensor_comodules(a, tensor_comodules(b, c, h), h)
        assert left == right

    def test_tensor_modules(self):
        h = build("group-s3-bialg")
        m = tensor_modules(regular_module(h.alg), trivial_module(h), h)
        assert m.dim == 6 and check_module(m).ok

    def test_requires_a_bialgebra(self):
        h = divided_power_truncation(2)
        m = regular_comodule(h.coalg)
        with pytest.raises(NotABialgebra):
            tensor_comodules(m, m, h)
