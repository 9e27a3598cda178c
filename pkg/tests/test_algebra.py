from itertools import combinations, permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phaseweb.algebra import (
    Algebra,
    Multivector,
    Signature,
    Z3,
    apply_action,
    blade_product,
    geometric_product,
    gp,
    grade_project,
    inner_outer,
    mv_add,
    reverse,
)
from phaseweb.errors import GradeError, NotABlade, UniverseMismatch

from conftest import all_blades, multivectors, naive_word_product


class TestZ3:
    def test_tables(self):
        assert Z3(1) + Z3(2) == 0
        assert Z3(1) + Z3(1) == Z3(-1)
        assert Z3(2) * Z3(2) == 1
        assert -Z3(1) == Z3(2)
        assert -Z3(0) == Z3(0)

    def test_display(self):
        assert str(Z3(2)) == "-1"
        assert int(Z3(5)) == -1

    def test_immutable(self):
        with pytest.raises(AttributeError):
            Z3(1).value = 2


class TestSignature:
    def test_uniform_both_ways(self):
        assert Signature.uniform(3, 1).squares == (1, 1, 1)
        assert Signature.uniform(3, -1).squares == (2, 2, 2)
        assert Signature.uniform(2, -1).label() == "-1"

    def test_zero_square_rejected(self):
        with pytest.raises(ValueError):
            Signature((1, 0))


class TestAdd:
    def test_tilde_cancels(self):
        a = Algebra(1)
        s1 = a.s(1)
        assert s1 + (-s1) == 0
        assert s1 + s1.scale(2) == a.zero

    def test_zero_identity(self):
        s1, s2 = Algebra(2).basis()
        x = s1 + s2
        assert mv_add(x, Multivector.zero(2)) == x

    def test_double_is_minus(self):
        s1 = Algebra(1).s(1)
        assert (s1 + s1).coeff((1,)) == 2
        assert s1 + s1 == -s1

    def test_universe_mismatch(self):
        with pytest.raises(UniverseMismatch):
            Multivector.basis(2, 1) + Multivector.basis(3, 1)

    @given(multivectors(4), multivectors(4), multivectors(4))
    def test_group_laws(self, x, y, z):
        assert x + y == y + x
        assert (x + y) + z == x + (y + z)
        assert x + x + x == Multivector.zero(4)


class TestBladeProduct:
    @pytest.mark.parametrize("square", [1, -1])
    def test_matches_word_reduction(self, square):
        n = 4
        sig = Signature.uniform(n, square)
        squares = {i: square for i in range(1, n + 1)}
        blades = all_blades(n)
        for a, b in product(blades, repeat=2):
            blade, c = blade_product(a, b, sig)
            want_blade, want_sign = naive_word_product(a + b, squares)
            assert blade == want_blade
            assert c == want_sign % 3

    def test_mixed_signature_matches_word_reduction(self):
        sig = Signature((1, -1, 1, -1))
        squares = {1: 1, 2: -1, 3: 1, 4: -1}
        for a, b in product(all_blades(4), repeat=2):
            want_blade, want_sign = naive_word_product(a + b, squares)
            assert blade_product(a, b, sig) == (want_blade, want_sign % 3)


class TestGeometricProduct:
    def test_anticommute_example(self):
        alg = Algebra(2)
        s1, s2 = alg.basis()
        assert alg.gp(s2, s1) == -alg.s(1, 2)

    def test_bivector_square(self):
        alg = Algebra(2, 1)
        b = alg.s(1, 2)
        assert alg.gp(b, b) == alg.scalar(-1)

    def test_rotation_by_bivector(self):
        alg = Algebra(2, 1)
        s1, s2 = alg.basis()
        assert alg.gp(s1 + s2, alg.s(1, 2)) == -s1 + s2

    def test_scalar_identity(self):
        alg = Algebra(3)
        x = alg.s(1) + alg.s(2, 3)
        assert alg.gp(alg.scalar(1), x) == x

    @pytest.mark.parametrize("n", range(2, 7))
    @pytest.mark.parametrize("square", [1, -1])
    def test_anticommutativity_exhaustive(self, n, square):
        basis = Algebra(n, square).basis()
        for i, j in combinations(range(n), 2):
            a, b = basis[i], basis[j]
            assert geometric_product(a, b, square) == -geometric_product(b, a, square)

    @pytest.mark.parametrize("square", [1, -1])
    def test_bivector_squares_minus_one(self, square):
        n = 5
        for i, j in combinations(range(1, n + 1), 2):
            b = Multivector.blade(n, (i, j), square)
            assert geometric_product(b, b, square) == Multivector.scalar(n, -1)

    @settings(max_examples=60)
    @given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), multivectors(n), multivectors(n), multivectors(n))),
           st.sampled_from([1, -1]))
    def test_associative(self, data, square):
        n, a, b, c = data
        assert gp(gp(a, b, sig=square), c, sig=square) == gp(a, gp(b, c, sig=square), sig=square)

    @given(multivectors(3), multivectors(3), multivectors(3))
    def test_distributive(self, a, b, c):
        assert geometric_product(a, b + c, 1) == geometric_product(a, b, 1) + geometric_product(a, c, 1)

    def test_ordered_blade_constructor(self):
        assert Multivector.blade(3, (3, 1), 1) == -Multivector.blade(3, (1, 3), 1)
        assert Multivector.blade(2, (1, 1), -1) == Multivector.scalar(2, -1)


class TestInnerOuter:
    def test_orthogonal_vectors(self):
        alg = Algebra(2)
        s1, s2 = alg.basis()
        assert alg.inner_outer(s1, s2) == (alg.zero, alg.s(1, 2))

    def test_contraction(self):
        alg = Algebra(1, 1)
        s1 = alg.s(1)
        assert alg.inner_outer(s1, s1) == (alg.scalar(1), alg.zero)

    def test_vector_with_bivector(self):
        alg = Algebra(3, 1)
        inner, outer = alg.inner_outer(alg.s(1), alg.s(2, 3))
        assert inner == alg.zero
        assert outer == alg.s(1, 2, 3)

    @pytest.mark.parametrize("square", [1, -1])
    def test_sum_is_product_for_vector_and_blade(self, square):
        n = 4
        for i in range(1, n + 1):
            v = Multivector.basis(n, i)
            for blade in all_blades(n):
                B = Multivector(n, {blade: 1})
                inner, outer = inner_outer(v, B, square)
                assert inner + outer == geometric_product(v, B, square)

    def test_outer_antisymmetric_on_vectors(self):
        n = 4
        vs = Algebra(n).basis()
        for a, b in product(vs, repeat=2):
            assert inner_outer(a, b, 1)[1] == -inner_outer(b, a, 1)[1]


class TestReverse:
    def test_examples(self):
        alg = Algebra(3)
        assert reverse(alg.s(1, 2)) == -alg.s(1, 2)
        assert reverse(alg.s(1)) == alg.s(1)
        assert reverse(alg.s(1, 2, 3)) == -alg.s(1, 2, 3)

    @pytest.mark.parametrize("square", [1, -1])
    def test_reverse_of_word_matches_reversed_product(self, square):
        n = 4
        for perm in permutations(range(1, n + 1), 3):
            fwd = Multivector.blade(n, perm, square)
            back = Multivector.blade(n, tuple(reversed(perm)), square)
            assert reverse(fwd) == back

    @given(multivectors(4))
    def test_involution(self, x):
        assert reverse(reverse(x)) == x


class TestApplyAction:
    def test_half_turn(self):
        alg = Algebra(2, 1)
        s1, s2 = alg.basis()
        assert alg.act(alg.s(1, 2), s1 + s2) == -s1 + -s2

    def test_fixes_own_plane_element(self):
        alg = Algebra(2, 1)
        s1, s2 = alg.basis()
        b = alg.s(1, 2)
        assert alg.act(b, b + s1 + s2) == b - s1 - s2

    @pytest.mark.parametrize("square", [1, -1])
    def test_zero_state(self, square):
        alg = Algebra(2, square)
        assert alg.act(alg.s(1, 2), alg.zero) == alg.zero

    def test_all_pairs_negate(self):
        n = 5
        for i, j in combinations(range(1, n + 1), 2):
            a, b = Multivector.basis(n, i), Multivector.basis(n, j)
            ab = geometric_product(a, b, 1)
            assert apply_action(ab, a + b, 1) == -(a + b)

    def test_rejects_non_blade(self):
        alg = Algebra(3)
        with pytest.raises(NotABlade):
            alg.act(alg.s(1, 2) + alg.s(2, 3), alg.s(1))
        with pytest.raises(NotABlade):
            alg.act(alg.s(1), alg.s(2))


class TestGradeProject:
    def test_picks_grade(self):
        alg = Algebra(2)
        x = alg.scalar(1) + alg.s(1) + alg.s(1, 2)
        assert grade_project(x, 1) == alg.s(1)

    def test_empty_grade(self):
        alg = Algebra(3)
        assert grade_project(alg.s(1, 2, 3), 2) == alg.zero

    @given(multivectors(4))
    def test_partition(self, x):
        total = Multivector.zero(4)
        for g in range(5):
            total = total + grade_project(x, g)
        assert total == x

    def test_out_of_range(self):
        with pytest.raises(GradeError):
            grade_project(Multivector.zero(2), 3)


class TestMultivectorValue:
    def test_equality_and_hash(self):
        a = Multivector(3, {(1, 2): 1, (3,): 2})
        b = Multivector(3, [((3,), 2), ((1, 2), 1)])
        assert a == b and hash(a) == hash(b)

    def test_zero_coefficients_not_stored(self):
        a = Multivector(2, [((1,), 1), ((1,), 2)])
        assert len(a) == 0

    def test_noncanonical_blade_rejected(self):
        with pytest.raises(ValueError):
            Multivector(3, {(2, 1): 1})

    def test_immutable(self):
        with pytest.raises(AttributeError):
            Multivector.zero(2).n = 3
