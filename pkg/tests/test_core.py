from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from racklab.core import (
    MagmaTable,
    MalformedTable,
    NotSelfDistributive,
    ParameterViolation,
    RowNotBijective,
    build_alexander,
    build_core,
    build_dihedral,
    build_parity_shift,
    build_partition_rack,
    build_permutation_rack,
    build_st_rack,
    build_trivial,
    compose,
    conjugation_identity_check,
    invert,
    inverse_translation,
    is_homomorphism,
    rack_from_json,
    translation,
    validate_rack,
)
from racklab.corpus import cyclic_group, klein_four, symmetric_group_3
from racklab.quandles import corresponding_quandle


def brute_is_rack(rows):
    n = len(rows)
    bijective = all(sorted(row) == list(range(n)) for row in rows)
    distributive = all(
        rows[a][rows[b][c]] == rows[rows[a][b]][rows[a][c]]
        for a, b, c in product(range(n), repeat=3)
    )
    return bijective and distributive


class TestValidate:
    def test_trivial_three(self):
        r = validate_rack([[0, 1, 2]] * 3)
        assert r.is_quandle
        assert r.n == 3

    def test_dihedral_five_from_formula(self):
        r = validate_rack([[(2 * a - b) % 5 for b in range(5)] for a in range(5)])
        assert r.is_quandle

    def test_constant_row(self):
        with pytest.raises(RowNotBijective) as exc:
            validate_rack([[0, 0, 0], [0, 1, 2], [0, 1, 2]])
        assert exc.value.a == 0

    def test_not_self_distributive_reports_witness(self):
        rows = [[1, 0, 2], [0, 1, 2], [0, 1, 2]]
        assert not brute_is_rack(rows)
        with pytest.raises(NotSelfDistributive) as exc:
            validate_rack(rows)
        a, b, c = exc.value.witness
        assert rows[a][rows[b][c]] != rows[rows[a][b]][rows[a][c]]

    @pytest.mark.parametrize("rows", [[[0, 1], [0]], [[0, 3], [1, 0]], [["x"]]])
    def test_malformed(self, rows):
        with pytest.raises(MalformedTable):
            validate_rack(rows)

    def test_inverse_table(self):
        r = build_st_rack(20, 2, 9)
        for a in range(r.n):
            for b in range(r.n):
                assert r.inverse_table[a][r.table[a][b]] == b
                assert r.ldiv(a, r.op(a, b)) == b

    def test_all_row_permutation_tables_of_order_three(self):
        # every table with permutation rows, checked against brute force
        perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
        racks = 0
        for rows in product(perms, repeat=3):
            expected = brute_is_rack(rows)
            try:
                validate_rack(rows)
                got = True
            except NotSelfDistributive:
                got = False
            assert got == expected
            racks += got
        assert racks == 13

    def test_magma_array_roundtrip(self):
        m = MagmaTable.from_rows([[0, 1], [1, 0]])
        assert m.array().tolist() == [[0, 1], [1, 0]]


class TestTranslation:
    def test_dihedral_three(self):
        assert translation(build_dihedral(3), 0) == (0, 2, 1)

    def test_trivial_is_identity(self):
        r = build_trivial(4)
        assert all(translation(r, a) == (0, 1, 2, 3) for a in range(4))

    def test_st_rack_shift(self):
        r = build_st_rack(9, 3, 1)
        assert translation(r, 1) == tuple((b + 3) % 9 for b in range(9))

    def test_inverse(self):
        r = build_st_rack(20, 2, 9)
        for a in range(20):
            assert compose(translation(r, a), inverse_translation(r, a)) == tuple(range(20))
            assert inverse_translation(r, a) == invert(translation(r, a))

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            translation(build_trivial(2), 2)

    def test_quandle_translation_fixes_element(self):
        r = build_alexander(7, 3)
        assert all(translation(r, a)[a] == a for a in range(7))


class TestConjugationIdentity:
    @pytest.mark.parametrize("r", [build_dihedral(5), build_st_rack(20, 2, 9), build_parity_shift(8),
                                   build_core(symmetric_group_3())])
    def test_holds(self, r):
        assert conjugation_identity_check(r).holds

    def test_corpus(self, corpus):
        assert all(conjugation_identity_check(r).holds for _, r in corpus)


class TestConstructors:
    def test_st_rack_9_3_1(self):
        r = build_st_rack(9, 3, 1)
        assert not r.is_quandle
        assert r.op(2, 5) == (6 + 5) % 9

    def test_st_rack_20_2_9(self):
        r = build_st_rack(20, 2, 9)
        assert not r.is_quandle

    def test_st_rack_bad_params(self):
        with pytest.raises(ParameterViolation, match="s\\^2"):
            build_st_rack(9, 3, 2)

    def test_st_rack_needs_unit(self):
        with pytest.raises(ParameterViolation, match="gcd"):
            build_st_rack(9, 0, 3)

    def test_parity_shift(self):
        r = build_parity_shift(8)
        assert not r.is_quandle
        assert translation(r, 5) == (0, 3, 2, 5, 4, 7, 6, 1)

    def test_parity_shift_odd(self):
        with pytest.raises(ParameterViolation):
            build_parity_shift(7)

    def test_alexander_needs_unit(self):
        with pytest.raises(ParameterViolation):
            build_alexander(8, 2)

    def test_empty_rejected(self):
        with pytest.raises(ParameterViolation):
            build_trivial(0)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_alexander_equals_st_with_complementary_s(self, n):
        for t in range(n):
            from math import gcd
            if gcd(t, n) == 1:
                assert build_alexander(n, t).table == build_st_rack(n, (1 - t) % n, t).table

    def test_dihedral_is_st_rack_2_minus_1(self):
        for n in range(1, 12):
            assert build_dihedral(n).table == build_st_rack(n, 2, -1).table

    def test_core_of_cyclic_is_dihedral(self):
        for n in range(2, 9):
            assert build_core(cyclic_group(n)).table == build_dihedral(n).table

    def test_core_of_s3_and_v4(self):
        assert build_core(symmetric_group_3()).is_quandle
        # exponent two: a b^-1 a = b
        assert build_core(klein_four()).table == build_trivial(4).table

    def test_core_rejects_nongroup(self):
        with pytest.raises(ParameterViolation):
            build_core([[0, 0], [0, 1]])

    def test_permutation_rack(self):
        r = build_permutation_rack([1, 2, 0, 3])
        assert not r.is_quandle
        assert all(row == (1, 2, 0, 3) for row in r.table)

    def test_permutation_rack_rejects_nonperm(self):
        with pytest.raises(ParameterViolation):
            build_permutation_rack([0, 0, 1])

    def test_partition_rack(self):
        r = build_partition_rack([[0, 1, 2], [3, 4, 5]], [[1, 2, 0, 4, 5, 3], [2, 0, 1, 5, 3, 4]])
        assert r.table[0] == (1, 2, 0, 4, 5, 3)
        assert r.table[4] == (2, 0, 1, 5, 3, 4)

    def test_partition_rack_must_preserve_blocks(self):
        with pytest.raises(ParameterViolation, match="preserve"):
            build_partition_rack([[0, 1], [2, 3]], [[2, 1, 0, 3], [0, 1, 2, 3]])

    def test_partition_rack_must_commute(self):
        with pytest.raises(ParameterViolation, match="commute"):
            build_partition_rack([[0, 1, 2], [3]], [[1, 0, 2, 3], [0, 2, 1, 3]])


class TestJson:
    def test_table(self):
        r = rack_from_json({"n": 2, "table": [[0, 1], [0, 1]]})
        assert r.is_quandle

    def test_family(self):
        assert rack_from_json({"family": "st_rack", "n": 20, "s": 2, "t": 9}).table == build_st_rack(20, 2, 9).table
        assert rack_from_json({"family": "permutation", "perm": [1, 0]}).table == ((1, 0), (1, 0))

    def test_n_mismatch(self):
        with pytest.raises(MalformedTable):
            rack_from_json({"n": 3, "table": [[0, 1], [0, 1]]})

    def test_unknown_family(self):
        with pytest.raises(MalformedTable):
            rack_from_json({"family": "nope"})

    def test_roundtrip(self):
        r = build_dihedral(6)
        assert rack_from_json(r.to_json()) == r


class TestHomomorphism:
    def test_identity(self, corpus):
        for _, r in corpus[:50]:
            assert is_homomorphism(list(range(r.n)), r, r)

    def test_projection_to_corresponding_quandle(self):
        r = build_st_rack(9, 3, 1)
        cq = corresponding_quandle(r)
        assert is_homomorphism(cq.projection, r, cq.quandle)

    def test_swap_on_dihedral_three(self):
        # every permutation of the three reflections is an automorphism
        r = build_dihedral(3)
        assert is_homomorphism([1, 0, 2], r, r)

    def test_swap_on_dihedral_four(self):
        # phi(0|>1) = phi(3) = 3 but phi(0)|>phi(1) = 1|>0 = 2
        r = build_dihedral(4)
        assert not is_homomorphism([1, 0, 2, 3], r, r)

    def test_non_homomorphism_dihedral_three(self):
        r = build_dihedral(3)
        assert not is_homomorphism([0, 0, 1], r, r)

    def test_range_violation(self):
        with pytest.raises(ValueError):
            is_homomorphism([0, 5], build_trivial(2), build_trivial(2))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 24), st.data())
def test_st_constructor_output_is_rack(n, data):
    from math import gcd
    units = [t for t in range(n) if gcd(t, n) == 1]
    t = data.draw(st.sampled_from(units))
    valid_s = [s for s in range(n) if (s * s - s * (1 - t)) % n == 0]
    s = data.draw(st.sampled_from(valid_s))
    r = build_st_rack(n, s, t)
    assert brute_is_rack(r.table)
    # not a quandle exactly when s is not the Alexander value 1 - t
    assert r.is_quandle == (s == (1 - t) % n)
