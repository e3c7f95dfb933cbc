from itertools import product

import pytest
from hypothesis import given

from polarities import bits
from polarities.errors import ArityError, PreconditionError, RangeError, ValidationError
from polarities.fixtures import EMPTY2, LE2, NEQ3
from polarities.lattice import enumerate_stable
from polarities.omega import (
    OmegaPolarity,
    RelS,
    RelT,
    box,
    diamond,
    f_bullet,
    f_S,
    f_S_formula,
    f_S_table,
    g_T,
    g_T_formula,
    g_T_table,
    relation_from_dual_operator,
    relation_from_operator,
    residual,
    validate_sections,
)
from polarities.selfcheck import (
    check_adjunctions,
    check_operator_roundtrip,
    check_operators,
    family_violations,
    unary_operators_by_atoms,
)
from polarities import tables

from strategies import omegas

S = bits.from_iter


def le2_omega():
    return OmegaPolarity.from_polarity(LE2)


class TestSections:
    def test_row_section_of_r(self):
        assert RelS.from_polarity(LE2).row_section((0,)) == S([0, 1])

    def test_empty_and_full(self):
        e = RelS.empty(2, 2, 2)
        assert all(e.row_section(xs) == 0 for xs in product(range(2), repeat=2))
        f = RelS.full(2, 2, 2)
        assert f.column_section((0, 1), 0, 1) == S([0, 1])

    def test_out_of_range(self):
        with pytest.raises(RangeError):
            RelS.from_tuples(1, 2, 2, [(2, 0)])
        with pytest.raises(ArityError):
            RelS.from_tuples(1, 2, 2, [(0, 0, 0)])

    def test_r_sections_always_stable(self):
        for p in (NEQ3, LE2, EMPTY2):
            assert validate_sections(p, RelS.from_polarity(p), RelT.from_polarity(p)) == []

    def test_le2_single_tuple_flags_column_at_y1(self):
        s = RelS.from_tuples(1, 2, 2, [(1, 1)])
        report = validate_sections(LE2, s, None)
        cols = [i for i in report if i.side == "X"]
        assert any(i.index == (None, 1) for i in cols)
        flagged = next(i for i in cols if i.index == (None, 1))
        assert flagged.witness == 0  # closure of {1} adds 0

    def test_empty_relations_where_empty_set_is_stable(self):
        # on NEQ3 every subset is stable, so empty S and T are clean
        assert validate_sections(NEQ3, RelS.empty(1, 3, 3), RelT.empty(1, 3, 3)) == []

    def test_empty_relation_flagged_where_empty_set_unstable(self):
        # on LE2 the empty Y-set closes to {1}; the literal reading flags it
        assert validate_sections(LE2, RelS.empty(1, 2, 2), None)

    def test_construction_rejects_unstable(self):
        with pytest.raises(ValidationError):
            OmegaPolarity(LE2, RelS.from_tuples(1, 2, 2, [(1, 1)]), RelT.from_polarity(LE2))


class TestOperators:
    def test_f_bullet_of_r_is_rho(self):
        op = le2_omega()
        assert f_bullet(op, [S([0])]) == S([0, 1])

    def test_f_bullet_with_empty_argument(self):
        op = OmegaPolarity.from_polarity(NEQ3)
        assert f_bullet(op, [0]) == NEQ3.full_y

    def test_nullary(self):
        s = RelS.from_tuples(0, 3, 3, [(1,), (2,)])
        t = RelT.from_tuples(0, 3, 3, [(0,)])
        op = OmegaPolarity(NEQ3, s, t)
        assert f_bullet(op, []) == S([1, 2])
        assert f_S(op, []) == NEQ3.lam(S([1, 2]))
        assert g_T(op, []) == S([0])

    def test_identity_operators(self):
        for p in (NEQ3, LE2, EMPTY2):
            op = OmegaPolarity.from_polarity(p)
            for a in enumerate_stable(p).elements:
                assert f_S(op, [a]) == a
                assert g_T(op, [a]) == a

    def test_empty_argument_gives_bottom(self):
        op = OmegaPolarity.from_polarity(NEQ3)
        assert f_S(op, [0]) == NEQ3.lam(NEQ3.full_y)

    def test_full_binary_relation_gives_bottom(self):
        op = OmegaPolarity(NEQ3, RelS.full(2, 3, 3), RelT.from_polarity(NEQ3))
        for a, b in product(range(8), repeat=2):
            assert f_S(op, [a, b]) == NEQ3.lam(NEQ3.full_y)

    def test_g_with_top_argument(self):
        op = OmegaPolarity.from_polarity(LE2)
        top = LE2.full_x
        assert g_T(op, [top]) == g_T_formula(op, [top]) == top

    def test_unstable_input_rejected(self):
        with pytest.raises(PreconditionError):
            f_S(le2_omega(), [S([1])])
        with pytest.raises(ArityError):
            f_S(le2_omega(), [S([0]), S([0])])

    @given(omegas())
    def test_formula_agreement_and_isotone(self, op):
        L = enumerate_stable(op.base)
        for args in product(L.elements, repeat=op.n):
            assert f_S(op, list(args)) == f_S_formula(op, list(args))
        for args in product(L.elements, repeat=op.m):
            assert g_T(op, list(args)) == g_T_formula(op, list(args))
        if op.n:
            for a, b in product(L.elements, repeat=2):
                if bits.is_subset(a, b):
                    rest = [L.elements[L.top]] * (op.n - 1)
                    assert bits.is_subset(f_S(op, [a] + rest), f_S(op, [b] + rest))

    @given(omegas(max_size=4))
    def test_complete_operators_and_roundtrips(self, op):
        assert check_operators(op) == []


class TestRoundtrips:
    def test_identity_on_le2_gives_r(self):
        L = enumerate_stable(LE2)
        ident = tuple(range(L.size))
        assert relation_from_operator(L, ident, 1) == RelS.from_polarity(LE2)
        assert relation_from_dual_operator(L, ident, 1) == RelT.from_polarity(LE2)

    def test_constant_bottom_and_top(self):
        for p in (NEQ3, LE2):
            L = enumerate_stable(p)
            s = relation_from_operator(L, (L.bottom,) * L.size, 1)
            assert s == RelS.full(1, p.x_size, p.y_size)
            t = relation_from_dual_operator(L, (L.top,) * L.size, 1)
            assert t == RelT.full(1, p.x_size, p.y_size)

    def test_non_operator_rejected(self):
        L = enumerate_stable(NEQ3)
        with pytest.raises(ValidationError):
            relation_from_operator(L, (L.top,) * L.size, 1)
        with pytest.raises(ValidationError):
            relation_from_dual_operator(L, (L.bottom,) * L.size, 1)

    def test_all_unary_operators_on_neq3(self):
        L = enumerate_stable(NEQ3)
        ops = unary_operators_by_atoms(L)
        assert len(ops) == 512 and len(set(ops)) == 512
        for f in ops:
            assert tables.operator_violations(L.size, 1, f, L.join2, L.bottom) == []
            assert check_operator_roundtrip(L, f) == []

    def test_t_roundtrip_on_fixtures(self):
        for p in (NEQ3, LE2, EMPTY2):
            op = OmegaPolarity.from_polarity(p)
            L = enumerate_stable(p)
            assert relation_from_dual_operator(L, g_T_table(op, L), 1) == op.t
            assert relation_from_operator(L, f_S_table(op, L), 1) == op.s


class TestFamilyCheck:
    def test_detects_a_broken_join(self):
        L = enumerate_stable(NEQ3)
        join = [[L.join2(a, b) for b in range(L.size)] for a in range(L.size)]
        f = list(range(L.size))
        assert family_violations(L.size, 1, f, join, L.bottom, "join") == []
        f[L.index_of(S([0, 1]))] = L.index_of(S([0]))
        assert family_violations(L.size, 1, f, join, L.bottom, "join")

    def test_detects_a_broken_empty_join(self):
        L = enumerate_stable(NEQ3)
        join = [[L.join2(a, b) for b in range(L.size)] for a in range(L.size)]
        f = [L.top] * L.size
        assert family_violations(L.size, 1, f, join, L.bottom, "join")


class TestAdjunctions:
    def test_identity_residual(self):
        op = le2_omega()
        for a in enumerate_stable(LE2).elements:
            assert residual(op, [a], 0) == a

    def test_residual_at_top_is_top(self):
        op = OmegaPolarity(LE2, RelS.full(2, 2, 2), RelT.from_polarity(LE2))
        L = enumerate_stable(LE2)
        for a in L.elements:
            assert residual(op, [a, LE2.full_x], 1) == LE2.full_x
        assert check_adjunctions(op) == []

    def test_box_diamond_identity_on_le2(self):
        r = RelS.from_polarity(LE2)
        for a in enumerate_stable(LE2).elements:
            assert box(LE2, r, a) == diamond(LE2, r, a) == a

    def test_box_diamond_empty_relation_on_neq3(self):
        e = RelS.empty(1, 3, 3)
        L = enumerate_stable(NEQ3)
        for a in L.elements:
            assert diamond(NEQ3, e, a) == (NEQ3.full_x if a else NEQ3.lam(NEQ3.full_y))
            assert box(NEQ3, e, a) == (NEQ3.full_x if NEQ3.rho(a) == 0 else 0)
        for a, b in product(L.elements, repeat=2):
            assert bits.is_subset(diamond(NEQ3, e, a), b) == bits.is_subset(a, box(NEQ3, e, b))

    def test_box_needs_binary(self):
        with pytest.raises(ArityError):
            box(NEQ3, RelS.full(2, 3, 3), 0)

    @given(omegas())
    def test_adjunctions_random(self, op):
        assert check_adjunctions(op) == []
