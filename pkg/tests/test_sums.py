import pytest
from hypothesis import given, settings, strategies as st

from polarities.errors import ArityError, PreconditionError
from polarities.fixtures import EMPTY2, LE2, NEQ3
from polarities.lattice import enumerate_stable
from polarities.morphisms import certify, compose, identity, is_isomorphism, search_morphisms, verify
from polarities.omega import OmegaPolarity, RelS, RelT
from polarities.selfcheck import check_sum
from polarities.sums import (
    coproduct_mediator,
    direct_sum,
    factoring_morphisms,
    injection,
    product_isomorphism,
)

from strategies import omegas

LE2_O = OmegaPolarity.from_polarity(LE2)
NEQ3_O = OmegaPolarity.from_polarity(NEQ3)
EMPTY2_O = OmegaPolarity.from_polarity(EMPTY2)


class TestConstruction:
    def test_le2_plus_le2_relation(self):
        ds = direct_sum([LE2_O, LE2_O])
        # within a block LE2's relation, across blocks everything related
        assert ds.total.base.rows == (15, 14, 15, 11)
        assert ds.x_offsets == (0, 2, 4) and ds.y_offsets == (0, 2, 4)

    def test_tagging_roundtrip(self):
        ds = direct_sum([NEQ3_O, LE2_O])
        for i in range(ds.total.x_size):
            x, j = ds.untag_x(i)
            assert ds.tag_x(x, j) == i

    def test_arity_mismatch(self):
        other = OmegaPolarity(LE2, RelS.full(2, 2, 2), RelT.from_polarity(LE2))
        with pytest.raises(ArityError):
            direct_sum([LE2_O, other])

    def test_empty_sum_needs_arities(self):
        with pytest.raises((ArityError, PreconditionError)):
            direct_sum([])


class TestProduct:
    def test_sizes(self):
        assert len(product_isomorphism(direct_sum([LE2_O, LE2_O])).elements) == 4
        assert len(product_isomorphism(direct_sum([NEQ3_O, LE2_O])).elements) == 16

    def test_empty_sum_is_one_element(self):
        ds = direct_sum([], n=1, m=1)
        assert ds.total.x_size == 0
        assert product_isomorphism(ds).elements == ((),)

    def test_single_summand(self):
        ds = direct_sum([NEQ3_O])
        assert ds.total == NEQ3_O
        assert is_isomorphism(injection(ds, 0))

    def test_permuted_summands_are_isomorphic(self):
        a = direct_sum([LE2_O, EMPTY2_O]).total
        b = direct_sum([EMPTY2_O, LE2_O]).total
        swap = (2, 3, 0, 1)
        assert is_isomorphism(certify(a, b, swap, swap))


class TestCoproduct:
    def test_injections_are_bounded_morphisms(self):
        ds = direct_sum([NEQ3_O, LE2_O])
        for k in range(2):
            inj = injection(ds, k)
            assert verify(inj.source, inj.target, inj.alpha, inj.beta).ok

    def test_fold_of_identities(self):
        ds = direct_sum([LE2_O, LE2_O])
        fold = coproduct_mediator(ds, [identity(LE2_O)] * 2)
        assert fold.alpha == (0, 1, 0, 1) == fold.beta
        found = factoring_morphisms(ds, [identity(LE2_O)] * 2)
        assert [(m.alpha, m.beta) for m in found] == [(fold.alpha, fold.beta)]

    def test_fold_on_neq3(self):
        ds = direct_sum([NEQ3_O, NEQ3_O])
        fold = coproduct_mediator(ds, [identity(NEQ3_O)] * 2)
        assert fold.certified and fold.alpha == (0, 1, 2) * 2
        for k in range(2):
            assert compose(fold, injection(ds, k)).alpha == (0, 1, 2)

    def test_mediator_of_injections_is_identity(self):
        ds = direct_sum([NEQ3_O, LE2_O, EMPTY2_O])
        med = coproduct_mediator(ds, [injection(ds, k) for k in range(3)])
        assert med.alpha == tuple(range(ds.total.x_size))

    def test_family_errors(self):
        ds = direct_sum([LE2_O, LE2_O])
        with pytest.raises(PreconditionError):
            coproduct_mediator(ds, [identity(LE2_O)])
        with pytest.raises(PreconditionError):
            coproduct_mediator(ds, [identity(LE2_O), identity(NEQ3_O)])

    def test_every_morphism_out_factors_through_its_restrictions(self):
        ds = direct_sum([LE2_O, EMPTY2_O])
        for phi in search_morphisms(ds.total, LE2_O):
            family = [compose(phi, injection(ds, k)) for k in range(2)]
            med = coproduct_mediator(ds, family)
            assert (med.alpha, med.beta) == (phi.alpha, phi.beta)


@pytest.mark.parametrize("parts", [[LE2_O], [LE2_O, LE2_O], [EMPTY2_O, EMPTY2_O], [NEQ3_O, LE2_O], [LE2_O, EMPTY2_O, LE2_O]])
def test_universal_checks(parts):
    assert check_sum(parts) == []


@settings(max_examples=25)
@given(st.lists(omegas(max_size=3, max_n=1, max_m=1), min_size=1, max_size=2).filter(
    lambda ps: len({(p.n, p.m) for p in ps}) == 1))
def test_random_sums(parts):
    ds = direct_sum(parts)
    total = enumerate_stable(ds.total.base).size
    expected = 1
    for p in parts:
        expected *= enumerate_stable(p.base).size
    assert total == expected
    assert check_sum(parts) == []
