import pytest
from hypothesis import given

from polarities import bits
from polarities.errors import CapacityError, RangeError
from polarities.fixtures import EMPTY2, LE2, NEQ3
from polarities.lattice import brute_force_stable, enumerate_stable
from polarities.polarity import X_SIDE, Y_SIDE, Polarity

from strategies import polarities

S = bits.from_iter


def test_neq3_is_the_boolean_cube():
    L = enumerate_stable(NEQ3)
    assert L.size == 8
    assert sorted(L.elements) == list(range(8))
    for i in range(8):
        for j in range(8):
            assert L.leq(i, j) == bits.is_subset(L.elements[i], L.elements[j])


def test_le2_is_a_two_chain():
    L = enumerate_stable(LE2)
    assert L.elements == (S([0]), S([0, 1]))
    assert L.elements[L.bottom] == S([0])


def test_empty2_is_a_two_chain_from_empty():
    L = enumerate_stable(EMPTY2)
    assert L.elements == (0, S([0, 1]))
    assert L.elements[L.bottom] == 0
    assert L.elements[L.top] == S([0, 1])


def test_lectic_order_is_deterministic():
    assert enumerate_stable(NEQ3).elements == (0, S([2]), S([1]), S([1, 2]), S([0]), S([0, 2]), S([0, 1]), S([0, 1, 2]))


def test_join_and_meet_examples():
    L = enumerate_stable(NEQ3)
    i = L.index_of
    assert L.elements[L.join([i(S([0])), i(S([1]))])] == S([0, 1])
    assert L.elements[L.meet([i(S([0, 1])), i(S([1, 2]))])] == S([1])
    assert L.meet([]) == L.top
    for a in range(L.size):
        assert L.join([a, a]) == a
        assert L.meet([a, L.top]) == a
    le = enumerate_stable(LE2)
    assert le.elements[le.join([])] == S([0])


def test_bad_index_and_non_stable_lookup():
    L = enumerate_stable(LE2)
    with pytest.raises(RangeError):
        L.join([5])
    with pytest.raises(RangeError):
        L.index_of(S([1]))


def test_capacity_guard():
    with pytest.raises(CapacityError):
        enumerate_stable(NEQ3, cap=7)
    assert enumerate_stable(NEQ3, cap=8).size == 8


def test_decomposition_examples():
    L = enumerate_stable(NEQ3)
    assert L.verify_decomposition(L.index_of(S([0, 2])))
    L = enumerate_stable(LE2)
    assert L.verify_decomposition(L.index_of(S([0])))
    L = enumerate_stable(EMPTY2)
    assert L.verify_decomposition(L.index_of(0))


def test_empty_carriers():
    p = Polarity(0, 0, ())
    L = enumerate_stable(p)
    assert L.elements == (0,)
    assert L.bottom == L.top == 0


@given(polarities(max_x=6, max_y=6))
def test_enumeration_matches_brute_force(p):
    assert list(enumerate_stable(p).elements) == brute_force_stable(p)


@given(polarities(max_x=5, max_y=5))
def test_complete_lattice_laws(p):
    L = enumerate_stable(p)
    els = L.elements
    for i in range(L.size):
        assert L.verify_decomposition(i)
        for j in range(L.size):
            jn, mt = els[L.join2(i, j)], els[L.meet2(i, j)]
            assert bits.is_subset(els[i] | els[j], jn)
            assert mt == els[i] & els[j]
            # least upper bound
            for k in range(L.size):
                if L.leq(i, k) and L.leq(j, k):
                    assert L.leq(L.join2(i, j), k)


@given(polarities(max_x=5, max_y=5))
def test_count_matches_y_side_stable_sets(p):
    y_stable = [b for b in range(1 << p.y_size) if p.is_stable(Y_SIDE, b)]
    assert enumerate_stable(p).size == len(y_stable)
    assert sorted(p.rho(a) for a in enumerate_stable(p).elements) == sorted(y_stable)


@given(polarities(max_x=5, max_y=5))
def test_every_element_stable_and_bounds(p):
    L = enumerate_stable(p)
    assert all(p.is_stable(X_SIDE, a) for a in L.elements)
    assert L.elements[L.top] == p.full_x
    assert L.elements[L.bottom] == p.lam(p.full_y)
