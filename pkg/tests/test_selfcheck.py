"""Each check must notice a deliberately injected fault."""

import random

import pytest

from polarities import fixtures, selfcheck
from polarities.fixtures import LE2, NEQ3
from polarities.morphisms import certify, identity
from polarities.nlo import OmegaNLO
from polarities.omega import OmegaPolarity
from polarities.polarity import Polarity

NEQ3_O = OmegaPolarity.from_polarity(NEQ3)
LE2_O = OmegaPolarity.from_polarity(LE2)


def test_suite_result_lines():
    r = selfcheck.SuiteResult("x")
    r.record([])
    r.record(["bad"], "case")
    assert not r.ok and r.failures == ["case: bad"]
    assert r.line() == "FAIL x: 2 checked, 1 failed"


def test_clean_checks_pass():
    assert selfcheck.check_galois(LE2) == []
    assert selfcheck.check_operators(NEQ3_O) == []
    assert selfcheck.check_adjunctions(LE2_O) == []
    assert selfcheck.check_canonical(OmegaNLO.identity_ops(fixtures.n5())) == []
    assert selfcheck.check_eps_reduction(NEQ3_O, [identity(NEQ3_O)]) == []


def test_galois_detects_a_broken_rho(monkeypatch):
    real = Polarity.rho
    monkeypatch.setattr(Polarity, "rho", lambda self, a: real(self, a) ^ 1 if a == 0b11 else real(self, a))
    assert selfcheck.check_galois(NEQ3)


def test_oracle_detects_a_missing_element(monkeypatch):
    real = selfcheck.brute_force_stable
    monkeypatch.setattr(selfcheck, "brute_force_stable", lambda p: real(p)[:-1])
    assert selfcheck.check_stable_oracle(NEQ3)


def test_operators_detect_a_broken_table(monkeypatch):
    real = selfcheck.f_S_table

    def broken(op, L):
        t = list(real(op, L))
        t[L.top] = L.bottom
        return tuple(t)

    monkeypatch.setattr(selfcheck, "f_S_table", broken)
    assert selfcheck.check_operators(NEQ3_O)


def test_adjunctions_detect_a_broken_box(monkeypatch):
    monkeypatch.setattr(selfcheck, "box", lambda p, r, a: 0)
    assert selfcheck.check_adjunctions(NEQ3_O)


def test_canonical_detects_a_wrong_extension(monkeypatch):
    monkeypatch.setattr(selfcheck, "lower_extension", lambda res: ())
    assert selfcheck.check_canonical(OmegaNLO.identity_ops(fixtures.ch2()))


def test_morphism_check_detects_disagreement(monkeypatch):
    monkeypatch.setattr(selfcheck, "equiv_conditions", lambda *a, **k: (False, False))
    assert selfcheck.check_morphism(identity(LE2_O))


def test_functor_check_detects_a_wrong_composite(monkeypatch):
    cycle = certify(NEQ3_O, NEQ3_O, (1, 2, 0), (1, 2, 0))
    assert selfcheck.check_functor(cycle, cycle) == []
    monkeypatch.setattr(selfcheck, "compose", lambda a, b: b)
    assert selfcheck.check_functor(cycle, cycle)


def test_sum_check_detects_non_uniqueness(monkeypatch):
    monkeypatch.setattr(selfcheck, "factoring_morphisms", lambda ds, fam: [identity(LE2_O)] * 2)
    assert selfcheck.check_sum([LE2_O, LE2_O])


def test_eps_check_detects_a_wrong_operator(monkeypatch):
    monkeypatch.setattr(selfcheck, "f_S_eps", lambda p, s, args: -1)
    assert selfcheck.check_eps_reduction(NEQ3_O)


def test_eps_check_detects_wrong_verdicts(monkeypatch):
    real = selfcheck.verify_eps_morphism

    def flipped(*a, **k):
        cert = real(*a, **k)
        return {"1S": not cert["1S"], "2S": cert["2S"]}

    monkeypatch.setattr(selfcheck, "verify_eps_morphism", flipped)
    assert selfcheck.check_eps_reduction(LE2_O, [identity(LE2_O)])


def test_covering_witnesses():
    phi, A = selfcheck.covering_witness_positive()
    assert len(set(phi.alpha)) < phi.target.x_size
    neg = selfcheck.covering_witness_negative()
    assert neg is not None


@pytest.mark.parametrize("size", [1, 2])
def test_run_small(size):
    results = selfcheck.run(selfcheck.SelfCheckConfig(size=size, samples=6))
    assert all(r.ok for r in results), [r.failures[:2] for r in results if not r.ok]
    assert {r.name for r in results} >= {"galois", "operators", "sums", "eps_reduction"}


def test_morphism_pool_is_deterministic():
    a = selfcheck.morphism_pool(random.Random(3))
    b = selfcheck.morphism_pool(random.Random(3))
    assert [(m.alpha, m.beta) for m in a] == [(m.alpha, m.beta) for m in b]
