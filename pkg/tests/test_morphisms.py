import random

import pytest
from hypothesis import given, settings, strategies as st

from polarities import fixtures
from polarities.errors import ContractError, PreconditionError, ValidationError
from polarities.fixtures import EMPTY2, LE2, NEQ3
from polarities.generators import lattice_homs
from polarities.morphisms import (
    CONDITIONS,
    BoundedMorphism,
    certify,
    compose,
    d_maximal,
    dual_hom,
    dual_of_hom,
    equiv_conditions,
    i_maximal_filters,
    identity,
    image,
    invert,
    is_inner_substructure,
    is_isomorphism,
    is_maximal_covering,
    polarity_preservation_statements,
    restrict,
    search_morphisms,
    verify,
)
from polarities.nlo import Homomorphism, OmegaNLO, canonical_structure, filters, ideals, theta_embedding
from polarities.omega import OmegaPolarity
from polarities.selfcheck import check_functor, check_image, check_morphism, morphism_pool
from polarities.sums import direct_sum, injection, product_isomorphism

NEQ3_O = OmegaPolarity.from_polarity(NEQ3)
LE2_O = OmegaPolarity.from_polarity(LE2)
EMPTY2_O = OmegaPolarity.from_polarity(EMPTY2)
CYCLE = certify(NEQ3_O, NEQ3_O, (1, 2, 0), (1, 2, 0))


@pytest.fixture(scope="module")
def pool():
    return morphism_pool(random.Random(0))


class TestVerify:
    def test_identity_passes(self):
        for p in (NEQ3_O, LE2_O, EMPTY2_O):
            cert = verify(p, p, range(p.x_size), range(p.y_size))
            assert cert.ok and [v.condition for v in cert.verdicts] == list(CONDITIONS)

    def test_non_inner_substructure_fails_2r(self):
        sub = restrict(NEQ3_O, (0, 1), (0, 1, 2))
        cert = is_inner_substructure(sub, NEQ3_O, (0, 1), (0, 1, 2))
        assert not cert["2R"].holds
        assert cert["2R"].witness == (2, 2)

    def test_dropping_from_both_sides_is_inner(self):
        sub = restrict(NEQ3_O, (0, 1), (0, 1))
        assert is_inner_substructure(sub, NEQ3_O, (0, 1), (0, 1)).ok

    def test_not_a_substructure(self):
        with pytest.raises(ValidationError):
            is_inner_substructure(LE2_O, NEQ3_O, (0, 1), (0, 1))

    def test_sum_injections_pass(self):
        ds = direct_sum([LE2_O, NEQ3_O])
        for k in range(2):
            assert verify(ds.summands[k], ds.total, *(lambda m: (m.alpha, m.beta))(injection(ds, k))).ok

    def test_broken_beta_witness(self):
        cert = verify(LE2_O, LE2_O, (0, 1), (1, 1))
        assert not cert["1R"].holds and cert["1R"].witness == (1, 0)
        d = cert.to_dict()
        assert d["ok"] is False and d["verdicts"][2]["witness"] == [1, 0]

    def test_shape_errors(self):
        from polarities.errors import DimensionError, RangeError

        with pytest.raises((DimensionError, RangeError)):
            verify(LE2_O, LE2_O, (0,), (0, 1))
        with pytest.raises((DimensionError, RangeError)):
            verify(LE2_O, LE2_O, (0, 5), (0, 1))


class TestComposition:
    def test_identity_law(self, pool):
        for phi in pool[:40]:
            assert compose(identity(phi.target), phi) == phi
            assert compose(phi, identity(phi.source)) == phi

    def test_associativity(self, pool):
        rng = random.Random(1)
        by_source = {}
        for phi in pool:
            by_source.setdefault(phi.source, []).append(phi)
        checked = 0
        for a in rng.sample(pool, 60):
            for b in by_source.get(a.target, [])[:3]:
                for c in by_source.get(b.target, [])[:3]:
                    assert compose(c, compose(b, a)) == compose(compose(c, b), a)
                    checked += 1
        assert checked > 0

    def test_mismatch_and_contract(self):
        with pytest.raises(PreconditionError):
            compose(identity(LE2_O), identity(NEQ3_O))
        raw = BoundedMorphism(LE2_O, LE2_O, (0, 1), (0, 1))
        with pytest.raises(ContractError):
            compose(raw, identity(LE2_O))
        with pytest.raises(ContractError):
            dual_hom(raw)

    def test_debug_mode_reverifies(self, monkeypatch):
        monkeypatch.setenv("POLARITIES_DEBUG", "1")
        c = compose(CYCLE, CYCLE)
        assert c.certificate.ok and c.alpha == (2, 0, 1)

    def test_certify_strict(self):
        with pytest.raises(ValidationError):
            certify(LE2_O, LE2_O, (0, 1), (1, 1))


class TestDualHom:
    def test_identity(self):
        for p in (NEQ3_O, LE2_O, EMPTY2_O):
            h = dual_hom(identity(p))
            assert h.map == tuple(range(len(h.map)))

    def test_injection_dual_is_projection(self):
        ds = direct_sum([LE2_O, LE2_O])
        pi = product_isomorphism(ds)
        for k in range(2):
            proj = dual_hom(injection(ds, k))
            for i, a in enumerate(pi.theta.map):
                assert proj.map[i] == pi.elements[a][k]

    def test_cycle_dual_is_automorphism(self):
        h = dual_hom(CYCLE)
        assert sorted(h.map) == list(range(8)) and h.map != tuple(range(8))

    def test_pool_duality(self, pool):
        for phi in pool:
            assert check_morphism(phi) == []

    def test_functor_reverses_composition(self, pool):
        rng = random.Random(2)
        checked = 0
        for phi in rng.sample(pool, 80):
            for psi in pool:
                if psi.target == phi.source:
                    assert check_functor(phi, psi) == []
                    checked += 1
                    break
        assert checked > 20


class TestEquivConditions:
    @pytest.mark.parametrize("p", [NEQ3_O, LE2_O, EMPTY2_O])
    def test_identity(self, p):
        assert equiv_conditions(p, p, range(p.x_size), range(p.y_size)) == (True, True)

    def test_broken_beta_both_fail(self):
        assert equiv_conditions(LE2_O, LE2_O, (0, 1), (1, 1)) == (False, False)
        cert = verify(LE2_O, LE2_O, (0, 1), (1, 1))
        assert not (cert["1R"].holds and cert["2R"].holds)

    @settings(max_examples=150)
    @given(st.data())
    def test_agreement_on_arbitrary_maps(self, data):
        src = data.draw(st.sampled_from([NEQ3_O, LE2_O, EMPTY2_O]))
        dst = data.draw(st.sampled_from([NEQ3_O, LE2_O, EMPTY2_O]))
        alpha = tuple(data.draw(st.integers(0, dst.x_size - 1)) for _ in range(src.x_size))
        beta = tuple(data.draw(st.integers(0, dst.y_size - 1)) for _ in range(src.y_size))
        eq12, eq13 = equiv_conditions(src, dst, alpha, beta)
        cert = verify(src, dst, alpha, beta)
        assert eq12 == (cert["1R"].holds and cert["2R"].holds)
        assert eq13 == (cert["1R"].holds and cert["3R"].holds)


class TestIsomorphisms:
    def test_identity(self):
        assert is_isomorphism(identity(NEQ3_O))

    def test_cycle_and_inverse(self):
        assert is_isomorphism(CYCLE)
        inv = invert(CYCLE)
        assert inv.alpha == (2, 0, 1) and inv.beta == (2, 0, 1)
        assert compose(inv, CYCLE).alpha == (0, 1, 2)

    def test_injection_not_iso(self):
        ds = direct_sum([LE2_O, LE2_O])
        inj = injection(ds, 0)
        assert not is_isomorphism(inj)
        with pytest.raises(PreconditionError):
            invert(inj)

    def test_preservation_statements_agree(self, pool):
        for phi in pool:
            assert len(set(polarity_preservation_statements(phi))) == 1


class TestImages:
    def test_self_is_inner(self):
        for p in (NEQ3_O, LE2_O):
            assert is_inner_substructure(p, p).ok

    def test_cycle_image_is_whole(self):
        im = image(CYCLE)
        assert im.structure == NEQ3_O and im.isomorphic_to_source

    def test_injection_image(self):
        ds = direct_sum([LE2_O, LE2_O])
        im = image(injection(ds, 1))
        assert im.x_carrier == (2, 3) and im.isomorphic_to_source
        assert im.structure == LE2_O
        assert im.restriction_hom.is_surjective()

    def test_pool_images(self, pool):
        for phi in pool:
            assert check_image(phi) == []


def _nlo(name):
    return OmegaNLO.identity_ops(fixtures.lattices()[name])


class TestDualOfHom:
    def test_identity(self):
        A = _nlo("CH2")
        phi = dual_of_hom(Homomorphism(A, A, (0, 1)))
        assert phi.alpha == (0, 1) and phi.beta == (0, 1)

    def test_embedding_gives_surjection(self):
        phi = dual_of_hom(Homomorphism(_nlo("CH2"), _nlo("DIAMOND"), (0, 3)))
        assert len(phi.alpha) == 4 and set(phi.alpha) == {0, 1}

    def test_projection_gives_inner_embedding(self):
        phi = dual_of_hom(Homomorphism(_nlo("DIAMOND"), _nlo("CH2"), (0, 1, 0, 1)))
        assert len(set(phi.alpha)) == 2 and len(set(phi.beta)) == 2
        assert image(phi).isomorphic_to_source

    def test_non_hom_rejected(self):
        A = _nlo("CH2")
        with pytest.raises(ValidationError):
            dual_of_hom(Homomorphism(A, A, (1, 0)))

    @pytest.mark.parametrize("a,b", [("CH2", "DIAMOND"), ("DIAMOND", "CH2"), ("DIAMOND", "DIAMOND")])
    def test_double_dual_matches_theta(self, a, b):
        A, B = _nlo(a), _nlo(b)
        ta, tb = theta_embedding(A).theta, theta_embedding(B).theta
        for t in lattice_homs(A.lattice, B.lattice):
            back = dual_hom(dual_of_hom(Homomorphism(A, B, t)))
            for x in range(A.size):
                assert back.map[ta.map[x]] == tb.map[t[x]]


class TestMaximalCovering:
    def test_ch2_maximality(self):
        l = fixtures.ch2()
        top_filter, whole = 1 << 1, 0b11
        bottom_ideal = 1 << 0
        assert d_maximal(l, top_filter, bottom_ideal)
        assert not any(d_maximal(l, whole, D) for D in ideals(l))
        assert [filters(l)[i] for i in i_maximal_filters(l)] == [top_filter]

    def test_n5_scan(self):
        l = fixtures.n5()
        fs, ds = filters(l), ideals(l)
        expected = [i for i, F in enumerate(fs) if any(d_maximal(l, F, D) for D in ds)]
        assert i_maximal_filters(l) == expected
        # the i-maximal filters of N5 are the principal filters of a, b and c
        assert sorted(fs[i] for i in expected) == sorted(l.up[e] for e in (1, 2, 3))

    def test_non_filter_rejected(self):
        with pytest.raises(ValidationError):
            d_maximal(fixtures.ch2(), 0b01, 0b01)

    def test_surjective_alpha_is_covering(self):
        for name in ("CH2", "DIAMOND", "N5"):
            A = _nlo(name)
            st_ = canonical_structure(A)
            assert is_maximal_covering(identity(st_), A)

    def test_wrong_target(self):
        # LE2 happens to be exactly the canonical structure of CH2
        assert is_maximal_covering(identity(LE2_O), _nlo("CH2"))
        with pytest.raises(PreconditionError):
            is_maximal_covering(identity(NEQ3_O), _nlo("CH2"))


def test_search_finds_only_certified():
    found = list(search_morphisms(LE2_O, LE2_O))
    assert all(m.certified for m in found)
    assert any(m.alpha == (0, 1) and m.beta == (0, 1) for m in found)
