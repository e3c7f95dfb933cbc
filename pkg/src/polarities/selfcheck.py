"""Exhaustive and seeded invariant suites.

Each ``check_*`` function returns a list of failure messages (empty means
the invariant held); each ``suite_*`` function runs one family of checks
over a batch of structures and returns a :class:`SuiteResult`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Sequence

import numpy as np

from . import bits, fixtures, tables
from .errors import PolarityError
from .generators import (
    OmegaConfig,
    all_polarities,
    compatible_ops,
    lattice_homs,
    random_nlo,
    random_omega,
    random_polarity,
)
from .lattice import DEFAULT_CAP, StableLattice, brute_force_stable, enumerate_stable
from .morphisms import (
    BoundedMorphism,
    certify,
    compose,
    compose_homs,
    dual_hom,
    dual_of_hom,
    equiv_conditions,
    identity,
    image,
    is_inner_substructure,
    is_maximal_covering,
    preserves,
    polarity_preservation_statements,
    search_morphisms,
    verify,
)
from .nlo import (
    FiniteLattice,
    Homomorphism,
    OmegaNLO,
    canonical_structure,
    filters,
    ideals,
    is_homomorphism,
    lower_extension,
    theta_embedding,
    upper_extension,
)
from .omega import (
    OmegaPolarity,
    RelT,
    box,
    diamond,
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
from .polarity import X_SIDE, Y_SIDE, Polarity, is_upset, satisfies_mon_r
from .quasi import (
    RelSEps,
    eps_quasi_order,
    f_S_eps,
    f_S_eps_formula,
    validate_eps_sections,
    verify_eps_morphism,
)
from .sums import (
    coproduct_mediator,
    direct_sum,
    factoring_morphisms,
    injection,
    product_isomorphism,
    product_nlo,
)

FAMILY_LIMIT = 20


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, failures: Sequence[str], label: str = "") -> None:
        self.checked += 1
        self.failures.extend(f"{label}: {f}" if label else f for f in failures)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failed"


@dataclass(frozen=True)
class SelfCheckConfig:
    size: int = 3
    seed: int = 0
    samples: int = 20
    cap: int = DEFAULT_CAP


# closure-level laws

def check_galois(p: Polarity, families: bool = True) -> list[str]:
    out = []
    xs, ys = range(1 << p.x_size), range(1 << p.y_size)
    for a in xs:
        ra = p.rho(a)
        for b in ys:
            if bits.is_subset(a, p.lam(b)) != bits.is_subset(b, ra):
                out.append(f"adjunction fails at A={bits.fmt(a)} B={bits.fmt(b)}")
                return out
        if p.rho(p.lam(ra)) != ra:
            out.append(f"rho lam rho != rho at {bits.fmt(a)}")
        if not p.is_stable(Y_SIDE, ra):
            out.append(f"rho {bits.fmt(a)} is not stable")
    for b in ys:
        lb = p.lam(b)
        if p.lam(p.rho(lb)) != lb:
            out.append(f"lam rho lam != lam at {bits.fmt(b)}")
        if not p.is_stable(X_SIDE, lb):
            out.append(f"lam {bits.fmt(b)} is not stable")
    for side, size, op in ((X_SIDE, p.x_size, p.rho), (Y_SIDE, p.y_size, p.lam)):
        subsets = list(range(1 << size))
        full_other = p.full_y if side == X_SIDE else p.full_x
        if families and len(subsets) <= 8:
            fams = range(1 << len(subsets))
        else:
            fams = [0] + [(1 << a) | (1 << b) for a in subsets for b in subsets]
        values = [op(s) for s in subsets]
        for fam in fams:
            union, inter = 0, full_other
            for i in bits.iter_bits(fam):
                union |= subsets[i]
                inter &= values[i]
            if op(union) != inter:
                out.append(f"de Morgan fails on the {side} side for family {bin(fam)}")
                break
        q = p.quasi_order(side)
        for s in subsets:
            if p.is_stable(side, s) and not is_upset(q, s):
                out.append(f"stable {side}-set {bits.fmt(s)} is not an upset")
    if not satisfies_mon_r(p):
        out.append("monotonicity condition on R fails")
    L = enumerate_stable(p)
    for i in range(L.size):
        if not L.verify_decomposition(i):
            out.append(f"decomposition fails for {bits.fmt(L.elements[i])}")
    return out


def suite_galois(max_size: int) -> SuiteResult:
    res = SuiteResult("galois")
    for xk in range(max_size + 1):
        for yk in range(max_size + 1):
            for p in all_polarities(xk, yk):
                res.record(check_galois(p), f"{xk}x{yk} rows={p.rows}")
    return res


def check_stable_oracle(p: Polarity) -> list[str]:
    got = list(enumerate_stable(p).elements)
    want = brute_force_stable(p)
    return [] if got == want else [f"enumeration {got} != brute force {want}"]


def suite_stable_oracle(rng: random.Random, count: int, max_x: int) -> SuiteResult:
    res = SuiteResult("stable_oracle")
    for _ in range(count):
        p = random_polarity(rng, rng.randint(0, max_x), rng.randint(0, max_x), rng.choice([0.3, 0.5, 0.7]))
        res.record(check_stable_oracle(p), f"rows={p.rows}")
    for name, p, size in (("NEQ3", fixtures.NEQ3, 8), ("LE2", fixtures.LE2, 2)):
        got = enumerate_stable(p).size
        res.record([] if got == size else [f"|P+({name})| = {got}, expected {size}"])
    return res


# operators

def _family_values(k: int, values: np.ndarray, table: np.ndarray, unit: int) -> np.ndarray:
    """``out[mask]`` = fold of ``values[i]`` over the bits of ``mask`` with ``table``."""
    out = np.empty(1 << k, dtype=np.int64)
    out[0] = unit
    for b in range(k):
        lo = 1 << b
        out[lo : 2 * lo] = table[out[:lo], values[b]]
    return out


def family_violations(k: int, arity: int, table: Sequence[int], op_table, unit: int, law: str) -> list[str]:
    """Check ``f(op F) = op f[F]`` for every family ``F`` in every coordinate."""
    if k > FAMILY_LIMIT:
        raise PolarityError(f"family check over {k} elements is too large")
    op = np.asarray(op_table, dtype=np.int64)
    fam = _family_values(k, np.arange(k), op, unit)
    out = []
    for i in range(arity):
        for ctx in product(range(k), repeat=arity - 1):
            fv = np.array([table[tables.index(ctx[:i] + (v,) + ctx[i:], k)] for v in range(k)], dtype=np.int64)
            lhs = fv[fam]
            rhs = _family_values(k, fv, op, unit)
            bad = np.nonzero(lhs != rhs)[0]
            if bad.size:
                out.append(f"{law} of family {bits.elements(int(bad[0]))} not preserved in coordinate {i} at {ctx}")
                break
    return out


def _tables_of(L: StableLattice):
    k = L.size
    join = L.join_table or tuple(tuple(L.join((a, b)) for b in range(k)) for a in range(k))
    meet = L.meet_table or tuple(tuple(L.meet((a, b)) for b in range(k)) for a in range(k))
    return join, meet


def check_operators(op: OmegaPolarity, cap: int = DEFAULT_CAP) -> list[str]:
    out = []
    L = enumerate_stable(op.base, cap=cap)
    join, meet = _tables_of(L)
    f = f_S_table(op, L)
    g = g_T_table(op, L)
    out += family_violations(L.size, op.n, f, join, L.bottom, "join")
    out += family_violations(L.size, op.m, g, meet, L.top, "meet")
    for args in product(range(L.size), repeat=op.n):
        sets = [L.elements[i] for i in args]
        if f_S(op, sets) != f_S_formula(op, sets):
            out.append(f"f_S quantifier form differs at {args}")
            break
    for args in product(range(L.size), repeat=op.m):
        sets = [L.elements[i] for i in args]
        if g_T(op, sets) != g_T_formula(op, sets):
            out.append(f"g_T quantifier form differs at {args}")
            break
    try:
        if relation_from_operator(L, f, op.n) != op.s:
            out.append("S differs from the relation of its own operator")
        if relation_from_dual_operator(L, g, op.m) != op.t:
            out.append("T differs from the relation of its own dual operator")
    except PolarityError as exc:
        out.append(f"{type(exc).__name__}: {exc}")
    return out


def suite_operators(rng: random.Random, count: int, cfg: OmegaConfig = OmegaConfig()) -> SuiteResult:
    res = SuiteResult("operators")
    for _ in range(count):
        op = random_omega(rng, cfg)
        res.record(check_operators(op), f"rows={op.base.rows} n={op.n} m={op.m}")
    return res


def unary_operators_by_atoms(L: StableLattice) -> list[tuple[int, ...]]:
    """Every join-preserving unary map on a finite Boolean ``L``, from atom images."""
    join, _ = _tables_of(L)
    atoms = [i for i in range(L.size) if i != L.bottom
             and all(j in (L.bottom, i) for j in range(L.size) if L.leq(j, i))]
    below = [[a for a in atoms if L.leq(a, e)] for e in range(L.size)]
    out = []
    for images in product(range(L.size), repeat=len(atoms)):
        img = dict(zip(atoms, images))
        table = []
        for e in range(L.size):
            v = L.bottom
            for a in below[e]:
                v = join[v][img[a]]
            table.append(v)
        out.append(tuple(table))
    return out


def check_operator_roundtrip(L: StableLattice, f: tuple[int, ...]) -> list[str]:
    s = relation_from_operator(L, f, 1)
    p = L.source
    try:
        op = OmegaPolarity(p, s, RelT.from_polarity(p))
    except PolarityError as exc:
        return [f"relation of operator {f} has unstable sections: {exc}"]
    got = f_S_table(op, L)
    return [] if got == f else [f"operator {f} came back as {got}"]


def suite_atom_operators() -> SuiteResult:
    res = SuiteResult("atom_operators")
    L = enumerate_stable(fixtures.NEQ3)
    for f in unary_operators_by_atoms(L):
        res.record(check_operator_roundtrip(L, f), f"f={f}")
    return res


# adjunctions

def check_adjunctions(op: OmegaPolarity) -> list[str]:
    out = []
    L = enumerate_stable(op.base)
    els = L.elements
    for i in range(op.n):
        for args in product(els, repeat=op.n):
            for b in els:
                bound = list(args)
                bound[i] = b
                r = residual(op, bound, i)
                left = bits.is_subset(f_S(op, list(args)), b)
                right = bits.is_subset(args[i], r)
                if left != right:
                    out.append(f"residual adjunction fails in coordinate {i} at {[bits.fmt(a) for a in args]}, B={bits.fmt(b)}")
                    return out
    binaries = []
    if op.n == 1:
        binaries.append(op.s)
    if op.m == 1:
        binaries.append(op.t)
    for rel in binaries:
        try:
            pairs = [(diamond(op.base, rel, a), a) for a in els]
            boxes = {b: box(op.base, rel, b) for b in els}
        except PolarityError:
            continue  # read the other way round, the relation may have unstable sections
        for da, a in pairs:
            for b in els:
                if bits.is_subset(da, b) != bits.is_subset(a, boxes[b]):
                    out.append(f"diamond/box adjunction fails at A={bits.fmt(a)} B={bits.fmt(b)}")
                    return out
    return out


def adjunction_fixtures(rng: random.Random, extra: int = 10) -> list[OmegaPolarity]:
    out = [OmegaPolarity.from_polarity(p) for p in fixtures.POLARITIES.values()]
    for l in fixtures.lattices().values():
        out.append(canonical_structure(OmegaNLO.identity_ops(l)))
    for _ in range(extra):
        out.append(random_omega(rng, OmegaConfig(max_x=3, max_y=3)))
    return out


def suite_adjunctions(rng: random.Random, extra: int = 10) -> SuiteResult:
    res = SuiteResult("adjunctions")
    for op in adjunction_fixtures(rng, extra):
        res.record(check_adjunctions(op), f"rows={op.base.rows}")
    return res


# canonical extensions

def check_canonical(A: OmegaNLO, seed: int = 0) -> list[str]:
    out = []
    st = canonical_structure(A)
    p = st.base
    fs, ds = filters(A.lattice), ideals(A.lattice)
    q1, q2 = p.quasi_order(X_SIDE), p.quasi_order(Y_SIDE)
    for i, j in product(range(len(fs)), repeat=2):
        if q1.leq(i, j) != bits.is_subset(fs[i], fs[j]):
            out.append(f"filter quasi-order differs from inclusion at {i},{j}")
            break
    for i, j in product(range(len(ds)), repeat=2):
        if q2.leq(i, j) != bits.is_subset(ds[i], ds[j]):
            out.append(f"ideal quasi-order differs from inclusion at {i},{j}")
            break
    res = theta_embedding(A, seed=seed, strict=False)
    out += [f"diagnostic {k} failed" for k, v in res.diagnostics.items() if not v]
    if lower_extension(res) != res.algebra.nlo.f:
        out.append("lower extension differs from f_S")
    if upper_extension(res) != res.algebra.nlo.g:
        out.append("upper extension differs from g_T")
    return out


def canonical_cases(rng: random.Random, random_per_lattice: int) -> list[tuple[str, OmegaNLO]]:
    cases = []
    for name, l in fixtures.lattices().items():
        cases.append((f"{name}/identity", OmegaNLO.identity_ops(l)))
    names = list(fixtures.lattices().items())
    for k in range(random_per_lattice * len(names)):
        name, l = names[k % len(names)]
        cases.append((f"{name}/random{k}", random_nlo(rng, l)))
    return cases


def suite_canonical(rng: random.Random, random_total: int) -> SuiteResult:
    res = SuiteResult("canonical")
    lats = list(fixtures.lattices().items())
    cases = [(f"{n}/identity", OmegaNLO.identity_ops(l)) for n, l in lats]
    for k in range(random_total):
        n, l = lats[k % len(lats)]
        cases.append((f"{n}/random{k}", random_nlo(rng, l)))
    for label, A in cases:
        res.record(check_canonical(A), label)
    return res


# morphisms

def small_lattices() -> dict[str, FiniteLattice]:
    lats = {"CH1": fixtures.chain(1), "CH3": fixtures.chain(3)}
    lats.update(fixtures.lattices())
    two, three = OmegaNLO.identity_ops(fixtures.ch2()), OmegaNLO.identity_ops(fixtures.chain(3))
    lats["CH2xCH3"] = product_nlo([two, three], 1, 1)[0].lattice
    return lats


def morphism_pool(rng: random.Random, search_limit: int = 1 << 12) -> list[BoundedMorphism]:
    """Bounded morphisms among fixture structures from several independent sources."""
    polar = [OmegaPolarity.from_polarity(p) for p in fixtures.POLARITIES.values()]
    lats = {"CH1": fixtures.chain(1), **fixtures.lattices()}
    nlos = {k: OmegaNLO.identity_ops(l) for k, l in lats.items()}
    canon = [canonical_structure(A) for A in nlos.values()]
    pool = [identity(p) for p in polar + canon]
    for src, dst in product(polar, repeat=2):
        if dst.x_size ** src.x_size * dst.y_size ** src.y_size <= search_limit:
            pool.extend(search_morphisms(src, dst))
    for a, b in product(nlos, repeat=2):
        for theta in lattice_homs(lats[a], lats[b]):
            pool.append(dual_of_hom(Homomorphism(nlos[a], nlos[b], theta)))
    for p, q in product(polar, repeat=2):
        ds = direct_sum([p, q])
        pool.extend(injection(ds, k) for k in range(2))
    composites = []
    for _ in range(len(pool)):
        phi, psi = rng.choice(pool), rng.choice(pool)
        if psi.target == phi.source:
            composites.append(compose(phi, psi))
    return pool + composites


def check_morphism(phi: BoundedMorphism, cap: int = DEFAULT_CAP) -> list[str]:
    out = []
    try:
        h = dual_hom(phi, cap)
        eq12, eq13 = equiv_conditions(phi.source, phi.target, phi.alpha, phi.beta, cap)
    except PolarityError as exc:
        return [f"{type(exc).__name__}: {exc}"]
    cert = verify(phi.source, phi.target, phi.alpha, phi.beta)
    if eq12 != (cert["1R"].holds and cert["2R"].holds) or eq13 != (cert["1R"].holds and cert["3R"].holds):
        out.append("closure-form conditions disagree with the pointwise conditions")
    if bad := is_homomorphism(h):
        out.append(f"dual is not a homomorphism: {bad[0]}")
    if len(set(phi.alpha)) == phi.target.x_size and not h.is_injective():
        out.append("surjective alpha but the dual is not injective")
    if len(set(phi.alpha)) == len(phi.alpha) and not h.is_surjective():
        out.append("injective alpha but the dual is not surjective")
    if len(set(polarity_preservation_statements(phi))) != 1:
        out.append(f"preservation statements disagree: {polarity_preservation_statements(phi)}")
    if dual_hom(identity(phi.source), cap).map != tuple(range(h.target.size)):
        out.append("dual of the identity is not the identity")
    return out


def check_functor(phi: BoundedMorphism, psi: BoundedMorphism, cap: int = DEFAULT_CAP) -> list[str]:
    """``(phi o psi)+ = psi+ o phi+``."""
    whole = dual_hom(compose(phi, psi), cap)
    parts = compose_homs(dual_hom(psi, cap), dual_hom(phi, cap))
    return [] if whole.map == parts.map else [f"dual of composite {whole.map} != {parts.map}"]


def check_image(phi: BoundedMorphism, cap: int = DEFAULT_CAP) -> list[str]:
    try:
        im = image(phi, cap)
    except PolarityError as exc:
        return [f"{type(exc).__name__}: {exc}"]
    out = []
    if not im.inclusion.certified:
        out.append("image inclusion not certified")
    if not im.restriction_hom.is_surjective():
        out.append("restriction onto the image is not surjective")
    injective = len(set(phi.alpha)) == len(phi.alpha) and len(set(phi.beta)) == len(phi.beta)
    if injective and all(preserves(phi).values()) and not im.isomorphic_to_source:
        out.append("injective relation-preserving morphism not isomorphic to its image")
    return out


def suite_morphisms(rng: random.Random, count: int) -> tuple[SuiteResult, SuiteResult, SuiteResult]:
    pool = morphism_pool(rng)
    chosen = rng.sample(pool, min(count, len(pool)))
    dual = SuiteResult("morphism_duality")
    functor = SuiteResult("functor_laws")
    images = SuiteResult("images")
    for phi in chosen:
        label = f"alpha={phi.alpha} beta={phi.beta}"
        dual.record(check_morphism(phi), label)
        images.record(check_image(phi), label)
        for psi in pool:
            if psi.target == phi.source:
                functor.record(check_functor(phi, psi), label)
                break
    return dual, functor, images


def hom_cases(rng: random.Random, count: int) -> list[Homomorphism]:
    lats = small_lattices()
    triples = [(a, b, t) for a in lats for b in lats for t in lattice_homs(lats[a], lats[b])]
    out = []
    for a, b, theta in rng.sample(triples, min(count, len(triples))):
        A, B = compatible_ops(rng, theta, lats[a], lats[b])
        out.append(Homomorphism(A, B, theta))
    return out


def suite_hom_duals(rng: random.Random, count: int) -> SuiteResult:
    res = SuiteResult("hom_duals")
    for theta in hom_cases(rng, count):
        try:
            phi = dual_of_hom(theta)
            fails = [] if phi.certified else ["theta+ not certified"]
            if theta.is_injective() and len(set(phi.alpha)) != phi.target.x_size:
                fails.append("injective theta but alpha of theta+ is not surjective")
            if theta.is_surjective() and not (
                len(set(phi.alpha)) == len(phi.alpha) and len(set(phi.beta)) == len(phi.beta)
            ):
                fails.append("surjective theta but theta+ is not injective")
            if theta.is_surjective() and not is_inner_substructure(
                image(phi).structure, phi.target, image(phi).x_carrier, image(phi).y_carrier
            ).ok:
                fails.append("surjective theta but the image of theta+ is not inner")
        except PolarityError as exc:
            fails = [f"{type(exc).__name__}: {exc}"]
        res.record(fails, f"map={theta.map}")
    return res


# sums

def check_sum(summands: Sequence[OmegaPolarity], uniqueness_limit: int = 1 << 12) -> list[str]:
    out = []
    try:
        ds = direct_sum(summands)
        pi = product_isomorphism(ds)
        injs = [injection(ds, k) for k in range(len(summands))]
        med = coproduct_mediator(ds, injs)
        if med.alpha != tuple(range(ds.total.x_size)) or med.beta != tuple(range(ds.total.y_size)):
            out.append("mediator of the injections is not the identity")
        for k, inj in enumerate(injs):
            proj = dual_hom(inj)
            for i, a in enumerate(pi.theta.map):
                if proj.map[i] != pi.elements[a][k]:
                    out.append(f"dual of injection {k} is not the product projection")
                    break
        if len(set(summands)) == 1 and summands:
            q = summands[0]
            family = [identity(q)] * len(summands)
            fold = coproduct_mediator(ds, family)
            space = q.x_size ** ds.total.x_size * q.y_size ** ds.total.y_size
            if space <= uniqueness_limit:
                found = factoring_morphisms(ds, family)
                if [(m.alpha, m.beta) for m in found] != [(fold.alpha, fold.beta)]:
                    out.append(f"{len(found)} morphisms factor the fold family")
    except PolarityError as exc:
        out.append(f"{type(exc).__name__}: {exc}")
    return out


def suite_sums(max_summands: int) -> SuiteResult:
    res = SuiteResult("sums")
    fx = list(fixtures.POLARITIES.items())
    for r in range(0, max_summands + 1):
        for combo in combinations_with_replacement(fx, r):
            names = "+".join(n for n, _ in combo) or "empty"
            parts = [OmegaPolarity.from_polarity(p) for _, p in combo]
            if not parts:
                ds = direct_sum([], n=1, m=1)
                pi = product_isomorphism(ds)
                res.record([] if len(pi.elements) == 1 else ["empty sum is not one-element"], names)
                continue
            res.record(check_sum(parts), names)
    return res


# maximal covering

def covering_witness_positive() -> tuple[BoundedMorphism, OmegaNLO]:
    """A non-surjective maximal covering morphism into the canonical structure of CH2."""
    ch2 = OmegaNLO.identity_ops(fixtures.ch2())
    p = Polarity.from_pairs(1, 2, [(0, 1)])
    src = OmegaPolarity.from_polarity(p)
    fs = filters(ch2.lattice)
    ds = ideals(ch2.lattice)
    top_filter = fs.index(ch2.lattice.up[1])
    return certify(src, canonical_structure(ch2), (top_filter,), (ds.index(ch2.lattice.down(0)), ds.index(ch2.lattice.down(1)))), ch2


def covering_witness_negative(limit: int = 1 << 12) -> tuple[BoundedMorphism, OmegaNLO] | None:
    """First morphism (in a fixed search order) into a canonical structure that is not maximal covering."""
    sources = [OmegaPolarity.from_polarity(p) for p in fixtures.POLARITIES.values()]
    sources.insert(0, covering_witness_positive()[0].source)
    for name, l in fixtures.lattices().items():
        A = OmegaNLO.identity_ops(l)
        target = canonical_structure(A)
        for src in sources:
            if target.x_size ** src.x_size * target.y_size ** src.y_size > limit:
                continue
            for phi in search_morphisms(src, target, limit):
                if not is_maximal_covering(phi, A):
                    return phi, A
    return None


def suite_maximal_covering(limit: int = 1 << 12) -> SuiteResult:
    res = SuiteResult("maximal_covering")
    phi, A = covering_witness_positive()
    fails = []
    if len(set(phi.alpha)) == phi.target.x_size:
        fails.append("positive witness is surjective")
    if not is_maximal_covering(phi, A):
        fails.append("positive witness is not maximal covering")
    if not dual_hom(phi).is_injective():
        fails.append("dual of the positive witness is not injective")
    res.record(fails, "CH2 witness")
    neg = covering_witness_negative(limit)
    res.record([] if neg else ["no failing instance found"], "failing instance")
    for name, l in fixtures.lattices().items():
        A = OmegaNLO.identity_ops(l)
        target = canonical_structure(A)
        count = 0
        for src in [OmegaPolarity.from_polarity(p) for p in fixtures.POLARITIES.values()] + [target]:
            if target.x_size ** src.x_size * target.y_size ** src.y_size > limit:
                continue
            for phi in search_morphisms(src, target, limit):
                try:
                    if is_maximal_covering(phi, A):
                        count += 1
                        if not dual_hom(phi).is_injective():
                            res.record([f"covering alpha={phi.alpha} has a non-injective dual"], name)
                except PolarityError as exc:
                    res.record([f"{type(exc).__name__}: {exc}"], name)
        res.record([], f"{name}: {count} covering")
    return res


# quasioperators

def check_eps_reduction(op: OmegaPolarity, morphisms: Sequence[BoundedMorphism] = ()) -> list[str]:
    out = []
    p = op.base
    s = RelSEps.from_rel_s(op.s)
    if validate_eps_sections(p, s) != validate_sections(p, op.s):
        out.append("section reports differ")
    L = enumerate_stable(p)
    for args in product(L.elements, repeat=op.n):
        a = f_S_eps(p, s, list(args))
        if a != f_S(op, list(args)) or a != f_S_eps_formula(p, s, list(args)):
            out.append(f"f_S_eps differs at {[bits.fmt(x) for x in args]}")
            break
    q = eps_quasi_order(p, s.eps)
    q1 = p.quasi_order(X_SIDE)
    for i, zs in enumerate(product(range(p.x_size), repeat=op.n)):
        for j, ws in enumerate(product(range(p.x_size), repeat=op.n)):
            if q.leq(i, j) != all(q1.leq(a, b) for a, b in zip(zs, ws)):
                out.append("all-ONE quasi-order is not the product order")
                break
    for phi in morphisms:
        if phi.source != op:
            continue
        base = verify(phi.source, phi.target, phi.alpha, phi.beta)
        if not all(base[c].holds for c in ("isotone_alpha", "isotone_beta", "1R", "2R", "3R")):
            continue
        eps = verify_eps_morphism(
            phi.source.base, phi.target.base, phi.alpha, phi.beta, s, RelSEps.from_rel_s(phi.target.s)
        )
        if (eps["1S"], eps["2S"]) != (base["1S"], base["2S"]):
            out.append(f"verdicts differ for alpha={phi.alpha}: {eps['1S']}, {eps['2S']} vs {base['1S']}, {base['2S']}")
    return out


def eps_structures(rng: random.Random, extra: int = 10) -> list[OmegaPolarity]:
    return adjunction_fixtures(rng, extra)


def suite_eps(rng: random.Random, extra: int = 10, search_limit: int = 1 << 12) -> SuiteResult:
    res = SuiteResult("eps_reduction")
    structures = eps_structures(rng, extra)
    for op in structures:
        morphs = []
        for dst in structures:
            if (dst.n, dst.m) == (op.n, op.m) and dst.x_size ** op.x_size * dst.y_size ** op.y_size <= search_limit:
                morphs.extend(_raw_pairs(op, dst, rng, 8))
        res.record(check_eps_reduction(op, morphs), f"rows={op.base.rows} n={op.n}")
    return res


def _raw_pairs(src, dst, rng, count) -> list[BoundedMorphism]:
    """Random carrier maps (not necessarily bounded) wrapped for verdict comparison."""
    out = []
    for _ in range(count):
        a = tuple(rng.randrange(dst.x_size) for _ in range(src.x_size)) if dst.x_size else ()
        b = tuple(rng.randrange(dst.y_size) for _ in range(src.y_size)) if dst.y_size else ()
        if len(a) == src.x_size and len(b) == src.y_size:
            out.append(BoundedMorphism(src, dst, a, b))
    out.extend(search_morphisms(src, dst))
    return out


# driver

def run(cfg: SelfCheckConfig = SelfCheckConfig()) -> list[SuiteResult]:
    rng = random.Random(cfg.seed)
    size = cfg.size
    results = [
        suite_galois(min(size, 3)),
        suite_stable_oracle(rng, cfg.samples, max(size, 1) + 3),
        suite_operators(rng, cfg.samples, OmegaConfig(max_x=size, max_y=size, max_n=2, max_m=2)),
        suite_atom_operators(),
        suite_adjunctions(rng, max(2, cfg.samples // 4)),
        suite_canonical(rng, cfg.samples // 2),
    ]
    results.extend(suite_morphisms(rng, cfg.samples))
    results.append(suite_hom_duals(rng, cfg.samples))
    results.append(suite_sums(min(size, 3)))
    results.append(suite_maximal_covering())
    results.append(suite_eps(rng, max(2, cfg.samples // 4)))
    return results
