"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 I/O or parse error,
3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import bits
from . import io as pio
from .errors import CapacityError, ParseError, PolarityError
from .lattice import DEFAULT_CAP, enumerate_stable
from .morphisms import (
    certify,
    dual_hom,
    dual_of_hom,
    i_maximal_filters,
    is_maximal_covering,
    verify,
)
from .nlo import (
    FiniteLattice,
    OmegaNLO,
    canonical_structure,
    filters,
    is_homomorphism,
    lower_extension,
    plus,
    theta_embedding,
    upper_extension,
)
from .omega import OmegaPolarity
from .selfcheck import SelfCheckConfig, run as run_selfcheck
from .sums import direct_sum, product_isomorphism

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_CAPACITY = 0, 1, 2, 3


class Outcome:
    """A command's report (rendered as text or JSON) and its exit status."""

    def __init__(self, report: dict, lines: list[str], status: int = EXIT_OK):
        self.report = report
        self.lines = lines
        self.status = status


def _omega_of(doc: pio.Document) -> pio.OmegaSpec:
    if doc.kind == "polarity":
        return pio.OmegaSpec.of(OmegaPolarity.from_polarity(doc.payload))
    if doc.kind == "omega_polarity":
        return doc.payload
    raise PolarityError(f"expected a polarity or omega_polarity, got {doc.kind}")


def _nlo_of(doc: pio.Document) -> OmegaNLO:
    if doc.kind == "nlo":
        return doc.payload
    if doc.kind == "lattice":
        return OmegaNLO.identity_ops(doc.payload)
    raise PolarityError(f"expected an nlo or lattice, got {doc.kind}")


def _sets(masks) -> list[str]:
    return [bits.fmt(m) for m in masks]


# commands

def cmd_validate(doc: pio.Document, args) -> Outcome:
    problems: list[str] = []
    k = doc.kind
    if k in ("polarity", "omega_polarity"):
        problems = [str(i) for i in _omega_of(doc).issues()]
    elif k == "nlo":
        problems = [str(v) for v in doc.payload.violations()]
    elif k == "morphism":
        spec = doc.payload
        for side in (spec.source, spec.target):
            if side is not None:
                problems += [str(i) for i in side.issues()]
        if spec.target_nlo is not None:
            problems += [str(v) for v in spec.target_nlo.violations()]
    elif k == "hom":
        problems = [str(v) for v in is_homomorphism(doc.payload)]
    elif k == "sum_spec":
        for j, s in enumerate(doc.payload.summands):
            problems += [f"summand {j}: {i}" for i in s.issues()]
    ok = not problems
    lines = [f"{k}: {'valid' if ok else 'invalid'}"] + [f"  {p}" for p in problems]
    return Outcome({"kind": k, "valid": ok, "problems": problems}, lines, EXIT_OK if ok else EXIT_INVALID)


def cmd_concepts(doc: pio.Document, args) -> Outcome:
    p = _omega_of(doc).base
    L = enumerate_stable(p, cap=args.cap)
    extents = _sets(L.elements)
    intents = _sets(p.rho(a) for a in L.elements)
    lines = [f"{L.size} elements"] + [f"  {i}: {e} | {t}" for i, (e, t) in enumerate(zip(extents, intents))]
    report = {"size": L.size, "elements": extents, "intents": intents}
    return Outcome(report, lines)


def cmd_dual(doc: pio.Document, args) -> Outcome:
    if doc.kind in ("nlo", "lattice"):
        A = _nlo_of(doc)
        bad = A.violations()
        if bad:
            return Outcome({"valid": False, "problems": [str(v) for v in bad]}, [f"invalid nlo: {bad[0]}"], EXIT_INVALID)
        st = canonical_structure(A)
        obj = pio.to_obj(pio.Document("omega_polarity", st))
        return Outcome({"document": obj}, pio.dumps(obj).splitlines())
    op = _omega_of(doc).build()
    alg = plus(op, args.cap)
    obj = pio.to_obj(pio.Document("nlo", alg.nlo))
    elements = _sets(alg.lattice.elements)
    lines = [f"{i}: {e}" for i, e in enumerate(elements)] + pio.dumps(obj).splitlines()
    return Outcome({"elements": elements, "document": obj}, lines)


def cmd_canonical(doc: pio.Document, args) -> Outcome:
    A = _nlo_of(doc).validated()
    res = theta_embedding(A, cap=args.cap, seed=args.seed, strict=False)
    checks = dict(res.diagnostics)
    checks["lower_extension_matches"] = lower_extension(res) == res.algebra.nlo.f
    checks["upper_extension_matches"] = upper_extension(res) == res.algebra.nlo.g
    ok = all(checks.values())
    lines = [f"|L| = {A.size}, |(L+)+| = {res.algebra.lattice.size}"]
    lines += [f"  {name}: {'pass' if v else 'FAIL'}" for name, v in checks.items()]
    lines.append(f"theta = {list(res.theta.map)}")
    report = {"size": A.size, "plus_size": res.algebra.lattice.size, "checks": checks, "theta": list(res.theta.map)}
    return Outcome(report, lines, EXIT_OK if ok else EXIT_INVALID)


def _morphism(doc: pio.Document):
    if doc.kind != "morphism":
        raise PolarityError(f"expected a morphism, got {doc.kind}")
    spec = doc.payload
    src, dst = spec.resolve()
    return spec, src, dst


def cmd_check_morphism(doc: pio.Document, args) -> Outcome:
    _, src, dst = _morphism(doc)
    cert = verify(src, dst, doc.payload.alpha, doc.payload.beta)
    lines = []
    for v in cert.verdicts:
        tail = "" if v.holds else f" (witness {v.to_dict()['witness']})"
        lines.append(f"{v.condition}: {'pass' if v.holds else 'FAIL'}{tail}")
    lines.append("bounded morphism" if cert.ok else "not a bounded morphism")
    return Outcome(cert.to_dict(), lines, EXIT_OK if cert.ok else EXIT_INVALID)


def cmd_dual_hom(doc: pio.Document, args) -> Outcome:
    if doc.kind == "hom":
        theta = doc.payload
        nlos = [a if isinstance(a, OmegaNLO) else OmegaNLO.identity_ops(a) for a in (theta.source, theta.target)]
        theta = type(theta)(nlos[0], nlos[1], theta.map)
        phi = dual_of_hom(theta)
        spec = pio.MorphismSpec(pio.OmegaSpec.of(phi.source), pio.OmegaSpec.of(phi.target), phi.alpha, phi.beta)
        obj = pio.to_obj(pio.Document("morphism", spec))
    else:
        _, src, dst = _morphism(doc)
        phi = certify(src, dst, doc.payload.alpha, doc.payload.beta, strict=False)
        if not phi.certified:
            bad = phi.certificate.failed()[0]
            return Outcome({"certified": False, "failed": bad.to_dict()}, [f"not a bounded morphism: fails {bad.condition}"], EXIT_INVALID)
        h = dual_hom(phi, args.cap)
        obj = pio.to_obj(pio.Document("hom", h))
    return Outcome({"document": obj}, pio.dumps(obj).splitlines())


def cmd_sum(docs: list[pio.Document], args) -> Outcome:
    parts: list[pio.OmegaSpec] = []
    n = m = None
    for doc in docs:
        if doc.kind == "sum_spec":
            parts.extend(doc.payload.summands)
            n, m = doc.payload.n, doc.payload.m
        else:
            parts.append(_omega_of(doc))
    ds = direct_sum([p.build() for p in parts], n, m)
    pi = product_isomorphism(ds, args.cap)
    obj = pio.to_obj(pio.Document("omega_polarity", ds.total))
    sizes = [len(set(e[k] for e in pi.elements)) for k in range(len(parts))]
    lines = [
        f"{len(parts)} summands, |X| = {ds.total.x_size}, |Y| = {ds.total.y_size}",
        f"|P+| = {len(pi.elements)} = product of {sizes}: isomorphism verified",
    ] + pio.dumps(obj).splitlines()
    report = {"summands": len(parts), "plus_size": len(pi.elements), "factor_sizes": sizes,
              "isomorphism": True, "document": obj}
    return Outcome(report, lines)


def cmd_maximal_covering(doc: pio.Document, args) -> Outcome:
    spec, src, dst = _morphism(doc)
    if spec.target_nlo is None:
        raise PolarityError("maximal covering needs a target_nlo")
    A = spec.target_nlo.validated()
    phi = certify(src, dst, spec.alpha, spec.beta, strict=False)
    if not phi.certified:
        bad = phi.certificate.failed()[0]
        return Outcome({"certified": False, "failed": bad.to_dict()}, [f"not a bounded morphism: fails {bad.condition}"], EXIT_INVALID)
    covering = is_maximal_covering(phi, A, args.cap)
    fs = filters(A.lattice)
    maximal = i_maximal_filters(A.lattice)
    hit = sorted(set(phi.alpha))
    injective = dual_hom(phi, args.cap).is_injective()
    lines = [
        f"i-maximal filters: {[_sets([fs[i]])[0] for i in maximal]}",
        f"filters in the image of alpha: {[_sets([fs[i]])[0] for i in hit]}",
        f"maximal covering: {'yes' if covering else 'no'}",
        f"dual injective: {'yes' if injective else 'no'}",
    ]
    report = {"maximal_filters": maximal, "image": hit, "maximal_covering": covering, "dual_injective": injective}
    return Outcome(report, lines)


def _dot(name: str, labels: list[str], covers: list[tuple[int, int]]) -> list[str]:
    out = [f"digraph {name} {{", "  rankdir=BT;"]
    out += [f'  n{i} [label="{lab}"];' for i, lab in enumerate(labels)]
    out += [f"  n{a} -> n{b};" for a, b in sorted(covers)]
    out.append("}")
    return out


def _check_hasse(size: int, leq: Callable[[int, int], bool], covers: list[tuple[int, int]]):
    edges = set(covers)
    for a in range(size):
        for b in range(size):
            strict = a != b and leq(a, b)
            between = any(c not in (a, b) and leq(a, c) and leq(c, b) for c in range(size))
            if ((a, b) in edges) != (strict and not between):
                raise PolarityError(f"Hasse edge set disagrees with the order at ({a},{b})")


def cmd_export_dot(doc: pio.Document, args) -> Outcome:
    if doc.kind in ("lattice", "nlo"):
        l: FiniteLattice = _nlo_of(doc).lattice
        labels = [str(i) for i in range(l.size)]
        covers = l.covers()
        _check_hasse(l.size, l.leq, covers)
    else:
        L = enumerate_stable(_omega_of(doc).base, cap=args.cap)
        labels = _sets(L.elements)
        covers = L.covers()
        _check_hasse(L.size, L.leq, covers)
    lines = _dot("hasse", labels, covers)
    return Outcome({"dot": "\n".join(lines) + "\n", "nodes": labels, "edges": sorted(covers)}, lines)


def cmd_selfcheck(args) -> Outcome:
    cfg = SelfCheckConfig(size=args.size, seed=args.seed, cap=args.cap)
    results = run_selfcheck(cfg)
    lines = []
    for r in results:
        lines.append(r.line())
        lines += [f"  {f}" for f in r.failures[:5]]
    ok = all(r.ok for r in results)
    lines.append(f"{sum(r.checked for r in results)} checks, {sum(len(r.failures) for r in results)} failures")
    report = {"suites": [{"name": r.name, "checked": r.checked, "failures": r.failures} for r in results], "ok": ok}
    return Outcome(report, lines, EXIT_OK if ok else EXIT_INVALID)


SINGLE = {
    "validate": (cmd_validate, "check structure and section stability"),
    "concepts": (cmd_concepts, "enumerate the stable sets"),
    "dual": (cmd_dual, "NLO to canonical structure, or Omega-polarity to its stable-set algebra"),
    "canonical": (cmd_canonical, "embedding diagnostics for an NLO"),
    "check-morphism": (cmd_check_morphism, "bounded morphism certificate"),
    "dual-hom": (cmd_dual_hom, "dual of a morphism or of a lattice homomorphism"),
    "maximal-covering": (cmd_maximal_covering, "maximal covering verdict"),
    "export-dot": (cmd_export_dot, "Hasse diagram in DOT"),
}


def _add_globals(parser: argparse.ArgumentParser, suppress: bool = False) -> None:
    # subparsers use SUPPRESS so flags given before the subcommand survive
    def pick(value: Any) -> Any:
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--cap", type=int, default=pick(DEFAULT_CAP), help="maximum size of an enumerated lattice")
    parser.add_argument("--seed", type=int, default=pick(0), help="seed for sampled checks")
    parser.add_argument("--format", choices=("text", "json"), default=pick("text"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polarities", description="Omega-polarities and their stable-set algebras")
    _add_globals(parser)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in SINGLE.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file")
        _add_globals(sp, suppress=True)
    sp = sub.add_parser("sum", help="direct sum with product-isomorphism check")
    sp.add_argument("files", nargs="+")
    _add_globals(sp, suppress=True)
    sp = sub.add_parser("selfcheck", help="run the invariant suites")
    sp.add_argument("--size", type=int, default=3)
    _add_globals(sp, suppress=True)
    return parser


def _render(outcome: Outcome, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(outcome.report, indent=2) + "\n"
    return "\n".join(outcome.lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "selfcheck":
            outcome = cmd_selfcheck(args)
        elif args.command == "sum":
            outcome = cmd_sum([pio.load(f) for f in args.files], args)
        else:
            fn, _ = SINGLE[args.command]
            outcome = fn(pio.load(args.file), args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except PolarityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(_render(outcome, args.format))
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())
