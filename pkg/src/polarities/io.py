"""JSON documents for every structure the CLI reads or writes.

Each document is an object with ``"kind"`` and ``"version": 1``.  Carriers
are ``0..size-1``; relations are lists of integer tuples.  Serialization is
canonical: fixed key order, tuples sorted, one top-level key per line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import ArityError, DimensionError, ParseError, RangeError
from .nlo import FiniteLattice, Homomorphism, OmegaNLO, canonical_structure
from .omega import OmegaPolarity, RelS, RelT, SectionIssue, validate_sections
from .polarity import Polarity

VERSION = 1
KINDS = ("polarity", "omega_polarity", "lattice", "nlo", "morphism", "hom", "sum_spec")


@dataclass(frozen=True)
class OmegaSpec:
    """An Omega-polarity as read from disk, before section stability is checked."""

    base: Polarity
    s: RelS
    t: RelT

    def issues(self) -> list[SectionIssue]:
        return validate_sections(self.base, self.s, self.t)

    def build(self) -> OmegaPolarity:
        return OmegaPolarity(self.base, self.s, self.t)

    @classmethod
    def of(cls, op: OmegaPolarity) -> "OmegaSpec":
        return cls(op.base, op.s, op.t)


@dataclass(frozen=True)
class MorphismSpec:
    source: OmegaSpec
    target: OmegaSpec | None
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    target_nlo: OmegaNLO | None = None

    def resolve(self) -> tuple[OmegaPolarity, OmegaPolarity]:
        if self.target is not None:
            return self.source.build(), self.target.build()
        return self.source.build(), canonical_structure(self.target_nlo)


@dataclass(frozen=True)
class SumSpec:
    summands: tuple[OmegaSpec, ...]
    n: int
    m: int


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Any


# parsing

def _fmt_tuple(t) -> str:
    return "(" + ",".join(str(v) for v in t) + ")"


def _need(obj: dict, key: str, kind: str):
    if key not in obj:
        raise ParseError(f"{kind} document is missing {key!r}")
    return obj[key]


def _int(v, what: str, lo: int = 0) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or v < lo:
        raise ParseError(f"{what} must be an integer >= {lo}, got {v!r}")
    return v


def _tuples(raw, width: int, bounds: list[int], what: str) -> list[tuple[int, ...]]:
    if not isinstance(raw, list):
        raise ParseError(f"{what} must be a list of tuples")
    out = []
    for t in raw:
        if not isinstance(t, list) or len(t) != width or not all(isinstance(v, int) and not isinstance(v, bool) for v in t):
            raise ParseError(f"{what} entry {t!r} is not a {width}-tuple of integers")
        if not all(0 <= v < b for v, b in zip(t, bounds)):
            raise ParseError(f"{what} tuple {_fmt_tuple(t)} is out of range for carriers {_fmt_tuple(bounds)}")
        out.append(tuple(t))
    return out


def _table(raw, k: int, arity: int, what: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or len(raw) != k**arity:
        raise ParseError(f"{what} must be a flat list of {k}**{arity} entries")
    for i, v in enumerate(raw):
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < k:
            raise ParseError(f"{what}[{i}] = {v!r} is not an element index")
    return tuple(raw)


def _map(raw, length: int, bound: int, what: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or len(raw) != length:
        raise ParseError(f"{what} must list {length} images")
    for i, v in enumerate(raw):
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < bound:
            raise ParseError(f"{what}({i}) = {v!r} is out of range")
    return tuple(raw)


def _polarity(obj: dict, kind: str) -> Polarity:
    xs = _int(_need(obj, "x_size", kind), "x_size")
    ys = _int(_need(obj, "y_size", kind), "y_size")
    pairs = _tuples(_need(obj, "relation", kind), 2, [xs, ys], "relation")
    return Polarity.from_pairs(xs, ys, pairs)


def _omega(obj: dict) -> OmegaSpec:
    kind = "omega_polarity"
    p = _polarity(obj, kind)
    n = _int(_need(obj, "n", kind), "n")
    m = _int(_need(obj, "m", kind), "m")
    s = _tuples(_need(obj, "s", kind), n + 1, [p.x_size] * n + [p.y_size], "s")
    t = _tuples(_need(obj, "t", kind), m + 1, [p.x_size] + [p.y_size] * m, "t")
    return OmegaSpec(p, RelS.from_tuples(n, p.x_size, p.y_size, s), RelT.from_tuples(m, p.x_size, p.y_size, t))


def _lattice(obj: dict) -> FiniteLattice:
    kind = "lattice"
    k = _int(_need(obj, "size", kind), "size", 1)
    key = "covers" if "covers" in obj else "order"
    pairs = _tuples(_need(obj, key, kind), 2, [k, k], key)
    return FiniteLattice.from_order(k, pairs)


def _nlo(obj: dict, base_dir: Path | None = None) -> OmegaNLO:
    kind = "nlo"
    l = _sub(_need(obj, "lattice", kind), base_dir, ("lattice",)).payload
    n = _int(_need(obj, "n", kind), "n")
    m = _int(_need(obj, "m", kind), "m")
    return OmegaNLO(l, n, _table(_need(obj, "f", kind), l.size, n, "f"), m, _table(_need(obj, "g", kind), l.size, m, "g"))


def _sub(obj, base_dir: Path | None, want: tuple[str, ...]) -> Document:
    """A nested document, inline or as a path relative to the referring file."""
    if isinstance(obj, str):
        path = (base_dir or Path(".")) / obj
        doc = load(path)
    elif isinstance(obj, dict):
        doc = from_obj(obj, base_dir)
    else:
        raise ParseError("nested document must be an object or a relative path")
    if doc.kind not in want:
        raise ParseError(f"expected a {' or '.join(want)} document, got {doc.kind}")
    return doc


def _as_omega(doc: Document) -> OmegaSpec:
    if doc.kind == "polarity":
        return OmegaSpec.of(OmegaPolarity.from_polarity(doc.payload))
    return doc.payload


def from_obj(obj: Any, base_dir: Path | None = None) -> Document:
    if not isinstance(obj, dict):
        raise ParseError("document must be a JSON object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}")
    if obj.get("version") != VERSION:
        raise ParseError(f"unsupported version {obj.get('version')!r}")
    try:
        if kind == "polarity":
            return Document(kind, _polarity(obj, kind))
        if kind == "omega_polarity":
            return Document(kind, _omega(obj))
        if kind == "lattice":
            return Document(kind, _lattice(obj))
        if kind == "nlo":
            return Document(kind, _nlo(obj, base_dir))
        if kind == "morphism":
            src = _as_omega(_sub(_need(obj, "source", kind), base_dir, ("polarity", "omega_polarity")))
            dst = None
            target_nlo = None
            if "target_nlo" in obj:
                target_nlo = _sub(obj["target_nlo"], base_dir, ("nlo",)).payload
            if "target" in obj:
                dst = _as_omega(_sub(obj["target"], base_dir, ("polarity", "omega_polarity")))
            elif target_nlo is None:
                raise ParseError("morphism needs a target or a target_nlo")
            xs = dst.base.x_size if dst else target_nlo.size
            ys = dst.base.y_size if dst else target_nlo.size
            alpha = _map(_need(obj, "alpha", kind), src.base.x_size, xs, "alpha")
            beta = _map(_need(obj, "beta", kind), src.base.y_size, ys, "beta")
            return Document(kind, MorphismSpec(src, dst, alpha, beta, target_nlo))
        if kind == "hom":
            a = _sub(_need(obj, "source", kind), base_dir, ("nlo", "lattice")).payload
            b = _sub(_need(obj, "target", kind), base_dir, ("nlo", "lattice")).payload
            size_a, size_b = a.size, b.size
            return Document(kind, Homomorphism(a, b, _map(_need(obj, "map", kind), size_a, size_b, "map")))
        if kind == "sum_spec":
            raw = _need(obj, "summands", kind)
            if not isinstance(raw, list):
                raise ParseError("summands must be a list")
            parts = tuple(_as_omega(_sub(s, base_dir, ("polarity", "omega_polarity"))) for s in raw)
            n = obj.get("n", parts[0].s.n if parts else None)
            m = obj.get("m", parts[0].t.m if parts else None)
            if n is None or m is None:
                raise ParseError("an empty sum needs explicit n and m")
            return Document(kind, SumSpec(parts, _int(n, "n"), _int(m, "m")))
    except (RangeError, DimensionError, ArityError) as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unhandled kind {kind!r}")  # pragma: no cover


def parse(text: str, base_dir: Path | None = None) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return from_obj(obj, base_dir)


def load(path) -> Document:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse(text, path.parent)


# serialization

def _polarity_obj(p: Polarity) -> dict:
    return {"x_size": p.x_size, "y_size": p.y_size, "relation": [list(t) for t in sorted(p.pairs())]}


def _omega_obj(spec: OmegaSpec) -> dict:
    out = {"kind": "omega_polarity", "version": VERSION}
    out.update(_polarity_obj(spec.base))
    out.update({
        "n": spec.s.n,
        "s": [list(t) for t in sorted(spec.s.tuples())],
        "m": spec.t.m,
        "t": [list(t) for t in sorted(spec.t.tuples())],
    })
    return out


def _lattice_obj(l: FiniteLattice) -> dict:
    return {"kind": "lattice", "version": VERSION, "size": l.size, "covers": [list(c) for c in sorted(l.covers())]}


def _nlo_obj(A: OmegaNLO) -> dict:
    return {"kind": "nlo", "version": VERSION, "lattice": _lattice_obj(A.lattice), "n": A.n, "f": list(A.f), "m": A.m, "g": list(A.g)}


def to_obj(doc: Document) -> dict:
    k, p = doc.kind, doc.payload
    if k == "polarity":
        return {"kind": k, "version": VERSION, **_polarity_obj(p)}
    if k == "omega_polarity":
        return _omega_obj(p if isinstance(p, OmegaSpec) else OmegaSpec.of(p))
    if k == "lattice":
        return _lattice_obj(p)
    if k == "nlo":
        return _nlo_obj(p)
    if k == "morphism":
        out = {"kind": k, "version": VERSION, "source": _omega_obj(p.source)}
        if p.target is not None:
            out["target"] = _omega_obj(p.target)
        if p.target_nlo is not None:
            out["target_nlo"] = _nlo_obj(p.target_nlo)
        out["alpha"] = list(p.alpha)
        out["beta"] = list(p.beta)
        return out
    if k == "hom":
        enc = lambda a: _nlo_obj(a) if isinstance(a, OmegaNLO) else _lattice_obj(a)
        return {"kind": k, "version": VERSION, "source": enc(p.source), "target": enc(p.target), "map": list(p.map)}
    if k == "sum_spec":
        return {"kind": k, "version": VERSION, "n": p.n, "m": p.m, "summands": [_omega_obj(s) for s in p.summands]}
    raise ParseError(f"unknown kind {k!r}")


def dumps(obj: dict) -> str:
    """One top-level key per line, values in compact JSON."""
    lines = [f"  {json.dumps(key)}: {json.dumps(value, separators=(', ', ': '))}" for key, value in obj.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def serialize(doc: Document) -> str:
    return dumps(to_obj(doc))


def canonical(text: str) -> str:
    return serialize(parse(text))
