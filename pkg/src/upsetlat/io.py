"""Line-oriented text formats and Graphviz DOT export.

Poset / lattice::

    # comment
    poset fig2_x          (or: lattice <name>)
    elems a b c
    le a b                (a <= b; the closure is taken automatically)
    le c b

Fuzzy up-set::

    fuzzy mu
    domain x.poset        (paths are relative to this file)
    codomain l.lattice
    map a {a,b}

Monotonic operator::

    monop G
    on x.poset
    assign a {a,c}
    assign b {}

Element order is the order of the ``elems`` lines; the order of ``le``,
``map`` and ``assign`` lines does not matter.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .errors import LatticeError, ParseError
from .fuzzy import FuzzyUpSet
from .lattice import Lattice, lattice_from_poset
from .poset import Poset, validate_poset
from .quotient import MonotonicOperator

HEADERS = ("poset", "lattice", "fuzzy", "monop")


def _lines(text: str) -> Iterable[tuple[int, list[str], str]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split(), line


def split_braced(text: str) -> list[str]:
    """``"{a,{b},c}" -> ["a", "{b}", "c"]``; commas inside nested braces are kept."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"expected a braced set, got {text!r}")
    body = text[1:-1]
    out, depth, cur = [], 0, []
    for ch in body:
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
            continue
        depth += (ch == "{") - (ch == "}")
        if depth < 0:
            raise ParseError(f"unbalanced braces in {text!r}")
        cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced braces in {text!r}")
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    if any(not t for t in out):
        raise ParseError(f"empty element in {text!r}")
    return out


def parse_poset_text(text: str, expect: str | None = None) -> tuple[str, Poset]:
    """Parse one poset/lattice document; returns ``(kind, poset)``."""
    kind = name = None
    elems: list[str] = []
    pairs: list[tuple[str, str]] = []
    for no, tok, _ in _lines(text):
        head = tok[0]
        if head in ("poset", "lattice"):
            if kind is not None:
                raise ParseError(f"line {no}: second header in one document")
            if len(tok) != 2:
                raise ParseError(f"line {no}: expected '{head} <name>'")
            kind, name = head, tok[1]
        elif kind is None:
            raise ParseError(f"line {no}: missing 'poset' or 'lattice' header")
        elif head == "elems":
            elems.extend(tok[1:])
        elif head == "le":
            if len(tok) != 3:
                raise ParseError(f"line {no}: expected 'le <a> <b>'")
            pairs.append((tok[1], tok[2]))
        else:
            raise ParseError(f"line {no}: unknown directive {head!r}")
    if kind is None:
        raise ParseError("empty document")
    if expect and kind != expect and not (expect == "poset" and kind == "lattice"):
        raise ParseError(f"expected a {expect} document, found {kind}")
    if not elems:
        raise ParseError("no elements declared")
    try:
        return kind, validate_poset(elems, pairs, name)
    except LatticeError as exc:
        raise ParseError(str(exc)) from exc


def parse_lattice_text(text: str) -> Lattice:
    """Parse and run the lattice check (raises :class:`NotALattice`)."""
    _, P = parse_poset_text(text)
    return lattice_from_poset(P)


def load_poset(path: str | Path) -> Poset:
    return parse_poset_text(_read(path))[1]


def load_lattice(path: str | Path) -> Lattice:
    return parse_lattice_text(_read(path))


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def dump_poset(P: Poset, kind: str = "poset", name: str | None = None) -> str:
    out = [f"{kind} {name or P.name or kind}", "elems " + " ".join(P.names)]
    out += [f"le {a} {b}" for a, b in P.cover_pairs()]
    return "\n".join(out) + "\n"


def dump_lattice(L: Lattice, name: str | None = None) -> str:
    return dump_poset(L.order, "lattice", name)


def _load_ref(base: Path, ref: str, kind: str):
    path = (base / ref) if not Path(ref).is_absolute() else Path(ref)
    return load_lattice(path) if kind == "lattice" else load_poset(path)


def load_fuzzy(path: str | Path) -> FuzzyUpSet:
    base = Path(path).parent
    name = domain = codomain = None
    mapping: dict[str, str] = {}
    for no, tok, _ in _lines(_read(path)):
        head = tok[0]
        if head == "fuzzy" and len(tok) == 2:
            name = tok[1]
        elif head == "domain" and len(tok) == 2:
            domain = _load_ref(base, tok[1], "poset")
        elif head == "codomain" and len(tok) == 2:
            codomain = _load_ref(base, tok[1], "lattice")
        elif head == "map" and len(tok) == 3:
            if tok[1] in mapping:
                raise ParseError(f"line {no}: {tok[1]} mapped twice")
            mapping[tok[1]] = tok[2]
        else:
            raise ParseError(f"line {no}: cannot parse {' '.join(tok)!r}")
    if name is None or domain is None or codomain is None:
        raise ParseError("fuzzy file needs 'fuzzy', 'domain' and 'codomain' lines")
    try:
        return FuzzyUpSet.from_mapping(domain, codomain, mapping, name)
    except (ValueError, KeyError) as exc:
        raise ParseError(str(exc)) from exc


def dump_fuzzy(mu: FuzzyUpSet, domain_ref: str, codomain_ref: str) -> str:
    out = [f"fuzzy {mu.name or 'mu'}", f"domain {domain_ref}", f"codomain {codomain_ref}"]
    out += [f"map {x} {p}" for x, p in mu.as_dict().items()]
    return "\n".join(out) + "\n"


def parse_operator_text(text: str, carrier_loader) -> MonotonicOperator:
    name = carrier = None
    mapping: dict[str, list[str]] = {}
    for no, tok, line in _lines(text):
        head = tok[0]
        if head == "monop" and len(tok) == 2:
            name = tok[1]
        elif head == "on" and len(tok) == 2:
            carrier = carrier_loader(tok[1])
        elif head == "assign" and len(tok) >= 3:
            x = tok[1]
            if x in mapping:
                raise ParseError(f"line {no}: {x} assigned twice")
            rest = line.split(None, 2)[2]
            mapping[x] = split_braced(rest)
        else:
            raise ParseError(f"line {no}: cannot parse {line!r}")
    if name is None or carrier is None:
        raise ParseError("operator file needs 'monop' and 'on' lines")
    try:
        return MonotonicOperator.from_mapping(carrier, mapping, name)
    except (ValueError, KeyError) as exc:
        raise ParseError(str(exc)) from exc


def load_operator(path: str | Path) -> MonotonicOperator:
    base = Path(path).parent
    return parse_operator_text(_read(path), lambda ref: _load_ref(base, ref, "poset"))


def dump_operator(G: MonotonicOperator, carrier_ref: str) -> str:
    X = G.carrier
    out = [f"monop {G.name or 'G'}", f"on {carrier_ref}"]
    out += [f"assign {x} {X.label(a)}" for x, a in zip(X.names, G.assign)]
    return "\n".join(out) + "\n"


def split_documents(text: str) -> list[str]:
    """Split concatenated documents at their header lines."""
    docs: list[list[str]] = []
    for raw in text.splitlines():
        tok = raw.split("#", 1)[0].split()
        if tok and tok[0] in HEADERS:
            docs.append([])
        if docs:
            docs[-1].append(raw)
    return ["\n".join(d) + "\n" for d in docs]


# -- DOT -------------------------------------------------------------------


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(P: Poset, title: str | None = None, labels: dict[str, str] | None = None) -> str:
    """Hasse diagram of ``P``: cover edges, drawn bottom to top, ranked by height."""
    labels = labels or {}
    out = [f"digraph {_q(title or P.name or 'hasse')} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for nm in P.names:
        out.append(f"  {_q(nm)} [label={_q(labels.get(nm, nm))}];")
    ranks: dict[int, list[str]] = {}
    for nm, h in zip(P.names, P.heights):
        ranks.setdefault(h, []).append(nm)
    for h in sorted(ranks):
        out.append("  { rank=same; " + " ".join(_q(nm) + ";" for nm in ranks[h]) + " }")
    for a, b in P.cover_pairs():
        out.append(f"  {_q(a)} -> {_q(b)} [arrowhead=none];")
    out.append("}")
    return "\n".join(out) + "\n"
