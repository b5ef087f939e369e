"""Command-line front end.

Exit codes: 0 success or affirmative answer, 1 invalid input (not a lattice,
failed precondition), 2 unreadable or malformed file, 3 negative decision,
4 cap exceeded, 5 two independent computations disagreed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import io
from .birkhoff import represents, upset_family, upset_lattice
from .classes import class_lattice
from .errors import InternalDisagreement, LatticeError, PreconditionFailed
from .fuzzy import cut_family, cuts_are_all_upsets, image_in_m, l_mu
from .lattice import (
    graded_chain_check,
    has_dp,
    is_atomic_boolean,
    is_distributive,
    meet_irreducibles,
    satisfies_m,
)
from .poset import DEFAULT_GENERATION_CAP, DEFAULT_SIZE_CAP, enumerate_posets
from .quotient import DEFAULT_FAMILY_CAP, decide_embedding

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_NEGATIVE, EXIT_CAP, EXIT_DISAGREE = range(6)


@dataclass
class RunConfig:
    command: str
    inputs: list[str]
    cap_size: int = DEFAULT_SIZE_CAP
    cap_family: int = DEFAULT_FAMILY_CAP
    dot: bool = False
    seed: int = 0
    force: bool = False
    cap_size_given: bool = False
    out: str | None = None
    out_dir: str | None = None
    sample: int | None = None


class Report:
    """Buffered output, flushed in one write when the command finishes."""

    def __init__(self) -> None:
        self.lines: list[str] = []
        self.code = EXIT_OK

    def __call__(self, line: str = "") -> None:
        self.lines.append(line)

    def block(self, text: str) -> None:
        self.lines.extend(text.rstrip("\n").split("\n"))

    def text(self) -> str:
        return "\n".join(self.lines) + "\n" if self.lines else ""


def _yn(check) -> str:
    return "yes" if check else f"no (witness {_fmt(check.witness)})"


def _fmt(w) -> str:
    if isinstance(w, (tuple, list)):
        return "(" + ", ".join(_fmt(v) for v in w) + ")"
    return str(w)


# -- commands ----------------------------------------------------------------


def cmd_check(cfg: RunConfig, out: Report) -> None:
    L = io.load_lattice(cfg.inputs[0])
    if cfg.dot:
        out.block(io.to_dot(L.order))
        return
    out(f"lattice {L.name}: {L.n} element{'s' if L.n != 1 else ''}, bottom {L.bottom_name}, top {L.top_name}")
    if L.n == 1:
        out("trivial lattice: M(L) is empty, nothing further to check")
        return
    out("M(L): " + " ".join(meet_irreducibles(L)))
    dist = is_distributive(L)
    out(f"distributive: {_yn(dist)}")
    out(f"DP: {_yn(has_dp(L))}")
    out(f"condition (M): {_yn(satisfies_m(L))}")
    out(f"atomic boolean: {'yes' if is_atomic_boolean(L) else 'no'}")
    try:
        graded = graded_chain_check(L)
        want = len(meet_irreducibles(L)) + 1
        out(f"maximal chains have |M(L)|+1 = {want} elements: {_yn(graded)}")
    except PreconditionFailed:
        out("maximal chains: not checked (representability hypotheses fail)")
    rep = represents(L, cfg.cap_size)
    if rep.representable:
        out("representable: yes, L is isomorphic to the up-sets of M(L) via")
        width = max(len(p) for p in L.names)
        for p, u in rep.mapping.items():
            out(f"  {p:<{width}} -> {u}")
    else:
        out(f"representable: no, {rep.reason}")


def cmd_upsets(cfg: RunConfig, out: Report) -> None:
    X = io.load_poset(cfg.inputs[0])
    fam = upset_family(X, cfg.cap_size)
    if cfg.dot:
        out.block(io.to_dot(upset_lattice(X, cfg.cap_size).order, f"F({X.name})"))
        return
    for label in fam.labels():
        out(label)


def cmd_birkhoff(cfg: RunConfig, out: Report) -> None:
    L = io.load_lattice(cfg.inputs[0])
    rep = represents(L, cfg.cap_size)
    if cfg.dot:
        out.block(io.to_dot(rep.upset_lattice.order, f"F(M({L.name}))"))
    else:
        M = rep.base
        out(f"M({L.name}) = " + M.label(M.full_mask) + f" with covers {_covers(M)}")
        out(f"|F_M(L)| = {rep.upset_lattice.n}, |L| = {L.n}")
        if rep.representable:
            out("L is isomorphic to F_M(L):")
            for p, u in rep.mapping.items():
                out(f"  {p} -> {u}")
        else:
            out(f"L is not isomorphic to F_M(L): {rep.reason}")
    if not rep.representable:
        out.code = EXIT_NEGATIVE


def _covers(P) -> str:
    pairs = P.cover_pairs()
    return ", ".join(f"{a}<{b}" for a, b in pairs) if pairs else "none"


def cmd_cuts(cfg: RunConfig, out: Report) -> None:
    mu = io.load_fuzzy(cfg.inputs[0])
    sub = l_mu(mu)
    if cfg.dot:
        out.block(io.to_dot(sub.order, f"L^{mu.name}"))
        return
    fam = cut_family(mu)
    out(f"fuzzy up-set {mu.name}: " + ", ".join(f"{x}->{v}" for x, v in mu.as_dict().items()))
    for p, u in fam.cuts.items():
        out(f"  cut at {p}: {u}")
    out("distinct cuts: " + " ".join(fam.distinct_cuts.labels()))
    out("L^mu: " + " ".join(sub.names))
    verdict = cuts_are_all_upsets(mu, cfg.cap_size)
    out(f"cuts are exactly the up-sets of the domain: {_yn(verdict)}")
    if verdict:
        out(f"every value lies in M(L^mu): {_yn(image_in_m(mu))}")
    else:
        out.code = EXIT_NEGATIVE


def cmd_embed(cfg: RunConfig, out: Report) -> None:
    L0 = io.load_lattice(cfg.inputs[0])
    L = io.load_lattice(cfg.inputs[1])
    v = decide_embedding(L0, L, cfg.cap_family)
    if not v.embeds:
        out(f"DoesNotEmbed: {L0.name} is not in E({L.name})")
        out.code = EXIT_NEGATIVE
        return
    G, fam = v.operator, v.family
    if cfg.dot:
        out.block(io.to_dot(fam.lattice.order, f"S_G in F(M({L.name}))"))
    else:
        out(f"Embeds: {L0.name} is in E({L.name})")
        out("M(L) = " + v.base.label(v.base.full_mask) + f" with covers {_covers(v.base)}")
        out("S_G = " + " ".join(fam.labels()))
        out("L0 -> up-sets of M(L)/G:")
        for a, t in v.iso.items():
            out(f"  {a} -> {t}")
        out("direct embedding L0 -> L: " + ", ".join(f"{a}->{b}" for a, b in v.direct_map.items()))
    if cfg.out:
        op_path = Path(cfg.out)
        base_path = op_path.with_suffix(".poset")
        base_ref = base_path.name
        base_path.write_text(io.dump_poset(v.base, name=v.base.name or "M"), encoding="utf-8")
        op_path.write_text(io.dump_operator(G, base_ref), encoding="utf-8")
        if not cfg.dot:
            out(f"wrote {op_path} and {base_path}")
    elif not cfg.dot:
        out("witness operator:")
        out.block(io.dump_operator(G, "M.poset"))


def cmd_hql(cfg: RunConfig, out: Report) -> None:
    L = io.load_lattice(cfg.inputs[0])
    cl = class_lattice(L, cfg.cap_family, force=cfg.force)
    dot = io.to_dot(cl.lattice.order, f"H({L.name})", _class_labels(cl))
    if not cfg.dot:
        out(f"{len(cl)} classes")
        for name, c in zip(cl.lattice.names, cl.classes):
            out(f"  {name}: " + "{" + ", ".join(c.family.labels()) + "}")
    out.block(dot)


def _class_labels(cl) -> dict[str, str]:
    return {nm: "{" + ",".join(c.family.labels()) + "}" for nm, c in zip(cl.lattice.names, cl.classes)}


def cmd_gen(cfg: RunConfig, out: Report) -> None:
    n = int(cfg.inputs[0])
    cap = cfg.cap_size if cfg.cap_size_given else DEFAULT_GENERATION_CAP
    posets = list(enumerate_posets(n, cap))
    if cfg.sample is not None:
        rng = np.random.default_rng(cfg.seed)
        k = min(cfg.sample, len(posets))
        picks = sorted(rng.choice(len(posets), size=k, replace=False).tolist())
        posets = [posets[i] for i in picks]
    docs = [io.to_dot(P) if cfg.dot else io.dump_poset(P) for P in posets]
    if cfg.out_dir:
        d = Path(cfg.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        ext = ".dot" if cfg.dot else ".poset"
        for P, doc in zip(posets, docs):
            (d / f"{P.name}{ext}").write_text(doc, encoding="utf-8")
        out(f"wrote {len(docs)} files to {d}")
        return
    out(f"# {len(posets)} posets on {n} elements, one per isomorphism class")
    for doc in docs:
        out()
        out.block(doc)


COMMANDS = {
    "check": (cmd_check, ["lattice"], "lattice predicates and the representation verdict"),
    "upsets": (cmd_upsets, ["poset"], "list all up-sets of a poset"),
    "birkhoff": (cmd_birkhoff, ["lattice"], "compare L with the up-set lattice of M(L)"),
    "cuts": (cmd_cuts, ["fuzzy"], "cut family of a fuzzy up-set"),
    "embed": (cmd_embed, ["l0", "l"], "decide whether L0 embeds into L"),
    "hql": (cmd_hql, ["lattice"], "lattice of monotonic-operator classes on M(L)"),
    "gen": (cmd_gen, ["n"], "emit one poset per isomorphism class on n elements"),
}


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-size", type=_positive, default=None, help="largest poset to enumerate over")
    common.add_argument("--cap-family", type=_positive, default=DEFAULT_FAMILY_CAP,
                        help="largest M(L) for sublattice enumeration")
    common.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of text")
    common.add_argument("--seed", type=int, default=0, help="seed for random sampling")
    parser = argparse.ArgumentParser(prog="upsetlat", description=__doc__.split("\n")[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, args, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_, parents=[common])
        for a in args:
            p.add_argument(a)
        if name == "hql":
            p.add_argument("--force", action="store_true", help="skip the distributivity requirement")
        if name == "embed":
            p.add_argument("--out", help="write the witness operator here (and M(L) next to it)")
        if name == "gen":
            p.add_argument("--out-dir", help="write one file per poset into this directory")
            p.add_argument("--sample", type=_positive, help="emit a seeded random sample of this size")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    func, arg_names, _ = COMMANDS[ns.command]
    cfg = RunConfig(
        ns.command,
        [getattr(ns, a) for a in arg_names],
        ns.cap_size or DEFAULT_SIZE_CAP,
        ns.cap_family,
        ns.dot,
        ns.seed,
        getattr(ns, "force", False),
        ns.cap_size is not None,
        getattr(ns, "out", None),
        getattr(ns, "out_dir", None),
        getattr(ns, "sample", None),
    )
    out = Report()
    try:
        func(cfg, out)
    except InternalDisagreement as exc:
        sys.stdout.write(out.text())
        print(f"internal disagreement: {exc}", file=sys.stderr)
        for leg, value in exc.legs.items():
            print(f"  {leg}: {value!r}", file=sys.stderr)
        return EXIT_DISAGREE
    except LatticeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(out.text())
    return out.code


if __name__ == "__main__":
    sys.exit(main())
