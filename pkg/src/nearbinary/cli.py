"""Command-line interface: nearbinary SUBCOMMAND ..."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from .classes import (
    BINARY,
    NOT_IN_Z,
    RELAXATION,
    UNMATCHED,
    classify_Z,
    excluded_minor_check,
    in_D,
    in_R,
    in_Z,
)
from .core import Matroid, MatroidError, connectivity
from .fileformat import MatroidDocument, MatroidSyntaxError, ValidationError, emit, parse, split_word
from .gf2 import is_binary
from .minors import has_minor, has_minor_using
from .relaxed import RelaxedBinaryMatroid, circuit_hyperplanes, free_bases, relax, tighten
from .sums import render, tree_decompose

OK, NO, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def load(path: str) -> MatroidDocument:
    if path.startswith("catalog:"):
        name = path[len("catalog:"):]
        return MatroidDocument(name, catalog.named(name))
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse(text)


def explicit(doc: MatroidDocument) -> Matroid:
    v = doc.value
    return v.materialize() if isinstance(v, RelaxedBinaryMatroid) else v


def _words(m: Matroid, masks) -> str:
    return " ".join(m.word(x) or "-" for x in masks) or "none"


# subcommands ---------------------------------------------------------------


def cmd_show(args) -> int:
    doc = load(args.file)
    v = doc.value
    if isinstance(v, RelaxedBinaryMatroid) and v.size > 16:
        print(f"{doc.name}: {v.size} elements, rank {v.r}, lazy representation")
        print("relaxed sets: " + (" ".join(v.word(x) for x in v.relaxed) or "none"))
        return OK
    m = explicit(doc)
    conn = connectivity(m)
    print(f"{doc.name}: {m.size} elements, rank {m.r}, {len(m.bases)} bases")
    print(f"circuits: {_words(m, m.circuits())}")
    level = "3-connected" if conn.is_three_connected else "connected" if conn.is_connected else "disconnected"
    print(f"connectivity: {level}")
    if conn.witness_separation:
        side, k = conn.witness_separation
        print(f"{k}-separation: {m.word(side)} | {m.word(m.full ^ side)}")
    print(f"circuit-hyperplanes: {_words(m, circuit_hyperplanes(m))}")
    print(f"free bases: {_words(m, free_bases(m))}")
    print(f"binary: {'yes' if is_binary(m)[0] else 'no'}")
    return OK


def _excluded(m: Matroid, cls: str) -> bool:
    return excluded_minor_check(m, cls).ok


def cmd_check(args) -> int:
    doc = load(args.file)
    cls = args.cls
    if cls == "D":
        hit = in_D(doc.value)
        if hit is None:
            print(f"NO: {doc.name} is not in D")
            return NO
        v = doc.value
        print(f"YES: {doc.name} is in D with X = {v.word(hit.X)}, Y = {v.word(hit.Y)}")
        print("parent:")
        print(emit(hit.parent, f"{doc.name}-parent"), end="")
        return OK
    m = explicit(doc)
    if cls == "binary":
        ok, a = is_binary(m)
        if ok:
            print(f"YES: {doc.name} is binary")
            print(emit(a, doc.name), end="")
            return OK
        print(f"NO: {doc.name} is not binary")
        return NO
    if cls == "Z":
        ok, e = in_Z(m)
        if ok:
            res = classify_Z(m)
            print(f"YES: {doc.name} is in Z ({res.case})")
            return OK
        why = f"M\\{e} and M/{e} are both non-binary"
    elif cls == "R":
        ok, w = in_R(m)
        if ok:
            if w is None:
                print(f"YES: {doc.name} is binary, so in R")
            else:
                parent, b = w
                print(f"YES: {doc.name} is in R: tightening {m.word(b)} gives a binary matroid")
                print(emit(parent, f"{doc.name}-parent"), end="")
            return OK
        why = "no free basis tightens to a binary matroid"
    else:
        raise UsageError(f"unknown class {cls}")
    if _excluded(m, cls):
        print(f"NO: {doc.name} is an excluded minor for {cls} ({why})")
    else:
        print(f"NO: {doc.name} is not in {cls} ({why})")
    return NO


def cmd_relax(args) -> int:
    doc = load(args.file)
    v = doc.value
    subset = split_word(args.set, v.labels)
    out = v.relax(subset) if isinstance(v, RelaxedBinaryMatroid) else relax(v, subset)
    print(emit(out, f"{doc.name}-relaxed"), end="")
    return OK


def cmd_tighten(args) -> int:
    doc = load(args.file)
    m = explicit(doc)
    out = tighten(m, split_word(args.basis, m.labels))
    print(emit(out, f"{doc.name}-tightened"), end="")
    return OK


def cmd_minor(args) -> int:
    doc = load(args.file)
    m = explicit(doc)
    target = load(args.target).value if ":" in args.target or Path(args.target).exists() else catalog.named(args.target)
    if isinstance(target, RelaxedBinaryMatroid):
        target = target.materialize()
    w = has_minor_using(m, target, args.using) if args.using else has_minor(m, target)
    if w is None:
        print("none")
        return NO
    print("contract " + (" ".join(sorted(w.contract)) or "-"))
    print("delete " + (" ".join(sorted(w.delete)) or "-"))
    print("map " + " ".join(f"{k}={v}" for k, v in w.iso.items()))
    print(emit(w.apply(m), f"{args.target}-minor"), end="")
    return OK


def cmd_treedec(args) -> int:
    doc = load(args.file)
    tree = tree_decompose(explicit(doc))

    def describe(n: Matroid) -> str:
        kind = "U1,n" if n.r == 1 and len(n.bases) == n.size else \
            "Un-1,n" if n.corank == 1 and len(n.bases) == n.size else "3-connected"
        return f"{kind}, rank {n.r} on {{{' '.join(n.labels)}}}"

    print(render(tree, describe))
    return OK


def cmd_classify(args) -> int:
    doc = load(args.file)
    m = explicit(doc)
    res = classify_Z(m)
    print(f"case: {res.case}")
    if res.matched:
        print("matched: " + "; ".join(res.matched))
    if res.case == RELAXATION:
        parent = explicit(MatroidDocument("", RelaxedBinaryMatroid(res.parent)))
        print(f"relaxed set: {m.word(res.X)}")
        named = next((n for n in ("MK4", "F7", "Wheel4", "Wheel5")
                      if _iso(parent, catalog.named(n))), None)
        print(f"parent: {named}" if named else "parent:")
        print(emit(res.parent, f"{doc.name}-parent"), end="")
    elif res.case == NOT_IN_Z:
        print(f"element: {res.element}")
    elif res.case not in (BINARY, UNMATCHED):
        if res.n is not None:
            print(f"n: {res.n}")
        print("core: " + " ".join(res.core_labels))
        print("series: " + (" ".join(res.S) or "-"))
        print("parallel: " + (" ".join(res.T) or "-"))
    return NO if res.case in (NOT_IN_Z, UNMATCHED) else OK


def _iso(a: Matroid, b: Matroid) -> bool:
    from .minors import isomorphic

    return isomorphic(a, b) is not None


def cmd_catalog(args) -> int:
    if args.name:
        print(emit(catalog.named(args.name), args.name), end="")
        return OK
    for name, m in catalog.list_entries():
        print(f"{name}\t{m.size} elements\trank {m.r}")
    return OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    res = run_suite(args.suite, args.seed, args.max_elements)
    for line in res.lines():
        print(line)
    if args.out:
        from .report import write_report

        for p in write_report(res, args.out):
            print(f"wrote {p}", file=sys.stderr)
    failed = sum(not c.ok for c in res.checks)
    print(f"{len(res.checks) - failed}/{len(res.checks)} checks passed")
    return OK if failed == 0 else NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nearbinary", description="Matroids close to binary.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="matroid file, '-' for stdin, or catalog:NAME")
        sp.set_defaults(fn=fn)
        return sp

    with_file("show", cmd_show, "rank, circuits, connectivity, circuit-hyperplanes")
    sp = with_file("check", cmd_check, "membership in a class")
    sp.add_argument("--class", dest="cls", required=True, choices=["binary", "Z", "R", "D"])
    sp = with_file("relax", cmd_relax, "relax a circuit-hyperplane")
    sp.add_argument("--set", required=True)
    sp = with_file("tighten", cmd_tighten, "tighten a free basis")
    sp.add_argument("--basis", required=True)
    sp = with_file("minor", cmd_minor, "search for a minor")
    sp.add_argument("--target", required=True)
    sp.add_argument("--using")
    with_file("treedec", cmd_treedec, "canonical tree decomposition")
    with_file("classify", cmd_classify, "structural case for a member of Z")
    sp = sub.add_parser("catalog", help="list named matroids or print one")
    sp.add_argument("name", nargs="?")
    sp.set_defaults(fn=cmd_catalog)
    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", default="all",
                    choices=["axioms", "lemmas", "excluded-minors", "cross-check", "section4", "all"])
    sp.add_argument("--max-elements", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="directory for report.txt, summary.tsv and figures")
    sp.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (MatroidSyntaxError, ValidationError, MatroidError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
