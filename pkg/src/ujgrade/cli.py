"""Command-line front end.

Subcommands::

    enumerate       census of isomorphism classes for --group/--n
    verify FILE     check a grading file against the grading axioms
    normalize FILE  canonical label plus the isomorphism onto its standard grading
    check-identity  decide whether a term is a graded identity
    good-seq        decide whether mu is Jordan eta-good
    separate L1 L2  non-isomorphism certificate (or an isomorphism when none exists)

Plain output is line oriented and tab separated; --machine switches to JSON.
Exit status: 0 ok, 2 validation failure, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .classify import LabelError, census, explicit_isomorphism, labels_isomorphic, parse_label
from .grading import Grading, GradingError, apply_automorphism
from .group import FiniteAbelianGroup, GroupError
from .identities import TermError, is_graded_identity, is_jordan_good, parse_term, separating_identity, tree_str
from .jordan import JordanError, UTMatrix, slots
from .normalize import NormalizationError, canonicalize

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PARSE = 3


class ParseFailure(Exception):
    pass


class ValidationFailure(Exception):
    pass


def _group(args) -> FiniteAbelianGroup:
    if args.group is None:
        raise ParseFailure("--group is required")
    try:
        return FiniteAbelianGroup.parse(args.group)
    except GroupError as exc:
        raise ParseFailure(str(exc)) from exc


def _label(text: str, G: FiniteAbelianGroup, n: int | None):
    try:
        return parse_label(text, G, n)
    except LabelError as exc:
        raise ParseFailure(f"label {text!r}: {exc}") from exc


def _elements(text: str, G: FiniteAbelianGroup) -> tuple:
    """'1,0,1' for cyclic groups, '[1,0],[0,1]' for products."""
    try:
        return tuple(parse_label(f"E({text})", G).eta)
    except LabelError as exc:
        raise ParseFailure(f"element list {text!r}: {exc}") from exc


def _load_grading(path: str) -> Grading:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(f"{path}: {exc}") from exc
    try:
        return Grading.from_dict(data)
    except GradingError as exc:
        raise ValidationFailure(f"{path}: {exc}") from exc
    except (KeyError, TypeError, ValueError, JordanError) as exc:
        raise ParseFailure(f"{path}: malformed grading file ({exc})") from exc


def _sparse(P: UTMatrix) -> list:
    return [list(e) for e in P.to_sparse()]


def _random_automorphism(n: int, rng: random.Random) -> UTMatrix:
    entries = {}
    for i, j in slots(n):
        if i == j:
            entries[(i, j)] = Fraction(rng.choice([1, -1, 2, -2, 3]), rng.choice([1, 2, 3]))
        else:
            entries[(i, j)] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return UTMatrix(n, entries)


def _emit(args, plain: list[str], machine: dict):
    if args.machine:
        print(json.dumps(machine, sort_keys=True))
    else:
        for line in plain:
            print(line)


def cmd_enumerate(args) -> int:
    G = _group(args)
    if args.n is None or args.n < 1:
        raise ParseFailure("--n must be a positive integer")
    lines = census(G, args.n)
    _emit(
        args,
        [f"# {len(lines)} classes of {G}-gradings on UJ_{args.n}"] + [line.format() for line in lines],
        {"group": str(G), "n": args.n, "count": len(lines), "classes": [line.to_dict() for line in lines]},
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    grading = _load_grading(args.file)
    profile = " ".join(f"{grading.group.format(g)}:{d}" for g, d in grading.dimension_profile())
    _emit(
        args,
        ["pass", f"group\t{grading.group}", f"n\t{grading.n}", f"profile\t{profile}"],
        {
            "verification": "pass",
            "group": str(grading.group),
            "n": grading.n,
            "profile": [[list(g), d] for g, d in grading.dimension_profile()],
        },
    )
    return EXIT_OK


def cmd_normalize(args) -> int:
    if args.file is not None:
        grading = _load_grading(args.file)
    else:
        if args.label is None:
            raise ParseFailure("normalize needs a grading file or --label")
        G = _group(args)
        source = _label(args.label, G, args.n)
        rng = random.Random(args.seed)
        grading = apply_automorphism(
            source.grading(), _random_automorphism(source.n, rng), rng.random() < 0.5
        )
    try:
        label, iso = canonicalize(grading)
    except NormalizationError as exc:
        raise ValidationFailure(str(exc)) from exc
    _emit(
        args,
        [f"label\t{label}", f"flip\t{str(iso.flip).lower()}", f"P\t{json.dumps(_sparse(iso.P))}", "verification\tpass"],
        {"label": str(label), "flip": iso.flip, "P": _sparse(iso.P), "verification": "pass"},
    )
    return EXIT_OK


def cmd_check_identity(args) -> int:
    if args.file is not None:
        grading = _load_grading(args.file)
        G = grading.group
    else:
        if args.label is None:
            raise ParseFailure("check-identity needs --file or --label")
        G = _group(args)
        grading = _label(args.label, G, args.n).grading()
    try:
        term = parse_term(args.term, G)
        holds = is_graded_identity(grading, term)
    except TermError as exc:
        raise ParseFailure(f"term: {exc}") from exc
    verdict = "identity" if holds else "not an identity"
    _emit(args, [verdict], {"term": str(term), "identity": holds})
    return EXIT_OK


def cmd_good_seq(args) -> int:
    G = _group(args)
    eta = _elements(args.eta, G)
    mu = _elements(args.mu, G)
    if args.n is not None and args.n != len(eta) + 1:
        raise ParseFailure(f"eta has {len(eta)} entries but --n is {args.n}")
    if len(mu) > len(eta):
        raise ParseFailure("mu is longer than eta")
    good = is_jordan_good(G, eta, mu)
    _emit(args, ["good" if good else "not good"], {"good": good})
    return EXIT_OK


def cmd_separate(args) -> int:
    G = _group(args)
    L1, L2 = _label(args.label1, G, args.n), _label(args.label2, G, args.n)
    try:
        isomorphic = labels_isomorphic(L1, L2)
    except LabelError as exc:
        raise ParseFailure(str(exc)) from exc
    if isomorphic:
        iso = explicit_isomorphism(L1, L2)
        _emit(
            args,
            ["isomorphic", f"flip\t{str(iso.flip).lower()}", f"P\t{json.dumps(_sparse(iso.P))}", "verification\tpass"],
            {"isomorphic": True, "flip": iso.flip, "P": _sparse(iso.P), "verification": "pass"},
        )
        return EXIT_OK
    sep = separating_identity(L1, L2)
    if not sep.verify():
        raise ValidationFailure("separating identity failed re-verification")
    _emit(
        args,
        [
            "not isomorphic",
            f"kind\t{sep.kind}",
            f"holds_in\t{sep.holds_in}",
            f"fails_in\t{sep.fails_in}",
            f"monomials\t{len(sep.term.monomials)}",
            f"term\t{sep.term}",
            "verification\tpass",
        ],
        {
            "isomorphic": False,
            "kind": sep.kind,
            "holds_in": str(sep.holds_in),
            "fails_in": str(sep.fails_in),
            "term": [[tree_str(t), str(c)] for t, c in sep.term.monomials.items()],
            "verification": "pass",
        },
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="group literal such as Z4 or Z2xZ2")
    common.add_argument("--n", type=int, help="matrix size")
    common.add_argument("--machine", action="store_true", help="JSON output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized round trips")

    parser = argparse.ArgumentParser(prog="ujgrade", description="Gradings on upper triangular Jordan algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list one canonical label per class")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="verify a grading file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("normalize", parents=[common], help="canonical label and isomorphism")
    p.add_argument("file", nargs="?")
    p.add_argument("--label", help="normalize a randomly scrambled copy of this label's grading")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("check-identity", parents=[common], help="graded identity test")
    p.add_argument("--file")
    p.add_argument("--label")
    p.add_argument("--term", required=True, help="e.g. 'assoc(x1:0, x2:0, x3:1)'")
    p.set_defaults(func=cmd_check_identity)

    p = sub.add_parser("good-seq", parents=[common], help="Jordan eta-good test")
    p.add_argument("--eta", required=True)
    p.add_argument("--mu", required=True)
    p.set_defaults(func=cmd_good_seq)

    p = sub.add_parser("separate", parents=[common], help="certificate separating two labels")
    p.add_argument("label1")
    p.add_argument("label2")
    p.set_defaults(func=cmd_separate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationFailure as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
