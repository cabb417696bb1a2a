"""Command-line interface: count, enumerate, map, label, word and verify.

Exit codes: 0 success, 1 verification or labeling failure, 2 parse error,
3 input that parses but is not valid for the request.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence, TypeVar

from .bijection import BijectionError, format_word, parse_word, tree_of_word, word_of
from .caterpillar import (
    CaterpillarError,
    caterpillar_member,
    enumerate_caterpillar_words,
    tree_of_caterpillar_word,
    word_stats,
)
from .compositions import (
    CompositionError,
    asym_multinomial,
    check_balanced,
    format_composition,
    is_reverse_catalan,
    multinomial,
    parse_composition,
)
from .ones_case import OnesError, phi, rho
from .parking import ParkingError, ParkingFunction, ParkingSyntaxError, enumerate_cpf, format_pf, is_cpf, parse_pf
from .patterns import PatternError, avoids, parse_pattern
from .slide_rules import OMEGA, PSI, SlideLabelingFailure, SlideRule, enumerate_slide_set, is_member, slide_labeling
from .trees import TreeError, export_dot, internal_nodes, leaf_name, leaves, parse_tree, serialize_tree
from .verify import configured_max_n, mutated_labeling, run_suite

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INVALID = 0, 1, 2, 3

T = TypeVar("T")


class CliExit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(text: str) -> str:
    return sys.stdin.read().strip() if text == "-" else text


def _parse(parser: Callable[[str], T], text: str, what: str) -> T:
    try:
        return parser(_read(text))
    except ParkingError as exc:
        if isinstance(exc, ParkingSyntaxError):
            raise CliExit(EXIT_PARSE, f"cannot parse {what}: {exc}") from None
        raise CliExit(EXIT_INVALID, f"invalid {what}: {exc}") from None
    except (ValueError, TreeError) as exc:
        raise CliExit(EXIT_PARSE, f"cannot parse {what}: {exc}") from None


def _balanced(text: str) -> tuple[int, ...]:
    k = _parse(parse_composition, text, "composition")
    try:
        check_balanced(k)
    except CompositionError as exc:
        raise CliExit(EXIT_INVALID, str(exc)) from None
    return k


def _record(kind: str, **fields) -> str:
    return json.dumps({"schema": SCHEMA_VERSION, "kind": kind, **fields}, sort_keys=True)


def _psi_guard(k: Sequence[int]) -> None:
    limit = configured_max_n()
    if len(k) > limit:
        raise CliExit(EXIT_INVALID, f"psi enumeration is capped at n={limit}; set SLIDEBIJ_MAX_N to raise it")


# ------------------------------------------------------------------ count

def cmd_count(args: argparse.Namespace) -> int:
    k = _parse(parse_composition, args.comp, "composition")
    if args.method == "multinomial":
        print(multinomial(k))
        return EXIT_OK
    try:
        check_balanced(k)
    except CompositionError as exc:
        raise CliExit(EXIT_INVALID, str(exc)) from None
    if args.method == "recursion":
        value = asym_multinomial(k)
    elif args.method == "slide-omega":
        value = len(enumerate_slide_set(k, OMEGA))
    elif args.method == "slide-psi":
        _psi_guard(k)
        value = len(enumerate_slide_set(k, PSI))
    else:
        value = sum(1 for _ in enumerate_cpf(k))
    print(value)
    return EXIT_OK


# -------------------------------------------------------------- enumerate

def _trees(k, rule: SlideRule) -> list:
    if rule is PSI:
        _psi_guard(k)
    return sorted(enumerate_slide_set(k, rule), key=serialize_tree)


def cmd_enumerate(args: argparse.Namespace) -> int:
    k = _balanced(args.comp)
    comp = format_composition(k)
    out: list[str] = []
    if args.set in ("slide-omega", "slide-psi"):
        rule = OMEGA if args.set == "slide-omega" else PSI
        for index, tree in enumerate(_trees(k, rule)):
            if args.format == "text":
                out.append(serialize_tree(tree))
            elif args.format == "records":
                fields = {"composition": comp, "index": index, "rule": rule.value, "tree": serialize_tree(tree)}
                if rule is OMEGA:
                    fields["word"] = format_word(word_of(tree, k))
                out.append(_record("slide-tree", **fields))
            else:
                out.append(export_dot(tree, slide_labeling(tree, k, rule), name=f"T{index}"))
    elif args.set == "cpf":
        for index, pf in enumerate(enumerate_cpf(k)):
            if args.format == "text":
                out.append(format_pf(pf))
            elif args.format == "records":
                out.append(_record("cpf", composition=comp, index=index, pf=format_pf(pf), word=format_word(pf.word)))
            else:
                tree = tree_of_word(tuple(reversed(pf.word)))
                out.append(export_dot(tree, slide_labeling(tree, k, OMEGA), name=f"T{index}"))
    else:
        rule = PSI if args.set == "cat-words-psi" else OMEGA
        for index, word in enumerate(enumerate_caterpillar_words(k, rule)):
            if args.format == "text":
                out.append(format_word(word))
            elif args.format == "records":
                tree = tree_of_caterpillar_word(word)
                out.append(_record("caterpillar-word", composition=comp, index=index, rule=rule.value,
                                   word=format_word(word), tree=serialize_tree(tree)))
            else:
                tree = tree_of_caterpillar_word(word)
                out.append(export_dot(tree, slide_labeling(tree, k, rule), name=f"T{index}"))
    for line in out:
        print(line.rstrip("\n"))
    return EXIT_OK


# -------------------------------------------------------------------- map

def _source_tree(args: argparse.Namespace) -> tuple:
    """Turn the input into (tree, composition)."""
    text = args.input
    try:
        if args.source == "cpf":
            pf = _parse(lambda s: parse_pf(s, as_word=args.as_word), text, "parking function")
            if not is_cpf(pf):
                raise CliExit(EXIT_INVALID, "parking function is not column-restricted")
            word = tuple(reversed(pf.word))
            return tree_of_word(word), pf.composition
        if args.source == "word":
            word = _parse(parse_word, text, "word")
            return tree_of_word(word), tuple(word.count(i) for i in range(1, len(word) + 1))
        if args.source == "perm":
            perm = _parse(parse_word, text, "permutation")
            return rho(perm), (1,) * len(perm)
        tree = _parse(parse_tree, text, "tree")
        n = sum(1 for x in leaves(tree) if x > 0)
        if args.comp is not None:
            k = _balanced(args.comp)
        elif args.target == "perm":
            k = (1,) * n
        else:
            raise CliExit(EXIT_INVALID, "a tree fits several compositions; pass --comp")
        if len(k) != n or not is_member(tree, k, OMEGA):
            raise CliExit(EXIT_INVALID, f"tree is not in Slide^omega({format_composition(k)})")
        return tree, k
    except (BijectionError, OnesError, CompositionError, TreeError) as exc:
        raise CliExit(EXIT_INVALID, str(exc)) from None


def cmd_map(args: argparse.Namespace) -> int:
    tree, k = _source_tree(args)
    target = args.target
    if target == "tree":
        print(serialize_tree(tree))
    elif target == "word":
        print(format_word(word_of(tree, k)))
    elif target == "cpf":
        pf = ParkingFunction(tuple(reversed(word_of(tree, k))))
        print(format_word(pf.word) if args.as_word else format_pf(pf))
    else:
        if any(part != 1 for part in k):
            raise CliExit(EXIT_INVALID, "permutations correspond to the all-ones composition only")
        print(format_word(phi(tree)))
    return EXIT_OK


# ------------------------------------------------------------------ label

def cmd_label(args: argparse.Namespace) -> int:
    tree = _parse(parse_tree, args.tree, "tree")
    k = _balanced(args.comp)
    rule = SlideRule.parse(args.rule)
    try:
        labels = slide_labeling(tree, k, rule)
    except TreeError as exc:
        raise CliExit(EXIT_INVALID, str(exc)) from None
    except SlideLabelingFailure as exc:
        print(f"no {rule.value} labeling: {exc}", file=sys.stderr)
        print(f"failed at step {exc.step}")
        return EXIT_FAIL
    if args.format == "dot":
        print(export_dot(tree, labels), end="")
        return EXIT_OK
    print(serialize_tree(tree))
    for path, node in internal_nodes(tree):
        below = ",".join(leaf_name(x) for x in sorted(leaves(node)))
        print(f"{labels[path]}\t{below}")
    return EXIT_OK


# ------------------------------------------------------------------- word

def cmd_word(args: argparse.Namespace) -> int:
    word = _parse(parse_word, args.word, "word")
    k = tuple(word.count(i) for i in range(1, len(word) + 1))
    if any(x < 1 or x > len(word) for x in word):
        raise CliExit(EXIT_INVALID, f"letters must lie in 1..{len(word)}")
    print(f"content\t{format_composition(k)}")
    print(f"reverse-catalan\t{str(is_reverse_catalan(k)).lower()}")
    for text in args.pattern or ("2-1-2", "23-~2-1"):
        pattern = _parse(parse_pattern, text, "pattern")
        try:
            print(f"avoids {pattern}\t{str(avoids(word, pattern)).lower()}")
        except PatternError as exc:
            raise CliExit(EXIT_INVALID, str(exc)) from None
    for rule in (PSI, OMEGA):
        print(f"caterpillar-{rule.value}\t{str(caterpillar_member(word, rule)).lower()}")
    for i in sorted(set(word)):
        s = word_stats(word, i)
        print(f"stats {i}\tell={s.ell} total_rep={s.total_rep} big_rep={s.big_rep} z={s.z}")
    return EXIT_OK


# ----------------------------------------------------------------- verify

def cmd_verify(args: argparse.Namespace) -> int:
    bound = configured_max_n()
    if args.max_n > bound:
        raise CliExit(EXIT_INVALID, f"--max-n {args.max_n} exceeds the bound {bound}; set SLIDEBIJ_MAX_N to raise it")
    if args.mutate:
        with mutated_labeling():
            results = run_suite(args.suite, args.max_n)
    else:
        results = run_suite(args.suite, args.max_n)
    for result in results:
        if args.format == "records":
            print(_record("check", name=result.name, passed=result.passed, checked=result.checked,
                          counterexample=result.counterexample, note=result.note))
        else:
            print(result.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ----------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slidebij", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count a slide set, CPF set or multinomial")
    p.add_argument("comp", help="composition such as 1,0,2,1, or - for stdin")
    p.add_argument("--method", default="recursion",
                   choices=("recursion", "slide-omega", "slide-psi", "cpf", "multinomial"))
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list the members of a set in canonical order")
    p.add_argument("comp")
    p.add_argument("--set", required=True,
                   choices=("slide-omega", "slide-psi", "cpf", "cat-words-psi", "cat-words-omega"))
    p.add_argument("--format", default="text", choices=("text", "records", "dot"))
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("map", help="convert between parking functions, words, trees and permutations")
    p.add_argument("--from", dest="source", required=True, choices=("cpf", "word", "tree", "perm"))
    p.add_argument("--to", dest="target", required=True, choices=("cpf", "word", "tree", "perm"))
    p.add_argument("--input", required=True, help="the object to convert, or - for stdin")
    p.add_argument("--comp", help="composition of a tree input")
    p.add_argument("--as-word", action="store_true", help="parking functions as column words")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("label", help="run the slide labeling on a tree")
    p.add_argument("tree")
    p.add_argument("comp")
    p.add_argument("--rule", default="omega", choices=("omega", "psi"))
    p.add_argument("--format", default="text", choices=("text", "dot"))
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("word", help="pattern, caterpillar and statistics report for a word")
    p.add_argument("word")
    p.add_argument("--pattern", action="append", help="pattern such as 23-1 or 23-~2-1 (repeatable)")
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("verify", help="run the exhaustive verification suites")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--suite", default="all",
                   choices=("counts", "bijection", "caterpillar", "ones", "structure", "all"))
    p.add_argument("--format", default="text", choices=("text", "records"))
    p.add_argument("--mutate", action="store_true", help="self-test: run against a broken labeling")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliExit as exc:
        print(f"slidebij: {exc}", file=sys.stderr)
        return exc.code
    except (CompositionError, CaterpillarError, PatternError, BijectionError, OnesError) as exc:
        print(f"slidebij: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
