"""Exhaustive verification suites over small n, each with a brute-force oracle.

Every check returns a :class:`CheckResult` carrying the number of objects it
examined and the first counterexample it met, so a failing run says what broke.
"""

from __future__ import annotations

import contextlib
import os
import time
from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Callable, Iterator

from . import slide_rules
from .bijection import big_pi, big_sigma, d_omega_parts, format_word, last, tree_of_word, word_of, word_steps
from .caterpillar import caterpillar_member, carries_word
from .compositions import (
    asym_multinomial,
    compositions,
    format_composition,
    is_right_justified,
    maxzero,
    multinomial,
    reverse_catalan_compositions,
)
from .ones_case import phi, rho
from .parking import enumerate_cpf, is_cpf, parse_pf
from .patterns import avoids_212, avoids_23bar2_1, earliest_231, multiset_permutations
from .slide_rules import OMEGA, PSI, enumerate_slide_set, is_member, labeling_order, slide_labeling
from .trees import (
    FlatTree,
    canonicalize,
    enumerate_trivalent,
    internal_nodes,
    is_caterpillar,
    leaf_path,
    leaves,
    min_leaf,
    node_at,
    serialize_tree,
)

DEFAULT_MAX_N = 7
# Exhaustive membership and lemma checks walk all (2n+1)!! trees or all PSI members.
MEMBERSHIP_MAX_N = 5
# Slide^psi grows like the multinomial; every composition of 7 together is 7^7 trees.
COUNTS_MAX_N = 6
STRUCTURE_MAX_N = 5
SUITES = ("counts", "bijection", "caterpillar", "ones", "structure")


def configured_max_n() -> int:
    """Upper bound for --max-n; the SLIDEBIJ_MAX_N environment variable overrides it."""
    value = os.environ.get("SLIDEBIJ_MAX_N")
    return int(value) if value else DEFAULT_MAX_N


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int
    counterexample: str | None = None
    seconds: float = 0.0
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name}: {self.checked} checked in {self.seconds:.2f}s"
        if self.note:
            out += f" ({self.note})"
        if self.counterexample:
            out += f"; counterexample: {self.counterexample}"
        return out


class _Tally:
    """Counts cases and keeps the first failure."""

    def __init__(self) -> None:
        self.checked = 0
        self.failure: str | None = None

    def expect(self, ok: bool, describe: Callable[[], str]) -> bool:
        self.checked += 1
        if not ok and self.failure is None:
            self.failure = describe()
        return ok


def _run(name: str, body: Callable[[_Tally], str | None]) -> CheckResult:
    tally = _Tally()
    start = time.perf_counter()
    try:
        note = body(tally) or ""
    except Exception as exc:  # a crash inside a check is a failed check
        tally.failure = tally.failure or f"{type(exc).__name__}: {exc}"
        note = "aborted"
    return CheckResult(name, tally.failure is None, tally.checked, tally.failure,
                       time.perf_counter() - start, note)


def _k(k) -> str:
    return f"k=({format_composition(k)})"


def _all_compositions(max_n: int, start: int = 0) -> Iterator[tuple[int, ...]]:
    for n in range(start, max_n + 1):
        yield from compositions(n)


def _rc_compositions(max_n: int, start: int = 0) -> Iterator[tuple[int, ...]]:
    for n in range(start, max_n + 1):
        yield from reverse_catalan_compositions(n)


# ------------------------------------------------------------------ counts

def check_known_values() -> CheckResult:
    def body(t: _Tally) -> None:
        for k, want in (((1, 0, 2, 1), 8), ((0, 1, 2, 1), 12)):
            got = asym_multinomial(k)
            t.expect(got == want, lambda: f"asym {_k(k)} = {got}, want {want}")
        for n in range(0, 11):
            got = asym_multinomial((1,) * n)
            t.expect(got == factorial(n), lambda: f"asym of {n} ones = {got}")
            top = (0,) * (n - 1) + (n,) if n else ()
            got = asym_multinomial(top)
            t.expect(got == 1, lambda: f"asym {_k(top)} = {got}")
    return _run("known values", body)


def check_slide_counts(max_n: int) -> CheckResult:
    top = min(max_n, COUNTS_MAX_N)

    def body(t: _Tally) -> str | None:
        for k in _all_compositions(top):
            omega = enumerate_slide_set(k, OMEGA)
            psi = enumerate_slide_set(k, PSI)
            want = asym_multinomial(k)
            t.expect(len(omega) == want, lambda: f"|Slide^omega {_k(k)}| = {len(omega)}, want {want}")
            t.expect(len(psi) == multinomial(k), lambda: f"|Slide^psi {_k(k)}| = {len(psi)}, want {multinomial(k)}")
            cpf = sum(1 for _ in enumerate_cpf(k))
            t.expect(cpf == want, lambda: f"|CPF {_k(k)}| = {cpf}, want {want}")
            t.expect(omega <= psi, lambda: f"Slide^omega {_k(k)} not inside Slide^psi")
        return f"n <= {top}" if top < max_n else None
    return _run("counting identities", body)


def check_membership(max_n: int) -> CheckResult:
    top = min(max_n, MEMBERSHIP_MAX_N)

    def body(t: _Tally) -> str | None:
        for n in range(top + 1):
            trees = enumerate_trivalent(n)
            flats = [(tree, FlatTree(tree)) for tree in trees]
            for k in compositions(n):
                for rule in (OMEGA, PSI):
                    filtered = {tree for tree, flat in flats if is_member(flat, k, rule)}
                    generated = enumerate_slide_set(k, rule)
                    t.expect(filtered == generated, lambda: _set_diff(
                        f"{rule.value} {_k(k)}", filtered, generated))
        return f"n <= {top}" if top < max_n else None
    return _run("membership equals generation", body)


def _set_diff(what: str, labeled: set, generated: set) -> str:
    extra = sorted(map(serialize_tree, labeled - generated))[:1]
    missing = sorted(map(serialize_tree, generated - labeled))[:1]
    return f"{what}: accepted but not generated {extra}, generated but rejected {missing}"


# --------------------------------------------------------------- bijection

def check_bijection(max_n: int) -> CheckResult:
    def body(t: _Tally) -> None:
        for k in _rc_compositions(max_n, start=1):
            target = enumerate_slide_set(k, OMEGA)
            seen: dict = {}
            for j, smaller in d_omega_parts(k):
                for tree in enumerate_slide_set(smaller, OMEGA):
                    image = big_sigma(tree, k, j)
                    t.expect(image in target, lambda: f"{_k(k)} j={j}: sigma({serialize_tree(tree)}) not a member")
                    t.expect(image not in seen, lambda: f"{_k(k)}: {serialize_tree(image)} hit twice")
                    seen[image] = (tree, j)
                    back, step = big_pi(image, k)
                    t.expect((back, step.j) == (tree, j),
                             lambda: f"{_k(k)} j={j}: pi(sigma(T)) != T for T={serialize_tree(tree)}")
            t.expect(set(seen) == target, lambda: f"{_k(k)}: images cover {len(seen)} of {len(target)} trees")
            for tree in target:
                back, step = big_pi(tree, k)
                t.expect(big_sigma(back, k, step.j) == tree,
                         lambda: f"{_k(k)}: sigma(pi(T)) != T for T={serialize_tree(tree)}")
    return _run("sigma/pi bijection", body)


WORKED_CPF = "1:7,2:5,3:7,4:4,5:8,6:5,7:3,8:7"
WORKED_CHAIN = ("73584757", "6357465", "524635", "41352", "3124", "312", "21", "1", "")
WORKED_TREE = "(a,b,((c,((2,4),((3,5),8))),(1,(6,7))))"
WORKED_K = (0, 0, 1, 1, 2, 0, 3, 1)


def check_worked_example() -> CheckResult:
    def body(t: _Tally) -> None:
        pf = parse_pf(WORKED_CPF)
        t.expect(is_cpf(pf), lambda: "the worked parking function is not column-restricted")
        t.expect(format_word(pf.word) == "75748537", lambda: f"parking word {format_word(pf.word)}")
        word = tuple(reversed(pf.word))
        chain = (format_word(word),) + tuple(format_word(w) for w, _ in word_steps(word))
        t.expect(chain == WORKED_CHAIN, lambda: f"chain {chain}")
        tree = tree_of_word(word)
        t.expect(is_member(tree, WORKED_K, OMEGA), lambda: "final tree is not an omega member")
        t.expect(serialize_tree(tree) == WORKED_TREE, lambda: f"final tree {serialize_tree(tree)}")
        t.expect(word_of(tree, WORKED_K) == word, lambda: f"word_of gives {format_word(word_of(tree, WORKED_K))}")
    return _run("worked example", body)


def check_cpf_words(max_n: int) -> CheckResult:
    def body(t: _Tally) -> None:
        for k in _all_compositions(max_n):
            from_cpf = {tuple(reversed(pf.word)) for pf in enumerate_cpf(k)}
            from_trees = set()
            for tree in enumerate_slide_set(k, OMEGA):
                word = word_of(tree, k)
                t.expect(word not in from_trees, lambda: f"{_k(k)}: two trees share word {format_word(word)}")
                from_trees.add(word)
                if word:
                    t.expect(word[-1] == last(tree, k),
                             lambda: f"{_k(k)}: last(T) differs from final letter of {format_word(word)}")
            t.expect(from_cpf == from_trees, lambda: (
                f"{_k(k)}: only from CPFs {sorted(map(format_word, from_cpf - from_trees))[:1]}, "
                f"only from trees {sorted(map(format_word, from_trees - from_cpf))[:1]}"))
    return _run("CPF words equal slide words", body)


# -------------------------------------------------------------- caterpillar

def check_caterpillars(max_n: int) -> CheckResult:
    def body(t: _Tally) -> None:
        sample = (6, 6, 6, 2, 2, 4)
        t.expect(carries_word(sample, PSI) and not carries_word(sample, OMEGA),
                 lambda: "Tree(666224) should be a psi member and not an omega member")
        t.expect(caterpillar_member(sample, PSI) and not caterpillar_member(sample, OMEGA),
                 lambda: "predicate misjudges 666224")
        for k in _rc_compositions(max_n, start=1):
            rjust = is_right_justified(k)
            for word in multiset_permutations(k):
                avoid = avoids_212(word) and avoids_23bar2_1(word)
                for rule in (PSI, OMEGA):
                    oracle = carries_word(word, rule)
                    t.expect(caterpillar_member(word, rule) == oracle,
                             lambda: f"{rule.value} {format_word(word)}: predicate != brute force {oracle}")
                    if rjust:
                        t.expect(avoid == oracle, lambda: f"right-justified {_k(k)}, {format_word(word)}")
            caterpillars = [tree for tree in enumerate_slide_set(k, OMEGA) if is_caterpillar(tree)]
            words = [w for w in multiset_permutations(k) if caterpillar_member(w, OMEGA)]
            t.expect(len(caterpillars) == len(words), lambda: f"{_k(k)}: {len(caterpillars)} caterpillars, {len(words)} words")
    return _run("caterpillar characterizations", body)


# --------------------------------------------------------------------- ones

def check_ones(max_n: int) -> CheckResult:
    def body(t: _Tally) -> None:
        for n in range(1, max_n + 1):
            ones = (1,) * n
            members = enumerate_slide_set(ones, OMEGA)
            images = set()
            for perm in permutations(range(1, n + 1)):
                tree = rho(perm)
                images.add(tree)
                t.expect(phi(tree) == perm, lambda: f"phi(rho({format_word(perm)})) = {format_word(phi(tree))}")
                avoider = earliest_231(perm) is None
                t.expect(is_caterpillar(tree) == avoider,
                         lambda: f"rho({format_word(perm)}) caterpillar={is_caterpillar(tree)}, 23-1 avoider={avoider}")
            t.expect(images == members, lambda: f"n={n}: rho image differs from Slide^omega(1..1)")
            for tree in members:
                word = phi(tree)
                t.expect(rho(word) == tree, lambda: f"rho(phi(T)) != T for T={serialize_tree(tree)}")
                if not is_caterpillar(tree):
                    t.expect(earliest_231(word) is not None,
                             lambda: f"non-caterpillar {serialize_tree(tree)} reads 23-1 avoider {format_word(word)}")
    return _run("all-ones bijection", body)


def check_ones_branches(max_n: int) -> CheckResult:
    """Every leaf but the minimum slides inside its branch; pruning a branch keeps membership."""
    top = min(max_n, 6)

    def body(t: _Tally) -> str | None:
        for n in range(1, top + 1):
            ones = (1,) * n
            for tree in enumerate_slide_set(ones, OMEGA):
                labels = slide_labeling(tree, ones, OMEGA)
                where = {label: path for path, label in labels.items()}
                for path in labels:
                    branch = node_at(tree, path)
                    low = min_leaf(branch)
                    for leaf in leaves(branch):
                        if leaf < 1:
                            continue
                        # the edge a branch starts with belongs to the branch
                        inside = where[leaf][:len(path)] == path
                        t.expect(inside == (leaf != low), lambda: (
                            f"{serialize_tree(tree)}: leaf {leaf} slides {'inside' if inside else 'outside'} branch {path}"))
                    pruned = _prune(tree, path, low)
                    t.expect(is_member(pruned, (1,) * (len(list(leaves(pruned))) - 3), OMEGA),
                             lambda: f"pruning {path} of {serialize_tree(tree)} leaves the slide set")
        return f"n <= {top}" if top < max_n else None
    return _run("branch pruning", body)


def _prune(tree, path, keep: int):
    def rec(node, rest):
        if not rest:
            return keep
        idx = rest[0]
        return node[:idx] + (rec(node[idx], rest[1:]),) + node[idx + 1:]

    pruned = rec(tree, path)
    numeric = sorted(x for x in leaves(pruned) if x > 0)
    rank = {x: r for r, x in enumerate(numeric, start=1)}

    def relabel(node):
        if isinstance(node, int):
            return rank.get(node, node)
        return tuple(relabel(child) for child in node)

    return canonicalize(relabel(pruned))


# ---------------------------------------------------------------- structure

def _forks(tree, labels):
    """Vertices with three internal edges: (path of x, path of y, path of z), y >= z."""
    for path, node in internal_nodes(tree):
        kids = [path + (idx,) for idx, child in enumerate(node) if isinstance(child, tuple)]
        if len(kids) == 2:
            y, z = sorted(kids, key=lambda p: labels[p], reverse=True)
            yield path, y, z


def check_structure(max_n: int, every_composition: bool = False) -> CheckResult:
    """Fork, path and last() lemmas on every member of every slide set.

    By default only reverse-Catalan k are walked. With ``every_composition``
    the psi sets of the remaining compositions are included too; there the
    fork lemmas break, e.g. (a,b,(c,((1,3),(2,4)))) in Slide^psi(3,0,0,1).
    """
    top = min(max_n, STRUCTURE_MAX_N)
    walk = _all_compositions if every_composition else _rc_compositions

    def body(t: _Tally) -> str | None:
        for k in walk(top):
            for rule in (PSI, OMEGA):
                for tree in enumerate_slide_set(k, rule):
                    _lemmas(t, tree, k, rule)
        notes = [] if every_composition else ["reverse-Catalan k"]
        if top < max_n:
            notes.append(f"n <= {top}")
        return ", ".join(notes)
    return _run("structural lemmas" + (" (every k)" if every_composition else ""), body)


def _lemmas(t: _Tally, tree, k, rule) -> None:
    labels = slide_labeling(tree, k, rule)
    order = {path: pos for pos, path in enumerate(labeling_order(tree, k, rule))}
    show = serialize_tree(tree)
    tag = f"{rule.value} {_k(k)} {show}"
    for path, label in labels.items():
        t.expect(leaf_path(tree, label)[:len(path)] == path,
                 lambda: f"{tag}: edge {label} is off the path from leaf {label} to a")
    for x, y, z in _forks(tree, labels):
        lx, ly, lz = labels[x], labels[y], labels[z]
        t.expect((lx == ly > lz) or (ly > lx > lz), lambda: f"{tag}: fork labels x={lx} y={ly} z={lz}")
        t.expect(order[y] < order[x] < order[z], lambda: f"{tag}: fork at {x} labeled out of order")
        t.expect(min_leaf(node_at(tree, x)) in set(leaves(node_at(tree, z))),
                 lambda: f"{tag}: minimum of the branch at {x} is not in the z branch")
    if rule is not OMEGA:
        return
    for leaf in range(1, len(k) + 1):
        path = leaf_path(tree, leaf)
        vertex = path[:-1]
        node = node_at(tree, vertex)
        kids = [vertex + (idx,) for idx, child in enumerate(node) if isinstance(child, tuple)]
        if vertex and len(kids) == 1 and labels[vertex] == leaf:
            t.expect(labels[vertex] > labels[kids[0]], lambda: f"{tag}: leaf {leaf} sits at an ascent")
    if k:
        j = last(tree, k)
        t.expect(j > maxzero(k), lambda: f"{tag}: last(T)={j} is not right of maxzero")
        node = node_at(tree, leaf_path(tree, j)[:-1])
        others = [child for child in node if child != j]
        t.expect(any(isinstance(o, int) and o < j for o in others),
                 lambda: f"{tag}: last(T)={j} has no smaller sibling leaf")


# ----------------------------------------------------------------- harness

def run_suite(suite: str, max_n: int) -> list[CheckResult]:
    if suite == "all":
        return [r for name in SUITES for r in run_suite(name, max_n)]
    if suite == "counts":
        return [check_known_values(), check_slide_counts(max_n), check_membership(max_n)]
    if suite == "bijection":
        return [check_bijection(max_n), check_worked_example(), check_cpf_words(max_n)]
    if suite == "caterpillar":
        return [check_caterpillars(max_n)]
    if suite == "ones":
        return [check_ones(max_n), check_ones_branches(max_n)]
    if suite == "structure":
        return [check_structure(max_n)]
    raise ValueError(f"unknown suite {suite!r} (expected one of {', '.join(SUITES)}, all)")


@contextlib.contextmanager
def mutated_labeling() -> Iterator[None]:
    """Harness self-test: the labeling core applies the wrong rule's comparison."""
    original = slide_rules._run_labeling

    def mutant(flat, k, omega, order=None):
        return original(flat, k, not omega, order)

    slide_rules._run_labeling = mutant
    try:
        yield
    finally:
        slide_rules._run_labeling = original
