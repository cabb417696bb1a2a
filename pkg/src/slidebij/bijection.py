"""Insertion maps between omega slide sets and the word encoding of slide trees.

Every map takes a tree together with its composition ``k``: edge labels are
not stored on trees, they are recomputed with the omega k-slide labeling.
Intermediate work happens on a relabeled copy whose child order matches the
labeling's paths; results are canonicalized on the way out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .compositions import (
    C_SENTINEL,
    Composition,
    CompositionError,
    as_composition,
    derive,
    maxzero,
    undo_derive,
)
from .slide_rules import OMEGA, slide_labeling, is_member
from .trees import (
    A,
    B,
    C,
    Node,
    Path,
    Tree,
    canonicalize,
    leaf_name,
    leaf_path,
    leaves,
    min_leaf,
    node_at,
)

Word = tuple[int, ...]
Labels = dict[Path, int]


class BijectionError(ValueError):
    """A precondition of an insertion or removal map does not hold."""


@dataclass(frozen=True)
class BijectionStep:
    """Which insertion map produced a tree: ``i`` is None for sigma_j."""

    j: int
    i: int | None
    before: Composition
    after: Composition

    @property
    def tag(self) -> str:
        return "SIGMA_J" if self.i is None else "SIGMA_IJ"

    def __str__(self) -> str:
        if self.i is None:
            return f"sigma_{self.j}"
        return f"sigma_{{{leaf_name(self.i)},{self.j}}}"


@dataclass(frozen=True)
class PathDecomposition:
    """Maximal strictly decreasing runs of edge labels on the a -> leaf path.

    ``branches[r]`` is the path of the off-path branch closing run ``r`` and
    ``minima[r]`` its minimal leaf.
    """

    leaf: int
    runs: tuple[tuple[int, ...], ...]
    branches: tuple[Path, ...]
    minima: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.runs)


# ---------------------------------------------------------------- helpers

def _replace(node: Node, path: Path, new: Node) -> Node:
    if not path:
        return new
    idx = path[0]
    return node[:idx] + (_replace(node[idx], path[1:], new),) + node[idx + 1:]


def _shift(tree: Tree, labels: Labels, at_least: int, delta: int) -> tuple[Tree, Labels]:
    """Shift every leaf and edge label ``>= at_least`` by ``delta``."""
    def rec(node: Node) -> Node:
        if isinstance(node, int):
            return node + delta if node >= at_least else node
        return tuple(rec(child) for child in node)

    return rec(tree), {p: (x + delta if x >= at_least else x) for p, x in labels.items()}


def _relabel(node: Node, mapping: dict[int, int]) -> Node:
    if isinstance(node, int):
        return mapping.get(node, node)
    return tuple(_relabel(child, mapping) for child in node)


def _labeled(tree: Tree, k: Sequence[int]) -> tuple[Tree, Labels]:
    tree = canonicalize(tree)
    return tree, slide_labeling(tree, k, OMEGA)


def _sprout(tree: Tree, leaf: int, new: int) -> tuple[Tree, Path]:
    """Replace ``leaf`` by a cherry ``(new, leaf)``; return the new edge's path."""
    path = leaf_path(tree, leaf)
    return _replace(tree, path, (new, leaf)), path


def _cherry(tree: Tree, leaf: int) -> tuple[Path, int]:
    """Path of the cherry holding ``leaf`` and the other leaf in it."""
    path = leaf_path(tree, leaf)
    parent = node_at(tree, path[:-1])
    if not path[:-1] or len(parent) != 2:
        raise BijectionError(f"leaf {leaf_name(leaf)} is not in a cherry")
    other = parent[1 - path[-1]]
    if not isinstance(other, int):
        raise BijectionError(f"leaf {leaf_name(leaf)} is not adjacent to another leaf")
    return path[:-1], other


# ------------------------------------------------------------ branch tools

def min2(branch: Node) -> Node:
    """Largest sub-branch containing the second-smallest leaf but not the smallest."""
    if isinstance(branch, int):
        raise BijectionError("min2 needs a branch with at least two leaves")
    first, second = sorted(leaves(branch))[:2]
    node: Node = branch
    while True:
        for child in node:
            has_second = second in leaves(child) if isinstance(child, tuple) else child == second
            if has_second:
                break
        has_first = first in leaves(child) if isinstance(child, tuple) else child == first
        if not has_first:
            return child
        node = child


def last(tree: Tree, k: Sequence[int]) -> int:
    """The leaf found by iterating min2 from the maxzero branch.

    On the base tree with ``k = ()`` this is ``c``.
    """
    z = maxzero(k)
    path = leaf_path(tree, z)
    # largest branch with min z: climb while the parent's min is still z
    depth = len(path)
    while depth > 1 and min_leaf(node_at(tree, path[:depth - 1])) == z:
        depth -= 1
    branch = node_at(tree, path[:depth])
    while not isinstance(branch, int):
        branch = min2(branch)
    return branch


def path_decomposition(tree: Tree, labels: Labels, leaf: int) -> PathDecomposition:
    """Split the edge labels on the a -> ``leaf`` path into decreasing runs."""
    path = leaf_path(tree, leaf)
    edges = [path[:t] for t in range(1, len(path))]
    if not edges:
        raise BijectionError(f"leaf {leaf_name(leaf)} hangs off the root")
    try:
        values = [labels[e] for e in edges]
    except KeyError:
        raise BijectionError("labeling does not cover the path") from None

    def off_path(vertex: Path, on: int) -> Path:
        node = node_at(tree, vertex)
        others = [idx for idx in range(len(node)) if idx != on]
        if len(others) != 1:
            raise BijectionError("path decomposition needs a trivalent tree")
        return vertex + (others[0],)

    runs: list[tuple[int, ...]] = []
    branches: list[Path] = []
    current = [values[0]]
    for t in range(1, len(values)):
        if values[t] >= values[t - 1]:
            runs.append(tuple(current))
            branches.append(off_path(edges[t - 1], path[t]))
            current = []
        current.append(values[t])
    runs.append(tuple(current))
    branches.append(off_path(edges[-1], path[-1]))
    minima = tuple(min_leaf(node_at(tree, b)) for b in branches)
    return PathDecomposition(leaf, tuple(runs), tuple(branches), minima)


def decompose(tree: Tree, k: Sequence[int], leaf: int) -> PathDecomposition:
    """Path decomposition of a canonical omega slide tree, labeling it first."""
    tree, labels = _labeled(tree, k)
    return path_decomposition(tree, labels, leaf)


# ---------------------------------------------------------- sigma_{i,j}

def _check_ij(k: Composition, i: int, j: int) -> None:
    if not maxzero(k) < i < j <= len(k) + 1:
        raise BijectionError(f"need maxzero={leaf_name(maxzero(k))} < i={i} < j={j} <= {len(k) + 1}")


def sigma_ij(tree: Tree, k: Sequence[int], i: int, j: int) -> Tree:
    """Insert a repeat of edge label ``j``, freeing the label ``i``.

    The image lies in the omega slide set of ``undo_derive(k, j, i)``.
    """
    k = as_composition(k)
    _check_ij(k, i, j)
    tree, labels = _labeled(tree, k)
    tree, labels = _shift(tree, labels, i, 1)
    dec = path_decomposition(tree, labels, j)
    m = dec.minima
    top = len(m) if m[-1] < j else len(m) - 1
    chain = m[:top]
    d = next((s for s, x in enumerate(chain) if x > i), None)
    if d is None:
        partner = i
    else:
        mapping = {chain[d]: i}
        for s in range(d, top - 1):
            mapping[chain[s + 1]] = chain[s]
        tree = _relabel(tree, mapping)
        partner = chain[top - 1]
    tree, _ = _sprout(tree, j, partner)
    return canonicalize(tree)



def sigma_ij_cases(tree: Tree, k: Sequence[int], i: int, j: int) -> Tree:
    """Three-case form of :func:`sigma_ij`, kept for cross-checking."""
    k = as_composition(k)
    _check_ij(k, i, j)
    tree, labels = _labeled(tree, k)
    tree, labels = _shift(tree, labels, i, 1)
    m = path_decomposition(tree, labels, j).minima
    l = len(m)
    if m[-1] < i or (l == 1 and i < j < m[0]) or (l > 1 and m[-2] < i < j < m[-1]):
        tree, _ = _sprout(tree, j, i)
        return canonicalize(tree)
    d = next(s for s, x in enumerate(m) if x > i)
    if m[-1] < j:
        stop = l
    elif j < m[-1]:
        stop = l - 1
    else:
        raise BijectionError("case analysis failed")
    mapping = {m[d]: i}
    for s in range(d + 1, stop):
        mapping[m[s]] = m[s - 1]
    tree = _relabel(tree, mapping)
    tree, _ = _sprout(tree, j, m[stop - 1])
    return canonicalize(tree)


def pi_ij(tree: Tree, k: Sequence[int], i: int, j: int) -> Tree:
    """Inverse of :func:`sigma_ij`; ``k`` is the composition of ``tree``."""
    k = as_composition(k)
    if k[j - 1] < 2 or maxzero(k) != i:
        raise BijectionError(f"tree is not in the image of sigma_{{{i},{j}}}")
    tree, labels = _labeled(tree, k)
    if last(tree, k) != j:
        raise BijectionError(f"last(T) = {last(tree, k)}, expected {j}")
    cherry, v = _cherry(tree, j)
    tree = _replace(tree, cherry, j)
    labels = {p: x for p, x in labels.items() if p != cherry}
    if v != i:
        m = path_decomposition(tree, labels, j).minima
        if i not in m:
            raise BijectionError(f"leaf {i} is not a branch minimum on the path to {j}")
        d = m.index(i)
        top = len(m) if m[-1] < j else len(m) - 1
        mapping = {m[s]: m[s + 1] for s in range(d, top - 1)}
        mapping[m[top - 1]] = v
        tree = _relabel(tree, mapping)
    tree, _ = _shift(tree, {}, i + 1, -1)
    return canonicalize(tree)


# -------------------------------------------------------------- sigma_j

def sigma_j(tree: Tree, k: Sequence[int], j: int) -> Tree:
    """Insert a single edge labeled ``j``; image in ``undo_derive(k, j, None)``."""
    k = as_composition(k)
    if not maxzero(k) < j <= len(k) + 1:
        raise BijectionError(f"need maxzero={leaf_name(maxzero(k))} < j={j} <= {len(k) + 1}")
    tree, labels = _labeled(tree, k)
    v = last(tree, k)
    tree, labels = _shift(tree, labels, j, 1)
    v = v + 1 if v >= j else v
    if v < j:
        target = v
    else:
        _, i = _cherry(tree, v)
        if i < j < v:
            target = i
        else:
            m = path_decomposition(tree, labels, v).minima
            target = max(x for x in m if x < j)
    tree, _ = _sprout(tree, target, j)
    return canonicalize(tree)


def pi_j(tree: Tree, k: Sequence[int], j: int) -> Tree:
    """Inverse of :func:`sigma_j`; ``k`` is the composition of ``tree``."""
    k = as_composition(k)
    if k[j - 1] != 1:
        raise BijectionError(f"edge label {j} must occur exactly once")
    tree, labels = _labeled(tree, k)
    if last(tree, k) != j:
        raise BijectionError(f"last(T) = {last(tree, k)}, expected {j}")
    cherry, other = _cherry(tree, j)
    if labels.get(cherry) != j:
        raise BijectionError(f"the edge above leaf {j} is not labeled {j}")
    tree = _replace(tree, cherry, other)
    tree, _ = _shift(tree, {}, j + 1, -1)
    return canonicalize(tree)


# ------------------------------------------------------ assembled maps

def big_sigma(tree: Tree, k: Sequence[int], j: int) -> Tree:
    """Map ``tree`` in Slide(derive(k, j)) into Slide(k)."""
    k = as_composition(k)
    smaller = derive(k, j)
    if k[j - 1] > 1:
        return sigma_ij(tree, smaller, maxzero(k), j)
    return sigma_j(tree, smaller, j)


def big_pi(tree: Tree, k: Sequence[int]) -> tuple[Tree, BijectionStep]:
    """Inverse of :func:`big_sigma`: returns the preimage and the step used."""
    k = as_composition(k)
    if not k:
        raise BijectionError("the base tree has no preimage")
    tree = canonicalize(tree)
    j = last(tree, k)
    if not maxzero(k) < j <= len(k):
        raise BijectionError(f"last(T) = {leaf_name(j)} is not right of maxzero")
    smaller = derive(k, j)
    if k[j - 1] > 1:
        i = maxzero(k)
        return pi_ij(tree, k, i, j), BijectionStep(j, i, smaller, k)
    return pi_j(tree, k, j), BijectionStep(j, None, smaller, k)


def d_omega_parts(k: Sequence[int]) -> list[tuple[int, Composition]]:
    """The index set of D(k): pairs ``(j, derive(k, j))`` for ``j > maxzero(k)``."""
    k = as_composition(k)
    out = []
    for j in range(maxzero(k) + 1, len(k) + 1):
        try:
            out.append((j, derive(k, j)))
        except CompositionError:
            continue
    return out


# ------------------------------------------------------------------ words

def content(word: Sequence[int], n: int | None = None) -> Composition:
    n = len(word) if n is None else n
    counts = [0] * n
    for letter in word:
        if not 1 <= letter <= n:
            raise BijectionError(f"letter {letter} outside 1..{n}")
        counts[letter - 1] += 1
    return tuple(counts)


def word_of(tree: Tree, k: Sequence[int]) -> Word:
    """Letters of the insertion steps that build ``tree`` from the base tree."""
    k = as_composition(k)
    letters: list[tuple[int | None, int]] = []
    while k:
        tree, step = big_pi(tree, k)
        letters.append((step.i, step.j))
        k = step.before
    word: list[int] = []
    for i, j in reversed(letters):
        cut = j if i is None else i
        word = [x + 1 if x >= cut else x for x in word]
        word.append(j)
    return tuple(word)


def word_steps(word: Sequence[int]) -> list[tuple[Word, BijectionStep]]:
    """Peel letters off the end; each entry is (shorter word, step to rebuild)."""
    word = tuple(word)
    out = []
    while word:
        k = content(word)
        j = word[-1]
        if j <= maxzero(k):
            raise BijectionError(f"last letter {j} is not right of maxzero {maxzero(k)}")
        cut = maxzero(k) if k[j - 1] > 1 else j
        shorter = tuple(x - 1 if x > cut else x for x in word[:-1])
        step = BijectionStep(j, cut if k[j - 1] > 1 else None, content(shorter), k)
        out.append((shorter, step))
        word = shorter
    return out


def tree_of_word(word: Sequence[int], check: bool = True) -> Tree:
    """Replay the insertion steps of ``word`` from the base tree."""
    steps = word_steps(word)
    tree: Tree = (A, B, C)
    for _, step in reversed(steps):
        tree = big_sigma(tree, step.after, step.j)
    if check and not is_member(tree, content(word), OMEGA):
        raise BijectionError("word does not encode an omega slide tree")
    return tree


def format_word(word: Sequence[int]) -> str:
    if all(1 <= x <= 9 for x in word):
        return "".join(str(x) for x in word)
    return ",".join(str(x) for x in word)


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    try:
        if "," in text:
            return tuple(int(tok) for tok in text.split(","))
        return tuple(int(ch) for ch in text)
    except ValueError:
        raise ValueError(f"cannot parse word {text!r}") from None
