"""Caterpillar trees from words, word statistics and the avoidance predicates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .compositions import is_reverse_catalan, zeros_right_of
from .bijection import content
from .patterns import avoids_212, avoids_23bar2_1, multiset_permutations
from .slide_rules import OMEGA, PSI, SlideLabelingFailure, SlideRule, slide_labeling
from .trees import A, B, C, Node, Tree, canonicalize, internal_nodes

Word = tuple[int, ...]


class CaterpillarError(ValueError):
    pass


@dataclass(frozen=True)
class CaterpillarLayout:
    """Edge word plus the leaf hanging after each edge.

    ``gap_leaves[t]`` is the leaf between edges ``t`` and ``t+1``; the last
    edge carries ``end_descent`` and ``end_nondescent``.
    """

    word: Word
    descent: tuple[bool, ...]
    gap_leaves: tuple[int, ...]
    end_descent: int
    end_nondescent: int

    def tree(self) -> Tree:
        """Nested form ``(a, b, N_1)`` with ``N_t = (L_t, N_{t+1})``; not canonical."""
        if not self.word:
            return (A, B, C)
        node: Node = (self.end_descent, self.end_nondescent)
        for leaf in reversed(self.gap_leaves):
            node = (leaf, node)
        return (A, B, node)


def caterpillar_layout(word: Sequence[int]) -> CaterpillarLayout:
    """Leaf assignment for the only caterpillar that can carry ``word``."""
    word = tuple(word)
    n = len(word)
    if not n:
        return CaterpillarLayout((), (), (), C, C)
    if not avoids_212(word):
        raise CaterpillarError(f"{''.join(map(str, word))} contains 2-1-2; labels would repeat")
    descent = tuple(word[t] > word[t + 1] for t in range(n - 1))
    used = {word[t] for t in range(n - 1) if descent[t]} | {word[-1]}
    pool = sorted(x for x in [C, *range(1, n + 1)] if x not in used)
    gap: list[int] = []
    for t in range(n - 1):
        if descent[t]:
            gap.append(word[t])
            continue
        pick = pool[0]
        if pick == word[t + 1]:
            if len(pool) < 2:
                raise CaterpillarError("no label left for a nondescent leaf")
            pick = pool[1]
        pool.remove(pick)
        gap.append(pick)
    if len(pool) != 1:
        raise CaterpillarError("leaf labels do not match the word")
    return CaterpillarLayout(word, descent, tuple(gap), word[-1], pool[0])


def tree_of_caterpillar_word(word: Sequence[int]) -> Tree:
    return canonicalize(caterpillar_layout(word).tree())


def spine_word(tree: Tree, labels: dict) -> Word:
    """Edge labels of a caterpillar read from the root (labels keyed by path)."""
    out = []
    node, path = tree, ()
    while True:
        inner = [idx for idx, child in enumerate(node) if isinstance(child, tuple)]
        if not inner:
            return tuple(out)
        if len(inner) > 1:
            raise CaterpillarError("tree is not a caterpillar rooted at a")
        path = path + (inner[0],)
        node = node[inner[0]]
        out.append(labels[path])


def caterpillar_word(tree: Tree, k: Sequence[int], rule: SlideRule = OMEGA) -> Word:
    tree = canonicalize(tree)
    return spine_word(tree, slide_labeling(tree, k, rule))


# ------------------------------------------------------------ statistics

@dataclass(frozen=True)
class WordStats:
    ell: int
    total_rep: int
    big_rep: int
    z: int


def word_stats(word: Sequence[int], i: int) -> WordStats:
    word = tuple(word)
    if i not in word:
        raise CaterpillarError(f"letter {i} does not occur in the word")
    last = len(word) - 1 - word[::-1].index(i)
    ell = 0
    t = last
    while t >= 0 and word[t] == i:
        ell += 1
        t -= 1
    suffix = word[last + 1:]
    counts: dict[int, int] = {}
    for x in suffix:
        counts[x] = counts.get(x, 0) + 1
    total = sum(max(c - 1, 0) for x, c in counts.items() if x != i)
    big = sum(max(c - 1, 0) for x, c in counts.items() if x > i)
    return WordStats(ell, total, big, zeros_right_of(content(word), i))


def caterpillar_member(word: Sequence[int], rule: SlideRule) -> bool:
    """Pattern-and-inequality test for Tree(word) lying in the slide set."""
    word = tuple(word)
    k = content(word)
    if not is_reverse_catalan(k):
        return False
    if not (avoids_212(word) and avoids_23bar2_1(word)):
        return False
    for i in sorted(set(word)):
        s = word_stats(word, i)
        if rule is PSI and s.total_rep + s.ell < s.z:
            return False
        if rule is OMEGA and s.big_rep < s.z:
            return False
    return True


def enumerate_caterpillar_words(k: Sequence[int], rule: SlideRule) -> list[Word]:
    if not is_reverse_catalan(k):
        return []
    return [w for w in multiset_permutations(k) if caterpillar_member(w, rule)]


def nondescent_after(word: Sequence[int]) -> list[int]:
    """Positions (0-based) of edges followed by a nondescent leaf; the last edge counts."""
    n = len(word)
    return [t for t in range(n - 1) if word[t] <= word[t + 1]] + ([n - 1] if n else [])



def carries_word(word: Sequence[int], rule: SlideRule) -> bool:
    """Brute-force oracle: Tree(word) is a slide tree whose spine reads ``word``.

    Membership alone is weaker: Tree(231) = Tree(132) is a psi slide tree,
    but its labeling reads 132.
    """
    word = tuple(word)
    k = content(word)
    if not is_reverse_catalan(k) or not avoids_212(word):
        return False
    tree = tree_of_caterpillar_word(word)
    try:
        return spine_word(tree, slide_labeling(tree, k, rule)) == word
    except SlideLabelingFailure:
        return False
