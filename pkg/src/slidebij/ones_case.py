"""Direct bijection between Slide^omega(1,...,1) and permutations."""

from __future__ import annotations

from typing import Sequence

from .caterpillar import caterpillar_layout
from .patterns import earliest_231, reduce, unreduce
from .slide_rules import OMEGA, enumerate_slide_set, slide_labeling
from .trees import A, B, C, Node, Tree, canonicalize

Word = tuple[int, ...]
# An edge-labeled tree without leaves: (label, child edges sorted by label).
EdgeTree = tuple


class OnesError(ValueError):
    pass


def _ones(n: int) -> tuple[int, ...]:
    return (1,) * n


def _check_perm(perm: Sequence[int]) -> Word:
    perm = tuple(perm)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise OnesError(f"{perm} is not a permutation of 1..{len(perm)}")
    return perm


def edge_tree(tree: Tree, labels: dict) -> EdgeTree | None:
    """Forget the leaves; keep internal edges and their labels, rooted at a's vertex."""
    def rec(node: tuple, path: tuple) -> EdgeTree:
        kids = [rec(child, path + (idx,)) for idx, child in enumerate(node) if isinstance(child, tuple)]
        return (labels[path], tuple(sorted(kids)))

    tops = [rec(child, (idx,)) for idx, child in enumerate(tree) if isinstance(child, tuple)]
    if not tops:
        return None
    if len(tops) != 1:
        raise OnesError("root vertex carries more than one internal edge")
    return tops[0]


def _relabel_edges(et: EdgeTree, letters: Sequence[int]) -> EdgeTree:
    label, kids = et
    return (letters[label - 1], tuple(sorted(_relabel_edges(k, letters) for k in kids)))


def rho_hat(perm: Sequence[int]) -> EdgeTree | None:
    """Edge-labeled shape: caterpillar for 23-1 avoiders, else a fork at the earliest 23-1."""
    perm = _check_perm(perm)
    if not perm:
        return None
    split = earliest_231(perm)
    if split is None:
        node: EdgeTree | None = None
        for label in reversed(perm):
            node = (label, (node,) if node is not None else ())
        return node
    head = split.prefix + (split.x,)
    left = (split.y,) + split.middle
    right = (split.z,) + split.suffix
    forks = tuple(sorted(
        _relabel_edges(rho_hat(reduce(part)), sorted(part)) for part in (left, right)
    ))
    node = (head[-1], forks)
    for label in reversed(head[:-1]):
        node = (label, (node,))
    return node


def _relabel_leaves(node: Node, letters: Sequence[int]) -> Node:
    if isinstance(node, int):
        return letters[node - 1] if node > 0 else node
    return tuple(_relabel_leaves(child, letters) for child in node)


def _rho_layout(perm: Word) -> Tree:
    """Leaf-labeled tree in spine layout: each spine vertex is ``(leaf, next)``."""
    split = earliest_231(perm)
    if split is None:
        return caterpillar_layout(perm).tree()
    head = split.prefix + (split.x,)
    left = head + (split.y,) + split.middle
    right = head + (split.z,) + split.suffix
    halves = []
    for part in (left, right):
        sub = _relabel_leaves(_rho_layout(reduce(part)), sorted(part))
        node = sub[2]
        spine: list[Node] = []
        for _ in range(len(head) - 1):
            spine.append(node[0])
            node = node[1]
        # node is the vertex at the end of edge x: (leaf, branch below the fork edge)
        halves.append((spine, node[1]))
    spine_a, branch_u = halves[0]
    _, branch_v = halves[1]
    node = (branch_u, branch_v)
    for leaf in reversed(spine_a):
        node = (leaf, node)
    return (A, B, node)


def rho(perm: Sequence[int], check: bool = True) -> Tree:
    """The all-ones slide tree whose labeling has the shape ``rho_hat(perm)``."""
    perm = _check_perm(perm)
    tree = canonicalize(_rho_layout(perm))
    if check:
        labels = slide_labeling(tree, _ones(len(perm)), OMEGA)
        if edge_tree(tree, labels) != rho_hat(perm):
            raise OnesError(f"leaf labeling of rho({perm}) does not realize rho_hat")
    return tree


def rho_bruteforce(perm: Sequence[int]) -> Tree:
    """Oracle: search Slide^omega(1,...,1) for the trees with shape rho_hat(perm)."""
    perm = _check_perm(perm)
    if len(perm) > 6:
        raise OnesError("brute-force rho is limited to n <= 6")
    target = rho_hat(perm)
    ones = _ones(len(perm))
    hits = [t for t in enumerate_slide_set(ones, OMEGA)
            if edge_tree(t, slide_labeling(t, ones, OMEGA)) == target]
    if len(hits) != 1:
        raise OnesError(f"{len(hits)} trees realize rho_hat({perm})")
    return hits[0]


def _read(et: EdgeTree) -> list[int]:
    label, kids = et
    out = [label]
    if len(kids) == 1:
        out += _read(kids[0])
    elif len(kids) == 2:
        first, second = sorted(kids, key=_min_label, reverse=True)
        out += _read(first) + _read(second)
    return out


def _min_label(et: EdgeTree) -> int:
    label, kids = et
    return min([label] + [_min_label(k) for k in kids])


def phi(tree: Tree) -> Word:
    """Read edge labels from the root; at a fork read the branch with larger minimum first."""
    tree = canonicalize(tree)
    n = sum(1 for x in _leaves(tree) if x > 0)
    et = edge_tree(tree, slide_labeling(tree, _ones(n), OMEGA))
    return tuple(_read(et)) if et is not None else ()


def _leaves(node: Node):
    if isinstance(node, int):
        yield node
    else:
        for child in node:
            yield from _leaves(child)
