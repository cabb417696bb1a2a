"""The i-slide move, the two slide rules and the k-slide labeling algorithm."""

from __future__ import annotations

import enum
from itertools import combinations
from typing import Iterable, Sequence

from .compositions import Composition, as_composition, check_balanced
from .trees import (
    A,
    B,
    C,
    FlatTree,
    Path,
    Tree,
    TreeError,
    _bit,
    canonicalize,
    is_trivalent,
    leaf_name,
    leaf_path,
    mask_min,
    node_at,
    validate,
)


class SlideRule(enum.Enum):
    PSI = "psi"
    OMEGA = "omega"

    @classmethod
    def parse(cls, text: str) -> "SlideRule":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown slide rule {text!r} (expected psi or omega)") from None


PSI = SlideRule.PSI
OMEGA = SlideRule.OMEGA


class SlideLabelingFailure(Exception):
    """The labeling algorithm stopped; carries where and why."""

    def __init__(self, step: int, reason: str, partial: dict[Path, int]):
        super().__init__(f"labeling stopped at step {step}: {reason}")
        self.step = step
        self.reason = reason
        self.partial = partial


# ------------------------------------------------------------------ slides

def _replace_at(node: tuple, path: Path, new) -> tuple:
    if not path:
        return new
    idx = path[0]
    return node[:idx] + (_replace_at(node[idx], path[1:], new),) + node[idx + 1:]


def _subsets(items: Sequence) -> Iterable[tuple[tuple, tuple]]:
    """Every split of ``items`` into (moved, kept)."""
    idx = range(len(items))
    for r in range(len(items) + 1):
        for chosen in combinations(idx, r):
            picked = set(chosen)
            yield (tuple(items[t] for t in idx if t in picked),
                   tuple(items[t] for t in idx if t not in picked))


def i_slides(tree: Tree, i: int) -> set[Tree]:
    """All results of one i-slide, canonical; empty when ``deg(v_i) = 3``."""
    if i < 1:
        raise TreeError(f"slides move numeric leaves only, got {leaf_name(i)}")
    path = leaf_path(tree, i)
    parent_path = path[:-1]
    vertex = node_at(tree, parent_path)
    if parent_path:
        others = [child for child in vertex if child != i]
    else:
        others = [child for child in vertex if child not in (i, A)]
    mins = [_min(child) for child in others]
    br_m = others[mins.index(min(mins))]
    movable = [child for child in others if child is not br_m]
    out: set[Tree] = set()
    for moved, kept in _subsets(movable):
        if not kept:
            continue
        v_i = (i,) + kept
        if parent_path:
            out.add(canonicalize(_replace_at(tree, parent_path, (br_m,) + moved + (v_i,))))
        else:
            out.add(canonicalize((A, br_m) + moved + (v_i,)))
    return out


def _min(node) -> int:
    if isinstance(node, int):
        return node
    return min(_min(child) for child in node)


def _attachments(tree: Tree, leaf: int) -> Iterable[Tree]:
    """Attach ``leaf`` to every non-leaf vertex of ``tree``."""
    yield tree + (leaf,)

    def rec(node: tuple) -> Iterable[tuple]:
        for idx, child in enumerate(node):
            if isinstance(child, tuple):
                head, tail = node[:idx], node[idx + 1:]
                yield head + (child + (leaf,),) + tail
                for sub in rec(child):
                    yield head + (sub,) + tail

    yield from rec(tree)


def star(n: int) -> Tree:
    return (A, B, C) + tuple(range(1, n + 1))


def enumerate_slide_set(k: Sequence[int], rule: SlideRule) -> set[Tree]:
    """Slide^psi(k) or Slide^omega(k) by running the staged slide process."""
    k = as_composition(k)
    check_balanced(k)
    n = len(k)
    current: set[Tree] = {star(n)} if rule is PSI else {(A, B, C)}
    for i in range(1, n + 1):
        if rule is OMEGA:
            current = {canonicalize(t) for tree in current for t in _attachments(tree, i)}
        for _ in range(k[i - 1]):
            current = {t for tree in current for t in i_slides(tree, i)}
            if not current:
                return set()
    return current


# ---------------------------------------------------------------- labeling

def _prepare(tree: Tree | FlatTree, n: int) -> FlatTree:
    if isinstance(tree, FlatTree):
        return tree
    if validate(tree) != n:
        raise TreeError(f"tree has {validate(tree)} numeric leaves, composition has length {n}")
    if not is_trivalent(tree):
        raise TreeError("the slide labeling is only defined for trivalent trees")
    return FlatTree(tree)


def _run_labeling(flat: FlatTree, k: Composition, omega: bool, order: list[int] | None = None) -> list[int]:
    """Core loop; returns node-indexed labels (0 = unlabeled) or raises.

    When ``order`` is given, labeled nodes are appended to it as they are labeled.
    """
    parent = flat.parent
    mask = flat.mask
    labels = [0] * len(parent)
    abit = _bit(A)
    for ell in range(len(k), 0, -1):
        lbit = _bit(ell)
        for _ in range(k[ell - 1]):
            u = parent[flat.leaf_node[ell]]
            while u != 0 and labels[u]:
                u = parent[u]
            if u == 0:
                raise _Stop(ell, f"no unlabeled internal edge between {ell} and a", labels)
            top = parent[u]
            while top != 0 and labels[top]:
                top = parent[top]
            m_ell = mask_min(mask[u] & ~lbit)
            m_a = mask_min(mask[top] & ~mask[u] & ~abit)
            if omega and not ell >= m_ell >= m_a:
                raise _Stop(ell, f"omega test fails: need {ell} >= m_l={leaf_name(m_ell)} >= m_a={leaf_name(m_a)}", labels)
            if not omega and not m_ell >= m_a:
                raise _Stop(ell, f"psi test fails: need m_l={leaf_name(m_ell)} >= m_a={leaf_name(m_a)}", labels)
            labels[u] = ell
            if order is not None:
                order.append(u)
    return labels


class _Stop(Exception):
    def __init__(self, step: int, reason: str, labels: list[int]):
        self.step, self.reason, self.labels = step, reason, labels


def _by_path(flat: FlatTree, labels: list[int]) -> dict[Path, int]:
    return {flat.path[v]: labels[v] for v in range(1, len(labels)) if labels[v]}


def slide_labeling(tree: Tree | FlatTree, k: Sequence[int], rule: SlideRule) -> dict[Path, int]:
    """The omega/psi k-slide labeling as ``{path of edge: label}``.

    Paths index the tree as given (pass a canonical tree to get canonical
    paths). Raises :class:`SlideLabelingFailure` when no labeling exists.
    """
    k = as_composition(k)
    check_balanced(k)
    flat = _prepare(tree, len(k))
    try:
        labels = _run_labeling(flat, k, rule is OMEGA)
    except _Stop as stop:
        raise SlideLabelingFailure(stop.step, stop.reason, _by_path(flat, stop.labels)) from None
    return _by_path(flat, labels)


def labeling_order(tree: Tree, k: Sequence[int], rule: SlideRule) -> list[Path]:
    """Paths of the internal edges in the order the labeling algorithm labels them."""
    k = as_composition(k)
    check_balanced(k)
    flat = _prepare(tree, len(k))
    order: list[int] = []
    try:
        _run_labeling(flat, k, rule is OMEGA, order)
    except _Stop as stop:
        raise SlideLabelingFailure(stop.step, stop.reason, _by_path(flat, stop.labels)) from None
    return [flat.path[v] for v in order]


def is_member(tree: Tree | FlatTree, k: Sequence[int], rule: SlideRule) -> bool:
    k = as_composition(k)
    check_balanced(k)
    flat = _prepare(tree, len(k))
    try:
        _run_labeling(flat, k, rule is OMEGA)
    except _Stop:
        return False
    return True
