"""Leaf-labelled stable trees.

Leaf labels are ints ordered the usual way: ``A = -2 < B = -1 < C = 0 < 1 < 2 < ...``.

A tree is stored as nested tuples rooted at the vertex adjacent to leaf ``a``:
the outer tuple lists every neighbour of that vertex (``a`` included), and
each inner tuple lists the children of a non-root vertex. Ints are leaves.
So the three-leaf star is ``(A, B, C)`` and serializes to ``"(a,b,c)"``.

Internal edges are exactly the non-root tuples (the edge to their parent),
so "the branch starting at edge e" is simply the tuple below ``e``.
Positions inside a tree are addressed by paths: tuples of child indices
read from the root.
"""

from __future__ import annotations

import random
import re
from typing import Iterable, Iterator, Mapping, Sequence, Union

A, B, C = -2, -1, 0

Node = Union[int, tuple]
Tree = tuple
Path = tuple[int, ...]

T0: Tree = (A, B, C)


class TreeError(ValueError):
    """Malformed tree, label set violation, or unstable vertex."""


class TreeSyntaxError(TreeError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def leaf_name(label: int) -> str:
    return {A: "a", B: "b", C: "c"}.get(label, str(label))


def leaf_from_name(name: str) -> int:
    lookup = {"a": A, "b": B, "c": C}
    if name in lookup:
        return lookup[name]
    value = int(name)
    if value < 1:
        raise TreeError(f"numeric leaf labels start at 1, got {name}")
    return value


# ---------------------------------------------------------------- basics

def is_leaf(node: Node) -> bool:
    return isinstance(node, int)


def leaves(node: Node) -> Iterator[int]:
    if isinstance(node, int):
        yield node
    else:
        for child in node:
            yield from leaves(child)


def min_leaf(branch: Node) -> int:
    """Minimal leaf label of a branch (a leaf is its own branch)."""
    if isinstance(branch, int):
        return branch
    return min(min_leaf(child) for child in branch)


def leaf_count(node: Node) -> int:
    if isinstance(node, int):
        return 1
    return sum(leaf_count(child) for child in node)


def numeric_leaf_count(tree: Tree) -> int:
    return sum(1 for x in leaves(tree) if x > 0)


def internal_nodes(tree: Tree) -> Iterator[tuple[Path, tuple]]:
    """Every non-root vertex (= every internal edge), with its path, preorder."""
    def rec(node: tuple, path: Path) -> Iterator[tuple[Path, tuple]]:
        for idx, child in enumerate(node):
            if isinstance(child, tuple):
                sub = path + (idx,)
                yield sub, child
                yield from rec(child, sub)

    yield from rec(tree, ())


def internal_edge_count(tree: Tree) -> int:
    return sum(1 for _ in internal_nodes(tree))


def node_at(tree: Tree, path: Path) -> Node:
    node: Node = tree
    for idx in path:
        node = node[idx]
    return node


def leaf_path(tree: Tree, label: int) -> Path:
    def rec(node: Node, path: Path) -> Path | None:
        if isinstance(node, int):
            return path if node == label else None
        for idx, child in enumerate(node):
            found = rec(child, path + (idx,))
            if found is not None:
                return found
        return None

    found = rec(tree, ())
    if found is None:
        raise TreeError(f"leaf {leaf_name(label)} not in tree")
    return found


def relabel(node: Node, mapping: Mapping[int, int]) -> Node:
    """Apply ``mapping`` to leaf labels; labels not in the mapping stay."""
    if isinstance(node, int):
        return mapping.get(node, node)
    return tuple(relabel(child, mapping) for child in node)


def shift_labels(node: Node, at_least: int, delta: int) -> Node:
    if isinstance(node, int):
        return node + delta if node >= at_least else node
    return tuple(shift_labels(child, at_least, delta) for child in node)


def validate(tree: Tree) -> int:
    """Check stability and the label set; return the number of numeric leaves."""
    if not isinstance(tree, tuple):
        raise TreeError("a tree must be a tuple of root neighbours")
    if A not in tree:
        raise TreeError("leaf a must hang off the root vertex")
    if len(tree) < 3:
        raise TreeError("root vertex has degree < 3")

    def check(node: Node) -> None:
        if isinstance(node, tuple):
            if len(node) < 2:
                raise TreeError(f"vertex {serialize_node(node)} has degree < 3")
            for child in node:
                check(child)
        elif not isinstance(node, int):
            raise TreeError(f"bad node {node!r}")

    for child in tree:
        check(child)
    labels = sorted(leaves(tree))
    seen = set()
    for x in labels:
        if x in seen:
            raise TreeError(f"duplicate leaf {leaf_name(x)}")
        seen.add(x)
    n = len(labels) - 3
    if labels != [A, B, C] + list(range(1, n + 1)):
        raise TreeError(f"leaf labels must be a,b,c,1..{n}; got {','.join(map(leaf_name, labels))}")
    return n


def is_trivalent(tree: Tree) -> bool:
    return len(tree) == 3 and all(len(node) == 2 for _, node in internal_nodes(tree))


def is_caterpillar(tree: Tree) -> bool:
    """True iff the internal edges form a single path (or there are none)."""
    if sum(1 for child in tree if isinstance(child, tuple)) > 2:
        return False
    for _, node in internal_nodes(tree):
        if 1 + sum(1 for child in node if isinstance(child, tuple)) > 2:
            return False
    return True


# ------------------------------------------------------------ canonical form

def _canon(node: Node) -> tuple[Node, int]:
    if isinstance(node, int):
        return node, node
    parts = sorted((_canon(child) for child in node), key=lambda pair: pair[1])
    return tuple(p for p, _ in parts), parts[0][1]


def canonicalize(tree: Node) -> Node:
    """Sort children of every vertex by their minimal leaf."""
    return _canon(tree)[0]


def shuffled(tree: Node, rng: random.Random) -> Node:
    """Random reordering of every child list; same abstract tree."""
    if isinstance(tree, int):
        return tree
    children = [shuffled(child, rng) for child in tree]
    rng.shuffle(children)
    return tuple(children)


# ------------------------------------------------------------------- text

def serialize_node(node: Node) -> str:
    if isinstance(node, int):
        return leaf_name(node)
    return "(" + ",".join(serialize_node(child) for child in node) + ")"


def serialize_tree(tree: Tree) -> str:
    return serialize_node(canonicalize(tree))


_LEAF = re.compile(r"[A-Za-z]+|\d+")


def parse_tree(text: str) -> Tree:
    """Parse the parenthesized format, e.g. ``"(a,b,(2,(1,c)))"``.

    The root tuple lists the neighbours of the vertex carrying ``a``;
    ``"(a,b," node ")"`` is the usual trivalent shape. The result is
    validated and canonical.
    """
    pos = 0
    end = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < end and text[pos].isspace():
            pos += 1

    def parse_node() -> Node:
        nonlocal pos
        skip_ws()
        if pos >= end:
            raise TreeSyntaxError("unexpected end of input", pos)
        if text[pos] == "(":
            pos += 1
            children = [parse_node()]
            while True:
                skip_ws()
                if pos >= end:
                    raise TreeSyntaxError("unclosed '('", pos)
                if text[pos] == ",":
                    pos += 1
                    children.append(parse_node())
                elif text[pos] == ")":
                    pos += 1
                    return tuple(children)
                else:
                    raise TreeSyntaxError(f"unexpected {text[pos]!r}", pos)
        match = _LEAF.match(text, pos)
        if not match:
            raise TreeSyntaxError(f"unexpected {text[pos]!r}", pos)
        start = pos
        pos = match.end()
        try:
            return leaf_from_name(match.group())
        except (TreeError, ValueError):
            raise TreeSyntaxError(f"bad leaf label {match.group()!r}", start) from None

    skip_ws()
    if pos >= end or text[pos] != "(":
        raise TreeSyntaxError("a tree starts with '('", pos)
    tree = parse_node()
    skip_ws()
    if pos != end:
        raise TreeSyntaxError("trailing input", pos)
    validate(tree)
    return canonicalize(tree)


def export_dot(tree: Tree, labeling: Mapping[Path, int] | None = None, name: str = "T") -> str:
    """Graphviz DOT for a tree, optionally with internal edge labels.

    ``labeling`` maps paths (in the canonical child order) to edge labels
    and must cover every internal edge. Vertex ids follow canonical preorder.
    """
    tree = canonicalize(tree)
    if labeling is not None:
        expected = {path for path, _ in internal_nodes(tree)}
        if set(labeling) != expected:
            raise TreeError("labeling does not match the internal edges of the tree")
    lines = [f"graph {name} {{"]
    counter = 0

    def visit(node: Node, path: Path) -> str:
        nonlocal counter
        vid = f"v{counter}"
        counter += 1
        if isinstance(node, int):
            lines.append(f'  {vid} [shape=plaintext, label="{leaf_name(node)}"];')
            return vid
        lines.append(f"  {vid} [shape=point];")
        for idx, child in enumerate(node):
            sub = path + (idx,)
            cid = visit(child, sub)
            if isinstance(child, tuple) and labeling is not None:
                lines.append(f'  {vid} -- {cid} [label="{labeling[sub]}"];')
            else:
                lines.append(f"  {vid} -- {cid};")
        return vid

    visit(tree, ())
    lines.append("}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ enumeration

def _edge_insertions(node: Node, leaf: int) -> Iterator[Node]:
    """Every way to subdivide one edge strictly below ``node`` and hang ``leaf`` there."""
    for idx, child in enumerate(node):
        head, tail = node[:idx], node[idx + 1:]
        yield head + ((child, leaf),) + tail
        if isinstance(child, tuple):
            for sub in _edge_insertions(child, leaf):
                yield head + (sub,) + tail


def enumerate_trivalent(n: int) -> set[Tree]:
    """All (2n+1)!! trivalent trees on leaves a, b, c, 1..n, canonical.

    Leaf-insertion enumeration: leaf i goes onto any edge of a tree on the
    smaller leaf set, including the edge to ``a`` (which moves the root).
    """
    current: set[Tree] = {T0}
    for leaf in range(1, n + 1):
        grown: set[Tree] = set()
        for tree in current:
            rest = tuple(child for child in tree if child != A)
            grown.add(canonicalize((A, leaf, rest)))
            for cand in _edge_insertions(tree, leaf):
                if A in cand:
                    grown.add(canonicalize(cand))
        current = grown
    return current


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


# ------------------------------------------------------------- flat form

def _bit(label: int) -> int:
    return 1 << (label + 2)


def mask_min(mask: int) -> int:
    return (mask & -mask).bit_length() - 3


def mask_of(labels: Iterable[int]) -> int:
    out = 0
    for x in labels:
        out |= _bit(x)
    return out


class FlatTree:
    """Index-based view of a nested tree for path and branch queries.

    Node 0 is the root vertex. ``mask[v]`` is the leaf set below ``v`` as a
    bitmask (bit ``label + 2``), so branch minima are a bit trick away.
    The child order of the nested form is kept, which makes node ids line
    up with paths.
    """

    __slots__ = ("children", "parent", "label", "mask", "leaf_node", "path")

    def __init__(self, tree: Tree):
        self.children: list[list[int]] = []
        self.parent: list[int] = []
        self.label: list[int | None] = []
        self.mask: list[int] = []
        self.path: list[Path] = []
        self.leaf_node: dict[int, int] = {}
        self._add(tree, -1, ())

    def _add(self, node: Node, parent: int, path: Path) -> int:
        vid = len(self.children)
        self.children.append([])
        self.parent.append(parent)
        self.path.append(path)
        if isinstance(node, int):
            self.label.append(node)
            self.mask.append(_bit(node))
            self.leaf_node[node] = vid
            return vid
        self.label.append(None)
        self.mask.append(0)
        mask = 0
        for idx, child in enumerate(node):
            cid = self._add(child, vid, path + (idx,))
            self.children[vid].append(cid)
            mask |= self.mask[cid]
        self.mask[vid] = mask
        return vid

    def is_leaf(self, v: int) -> bool:
        return self.label[v] is not None

    def branch_min(self, v: int) -> int:
        return mask_min(self.mask[v])

    def branch_leaves(self, v: int) -> list[int]:
        return sorted(leaves(self.nested(v)))

    def leaf_total(self, v: int) -> int:
        return bin(self.mask[v]).count("1")

    def ancestors(self, v: int) -> list[int]:
        """``v``'s proper ancestors, nearest first, ending with the root."""
        out = []
        while self.parent[v] != -1:
            v = self.parent[v]
            out.append(v)
        return out

    def nested(self, v: int = 0) -> Node:
        if self.label[v] is not None:
            return self.label[v]
        return tuple(self.nested(c) for c in self.children[v])

    def internal_vertices(self) -> list[int]:
        return [v for v in range(1, len(self.children)) if self.label[v] is None]
