"""Parking functions, dominance and column-restricted parking functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .compositions import Composition, as_composition, check_balanced
from .patterns import multiset_permutations

Word = tuple[int, ...]


class ParkingError(ValueError):
    pass


class ParkingSyntaxError(ParkingError):
    """The text is not a list of label:column pairs over 1..n."""


def is_dyck(k: Sequence[int]) -> bool:
    """Walk the lattice path from (0, n): after the c-th right step take k_c down steps.

    The path must stay weakly above the line y = n - x.
    """
    n = len(k)
    y = n
    for c, part in enumerate(k, start=1):
        y -= part
        if y < n - c:
            return False
    return y == 0


@dataclass(frozen=True)
class ParkingFunction:
    """A labelled Dyck path stored as ``word[x-1] = column of label x``."""

    word: Word

    def __post_init__(self) -> None:
        n = len(self.word)
        if any(not 1 <= c <= n for c in self.word):
            raise ParkingError(f"columns must lie in 1..{n}")
        if not is_dyck(self.composition):
            raise ParkingError(f"column sizes {self.composition} do not give a Dyck path")

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def composition(self) -> Composition:
        counts = [0] * len(self.word)
        for c in self.word:
            counts[c - 1] += 1
        return tuple(counts)

    def columns(self) -> list[list[int]]:
        """Labels of each column, bottom to top (increasing)."""
        cols: list[list[int]] = [[] for _ in range(self.n)]
        for x, c in enumerate(self.word, start=1):
            cols[c - 1].append(x)
        return cols

    def column_of(self, x: int) -> int:
        return self.word[x - 1]


def pf_word(pf: ParkingFunction) -> Word:
    return pf.word


def dominance_index(pf: ParkingFunction, x: int) -> int:
    """Number of columns right of x's column whose entries are all below x."""
    cols = pf.columns()
    return sum(1 for col in cols[pf.column_of(x):] if all(y < x for y in col))


def is_cpf(pf: ParkingFunction) -> bool:
    return all(dominance_index(pf, x) < x for x in range(1, pf.n + 1))


def enumerate_pf(k: Sequence[int]) -> Iterator[ParkingFunction]:
    """PF(k) in lexicographic order of words; empty when k is not Dyck."""
    k = as_composition(k)
    check_balanced(k)
    if not is_dyck(k):
        return
    for word in multiset_permutations(k):
        yield ParkingFunction(word)


def enumerate_cpf(k: Sequence[int]) -> Iterator[ParkingFunction]:
    return (pf for pf in enumerate_pf(k) if is_cpf(pf))


def parse_pf(text: str, as_word: bool = False) -> ParkingFunction:
    """Parse ``"1:7,2:5,..."`` (label:column) or, with ``as_word``, a column word."""
    from .bijection import parse_word

    text = text.strip()
    if as_word:
        try:
            word = parse_word(text)
        except ValueError as exc:
            raise ParkingSyntaxError(str(exc)) from None
        return ParkingFunction(word)
    pairs: dict[int, int] = {}
    try:
        for item in text.split(","):
            label, col = item.split(":")
            x = int(label)
            if x in pairs:
                raise ParkingSyntaxError(f"label {x} given twice")
            pairs[x] = int(col)
    except ValueError as exc:
        if isinstance(exc, ParkingError):
            raise
        raise ParkingSyntaxError(f"cannot parse parking function {text!r}") from None
    n = len(pairs)
    if sorted(pairs) != list(range(1, n + 1)):
        raise ParkingSyntaxError(f"labels must be exactly 1..{n}")
    return ParkingFunction(tuple(pairs[x] for x in range(1, n + 1)))


def format_pf(pf: ParkingFunction) -> str:
    return ",".join(f"{x}:{c}" for x, c in enumerate(pf.word, start=1))


def cpf_to_slide(pf: ParkingFunction):
    """The omega slide tree whose word is the reversed parking word."""
    from .bijection import tree_of_word

    if not is_cpf(pf):
        raise ParkingError("not column-restricted")
    return tree_of_word(tuple(reversed(pf.word)))
