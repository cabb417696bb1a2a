"""Word reduction, vincular pattern containment and the two avoidance predicates."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

Word = tuple[int, ...]


class PatternError(ValueError):
    pass


def reduce(word: Sequence[int]) -> Word:
    """Order-isomorphic copy on 1..#distinct letters (equal letters stay equal)."""
    if not word:
        raise PatternError("cannot reduce the empty word")
    rank = {x: r for r, x in enumerate(sorted(set(word)), start=1)}
    return tuple(rank[x] for x in word)


def unreduce(word: Sequence[int], alphabet: Sequence[int]) -> Word:
    """Inverse of :func:`reduce` onto the sorted distinct letters ``alphabet``."""
    letters = sorted(set(alphabet))
    return tuple(letters[x - 1] for x in word)


@dataclass(frozen=True)
class VincularPattern:
    """Pattern letters plus adjacency flags between consecutive letters.

    ``adjacent[t]`` says letters ``t`` and ``t+1`` must be adjacent in the
    host. ``barred`` holds indices of barred letters (only used to recognise
    the one barred pattern that has a dedicated predicate).
    """

    letters: Word
    adjacent: tuple[bool, ...]
    barred: frozenset[int] = frozenset()

    def __str__(self) -> str:
        out = []
        for t, x in enumerate(self.letters):
            if t:
                out.append("" if self.adjacent[t - 1] else "-")
            out.append(("~" if t in self.barred else "") + str(x))
        return "".join(out)


def parse_pattern(text: str) -> VincularPattern:
    """Parse ``"23-1"``, ``"2-1-2"`` or ``"23-~2-1"``."""
    letters: list[int] = []
    adjacent: list[bool] = []
    barred: set[int] = set()
    dash = False
    bar = False
    for ch in text.strip():
        if ch == "-":
            if not letters or dash or bar:
                raise PatternError(f"misplaced '-' in pattern {text!r}")
            dash = True
        elif ch == "~":
            if bar:
                raise PatternError(f"double '~' in pattern {text!r}")
            bar = True
        elif ch.isdigit():
            if letters:
                adjacent.append(not dash)
            if bar:
                barred.add(len(letters))
            letters.append(int(ch))
            dash = bar = False
        else:
            raise PatternError(f"unexpected {ch!r} in pattern {text!r}")
    if not letters or dash or bar:
        raise PatternError(f"incomplete pattern {text!r}")
    return VincularPattern(tuple(letters), tuple(adjacent), frozenset(barred))


def contains_vincular(word: Sequence[int], pattern: VincularPattern) -> bool:
    """Brute-force search for an occurrence honouring the adjacency flags."""
    if pattern.barred:
        raise PatternError("barred patterns are handled by dedicated predicates")
    target = reduce(pattern.letters)
    size = len(target)
    for pos in combinations(range(len(word)), size):
        if any(flag and pos[t + 1] != pos[t] + 1 for t, flag in enumerate(pattern.adjacent)):
            continue
        if reduce([word[p] for p in pos]) == target:
            return True
    return False


def contains_classical(word: Sequence[int], letters: Sequence[int]) -> bool:
    return contains_vincular(word, VincularPattern(tuple(letters), (False,) * (len(letters) - 1)))


PATTERN_212 = parse_pattern("2-1-2")
PATTERN_23_1 = parse_pattern("23-1")


def avoids_212(word: Sequence[int]) -> bool:
    """No positions p < q < r with w_p = w_r > w_q."""
    n = len(word)
    for p in range(n):
        lowest = None
        for r in range(p + 1, n):
            if word[r] == word[p] and lowest is not None and lowest < word[p]:
                return False
            lowest = word[r] if lowest is None else min(lowest, word[r])
    return True


def avoids_23bar2_1(word: Sequence[int]) -> bool:
    """Every 23-1 occurrence (w_j < w_i < w_{i+1}) has a copy of w_i between."""
    n = len(word)
    for i in range(n - 1):
        x, y = word[i], word[i + 1]
        if not x < y:
            continue
        for j in range(i + 2, n):
            if word[j] == x:
                break
            if word[j] < x:
                return False
    return True


@dataclass(frozen=True)
class Earliest231:
    prefix: Word
    x: int
    y: int
    middle: Word
    z: int
    suffix: Word


def earliest_231(word: Sequence[int]) -> Earliest231 | None:
    """Split at the leftmost adjacent ascent with a later smaller letter."""
    word = tuple(word)
    for t in range(len(word) - 1):
        x, y = word[t], word[t + 1]
        if x < y:
            for s in range(t + 2, len(word)):
                if word[s] < x:
                    return Earliest231(word[:t], x, y, word[t + 2:s], word[s], word[s + 1:])
    return None


def multiset_permutations(k: Sequence[int]) -> Iterator[Word]:
    """Words with ``k_i`` copies of letter i, in lexicographic order."""
    word = [i for i, part in enumerate(k, start=1) for _ in range(part)]
    n = len(word)
    while True:
        yield tuple(word)
        t = n - 2
        while t >= 0 and word[t] >= word[t + 1]:
            t -= 1
        if t < 0:
            return
        s = n - 1
        while word[s] <= word[t]:
            s -= 1
        word[t], word[s] = word[s], word[t]
        word[t + 1:] = reversed(word[t + 1:])


def enumerate_avoiders(k: Sequence[int], predicates: Iterable[Callable[[Word], bool]] = ()) -> list[Word]:
    preds = list(predicates)
    return [w for w in multiset_permutations(k) if all(p(w) for p in preds)]


def avoids(word: Sequence[int], pattern: VincularPattern) -> bool:
    """Avoidance for CLI patterns; the barred pattern 23-~2-1 has its own predicate."""
    if pattern.barred:
        if str(pattern) == "23-~2-1":
            return avoids_23bar2_1(word)
        raise PatternError(f"unsupported barred pattern {pattern}")
    return not contains_vincular(word, pattern)
