"""
Little bumps, the bump-delete operator and its insert-bump reversal.

Two engines share the same semantics: pure functions on height tuples (used
for enumeration and graph construction) and WiredWord, an incremental word
indexed by row so that a push only walks the two wires it involves.
"""
import logging
from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .perm_core import Permutation
from .word_diagram import (
    FormalSum,
    Word,
    defect,
    delete_position,
    is_nearly_reduced,
    is_reduced,
)

logger = logging.getLogger(__name__)

UP = 'up'
DOWN = 'down'
# initial distance between order keys of consecutive crossings
KEY_SPACING = 1 << 40


class BumpError(ValueError):
    """Raised when a bump precondition fails or a bump leaves the ambient diagram."""


@dataclass(frozen=True)
class BumpTrace:
    """Record of one bump: the pushed positions in order and the reduced result."""

    start: Word
    origin: int
    direction: str
    pushed: Tuple[int, ...]
    terminal: Word
    stages: Tuple[Word, ...] = ()

    @property
    def last_touched(self) -> int:
        return self.pushed[-1] if self.pushed else self.origin


@dataclass(frozen=True)
class BumpDeleteTrace:
    """
    Stages of bump_delete.

    positions[j] is the position pushed at stage j, stages[j] the word before
    that push and summands[j] = delete_position(stages[j], positions[j]).
    """

    positions: Tuple[int, ...]
    stages: Tuple[Word, ...]
    summands: Tuple[Word, ...]
    terminal: Word

    def as_sum(self) -> FormalSum:
        return FormalSum.of(*self.summands)


def _check_position(word: Word, t: int) -> None:
    if not 1 <= t <= len(word):
        raise BumpError(f"Position {t} out of range for a word of length {len(word)}")


def push_up(w: Sequence[int], t: int) -> Word:
    """Decrement the height at position t."""
    word = tuple(w)
    _check_position(word, t)
    if word[t - 1] < 1:
        raise BumpError(f"Cannot push up the crossing at {t} of {word}: already on row 0")
    return word[:t - 1] + (word[t - 1] - 1,) + word[t:]


def push_down(w: Sequence[int], t: int, n: Optional[int] = None) -> Word:
    """
    Increment the height at position t.

    Args:
        w: Word
        t: 1-based position
        n: Ambient number of wires; pushing a crossing below row n-1 is an error

    Returns:
        The pushed word
    """
    word = tuple(w)
    _check_position(word, t)
    if n is not None and word[t - 1] + 1 > n - 1:
        raise BumpError(f"Pushing down position {t} of {word} leaves the {n}-wire diagram")
    return word[:t - 1] + (word[t - 1] + 1,) + word[t:]


def delete_at(w: Sequence[int], t: int) -> Word:
    word = tuple(w)
    _check_position(word, t)
    return delete_position(word, t)


def _push(word: Word, t: int, direction: str, n: Optional[int]) -> Word:
    if direction == UP:
        return push_up(word, t)
    return push_down(word, t, n)


def little_bump(
    w: Sequence[int],
    t: int,
    direction: str = UP,
    n: Optional[int] = None,
    keep_stages: bool = False,
) -> BumpTrace:
    """
    Push the crossing at t, then keep pushing at the defect until the word is reduced.

    Args:
        w: Word nearly reduced at t
        t: Starting position
        direction: UP or DOWN
        n: Ambient number of wires for downward pushes
        keep_stages: Retain the word after every push

    Returns:
        BumpTrace of the bump
    """
    word = tuple(w)
    _check_position(word, t)
    if direction not in (UP, DOWN):
        raise BumpError(f"Unknown bump direction: {direction}")
    if not is_nearly_reduced(word, t):
        raise BumpError(f"Word {word} is not nearly reduced at {t}")

    current = word
    pushed: List[int] = []
    stages: List[Word] = []
    position = t
    for _ in range(len(word)):
        current = _push(current, position, direction, n)
        pushed.append(position)
        if keep_stages:
            stages.append(current)
        if is_reduced(current):
            return BumpTrace(word, t, direction, tuple(pushed), current, tuple(stages))
        position = defect(current, position)
    raise BumpError(f"Bump of {word} at {t} did not terminate within {len(word)} pushes")


def bump_delete_trace(w: Sequence[int], t: int) -> BumpDeleteTrace:
    """
    Run the bump-delete loop on a reduced word, recording every stage.

    Args:
        w: Reduced word, nearly reduced at t
        t: Starting position

    Returns:
        BumpDeleteTrace with one summand per upward push
    """
    word = tuple(w)
    _check_position(word, t)
    if not is_reduced(word):
        raise BumpError(f"bump_delete needs a reduced word, got {word}")
    if not is_nearly_reduced(word, t):
        raise BumpError(f"Word {word} is not nearly reduced at {t}")

    positions: List[int] = []
    stages: List[Word] = []
    summands: List[Word] = []
    current = word
    position = t
    for _ in range(len(word)):
        positions.append(position)
        stages.append(current)
        summands.append(delete_position(current, position))
        current = push_up(current, position)
        if is_reduced(current):
            logger.debug(f"bump_delete at {t} took {len(positions)} stages")
            return BumpDeleteTrace(tuple(positions), tuple(stages), tuple(summands), current)
        position = defect(current, position)
    raise BumpError(f"bump_delete of {word} at {t} did not terminate")


def bump_delete(w: Sequence[int], t: int) -> FormalSum:
    """Formal sum of the deletions taken before each upward push."""
    return bump_delete_trace(w, t).as_sum()


def push_delete(w: Sequence[int], t: int) -> FormalSum:
    return FormalSum.of(push_up(w, t), delete_at(w, t))


def row_of_wire(w: Sequence[int], wire: int, gap: int) -> int:
    """Row holding the wire after the first gap-1 crossings."""
    word = tuple(w)
    occ = list(range(max(max(word, default=0) + 2, wire + 1)))
    for h in word[:gap - 1]:
        occ[h], occ[h + 1] = occ[h + 1], occ[h]
    return occ.index(wire)


def insert_bump(w: Sequence[int], wire: int, gap: int, n: Optional[int] = None) -> BumpTrace:
    """
    Insert a crossing of the wire with the wire below it, then push down at defects.

    The new crossing goes at position gap, at the height of the row holding
    the wire there. While the word is not reduced the defect of the last
    touched position is pushed down.

    Args:
        w: Reduced word
        wire: Wire label to cross with its lower neighbour
        gap: Insertion position, 1..len(w)+1
        n: Ambient number of wires

    Returns:
        BumpTrace whose start is the word right after insertion
    """
    word = tuple(w)
    if not is_reduced(word):
        raise BumpError(f"insert_bump needs a reduced word, got {word}")
    if not 1 <= gap <= len(word) + 1:
        raise BumpError(f"Gap {gap} out of range for a word of length {len(word)}")
    if wire < 1 or (n is not None and wire > n):
        raise BumpError(f"Wire {wire} is not in the diagram")
    row = row_of_wire(word, wire, gap)
    if n is not None and row >= n:
        raise BumpError(f"Wire {wire} sits in the bottom row at gap {gap}; no wire below")

    current = word[:gap - 1] + (row,) + word[gap - 1:]
    start = current
    pushed: List[int] = []
    position = gap
    while not is_reduced(current):
        if len(pushed) > len(word):
            raise BumpError(f"Insert-bump of wire {wire} at gap {gap} into {word} did not terminate")
        position = defect(current, position)
        current = push_down(current, position, n)
        pushed.append(position)
    return BumpTrace(start, gap, DOWN, tuple(pushed), current)


@lru_cache(maxsize=1 << 16)
def _insert_bump_terminal(word: Word, wire: int, gap: int, n: Optional[int]) -> Word:
    return insert_bump(word, wire, gap, n).terminal


def insert_bump_at(w: Sequence[int], wire: int, gap: int, n: Optional[int] = None) -> Word:
    """Reduced word produced by insert_bump (memoized)."""
    return _insert_bump_terminal(tuple(w), wire, gap, n)


def extended_length(p: Permutation, i: Optional[int] = None, j: Optional[int] = None) -> int:
    """
    Inversions of p extended by π(0) = 0, optionally after swapping positions i and j.

    Args:
        p: Permutation
        i: First position (0..n) of the transposition
        j: Second position

    Returns:
        Inversion count of the extended sequence
    """
    values = [0] + list(p.one_line)
    if i is not None and j is not None:
        values[i], values[j] = values[j], values[i]
    return sum(1 for a in range(len(values)) for b in range(a + 1, len(values)) if values[a] > values[b])


def _covers(values: List[int], lo: int, hi: int) -> bool:
    """True iff swapping positions lo < hi raises the length by exactly one."""
    if values[lo] >= values[hi]:
        return False
    return not any(values[lo] < values[k] < values[hi] for k in range(lo + 1, hi))


def index_sets(p: Permutation, r: int) -> Tuple[Set[int], Set[int]]:
    """
    I(π, r) and S(π, r) for π extended by π(0) = 0.

    Args:
        p: Permutation
        r: Wire / position, 1..n

    Returns:
        (I, S): positions i < r and s > r whose transposition with r lengthens π by one
    """
    if not 1 <= r <= p.n:
        raise BumpError(f"Index {r} out of range for S_{p.n}")
    values = [0] + list(p.one_line)
    lower = {i for i in range(0, r) if _covers(values, i, r)}
    upper = {s for s in range(r + 1, p.n + 1) if _covers(values, r, s)}
    return lower, upper


class WiredWord:
    """
    Reduced word indexed by row, for bumps whose cost follows the wires involved.

    Crossings carry integer order keys, kept sorted in word order. For every
    row r the keys of the crossings touching r (heights r-1 and r) are kept
    sorted as well, so the next or previous crossing on a wire is one bisect
    away. A push moves one key between two row lists, and the defect is found
    by walking the two wires of the pushed crossing forward and backward in
    turn until they meet.
    """

    def __init__(self, n: int):
        """
        Initialize an empty word on n wires.

        Args:
            n: Number of wires; heights stay within 1..n-1
        """
        if n < 1:
            raise BumpError(f"A wiring diagram needs at least one wire, got n={n}")
        self.n = n
        self._keys: List[int] = []
        self._height: Dict[int, int] = {}
        self._rows: List[List[int]] = [[] for _ in range(n + 2)]

    @classmethod
    def from_word(cls, w: Sequence[int], n: Optional[int] = None) -> 'WiredWord':
        word = tuple(int(a) for a in w)
        n = n or max(word, default=0) + 1
        if any(not 1 <= a <= n - 1 for a in word):
            raise BumpError(f"Word {word} does not fit in {n} wires")
        wired = cls(n)
        for idx, h in enumerate(word):
            key = (idx + 1) * KEY_SPACING
            wired._keys.append(key)
            wired._height[key] = h
            wired._rows[h].append(key)
            wired._rows[h + 1].append(key)
        for idx, (upper, lower) in enumerate(wired.labels()):
            if upper > lower:
                raise BumpError(f"Word {word} is not reduced at position {idx + 1}")
        return wired

    def __len__(self) -> int:
        return len(self._keys)

    def word(self) -> Word:
        return tuple(self._height[key] for key in self._keys)

    def labels(self) -> List[Tuple[int, int]]:
        """Wires (above, below) meeting at each crossing, labelled by starting row."""
        occ = list(range(self.n + 1))
        out = []
        for key in self._keys:
            h = self._height[key]
            out.append((occ[h], occ[h + 1]))
            occ[h], occ[h + 1] = occ[h + 1], occ[h]
        return out

    def is_reduced(self) -> bool:
        return all(upper < lower for upper, lower in self.labels())

    def index_consistent(self) -> bool:
        """Rebuild the row index from the word and compare."""
        if any(a >= b for a, b in zip(self._keys, self._keys[1:])):
            return False
        rows: List[List[int]] = [[] for _ in range(self.n + 2)]
        for key in self._keys:
            h = self._height[key]
            rows[h].append(key)
            rows[h + 1].append(key)
        return rows == self._rows

    def _limit(self, gap: int) -> int:
        return self._keys[gap - 2] if gap >= 2 else 0

    def _next(self, row: int, key: int) -> Optional[int]:
        keys = self._rows[row]
        i = bisect_right(keys, key)
        return keys[i] if i < len(keys) else None

    def _prev(self, row: int, key: int) -> Optional[int]:
        keys = self._rows[row]
        i = bisect_left(keys, key)
        return keys[i - 1] if i else None

    @staticmethod
    def _step(row: int, height: int) -> int:
        return row + 1 if height == row else row - 1

    def row_of(self, wire: int, gap: int) -> int:
        """Row of the wire after the first gap-1 crossings."""
        limit = self._limit(gap)
        row, key = wire, 0
        while True:
            nxt = self._next(row, key)
            if nxt is None or nxt > limit:
                return row
            row, key = self._step(row, self._height[nxt]), nxt

    def wire_at(self, row: int, gap: int) -> int:
        """Wire in the given row after the first gap-1 crossings."""
        key = self._limit(gap) + 1
        while True:
            prv = self._prev(row, key)
            if prv is None:
                return row
            row, key = self._step(row, self._height[prv]), prv

    def _walk(self, key: int, forward: bool) -> Iterator[int]:
        """
        Follow the two wires through the crossing at key, one crossing per step.

        Args:
            key: Order key of the crossing
            forward: Direction of the walk

        Yields:
            0 for each crossing passed, then the key where the two wires meet again
        """
        height = self._height
        find = self._next if forward else self._prev
        first, second = height[key], height[key] + 1
        a, b = find(first, key), find(second, key)
        while a is not None or b is not None:
            if a == b:
                yield a
                return
            if b is None or (a is not None and (a < b) == forward):
                first = first + 1 if height[a] == first else first - 1
                a = find(first, a)
            else:
                second = second + 1 if height[b] == second else second - 1
                b = find(second, b)
            yield 0

    def _partner(self, key: int) -> Optional[int]:
        """Other crossing of the wire pair meeting at key, if any."""
        walks = [self._walk(key, True), self._walk(key, False)]
        while walks:
            for walk in list(walks):
                hit = next(walk, None)
                if hit is None:
                    walks.remove(walk)
                elif hit:
                    return hit
        return None

    def _new_key(self, idx: int) -> int:
        keys = self._keys
        lo = keys[idx - 1] if idx else 0
        if idx == len(keys):
            return lo + KEY_SPACING
        hi = keys[idx]
        if hi - lo < 2:
            self._renumber()
            return self._new_key(idx)
        return (lo + hi) // 2

    def _renumber(self) -> None:
        mapping = {old: (i + 1) * KEY_SPACING for i, old in enumerate(self._keys)}
        self._keys = [mapping[k] for k in self._keys]
        self._height = {mapping[k]: h for k, h in self._height.items()}
        self._rows = [[mapping[k] for k in row] for row in self._rows]
        logger.debug(f"Renumbered {len(mapping)} crossing keys")

    def _push_down(self, key: int) -> None:
        h = self._height[key]
        if h + 1 >= self.n:
            position = bisect_left(self._keys, key) + 1
            raise BumpError(f"Pushing down position {position} leaves the {self.n}-wire diagram")
        row = self._rows[h]
        del row[bisect_left(row, key)]
        insort(self._rows[h + 2], key)
        self._height[key] = h + 1

    def insert_bump(self, wire: int, gap: int) -> int:
        """
        In-place insert-bump, identical in effect to insert_bump_at.

        Args:
            wire: Wire label to cross with its lower neighbour
            gap: Insertion position, 1..len+1

        Returns:
            Number of downward pushes performed
        """
        if not 1 <= gap <= len(self) + 1:
            raise BumpError(f"Gap {gap} out of range for a word of length {len(self)}")
        if not 1 <= wire <= self.n:
            raise BumpError(f"Wire {wire} is not in the {self.n}-wire diagram")
        row = self.row_of(wire, gap)
        if row >= self.n:
            raise BumpError(f"Wire {wire} sits in the bottom row at gap {gap}; no wire below")

        key = self._new_key(gap - 1)
        self._keys.insert(gap - 1, key)
        self._height[key] = row
        insort(self._rows[row], key)
        insort(self._rows[row + 1], key)

        pushes = 0
        while True:
            other = self._partner(key)
            if other is None:
                return pushes
            pushes += 1
            if pushes > len(self._keys):
                raise BumpError(f"Insert-bump of wire {wire} at gap {gap} did not terminate")
            self._push_down(other)
            key = other
