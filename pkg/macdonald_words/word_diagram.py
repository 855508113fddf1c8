"""
Words, wiring diagrams and the reduced / nearly-reduced tests built on wire tracing.

Wires are labelled by the row they start in; a crossing at height h swaps the
occupants of rows h and h+1. Row 0 holds the auxiliary wire 0, which only
takes part in crossings produced by upward bumps.
"""
import json
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .perm_core import Permutation, WirePair

Word = Tuple[int, ...]


class WordError(ValueError):
    """Raised for out-of-range positions or violated word preconditions."""


@dataclass(frozen=True)
class Crossing:
    position: int
    height: int
    pair: WirePair


@dataclass(frozen=True)
class WiringDiagram:
    """
    Full wire trace of a word.

    occupancy[t][r] is the wire in row r after the first t crossings
    (row 0 included); crossings[t-1] describes position t.
    """

    word: Word
    n: int
    occupancy: Tuple[Tuple[int, ...], ...]
    crossings: Tuple[Crossing, ...]

    def rows_of(self, wire: int) -> Tuple[int, ...]:
        return tuple(column.index(wire) for column in self.occupancy)


def _check_heights(w: Sequence[int]) -> Word:
    word = tuple(int(a) for a in w)
    if any(a < 0 for a in word):
        raise WordError(f"Negative height in word {word}")
    return word


def _ambient(w: Word, n: Optional[int]) -> int:
    needed = max(w, default=0) + 1
    if n is None:
        return needed
    if n < needed:
        raise WordError(f"Word {w} needs at least {needed} wires, got n={n}")
    return n


def _check_position(w: Word, t: int) -> None:
    if not 1 <= t <= len(w):
        raise WordError(f"Position {t} out of range for a word of length {len(w)}")


def wiring_diagram(w: Sequence[int], n: Optional[int] = None) -> WiringDiagram:
    """
    Trace every wire through the word.

    Args:
        w: Word of crossing heights
        n: Number of wires (defaults to max height + 1)

    Returns:
        WiringDiagram with per-column occupancy and per-crossing wire pairs
    """
    word = _check_heights(w)
    n = _ambient(word, n)
    occ = list(range(n + 1))
    columns = [tuple(occ)]
    crossings = []
    for t, h in enumerate(word, 1):
        upper, lower = occ[h], occ[h + 1]
        crossings.append(Crossing(t, h, (min(upper, lower), max(upper, lower))))
        occ[h], occ[h + 1] = lower, upper
        columns.append(tuple(occ))
    return WiringDiagram(word, n, tuple(columns), tuple(crossings))


def _final_rows(word: Word, n: int, upto: Optional[int] = None) -> List[int]:
    occ = list(range(n + 1))
    for h in word[:upto]:
        occ[h], occ[h + 1] = occ[h + 1], occ[h]
    return occ


def permutation_of(w: Sequence[int], n: Optional[int] = None) -> Permutation:
    """
    Permutation of a word: row r at the right end holds wire π(r).

    Args:
        w: Word with heights >= 1
        n: Ambient size (defaults to max height + 1)

    Returns:
        The Permutation in S_n
    """
    word = _check_heights(w)
    if 0 in word:
        raise WordError(f"Word {word} uses the zeroth row and has no permutation of 1..n")
    n = _ambient(word, n)
    return Permutation(tuple(_final_rows(word, n)[1:]))


def is_reduced(w: Sequence[int]) -> bool:
    """True iff no pair of wires crosses twice."""
    word = _check_heights(w)
    occ = list(range(max(word, default=0) + 2))
    for h in word:
        if occ[h] > occ[h + 1]:
            return False
        occ[h], occ[h + 1] = occ[h + 1], occ[h]
    return True


def crossing_at(w: Sequence[int], t: int) -> Tuple[int, WirePair]:
    """
    Height and wire pair of the crossing at position t.

    Args:
        w: Word
        t: 1-based position

    Returns:
        (height, (r, s)) with r < s
    """
    word = _check_heights(w)
    _check_position(word, t)
    occ = _final_rows(word, max(word) + 1, t - 1)
    h = word[t - 1]
    return h, (min(occ[h], occ[h + 1]), max(occ[h], occ[h + 1]))


def delete_position(w: Sequence[int], t: int) -> Word:
    word = tuple(w)
    _check_position(word, t)
    return word[:t - 1] + word[t:]


def is_nearly_reduced(w: Sequence[int], t: int) -> bool:
    """True iff deleting position t leaves a reduced word."""
    return is_reduced(delete_position(_check_heights(w), t))


def pair_positions(w: Sequence[int], pair: WirePair) -> List[int]:
    """All positions at which the given wires cross."""
    target = {pair[0], pair[1]}
    word = _check_heights(w)
    occ = list(range(max(word, default=0) + 2))
    positions = []
    for t, h in enumerate(word, 1):
        if {occ[h], occ[h + 1]} == target:
            positions.append(t)
        occ[h], occ[h + 1] = occ[h + 1], occ[h]
    return positions


def defect_by_deletion(w: Sequence[int], t: int) -> int:
    """Definitional defect: the other position whose deletion gives a reduced word."""
    word = _check_heights(w)
    _check_validity_for_defect(word, t)
    others = [u for u in range(1, len(word) + 1) if u != t and is_nearly_reduced(word, u)]
    if len(others) != 1:
        raise WordError(f"Word {word} is nearly reduced at {len(others) + 1} positions")
    return others[0]


def _check_validity_for_defect(word: Word, t: int) -> None:
    _check_position(word, t)
    if is_reduced(word):
        raise WordError(f"Word {word} is reduced and has no defect")
    if not is_nearly_reduced(word, t):
        raise WordError(f"Word {word} is not nearly reduced at {t}")


def defect(w: Sequence[int], t: int) -> int:
    """
    Position forming a removable defect with t.

    The pair of wires crossing at t crosses exactly twice in a non-reduced word
    that is nearly reduced at t; the defect is the other crossing.

    Args:
        w: Non-reduced word, nearly reduced at t
        t: 1-based position

    Returns:
        The unique t' != t at which w is also nearly reduced
    """
    word = _check_heights(w)
    _check_validity_for_defect(word, t)
    _, pair = crossing_at(word, t)
    others = [u for u in pair_positions(word, pair) if u != t]
    if len(others) != 1:
        return defect_by_deletion(word, t)
    return others[0]


def find_crossing(w: Sequence[int], pair: WirePair) -> int:
    """Unique position where the pair crosses in a reduced word."""
    positions = pair_positions(w, pair)
    if len(positions) != 1:
        raise WordError(f"Wires {tuple(pair)} cross {len(positions)} times in {tuple(w)}")
    return positions[0]


def descents(w: Sequence[int]) -> List[int]:
    """Positions j with a_j > a_{j+1}."""
    return [j for j in range(1, len(w)) if w[j - 1] > w[j]]


def format_word(w: Sequence[int], style: str = 'tuple') -> str:
    """
    Render a word as "(3,1,2,1)", "3 1 2 1" or a JSON array.

    Args:
        w: Word
        style: 'tuple', 'text' or 'json'

    Returns:
        The formatted word
    """
    word = tuple(w)
    if style == 'tuple':
        return '(' + ','.join(str(a) for a in word) + ')'
    if style == 'text':
        return ' '.join(str(a) for a in word)
    if style == 'json':
        return word_to_json(word)
    raise ValueError(f"Unknown word format: {style}")


def parse_word(text: str) -> Word:
    """Parse any of the formats produced by format_word."""
    cleaned = text.strip().strip('()[]').replace(',', ' ')
    try:
        return _check_heights(int(part) for part in cleaned.split())
    except ValueError as e:
        raise WordError(f"Cannot parse word '{text}': {str(e)}")


def word_to_json(w: Sequence[int]) -> str:
    return json.dumps([int(a) for a in w])


def word_from_json(text: str) -> Word:
    data = json.loads(text)
    if not isinstance(data, list):
        raise WordError(f"Expected a JSON array of heights, got {type(data).__name__}")
    return _check_heights(data)


class FormalSum:
    """Finitely supported non-negative integer combination of words."""

    def __init__(self, terms: Optional[Iterable[Tuple[Word, int]]] = None):
        self._terms: Counter = Counter()
        for word, mult in terms or ():
            self.add(word, mult)

    @classmethod
    def of(cls, *words: Sequence[int]) -> 'FormalSum':
        return cls((tuple(w), 1) for w in words)

    def add(self, word: Sequence[int], mult: int = 1) -> 'FormalSum':
        if mult < 0:
            raise WordError(f"Negative multiplicity {mult} for {tuple(word)}")
        if mult:
            self._terms[tuple(word)] += mult
        return self

    def inner(self, word: Sequence[int]) -> int:
        """⟨word, self⟩, the multiplicity of word."""
        return self._terms.get(tuple(word), 0)

    def support(self) -> List[Word]:
        return sorted(self._terms, key=lambda w: (len(w), w))

    def items(self) -> Iterator[Tuple[Word, int]]:
        for word in self.support():
            yield word, self._terms[word]

    def total(self) -> int:
        return sum(self._terms.values())

    def weight(self, fn: Callable[[Word], int]) -> int:
        """Σ mult · fn(word)."""
        return sum(mult * fn(word) for word, mult in self._terms.items())

    def as_dict(self) -> Dict[Word, int]:
        return dict(self.items())

    def __add__(self, other: 'FormalSum') -> 'FormalSum':
        result = FormalSum(self.items())
        for word, mult in other.items():
            result.add(word, mult)
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return '0'
        return ' + '.join(
            format_word(w) if m == 1 else f"{m}·{format_word(w)}" for w, m in self.items()
        )
