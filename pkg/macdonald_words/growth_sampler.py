"""
Markov growth of reduced words: iterated insert-bump at uniformly random gaps.
"""
import itertools
import logging
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
from dotenv import load_dotenv
from tqdm import tqdm

from .bump_engine import WiredWord, bump_delete_trace, insert_bump, insert_bump_at
from .perm_core import BoundExceededError
from .tableau_chain import StandardTableau, TableauChain
from .word_diagram import Word, find_crossing, is_reduced, permutation_of

load_dotenv()

logger = logging.getLogger(__name__)

VALIDATION_LEVELS = ('full', 'final', 'none')
ENGINES = ('tuple', 'array', 'auto')
# words longer than this grow on the numpy engine under 'auto'
ARRAY_ENGINE_THRESHOLD = 64


class GrowthError(ValueError):
    """Raised for invalid insertion sequences or inconsistent growth paths."""


@dataclass(frozen=True)
class GrowthPath:
    """
    One maximal path of the growth.

    words[m] is the word after m insertions (words[0] is empty) and pushes[m-1]
    the number of downward pushes step m needed; the pushes tell parallel
    edges apart when the path is read backwards.
    """

    tableau: StandardTableau
    insertions: Tuple[int, ...]
    words: Tuple[Word, ...]
    pushes: Tuple[int, ...]

    @property
    def final_word(self) -> Word:
        return self.words[-1]


def validate_insertions(seq: Sequence[int], k: int) -> Tuple[int, ...]:
    insertions = tuple(int(t) for t in seq)
    if len(insertions) != k:
        raise GrowthError(f"Expected {k} insertion positions, got {len(insertions)}")
    for m, t in enumerate(insertions, 1):
        if not 1 <= t <= m:
            raise GrowthError(f"Insertion position t_{m} = {t} is outside 1..{m}")
    return insertions


def enumerate_insertion_sequences(k: int) -> Iterator[Tuple[int, ...]]:
    """The set I_k of sequences (t_1..t_k) with 1 <= t_m <= m."""
    return itertools.product(*(range(1, m + 1) for m in range(1, k + 1)))


def grow(
    tableau: StandardTableau,
    seq: Sequence[int],
    n: Optional[int] = None,
    validation: str = 'full',
) -> GrowthPath:
    """
    Replay the growth for a fixed insertion sequence.

    Args:
        tableau: Standard tableau driving the chain
        seq: Insertion positions t_1..t_k with t_m in 1..m
        n: Ambient size (defaults to the chain default)
        validation: 'full' checks every intermediate permutation, 'final' only the last

    Returns:
        GrowthPath with every visited word
    """
    chain = TableauChain(tableau, n)
    insertions = validate_insertions(seq, chain.k)
    words: List[Word] = [()]
    pushes: List[int] = []
    for m, (wire, gap) in enumerate(zip(chain.wires, insertions), 1):
        trace = insert_bump(words[-1], wire, gap, chain.n)
        words.append(trace.terminal)
        pushes.append(len(trace.pushed))
        if validation == 'full':
            _check_rank(chain, m, trace.terminal)
    if validation == 'final' and chain.k:
        _check_rank(chain, chain.k, words[-1])
    return GrowthPath(tableau, insertions, tuple(words), tuple(pushes))


def _check_rank(chain: TableauChain, m: int, word: Word) -> None:
    if not is_reduced(word) or permutation_of(word, chain.n) != chain.permutation(m):
        raise GrowthError(f"Step {m} produced {word}, which is not a reduced word for {chain.permutation(m)}")


def _gap_candidates(word: Word, previous: Word, pair: Tuple[int, int]) -> List[Tuple[int, int]]:
    """(pushes, gap) for every insert-bump from previous that lands on word."""
    trace = bump_delete_trace(word, find_crossing(word, pair))
    return [
        (j, position)
        for j, (position, summand) in enumerate(zip(trace.positions, trace.summands))
        if summand == previous
    ]


def ungrow(
    tableau: StandardTableau,
    words: Sequence[Sequence[int]],
    pushes: Optional[Sequence[int]] = None,
    n: Optional[int] = None,
) -> Tuple[int, ...]:
    """
    Read the insertion positions back off a recorded path.

    Step m is undone by bump-deleting the crossing of wires (r_m, s_m): the
    stage whose deletion gives the previous word names the gap. When the
    same pair of words is joined by several edges the recorded push counts
    pick the stage.

    Args:
        tableau: Standard tableau driving the chain
        words: w_0 = ε, w_1, ..., w_k
        pushes: Downward push counts per step, as recorded by grow
        n: Ambient size (defaults to the chain default)

    Returns:
        The insertion sequence t_1..t_k
    """
    chain = TableauChain(tableau, n)
    path = [tuple(w) for w in words]
    if len(path) != chain.k + 1 or path[0] != ():
        raise GrowthError(f"Expected {chain.k + 1} words starting from the empty word")
    if pushes is not None and len(pushes) != chain.k:
        raise GrowthError(f"Expected {chain.k} push counts, got {len(pushes)}")

    insertions: List[int] = []
    for m in range(1, chain.k + 1):
        candidates = _gap_candidates(path[m], path[m - 1], chain.pair(m))
        if pushes is not None:
            matches = [gap for j, gap in candidates if j == pushes[m - 1]]
        else:
            matches = sorted({gap for _, gap in candidates})
        if len(matches) != 1:
            raise GrowthError(
                f"Step {m}: {len(matches)} gaps lead from {path[m - 1]} to {path[m]}; "
                "pass the recorded push counts or use ungrow_words"
            )
        insertions.append(matches[0])
    return tuple(insertions)


def ungrow_words(tableau: StandardTableau, words: Sequence[Sequence[int]], n: Optional[int] = None) -> Set[Tuple[int, ...]]:
    """All insertion sequences whose growth visits exactly these words."""
    chain = TableauChain(tableau, n)
    path = [tuple(w) for w in words]
    if len(path) != chain.k + 1 or path[0] != ():
        raise GrowthError(f"Expected {chain.k + 1} words starting from the empty word")
    per_step = [
        sorted({gap for _, gap in _gap_candidates(path[m], path[m - 1], chain.pair(m))})
        for m in range(1, chain.k + 1)
    ]
    return set(itertools.product(*per_step))


class GrowthSampler:
    def __init__(
        self,
        tableau: StandardTableau,
        n: Optional[int] = None,
        validation: Optional[str] = None,
        engine: Optional[str] = None,
    ):
        """
        Initialize the sampler for one tableau.

        Args:
            tableau: Standard tableau driving the chain
            n: Ambient size (defaults to the chain default)
            validation: 'full', 'final' or 'none' (default: SAMPLER_VALIDATION)
            engine: 'tuple', 'array' or 'auto' (default: SAMPLER_ENGINE)
        """
        self.chain = TableauChain(tableau, n)
        self.validation = validation or os.getenv('SAMPLER_VALIDATION', 'final')
        self.engine = engine or os.getenv('SAMPLER_ENGINE', 'auto')
        if self.validation not in VALIDATION_LEVELS:
            raise ValueError(f"Unknown validation level: {self.validation}")
        if self.engine not in ENGINES:
            raise ValueError(f"Unknown sampler engine: {self.engine}")

    def _use_array(self) -> bool:
        if self.engine == 'auto':
            return self.chain.k > ARRAY_ENGINE_THRESHOLD
        return self.engine == 'array'

    def draw_gaps(self, rng: np.random.Generator, count: Optional[int] = None) -> np.ndarray:
        """t_m uniform on 1..m, independently; shape (k,) or (count, k)."""
        highs = np.arange(2, self.chain.k + 2)
        size = None if count is None else (count, self.chain.k)
        return rng.integers(1, highs, size=size)

    def grow_word(self, gaps: Sequence[int]) -> Word:
        """
        Final word of the growth along the given gaps.

        Args:
            gaps: Insertion positions t_1..t_k

        Returns:
            The reduced word w_k
        """
        n = self.chain.n
        if self._use_array():
            wired = WiredWord(n)
            for m, (wire, gap) in enumerate(zip(self.chain.wires, gaps), 1):
                wired.insert_bump(wire, int(gap))
                if self.validation == 'full' and not wired.is_reduced():
                    raise GrowthError(f"Step {m} left a non-reduced word")
            word = wired.word()
        else:
            word = ()
            for m, (wire, gap) in enumerate(zip(self.chain.wires, gaps), 1):
                word = insert_bump_at(word, wire, int(gap), n)
                if self.validation == 'full':
                    _check_rank(self.chain, m, word)
        if self.validation != 'none':
            self._check_final(word)
        return word

    def _check_final(self, word: Word) -> None:
        if not is_reduced(word):
            raise GrowthError(f"Sampled word of length {len(word)} is not reduced")
        if self.chain.k and permutation_of(word, self.chain.n) != self.chain.final_permutation:
            raise GrowthError("Sampled word does not reach the dominant permutation of the shape")

    def sample(self, seed: Optional[int] = None) -> Word:
        rng = np.random.default_rng(seed)
        return self.grow_word(self.draw_gaps(rng))

    def sample_many(self, count: int, seed: Optional[int] = None, progress: bool = False) -> List[Word]:
        """
        Draw several independent words from one seeded generator.

        Args:
            count: Number of samples
            seed: Seed of the numpy Generator
            progress: Show a tqdm progress bar

        Returns:
            List of sampled words
        """
        rng = np.random.default_rng(seed)
        gaps = self.draw_gaps(rng, count)
        rows = tqdm(gaps, desc="Sampling", disable=not progress)
        return [self.grow_word(row) for row in rows]

    def exact_distribution(self, max_cells: Optional[int] = None) -> Dict[Word, Fraction]:
        """
        Endpoint distribution of the growth, by enumerating I_k.

        Args:
            max_cells: Largest k accepted (default: GRAPH_MAX_CELLS)

        Returns:
            Mapping final word -> probability
        """
        max_cells = max_cells if max_cells is not None else int(os.getenv('GRAPH_MAX_CELLS', '8'))
        k = self.chain.k
        if k > max_cells:
            raise BoundExceededError(f"Enumerating I_{k} exceeds the bound of {max_cells} cells")
        counts: Counter = Counter()
        n = self.chain.n
        for seq in enumerate_insertion_sequences(k):
            word: Word = ()
            for wire, gap in zip(self.chain.wires, seq):
                word = insert_bump_at(word, wire, gap, n)
            counts[word] += 1
        total = factorial(k)
        logger.debug(f"Enumerated {total} insertion sequences into {len(counts)} words")
        return {word: Fraction(c, total) for word, c in sorted(counts.items())}


def sample(tableau: StandardTableau, seed: Optional[int] = None, n: Optional[int] = None) -> Word:
    """One word drawn with probability μ(a)/k!."""
    return GrowthSampler(tableau, n).sample(seed)
