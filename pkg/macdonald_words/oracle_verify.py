"""
Brute-force ground truth: reduced-word enumeration, weights, reverse plane
partitions and the two summation identities checked against them.
"""
import logging
import os
import time
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Any, Dict, List, Optional, Sequence, Tuple

from dotenv import load_dotenv
from tqdm import tqdm

from .perm_core import (
    BoundExceededError,
    Partition,
    Permutation,
    crossing_pairs,
    dominant_from_partition,
    length,
    minimal_ambient,
    validate_partition,
)
from .tableau_chain import generate_partitions
from .word_diagram import Word

load_dotenv()

logger = logging.getLogger(__name__)


def _max_length() -> int:
    return int(os.getenv('ORACLE_MAX_LENGTH', '12'))


def _max_cells() -> int:
    return int(os.getenv('ORACLE_MAX_CELLS', '8'))


def enumerate_reduced(p: Permutation, max_length: Optional[int] = None) -> List[Word]:
    """
    All reduced words of a permutation, by depth-first search.

    A crossing at height h is allowed only if the two wires meeting there
    have not crossed yet and must cross in p; after length(p) such steps the
    word is a reduced word for p.

    Args:
        p: Permutation
        max_length: Largest length(p) accepted (default: ORACLE_MAX_LENGTH)

    Returns:
        Sorted list of reduced words
    """
    bound = max_length if max_length is not None else _max_length()
    target = length(p)
    if target > bound:
        raise BoundExceededError(f"length({p}) = {target} exceeds the enumeration bound of {bound}")
    needed = crossing_pairs(p)
    occ = list(range(p.n + 1))
    word: List[int] = []
    results: List[Word] = []

    def extend() -> None:
        if len(word) == target:
            results.append(tuple(word))
            return
        for h in range(1, p.n):
            upper, lower = occ[h], occ[h + 1]
            if upper < lower and (upper, lower) in needed:
                occ[h], occ[h + 1] = lower, upper
                word.append(h)
                extend()
                word.pop()
                occ[h], occ[h + 1] = upper, lower

    extend()
    return results


@lru_cache(maxsize=None)
def _count_reduced(one_line: Tuple[int, ...]) -> int:
    descents = [h for h in range(1, len(one_line)) if one_line[h - 1] > one_line[h]]
    if not descents:
        return 1
    total = 0
    for h in descents:
        shorter = list(one_line)
        shorter[h - 1], shorter[h] = shorter[h], shorter[h - 1]
        total += _count_reduced(tuple(shorter))
    return total


def count_reduced(p: Permutation) -> int:
    """|Red(p)| by recursion over the last letter of a reduced word."""
    return _count_reduced(p.one_line)


def macdonald_weight(w: Sequence[int]) -> int:
    return prod(w)


def fk_weight(w: Sequence[int], x: int) -> int:
    """∏ (x + a_t)."""
    if x < 0:
        raise ValueError(f"Shift must be non-negative, got {x}")
    return prod(x + a for a in w)


def shift_word(w: Sequence[int], x: int) -> Word:
    return tuple(a + x for a in w)


def rpp_count(shape: Sequence[int], x: int, max_cells: Optional[int] = None) -> int:
    """
    Reverse plane partitions of the shape with entries in 0..x, by backtracking.

    Args:
        shape: Partition λ
        x: Largest entry
        max_cells: Bound on |λ|; x may go up to twice this (default: ORACLE_MAX_CELLS)

    Returns:
        Number of fillings weakly increasing along rows and down columns
    """
    parts = validate_partition(shape)
    bound = max_cells if max_cells is not None else _max_cells()
    if sum(parts) > bound or x > 2 * bound:
        raise BoundExceededError(f"rpp_count({parts}, {x}) exceeds the bound of {bound}")
    if x < 0:
        raise ValueError(f"Entry bound must be non-negative, got {x}")
    cells = [(r, c) for r, row_length in enumerate(parts) for c in range(row_length)]
    filling: Dict[Tuple[int, int], int] = {}

    def fill(index: int) -> int:
        if index == len(cells):
            return 1
        r, c = cells[index]
        low = max(filling.get((r - 1, c), 0), filling.get((r, c - 1), 0))
        total = 0
        for value in range(low, x + 1):
            filling[(r, c)] = value
            total += fill(index + 1)
        del filling[(r, c)]
        return total

    return fill(0)


@dataclass
class VerificationReport:
    shape: Partition
    x: Optional[int]
    lhs: int
    rhs: int
    passed: bool
    elapsed: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            'shape': list(self.shape),
            'x': self.x,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'pass': self.passed,
            'elapsed': round(self.elapsed, 6),
        }


def dominant_of_shape(shape: Sequence[int]) -> Permutation:
    parts = validate_partition(shape)
    return dominant_from_partition(parts, minimal_ambient(parts))


def verify_macdonald(shape: Sequence[int]) -> VerificationReport:
    """
    Σ μ(a) over Red(π_λ) against |λ|!.

    Args:
        shape: Partition λ

    Returns:
        VerificationReport with x = None
    """
    start = time.perf_counter()
    parts = validate_partition(shape)
    words = enumerate_reduced(dominant_of_shape(parts))
    lhs = sum(macdonald_weight(w) for w in words)
    rhs = factorial(sum(parts))
    return VerificationReport(parts, None, lhs, rhs, lhs == rhs, time.perf_counter() - start)


def verify_fk(shape: Sequence[int], x: int) -> VerificationReport:
    """Σ μ_x(a) over Red(π_λ) against |λ|! · rpp(λ, x)."""
    start = time.perf_counter()
    parts = validate_partition(shape)
    words = enumerate_reduced(dominant_of_shape(parts))
    lhs = sum(fk_weight(w, x) for w in words)
    rhs = factorial(sum(parts)) * rpp_count(parts, x)
    return VerificationReport(parts, x, lhs, rhs, lhs == rhs, time.perf_counter() - start)


def verify_all(max_cells: int, x: Optional[int] = None, progress: bool = False) -> List[VerificationReport]:
    """
    Check one identity for every partition with at most max_cells cells.

    Args:
        max_cells: Largest |λ|
        x: None for the Macdonald identity, otherwise the shift of the weighted identity
        progress: Show a tqdm progress bar

    Returns:
        One report per partition, smallest shapes first
    """
    if max_cells > _max_cells():
        raise BoundExceededError(f"max_cells = {max_cells} exceeds the bound of {_max_cells()}")
    shapes = [shape for k in range(0, max_cells + 1) for shape in generate_partitions(k)]
    reports = []
    for shape in tqdm(shapes, desc="Verifying", disable=not progress):
        report = verify_macdonald(shape) if x is None else verify_fk(shape, x)
        if not report.passed:
            logger.warning(f"Identity fails for shape {shape}: {report.lhs} != {report.rhs}")
        reports.append(report)
    return reports
