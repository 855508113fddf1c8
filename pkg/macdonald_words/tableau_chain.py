"""
Partitions, standard Young tableaux and the chain of dominant permutations they drive.
"""
import json
import logging
import os
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from dotenv import load_dotenv

from .perm_core import (
    BoundExceededError,
    Partition,
    Permutation,
    PermutationError,
    WirePair,
    compose,
    dominant_from_partition,
    validate_partition,
)

load_dotenv()

logger = logging.getLogger(__name__)


class TableauError(ValueError):
    """Raised for non-standard tableaux, bad shapes or broken chain steps."""


def parse_shape(text: str) -> Partition:
    """Parse "2,2,1" (or "2 2 1"); an empty string or "0" is the empty shape."""
    cleaned = text.strip().strip('()[]').replace(',', ' ')
    try:
        parts = [int(p) for p in cleaned.split()]
    except ValueError:
        raise TableauError(f"Cannot parse shape '{text}'")
    parts = [p for p in parts if p != 0]
    try:
        return validate_partition(parts)
    except PermutationError as e:
        raise TableauError(str(e))


def staircase(n: int) -> Partition:
    """Shape (n-1, ..., 1) of the longest element of S_n."""
    if n < 1:
        raise TableauError(f"Staircase needs n >= 1, got {n}")
    return tuple(range(n - 1, 0, -1))


def generate_partitions(k: int, largest: Optional[int] = None) -> Iterator[Partition]:
    """All partitions of k in reverse lexicographic order."""
    if k == 0:
        yield ()
        return
    largest = k if largest is None else largest
    for first in range(min(k, largest), 0, -1):
        for rest in generate_partitions(k - first, first):
            yield (first,) + rest


def hook_length_count(shape: Sequence[int]) -> int:
    """Number of standard tableaux of the shape, by the hook length formula."""
    parts = validate_partition(shape)
    conjugate = [sum(1 for p in parts if p > c) for c in range(parts[0])] if parts else []
    hooks = 1
    for r, row_length in enumerate(parts):
        for c in range(row_length):
            hooks *= (row_length - c - 1) + (conjugate[c] - r - 1) + 1
    return factorial(sum(parts)) // hooks


@dataclass(frozen=True)
class StandardTableau:
    """Filling of a Young diagram by 1..k, increasing along rows and down columns."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, 'rows', rows)
        try:
            validate_partition(len(row) for row in rows)
        except PermutationError:
            raise TableauError(f"Rows {rows} do not form a Young diagram")
        entries = sorted(v for row in rows for v in row)
        if entries != list(range(1, len(entries) + 1)):
            raise TableauError(f"Entries of {rows} are not 1..{len(entries)}")
        for r, row in enumerate(rows):
            for c, value in enumerate(row):
                if c > 0 and row[c - 1] >= value:
                    raise TableauError(f"Row {r + 1} of {rows} is not increasing")
                if r > 0 and rows[r - 1][c] >= value:
                    raise TableauError(f"Column {c + 1} of {rows} is not increasing")

    @classmethod
    def parse(cls, text: str) -> 'StandardTableau':
        """Parse the JSON array-of-rows form, e.g. [[1,3],[2,5],[4]]."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise TableauError(f"Tableau is not valid JSON: {str(e)}")
        if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
            raise TableauError("Tableau must be a JSON array of rows")
        return cls(tuple(tuple(row) for row in data))

    def to_json(self) -> str:
        return json.dumps([list(row) for row in self.rows])

    @property
    def shape(self) -> Partition:
        return tuple(len(row) for row in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    @cached_property
    def _row_index(self) -> Dict[int, int]:
        return {value: r for r, row in enumerate(self.rows, 1) for value in row}

    def row_of(self, entry: int) -> int:
        try:
            return self._row_index[entry]
        except KeyError:
            raise TableauError(f"Entry {entry} is not in the tableau")


def row_major_tableau(shape: Sequence[int]) -> StandardTableau:
    parts = validate_partition(shape)
    rows = []
    start = 1
    for length in parts:
        rows.append(tuple(range(start, start + length)))
        start += length
    return StandardTableau(tuple(rows))


def enumerate_syt(shape: Sequence[int], max_cells: Optional[int] = None) -> List[StandardTableau]:
    """
    All standard tableaux of a shape.

    Args:
        shape: Partition λ
        max_cells: Largest |λ| accepted (default: SYT_MAX_CELLS)

    Returns:
        List of tableaux, each produced once
    """
    parts = validate_partition(shape)
    max_cells = max_cells if max_cells is not None else int(os.getenv('SYT_MAX_CELLS', '10'))
    k = sum(parts)
    if k > max_cells:
        raise BoundExceededError(f"Shape {parts} has {k} cells, above the bound of {max_cells}")

    results: List[StandardTableau] = []
    filling: List[List[int]] = [[] for _ in parts]

    def place(entry: int) -> None:
        if entry > k:
            results.append(StandardTableau(tuple(tuple(row) for row in filling)))
            return
        for r, row in enumerate(filling):
            if len(row) < parts[r] and (r == 0 or len(filling[r - 1]) > len(row)):
                row.append(entry)
                place(entry + 1)
                row.pop()

    place(1)
    return results


def chain_from_tableau(tableau: StandardTableau) -> List[Partition]:
    """Shapes λ_0 = ∅ < λ_1 < ... < λ_k of the subtableaux holding 1..m."""
    counts = [0] * len(tableau.rows)
    chain: List[Partition] = [()]
    for m in range(1, tableau.size + 1):
        counts[tableau.row_of(m) - 1] += 1
        chain.append(tuple(c for c in counts if c > 0))
    return chain


def insertion_wire(tableau: StandardTableau, m: int) -> int:
    """i_m, the row of T containing m."""
    if not 1 <= m <= tableau.size:
        raise TableauError(f"Step {m} out of range 1..{tableau.size}")
    return tableau.row_of(m)


def wire_pair(p_prev: Permutation, p_next: Permutation) -> WirePair:
    """
    Pair {r, s} such that p_next ∘ p_prev⁻¹ is the transposition (r s).

    Args:
        p_prev: Permutation at rank m-1
        p_next: Permutation at rank m

    Returns:
        (r, s) with r < s
    """
    step = compose(p_next, p_prev.inverse())
    moved = [x for x in range(1, step.n + 1) if step(x) != x]
    if len(moved) != 2 or step(moved[0]) != moved[1]:
        raise TableauError(f"{p_next} ∘ {p_prev}⁻¹ = {step} is not a transposition")
    return moved[0], moved[1]


class TableauChain:
    def __init__(self, tableau: StandardTableau, n: Optional[int] = None):
        """
        Initialize the chain driven by a standard tableau.

        Args:
            tableau: Standard Young tableau T of shape λ
            n: Ambient size (defaults to λ_1 + number of rows)
        """
        self.tableau = tableau
        shape = tableau.shape
        self.n = n if n is not None else max((shape[0] if shape else 0) + len(shape), 1)
        self.wires = tuple(insertion_wire(tableau, m) for m in range(1, tableau.size + 1))
        try:
            self.final_permutation = dominant_from_partition(shape, self.n)
        except PermutationError as e:
            raise TableauError(f"Ambient size too small for the chain: {str(e)}")

    @property
    def k(self) -> int:
        return len(self.wires)

    @cached_property
    def shapes(self) -> List[Partition]:
        return chain_from_tableau(self.tableau)

    @cached_property
    def permutations(self) -> List[Permutation]:
        """π_0 = id, ..., π_k, all in S_n."""
        return [dominant_from_partition(shape, self.n) for shape in self.shapes]

    @cached_property
    def pairs(self) -> List[WirePair]:
        """(r_m, s_m) for m = 1..k (index m-1)."""
        perms = self.permutations
        pairs = [wire_pair(perms[m - 1], perms[m]) for m in range(1, self.k + 1)]
        for m, (r, _) in enumerate(pairs, 1):
            if r != self.wires[m - 1]:
                raise TableauError(f"Step {m}: pair {pairs[m - 1]} does not start at wire {self.wires[m - 1]}")
        return pairs

    def permutation(self, m: int) -> Permutation:
        return self.permutations[m]

    def pair(self, m: int) -> WirePair:
        return self.pairs[m - 1]
