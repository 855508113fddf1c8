"""
Permutations in one-line notation: inversions, Rothe diagrams and dominance.
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Sequence, Set, Tuple

Partition = Tuple[int, ...]
Cell = Tuple[int, int]
WirePair = Tuple[int, int]


class PermutationError(ValueError):
    """Raised for malformed permutations or incompatible sizes."""


class BoundExceededError(ValueError):
    """Raised when a brute-force computation is asked to go past its configured size."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}; position i of one_line holds π(i)."""

    one_line: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.one_line)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise PermutationError(f"Not a permutation of 1..{len(values)}: {values}")
        object.__setattr__(self, 'one_line', values)

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> 'Permutation':
        """
        Parse a permutation written as "4213" or "4 2 1 3" / "4,2,1,3".

        Args:
            text: One-line notation; the compact form only works for n <= 9

        Returns:
            The parsed Permutation
        """
        cleaned = text.strip().strip('()[]')
        if not cleaned:
            return cls(())
        if any(sep in cleaned for sep in (',', ' ')):
            parts = cleaned.replace(',', ' ').split()
        else:
            parts = list(cleaned)
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as e:
            raise PermutationError(f"Cannot parse permutation '{text}': {str(e)}")

    @property
    def n(self) -> int:
        return len(self.one_line)

    def __call__(self, i: int) -> int:
        return self.one_line[i - 1]

    def inverse(self) -> 'Permutation':
        inv = [0] * self.n
        for i, v in enumerate(self.one_line, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def padded(self, n: int) -> 'Permutation':
        """Embed into S_n by fixing n(self)+1..n."""
        if n < self.n:
            raise PermutationError(f"Cannot shrink a permutation of size {self.n} to {n}")
        return Permutation(self.one_line + tuple(range(self.n + 1, n + 1)))

    def __str__(self) -> str:
        if self.n <= 9:
            return ''.join(str(v) for v in self.one_line)
        return ' '.join(str(v) for v in self.one_line)


@dataclass(frozen=True)
class RotheDiagram:
    """Cells (row, column) in 1-based matrix coordinates."""

    cells: FrozenSet[Cell]

    def __len__(self) -> int:
        return len(self.cells)

    def row_lengths(self) -> List[int]:
        if not self.cells:
            return []
        last_row = max(r for r, _ in self.cells)
        return [sum(1 for r, _ in self.cells if r == row) for row in range(1, last_row + 1)]

    def is_young(self) -> bool:
        """True iff the cells form a Young diagram anchored at (1,1)."""
        lengths = self.row_lengths()
        expected = {(r, c) for r, length in enumerate(lengths, 1) for c in range(1, length + 1)}
        if expected != set(self.cells):
            return False
        return all(lengths[i] >= lengths[i + 1] > 0 for i in range(len(lengths) - 1))

    def shape(self) -> Partition:
        if not self.is_young():
            raise PermutationError("Rothe diagram is not a Young diagram")
        return tuple(self.row_lengths())


def transposition(r: int, s: int, n: int) -> Permutation:
    """The permutation of S_n exchanging r and s."""
    if not (1 <= r <= n and 1 <= s <= n) or r == s:
        raise PermutationError(f"Invalid transposition ({r} {s}) in S_{n}")
    values = list(range(1, n + 1))
    values[r - 1], values[s - 1] = s, r
    return Permutation(tuple(values))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """
    Compose two permutations as maps: x -> p(q(x)).

    Args:
        p: Outer permutation
        q: Inner permutation

    Returns:
        The composite p∘q
    """
    if p.n != q.n:
        raise PermutationError(f"Size mismatch: {p.n} vs {q.n}")
    return Permutation(tuple(p(q(x)) for x in range(1, q.n + 1)))


def length(p: Permutation) -> int:
    """Number of inversions i < j with π(i) > π(j)."""
    values = p.one_line
    return sum(1 for i in range(len(values)) for j in range(i + 1, len(values)) if values[i] > values[j])


def lehmer_code(p: Permutation) -> Tuple[int, ...]:
    """c_i = #{j > i : π(j) < π(i)}."""
    values = p.one_line
    return tuple(sum(1 for j in range(i + 1, len(values)) if values[j] < values[i]) for i in range(len(values)))


def from_lehmer_code(code: Sequence[int]) -> Permutation:
    unused = list(range(1, len(code) + 1))
    values = []
    for i, c in enumerate(code):
        if not 0 <= c < len(unused):
            raise PermutationError(f"Invalid Lehmer code entry {c} at position {i + 1}")
        values.append(unused.pop(c))
    return Permutation(tuple(values))


def rothe_diagram(p: Permutation) -> RotheDiagram:
    """Cells (π(j), i) for every inversion i < j, π(i) > π(j)."""
    values = p.one_line
    cells = frozenset(
        (values[j], i + 1)
        for i in range(len(values))
        for j in range(i + 1, len(values))
        if values[i] > values[j]
    )
    return RotheDiagram(cells)


def is_dominant(p: Permutation) -> bool:
    """True iff p avoids the pattern 132."""
    values = p.one_line
    prefix_min = float('inf')
    for j, v in enumerate(values):
        if prefix_min < v:
            # any later value strictly between prefix_min and v completes a 132
            if any(prefix_min < w < v for w in values[j + 1:]):
                return False
        prefix_min = min(prefix_min, v)
    return True


def conjugate_partition(parts: Sequence[int]) -> Partition:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def validate_partition(parts: Iterable[int]) -> Partition:
    """Return parts as a tuple, raising if they are not a partition."""
    result = tuple(int(p) for p in parts)
    if any(p <= 0 for p in result) or any(result[i] < result[i + 1] for i in range(len(result) - 1)):
        raise PermutationError(f"Not a partition: {result}")
    return result


def minimal_ambient(parts: Sequence[int]) -> int:
    """Smallest n such that the dominant permutation of shape parts lives in S_n."""
    conjugate = conjugate_partition(validate_partition(parts))
    return max((c + i for i, c in enumerate(conjugate, 1)), default=1)


def dominant_from_partition(parts: Sequence[int], n: int) -> Permutation:
    """
    Build the unique dominant permutation of S_n whose Rothe diagram has the given shape.

    The Lehmer code of a dominant permutation lists the column lengths of its
    diagram, so c_i = λ'_i.

    Args:
        parts: Partition λ (weakly decreasing positive parts)
        n: Ambient size

    Returns:
        The dominant Permutation
    """
    shape = validate_partition(parts)
    needed = minimal_ambient(shape) if shape else 0
    if n < needed:
        raise PermutationError(f"Shape {shape} needs n >= {needed}, got {n}")
    conjugate = conjugate_partition(shape)
    code = list(conjugate) + [0] * (n - len(conjugate))
    return from_lehmer_code(code)


def crossing_pairs(p: Permutation) -> Set[WirePair]:
    """Wire pairs r < s with π⁻¹(r) > π⁻¹(s); each crosses once in any reduced word."""
    inv = p.inverse().one_line
    return {
        (r, s)
        for r in range(1, p.n + 1)
        for s in range(r + 1, p.n + 1)
        if inv[r - 1] > inv[s - 1]
    }
