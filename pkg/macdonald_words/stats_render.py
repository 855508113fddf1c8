"""
Statistics of sampled words and their renderings (wiring diagrams, permutation scatter plots).
"""
import io
import logging
import os
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import svgwrite
from dotenv import load_dotenv
from scipy import stats as sp_stats

from .perm_core import Permutation
from .word_diagram import Word, WordError, permutation_of

load_dotenv()

logger = logging.getLogger(__name__)

ASCII_MAX_WIRES = 40


def _ambient(w: Sequence[int], n: Optional[int]) -> int:
    return n if n is not None else max(w, default=0) + 1


def partial_permutation(w: Sequence[int], t: int, n: Optional[int] = None) -> Permutation:
    """π_t, the permutation of the first t crossings."""
    if not 0 <= t <= len(w):
        raise WordError(f"Prefix length {t} out of range 0..{len(w)}")
    return permutation_of(tuple(w)[:t], _ambient(w, n))


def halfway_permutation(w: Sequence[int], n: Optional[int] = None) -> Permutation:
    return partial_permutation(w, len(w) // 2, n)


def trajectory(w: Sequence[int], wire: int, n: Optional[int] = None) -> Tuple[int, ...]:
    """
    Row of a wire after each of 0..len(w) crossings.

    Args:
        w: Word
        wire: Wire label
        n: Ambient size

    Returns:
        Rows, starting with the wire's own label
    """
    n = _ambient(w, n)
    if not 1 <= wire <= n:
        raise WordError(f"Wire {wire} is not among 1..{n}")
    row = wire
    rows = [row]
    for h in w:
        if h == row:
            row += 1
        elif h == row - 1:
            row -= 1
        rows.append(row)
    return tuple(rows)


def crossing_histogram(w: Sequence[int], bins: Tuple[int, int] = (10, 10), n: Optional[int] = None) -> np.ndarray:
    """
    Crossing counts per (position, height) bin.

    Args:
        w: Word
        bins: Number of position bins and height bins
        n: Ambient size (heights range over 1..n-1)

    Returns:
        Integer array of shape bins, summing to len(w)
    """
    position_bins, height_bins = bins
    if position_bins < 1 or height_bins < 1:
        raise ValueError(f"Bin counts must be positive, got {bins}")
    if not w:
        return np.zeros(bins, dtype=np.int64)
    n = _ambient(w, n)
    if min(w) < 1 or max(w) > n - 1:
        raise WordError(f"Heights of the word must lie in 1..{n - 1}")
    heights = np.asarray(w, dtype=float)
    positions = np.arange(1, len(w) + 1, dtype=float)
    counts, _, _ = np.histogram2d(
        positions,
        heights,
        bins=(position_bins, height_bins),
        range=[[0.5, len(w) + 0.5], [0.5, n - 0.5]],
    )
    return counts.astype(np.int64)


def histogram_csv(counts: np.ndarray) -> str:
    """CSV with header position,height,count; bin indices are 1-based."""
    lines = ['position,height,count']
    for (p, h), c in np.ndenumerate(counts):
        lines.append(f'{p + 1},{h + 1},{int(c)}')
    return '\n'.join(lines) + '\n'


def default_wires(n: int, step: int = 50) -> List[int]:
    """Wires 1, step, 2*step, ... and n."""
    return sorted({1, n} | set(range(step, n + 1, step)))


def _wire_rows(w: Word, n: int) -> List[List[int]]:
    """occupancy columns: column t lists the wire in rows 1..n after t crossings."""
    occ = list(range(n + 1))
    columns = [occ[1:]]
    for h in w:
        occ[h], occ[h + 1] = occ[h + 1], occ[h]
        columns.append(occ[1:])
    return columns


def render_ascii(w: Sequence[int], wires: Optional[Iterable[int]] = None, n: Optional[int] = None) -> str:
    """Text wiring diagram: one line per row, '*' marks a crossing, 'X' sits between the rows it swaps."""
    word = tuple(w)
    n = _ambient(word, n)
    if n > ASCII_MAX_WIRES:
        raise ValueError(f"ASCII rendering is limited to {ASCII_MAX_WIRES} wires, got {n}")
    selected = set(range(1, n + 1)) if wires is None else set(wires)
    columns = _wire_rows(word, n)
    width = len(str(n))
    lines = []
    for row in range(1, n + 1):
        start = columns[0][row - 1]
        line = [f"{start:>{width}} -" if start in selected else " " * (width + 2)]
        for t, h in enumerate(word, 1):
            before = columns[t - 1][row - 1]
            after = columns[t][row - 1]
            involved = h in (row - 1, row)
            if involved and (before in selected or after in selected):
                line.append('-*')
            elif not involved and after in selected:
                line.append('--')
            else:
                line.append('  ')
        end = columns[-1][row - 1]
        line.append(f' {end}' if end in selected else '')
        lines.append(''.join(line).rstrip())
        if row < n:
            gap = [' ' * (width + 2)]
            for t, h in enumerate(word, 1):
                pair = (columns[t - 1][row - 1], columns[t - 1][row])
                gap.append(' X' if h == row and (pair[0] in selected or pair[1] in selected) else '  ')
            lines.append(''.join(gap).rstrip())
    return '\n'.join(lines) + '\n'


def render_svg(
    w: Sequence[int],
    wires: Optional[Iterable[int]] = None,
    n: Optional[int] = None,
    scale: Optional[float] = None,
) -> str:
    """
    SVG wiring diagram in matrix coordinates: positions run left to right, rows top down.

    Args:
        w: Word
        wires: Wires to draw (default: all)
        n: Ambient size
        scale: Pixels per unit (default: RENDER_SCALE)

    Returns:
        SVG document text
    """
    word = tuple(w)
    n = _ambient(word, n)
    unit = float(scale if scale is not None else os.getenv('RENDER_SCALE', '4'))
    selected = sorted(set(range(1, n + 1)) if wires is None else set(wires))
    width = (len(word) + 2) * unit
    height = (n + 1) * unit
    dwg = svgwrite.Drawing(size=(f'{width:g}', f'{height:g}'), profile='full', debug=False)
    dwg.add(dwg.rect(insert=(0, 0), size=(f'{width:g}', f'{height:g}'), fill='white'))

    wire_group = dwg.g(fill='none', stroke='black', stroke_width=max(unit / 8, 0.25))
    for wire in selected:
        rows = trajectory(word, wire, n)
        points = [((t + 1) * unit, row * unit) for t, row in enumerate(rows)]
        wire_group.add(dwg.polyline(points=points))
    dwg.add(wire_group)

    dots = dwg.g(fill='black')
    radius = max(unit / 4, 0.5)
    show = set(selected)
    occ = list(range(n + 1))
    for t, h in enumerate(word, 1):
        if occ[h] in show or occ[h + 1] in show:
            dots.add(dwg.circle(center=((t + 0.5) * unit, (h + 0.5) * unit), r=radius))
        occ[h], occ[h + 1] = occ[h + 1], occ[h]
    dwg.add(dots)

    buffer = io.StringIO()
    dwg.write(buffer)
    return buffer.getvalue()


def render_wiring(
    w: Sequence[int],
    wires: Optional[Iterable[int]] = None,
    fmt: str = 'ascii',
    n: Optional[int] = None,
    scale: Optional[float] = None,
) -> str:
    if fmt == 'ascii':
        return render_ascii(w, wires, n)
    if fmt == 'svg':
        return render_svg(w, wires, n, scale)
    raise ValueError(f"Unknown wiring format: {fmt}")


def scatter_points(p: Permutation) -> List[Tuple[int, int]]:
    """Matrix entries (π(i), i) holding a one."""
    return [(p(i), i) for i in range(1, p.n + 1)]


def render_matrix_scatter(p: Permutation, fmt: str = 'svg', scale: Optional[float] = None) -> str:
    """
    Permutation matrix as dots (SVG) or as a row,col CSV.

    Args:
        p: Permutation
        fmt: 'svg' or 'csv'
        scale: Pixels per unit for SVG (default: RENDER_SCALE)

    Returns:
        The rendering
    """
    points = scatter_points(p)
    if fmt == 'csv':
        return 'row,col\n' + ''.join(f'{r},{c}\n' for r, c in points)
    if fmt != 'svg':
        raise ValueError(f"Unknown scatter format: {fmt}")
    unit = float(scale if scale is not None else os.getenv('RENDER_SCALE', '4'))
    side = (p.n + 1) * unit
    dwg = svgwrite.Drawing(size=(f'{side:g}', f'{side:g}'), profile='full', debug=False)
    dwg.add(dwg.rect(insert=(0, 0), size=(f'{side:g}', f'{side:g}'), fill='white', stroke='black'))
    dots = dwg.g(fill='black')
    radius = max(unit / 3, 0.5)
    for r, c in points:
        dots.add(dwg.circle(center=(c * unit, r * unit), r=radius))
    dwg.add(dots)
    buffer = io.StringIO()
    dwg.write(buffer)
    return buffer.getvalue()


def goodness_of_fit(samples: Iterable[Word], expected: Mapping[Word, float]) -> Dict[str, float]:
    """
    Chi-square test of sampled word frequencies against a distribution.

    Args:
        samples: Sampled words
        expected: Probabilities of every word in the support

    Returns:
        {'statistic', 'p_value', 'samples'}
    """
    support = sorted(expected)
    index = {word: i for i, word in enumerate(support)}
    observed = np.zeros(len(support), dtype=np.int64)
    for word in samples:
        if word not in index:
            raise ValueError(f"Sampled word {word} is outside the expected support")
        observed[index[word]] += 1
    total = int(observed.sum())
    probabilities = np.array([float(expected[word]) for word in support])
    result = sp_stats.chisquare(observed, f_exp=probabilities * total)
    logger.info(f"chi-square = {result.statistic:.3f}, p = {result.pvalue:.4f} over {total} samples")
    return {'statistic': float(result.statistic), 'p_value': float(result.pvalue), 'samples': total}
