"""
The ranked multigraphs Λ_T and Λ^x_T, path counting, adjointness checks and export.
"""
import json
import logging
import os
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from dotenv import load_dotenv
from tqdm import tqdm

from .bump_engine import BumpError, bump_delete_trace, insert_bump, insert_bump_at, row_of_wire
from .oracle_verify import enumerate_reduced
from .perm_core import BoundExceededError
from .tableau_chain import StandardTableau, TableauChain
from .word_diagram import FormalSum, Word, find_crossing, format_word

load_dotenv()

logger = logging.getLogger(__name__)

Edge = Tuple[Word, Word]


class GraphMismatchError(ValueError):
    """Raised when two constructions of the same graph disagree."""


def _vertex_key(word: Word) -> Tuple[int, Word]:
    return len(word), word


@dataclass
class RankedMultigraph:
    """
    Vertices grouped by rank (reduced words of π_m) and edge multiplicities
    between consecutive ranks, keyed by (source, target).
    """

    ranks: List[List[Word]]
    edges: Dict[Edge, int]
    x: int = 0
    tableau: Optional[Tuple[Tuple[int, ...], ...]] = None
    meta: Dict[str, Any] = field(default_factory=dict)

    def vertices(self) -> List[Word]:
        return [v for rank in self.ranks for v in rank]

    def out_edges(self, vertex: Word) -> List[Tuple[Word, int]]:
        return sorted(((t, m) for (s, t), m in self.edges.items() if s == vertex), key=lambda e: e[0])

    def sorted_edges(self) -> List[Tuple[Word, Word, int]]:
        return [
            (s, t, m)
            for (s, t), m in sorted(self.edges.items(), key=lambda e: (_vertex_key(e[0][0]), _vertex_key(e[0][1])))
        ]

    def to_dict(self) -> Dict[str, Any]:
        counts = path_counts(self)
        return {
            'tableau': [list(row) for row in self.tableau] if self.tableau is not None else None,
            'x': self.x,
            'ranks': [[list(v) for v in rank] for rank in self.ranks],
            'edges': [[list(s), list(t), m] for s, t, m in self.sorted_edges()],
            'path_counts': [[list(v), counts[v]] for v in self.vertices()],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RankedMultigraph':
        ranks = [sorted((tuple(v) for v in rank), key=_vertex_key) for rank in data['ranks']]
        edges = {(tuple(s), tuple(t)): int(m) for s, t, m in data['edges']}
        tableau = data.get('tableau')
        return cls(
            ranks,
            edges,
            int(data.get('x', 0)),
            tuple(tuple(row) for row in tableau) if tableau is not None else None,
        )

    @classmethod
    def from_json(cls, text: str) -> 'RankedMultigraph':
        return cls.from_dict(json.loads(text))


def _check_scale(chain: TableauChain, max_cells: Optional[int]) -> None:
    bound = max_cells if max_cells is not None else int(os.getenv('GRAPH_MAX_CELLS', '8'))
    if chain.k > bound:
        raise BoundExceededError(f"Shape {chain.tableau.shape} has {chain.k} cells, above the graph bound of {bound}")


def _ranks(chain: TableauChain) -> List[List[Word]]:
    return [sorted(enumerate_reduced(p), key=_vertex_key) for p in chain.permutations]


def build_lambda(tableau: StandardTableau, n: Optional[int] = None, max_cells: Optional[int] = None) -> RankedMultigraph:
    """Λ_T: an edge a -> a' of multiplicity ⟨a, bump_delete(a', t_m)⟩."""
    return build_lambda_x(tableau, 0, n, max_cells)


def bd_x(w: Word, t: int, x: int) -> FormalSum:
    """
    Bump-delete on the word shifted by x, reported in unshifted coordinates.

    The plain bump stops when the crossing reaches row 0; in the shifted
    diagram it is pushed x more times, each time contributing the same
    deletion.

    Args:
        w: Reduced word of a dominant permutation
        t: Starting position
        x: Number of added wires above

    Returns:
        FormalSum of unshifted reduced words
    """
    if x < 0:
        raise ValueError(f"Shift must be non-negative, got {x}")
    trace = bump_delete_trace(w, t)
    result = trace.as_sum()
    if x:
        last = trace.positions[-1]
        if trace.terminal[last - 1] != 0:
            raise BumpError(f"Upward bump of {tuple(w)} at {t} does not reach row 0")
        result.add(trace.summands[-1], x)
    return result


def build_lambda_x(
    tableau: StandardTableau,
    x: int,
    n: Optional[int] = None,
    max_cells: Optional[int] = None,
    check_rule: bool = True,
) -> RankedMultigraph:
    """
    Λ^x_T computed directly from bd_x, optionally checked against the top-gap rule.

    Args:
        tableau: Standard tableau driving the chain
        x: Shift (0 gives Λ_T)
        n: Ambient size
        max_cells: Graph size bound (default: GRAPH_MAX_CELLS)
        check_rule: Compare edge by edge with top_gap_rule_graph

    Returns:
        The RankedMultigraph
    """
    chain = TableauChain(tableau, n)
    _check_scale(chain, max_cells)
    ranks = _ranks(chain)
    edges: Dict[Edge, int] = {}
    for m in tqdm(range(1, chain.k + 1), desc="Building graph", disable=chain.k < 7):
        below = set(ranks[m - 1])
        pair = chain.pair(m)
        for target in ranks[m]:
            for source, mult in bd_x(target, find_crossing(target, pair), x).items():
                if source not in below:
                    raise GraphMismatchError(f"Summand {source} of rank {m - 1} is not a reduced word for π_{m - 1}")
                edges[(source, target)] = edges.get((source, target), 0) + mult
    graph = RankedMultigraph(ranks, edges, x, tableau.rows)
    if check_rule and x:
        rule = top_gap_rule_graph(tableau, x, n, max_cells, ranks)
        if rule.edges != graph.edges:
            diff = sorted(set(rule.edges.items()) ^ set(graph.edges.items()))
            raise GraphMismatchError(f"Top-gap rule disagrees with bd_x on {len(diff)} edge entries: {diff[:4]}")
    logger.info(f"Built graph for shape {tableau.shape} (x={x}): {len(graph.vertices())} vertices, {len(edges)} edges")
    return graph


def top_gap_rule_graph(
    tableau: StandardTableau,
    x: int,
    n: Optional[int] = None,
    max_cells: Optional[int] = None,
    ranks: Optional[List[List[Word]]] = None,
) -> RankedMultigraph:
    """
    Λ^x_T from insert-bumps: every gap gives one edge, plus x more when wire i_m sits in row 1 there.
    """
    chain = TableauChain(tableau, n)
    _check_scale(chain, max_cells)
    ranks = ranks if ranks is not None else _ranks(chain)
    edges: Dict[Edge, int] = defaultdict(int)
    for m in range(1, chain.k + 1):
        wire = chain.wires[m - 1]
        for source in ranks[m - 1]:
            for gap in range(1, m + 1):
                target = insert_bump_at(source, wire, gap, chain.n)
                edges[(source, target)] += 1 + (x if row_of_wire(source, wire, gap) == 1 else 0)
    return RankedMultigraph(ranks, dict(edges), x, tableau.rows)


def path_counts(graph: RankedMultigraph) -> Dict[Word, int]:
    """Number of directed paths from ε to every vertex, with multiplicity."""
    counts: Dict[Word, int] = {v: 0 for v in graph.vertices()}
    if graph.ranks and graph.ranks[0]:
        counts[graph.ranks[0][0]] = 1
    for source, target, mult in graph.sorted_edges():
        counts[target] += counts[source] * mult
    return counts


def out_degrees(graph: RankedMultigraph) -> Dict[Word, int]:
    degrees = {v: 0 for v in graph.vertices()}
    for (source, _), mult in graph.edges.items():
        degrees[source] += mult
    return degrees


def endpoint_distributions(graph: RankedMultigraph) -> Tuple[Dict[Word, Fraction], Dict[Word, Fraction]]:
    """
    Endpoint laws on the top rank: the simple random walk and the uniform maximal path.

    Returns:
        (walk, uniform) as mappings word -> probability
    """
    degrees = out_degrees(graph)
    walk: Dict[Word, Fraction] = {v: Fraction(0) for v in graph.vertices()}
    if graph.ranks and graph.ranks[0]:
        walk[graph.ranks[0][0]] = Fraction(1)
    for source, target, mult in graph.sorted_edges():
        walk[target] += walk[source] * Fraction(mult, degrees[source])
    counts = path_counts(graph)
    top = graph.ranks[-1] if graph.ranks else []
    total = sum(counts[v] for v in top)
    uniform = {v: Fraction(counts[v], total) for v in top}
    return {v: walk[v] for v in top}, uniform


@dataclass
class AdjointnessReport:
    shape: Tuple[int, ...]
    tableau: Tuple[Tuple[int, ...], ...]
    violations: List[Dict[str, Any]]
    checked: int

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            'shape': list(self.shape),
            'tableau': [list(row) for row in self.tableau],
            'checked': self.checked,
            'violations': self.violations,
            'pass': self.passed,
        }


def adjointness_matrix_check(
    tableau: StandardTableau,
    n: Optional[int] = None,
    max_cells: Optional[int] = None,
) -> AdjointnessReport:
    """
    Compare ⟨a, bump_delete(a', t_m)⟩ with the number of gaps g such that
    insert_bump_at(a, i_m, g) = a', for every pair of consecutive ranks.
    """
    chain = TableauChain(tableau, n)
    _check_scale(chain, max_cells)
    ranks = _ranks(chain)
    violations: List[Dict[str, Any]] = []
    checked = 0
    for m in range(1, chain.k + 1):
        wire = chain.wires[m - 1]
        pair = chain.pair(m)
        bd: Dict[Edge, int] = defaultdict(int)
        for target in ranks[m]:
            trace = bump_delete_trace(target, find_crossing(target, pair))
            for source in trace.summands:
                bd[(source, target)] += 1
        ib: Dict[Edge, int] = defaultdict(int)
        for source in ranks[m - 1]:
            for gap in range(1, m + 1):
                ib[(source, insert_bump(source, wire, gap, chain.n).terminal)] += 1
        for source in ranks[m - 1]:
            for target in ranks[m]:
                checked += 1
                left, right = bd.get((source, target), 0), ib.get((source, target), 0)
                if left != right:
                    violations.append({
                        'rank': m,
                        'source': list(source),
                        'target': list(target),
                        'bump_delete': left,
                        'insert_bump': right,
                    })
        stray = [e for e in ib if e[1] not in set(ranks[m])]
        for source, target in stray:
            violations.append({'rank': m, 'source': list(source), 'target': list(target), 'bump_delete': 0, 'insert_bump': ib[(source, target)]})
    if violations:
        logger.warning(f"Adjointness fails for {tableau.to_json()}: {len(violations)} violations")
    return AdjointnessReport(tableau.shape, tableau.rows, violations, checked)


def export(graph: RankedMultigraph, fmt: str = 'dot') -> str:
    """
    Serialize a graph deterministically (rank, then lexicographic word).

    Args:
        graph: Graph to export
        fmt: 'dot' or 'json'

    Returns:
        The serialized graph
    """
    if fmt == 'json':
        return json.dumps(graph.to_dict(), indent=2)
    if fmt != 'dot':
        raise ValueError(f"Unknown graph format: {fmt}")

    counts = path_counts(graph)
    name = 'lambda' if graph.x == 0 else f'lambda_x{graph.x}'
    lines = [f'digraph {name} {{', '    rankdir=TB;']
    index = {v: i for i, v in enumerate(graph.vertices())}
    for m, rank in enumerate(graph.ranks):
        members = ' '.join(f'v{index[v]};' for v in rank)
        lines.append(f'    {{ rank=same; {members} }}')
        for v in rank:
            label = format_word(v) if v else 'ε'
            lines.append(f'    v{index[v]} [label="{label}\\n{counts[v]}"];')
    for source, target, mult in graph.sorted_edges():
        lines.append(f'    v{index[source]} -> v{index[target]} [label="{mult}"];')
    lines.append('}')
    return '\n'.join(lines) + '\n'
