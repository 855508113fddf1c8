"""
CLI for sampling reduced words, verifying the weight identities and exporting the growth graphs.
"""
import argparse
import json
import logging
import os
import sys
from collections import Counter
from math import factorial
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from dotenv import load_dotenv
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .bump_engine import BumpError
from .growth_sampler import GrowthError, GrowthSampler, grow
from .lambda_graph import GraphMismatchError, adjointness_matrix_check, build_lambda_x, export, path_counts
from .oracle_verify import VerificationReport, macdonald_weight, verify_all
from .perm_core import Partition
from .stats_render import (
    crossing_histogram,
    default_wires,
    halfway_permutation,
    histogram_csv,
    render_matrix_scatter,
    render_wiring,
)
from .tableau_chain import StandardTableau, parse_shape, row_major_tableau, staircase
from .word_diagram import format_word

load_dotenv()

logging.basicConfig(
    level=os.getenv('LOG_LEVEL', 'INFO'),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

console = Console(stderr=True)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def load_tableau(source: str, shape: Partition) -> StandardTableau:
    """
    Resolve the --tableau option.

    Args:
        source: 'row-major' or a path to a JSON array of rows
        shape: Shape requested on the command line

    Returns:
        The StandardTableau, checked against the shape
    """
    if source == 'row-major':
        return row_major_tableau(shape)
    tableau = StandardTableau.parse(Path(source).read_text())
    if tableau.shape != tuple(shape):
        raise ValueError(f"Tableau in {source} has shape {tableau.shape}, expected {tuple(shape)}")
    return tableau


def resolve_shape(args: argparse.Namespace) -> Tuple[Partition, Optional[int]]:
    """Shape and ambient size from --shape or --reverse."""
    if args.reverse is not None:
        if args.reverse < 1:
            raise ValueError(f"--reverse needs N >= 1, got {args.reverse}")
        return staircase(args.reverse), args.reverse
    return parse_shape(args.shape), None


def parse_wires(text: Optional[str], n: int) -> List[int]:
    """Wire labels from --wires, checked against the n-wire diagram."""
    if not text:
        return default_wires(n)
    if text == 'all':
        return list(range(1, n + 1))
    wires = [int(part) for part in text.split(',') if part.strip()]
    if not wires:
        raise ValueError("--wires lists no wire")
    outside = [w for w in wires if not 1 <= w <= n]
    if outside:
        raise ValueError(f"Wires {outside} are not in the {n}-wire diagram")
    return wires


def parse_bins(text: str) -> Tuple[int, int]:
    parts = [int(part) for part in text.split(',')]
    if len(parts) != 2 or min(parts) < 1:
        raise ValueError(f"--bins needs two positive counts as positions,heights, got {text}")
    return parts[0], parts[1]


def write_output(path: str, text: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text, encoding='utf-8')
    logger.info(f"Wrote {path}")


def format_frequencies(counts: Counter, total: int, k: int) -> None:
    """Show sampled word frequencies next to their weights."""
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Word", style="cyan")
    table.add_column("μ", justify="right", style="yellow")
    table.add_column("Count", justify="right")
    table.add_column("Empirical", justify="right", style="green")
    table.add_column("μ / k!", justify="right", style="blue")
    factorial_k = factorial(k)
    for word, count in sorted(counts.items(), key=lambda item: (-item[1], item[0])):
        weight = macdonald_weight(word)
        table.add_row(format_word(word), str(weight), f"{count:,}", f"{count / total:.4f}", f"{weight / factorial_k:.4f}")
    console.print(table)


def format_reports(reports: List[VerificationReport]) -> None:
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Shape", style="cyan")
    table.add_column("x", justify="right")
    table.add_column("LHS", justify="right", style="yellow")
    table.add_column("RHS", justify="right", style="yellow")
    table.add_column("Result")
    table.add_column("Seconds", justify="right", style="dim")
    for report in reports:
        table.add_row(
            str(report.shape),
            '-' if report.x is None else str(report.x),
            f"{report.lhs:,}",
            f"{report.rhs:,}",
            "[green]pass[/green]" if report.passed else "[red]FAIL[/red]",
            f"{report.elapsed:.3f}",
        )
    console.print(table)


def cmd_sample(args: argparse.Namespace) -> int:
    shape, n = resolve_shape(args)
    if args.count < 1:
        raise ValueError(f"--count needs N >= 1, got {args.count}")
    tableau = load_tableau(args.tableau, shape)
    sampler = GrowthSampler(tableau, n, validation=args.validate, engine=args.engine)
    ambient = sampler.chain.n
    wires = parse_wires(args.wires, ambient)
    bins = parse_bins(args.bins)
    seed = args.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (2 ** 63))
        console.print(f"Using seed {seed}")

    if args.count > 1:
        words = sampler.sample_many(args.count, seed, progress=True)
        counts = Counter(words)
        format_frequencies(counts, args.count, sampler.chain.k)
        rows = [
            {'word': list(word), 'count': count, 'weight': macdonald_weight(word)}
            for word, count in sorted(counts.items())
        ]
        print(json.dumps(rows))
        return EXIT_OK

    if args.path_dump:
        gaps = sampler.draw_gaps(np.random.default_rng(seed))
        path = grow(tableau, gaps, n, validation=sampler.validation)
        word = path.final_word
        write_output(args.path_dump, json.dumps([list(w) for w in path.words]))
    else:
        word = sampler.sample(seed)
    logger.info(f"Sampled a reduced word of length {len(word)} for shape {shape}")
    print(format_word(word, args.out))

    if args.ascii:
        sys.stderr.write(render_wiring(word, wires if args.wires else None, 'ascii', ambient) + '\n')
    if args.svg:
        write_output(args.svg, render_wiring(word, wires, 'svg', ambient))
    if args.scatter:
        write_output(args.scatter, render_matrix_scatter(halfway_permutation(word, ambient), 'svg'))
    if args.histogram:
        write_output(args.histogram, histogram_csv(crossing_histogram(word, bins, ambient)))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    x = None if args.macdonald else args.fk
    reports = verify_all(args.max_cells, x, progress=True)
    format_reports(reports)
    print(json.dumps([report.to_dict() for report in reports]))
    failed = [r for r in reports if not r.passed]
    if failed:
        console.print(Panel(f"{len(failed)} of {len(reports)} shapes failed", style="red"))
        return EXIT_FAILED
    console.print(Panel(f"All {len(reports)} shapes pass", style="green"))
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    shape = parse_shape(args.shape)
    tableau = load_tableau(args.tableau, shape)
    graph = build_lambda_x(tableau, args.x)
    text = export(graph, args.format)
    if args.output:
        write_output(args.output, text)
    else:
        print(text, end='')

    top = graph.ranks[-1] if graph.ranks else []
    counts = path_counts(graph)
    console.print("Top-rank path counts: " + ', '.join(f"{format_word(v)}: {counts[v]}" for v in top))

    if args.check:
        report = adjointness_matrix_check(tableau)
        if not report.passed:
            console.print(Panel(f"{len(report.violations)} adjointness violations", style="red"))
            return EXIT_FAILED
        console.print(Panel(f"Adjointness holds on {report.checked} entries", style="green"))
    return EXIT_OK


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description="Reduced words of dominant permutations weighted by their Macdonald weight.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    sample = subparsers.add_parser("sample", help="Sample a reduced word by Markov growth")
    target = sample.add_mutually_exclusive_group(required=True)
    target.add_argument("--shape", help="Partition as comma-separated parts, e.g. 2,2,1")
    target.add_argument("--reverse", type=int, help="Staircase (N-1,...,1): reduced words of the longest element of S_N")
    sample.add_argument("--tableau", default="row-major", help="'row-major' or a JSON file holding the rows of a standard tableau")
    sample.add_argument("--seed", type=int, help="Seed of the random generator (printed when omitted)")
    sample.add_argument("--out", choices=["tuple", "text", "json"], default="tuple", help="Word output format")
    sample.add_argument("--count", type=int, default=1, help="Number of samples; above 1 prints a frequency table")
    sample.add_argument("--validate", choices=["full", "final", "none"], help="Validation level (default: SAMPLER_VALIDATION)")
    sample.add_argument("--engine", choices=["tuple", "array", "auto"], help="Growth engine (default: SAMPLER_ENGINE)")
    sample.add_argument("--ascii", action="store_true", help="Print an ASCII wiring diagram to stderr")
    sample.add_argument("--svg", help="Write an SVG wiring diagram to this path")
    sample.add_argument("--wires", help="Wires to draw: comma-separated labels or 'all' (default: 1, every 50th, N)")
    sample.add_argument("--scatter", help="Write the halfway permutation matrix as SVG to this path")
    sample.add_argument("--histogram", help="Write the crossing density histogram as CSV to this path")
    sample.add_argument("--bins", default="20,20", help="Histogram bins as positions,heights")
    sample.add_argument("--path-dump", help="Write every word of the growth path as JSON to this path")
    sample.set_defaults(handler=cmd_sample)

    verify = subparsers.add_parser("verify", help="Check the weight identities by brute force")
    identity = verify.add_mutually_exclusive_group(required=True)
    identity.add_argument("--macdonald", action="store_true", help="Σ μ(a) = k!")
    identity.add_argument("--fk", type=int, metavar="X", help="Σ μ_X(a) = k! · rpp(λ, X)")
    verify.add_argument("--max-cells", type=int, default=6, help="Check every shape with at most this many cells")
    verify.set_defaults(handler=cmd_verify)

    graph = subparsers.add_parser("graph", help="Export the growth graph of a tableau")
    graph.add_argument("--shape", required=True, help="Partition as comma-separated parts")
    graph.add_argument("--tableau", default="row-major", help="'row-major' or a JSON file holding the rows of a standard tableau")
    graph.add_argument("--x", type=int, default=0, help="Shift of the weighted graph")
    graph.add_argument("--format", choices=["dot", "json"], default="dot", help="Export format")
    graph.add_argument("--output", help="Write the export to this path instead of stdout")
    graph.add_argument("--check", action="store_true", help="Also check that bump-delete and insert-bump are adjoint")
    graph.set_defaults(handler=cmd_graph)

    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    args = parse_args(argv)
    try:
        return args.handler(args)
    except (GraphMismatchError, GrowthError, BumpError) as e:
        logger.error(f"Computation failed: {str(e)}")
        return EXIT_FAILED
    except (ValueError, OSError) as e:
        logger.error(f"Invalid input: {str(e)}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
