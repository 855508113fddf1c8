"""
Script to sample a large staircase reduced word and render its wiring diagram and halfway permutation.
"""
import argparse
import time
from pathlib import Path

from rich.console import Console
from rich.table import Table

from macdonald_words.growth_sampler import GrowthSampler
from macdonald_words.stats_render import (
    crossing_histogram,
    default_wires,
    halfway_permutation,
    histogram_csv,
    render_matrix_scatter,
    render_svg,
)
from macdonald_words.tableau_chain import row_major_tableau, staircase


def render_sorting_network(n: int = 200, seed: int = 0, output_dir: str = "data/renders", step: int = 50):
    """Sample one reduced word of the longest element of S_n and write its renderings."""
    console = Console()
    sampler = GrowthSampler(row_major_tableau(staircase(n)), n, validation='final')

    console.print(f"[bold]Sampling a reduced word for S_{n} (seed {seed})...[/bold]")
    start = time.perf_counter()
    word = sampler.sample(seed)
    elapsed = time.perf_counter() - start

    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        'wiring.svg': render_svg(word, default_wires(n, step), n, scale=2),
        'halfway.svg': render_matrix_scatter(halfway_permutation(word, n), 'svg', scale=2),
        'halfway.csv': render_matrix_scatter(halfway_permutation(word, n), 'csv'),
        'density.csv': histogram_csv(crossing_histogram(word, (40, 40), n)),
    }
    for name, text in files.items():
        (out / name).write_text(text, encoding='utf-8')

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Metric", style="cyan")
    table.add_column("Value", justify="right", style="green")
    table.add_row("Crossings", f"{len(word):,}")
    table.add_row("Sampling time", f"{elapsed:.2f}s")
    for name in files:
        table.add_row("Wrote", str(out / name))
    console.print(table)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Render a sampled sorting network")
    parser.add_argument("--n", type=int, default=200, help="Number of wires")
    parser.add_argument("--seed", type=int, default=0, help="Random seed")
    parser.add_argument("--output-dir", default="data/renders", help="Directory for the renderings")
    parser.add_argument("--step", type=int, default=50, help="Draw wire 1, every step-th wire and wire n")
    args = parser.parse_args()
    render_sorting_network(args.n, args.seed, args.output_dir, args.step)
