"""
Command-line interface for lazy-sssp.

Answers and generated scripts go to standard output; status, tables and
errors go to standard error.
"""

import logging
import sys
from pathlib import Path
from typing import List, Optional

try:
    import typer
    from rich.console import Console
    from rich.logging import RichHandler
    from rich.table import Table
except ImportError:
    print("CLI dependencies not installed. Install with: pip install lazy-sssp[cli]")
    sys.exit(1)

from lazy_sssp.bench import BenchRecord, Generator, loglog_slope, run_bench, write_csv
from lazy_sssp.config import Algorithm, ConfigLoader, EngineConfig
from lazy_sssp.exceptions import SsspError
from lazy_sssp.gadgets import gen_kcycle, gen_omv3, random_omv3, random_partitioned_graph
from lazy_sssp.graph import UpdateScript
from lazy_sssp.replay import VerificationReport, fuzz_verify, run_script, verify_script
from lazy_sssp.script import ScriptSerializer
from lazy_sssp.stats import ScanStats

app = typer.Typer(
    name="lazy-sssp",
    help="Incremental approximate single-source shortest paths",
    add_completion=False,
)
gen_app = typer.Typer(help="Generate reduction-gadget scripts with expected answers")
app.add_typer(gen_app, name="gen")

console = Console(stderr=True)

ALGO_HELP = "Algorithm: lazy, es, warmup or oracle"
CONFIG_HELP = "JSON or YAML config file"
TEST_CONSTANTS_HELP = "Replace the heaviness threshold units with this constant (testing only)"


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


def _resolve(config: Optional[Path], **flags) -> EngineConfig:
    try:
        resolved = ConfigLoader.resolve(config, **flags)
    except (SsspError, OSError, ImportError, ValueError) as e:
        console.print(f"[red]Error in configuration:[/red] {e}")
        raise typer.Exit(1)
    if resolved.test_constants is not None:
        console.print(
            f"[yellow]Test constants {resolved.test_constants:g} in effect; "
            "approximation bounds do not apply[/yellow]"
        )
    return resolved


def _load(script: Path, expected: Optional[Path] = None) -> UpdateScript:
    try:
        return ScriptSerializer.load_from_file(script, expected)
    except (SsspError, OSError, UnicodeDecodeError) as e:
        console.print(f"[red]Error loading script:[/red] {e}")
        raise typer.Exit(1)


def _stats_table(stats: ScanStats) -> Table:
    table = Table(title="Work counters")
    table.add_column("Counter", style="cyan")
    table.add_column("Value", style="magenta", justify="right")
    for key, value in stats.to_dict().items():
        if isinstance(value, (int, float)):
            table.add_row(key, str(value))
    return table


def _report_table(report: VerificationReport) -> Table:
    table = Table(title=f"Verification: {report.algo}")
    table.add_column("Field", style="cyan")
    table.add_column("Value", style="magenta")
    table.add_row("events", str(report.events))
    table.add_row("queries", str(report.queries))
    table.add_row("checks", str(report.checks))
    if report.mismatch is not None:
        m = report.mismatch
        table.add_row("kind", m.kind)
        table.add_row("event", str(m.event))
        table.add_row("vertex", str(m.vertex))
        table.add_row("expected", m.expected)
        table.add_row("actual", m.actual)
    return table


@app.command()
def run(
    script: Path = typer.Argument(..., help="Update script", exists=True, dir_okay=False),
    algo: Optional[Algorithm] = typer.Option(None, "--algo", "-a", help=ALGO_HELP),
    eps: Optional[float] = typer.Option(None, "--eps", "-e", help="Approximation parameter"),
    depth: Optional[int] = typer.Option(None, "--depth", help="ES-tree depth bound"),
    test_constants: Optional[float] = typer.Option(
        None, "--test-constants", help=TEST_CONSTANTS_HELP
    ),
    parallel: Optional[bool] = typer.Option(
        None, "--parallel/--sequential", help="Update lazy bands from a thread pool"
    ),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help=CONFIG_HELP),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write answers here"),
    stats: bool = typer.Option(False, "--stats", help="Print work counters"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
):
    """
    Replay a script and print one answer line per query.
    """
    _setup_logging(verbose)
    cfg = _resolve(
        config,
        algo=algo,
        eps=eps,
        depth=depth,
        test_constants=test_constants,
        parallel=parallel,
    )
    loaded = _load(script)
    console.print(f"[cyan]Running[/cyan] {cfg.label} on {loaded}")

    try:
        result = run_script(loaded, cfg)
    except SsspError as e:
        console.print(f"[red]Error during replay:[/red] {e}")
        raise typer.Exit(1)

    text = ScriptSerializer.format_answers(result.answers)
    if output:
        try:
            output.write_text(text, encoding="utf-8")
        except OSError as e:
            console.print(f"[red]Error saving answers:[/red] {e}")
            raise typer.Exit(1)
        console.print(f"[green]✓[/green] {len(result.answers)} answers saved to: {output}")
    else:
        typer.echo(text, nl=False)
    if stats:
        console.print(_stats_table(result.stats))


@app.command()
def verify(
    script: Optional[Path] = typer.Argument(
        None, help="Update script; omit with --fuzz", exists=True, dir_okay=False
    ),
    expected: Optional[Path] = typer.Option(
        None, "--expected", help="Answer sidecar; defaults to <script>.expected"
    ),
    fuzz: bool = typer.Option(False, "--fuzz", help="Verify random scripts instead"),
    n: int = typer.Option(16, "--n", help="Vertex count for --fuzz"),
    events: int = typer.Option(200, "--events", help="Events per script for --fuzz"),
    runs: int = typer.Option(1, "--runs", help="Scripts for --fuzz"),
    max_weight: int = typer.Option(1, "--max-weight", "-W", help="Largest weight for --fuzz"),
    seed: Optional[int] = typer.Option(None, "--seed", help="First seed for --fuzz"),
    sample_every: int = typer.Option(1, "--sample-every", help="Full comparison period"),
    check_invariants: Optional[bool] = typer.Option(
        None, "--check-invariants/--no-check-invariants", help="Run full-state checkers"
    ),
    algo: Optional[Algorithm] = typer.Option(None, "--algo", "-a", help=ALGO_HELP),
    eps: Optional[float] = typer.Option(None, "--eps", "-e", help="Approximation parameter"),
    depth: Optional[int] = typer.Option(None, "--depth", help="ES-tree depth bound"),
    test_constants: Optional[float] = typer.Option(
        None, "--test-constants", help=TEST_CONSTANTS_HELP
    ),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help=CONFIG_HELP),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
):
    """
    Replay in lockstep with Dijkstra and report the first mismatch.
    """
    _setup_logging(verbose)
    cfg = _resolve(
        config,
        algo=algo,
        eps=eps,
        depth=depth,
        test_constants=test_constants,
        check_invariants=check_invariants,
        seed=seed,
    )
    try:
        if fuzz:
            console.print(f"[cyan]Fuzzing[/cyan] {cfg.label}: {runs} run(s), seed {cfg.seed}")
            report = fuzz_verify(cfg, n, events, runs, max_weight, sample_every)
        elif script is None:
            console.print("[red]Error:[/red] give a script or --fuzz")
            raise typer.Exit(1)
        else:
            report = verify_script(_load(script, expected), cfg, sample_every)
    except SsspError as e:
        console.print(f"[red]Error during verification:[/red] {e}")
        raise typer.Exit(1)

    console.print(_report_table(report))
    if report.ok:
        console.print(
            f"[green]✓[/green] OK: {report.events} events, {report.queries} queries, "
            f"{report.checks} checks"
        )
        return
    console.print(f"[red]✗ {report.mismatch}[/red]")
    for line in report.invariant_dump:
        console.print(f"  {line}")
    raise typer.Exit(1)


def _sizes(raw: str) -> List[int]:
    try:
        sizes = [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise typer.BadParameter(f"sizes must be comma-separated integers, got {raw!r}")
    if not sizes or any(s < 1 for s in sizes):
        raise typer.BadParameter("sizes must be positive")
    return sizes


@app.command()
def bench(
    generator: Generator = typer.Option(Generator.DENSE, "--generator", "-g", help="Family"),
    sizes: str = typer.Option("64,128,256,512", "--sizes", help="Comma-separated sizes"),
    reps: int = typer.Option(1, "--reps", help="Repetitions per size"),
    workers: int = typer.Option(1, "--workers", help="Worker processes"),
    algo: Optional[Algorithm] = typer.Option(None, "--algo", "-a", help=ALGO_HELP),
    eps: Optional[float] = typer.Option(None, "--eps", "-e", help="Approximation parameter"),
    test_constants: Optional[float] = typer.Option(
        None, "--test-constants", help=TEST_CONSTANTS_HELP
    ),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed of the first repetition"),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help=CONFIG_HELP),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write CSV here"),
    slope: bool = typer.Option(True, "--slope/--no-slope", help="Fit log-log work slopes"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
):
    """
    Benchmark generated scripts and emit CSV rows with work counters.
    """
    _setup_logging(verbose)
    cfg = _resolve(config, algo=algo, eps=eps, test_constants=test_constants, seed=seed)
    size_list = _sizes(sizes)
    console.print(
        f"[cyan]Benchmarking[/cyan] {cfg.label} on {generator.value} sizes {size_list}"
    )
    try:
        records = list(run_bench(generator.value, size_list, cfg, reps, workers))
    except SsspError as e:
        console.print(f"[red]Error during bench:[/red] {e}")
        raise typer.Exit(1)

    if output:
        try:
            with output.open("w", encoding="utf-8", newline="") as handle:
                write_csv(records, handle)
        except OSError as e:
            console.print(f"[red]Error saving CSV:[/red] {e}")
            raise typer.Exit(1)
        console.print(f"[green]✓[/green] {len(records)} rows saved to: {output}")
    else:
        write_csv(records, sys.stdout)

    if slope and len({r.n for r in records}) >= 2:
        _print_slopes(records)


def _print_slopes(records: List[BenchRecord]) -> None:
    table = Table(title="Log-log slope against n")
    table.add_column("Column", style="cyan")
    table.add_column("Slope", style="magenta", justify="right")
    try:
        for column in ("work", "decrements", "workset_inserts", "iscan_total", "wall_ns"):
            if all(getattr(r, column) > 0 for r in records):
                table.add_row(column, f"{loglog_slope(records, column):.3f}")
    except ImportError as e:
        console.print(f"[yellow]{e}[/yellow]")
        return
    console.print(table)


def _save_gadget(script: UpdateScript, output: Path) -> None:
    try:
        ScriptSerializer.save_to_file(script, output)
    except OSError as e:
        console.print(f"[red]Error saving script:[/red] {e}")
        raise typer.Exit(1)
    console.print(
        f"[green]✓[/green] {script} saved to: {output} "
        f"(answers in {ScriptSerializer.sidecar_path(output)})"
    )


@gen_app.command("kcycle")
def gen_kcycle_cmd(
    output: Path = typer.Argument(..., help="Script path; the sidecar goes next to it"),
    n: int = typer.Option(12, "--n", help="Vertices of the random partitioned graph"),
    k: int = typer.Option(3, "--k", help="Cycle length"),
    density: float = typer.Option(0.3, "--density", help="Edge probability"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Generator seed"),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help=CONFIG_HELP),
):
    """
    Write a k-cycle gadget script and its expected answers.
    """
    cfg = _resolve(config, seed=seed)
    try:
        g, partition = random_partitioned_graph(n, k, density, cfg.seed)
        script = gen_kcycle(g, k, partition)
    except SsspError as e:
        console.print(f"[red]Error building gadget:[/red] {e}")
        raise typer.Exit(1)
    _save_gadget(script, output)


@gen_app.command("omv3")
def gen_omv3_cmd(
    output: Path = typer.Argument(..., help="Script path; the sidecar goes next to it"),
    n: int = typer.Option(4, "--n", help="Matrix dimension"),
    density: float = typer.Option(0.5, "--density", help="Probability of a set bit"),
    queries: int = typer.Option(0, "--queries", help="Query triples, at most n (0 means n)"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Generator seed"),
    config: Optional[Path] = typer.Option(None, "--config", "-c", help=CONFIG_HELP),
):
    """
    Write an OMv3 gadget script and its expected answers.
    """
    cfg = _resolve(config, seed=seed)
    try:
        matrix, triples = random_omv3(n, density, cfg.seed, queries)
        script = gen_omv3(matrix, triples)
    except SsspError as e:
        console.print(f"[red]Error building gadget:[/red] {e}")
        raise typer.Exit(1)
    _save_gadget(script, output)


if __name__ == "__main__":
    app()
