"""Command-line interface."""

from decimal import Decimal
from fractions import Fraction
from typing import List, Optional

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from cpmm_hunter import __version__
from cpmm_hunter.config import get_settings
from cpmm_hunter.core.corpus import filter_targets, load_corpus, pool_usd
from cpmm_hunter.core.corpusgen import generate_corpus, write_corpus
from cpmm_hunter.core.evaluation import Evaluation, evaluate
from cpmm_hunter.core.manager import ScanResult, scan_all
from cpmm_hunter.core.reports import emit_report, replay as replay_report
from cpmm_hunter.errors import CorpusError, ReplayMismatchError, SpecError
from cpmm_hunter.logger import get_logger, setup_logging
from cpmm_hunter.synth.brute_force import brute_force_oracle
from cpmm_hunter.synth.models import ScanVerdict

console = Console()
logger = None

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REPLAY_MISMATCH = 2

_STATUS_STYLE = {
    "profitable": "bold red",
    "not_vulnerable": "green",
    "timeout": "yellow",
    "error": "bold yellow",
}


def setup_app():
    """Setup application logging and configuration."""
    global logger
    setup_logging()
    logger = get_logger()


def _usd(verdict: ScanVerdict) -> str:
    if verdict.report is None:
        return "-"
    return f"{float(Fraction(verdict.report.profit_usd)):,.2f}"


def _verdict_row(verdict: ScanVerdict, elapsed: Optional[float] = None) -> List[str]:
    style = _STATUS_STYLE.get(verdict.status, "white")
    report = verdict.report
    return [
        verdict.target,
        f"[{style}]{verdict.status}[/{style}]",
        verdict.phase or "-",
        ", ".join(str(i) for i in report.broken_invariants) if report and report.broken_invariants else "-",
        str(report.repetitions) if report else "-",
        _usd(verdict),
        f"{elapsed:.2f}" if elapsed is not None else "-",
    ]


def _results_table(results: List[ScanResult]) -> Table:
    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Target", style="cyan")
    table.add_column("Verdict")
    table.add_column("Phase", style="yellow")
    table.add_column("Invariants", style="blue")
    table.add_column("r", justify="right")
    table.add_column("Profit USD", justify="right", style="green")
    table.add_column("Seconds", justify="right", style="dim")
    for result in results:
        table.add_row(*_verdict_row(result.verdict, result.elapsed))
    return table


def _score(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.2f}"


def _evaluation_panel(summary: Evaluation) -> Panel:
    lines = [
        f"[bold]Precision:[/bold] {_score(summary.precision)}",
        f"[bold]Recall:[/bold] {_score(summary.recall)}",
        f"[bold]F1:[/bold] {_score(summary.f1)}",
        f"TP {summary.true_positives}  FP {summary.false_positives}  "
        f"FN {summary.false_negatives}  TN {summary.true_negatives}",
        f"Timeouts: {summary.timeouts}  Errors: {summary.errors}",
        f"Time on vulnerable: {summary.vulnerable_time:.2f}s  on benign: {summary.benign_time:.2f}s",
    ]
    return Panel.fit("\n".join(lines), title="[bold cyan]Evaluation[/bold cyan]", border_style="cyan")


@click.group()
@click.version_option(version=__version__)
def cli():
    """cpmm-hunter - Find token bugs that drain constant-product pools."""
    setup_app()


@cli.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(dir_okay=False), help="Corpus file")
@click.option("--report", "report_path", required=True, type=click.Path(dir_okay=False), help="Report output file")
@click.option("--workers", type=click.IntRange(min=1), help="Parallel workers")
@click.option("--timeout-secs", type=click.FloatRange(min=0, min_open=True), help="Per-target timeout")
@click.option("--min-usd", type=Decimal, help="Minimum pool value in USD")
@click.option("--profit-threshold-usd", type=Decimal, help="Minimum profit in USD")
@click.option("--rep-cap", type=click.IntRange(min=1), help="Largest repetition count")
@click.option("--no-repeat", is_flag=True, default=False, help="Skip deep search")
@click.option("--no-invariant-gate", is_flag=True, default=False, help="Random repetitions on every test case")
@click.option("--no-dex-fee", is_flag=True, default=False, help="Scan with the target pool's fee removed")
@click.option("--seed", type=int, help="Seed for randomized search")
def scan(
    corpus_path: str,
    report_path: str,
    workers: Optional[int],
    timeout_secs: Optional[float],
    min_usd: Optional[Decimal],
    profit_threshold_usd: Optional[Decimal],
    rep_cap: Optional[int],
    no_repeat: bool,
    no_invariant_gate: bool,
    no_dex_fee: bool,
    seed: Optional[int],
):
    """Scan every pool of a corpus and write a report."""
    settings = get_settings()
    config = settings.search_config(
        rep_cap=rep_cap,
        profit_threshold_usd=profit_threshold_usd,
        no_repeat=no_repeat,
        no_invariant_gate=no_invariant_gate,
        no_dex_fee=no_dex_fee,
        seed=seed,
    )
    targets = filter_targets(
        load_corpus(corpus_path), min_usd if min_usd is not None else settings.min_usd
    )
    results = scan_all(
        targets,
        config,
        worker_count=workers or settings.workers,
        timeout_secs=timeout_secs or settings.timeout_secs,
    )
    emit_report(results, report_path, config)

    if results:
        console.print(_results_table(results))
    else:
        console.print("[yellow]No targets passed the filter[/yellow]")
    summary = evaluate(results)
    if summary is not None:
        console.print(_evaluation_panel(summary))
    found = sum(1 for result in results if result.verdict.profitable)
    console.print(f"\n[dim]{found} of {len(results)} targets profitable; report written to {report_path}[/dim]")


@cli.command("gen-corpus")
@click.option("--seed", type=int, default=0, show_default=True, help="Generator seed")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False), help="Corpus output file")
@click.option("--anch", type=click.IntRange(min=0), default=0, help="Trade-reward tokens")
@click.option("--shadowfi", type=click.IntRange(min=0), default=0, help="Public-burn tokens")
@click.option("--deflate", type=click.IntRange(min=0), default=0, help="Sell-side deflation tokens")
@click.option("--rebase", type=click.IntRange(min=0), default=0, help="Share-rebase tokens")
@click.option("--benign", type=click.IntRange(min=0), default=0, help="Plain tokens")
@click.option("--benign-fot", type=click.IntRange(min=0), default=0, help="Safeguarded fee-on-transfer tokens")
def gen_corpus(seed: int, out_path: str, anch: int, shadowfi: int, deflate: int, rebase: int, benign: int, benign_fot: int):
    """Generate a labeled synthetic corpus."""
    counts = {
        "anch": anch,
        "shadowfi": shadowfi,
        "deflate": deflate,
        "rebase": rebase,
        "benign": benign,
        "benign_fot": benign_fot,
    }
    corpus = generate_corpus(seed, counts)
    write_corpus(corpus, out_path)
    console.print(f"[bold green]Wrote {len(corpus.pools)} pools to {out_path}[/bold green]")


@cli.command()
@click.option("--report", "report_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Report file")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(dir_okay=False), help="Corpus file")
def replay(report_path: str, corpus_path: str):
    """Re-execute the findings of a report."""
    confirmed = replay_report(report_path, corpus_path)
    if not confirmed:
        console.print("[yellow]No profitable findings to replay[/yellow]")
        return
    for verdict in confirmed:
        console.print(
            f"[bold green]✓[/bold green] {verdict.target}: "
            f"{verdict.report.profit_amount} {verdict.report.profit_token} (~{_usd(verdict)} USD)"
        )


@cli.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(dir_okay=False), help="Corpus file")
@click.option("--min-usd", type=Decimal, help="Minimum pool value in USD")
def targets(corpus_path: str, min_usd: Optional[Decimal]):
    """List the targets that pass the pool-value filter."""
    settings = get_settings()
    kept = filter_targets(load_corpus(corpus_path), min_usd if min_usd is not None else settings.min_usd)
    if not kept:
        console.print("[yellow]No targets passed the filter[/yellow]")
        return

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("Target", style="cyan")
    table.add_column("Token Y", style="yellow")
    table.add_column("Behaviors", style="blue")
    table.add_column("Pool USD", justify="right", style="green")
    table.add_column("Label", style="dim")
    for target in kept:
        spec = target.world.token(target.token_y).spec
        behaviors = ", ".join(b.kind for b in spec.behavior) or "standard"
        usd = pool_usd(target)
        label = target.label or {}
        table.add_row(
            target.id,
            target.token_y,
            behaviors,
            f"{float(usd):,.2f}" if usd is not None else "N/A",
            str(label.get("archetype", "-")),
        )
    console.print(table)
    console.print(f"\n[dim]{len(kept)} targets[/dim]")


@cli.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(dir_okay=False), help="Corpus file")
@click.option("--target", "target_id", required=True, help="Pool id to scan")
@click.option("--bound", type=click.IntRange(min=1), help="Largest repetition count")
def oracle(corpus_path: str, target_id: str, bound: Optional[int]):
    """Exhaustively search one target."""
    settings = get_settings()
    by_id = {target.id: target for target in load_corpus(corpus_path)}
    if target_id not in by_id:
        raise click.ClickException(f"unknown target {target_id}")
    target = by_id[target_id]
    bound = bound or settings.oracle_bound
    verdict = brute_force_oracle(target.world, target, bound, settings.search_config())

    table = Table(show_header=True, header_style="bold magenta")
    for column in ("Target", "Verdict", "Phase", "Invariants", "r", "Profit USD", "Executions"):
        table.add_column(column)
    row = _verdict_row(verdict)
    row[-1] = str(verdict.executions)
    table.add_row(*row)
    console.print(table)


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point for the CLI.

    Returns:
        0 when the command completed, 1 on usage or input errors, 2 when a
        replay did not reproduce its report
    """
    try:
        cli.main(args=argv, prog_name="cpmm-hunter", standalone_mode=False)
    except click.exceptions.Abort:
        console.print("[red]Aborted[/red]")
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except (SpecError, CorpusError) as e:
        console.print(f"[bold red]Error:[/bold red] {e}")
        return EXIT_USAGE
    except ReplayMismatchError as e:
        console.print(f"[bold red]Replay mismatch:[/bold red] {e}")
        return EXIT_REPLAY_MISMATCH
    return EXIT_OK
