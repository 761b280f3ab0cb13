"""Command-line interface.

Exit codes: 0 success, 1 verification failure (or failed script commands),
2 usage or domain error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click

from renyisharp import __version__
from renyisharp.core import AppContext, RenyiSharpError
from renyisharp.oracle.checks import CHECKS
from renyisharp.oracle.verify import ALL_CHECKS
from renyisharp.scripting import ExecutionContext, ScriptExecutor
from renyisharp.scripting.commands import BoundCommand, CurveCommand, EntropyCommand, VerifyCommand
from renyisharp.scripting.commands.bound import THEOREMS
from renyisharp.scripting.commands.curve import FORMATS
from renyisharp.scripting.commands.entropy import QUANTITIES
from renyisharp.utils.formatting import format_value, parse_masses, parse_seed

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _fail(message: str, code: int = EXIT_USAGE) -> None:
    click.secho(f"error: {message}", fg="red", err=True)
    sys.exit(code)


def _execution_context(ctx: click.Context) -> ExecutionContext:
    app: AppContext = ctx.obj
    return ExecutionContext(settings_manager=app.settings_manager)


def _run_query(ctx: click.Context, command) -> dict:
    sm = ctx.obj.settings_manager
    try:
        return command.execute(_execution_context(ctx))
    except RenyiSharpError as e:
        sm.log_error("CLI", f"{command}: {e}")
        _fail(str(e))
    return {}


def _masses_option(value: Optional[str]):
    if value is None:
        return None
    try:
        return parse_masses(value)
    except RenyiSharpError as e:
        raise click.BadParameter(str(e))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--settings",
    "settings_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Settings JSON file (default: per-user config directory).",
)
@click.option(
    "--log-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Directory for daily log files.",
)
@click.version_option(__version__, prog_name="renyi-sharp")
@click.pass_context
def cli(ctx: click.Context, settings_path: Optional[Path], log_dir: Optional[Path]) -> None:
    """Sharp bounds between conditional Rényi entropies of different orders."""
    ctx.obj = AppContext.create(settings_path=settings_path, log_dir=log_dir)


@cli.command()
@click.option("--masses", help="Comma-separated distribution, e.g. 0.5,0.5.")
@click.option("--source", type=click.Path(exists=True, dir_okay=False), help="Source CSV file.")
@click.option("--order", help="Order: 0, 1, inf or a positive real.")
@click.option(
    "--quantity",
    type=click.Choice(QUANTITIES, case_sensitive=False),
    default="entropy",
    show_default=True,
)
@click.pass_context
def entropy(ctx, masses, source, order, quantity):
    """Entropy, norm, error probability or Bhattacharyya parameter (nats)."""
    try:
        command = EntropyCommand(order=order, masses=_masses_option(masses), source=source, quantity=quantity)
    except RenyiSharpError as e:
        _fail(str(e))
    result = _run_query(ctx, command)
    click.echo(format_value(result["value"]))


@cli.command()
@click.option("--theorem", required=True, type=click.Choice(sorted(THEOREMS), case_sensitive=False))
@click.option("--order", "-a", "a", help="Order of the fixed quantity.")
@click.option("--to-order", "-b", "b", help="Order of the bounded quantity.")
@click.option("--value", type=float, help="Fixed entropy value in nats.")
@click.option("--n", type=int, help="X alphabet size.")
@click.option("--eps", type=float, help="Error probability P_e.")
@click.option("--z", type=float, help="Bhattacharyya parameter.")
@click.option("--masses", help="Distribution for the unconditional bounds.")
@click.option("--source", type=click.Path(exists=True, dir_okay=False), help="Source CSV file.")
@click.option("--kind", type=click.Choice(["conditional", "unconditional"]), default=None)
@click.option("--json", "as_json", is_flag=True, help="Print results as JSON with witnesses.")
@click.pass_context
def bound(ctx, theorem, a, b, value, n, eps, z, masses, source, kind, as_json):
    """Evaluate one sharp bound."""
    try:
        command = BoundCommand(
            theorem,
            a=a,
            b=b,
            value=value,
            n=n,
            eps=eps,
            z=z,
            masses=_masses_option(masses),
            source=source,
            kind=kind,
        )
    except RenyiSharpError as e:
        _fail(str(e))
    result = _run_query(ctx, command)
    if as_json:
        click.echo(json.dumps(result, indent=2))
        return
    for r in result["bounds"]:
        click.echo(f"{r['kind']} {format_value(r['value'])}")


@cli.command()
@click.option("--region", required=True, help="H_vs_Pe, Pe_vs_H, Z_vs_Pe, H2_vs_Hhalf or Hb_vs_Ha.")
@click.option("--n", type=int, required=True, help="X alphabet size.")
@click.option("--points", type=int, default=None, help="Grid size (default: settings curve_points).")
@click.option("--order", "-a", "a", help="Order a (H_vs_Pe, Pe_vs_H, Hb_vs_Ha).")
@click.option("--to-order", "-b", "b", help="Order b (Hb_vs_Ha).")
@click.option("--kind", type=click.Choice(["conditional", "unconditional"]), default="conditional")
@click.option("--out", type=click.Path(dir_okay=False), help="Output file; stdout when omitted.")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@click.pass_context
def curve(ctx, region, n, points, a, b, kind, out, fmt):
    """Sample a feasible-region boundary as x,y_lower,y_upper."""
    try:
        command = CurveCommand(region, n, points=points, a=a, b=b, kind=kind, out=out, fmt=fmt)
        if out:
            result = command.execute(_execution_context(ctx))
            click.echo(f"Wrote {result['points']} points to {result['out']}", err=True)
        else:
            _, text = command.render(_execution_context(ctx))
            click.echo(text, nl=False)
    except RenyiSharpError as e:
        _fail(str(e))


@cli.command()
@click.option("--theorem", default=ALL_CHECKS, show_default=True, help="Check id or 'all'.")
@click.option("--seed", default=None, help="Random seed, decimal or 0x-hex.")
@click.option("--budget", type=int, default=None, help="Number of random sources.")
@click.option("--threads", type=int, default=None, help="Worker threads (0 = one per CPU).")
@click.option("--list", "list_checks", is_flag=True, help="List check ids and exit.")
@click.pass_context
def verify(ctx, theorem, seed, budget, threads, list_checks):
    """Brute-force verification; prints a JSON report, exit 1 on failure."""
    if list_checks:
        for check_id in CHECKS:
            click.echo(f"{check_id:12s} {CHECKS.get(check_id).description}")
        return
    try:
        command = VerifyCommand(
            theorem=theorem,
            seed=parse_seed(seed) if seed is not None else None,
            budget=budget,
            threads=threads,
        )
    except (RenyiSharpError, ValueError) as e:
        _fail(str(e))
    report = command.run(_execution_context(ctx))
    click.echo(json.dumps(report.to_dict(), indent=2))
    if not report.passed:
        click.secho(f"verification of {theorem} failed", fg="red", err=True)
        sys.exit(EXIT_FAILED)


@cli.command()
@click.argument("script", type=click.Path(exists=True, dir_okay=False))
@click.option("--stop-on-error", is_flag=True, help="Stop at the first failing command.")
@click.option("--out", type=click.Path(dir_okay=False), help="Write results JSON here.")
@click.pass_context
def run(ctx, script, stop_on_error, out):
    """Run a batch script (.json or the simple line format)."""
    context = _execution_context(ctx)
    context.stop_on_error = stop_on_error
    executor = ScriptExecutor(context)
    try:
        executor.load_from_file(script)
    except (FileNotFoundError, ValueError) as e:
        _fail(str(e))
    if executor.errors:
        _fail("; ".join(executor.errors))

    ok = executor.execute()
    payload = json.dumps({"ok": ok, "results": context.results}, indent=2, default=str)
    if out:
        Path(out).write_text(payload, encoding="utf-8")
    else:
        click.echo(payload)
    for i, cmd, message in executor.get_errors():
        click.secho(f"command {i + 1} ({cmd.to_dict().get('command')}): {message}", fg="red", err=True)
    sys.exit(EXIT_OK if ok else EXIT_FAILED)


@cli.group()
def config():
    """Inspect or change persisted settings."""


@config.command("show")
@click.pass_context
def config_show(ctx):
    click.echo(json.dumps(ctx.obj.settings_manager.settings, indent=2))


@config.command("path")
@click.pass_context
def config_path(ctx):
    click.echo(str(ctx.obj.settings_manager.settings_path))


@config.command("set")
@click.argument("key")
@click.argument("value")
@click.pass_context
def config_set(ctx, key, value):
    """Set KEY to VALUE (parsed as JSON when possible) and save."""
    sm = ctx.obj.settings_manager
    if key not in sm.default_settings:
        _fail(f"unknown setting {key!r}")
    try:
        parsed = json.loads(value)
    except json.JSONDecodeError:
        parsed = value
    sm.set(key, parsed)
    if not sm.save_settings():
        _fail(f"could not save settings to {sm.settings_path}")
    click.echo(f"{key} = {json.dumps(parsed)}")


def main() -> None:
    cli(prog_name="renyi-sharp")


if __name__ == "__main__":
    main()
