"""Command-line interface.

Subcommands: ``interpolate`` (write a coefficient file), ``estimate`` (run
selected evaluators over a shared probe sequence and write a result file),
``reproduce`` (paired one-sided vs two-sided Chebyshev benchmark), and
``matvec-count`` (print the cost formula for a degree).

Exit codes: 0 success, 1 usage error, 2 numerical or validation error.
"""

from __future__ import annotations

import json
import math
import sys

import click
import numpy as np

from .bench import BenchConfig, reproduce_experiment, run_estimate, \
    write_probe_csv, write_result
from .chebyshev import CANONICAL, Interval, interpolate, eval_scalar, \
    save_coefficients
from .functions import UnknownFunctionError, resolve
from .quadform import EVALUATORS


def _parse_interval(text: str) -> Interval:
    try:
        a, b = (float(t) for t in text.split(","))
    except ValueError:
        raise click.UsageError(f"interval must be 'a,b', got {text!r}") from None
    return Interval(a, b)


def _resolve_function(spec: str):
    try:
        return resolve(spec)
    except UnknownFunctionError as exc:
        raise click.UsageError(str(exc)) from None


@click.group()
def cli():
    """Trace estimation with half-cost two-sided quadratic-form evaluation."""


@cli.command("interpolate")
@click.option("--function", "func_spec", required=True,
              help="Scalar function spec, e.g. exp_scaled:10 or power:2.")
@click.option("--degree", "-n", type=int, required=True, help="Interpolation degree.")
@click.option("--interval", default="-1,1", show_default=True, help="Domain 'a,b'.")
@click.option("--out", type=click.Path(), required=True, help="Coefficient file to write.")
def cmd_interpolate(func_spec, degree, interval, out):
    """Interpolate a registry function at Chebyshev nodes and save the coefficients."""
    if degree < 1:
        raise click.UsageError("degree must be >= 1")
    fspec = _resolve_function(func_spec)
    domain = _parse_interval(interval)
    p = interpolate(fspec.fn, degree, domain)
    save_coefficients(p, out)
    grid = np.linspace(domain.a, domain.b, 1000)
    residual = max(abs(eval_scalar(p, x) - fspec.fn(x)) for x in grid)
    click.echo(f"wrote {degree + 1} coefficients to {out}")
    click.echo(f"max interpolation residual on 1000-point grid: {residual:.6e}")


@cli.command("estimate")
@click.option("--matrix", "matrix_path", type=click.Path(), default=None,
              help="Matrix Market input file.")
@click.option("--synthetic", "synthetic_dim", type=int, default=None,
              help="Generate a seeded random symmetric matrix of this dimension.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed for matrix synthesis and probe generation.")
@click.option("--function", "func_spec", default="exp_scaled:10", show_default=True)
@click.option("--degree", "-n", type=int, default=20, show_default=True)
@click.option("--probes", "-m", type=int, default=100, show_default=True)
@click.option("--evaluators", default="one_sided_chebyshev,two_sided_chebyshev",
              show_default=True, help="Comma-separated evaluator names.")
@click.option("--interval", default="exact", show_default=True,
              help="Spectral interval: 'exact', 'power', or 'lo,hi'.")
@click.option("--terms", is_flag=True, help="Record per-term breakdowns.")
@click.option("--out", type=click.Path(), required=True, help="Result file to write.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "both"]),
              default="json", show_default=True)
def cmd_estimate(matrix_path, synthetic_dim, seed, func_spec, degree, probes,
                 evaluators, interval, terms, out, fmt):
    """Estimate trace p(A) with the selected evaluators over shared probes."""
    names = tuple(t.strip().replace("-", "_") for t in evaluators.split(",") if t.strip())
    for name in names:
        if name not in EVALUATORS:
            raise click.UsageError(
                f"unknown evaluator {name!r}; choose from {', '.join(sorted(EVALUATORS))}")
    _resolve_function(func_spec)
    cfg = BenchConfig(matrix_path=matrix_path, synthetic_dim=synthetic_dim,
                      seed=seed, function=func_spec, degree=degree, probes=probes,
                      evaluators=names, interval=interval, terms=terms)
    if (matrix_path is None) == (synthetic_dim is None):
        raise click.UsageError("give exactly one of --matrix or --synthetic")
    doc = run_estimate(cfg)
    if fmt in ("json", "both"):
        write_result(doc, out)
        click.echo(f"wrote result to {out}")
    if fmt in ("csv", "both"):
        csv_path = out if fmt == "csv" else out + ".csv"
        write_probe_csv(doc, csv_path)
        click.echo(f"wrote per-probe table to {csv_path}")
    for name in names:
        rec = doc["evaluators"][name]
        click.echo(f"{name}: mean={rec['mean']:.12e} matvecs={rec['total_matvecs']}")


@cli.command("reproduce")
@click.option("--full", is_flag=True, help="Run at dimension 5000 (slow, memory heavy).")
@click.option("--dim", type=int, default=200, show_default=True,
              help="Desk-scale dimension (ignored with --full).")
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--degree", type=int, default=20, show_default=True)
@click.option("--out", type=click.Path(), default=None, help="Optional JSON report path.")
def cmd_reproduce(full, dim, trials, degree, out):
    """Paired Chebyshev benchmark: exp(10x) on an exactly scaled random matrix."""
    d = 5000 if full else dim
    if d < 50:
        raise click.UsageError("desk-scale dimension must be >= 50")
    try:
        report = reproduce_experiment(dim=d, trials=trials, degree=degree)
    except MemoryError:
        raise click.ClickException(
            "out of memory at this dimension; retry desk scale with --dim") from None
    click.echo(f"dimension {d}, degree {degree}, {trials} trials")
    click.echo(f"exact trace f(A):        {report['exact_trace']:.6e}")
    click.echo(f"polynomial trace p(A):   {report['polynomial_trace']:.6e}")
    for name, mean in report["estimates"].items():
        click.echo(f"estimate [{name}]: {mean:.6e} "
                   f"(matvecs {report['total_matvecs'][name]}, "
                   f"{report['wall_time_seconds'][name]:.2f} s)")
    click.echo(f"aggregate relative difference:      "
               f"{report['aggregate_relative_difference']:.3e}")
    click.echo(f"max per-evaluation relative diff:   "
               f"{report['max_per_evaluation_relative_difference']:.3e}")
    click.echo(f"max per-term relative diff:         "
               f"{report['max_per_term_relative_difference']:.3e}")
    if out:
        write_result(report, out)
        click.echo(f"wrote report to {out}")


@cli.command("matvec-count")
@click.option("--degree", "-n", type=int, required=True)
@click.option("--evaluator", default=None,
              help="Evaluator name; omit for all four.")
def cmd_matvec_count(degree, evaluator):
    """Print the matvec cost for a degree-n evaluation."""
    if degree < 0:
        raise click.UsageError("degree must be >= 0")
    names = [evaluator.replace("-", "_")] if evaluator else sorted(EVALUATORS)
    for name in names:
        if name not in EVALUATORS:
            raise click.UsageError(
                f"unknown evaluator {name!r}; choose from {', '.join(sorted(EVALUATORS))}")
        count = degree if name.startswith("one_sided") else math.ceil(degree / 2)
        click.echo(f"{name}: {count}")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 2
    except click.Abort:
        return 1
    except (ValueError, OSError, np.linalg.LinAlgError, MemoryError,
            json.JSONDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


def entry():  # console-script hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
