"""Command-line interface.

Provides:
- qspc complement:   complementary polynomial of a coefficient file
- qspc bench:        loss/runtime sweep over (d, N), CSV output
- qspc required-n:   the N guaranteed by the error bound
- qspc generate:     test-polynomial families
- qspc metrics:      complementarity errors of a (P, Q) pair
- qspc convert:      convention maps between cheb, laurent and circle
- qspc oracle-check: agreement of the pipeline with the root oracle

Exit status: 0 success, 2 mathematical/domain failure, 3 input/output or parse error.
"""
import logging
import sys

import click

from qspc import api
from qspc.codec.serialization import dumps, read_json, write_json
from qspc.services.family_service import FAMILIES
from qspc.utils.errors import InvalidInputError, QspcError, StorageError, error_from_exception
from qspc.utils.logging import configure_logging


def _finish(envelope: dict, output: str | None = None):
	"""Write the envelope's data (or report its error) and exit on failure."""
	if not envelope["ok"]:
		click.secho(f"error: {envelope['message']}", fg="red", err=True)
		if envelope.get("data"):
			click.echo(dumps(envelope["data"]).decode(), err=True, nl=False)
		raise SystemExit(envelope.get("exit_status", 1))
	if output:
		write_json(output, envelope["data"])
		diagnostics = envelope["data"].get("diagnostics")
		if diagnostics:
			click.echo(dumps(diagnostics).decode(), nl=False)
	else:
		click.echo(dumps(envelope["data"]).decode(), nl=False)


def _load(path: str) -> dict:
	try:
		return read_json(path)
	except QspcError as exc:
		_finish(error_from_exception(exc))


def _int_list(value: str | None) -> list[int]:
	if not value:
		return []
	try:
		return [int(v) for v in value.split(",") if v.strip()]
	except ValueError:
		raise click.BadParameter(f"expected comma-separated integers, got {value!r}")


@click.command("complement")
@click.argument("input_path")
@click.option("--delta", type=float, help="Known gap: max |P| <= 1 - delta on the circle")
@click.option("--n", "n_points", type=int, help="FFT size (default: from --delta and --accuracy)")
@click.option("--eps", type=float, help="Target accuracy for polynomials without a known gap")
@click.option("--auto", is_flag=True, help="Double N until the loss target is met")
@click.option("--target", type=float, help="Loss target for --auto")
@click.option("--accuracy", type=float, help="Coefficient accuracy used to choose N from --delta")
@click.option("--strict", is_flag=True, help="Fail instead of clamping where 1-|P|^2 <= 0")
@click.option("--max-n", type=int, help="Largest N tried by --auto")
@click.option("-o", "--output", help="Output coefficient file (stdout when omitted)")
def complement(input_path, delta, n_points, eps, auto, target, accuracy, strict, max_n, output):
	"""Compute the canonical complementary polynomial Q of P."""
	payload = _load(input_path)
	envelope = api.complement(
		payload,
		delta=delta,
		n_points=n_points,
		eps=eps,
		auto=auto,
		target=target,
		accuracy=accuracy,
		strict=strict,
		max_n=max_n,
	)
	_finish(envelope, output)


@click.command("bench")
@click.option("--family", default="random", type=click.Choice(FAMILIES))
@click.option("--d", "degrees", help="Comma-separated degrees (random family)")
@click.option("--delta", type=float, default=0.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tau", type=float)
@click.option("--eps", type=float)
@click.option("--a", type=float)
@click.option("--m", type=int)
@click.option("--n-from", type=int, required=True)
@click.option("--n-to", type=int, required=True)
@click.option("--factor", type=int, default=2, show_default=True)
@click.option("--threads", type=int, help="Worker threads (default: QSPC_THREADS)")
@click.option("--fit", type=click.Choice(["linear", "loglog"]), help="Report a loss-vs-N trend fit on stderr")
@click.option("-o", "--output", help="CSV file (stdout when omitted)")
def bench(family, degrees, delta, seed, tau, eps, a, m, n_from, n_to, factor, threads, fit, output):
	"""Sweep N over a geometric grid and record loss and runtime per cell."""
	from qspc.jobs.bench_sweep import bench_polynomials, fit_loss_trend, format_bench_csv, geometric_grid, run_bench_sweep

	try:
		try:
			polys = bench_polynomials(
				family, _int_list(degrees), delta=delta, seed=seed, tau=tau, eps=eps, a=a, m=m
			)
			n_values = geometric_grid(n_from, n_to, factor)
		except QspcError as exc:
			raise InvalidInputError(f"invalid bench parameters: {exc.message}")
		if not polys:
			raise InvalidInputError("random family needs --d")
		rows = run_bench_sweep(polys, n_values, threads)
		text = format_bench_csv(rows)
		if output:
			try:
				with open(output, "w", encoding="utf-8", newline="") as handle:
					handle.write(text)
			except OSError as e:
				raise StorageError(f"cannot write {output}: {e.strerror or e}", path=output)
		else:
			click.echo(text, nl=False)
		if fit:
			for d in sorted({r.d for r in rows}):
				trend = fit_loss_trend([r for r in rows if r.d == d], fit)
				click.echo(f"d={d} " + dumps(trend).decode().replace("\n", " "), err=True)
	except QspcError as exc:
		_finish(error_from_exception(exc))


@click.command("required-n")
@click.option("--eps", type=float, required=True)
@click.option("--delta", type=float, required=True)
@click.option("--d", "degree", type=int, required=True)
def required_n(eps, delta, degree):
	"""Print the N that guarantees coefficient accuracy eps for gap delta."""
	envelope = api.required_n(eps, delta, degree)
	if envelope["ok"]:
		click.echo(envelope["data"]["N"])
	else:
		_finish(envelope)


@click.command("generate")
@click.option("--family", required=True, type=click.Choice(FAMILIES))
@click.option("--d", "degree", type=int)
@click.option("--delta", type=float, default=0.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tau", type=float)
@click.option("--eps", type=float)
@click.option("--a", type=float)
@click.option("--m", type=int)
@click.option("-o", "--output")
def generate(family, degree, delta, seed, tau, eps, a, m, output):
	"""Emit a test polynomial (random) or Chebyshev series (other families)."""
	envelope = api.generate(family, d=degree, delta=delta, seed=seed, tau=tau, eps=eps, a=a, m=m)
	_finish(envelope, output)


@click.command("metrics")
@click.argument("p_path")
@click.argument("q_path")
@click.option("--oversample", type=int)
def metrics(p_path, q_path, oversample):
	"""Report phi (grid and l1 bound) and the loss of a (P, Q) pair."""
	envelope = api.metrics(_load(p_path), _load(q_path), oversample)
	_finish(envelope)


@click.command("convert")
@click.argument("input_path")
@click.option("--from", "source", required=True, type=click.Choice(["cheb", "laurent", "circle"]))
@click.option("--to", "target", default="circle", show_default=True, type=click.Choice(["circle", "laurent"]))
@click.option("--mode", default="full", show_default=True, type=click.Choice(["full", "parity"]))
@click.option("--complement-of", type=int, help="Treat a circle input as the complement of a degree-d P")
@click.option("-o", "--output")
def convert(input_path, source, target, mode, complement_of, output):
	"""Map coefficients between conventions."""
	envelope = api.convert(_load(input_path), source, target, mode, complement_of)
	_finish(envelope, output)


@click.command("oracle-check")
@click.option("--d", "degrees", default="1,2,3,4", show_default=True)
@click.option("--delta", type=float, default=0.2, show_default=True)
@click.option("--seeds", type=int, default=5, show_default=True)
@click.option("--target", type=float, default=1e-12, show_default=True)
@click.option("-o", "--output")
def oracle_check(degrees, delta, seeds, target, output):
	"""Compare the FFT pipeline with the root-finding oracle."""
	envelope = api.oracle_check(_int_list(degrees), delta, seeds, target)
	_finish(envelope, output)


commands = [
	complement,
	bench,
	required_n,
	generate,
	metrics,
	convert,
	oracle_check,
]


@click.group("qspc")
@click.option("-v", "--verbose", count=True, help="-v for info, -vv for debug logging")
def cli(verbose):
	"""Complementary polynomials for quantum signal processing."""
	configure_logging(logging.WARNING - 10 * min(verbose, 2))


for command in commands:
	cli.add_command(command)


if __name__ == "__main__":
	sys.exit(cli())
