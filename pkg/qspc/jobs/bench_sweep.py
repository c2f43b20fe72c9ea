"""Benchmark sweep: loss and runtime of the pipeline over a (d, N) grid.

Cells run on a thread pool sized by QSPC_THREADS. Rows are sorted by
(d, N) before writing, so the CSV does not depend on scheduling; only
runtime_ms varies between runs.
"""
import csv
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor

import attrs
import numpy as np

from qspc.config import get_settings
from qspc.numerics.poly import ComplexPoly
from qspc.services.complement_service import complementary_known_delta
from qspc.services.convention_service import cheb_to_circle
from qspc.services.family_service import build_family
from qspc.services.metrics_service import phi
from qspc.utils.errors import DomainError
from qspc.utils.logging import log_error, log_info

BENCH_HEADER = ("d", "N", "loss", "phi_grid", "runtime_ms", "clamped_points")
SATURATION_FLOOR = 1e-13


@attrs.frozen
class BenchRow:
	d: int
	N: int
	loss: float
	phi_grid: float
	runtime_ms: float
	clamped_points: int

	def as_csv_row(self) -> list[str]:
		return [
			str(self.d),
			str(self.N),
			repr(self.loss),
			repr(self.phi_grid),
			f"{self.runtime_ms:.3f}",
			str(self.clamped_points),
		]


def geometric_grid(n_from: int, n_to: int, factor: int = 2) -> list[int]:
	"""n_from, n_from*factor, ... up to n_to inclusive."""
	if n_from < 1 or n_to < n_from or factor < 2:
		raise DomainError(f"invalid N range {n_from}..{n_to} (factor {factor})", n_from=n_from, n_to=n_to)
	values = []
	n = n_from
	while n <= n_to:
		values.append(n)
		n *= factor
	return values


def bench_polynomials(family: str, degrees=(), **params) -> list[ComplexPoly]:
	"""Circle polynomials to sweep: one per degree for random, one otherwise."""
	if family == "random":
		return [build_family("random", d=d, **params) for d in degrees]
	return [cheb_to_circle(build_family(family, **params), "full")]


def run_cell(P: ComplexPoly, N: int) -> BenchRow:
	opts = get_settings().get_complement_options(N)
	started = time.perf_counter()
	result = complementary_known_delta(P, opts)
	runtime_ms = (time.perf_counter() - started) * 1000.0
	phi_grid, _ = phi(P, result.q)
	return BenchRow(
		d=P.degree,
		N=N,
		loss=result.loss,
		phi_grid=phi_grid,
		runtime_ms=runtime_ms,
		clamped_points=result.clamped_points,
	)


def run_bench_sweep(polys: list[ComplexPoly], n_values: list[int], threads: int | None = None) -> list[BenchRow]:
	"""Evaluate every (P, N) cell with N >= deg P + 1; rows sorted by (d, N)."""
	cells = [(P, N) for P in polys for N in n_values if N >= P.degree + 1]
	executor_config = get_settings().get_executor_config()
	if threads is not None:
		executor_config["max_workers"] = threads

	rows = []
	with ThreadPoolExecutor(**executor_config) as pool:
		futures = [pool.submit(run_cell, P, N) for P, N in cells]
		for (P, N), future in zip(cells, futures):
			try:
				row = future.result()
			except Exception as e:
				log_error("Bench cell failed", f"d={P.degree} N={N}", exc=e)
				raise
			log_info("Bench cell done", f"d={row.d} N={row.N} loss={row.loss:.3e}")
			rows.append(row)
	return sorted(rows, key=lambda r: (r.d, r.N))


def format_bench_csv(rows: list[BenchRow]) -> str:
	buffer = io.StringIO()
	writer = csv.writer(buffer, lineterminator="\n")
	writer.writerow(BENCH_HEADER)
	for row in rows:
		writer.writerow(row.as_csv_row())
	return buffer.getvalue()


def fit_loss_trend(rows: list[BenchRow], mode: str = "linear", floor: float = SATURATION_FLOOR) -> dict:
	"""Least-squares fit of log(loss) against N ("linear") or log N ("loglog").

	Only the pre-saturation rows enter the fit: losses above floor, up to the
	first row that fails to improve on its predecessor.
	"""
	if mode not in ("linear", "loglog"):
		raise DomainError(f"unknown fit mode {mode!r}", field="mode")
	ordered = sorted(rows, key=lambda r: r.N)
	used = []
	for row in ordered:
		if not row.loss > floor:
			break
		if used and row.loss >= used[-1].loss:
			break
		used.append(row)
	if len(used) < 2:
		raise DomainError("need at least two pre-saturation rows to fit a trend", points=len(used))

	n = np.array([r.N for r in used], dtype=float)
	x = np.log(n) if mode == "loglog" else n
	y = np.log(np.array([r.loss for r in used]))
	slope, intercept = np.polyfit(x, y, 1)
	residual = y - (slope * x + intercept)
	spread = float(np.sum((y - y.mean()) ** 2))
	r_squared = 1.0 - float(np.sum(residual**2)) / spread if spread > 0 else 1.0
	return {
		"mode": mode,
		"slope": float(slope),
		"intercept": float(intercept),
		"r_squared": r_squared,
		"points": len(used),
		"n_max": int(n[-1]),
		"decades": float((y[0] - y[-1]) / math.log(10.0)),
	}
