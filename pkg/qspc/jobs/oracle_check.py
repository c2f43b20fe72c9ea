"""Agreement suite between the FFT pipeline and the independent oracles."""
from qspc.services.family_service import RandomSpec, random_poly
from qspc.services.oracle_service import hilbert_multiplier_check, oracle_agreement
from qspc.utils.errors import QspcError
from qspc.utils.logging import log_error, log_info

AGREEMENT_TOL = 1e-8
HILBERT_TOL = 1e-13
HILBERT_SIZES = (8, 64, 256)


def run_oracle_check(
	degrees,
	delta: float = 0.2,
	seeds=range(5),
	target_loss: float = 1e-12,
	tolerance: float = AGREEMENT_TOL,
) -> dict:
	"""Root-oracle agreement for every (d, seed) plus the multiplier identity.

	Failing cases are reported, not raised; report["passed"] summarizes.
	"""
	cases = []
	for d in degrees:
		for seed in seeds:
			P = random_poly(RandomSpec(degree=d, delta=delta, seed=seed))
			try:
				case = oracle_agreement(P, target_loss)
			except QspcError as e:
				log_error("Oracle check failed", f"d={d} seed={seed}: {e.message}", exc=e)
				case = {"degree": d, "max_diff": None, "error": e.code}
			case["seed"] = seed
			case["passed"] = case.get("max_diff") is not None and case["max_diff"] <= tolerance
			cases.append(case)

	hilbert = {str(N): hilbert_multiplier_check(N) for N in HILBERT_SIZES}
	diffs = [c["max_diff"] for c in cases if c["max_diff"] is not None]
	report = {
		"delta": delta,
		"target_loss": target_loss,
		"tolerance": tolerance,
		"cases": cases,
		"max_diff": max(diffs) if diffs else None,
		"hilbert_deviation": hilbert,
		"passed": all(c["passed"] for c in cases) and all(v <= HILBERT_TOL for v in hilbert.values()),
	}
	log_info("Oracle check", f"{len(cases)} cases, passed={report['passed']}")
	return report
