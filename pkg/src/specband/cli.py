"""Command-line entry point: ``specband analyze|eigvec|sweep SPEC``.

Exit codes: 0 success, 1 input error, 2 refusal (unverified hypothesis in
strict mode, or a lambda that is not an eigenvalue), 3 resource limit.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

from . import specfile
from .criteria import HOLDS, VerdictPair, cesaro_verdict, rhaly_verdict
from .finsec import eigen_residual, truncation_sweep, write_sweep_csv
from .operators import ResourceLimitError
from .seqcore import DomainError, coeff_index_of, weight_values
from .spectra import (
    HypothesisError,
    eigenvector_cesaro,
    eigenvector_rhaly,
    fine_spectrum_report,
    goldberg_noncompact_report,
    kummer_certificate,
)

EXIT_OK, EXIT_INPUT, EXIT_REFUSED, EXIT_RESOURCE = 0, 1, 2, 3
EIGENVALUE_TOL = 1e-9


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def analyze(spec: specfile.SpecFile) -> tuple[dict, int]:
    op, an = spec.operator, spec.analysis
    verdicts: dict = {}
    if op.is_rhaly:
        bounded, compact = rhaly_verdict(op.form.a, op.codomain_weight, an.horizon, an.tol)
    else:
        bounded, compact, norm = cesaro_verdict(op.form.t, op.domain_weight, op.codomain_weight, an.horizon, an.tol)
        verdicts["norm"] = {
            "value": norm.value,
            "lower_bound_only": norm.lower_bound_only,
            "shifted_denominator": norm.shifted_denominator,
        }
    verdicts["bounded"] = bounded.to_dict()
    verdicts["compact"] = compact.to_dict()

    result = {
        "operator": specfile.to_dict(spec)["operator"],
        "verdicts": verdicts,
        "spectral_report": None,
        "refusal": None,
        "provenance": {"bounded": bounded.provenance, "compact": compact.provenance, "spectral_report": None},
    }
    code = EXIT_OK
    try:
        if compact.decision == HOLDS or not compact.certified:
            report = fine_spectrum_report(op, VerdictPair(bounded, compact), strict=an.strict)
        elif op.is_rhaly and bounded.decision == HOLDS:
            report = goldberg_noncompact_report(op.form.a, op.codomain_weight, an.chi, bounded, strict=an.strict)
        else:
            raise HypothesisError("operator bounded on c0(s)", "refuted")
    except HypothesisError as exc:
        result["refusal"] = {"hypothesis": exc.hypothesis, "status": exc.status}
        if exc.status != "refuted":
            code = EXIT_REFUSED
    else:
        result["spectral_report"] = report.to_dict()
        result["provenance"]["spectral_report"] = "assumed" if report.assumed else "certified"
    return result, code


def _resolve_eigenvalue(op, m, lam) -> int | None:
    if m is not None:
        return m
    if op.is_rhaly:
        return coeff_index_of(op.form.a, lam, EIGENVALUE_TOL)
    if lam is None or lam <= 0:
        return None
    m = round(1.0 / lam)
    return m if m >= 1 and abs(1.0 / m - lam) <= EIGENVALUE_TOL else None


def eigvec(spec: specfile.SpecFile, m: int | None, lam: float | None, N: int, out) -> tuple[dict, int]:
    op = spec.operator
    m = _resolve_eigenvalue(op, m, lam)
    if m is None or m > N:
        return {"refusal": {"hypothesis": f"lambda = {lam} in the point spectrum", "status": "refuted"}}, EXIT_REFUSED
    s = op.codomain_weight
    if op.is_rhaly:
        ev = eigenvector_rhaly(op.form.a, m, N)
    else:
        if not 0 < op.form.t < 1:
            return {"refusal": {"hypothesis": "0 < t < 1", "status": "refuted"}}, EXIT_REFUSED
        ev = eigenvector_cesaro(op.form.t, m, N)
    x = ev.x.values
    weighted = x * weight_values(s, 1, N)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "x_n", "x_n_s_n"])
        for n in range(1, N + 1):
            w.writerow([n, repr(float(x[n - 1])), repr(float(weighted[n - 1]))])
    summary = {
        "eigenvalue": ev.eigenvalue,
        "m": m,
        "N": N,
        "residual": eigen_residual(op, ev.eigenvalue, ev.x, N, s),
        "underflow": ev.underflow,
        "overflow": ev.overflow,
    }
    if op.is_rhaly and N >= m + 2:
        cert = kummer_certificate(op.form.a, s, ev.x, N)
        summary["kummer"] = {
            "verdict": cert.verdict,
            "start": cert.start,
            "statistic_last": float(cert.statistic[-1]),
        }
    return summary, EXIT_OK


def sweep(spec: specfile.SpecFile, out) -> int:
    an = spec.analysis
    if not an.Ns:
        raise DomainError("analysis.Ns must be a nonempty ascending list")
    records = truncation_sweep(spec.operator, an.Ns, an.lambdas)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            write_sweep_csv(records, fh)
    else:
        write_sweep_csv(records, sys.stdout)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="specband", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="operator spec file (JSON)")
    common.add_argument("--horizon", type=int, help="window length for verdicts")
    common.add_argument("--tol", type=float, help="decay tolerance for heuristic verdicts")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=None, help="refuse on unverified hypotheses")
    mode.add_argument("--assume", dest="strict", action="store_false", help="emit assumed-marked reports instead of refusing")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="output path (default: stdout)")

    sub.add_parser("analyze", parents=[common], help="verdicts and spectral report as JSON")
    e = sub.add_parser("eigvec", parents=[common], help="eigenvector CSV plus residual summary")
    which = e.add_mutually_exclusive_group(required=True)
    which.add_argument("--m", type=int, help="index of the eigenvalue")
    which.add_argument("--lambda", dest="lam", type=float, help="eigenvalue")
    e.add_argument("--N", type=int, default=50, help="vector length")
    sub.add_parser("sweep", parents=[common], help="finite-section sigma_min sweep as CSV")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        spec = specfile.load(args.spec).with_overrides(
            horizon=args.horizon, tol=args.tol, strict=args.strict, seed=args.seed
        )
        if args.command == "analyze":
            result, code = analyze(spec)
            _emit(result, args.out)
            return code
        if args.command == "eigvec":
            if not args.out:
                raise specfile.SpecFileError("eigvec needs --out for the CSV")
            summary, code = eigvec(spec, args.m, args.lam, args.N, args.out)
            _emit(summary)
            return code
        return sweep(spec, args.out)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (OSError, specfile.SpecFileError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
