"""Finite-section evidence: residuals, smallest singular values, sweeps, Weyl witnesses."""
from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg as sla

from .criteria import cesaro_mu_window, operator_verdicts
from .operators import DenseTruncation, OperatorSpec, apply_truncated, truncate
from .seqcore import DomainError, SeqWindow, WeightSpec, coeff_index_of, log_weights, weighted_norm
from .spectra import (
    HypothesisError,
    SpectralReport,
    eigenvector_cesaro,
    eigenvector_rhaly,
    fine_spectrum_report,
)

DENSE_SVD_MAX = 1024
DEFAULT_SEED = 20240601


class NumericError(ArithmeticError):
    pass


def eigen_residual(op: OperatorSpec, lam: float, x: SeqWindow, N: int, w: WeightSpec) -> float:
    """``||A_N x - lam x||_w / ||x||_w`` over indices 1..N.

    Lower-triangularity makes the first N rows of the infinite product exact,
    so no tail term is needed.
    """
    xs = SeqWindow(1, x.prefix(N))
    denom = weighted_norm(xs, w)
    if denom == 0:
        raise DomainError("residual of the zero vector is undefined")
    y = apply_truncated(op, xs, N).values - lam * xs.values
    return weighted_norm(SeqWindow(1, y), w) / denom


def _inverse_iteration(L: np.ndarray, maxiter: int = 500, rtol: float = 1e-12) -> float | None:
    """Smallest singular value of a lower-triangular L via triangular solves."""
    n = L.shape[0]
    v = np.ones(n, dtype=L.dtype) / math.sqrt(n)
    sigma = None
    for _ in range(maxiter):
        # (L^H L)^{-1} v = L^{-1} L^{-H} v
        z = sla.solve_triangular(L, v, lower=True, trans="C", check_finite=False)
        z = sla.solve_triangular(L, z, lower=True, check_finite=False)
        nz = np.linalg.norm(z)
        if not math.isfinite(nz) or nz == 0:
            return None
        v = z / nz
        new = 1.0 / math.sqrt(nz)
        if sigma is not None and abs(new - sigma) <= rtol * new:
            return float(np.linalg.norm(L @ v))
        sigma = new
    return None


def smallest_singular_value(T: DenseTruncation, lam: complex = 0.0) -> float:
    """``sigma_min(T - lam I)``: dense SVD up to order 1024, inverse iteration beyond."""
    A = T.entries
    if not np.all(np.isfinite(A)):
        raise NumericError("truncation has non-finite entries")
    lam = complex(lam)
    dtype = complex if lam.imag != 0 else float
    M = A.astype(dtype) - (lam if dtype is complex else lam.real) * np.eye(T.N, dtype=dtype)
    if np.any(np.diag(M) == 0):
        return 0.0
    if T.N > DENSE_SVD_MAX:
        sigma = _inverse_iteration(M)
        if sigma is not None:
            return sigma
    return float(sla.svdvals(M, check_finite=False)[-1])


class FiniteRankError(NamedTuple):
    value: float
    certified_tail: bool


def finite_rank_error(t: float, r: WeightSpec, s: WeightSpec, k: int, horizon: int) -> FiniteRankError:
    """``sup_{k < n <= horizon} mu_n``: bound on ``||T - T^(k)||`` seen up to ``horizon``.

    ``certified_tail`` is set when mu is known to decrease past k, so the
    windowed sup is the true one.
    """
    if k < 1:
        raise DomainError("rank must be >= 1")
    if horizon <= k:
        raise DomainError("horizon must exceed the rank")
    mu = cesaro_mu_window(t, r, s, horizon)
    certified = r.kind == "constant" and s.kind == "constant"
    return FiniteRankError(float(mu[k:].max()), certified)


def measured_rank_distance(
    t: float, r: WeightSpec, s: WeightSpec, k: int, horizon: int, samples: int = 100, seed: int = DEFAULT_SEED
) -> float:
    """Lower bound on ``||T - T^(k)||`` (sup norm) from random unit vectors."""
    op = OperatorSpec.gen_cesaro(t, r, s)
    T = truncate(op, horizon, weighted=True).entries
    tail = T[k:]
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(samples):
        x = rng.uniform(-1.0, 1.0, horizon)
        x /= np.abs(x).max()
        best = max(best, float(np.abs(tail @ x).max()))
    return best


@dataclass
class TruncationRecord:
    N: int
    diag_eigs: np.ndarray = field(repr=False)
    sigma_min_at: dict[complex, float] = field(default_factory=dict)
    row_norm_sup: float = 0.0
    notes: list[str] = field(default_factory=list)


def _sweep_one(op: OperatorSpec, N: int, lambdas) -> TruncationRecord:
    T = truncate(op, N, weighted=True)
    rows = np.abs(T.entries).sum(axis=1)
    sig = {complex(l): smallest_singular_value(T, l) for l in lambdas}
    notes = []
    if N > DENSE_SVD_MAX:
        notes.append("sigma_min by inverse iteration")
    return TruncationRecord(N, op.diagonal(N), sig, float(rows.max()), notes)


def truncation_sweep(op: OperatorSpec, Ns, lambdas, workers: int = 1) -> list[TruncationRecord]:
    """One record per order in ``Ns`` (ascending), on the weight-conjugated sections."""
    Ns = [int(n) for n in Ns]
    if not Ns:
        raise DomainError("sweep needs at least one order")
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise DomainError("orders must be strictly ascending")
    lambdas = [complex(l) for l in lambdas]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda N: _sweep_one(op, N, lambdas), Ns))
    return [_sweep_one(op, N, lambdas) for N in Ns]


SWEEP_COLUMNS = ("N", "lambda_re", "lambda_im", "sigma_min", "row_norm_sup")


def write_sweep_csv(records: list[TruncationRecord], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for rec in records:
        for lam, sig in rec.sigma_min_at.items():
            w.writerow([rec.N, repr(lam.real), repr(lam.imag), repr(sig), repr(rec.row_norm_sup)])


class WeylWitness(NamedTuple):
    vector: SeqWindow
    norm_of_image: float
    kind: str


def weyl_witness(op: OperatorSpec, lam: float, N: int, report: SpectralReport | None = None) -> WeylWitness:
    """A unit vector that ``A_N - lam I`` nearly annihilates.

    Eigenvalues get their normalized eigenvector prefix (image measured in the
    weighted sup norm); ``lam = 0`` gets the singular vector of sigma_min of the
    conjugated section (image measured in the 2-norm, equal to sigma_min).
    """
    if report is None:
        report = fine_spectrum_report(op, operator_verdicts(op))
    if not report.ap_spectrum.set.contains(lam):
        raise HypothesisError(f"lambda = {lam} in the approximate point spectrum", "refuted")
    w = op.codomain_weight
    if lam != 0:
        if op.is_rhaly:
            m = coeff_index_of(op.form.a, lam)
            ev = eigenvector_rhaly(op.form.a, m, N)
        else:
            m = round(1.0 / lam)
            ev = eigenvector_cesaro(op.form.t, m, N)
        x = ev.x.values / weighted_norm(ev.x, w)
        xw = SeqWindow(1, x)
        img = apply_truncated(op, xw, N).values - lam * x
        return WeylWitness(xw, weighted_norm(SeqWindow(1, img), w), "eigenvector")

    T = truncate(op, N, weighted=True)
    _, svals, vh = np.linalg.svd(T.entries)
    v = vh[-1]
    with np.errstate(over="ignore"):
        x = v * np.exp(-log_weights(w, np.arange(1, N + 1)))
    return WeylWitness(SeqWindow(1, x), float(np.linalg.norm(T.entries @ v)), "singular-vector")
