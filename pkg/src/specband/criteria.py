"""Boundedness and compactness verdicts for Rhaly and generalized Cesàro operators.

Certified verdicts come only from symbolic limit rules on closed-form
sequences.  Everything else is judged from a finite window of the governing
sequence and marked heuristic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .operators import GenCesaro, OperatorSpec
from .seqcore import (
    Asymptotic,
    CoeffSpec,
    DomainError,
    SeqWindow,
    WeightSpec,
    coeff_values,
    log_weight_ratios,
    log_weights,
    ratio_limsup_estimate,
    weighted_reciprocal_sums,
)

DEFAULT_HORIZON = 512
DEFAULT_TOL = 1e-6
MIN_HORIZON = 32
TREND_SLACK = 3

HOLDS, FAILS, UNKNOWN = "holds", "fails", "unknown"


@dataclass(frozen=True)
class Verdict:
    """Decision on one property together with the sequence that produced it."""

    property: str
    decision: str
    certified: bool
    evidence: SeqWindow
    criterion_id: str
    norm: float | None = None

    @property
    def evidence_sup(self) -> float:
        return float(np.max(self.evidence.values))

    @property
    def evidence_last(self) -> float:
        return float(self.evidence.values[-1])

    @property
    def provenance(self) -> str:
        return "certified" if self.certified else "heuristic"

    def to_dict(self) -> dict:
        d = {
            "property": self.property,
            "decision": self.decision,
            "certified": self.certified,
            "criterion": self.criterion_id,
            "evidence": {
                "start": self.evidence.start,
                "values": [float(v) for v in self.evidence.values],
                "sup": self.evidence_sup,
                "last": self.evidence_last,
            },
        }
        if self.norm is not None:
            d["norm"] = self.norm
        return d


class VerdictPair(NamedTuple):
    bounded: Verdict
    compact: Verdict


def _check_horizon(horizon):
    if horizon < MIN_HORIZON:
        raise DomainError(f"horizon must be at least {MIN_HORIZON}, got {horizon}")
    return int(horizon)


def _consistent(bounded: Verdict, compact: Verdict) -> VerdictPair:
    # compactness implies boundedness
    if compact.decision == HOLDS and bounded.decision != HOLDS:
        bounded = replace(
            bounded,
            decision=HOLDS,
            certified=compact.certified,
            criterion_id=bounded.criterion_id + "+implied-by-compact",
        )
    return VerdictPair(bounded, compact)


def decreasing_tail(seq: np.ndarray, slack: int = TREND_SLACK) -> bool:
    """Decreasing over the last half of ``seq`` with at most ``slack`` violations."""
    half = seq[len(seq) // 2 :]
    return int(np.count_nonzero(np.diff(half) > 0)) <= slack


def heuristic_compact(seq: np.ndarray, tol: float) -> str:
    if decreasing_tail(seq) and seq[-1] < tol:
        return HOLDS
    quarter = seq[3 * len(seq) // 4 :]
    if quarter.max() >= max(tol, 0.5 * seq.max()):
        return FAILS
    return UNKNOWN


def heuristic_bounded(seq: np.ndarray) -> str:
    H = len(seq)
    if int(np.argmax(seq)) + 1 < H / 2:
        return HOLDS
    first, full = seq[: H // 2].max(), seq.max()
    growth = full / first - 1.0 if first > 0 else math.inf
    if growth < 1e-2:
        return HOLDS
    if growth > 1e-1:
        return FAILS
    return UNKNOWN


# ---------------------------------------------------------------- Rhaly


def rhaly_beta_window(a: CoeffSpec, s: WeightSpec, N: int) -> np.ndarray:
    """``beta_n = |a_n| s_n sum_{k<=n} 1/s_k`` for n = 1..N."""
    return np.abs(coeff_values(a, 1, N)) * weighted_reciprocal_sums(s, N)


def rhaly_beta(a: CoeffSpec, s: WeightSpec, n: int) -> float:
    return float(rhaly_beta_window(a, s, n)[-1])


def _beta_asymptotic(a: CoeffSpec, s: WeightSpec) -> Asymptotic | None:
    """Shape of beta_n when s is symbolic enough; None otherwise."""
    if s.kind == "geometric":
        g = Asymptotic()  # 1 <= g_n <= 1/(1-eta)
    elif s.kind == "constant":
        g = Asymptotic(poly=1.0)
    elif s.kind == "power_decay":
        g = Asymptotic(const=1.0 / (s.p + 1.0), poly=1.0)
    else:
        return None
    return a.asymptotic() * g


def rhaly_verdict(
    a: CoeffSpec, s: WeightSpec, horizon: int = DEFAULT_HORIZON, tol: float = DEFAULT_TOL
) -> VerdictPair:
    """Bounded/compact verdicts for ``R_a`` on ``c0(s)``.

    The governing sequence is beta_n: bounded iff beta is bounded, compact iff
    beta -> 0.
    """
    H = _check_horizon(horizon)
    beta = rhaly_beta_window(a, s, H)
    ev = SeqWindow(1, beta)
    est = ratio_limsup_estimate(s, (1, H))

    if est.certified and est.estimate < 1:
        # 1 <= s_n sum 1/s_k <= M0 sup s + 1/(1-eta): beta behaves like |a_n|
        bd = HOLDS if a.bounded else FAILS
        cp = HOLDS if a.null else FAILS
        return _consistent(
            Verdict("bounded", bd, True, ev, "ratio-limsup<1"),
            Verdict("compact", cp, True, ev, "ratio-limsup<1"),
        )

    shape = _beta_asymptotic(a, s)
    if shape is not None:
        lim = shape.limit()
        bd = FAILS if lim == "infinite" else HOLDS
        cp = HOLDS if lim == "zero" else FAILS
        return _consistent(
            Verdict("bounded", bd, True, ev, "beta-symbolic"),
            Verdict("compact", cp, True, ev, "beta-symbolic"),
        )

    return _consistent(
        Verdict("bounded", heuristic_bounded(beta), False, ev, "beta-window"),
        Verdict("compact", heuristic_compact(beta, tol), False, ev, "beta-window"),
    )


def geometric_split_bound(s: WeightSpec, eta: float, n0: int) -> float:
    """``M0 sup s + 1/(1-eta)`` where ``M0 = sum_{k<n0} 1/s_k``.

    Bounds ``s_n sum_{k<=n} 1/s_k`` for every n once ``s_{n+1} <= eta s_n``
    holds from ``n0`` on.
    """
    m0 = math.fsum(np.exp(-log_weights(s, np.arange(1, n0)))) if n0 > 1 else 0.0
    return m0 * s.bound + 1.0 / (1.0 - eta)


# ---------------------------------------------------------------- unweighted c0


def c0_matrix_bounded(op: OperatorSpec, horizon: int = DEFAULT_HORIZON) -> Verdict:
    """Row/column test for a matrix on plain c0; ``norm`` is the sup of row l1 norms."""
    H = int(horizon)
    n = np.arange(1, H + 1, dtype=float)
    if isinstance(op.form, GenCesaro):
        t = op.form.t
        rows = (-np.expm1(n * math.log(t)) / (1 - t)) / n if t > 0 else 1.0 / n
        # (1-t^n)/(n(1-t)) is decreasing in n, so the sup is the first row
        return Verdict("bounded", HOLDS, True, SeqWindow(1, rows), "c0-row-l1", norm=1.0)

    a = op.form.a
    rows = n * np.abs(coeff_values(a, 1, H))
    ev = SeqWindow(1, rows)
    row_shape = a.asymptotic().times_power(1.0)
    lim = row_shape.limit()
    if a.kind == "tabulated" and a.tail == "repeat_last":
        lim = "infinite"
    if lim == "infinite":
        return Verdict("bounded", FAILS, True, ev, "c0-row-l1")
    if not a.null:
        # columns (a_n)_{n>=k} must tend to zero
        return Verdict("bounded", FAILS, True, ev, "c0-column")
    return Verdict("bounded", HOLDS, True, ev, "c0-row-l1", norm=_rhaly_row_sup(a, rows))


def _rhaly_row_sup(a: CoeffSpec, rows: np.ndarray) -> float:
    if a.kind == "harmonic":
        return 1.0
    if a.kind == "power_decay":
        return 1.0  # n^(1-p) with p >= 1 peaks at n = 1
    if a.kind == "geometric":
        # n rho^n is unimodal with its peak near 1/log(1/rho)
        peak = 1.0 / math.log(1.0 / a.ratio)
        cands = {max(1, math.floor(peak)), math.ceil(peak)}
        return max(m * a.ratio**m for m in cands)
    # tabulated with geometric tail: n |a_L| q^(n-L) is unimodal past L
    L, q, last = len(a.values), a.tail_ratio, abs(a.values[-1])
    best = max(float(rows[: min(L, len(rows))].max()), L * last)
    m = L + 1
    while True:
        v = m * last * q ** (m - L)
        if v <= best and (m + 1) * q <= m:
            return best
        best = max(best, v)
        m += 1


# ---------------------------------------------------------------- generalized Cesàro


def cesaro_mu_window(t: float, r: WeightSpec, s: WeightSpec, N: int) -> np.ndarray:
    """``mu_n = (s_n/n) sum_{k<=n} t^(n-k)/r_k`` for n = 1..N.

    Runs the recurrence ``inner_n = t inner_{n-1} + 1/r_n`` scaled by ``s_n``
    (``v_n = s_n inner_n``) so that neither factor overflows.
    """
    if not 0 <= t < 1:
        raise DomainError("t must satisfy 0 <= t < 1")
    N = int(N)
    n = np.arange(1, N + 1)
    s_over_r = np.exp(log_weights(s, n) - log_weights(r, n))
    s_ratio = np.exp(log_weight_ratios(s, 1, N - 1)) if N > 1 else np.empty(0)
    v = np.empty(N)
    v[0] = s_over_r[0]
    for i in range(1, N):
        v[i] = t * s_ratio[i - 1] * v[i - 1] + s_over_r[i]
    return v / n


def cesaro_mu(t: float, r: WeightSpec, s: WeightSpec, n: int) -> float:
    if n < 1:
        raise DomainError("index must be >= 1")
    return float(cesaro_mu_window(t, r, s, n)[-1])


def _mu_asymptotic(t: float, r: WeightSpec, s: WeightSpec) -> Asymptotic | None:
    if r.kind in ("constant", "power_decay"):
        inner = r.asymptotic().reciprocal()  # sum t^(n-k) k^q ~ n^q/(1-t)
    elif r.kind == "geometric":
        if t * r.ratio >= 1:
            return None
        inner = r.asymptotic().reciprocal()  # ~ eta^-n / (1 - t eta)
    else:
        return None
    if s.kind == "tabulated":
        return None
    try:
        return (s.asymptotic() * inner).times_power(-1.0)
    except DomainError:
        return None


class NormEstimate(NamedTuple):
    value: float
    lower_bound_only: bool
    shifted_denominator: float  # sup_n s_n/(n+1) sum t^(n-k)/r_k


def cesaro_verdict(
    t: float,
    r: WeightSpec,
    s: WeightSpec,
    horizon: int = DEFAULT_HORIZON,
    tol: float = DEFAULT_TOL,
) -> tuple[Verdict, Verdict, NormEstimate]:
    """Bounded iff mu is bounded; compact iff mu -> 0."""
    H = _check_horizon(horizon)
    mu = cesaro_mu_window(t, r, s, H)
    ev = SeqWindow(1, mu)
    n = np.arange(1, H + 1)
    closed = r.kind == "constant" and s.kind == "constant"
    norm = NormEstimate(float(mu.max()), not closed, float((mu * n / (n + 1)).max()))

    if r == s:
        est = ratio_limsup_estimate(s, (1, H))
        if est.certified and est.estimate < 1:
            pair = _consistent(
                Verdict("bounded", HOLDS, True, ev, "ratio-limsup<1", norm=norm.value),
                Verdict("compact", HOLDS, True, ev, "ratio-limsup<1"),
            )
            return pair.bounded, pair.compact, norm

    shape = _mu_asymptotic(t, r, s)
    if shape is not None:
        lim = shape.limit()
        bd = FAILS if lim == "infinite" else HOLDS
        cp = HOLDS if lim == "zero" else FAILS
        pair = _consistent(
            Verdict("bounded", bd, True, ev, "mu-symbolic", norm=norm.value if bd == HOLDS else None),
            Verdict("compact", cp, True, ev, "mu-symbolic"),
        )
        return pair.bounded, pair.compact, norm

    bd = heuristic_bounded(mu)
    pair = _consistent(
        Verdict("bounded", bd, False, ev, "mu-window", norm=norm.value if bd == HOLDS else None),
        Verdict("compact", heuristic_compact(mu, tol), False, ev, "mu-window"),
    )
    return pair.bounded, pair.compact, norm._replace(lower_bound_only=True)


def operator_verdicts(
    op: OperatorSpec, horizon: int = DEFAULT_HORIZON, tol: float = DEFAULT_TOL
) -> VerdictPair:
    if op.is_rhaly:
        return rhaly_verdict(op.form.a, op.codomain_weight, horizon, tol)
    b, c, _ = cesaro_verdict(op.form.t, op.domain_weight, op.codomain_weight, horizon, tol)
    return VerdictPair(b, c)
