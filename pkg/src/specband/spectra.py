"""Spectral sets, closed-form eigenvectors and Goldberg classification reports."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .criteria import FAILS, HOLDS, UNKNOWN, Verdict, VerdictPair, decreasing_tail, rhaly_verdict
from .operators import GenCesaro, OperatorSpec
from .seqcore import (
    CoeffSpec,
    CompensatedSum,
    DomainError,
    SeqWindow,
    WeightSpec,
    MEMBER_REL_TOL,
    coeff_index_of,
    coeff_values,
    log_weight_ratios,
    log_weights,
    spec_to_dict,
    weighted_reciprocal_sums,
)

MEMBER_TOL = 1e-12
YES, NO = "yes", "no"


class HypothesisError(Exception):
    """A theorem-driven result was requested without its hypotheses."""

    def __init__(self, hypothesis: str, status: str = "unverified"):
        super().__init__(f"hypothesis {status}: {hypothesis}")
        self.hypothesis = hypothesis
        self.status = status


# ---------------------------------------------------------------- sets


@dataclass(frozen=True)
class SymbolicSet:
    """A subset of the complex plane described by a rule rather than a list.

    kinds:
      empty
      finite               -- ``values``
      diagonal             -- S = {a_n}; optional condition on Re(1/lambda)
      reciprocal_integers  -- {1/n}
      reinverse            -- {lambda not in S or 0 : Re(1/lambda) <relation> threshold}
      union, difference    -- of ``parts``
    ``with_zero`` adds the point 0.
    """

    kind: str
    with_zero: bool = False
    values: tuple[complex, ...] = ()
    coeff: CoeffSpec | None = None
    relation: str | None = None
    threshold: float | None = None
    parts: tuple["SymbolicSet", ...] = ()

    def contains(self, lam, tol: float = MEMBER_TOL) -> bool:
        lam = complex(lam)
        if self.with_zero and lam == 0:
            return True
        k = self.kind
        if k == "empty":
            return False
        if k == "finite":
            return any(_matches(lam, complex(v), tol) for v in self.values)
        if k == "reciprocal_integers":
            if abs(lam.imag) > tol or lam.real <= 0:
                return False
            m = round(1.0 / lam.real)
            return m >= 1 and _matches(lam, 1.0 / m, tol)
        if k == "diagonal":
            if coeff_index_of(self.coeff, lam, tol) is None:
                return False
            return self.relation is None or _compare(lam, self.relation, self.threshold)
        if k == "reinverse":
            if lam == 0 or coeff_index_of(self.coeff, lam, tol) is not None:
                return False
            return _compare(lam, self.relation, self.threshold)
        if k == "union":
            return any(p.contains(lam, tol) for p in self.parts)
        if k == "difference":
            head, *rest = self.parts
            return head.contains(lam, tol) and not any(p.contains(lam, tol) for p in rest)
        raise DomainError(f"unknown set kind {k!r}")

    __contains__ = contains

    def nth(self, n: int) -> float:
        """n-th generator element for diagonal and reciprocal-integer sets."""
        if self.kind == "diagonal":
            return float(coeff_values(self.coeff, n, n)[0])
        if self.kind == "reciprocal_integers":
            return 1.0 / n
        raise DomainError(f"{self.kind} sets have no generator")

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.with_zero:
            d["with_zero"] = True
        if self.kind == "finite":
            d["values"] = [_num(v) for v in self.values]
        if self.coeff is not None:
            d["coefficients"] = spec_to_dict(self.coeff)
        if self.relation is not None:
            d["condition"] = {"quantity": "re_inverse", "relation": self.relation, "threshold": self.threshold}
        if self.parts:
            d["parts"] = [p.to_dict() for p in self.parts]
        return d


def _matches(lam: complex, v: complex, tol: float) -> bool:
    """Equal within ``tol``, and relatively so; 0 only matches exactly."""
    if v == 0:
        return lam == 0
    d = abs(lam - v)
    return d <= tol and d <= MEMBER_REL_TOL * abs(v)


def _num(v):
    v = complex(v)
    return v.real if v.imag == 0 else [v.real, v.imag]


def _compare(lam: complex, relation: str, threshold: float) -> bool:
    alpha = (1.0 / lam).real
    return alpha > threshold if relation == ">" else alpha < threshold


EMPTY = SymbolicSet("empty")
ZERO = SymbolicSet("finite", values=(0.0,))


def diagonal_set(a: CoeffSpec, with_zero: bool = False) -> SymbolicSet:
    return SymbolicSet("diagonal", with_zero=with_zero, coeff=a)


def reciprocal_integers(with_zero: bool = False) -> SymbolicSet:
    return SymbolicSet("reciprocal_integers", with_zero=with_zero)


@dataclass(frozen=True)
class SetClaim:
    """What a theorem says about one spectral set.

    ``relation`` is ``equals`` (exact), or one of ``contains``, ``subset_of``,
    ``between`` (containments).  Members of ``sets`` are SymbolicSets or names
    of sets the report does not determine (e.g. ``"spectrum \\ A2"``).
    """

    relation: str
    sets: tuple

    @property
    def exact(self) -> bool:
        return self.relation == "equals"

    @property
    def set(self) -> SymbolicSet:
        if not self.exact:
            raise DomainError("only exact claims determine a set")
        return self.sets[0]

    def to_dict(self) -> dict:
        return {
            "marker": "exact" if self.exact else "containment",
            "relation": self.relation,
            "sets": [s.to_dict() if isinstance(s, SymbolicSet) else {"expression": s} for s in self.sets],
        }


def exactly(s: SymbolicSet) -> SetClaim:
    return SetClaim("equals", (s,))


GOLDBERG_LABELS = ("I1", "I2", "I3", "II1", "II2", "II3", "III1", "III2", "III3")


@dataclass
class SpectralReport:
    operator: dict
    spectrum: SetClaim | None = None
    point_spectrum: SetClaim | None = None
    continuous_spectrum: SetClaim | None = None
    residual_spectrum: SetClaim | None = None
    goldberg: dict[str, SetClaim] = field(default_factory=dict)
    ap_spectrum: SetClaim | None = None
    defect_spectrum: SetClaim | None = None
    compression_spectrum: SetClaim | None = None
    named_sets: dict[str, SymbolicSet] = field(default_factory=dict)
    assumptions: list[tuple[str, str]] = field(default_factory=list)

    @property
    def assumed(self) -> bool:
        return any(status == "assumed" for _, status in self.assumptions)

    def classify(self, lam, tol: float = MEMBER_TOL) -> str:
        """'point', 'continuous', 'residual' or 'resolvent' from exact claims."""
        parts = {
            "point": self.point_spectrum,
            "continuous": self.continuous_spectrum,
            "residual": self.residual_spectrum,
        }
        if not all(c is not None and c.exact for c in parts.values()):
            raise DomainError("report does not determine the fine spectrum")
        hits = [name for name, c in parts.items() if c.set.contains(lam, tol)]
        if len(hits) > 1:
            raise AssertionError(f"{lam} lies in {hits}")
        return hits[0] if hits else "resolvent"

    def to_dict(self) -> dict:
        def claim(c):
            return None if c is None else c.to_dict()

        return {
            "operator": self.operator,
            "spectrum": claim(self.spectrum),
            "point_spectrum": claim(self.point_spectrum),
            "continuous_spectrum": claim(self.continuous_spectrum),
            "residual_spectrum": claim(self.residual_spectrum),
            "goldberg": {k: self.goldberg[k].to_dict() for k in GOLDBERG_LABELS if k in self.goldberg},
            "ap_spectrum": claim(self.ap_spectrum),
            "defect_spectrum": claim(self.defect_spectrum),
            "compression_spectrum": claim(self.compression_spectrum),
            "named_sets": {k: v.to_dict() for k, v in sorted(self.named_sets.items())},
            "assumptions": [{"hypothesis": h, "status": s} for h, s in self.assumptions],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def operator_to_dict(op: OperatorSpec) -> dict:
    if op.is_rhaly:
        form = {"form": "rhaly", "coefficients": spec_to_dict(op.form.a)}
    else:
        form = {"form": "gen_cesaro", "t": op.form.t}
    form["domain_weight"] = spec_to_dict(op.domain_weight)
    form["codomain_weight"] = spec_to_dict(op.codomain_weight)
    return form


# ---------------------------------------------------------------- hypotheses


def _gate(assumptions, name, status, strict):
    """Record a hypothesis; refuse when it is refuted, or unverified under ``strict``."""
    if status == "refuted":
        raise HypothesisError(name, "refuted")
    if status == "unverified":
        if strict:
            raise HypothesisError(name)
        status = "assumed"
    assumptions.append((name, status))


def _verdict_status(v: Verdict) -> str:
    if v.decision == HOLDS:
        return "certified" if v.certified else "unverified"
    if v.decision == FAILS and v.certified:
        return "refuted"
    return "unverified"


def _check_standing(op: OperatorSpec, assumptions, strict):
    s = op.codomain_weight
    if op.is_rhaly:
        a = op.form.a
        _gate(assumptions, "coefficients nonzero real", "certified", strict)
        _gate(assumptions, "coefficients pairwise distinct", "certified" if a.distinct else "unverified", strict)
        _gate(assumptions, "weight bounded decreasing strictly positive", "certified" if s.decreasing else "refuted", strict)
    else:
        t = op.form.t
        _gate(assumptions, "0 < t < 1", "certified" if 0 < t < 1 else "refuted", strict)
        _gate(assumptions, "domain weight equals codomain weight", "certified" if op.same_space else "refuted", strict)
        _gate(assumptions, "weight bounded strictly positive", "certified", strict)


def point_spectrum(op: OperatorSpec, compactness: Verdict | None = None) -> SymbolicSet:
    """sigma_p on c0(s): S for compact Rhaly, {1/n} for the generalized Cesàro form."""
    notes: list = []
    if op.is_rhaly:
        if compactness is None or compactness.decision != HOLDS:
            raise HypothesisError("operator compact on c0(s)")
        _check_standing(op, notes, strict=True)
        return diagonal_set(op.form.a)
    _check_standing(op, notes, strict=True)
    return reciprocal_integers()


def fine_spectrum_report(op: OperatorSpec, verdicts: VerdictPair, strict: bool = True) -> SpectralReport:
    """Spectrum, fine spectrum, Goldberg labels and sigma_ap/delta/co of a compact operator.

    With ``strict=False`` unverified (but not refuted) hypotheses are recorded
    as assumed instead of refusing.
    """
    assumptions: list[tuple[str, str]] = []
    _gate(assumptions, "operator compact on c0(s)", _verdict_status(verdicts.compact), strict)
    _check_standing(op, assumptions, strict)

    if op.is_rhaly:
        S = diagonal_set(op.form.a)
        S0 = diagonal_set(op.form.a, with_zero=True)
    else:
        S = reciprocal_integers()
        S0 = reciprocal_integers(with_zero=True)

    goldberg = {label: exactly(EMPTY) for label in GOLDBERG_LABELS}
    goldberg["III3"] = exactly(S)
    goldberg["II2"] = exactly(ZERO)
    return SpectralReport(
        operator=operator_to_dict(op),
        spectrum=exactly(S0),
        point_spectrum=exactly(S),
        continuous_spectrum=exactly(ZERO),
        residual_spectrum=exactly(EMPTY),
        goldberg=goldberg,
        ap_spectrum=exactly(S0),
        defect_spectrum=exactly(S0),
        compression_spectrum=exactly(S),
        named_sets={"S": S},
        assumptions=assumptions,
    )


# ---------------------------------------------------------------- signed logs


@dataclass(frozen=True)
class SignedLogValue:
    """``sign * exp(log_abs)``; sign 0 means exactly zero."""

    sign: int
    log_abs: float = -math.inf

    @classmethod
    def of(cls, x: float) -> "SignedLogValue":
        if x == 0:
            return cls(0)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        sign = self.sign * other.sign
        return SignedLogValue(sign, self.log_abs + other.log_abs if sign else -math.inf)

    def __truediv__(self, other: "SignedLogValue") -> "SignedLogValue":
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero SignedLogValue")
        sign = self.sign * other.sign
        return SignedLogValue(sign, self.log_abs - other.log_abs if sign else -math.inf)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)


@dataclass(frozen=True)
class Eigenvector:
    x: SeqWindow
    eigenvalue: float
    sign: np.ndarray = field(repr=False)
    log_abs: np.ndarray = field(repr=False)
    underflow: bool = False
    overflow: bool = False


def _from_signed_logs(sign, log_abs, lam) -> Eigenvector:
    with np.errstate(over="ignore", under="ignore"):
        mag = np.exp(log_abs)
    x = np.where(sign == 0, 0.0, sign * mag)
    under = bool(np.any((sign != 0) & (mag == 0)))
    over = bool(np.any(~np.isfinite(x)))
    return Eigenvector(SeqWindow(1, x), lam, sign, log_abs, under, over)


def eigenvector_rhaly(a: CoeffSpec, m: int, N: int) -> Eigenvector:
    """Eigenvector of ``R_a`` for ``lambda = a_m`` with ``x_m = 1``, indices 1..N.

    ``x_n = x_{n-1} * lambda a_n / (a_{n-1} (lambda - a_n))`` for n > m,
    accumulated as signed logarithms.
    """
    if not 1 <= m <= N:
        raise DomainError("need 1 <= m <= N")
    av = coeff_values(a, 1, N)
    lam = float(av[m - 1])
    sign = np.zeros(N, dtype=int)
    log_abs = np.full(N, -math.inf)
    sign[m - 1], log_abs[m - 1] = 1, 0.0
    acc = CompensatedSum()
    sgn = 1
    for j in range(m + 1, N + 1):
        aj, aprev = av[j - 1], av[j - 2]
        if aj == 0:
            raise DomainError(f"a_{j} underflows float64; shorten N")
        diff = lam - aj
        if diff == 0:
            raise DomainError(f"degenerate denominator at j={j}: a_{j} equals the eigenvalue a_{m}")
        f = SignedLogValue.of(lam * aj) / (SignedLogValue.of(aprev) * SignedLogValue.of(diff))
        sgn *= f.sign
        acc.add(f.log_abs)
        sign[j - 1], log_abs[j - 1] = sgn, acc.value
    return _from_signed_logs(sign, log_abs, lam)


def eigenvector_cesaro(t: float, m: int, N: int) -> Eigenvector:
    """Eigenvector of ``C_t`` for ``lambda = 1/m``: ``x_{m+n} = binom(m+n-1, n) t^n``."""
    if not 0 < t < 1:
        raise DomainError("eigenvector formula needs 0 < t < 1")
    if not 1 <= m <= N:
        raise DomainError("need 1 <= m <= N")
    x = np.zeros(N)
    x[m - 1] = 1.0
    for n in range(0, N - m):
        # x_{m+n+1} = x_{m+n} * t * (m+n) / (n+1)
        x[m + n] = x[m + n - 1] * t * (m + n) / (n + 1)
    sign = (x != 0).astype(int)
    with np.errstate(divide="ignore"):
        log_abs = np.log(np.abs(x))
    under = bool(np.any(x[m - 1 :] == 0))
    return Eigenvector(SeqWindow(1, x), 1.0 / m, sign, log_abs, under, False)


def adjoint_eigenvector_rhaly(a: CoeffSpec, k: int, N: int | None = None) -> Eigenvector:
    """Finitely supported eigenvector of ``R_a*`` for ``lambda = a_k``.

    ``x_1 = 1``, ``x_n = prod_{j<n} (1 - a_j/lambda)`` up to n = k, zero beyond.
    """
    N = max(k, N or k + 1)
    av = coeff_values(a, 1, N)
    lam = float(av[k - 1])
    x = np.zeros(N)
    x[0] = 1.0
    for n in range(2, k + 1):
        x[n - 1] = x[n - 2] * (1.0 - av[n - 2] / lam)
    sign = np.sign(x).astype(int)
    with np.errstate(divide="ignore"):
        log_abs = np.log(np.abs(x))
    return Eigenvector(SeqWindow(1, x), lam, sign, log_abs)


# ---------------------------------------------------------------- Kummer


@dataclass(frozen=True)
class KummerCertificate:
    start: int
    q: np.ndarray = field(repr=False)
    statistic: np.ndarray = field(repr=False)
    verdict: str

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.start + len(self.statistic))


def kummer_certificate(a: CoeffSpec, s: WeightSpec, x: SeqWindow, N: int) -> KummerCertificate:
    """Kummer statistic ``q_n |x_n s_n|^2 / |x_{n+1} s_{n+1}|^2 - q_{n+1}``.

    ``q_n = s_{n+1} / (s_n^2 a_n^2 sum_{k<=n} 1/s_k)``.  The window runs from
    the first nonzero ``x_n`` to ``N - 1``.  The verdict is ``diverging`` when
    the statistic is positive and increasing over the last half of the window.
    """
    xs = x.prefix(N)
    nz = np.flatnonzero(xs)
    if nz.size == 0:
        raise DomainError("x vanishes on 1..N")
    start = int(nz[0]) + 1
    if start > N - 1:
        raise DomainError("window too short for the statistic")
    n = np.arange(start, N + 1)  # q needs n..N, statistic n..N-1
    g = weighted_reciprocal_sums(s, N)[n - 1]  # s_n sum 1/s_k
    a_n = coeff_values(a, start, N)
    log_ratio = log_weight_ratios(s, start, N)  # log(s_{n+1}/s_n)
    q = np.exp(log_ratio) / (a_n**2 * g)
    stat = np.empty(N - start)
    for i, k in enumerate(range(start, N)):
        if xs[k] == 0:
            raise DomainError(f"statistic undefined at n={k}: x_{k + 1} is zero")
        ratio_sq = (xs[k - 1] / xs[k]) ** 2 * math.exp(-2.0 * log_ratio[i])
        stat[i] = q[i] * ratio_sq - q[i + 1]
    half = stat[len(stat) // 2 :]
    diverging = bool(np.all(half > 0) and np.all(np.diff(half) > 0))
    return KummerCertificate(start, q[:-1], stat, "diverging" if diverging else "inconclusive")


# ---------------------------------------------------------------- A1 / A2


class Membership(NamedTuple):
    in_A1: str
    in_A2: str
    alpha: float


WINDOW_HORIZON = 4096


def _windowed_limit_zero(log_terms: np.ndarray, n: np.ndarray) -> str:
    half = slice(len(n) // 2, None)
    lt, ln = log_terms[half], np.log(n[half])
    slope = np.polyfit(ln, lt, 1)[0]
    if slope < -0.05 and decreasing_tail(lt):
        return YES
    if slope > 0.05:
        return NO
    if np.ptp(lt) < 1e-3 and lt[-1] > math.log(1e-12):
        return NO
    return UNKNOWN


def _windowed_series_converges(log_terms: np.ndarray, n: np.ndarray) -> str:
    """Ratio test, then a Raabe statistic, over the last quarter of the window."""
    q = slice(3 * len(n) // 4, None)
    d = np.diff(log_terms)[q]  # log(u_{n+1}/u_n)
    nn = n[:-1][q]
    mean = float(d.mean())
    if mean < -1e-3:
        return YES
    if mean > 1e-3:
        return NO
    raabe = float(np.mean(nn * np.expm1(-d)))
    if raabe > 1.05:
        return YES
    if raabe < 0.95:
        return NO
    return UNKNOWN


def a1_a2_membership(
    a: CoeffSpec,
    s: WeightSpec,
    chi: float,
    lam,
    method: str = "auto",
    horizon: int = WINDOW_HORIZON,
) -> Membership:
    """Tri-state membership of ``lam`` in A1 and A2 with ``alpha = Re(1/lam)``.

    A1 = {lam in S : a_n s_n n^(alpha chi) -> 0},
    A2 = {lam not in S or 0 : sum 1/(s_n n^(alpha chi)) < inf}.
    ``method`` is ``symbolic``, ``windowed`` or ``auto`` (symbolic when both
    sequences are closed-form).
    """
    lam = complex(lam)
    if lam == 0:
        raise DomainError("lambda = 0 is excluded")
    alpha = (1.0 / lam).real
    if method == "auto":
        method = "symbolic" if a.closed_form and s.closed_form else "windowed"
    in_S = coeff_index_of(a, lam) is not None
    e = alpha * chi

    if method == "symbolic":
        if not (a.closed_form and s.closed_form):
            raise DomainError("symbolic rules need closed-form sequences")
        in_a1 = NO
        if in_S:
            in_a1 = YES if (a.asymptotic() * s.asymptotic()).times_power(e).limit() == "zero" else NO
        in_a2 = NO
        if not in_S:
            in_a2 = YES if s.asymptotic().reciprocal().times_power(-e).series_converges() else NO
        return Membership(in_a1, in_a2, alpha)

    n = np.arange(1, horizon + 1, dtype=float)
    ls = log_weights(s, n)
    in_a1 = NO
    if in_S:
        lt = np.log(np.abs(coeff_values(a, 1, horizon))) + ls + e * np.log(n)
        in_a1 = _windowed_limit_zero(lt, n)
    in_a2 = NO
    if not in_S:
        in_a2 = _windowed_series_converges(-ls - e * np.log(n), n)
    return Membership(in_a1, in_a2, alpha)


def _a1_set(a: CoeffSpec, s: WeightSpec, chi: float) -> SymbolicSet:
    base = a.asymptotic() * s.asymptotic()
    if base.geo < 1 or (base.geo == 1 and base.exp_coef < 0):
        return diagonal_set(a)
    if base.geo > 1 or base.exp_coef > 0:
        return EMPTY
    # a_n s_n n^(alpha chi) -> 0  iff  alpha chi < -poly
    bound = -base.poly
    relation = "<" if chi > 0 else ">"
    threshold = bound / chi
    if relation == "<" and a.kind in ("harmonic", "power_decay", "geometric"):
        # 1/a_m increases without bound: only finitely many m qualify
        members, m = [], 1
        while True:
            am = float(coeff_values(a, m, m)[0])
            if not 1.0 / am < threshold:
                break
            members.append(am)
            m += 1
        return SymbolicSet("finite", values=tuple(members)) if members else EMPTY
    return SymbolicSet("diagonal", coeff=a, relation=relation, threshold=threshold)


def _a2_set(a: CoeffSpec, s: WeightSpec, chi: float) -> SymbolicSet:
    inv = s.asymptotic().reciprocal()
    if inv.geo > 1 or inv.exp_coef > 0:
        return EMPTY
    # sum n^(poly - alpha chi) converges iff alpha chi > 1 + poly
    bound = 1.0 + inv.poly
    return SymbolicSet("reinverse", coeff=a, relation=">" if chi > 0 else "<", threshold=bound / chi)


def goldberg_noncompact_report(
    a: CoeffSpec,
    s: WeightSpec,
    chi: float | None = None,
    bounded: Verdict | None = None,
    strict: bool = True,
) -> SpectralReport:
    """Goldberg classification of a bounded (not necessarily compact) ``R_a`` on ``c0(s)``.

    Equalities are reported as exact; everything else stays a containment.
    """
    op = OperatorSpec.rhaly(a, s)
    assumptions: list[tuple[str, str]] = []
    if bounded is None:
        bounded = rhaly_verdict(a, s).bounded
    status = _verdict_status(bounded)
    _gate(assumptions, "operator bounded on c0(s)", status, strict)

    # every supported kind determines lim n a_n; None means it diverges
    known = a.chi()
    if known is None or known == 0:
        raise HypothesisError("lim n a_n = chi exists and is nonzero", "refuted")
    if chi is None:
        chi = known
    if not math.isclose(known, chi, rel_tol=1e-12):
        raise HypothesisError(f"lim n a_n = {chi} (coefficients give {known})", "refuted")
    _gate(assumptions, f"lim n a_n = {chi!r} nonzero", "certified", strict)
    if not (a.closed_form and s.closed_form):
        raise HypothesisError("closed-form coefficients and weights for the set rules")

    S = diagonal_set(a)
    A1 = _a1_set(a, s, chi)
    A2 = _a2_set(a, s, chi)
    gold = {
        "I3": exactly(EMPTY),
        "II3": exactly(EMPTY),
        "III3": exactly(A1),
        "III1": SetClaim("contains", (A2,)),
        "III2": SetClaim("subset_of", (SymbolicSet("difference", parts=(S, A1)),)),
    }
    if s.decreasing:
        assumptions.append(("weight decreasing", "certified"))
        gold["II2"] = SetClaim("contains", (ZERO,))
    return SpectralReport(
        operator=operator_to_dict(op),
        goldberg=gold,
        ap_spectrum=SetClaim("between", ("spectrum \\ (A2 | S)", "spectrum \\ A2")),
        defect_spectrum=SetClaim("contains", ("spectrum \\ A1",)),
        compression_spectrum=exactly(SymbolicSet("union", parts=(A2, S))),
        named_sets={"S": S, "A1": A1, "A2": A2},
        assumptions=assumptions,
    )
