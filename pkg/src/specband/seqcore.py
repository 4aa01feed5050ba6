"""Weight and coefficient sequences with closed-form fast paths.

All indices are 1-based: ``weight_value(w, 1)`` is the first weight.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

REPEAT_LAST = "repeat_last"
GEOMETRIC_TAIL = "geometric"
TAIL_RULES = (REPEAT_LAST, GEOMETRIC_TAIL)

_LOG_FLOAT_MAX = math.log(np.finfo(float).max)
_LOG_FLOAT_TINY = math.log(np.finfo(float).smallest_subnormal)


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class WeightUnderflow(ArithmeticError):
    """The exact value is positive but below the smallest float64."""


def _check_index(n):
    if int(n) != n or n < 1:
        raise DomainError(f"index must be an integer >= 1, got {n!r}")
    return int(n)


def _check_tail(values, tail, tail_ratio):
    if len(values) == 0:
        raise DomainError("tabulated sequence needs at least one value")
    if tail not in TAIL_RULES:
        raise DomainError(f"unknown tail rule {tail!r}; expected one of {TAIL_RULES}")
    if tail == GEOMETRIC_TAIL:
        if tail_ratio is None or not 0 < tail_ratio < 1:
            raise DomainError("geometric tail needs a tail_ratio in (0, 1)")
    elif tail_ratio is not None:
        raise DomainError("tail_ratio only applies to the geometric tail rule")


@dataclass(frozen=True)
class Asymptotic:
    """Leading-order shape ``const * n**poly * geo**n * exp(exp_coef * n**(1/exp_root))``.

    Used by the symbolic limit and series rules.  ``exp_root`` is 0 when the
    stretched-exponential factor is absent.
    """

    const: float = 1.0
    poly: float = 0.0
    geo: float = 1.0
    exp_coef: float = 0.0
    exp_root: int = 0

    def __mul__(self, other: "Asymptotic") -> "Asymptotic":
        if self.exp_root and other.exp_root and self.exp_root != other.exp_root:
            raise DomainError("cannot combine stretched exponentials of different roots")
        root = self.exp_root or other.exp_root
        coef = self.exp_coef + other.exp_coef
        return Asymptotic(
            self.const * other.const,
            self.poly + other.poly,
            self.geo * other.geo,
            coef,
            root if coef != 0 else 0,
        )

    def reciprocal(self) -> "Asymptotic":
        return Asymptotic(1.0 / self.const, -self.poly, 1.0 / self.geo, -self.exp_coef, self.exp_root)

    def times_power(self, e: float) -> "Asymptotic":
        return Asymptotic(self.const, self.poly + e, self.geo, self.exp_coef, self.exp_root)

    def limit(self) -> str:
        """'zero', 'finite' (nonzero constant) or 'infinite' for the magnitude."""
        if self.geo != 1.0:
            return "zero" if self.geo < 1.0 else "infinite"
        if self.exp_coef != 0.0:
            return "zero" if self.exp_coef < 0 else "infinite"
        if self.poly != 0.0:
            return "zero" if self.poly < 0 else "infinite"
        return "finite"

    def series_converges(self) -> bool:
        if self.geo != 1.0:
            return self.geo < 1.0
        if self.exp_coef != 0.0:
            return self.exp_coef < 0
        return self.poly < -1.0


@dataclass(frozen=True)
class WeightSpec:
    """A strictly positive bounded weight sequence ``s_n``.

    Build one with the classmethods; ``kind`` is one of ``geometric``,
    ``exp_power``, ``power_decay``, ``constant``, ``tabulated``.
    """

    kind: str
    ratio: float | None = None
    alpha: int | None = None
    p: float | None = None
    c: float | None = None
    values: tuple[float, ...] | None = None
    tail: str | None = None
    tail_ratio: float | None = None

    def __post_init__(self):
        k = self.kind
        if k == "geometric":
            if self.ratio is None or not 0 < self.ratio < 1:
                raise DomainError("geometric weight needs ratio in (0, 1)")
        elif k == "exp_power":
            if self.alpha is None or int(self.alpha) != self.alpha or self.alpha < 2:
                raise DomainError("exp_power weight needs an integer alpha >= 2")
            object.__setattr__(self, "alpha", int(self.alpha))
        elif k == "power_decay":
            if self.p is None or not self.p > 0:
                raise DomainError("power_decay weight needs p > 0")
        elif k == "constant":
            if self.c is None or not (self.c > 0 and math.isfinite(self.c)):
                raise DomainError("constant weight needs c > 0")
        elif k == "tabulated":
            vals = tuple(float(v) for v in (self.values or ()))
            object.__setattr__(self, "values", vals)
            _check_tail(vals, self.tail, self.tail_ratio)
            if not all(v > 0 and math.isfinite(v) for v in vals):
                raise DomainError("tabulated weights must be strictly positive and finite")
        else:
            raise DomainError(f"unknown weight kind {k!r}")

    @classmethod
    def geometric(cls, ratio):
        return cls("geometric", ratio=float(ratio))

    @classmethod
    def exp_power(cls, alpha):
        return cls("exp_power", alpha=alpha)

    @classmethod
    def power_decay(cls, p):
        return cls("power_decay", p=float(p))

    @classmethod
    def constant(cls, c=1.0):
        return cls("constant", c=float(c))

    @classmethod
    def tabulated(cls, values, tail=REPEAT_LAST, tail_ratio=None):
        return cls("tabulated", values=tuple(values), tail=tail, tail_ratio=tail_ratio)

    @property
    def closed_form(self) -> bool:
        return self.kind != "tabulated"

    @property
    def decreasing(self) -> bool:
        """Non-strictly decreasing for every index."""
        if self.kind != "tabulated":
            return True
        v = self.values
        return all(v[i + 1] <= v[i] for i in range(len(v) - 1))

    @property
    def bound(self) -> float:
        """``sup_n s_n``."""
        if self.kind == "geometric":
            return self.ratio
        if self.kind == "exp_power":
            return math.exp(-1.0)
        if self.kind == "power_decay":
            return 1.0
        if self.kind == "constant":
            return self.c
        return max(self.values)

    def asymptotic(self) -> Asymptotic:
        if self.kind == "geometric":
            return Asymptotic(geo=self.ratio)
        if self.kind == "exp_power":
            return Asymptotic(exp_coef=-1.0, exp_root=self.alpha)
        if self.kind == "power_decay":
            return Asymptotic(poly=-self.p)
        if self.kind == "constant":
            return Asymptotic(const=self.c)
        if self.tail == REPEAT_LAST:
            return Asymptotic(const=self.values[-1])
        return Asymptotic(geo=self.tail_ratio)


@dataclass(frozen=True)
class CoeffSpec:
    """Nonzero real diagonal coefficients ``a_n`` of a Rhaly matrix."""

    kind: str
    p: float | None = None
    ratio: float | None = None
    c: float | None = None
    values: tuple[float, ...] | None = None
    tail: str | None = None
    tail_ratio: float | None = None

    def __post_init__(self):
        k = self.kind
        if k == "harmonic":
            pass
        elif k == "power_decay":
            if self.p is None or not self.p > 0:
                raise DomainError("power_decay coefficients need p > 0")
        elif k == "geometric":
            if self.ratio is None or not 0 < self.ratio < 1:
                raise DomainError("geometric coefficients need ratio in (0, 1)")
        elif k == "constant":
            if self.c is None or self.c == 0 or not math.isfinite(self.c):
                raise DomainError("constant coefficients need c != 0")
        elif k == "tabulated":
            vals = tuple(float(v) for v in (self.values or ()))
            object.__setattr__(self, "values", vals)
            _check_tail(vals, self.tail, self.tail_ratio)
            if not all(v != 0 and math.isfinite(v) for v in vals):
                raise DomainError("tabulated coefficients must be nonzero and finite")
        else:
            raise DomainError(f"unknown coefficient kind {k!r}")

    @classmethod
    def harmonic(cls):
        return cls("harmonic")

    @classmethod
    def power_decay(cls, p):
        return cls("power_decay", p=float(p))

    @classmethod
    def geometric(cls, ratio):
        return cls("geometric", ratio=float(ratio))

    @classmethod
    def constant(cls, c):
        return cls("constant", c=float(c))

    @classmethod
    def tabulated(cls, values, tail=REPEAT_LAST, tail_ratio=None):
        return cls("tabulated", values=tuple(values), tail=tail, tail_ratio=tail_ratio)

    @property
    def closed_form(self) -> bool:
        return self.kind != "tabulated"

    @property
    def distinct(self) -> bool:
        """Whether all ``a_n`` are pairwise distinct."""
        if self.kind in ("harmonic", "power_decay", "geometric"):
            return True
        if self.kind == "constant":
            return False
        if self.tail == REPEAT_LAST:
            return False
        vals = self.values
        if len(set(vals)) != len(vals):
            return False
        # the tail a_L * q**j shrinks monotonically; only a bounded stretch can hit the list
        last, q = vals[-1], self.tail_ratio
        floor = min(abs(v) for v in vals)
        listed = set(vals[:-1])
        j, term = 1, last * q
        while abs(term) >= floor * (1 - 1e-15):
            if term in listed:
                return False
            j += 1
            term = last * q**j
        return True

    def asymptotic(self) -> Asymptotic:
        if self.kind == "harmonic":
            return Asymptotic(poly=-1.0)
        if self.kind == "power_decay":
            return Asymptotic(poly=-self.p)
        if self.kind == "geometric":
            return Asymptotic(geo=self.ratio)
        if self.kind == "constant":
            return Asymptotic(const=abs(self.c))
        if self.tail == REPEAT_LAST:
            return Asymptotic(const=abs(self.values[-1]))
        return Asymptotic(const=abs(self.values[-1]), geo=self.tail_ratio)

    @property
    def bounded(self) -> bool:
        # every kind here has a bounded tail
        return True

    @property
    def null(self) -> bool:
        return self.asymptotic().limit() == "zero"

    def chi(self) -> float | None:
        """``lim n a_n`` when it exists as a finite number, else None."""
        if self.kind == "harmonic":
            return 1.0
        if self.kind == "power_decay" and self.p == 1.0:
            return 1.0
        if self.asymptotic().times_power(1.0).limit() == "zero":
            return 0.0
        return None


@dataclass(frozen=True)
class SeqWindow:
    """A contiguous run of sequence values starting at 1-based index ``start``."""

    start: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_index(self.start)
        vals = np.asarray(self.values)
        if vals.ndim != 1 or vals.size < 1:
            raise DomainError("a window needs at least one value")
        object.__setattr__(self, "values", vals)

    @property
    def stop(self) -> int:
        """Last covered index (inclusive)."""
        return self.start + len(self.values) - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.stop + 1)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        """Value at 1-based index ``n``."""
        if not self.start <= n <= self.stop:
            raise IndexError(f"index {n} outside window {self.start}..{self.stop}")
        return self.values[n - self.start]

    def prefix(self, N: int) -> np.ndarray:
        """Values for indices 1..N, zero-filled before ``start``."""
        if self.stop < N:
            raise DomainError(f"window ends at {self.stop}, need {N}")
        out = np.zeros(N, dtype=self.values.dtype)
        lo = self.start - 1
        if lo < N:
            out[lo:] = self.values[: N - lo]
        return out


_FIELDS = {
    "geometric": ("ratio",),
    "exp_power": ("alpha",),
    "power_decay": ("p",),
    "constant": ("c",),
    "harmonic": (),
    "tabulated": ("values", "tail", "tail_ratio"),
}


def spec_to_dict(spec) -> dict:
    """Canonical JSON-ready form of a WeightSpec or CoeffSpec."""
    d = {"kind": spec.kind}
    for name in _FIELDS[spec.kind]:
        v = getattr(spec, name)
        if name == "values":
            v = [float(x) for x in v]
        if name == "tail_ratio" and v is None:
            continue
        d[name] = v
    return d


def spec_from_dict(cls, d: dict):
    """Inverse of spec_to_dict; unknown keys raise DomainError."""
    if not isinstance(d, dict) or "kind" not in d:
        raise DomainError(f"expected an object with a 'kind' key, got {d!r}")
    kind = d["kind"]
    if kind not in _FIELDS or (cls is WeightSpec and kind == "harmonic"):
        raise DomainError(f"unknown {cls.__name__} kind {kind!r}")
    allowed = set(_FIELDS[kind]) | {"kind"}
    extra = set(d) - allowed
    if extra:
        raise DomainError(f"unknown keys for {kind}: {sorted(extra)}")
    kwargs = {k: v for k, v in d.items() if k != "kind"}
    if kind == "tabulated":
        kwargs.setdefault("tail", REPEAT_LAST)
        kwargs["values"] = tuple(kwargs.get("values", ()))
    try:
        return cls(kind, **kwargs)
    except TypeError as exc:
        raise DomainError(str(exc)) from None


# ---------------------------------------------------------------- evaluation


def log_weights(w: WeightSpec, n) -> np.ndarray:
    """``log s_n`` for an array of indices; never under- or overflows."""
    n = np.asarray(n, dtype=float)
    if w.kind == "geometric":
        return n * math.log(w.ratio)
    if w.kind == "exp_power":
        return -(n ** (1.0 / w.alpha))
    if w.kind == "power_decay":
        return -w.p * np.log(n)
    if w.kind == "constant":
        return np.full(n.shape, math.log(w.c))
    vals = np.log(np.asarray(w.values))
    L = len(vals)
    idx = n.astype(int)
    out = np.empty(n.shape)
    inside = idx <= L
    out[inside] = vals[idx[inside] - 1]
    if w.tail == REPEAT_LAST:
        out[~inside] = vals[-1]
    else:
        out[~inside] = vals[-1] + (idx[~inside] - L) * math.log(w.tail_ratio)
    return out


def log_weight(w: WeightSpec, n: int) -> float:
    n = _check_index(n)
    return float(log_weights(w, np.array([n]))[0])


def weight_value(w: WeightSpec, n: int) -> float:
    """``s_n``.  Raises WeightUnderflow when the value is below float64 range."""
    n = _check_index(n)
    if w.kind == "geometric":
        val = w.ratio**n
    elif w.kind == "constant":
        val = w.c
    elif w.kind == "power_decay":
        val = float(n) ** (-w.p)
    elif w.kind == "tabulated" and n <= len(w.values):
        val = w.values[n - 1]
    else:
        val = math.exp(log_weight(w, n))
    if val == 0.0:
        raise WeightUnderflow(f"{w.kind} weight at n={n} is below float64 range")
    return val


def weight_values(w: WeightSpec, start: int, stop: int) -> np.ndarray:
    """``s_n`` for ``start <= n <= stop``; underflowed entries come back as 0."""
    n = np.arange(_check_index(start), _check_index(stop) + 1)
    if w.kind == "tabulated":
        out = np.exp(log_weights(w, n))
        inside = n <= len(w.values)
        out[inside] = np.asarray(w.values)[n[inside] - 1]
        return out
    if w.kind == "constant":
        return np.full(n.shape, w.c)
    if w.kind == "geometric":
        return w.ratio ** n.astype(float)
    if w.kind == "power_decay":
        return n.astype(float) ** (-w.p)
    return np.exp(log_weights(w, n))


def log_weight_ratios(w: WeightSpec, start: int, stop: int) -> np.ndarray:
    """``log(s_{n+1}/s_n)`` for ``start <= n <= stop``, computed without cancellation."""
    n = np.arange(_check_index(start), _check_index(stop) + 1, dtype=float)
    if w.kind == "geometric":
        return np.full(n.shape, math.log(w.ratio))
    if w.kind == "constant":
        return np.zeros(n.shape)
    if w.kind == "power_decay":
        return -w.p * np.log1p(1.0 / n)
    if w.kind == "exp_power":
        # (n+1)^(1/a) - n^(1/a) = n^(1/a) * expm1(log1p(1/n)/a)
        return -(n ** (1.0 / w.alpha)) * np.expm1(np.log1p(1.0 / n) / w.alpha)
    lw = log_weights(w, np.arange(int(n[0]), int(n[-1]) + 2))
    return np.diff(lw)


def coeff_values(a: CoeffSpec, start: int, stop: int) -> np.ndarray:
    """``a_n`` for ``start <= n <= stop``."""
    n = np.arange(_check_index(start), _check_index(stop) + 1)
    if a.kind == "harmonic":
        return 1.0 / n
    if a.kind == "power_decay":
        return n.astype(float) ** (-a.p)
    if a.kind == "geometric":
        return a.ratio ** n.astype(float)
    if a.kind == "constant":
        return np.full(n.shape, a.c)
    vals = np.asarray(a.values)
    L = len(vals)
    out = np.empty(n.shape)
    inside = n <= L
    out[inside] = vals[n[inside] - 1]
    if a.tail == REPEAT_LAST:
        out[~inside] = vals[-1]
    else:
        out[~inside] = vals[-1] * a.tail_ratio ** (n[~inside] - L).astype(float)
    if np.any(out == 0):
        raise WeightUnderflow("coefficient underflowed to zero")
    return out


def coeff_value(a: CoeffSpec, n: int) -> float:
    n = _check_index(n)
    return float(coeff_values(a, n, n)[0])


MEMBER_REL_TOL = 1e-9


def _close(v: float, x: float, tol: float) -> bool:
    # absolute tol, plus a relative guard so that distinct a_m near 0 stay distinct
    d = abs(v - x)
    return d <= tol and d <= MEMBER_REL_TOL * abs(v)


def coeff_index_of(a: CoeffSpec, lam, tol: float = 1e-12, scan: int = 10_000) -> int | None:
    """Index ``m`` with ``a_m == lam`` within ``tol``, or None.

    Scans the first ``scan`` coefficients, then inverts the closed form so that
    members of S accumulating at 0 are still found.
    """
    lam = complex(lam)
    if abs(lam.imag) > tol:
        return None
    x = lam.real
    if x == 0:
        return None
    vals = coeff_values(a, 1, scan)
    dist = np.abs(vals - x)
    hits = np.flatnonzero((dist <= tol) & (dist <= MEMBER_REL_TOL * np.abs(vals)))
    if hits.size:
        return int(hits[np.argmin(dist[hits])]) + 1

    def check(m):
        if m is None or m <= scan or m > 2**53:
            return None
        m = int(m)
        return m if _close(coeff_value(a, m), x, tol) else None

    if a.kind == "harmonic":
        return check(round(1.0 / x)) if x > 0 else None
    if a.kind == "power_decay":
        return check(round(x ** (-1.0 / a.p))) if x > 0 else None
    if a.kind == "geometric":
        return check(round(math.log(x) / math.log(a.ratio))) if x > 0 else None
    if a.kind == "tabulated" and a.tail == GEOMETRIC_TAIL:
        last = a.values[-1]
        r = x / last
        if r <= 0:
            return None
        return check(len(a.values) + round(math.log(r) / math.log(a.tail_ratio)))
    return None


# ---------------------------------------------------------------- summation


class CompensatedSum:
    """Running Neumaier-compensated sum."""

    __slots__ = ("total", "comp")

    def __init__(self, start: float = 0.0):
        self.total = float(start)
        self.comp = 0.0

    def add(self, x: float) -> None:
        t = self.total + x
        if abs(self.total) >= abs(x):
            self.comp += (self.total - t) + x
        else:
            self.comp += (x - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.comp


def compensated_cumsum(x) -> np.ndarray:
    acc = CompensatedSum()
    out = np.empty(len(x))
    for i, v in enumerate(x):
        acc.add(float(v))
        out[i] = acc.value
    return out


class PartialSum(NamedTuple):
    """``sum_{k<=n} 1/s_k`` with its logarithm; ``saturated`` when ``value`` overflowed."""

    value: float
    log_value: float
    saturated: bool


def _partial(log_value: float) -> PartialSum:
    if log_value >= _LOG_FLOAT_MAX:
        return PartialSum(math.inf, log_value, True)
    return PartialSum(math.exp(log_value), log_value, False)


def reciprocal_partial_sum(w: WeightSpec, n: int) -> PartialSum:
    """``sum_{k=1}^n 1/s_k``.

    Closed form for geometric and constant weights, compensated summation
    (scaled by the largest term) otherwise.
    """
    n = _check_index(n)
    if w.kind == "constant":
        return PartialSum(n / w.c, math.log(n / w.c), False)
    if w.kind == "geometric":
        # sum eta^-k = eta^-n * (1 - eta^n) / (1 - eta)
        eta = w.ratio
        log_val = -n * math.log(eta) + math.log(-math.expm1(n * math.log(eta))) - math.log1p(-eta)
        if log_val < _LOG_FLOAT_MAX:
            inv = 1.0 / eta
            direct = (inv**n - 1.0) * inv / (inv - 1.0)
            if math.isfinite(direct):
                return PartialSum(direct, math.log(direct), False)
        return _partial(log_val)
    neg = -log_weights(w, np.arange(1, n + 1))
    top = float(neg.max())
    scaled = math.fsum(np.exp(neg - top))
    return _partial(top + math.log(scaled))


def weighted_reciprocal_sums(w: WeightSpec, N: int) -> np.ndarray:
    """``g_n = s_n * sum_{k<=n} 1/s_k`` for n = 1..N.

    Uses ``g_{n+1} = (s_{n+1}/s_n) g_n + 1``; both factors stay O(1) for
    decreasing weights so nothing overflows.
    """
    N = _check_index(N)
    ratios = np.exp(log_weight_ratios(w, 1, N)) if N > 1 else np.empty(0)
    g = np.empty(N)
    g[0] = 1.0
    for i in range(1, N):
        g[i] = ratios[i - 1] * g[i - 1] + 1.0
    return g


# ---------------------------------------------------------------- estimates


class RatioEstimate(NamedTuple):
    estimate: float
    certified: bool


def ratio_limsup_estimate(w: WeightSpec, window: tuple[int, int] = (1, 512)) -> RatioEstimate:
    """``limsup s_{n+1}/s_n``: exact for closed-form kinds, windowed max otherwise.

    ``window`` is an inclusive index range of at least 8 indices.
    """
    lo, hi = _check_index(window[0]), _check_index(window[1])
    if hi - lo + 1 < 8:
        raise DomainError("ratio window needs at least 8 indices")
    if w.kind == "geometric":
        return RatioEstimate(w.ratio, True)
    if w.kind in ("exp_power", "power_decay", "constant"):
        return RatioEstimate(1.0, True)
    ratios = np.exp(log_weight_ratios(w, lo, hi))
    return RatioEstimate(float(ratios.max()), False)


def weighted_norm(x: SeqWindow, w: WeightSpec, tail_bound: float = 0.0) -> float:
    """``max(sup_k |x_k| s_k over the window, tail_bound)``."""
    if tail_bound < 0:
        raise DomainError("tail_bound must be nonnegative")
    s = weight_values(w, x.start, x.stop)
    return max(float(np.max(np.abs(x.values) * s)), float(tail_bound))


def as_window(values: Sequence[float], start: int = 1) -> SeqWindow:
    return SeqWindow(start, np.asarray(values, dtype=float))
