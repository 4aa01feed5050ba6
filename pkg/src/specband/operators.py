"""Rhaly and generalized Cesàro matrices: entries, adjoints, finite sections."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .seqcore import (
    CoeffSpec,
    DomainError,
    SeqWindow,
    WeightSpec,
    coeff_value,
    coeff_values,
    log_weights,
)

DEFAULT_MAX_N = 4096


class ResourceLimitError(RuntimeError):
    """A requested truncation order exceeds the configured cap."""


def max_order() -> int:
    """Truncation cap, overridable through ``SPECBAND_MAX_N``."""
    raw = os.environ.get("SPECBAND_MAX_N")
    return int(raw) if raw else DEFAULT_MAX_N


@dataclass(frozen=True)
class Rhaly:
    a: CoeffSpec


@dataclass(frozen=True)
class GenCesaro:
    t: float

    def __post_init__(self):
        if not 0 <= self.t < 1:
            raise DomainError(f"generalized Cesàro parameter must satisfy 0 <= t < 1, got {self.t}")


@dataclass(frozen=True)
class OperatorSpec:
    """A Rhaly or generalized Cesàro matrix acting ``c0(r) -> c0(s)``."""

    form: Rhaly | GenCesaro
    domain_weight: WeightSpec = field(default_factory=WeightSpec.constant)
    codomain_weight: WeightSpec = field(default_factory=WeightSpec.constant)

    def __post_init__(self):
        if isinstance(self.form, Rhaly) and self.domain_weight != self.codomain_weight:
            raise DomainError("a Rhaly operator acts on a single space c0(s): use r = s")

    @classmethod
    def rhaly(cls, a: CoeffSpec, s: WeightSpec | None = None):
        s = s or WeightSpec.constant()
        return cls(Rhaly(a), s, s)

    @classmethod
    def gen_cesaro(cls, t: float, r: WeightSpec | None = None, s: WeightSpec | None = None):
        r = r or WeightSpec.constant()
        return cls(GenCesaro(float(t)), r, s or r)

    @property
    def is_rhaly(self) -> bool:
        return isinstance(self.form, Rhaly)

    @property
    def same_space(self) -> bool:
        return self.domain_weight == self.codomain_weight

    def diagonal(self, N: int) -> np.ndarray:
        if self.is_rhaly:
            return coeff_values(self.form.a, 1, N)
        return 1.0 / np.arange(1, N + 1)


def _tpow(t: float, e: int) -> float:
    return 1.0 if e == 0 else t**e


def entry(op: OperatorSpec, n: int, k: int) -> float:
    if n < 1 or k < 1:
        raise DomainError("matrix indices start at 1")
    if k > n:
        return 0.0
    if op.is_rhaly:
        return coeff_value(op.form.a, n)
    return _tpow(op.form.t, n - k) / n


def adjoint_entry(op: OperatorSpec, n: int, k: int) -> float:
    return entry(op, k, n)


def apply_truncated(op: OperatorSpec, x: SeqWindow, N: int) -> SeqWindow:
    """``y_n = sum_{k<=n} entry(n, k) x_k`` for n = 1..N via prefix recurrences."""
    if x.start != 1 or x.stop < N:
        raise DomainError(f"window must cover indices 1..{N}")
    xs = x.values[:N]
    if op.is_rhaly:
        y = coeff_values(op.form.a, 1, N) * np.cumsum(xs)
        return SeqWindow(1, y)
    t = op.form.t
    inner = np.empty(N, dtype=np.result_type(xs, float))
    acc = 0.0
    for i in range(N):
        acc = t * acc + xs[i]
        inner[i] = acc
    return SeqWindow(1, inner / np.arange(1, N + 1))


def apply_adjoint_truncated(op: OperatorSpec, x: SeqWindow, N: int) -> SeqWindow:
    """``(A* x)_n = sum_{n<=k<=N} entry(k, n) x_k``; exact for x supported in 1..N."""
    if x.start != 1 or x.stop < N:
        raise DomainError(f"window must cover indices 1..{N}")
    xs = x.values[:N]
    if op.is_rhaly:
        terms = coeff_values(op.form.a, 1, N) * xs
        y = np.array([math.fsum(terms[i:]) for i in range(N)])
        return SeqWindow(1, y)
    t = op.form.t
    terms = xs / np.arange(1, N + 1)
    y = np.empty(N, dtype=np.result_type(xs, float))
    acc = 0.0
    for i in range(N - 1, -1, -1):
        acc = t * acc + terms[i]
        y[i] = acc
    return SeqWindow(1, y)


@dataclass(frozen=True)
class DenseTruncation:
    """Leading ``N x N`` section of a lower-triangular matrix."""

    N: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.entries.setflags(write=False)

    def to_csv(self, path) -> None:
        np.savetxt(Path(path), self.entries, delimiter=",", fmt="%.17g")

    def matvec(self, x) -> np.ndarray:
        return self.entries @ np.asarray(x)


def _check_order(N: int) -> int:
    if int(N) != N or N < 1:
        raise DomainError(f"truncation order must be >= 1, got {N}")
    cap = max_order()
    if N > cap:
        raise ResourceLimitError(f"truncation order {N} exceeds the limit {cap} (SPECBAND_MAX_N)")
    return int(N)


def truncate(op: OperatorSpec, N: int, weighted: bool = False) -> DenseTruncation:
    """Dense finite section.

    With ``weighted=True`` the section of the conjugated matrix
    ``D_s A D_r^{-1}`` is returned instead, i.e. the operator seen on plain c0.
    """
    N = _check_order(N)
    n = np.arange(1, N + 1)
    if op.is_rhaly:
        M = np.tril(np.repeat(coeff_values(op.form.a, 1, N)[:, None], N, axis=1))
    else:
        t = op.form.t
        lag = n[:, None] - n[None, :]
        with np.errstate(divide="ignore"):
            M = np.where(lag >= 0, np.power(t, np.maximum(lag, 0)) / n[:, None], 0.0)
    if weighted:
        ls = log_weights(op.codomain_weight, n)
        lr = log_weights(op.domain_weight, n)
        M = M * np.exp(np.tril(ls[:, None] - lr[None, :]))
        M = np.tril(M)
    return DenseTruncation(N, M)


def conjugated_entry(op: OperatorSpec, n: int, k: int) -> float:
    """Entry of ``T_{r,s} = D_s C_t D_r^{-1}``: ``(s_n/n) t^(n-k) / r_k``."""
    if op.is_rhaly:
        raise DomainError("conjugated_entry is defined for the generalized Cesàro form")
    if k > n:
        return 0.0
    t = op.form.t
    lw = float(log_weights(op.codomain_weight, [n])[0] - log_weights(op.domain_weight, [k])[0])
    if t == 0.0:
        return math.exp(lw) / n if n == k else 0.0
    return math.exp(lw + (n - k) * math.log(t)) / n
