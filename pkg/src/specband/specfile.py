"""JSON operator-spec files: parsing, validation, canonical serialization.

Schema::

    {
      "operator": {
        "form": "rhaly" | "gen_cesaro",
        "coefficients": {...},          # rhaly only, a CoeffSpec object
        "t": 0.5,                        # gen_cesaro only
        "domain_weight": {...},          # WeightSpec objects; default constant 1
        "codomain_weight": {...}
      },
      "analysis": {
        "horizon": 512, "tol": 1e-6, "Ns": [100, 200], "lambdas": [0, [0.4, 0.1]],
        "strict": true, "seed": 20240601, "chi": null
      }
    }

A Rhaly operator given a single weight uses it for both spaces.  Unknown
keys are rejected at every level.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .criteria import DEFAULT_HORIZON, DEFAULT_TOL
from .finsec import DEFAULT_SEED
from .operators import OperatorSpec
from .seqcore import CoeffSpec, DomainError, WeightSpec, spec_from_dict
from .spectra import operator_to_dict


class SpecFileError(ValueError):
    """Malformed or invalid spec file."""


@dataclass(frozen=True)
class Analysis:
    horizon: int = DEFAULT_HORIZON
    tol: float = DEFAULT_TOL
    Ns: tuple[int, ...] = ()
    lambdas: tuple[complex, ...] = (0j,)
    strict: bool = True
    seed: int = DEFAULT_SEED
    chi: float | None = None


@dataclass(frozen=True)
class SpecFile:
    operator: OperatorSpec
    analysis: Analysis = field(default_factory=Analysis)

    def with_overrides(self, **kw) -> "SpecFile":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, analysis=replace(self.analysis, **kw)) if kw else self


_OP_KEYS = {
    "rhaly": {"form", "coefficients", "domain_weight", "codomain_weight"},
    "gen_cesaro": {"form", "t", "domain_weight", "codomain_weight"},
}
_ANALYSIS_KEYS = {"horizon", "tol", "Ns", "lambdas", "strict", "seed", "chi"}


def _reject_unknown(obj: dict, allowed: set, where: str):
    extra = set(obj) - allowed
    if extra:
        raise SpecFileError(f"unknown keys in {where}: {sorted(extra)}")


def _lambda(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(u, (int, float)) for u in v):
        return complex(v[0], v[1])
    raise SpecFileError(f"lambda must be a number or [re, im], got {v!r}")


def parse_operator(d) -> OperatorSpec:
    if not isinstance(d, dict) or d.get("form") not in _OP_KEYS:
        raise SpecFileError("operator.form must be 'rhaly' or 'gen_cesaro'")
    form = d["form"]
    _reject_unknown(d, _OP_KEYS[form], "operator")
    try:
        r = spec_from_dict(WeightSpec, d["domain_weight"]) if "domain_weight" in d else None
        s = spec_from_dict(WeightSpec, d["codomain_weight"]) if "codomain_weight" in d else None
        if form == "rhaly":
            if "coefficients" not in d:
                raise SpecFileError("rhaly operator needs 'coefficients'")
            a = spec_from_dict(CoeffSpec, d["coefficients"])
            if r is not None and s is not None and r != s:
                raise SpecFileError("rhaly operator needs domain_weight == codomain_weight")
            return OperatorSpec.rhaly(a, s or r)
        if "t" not in d or isinstance(d["t"], bool) or not isinstance(d["t"], (int, float)):
            raise SpecFileError("gen_cesaro operator needs a numeric 't'")
        return OperatorSpec.gen_cesaro(float(d["t"]), r, s or r)
    except DomainError as exc:
        raise SpecFileError(str(exc)) from None


def parse_analysis(d) -> Analysis:
    if d is None:
        return Analysis()
    if not isinstance(d, dict):
        raise SpecFileError("analysis must be an object")
    _reject_unknown(d, _ANALYSIS_KEYS, "analysis")
    base = Analysis()
    try:
        return Analysis(
            horizon=int(d.get("horizon", base.horizon)),
            tol=float(d.get("tol", base.tol)),
            Ns=tuple(int(n) for n in d.get("Ns", base.Ns)),
            lambdas=tuple(_lambda(v) for v in d.get("lambdas", [0])),
            strict=bool(d.get("strict", base.strict)),
            seed=int(d.get("seed", base.seed)),
            chi=None if d.get("chi") is None else float(d["chi"]),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecFileError):
            raise
        raise SpecFileError(f"bad analysis value: {exc}") from None


def parse(obj) -> SpecFile:
    if not isinstance(obj, dict):
        raise SpecFileError("spec file must contain a JSON object")
    _reject_unknown(obj, {"operator", "analysis"}, "spec file")
    if "operator" not in obj:
        raise SpecFileError("spec file needs an 'operator'")
    return SpecFile(parse_operator(obj["operator"]), parse_analysis(obj.get("analysis")))


def loads(text: str) -> SpecFile:
    if not text.strip():
        raise SpecFileError("spec file is empty")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse(obj)


def load(path) -> SpecFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def to_dict(spec: SpecFile) -> dict:
    a = spec.analysis
    return {
        "operator": operator_to_dict(spec.operator),
        "analysis": {
            "horizon": a.horizon,
            "tol": a.tol,
            "Ns": list(a.Ns),
            "lambdas": [[z.real, z.imag] for z in a.lambdas],
            "strict": a.strict,
            "seed": a.seed,
            "chi": a.chi,
        },
    }


def dumps(spec: SpecFile) -> str:
    return json.dumps(to_dict(spec), indent=2, sort_keys=True) + "\n"
