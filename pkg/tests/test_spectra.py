import math

import numpy as np
import pytest

from specband.criteria import operator_verdicts, rhaly_verdict
from specband.finsec import eigen_residual
from specband.operators import OperatorSpec, apply_adjoint_truncated, apply_truncated
from specband.seqcore import CoeffSpec, DomainError, SeqWindow, WeightSpec, coeff_values
from specband.spectra import (
    GOLDBERG_LABELS,
    HypothesisError,
    SignedLogValue,
    SymbolicSet,
    a1_a2_membership,
    adjoint_eigenvector_rhaly,
    diagonal_set,
    eigenvector_cesaro,
    eigenvector_rhaly,
    fine_spectrum_report,
    goldberg_noncompact_report,
    kummer_certificate,
    point_spectrum,
    reciprocal_integers,
)

H = CoeffSpec.harmonic()
ONE = WeightSpec.constant()
G = WeightSpec.geometric(0.5)


def report_for(op, strict=True):
    return fine_spectrum_report(op, operator_verdicts(op), strict=strict)


# ---- sets


def test_symbolic_set_membership():
    S = diagonal_set(H)
    assert 0.5 in S and 1 / 20000 in S and 0.37 not in S and 0 not in S
    assert 0 in diagonal_set(H, with_zero=True)
    tiny = diagonal_set(CoeffSpec.geometric(0.5))
    assert 0.5**40 in tiny and 0.5**39 * 1.5 not in tiny
    R = reciprocal_integers()
    assert 1 / 7 in R and 0.3 not in R and (0.5 + 1e-3j) not in R
    assert S.nth(4) == 0.25 and R.nth(4) == 0.25
    u = SymbolicSet("union", parts=(SymbolicSet("finite", values=(2.0,)), S))
    assert 2.0 in u and 0.5 in u and 3.0 not in u
    d = SymbolicSet("difference", parts=(S, SymbolicSet("finite", values=(0.5,))))
    assert 0.5 not in d and 1 / 3 in d
    re = SymbolicSet("reinverse", coeff=H, relation=">", threshold=1.0)
    assert (0.4 + 0.1j) in re and 2 not in re and 0.5 not in re and 0 not in re


def test_signed_log_products():
    a, b = SignedLogValue.of(-3.0), SignedLogValue.of(0.5)
    assert float(a * b) == pytest.approx(-1.5)
    assert float(a / b) == pytest.approx(-6.0)
    assert float(SignedLogValue.of(0.0) * a) == 0.0
    assert (SignedLogValue.of(0.0) * a).sign == 0
    big = SignedLogValue(1, 800.0) * SignedLogValue(1, -790.0)
    assert float(big) == pytest.approx(math.exp(10))
    with pytest.raises(ZeroDivisionError):
        a / SignedLogValue.of(0.0)


# ---- point spectrum


def test_point_spectrum_examples():
    op = OperatorSpec.rhaly(H, G)
    assert point_spectrum(op, operator_verdicts(op).compact) == diagonal_set(H)
    assert point_spectrum(OperatorSpec.gen_cesaro(0.5, G, G)) == reciprocal_integers()
    rep = OperatorSpec.rhaly(CoeffSpec.tabulated([1.0, 0.5, 0.5], "geometric", 0.5), G)
    with pytest.raises(HypothesisError) as exc:
        point_spectrum(rep, operator_verdicts(rep).compact)
    assert "distinct" in exc.value.hypothesis


# ---- eigenvectors


def test_eigenvector_rhaly_telescopes():
    np.testing.assert_allclose(eigenvector_rhaly(H, 1, 100).x.values, 1.0, rtol=1e-12)
    x = eigenvector_rhaly(H, 2, 300).x.values
    n = np.arange(1, 301)
    assert x[0] == 0.0
    np.testing.assert_allclose(x[1:], n[1:] - 1, rtol=1e-12)


def test_eigenvector_rhaly_geometric_coefficients():
    rho = 0.6
    a = CoeffSpec.geometric(rho)
    ev = eigenvector_rhaly(a, 1, 40)
    # x_2 = lam a_2 / (a_1 (lam - a_2)) with lam = a_1
    assert ev.x[2] == pytest.approx(rho * rho**2 / (rho * (rho - rho**2)), rel=1e-14)
    op = OperatorSpec.rhaly(a)
    y = apply_truncated(op, ev.x, 40).values
    np.testing.assert_allclose(y, rho * ev.x.values, rtol=1e-12, atol=1e-300)


def test_eigenvector_rhaly_overflow_is_flagged():
    # x_n = rho^(n-1) / prod_{k<n} (1 - rho^k) exceeds 1e308 for rho = 0.999
    ev = eigenvector_rhaly(CoeffSpec.geometric(0.999), 1, 3000)
    assert ev.overflow
    assert np.all(np.isfinite(ev.log_abs[ev.sign != 0]))
    rho = 0.999
    k = np.arange(1, 100)
    oracle = 99 * np.log(rho) - np.sum(np.log1p(-(rho**k)))  # log x_100
    assert ev.log_abs[99] == pytest.approx(oracle, rel=1e-10)


def test_eigenvector_rhaly_coefficient_underflow():
    with pytest.raises(DomainError, match="underflows"):
        eigenvector_rhaly(CoeffSpec.geometric(0.5), 1, 2000)


def test_eigenvector_rhaly_degenerate():
    a = CoeffSpec.tabulated([1.0, 0.5, 0.25, 0.5], "geometric", 0.5)
    with pytest.raises(DomainError, match="j=4"):
        eigenvector_rhaly(a, 2, 10)


@pytest.mark.parametrize("m", [1, 2, 3, 5, 10])
def test_eigen_residuals(m):
    N = 300
    for a, s in [(H, G), (CoeffSpec.power_decay(2), WeightSpec.exp_power(2)), (CoeffSpec.geometric(0.8), ONE)]:
        ev = eigenvector_rhaly(a, m, N)
        if ev.overflow or ev.underflow:
            continue
        res = eigen_residual(OperatorSpec.rhaly(a, s), ev.eigenvalue, ev.x, N, s)
        assert res <= 1e-10
    for t in (0.3, 0.5, 0.9):
        ev = eigenvector_cesaro(t, m, N)
        res = eigen_residual(OperatorSpec.gen_cesaro(t, G, G), 1 / m, ev.x, N, G)
        assert res <= 1e-10


def test_eigenvector_cesaro_closed_forms():
    n = np.arange(1, 61)
    np.testing.assert_allclose(eigenvector_cesaro(0.5, 1, 60).x.values, 0.5 ** (n - 1), rtol=1e-12)
    x2 = eigenvector_cesaro(0.5, 2, 60).x.values
    assert x2[0] == 0
    np.testing.assert_allclose(x2[1:], (n[1:] - 1) * 0.5 ** (n[1:] - 2.0), rtol=1e-12)
    assert eigenvector_cesaro(0.5, 3, 10).x[5] == pytest.approx(1.5, rel=1e-15)


@pytest.mark.parametrize("m", [1, 2, 4, 7])
@pytest.mark.parametrize("t", [0.2, 0.5, 0.95])
def test_rising_factorial_identity(m, t):
    x = eigenvector_cesaro(t, m, m + 30).x
    for n in range(31):
        rising = math.prod(range(m, m + n))
        assert x[m + n] * math.factorial(n) == pytest.approx(rising * t**n, rel=1e-12)


def test_eigenvector_cesaro_domain():
    with pytest.raises(DomainError):
        eigenvector_cesaro(0.0, 1, 5)
    with pytest.raises(DomainError):
        eigenvector_cesaro(0.5, 6, 5)


@pytest.mark.parametrize("k", [1, 2, 3, 7])
def test_adjoint_eigenvector(k):
    ev = adjoint_eigenvector_rhaly(H, k, 20)
    x = ev.x.values
    assert np.all(x[k:] == 0.0)
    y = apply_adjoint_truncated(OperatorSpec.rhaly(H), ev.x, 20).values
    assert np.max(np.abs(y - x / k)) <= 1e-14


def test_adjoint_eigenvector_examples():
    assert adjoint_eigenvector_rhaly(H, 1, 4).x.values.tolist() == [1, 0, 0, 0]
    assert adjoint_eigenvector_rhaly(H, 2, 4).x.values.tolist() == [1, -1, 0, 0]
    assert adjoint_eigenvector_rhaly(H, 3, 5).x.values.tolist() == [1, -2, 1, 0, 0]


# ---- Kummer


def test_kummer_harmonic_diverges():
    ev = eigenvector_rhaly(H, 2, 100)
    cert = kummer_certificate(H, G, ev.x, 100)
    assert cert.verdict == "diverging"
    idx = cert.indices
    assert cert.statistic[idx == 10][0] > 0
    assert cert.statistic[idx == 10][0] < cert.statistic[idx == 99][0]
    assert np.all(np.isfinite(cert.statistic))


def test_kummer_q_matches_definition():
    ev = eigenvector_rhaly(H, 2, 30)
    cert = kummer_certificate(H, G, ev.x, 30)
    for n in (2, 5, 29):
        s = lambda k: 0.5**k  # noqa: E731
        q = s(n + 1) / (s(n) ** 2 * (1 / n) ** 2 * sum(1 / s(k) for k in range(1, n + 1)))
        assert cert.q[n - cert.start] == pytest.approx(q, rel=1e-12)


def test_kummer_constant_case_inconclusive():
    x = SeqWindow(1, np.ones(60))
    cert = kummer_certificate(CoeffSpec.constant(1.0), ONE, x, 60)
    assert cert.verdict == "inconclusive"


def test_kummer_scale_invariance():
    ev = eigenvector_rhaly(H, 3, 80)
    base = kummer_certificate(H, G, ev.x, 80).statistic
    scaled = kummer_certificate(H, G, SeqWindow(1, 7.5 * ev.x.values), 80).statistic
    np.testing.assert_allclose(scaled, base, rtol=1e-12)
    op = OperatorSpec.rhaly(H, G)
    r1 = eigen_residual(op, 1 / 3, ev.x, 80, G)
    r2 = eigen_residual(op, 1 / 3, SeqWindow(1, 7.5 * ev.x.values), 80, G)
    assert r2 == pytest.approx(r1, rel=1e-12, abs=1e-16)


def test_kummer_zero_inside_window():
    x = SeqWindow(1, np.array([1.0, 2.0, 0.0, 1.0, 1.0]))
    with pytest.raises(DomainError, match="n=2"):
        kummer_certificate(H, G, x, 5)


# ---- fine spectrum


def test_fine_spectrum_compact_rhaly():
    rep = report_for(OperatorSpec.rhaly(H, G))
    S, S0 = diagonal_set(H), diagonal_set(H, with_zero=True)
    assert rep.spectrum.set == S0 and rep.point_spectrum.set == S
    assert rep.continuous_spectrum.set.values == (0.0,)
    assert rep.residual_spectrum.set.kind == "empty"
    assert rep.goldberg["III3"].set == S
    assert rep.goldberg["II2"].set.values == (0.0,)
    for label in set(GOLDBERG_LABELS) - {"III3", "II2"}:
        assert rep.goldberg[label].set.kind == "empty"
    assert rep.ap_spectrum.set == S0 and rep.defect_spectrum.set == S0
    assert rep.compression_spectrum.set == S
    assert not rep.assumed


def test_fine_spectrum_gen_cesaro():
    rep = report_for(OperatorSpec.gen_cesaro(0.5, G, G))
    assert rep.spectrum.set == reciprocal_integers(with_zero=True)
    assert rep.goldberg["III3"].set == reciprocal_integers()


@pytest.mark.parametrize(
    "op",
    [
        OperatorSpec.rhaly(H, G),
        OperatorSpec.rhaly(CoeffSpec.geometric(0.5), WeightSpec.geometric(0.3)),
        OperatorSpec.gen_cesaro(0.5, G, G),
        OperatorSpec.gen_cesaro(0.5),
    ],
)
def test_partition(op):
    rep = report_for(op)
    diag = op.diagonal(50)
    rng = np.random.default_rng(3)
    samples = list(diag) + [0.0] + list(rng.uniform(1.5, 3, 3) + 1j * rng.uniform(0.1, 1, 3))
    for lam in samples:
        kind = rep.classify(lam)
        in_sigma = rep.spectrum.set.contains(lam)
        assert (kind != "resolvent") == in_sigma
    assert rep.classify(diag[4]) == "point"
    assert rep.classify(0.0) == "continuous"


def test_fine_spectrum_gates():
    # beta window only: compactness is heuristic
    op = OperatorSpec.rhaly(CoeffSpec.power_decay(2), WeightSpec.exp_power(2))
    with pytest.raises(HypothesisError) as exc:
        report_for(op)
    assert exc.value.status == "unverified"
    rep = report_for(op, strict=False)
    assert rep.assumed
    assert ("operator compact on c0(s)", "assumed") in rep.assumptions
    # classical Cesaro on c0 is not compact
    with pytest.raises(HypothesisError) as exc:
        report_for(OperatorSpec.rhaly(H), strict=False)
    assert exc.value.status == "refuted"
    # increasing weight
    inc = OperatorSpec.rhaly(H, WeightSpec.tabulated([0.5, 1.0], "geometric", 0.5))
    with pytest.raises(HypothesisError):
        fine_spectrum_report(inc, operator_verdicts(inc), strict=False)


def test_report_json_is_stable():
    a = report_for(OperatorSpec.rhaly(H, G)).to_json()
    b = report_for(OperatorSpec.rhaly(H, G)).to_json()
    assert a == b
    assert '"marker": "exact"' in a


# ---- A1 / A2


def test_a1_classical_cesaro():
    for m in range(1, 21):
        got = a1_a2_membership(H, ONE, 1.0, 1 / m)
        assert got.in_A1 == "no" and got.in_A2 == "no"
        assert got.alpha == pytest.approx(m, rel=1e-12)


def test_a2_examples():
    got = a1_a2_membership(H, ONE, 1.0, 0.4 + 0.1j)
    assert got.in_A2 == "yes" and got.in_A1 == "no"
    assert abs(got.alpha - 0.4 / 0.17) <= 1e-12
    got = a1_a2_membership(H, ONE, 1.0, 2)
    assert got.in_A2 == "no"
    assert abs(got.alpha - 0.5) <= 1e-12
    with pytest.raises(DomainError):
        a1_a2_membership(H, ONE, 1.0, 0)


def test_a2_symbolic_agrees_with_window():
    rng = np.random.default_rng(11)
    lams = rng.uniform(-1, 3, 20) + 1j * rng.uniform(-1, 1, 20)
    for s in (ONE, WeightSpec.power_decay(0.5)):
        for lam in lams:
            sym = a1_a2_membership(H, s, 1.0, lam, method="symbolic").in_A2
            win = a1_a2_membership(H, s, 1.0, lam, method="windowed").in_A2
            assert win in (sym, "unknown")


def test_a1_symbolic_agrees_with_window():
    s = WeightSpec.power_decay(2.0)  # a_n s_n n^alpha = n^(alpha - 3)
    for m in range(1, 6):
        sym = a1_a2_membership(H, s, 1.0, 1 / m, method="symbolic").in_A1
        win = a1_a2_membership(H, s, 1.0, 1 / m, method="windowed").in_A1
        assert sym == ("yes" if m < 3 else "no")
        assert win in (sym, "unknown")


# ---- Goldberg, non-compact


def test_goldberg_classical_cesaro():
    rep = goldberg_noncompact_report(H, ONE, 1.0)
    assert rep.goldberg["III3"].set.kind == "empty"
    assert rep.goldberg["I3"].exact and rep.goldberg["II3"].exact
    assert not rep.goldberg["III1"].exact and not rep.goldberg["III2"].exact
    assert rep.goldberg["II2"].relation == "contains"
    co = rep.compression_spectrum.set
    # the classical disk |lam - 1/2| < 1/2, plus S
    assert (0.4 + 0.1j) in co and 0.5 in co and 1 in co
    assert 2 not in co and (0.5 + 0.6j) not in co and 0 not in co
    assert rep.ap_spectrum.relation == "between"
    assert rep.to_dict()["ap_spectrum"]["marker"] == "containment"


def test_goldberg_a1_nonempty():
    rep = goldberg_noncompact_report(H, WeightSpec.power_decay(2.0))
    A1 = rep.named_sets["A1"]
    assert 1.0 in A1 and 0.5 in A1 and 1 / 3 not in A1


def test_goldberg_chi_refusals():
    with pytest.raises(HypothesisError):
        goldberg_noncompact_report(CoeffSpec.power_decay(2), ONE)
    with pytest.raises(HypothesisError):
        goldberg_noncompact_report(H, ONE, chi=2.0)
    with pytest.raises(HypothesisError):
        goldberg_noncompact_report(CoeffSpec.power_decay(0.5), ONE)


def test_goldberg_needs_boundedness():
    b = rhaly_verdict(CoeffSpec.power_decay(0.5), ONE).bounded
    with pytest.raises(HypothesisError) as exc:
        goldberg_noncompact_report(H, ONE, 1.0, bounded=b)
    assert exc.value.status == "refuted"
    assert coeff_values(H, 1, 1)[0] == 1.0
