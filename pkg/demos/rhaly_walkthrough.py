"""Rhaly operator with harmonic coefficients on c0 weighted by 2^-n."""
import numpy as np

from specband import (
    CoeffSpec,
    OperatorSpec,
    WeightSpec,
    eigenvector_rhaly,
    fine_spectrum_report,
    kummer_certificate,
    operator_verdicts,
    truncation_sweep,
)
from specband.finsec import eigen_residual

a = CoeffSpec.harmonic()
s = WeightSpec.geometric(0.5)
op = OperatorSpec.rhaly(a, s)

# boundedness and compactness
verdicts = operator_verdicts(op)
print("bounded:", verdicts.bounded.decision, "| compact:", verdicts.compact.decision)

# eigenvector for 1/2 grows like n, but s_n x_n still tends to zero
ev = eigenvector_rhaly(a, 2, 300)
x = ev.x
print("x_1..x_5 =", x.values[:5])
print("residual at N=300:", eigen_residual(op, 0.5, x, 300, s))

# the Kummer statistic keeps growing over the window
cert = kummer_certificate(a, s, x, 101)
print("kummer verdict:", cert.verdict, "last value:", cert.statistic[-1])

print(fine_spectrum_report(op, verdicts).to_json())

# finite sections: sigma_min at 0 shrinks with N
for rec in truncation_sweep(op, [100, 200, 400, 800], [0]):
    print(f"N={rec.N:4d}  sigma_min={rec.sigma_min_at[0j]:.3e}")

print("diagonal of the 10x10 section:", np.round(op.diagonal(10), 3))
