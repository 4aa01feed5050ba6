"""Generalized Cesaro operator C_t with t = 1/2 on plain c0."""
import numpy as np

from specband import OperatorSpec, WeightSpec, cesaro_mu, eigenvector_cesaro, finite_rank_error
from specband.criteria import cesaro_verdict
from specband.finsec import measured_rank_distance

t = 0.5
one = WeightSpec.constant()

bounded, compact, norm = cesaro_verdict(t, one, one)
print("bounded:", bounded.decision, "| compact:", compact.decision, "| norm:", norm.value)

# mu_n = (1 - t^n) / (n (1 - t)) drives both verdicts
for n in (1, 2, 10, 100):
    print(f"mu_{n} = {cesaro_mu(t, one, one, n):.6f}")

# eigenvectors for 1/m are binomial times powers of t
for m in (1, 2, 3):
    print(f"m={m}:", np.round(eigenvector_cesaro(t, m, 8).x.values, 4))

# rank-k approximation error, bound against the measured distance
for k in (5, 10, 20):
    bound = finite_rank_error(t, one, one, k, 200).value
    seen = measured_rank_distance(t, one, one, k, 200)
    print(f"k={k:2d}  bound={bound:.4f}  measured={seen:.4f}")

print(OperatorSpec.gen_cesaro(t).diagonal(5))
