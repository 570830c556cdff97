"""The three headline numbers, from Bessel series with rigorous bounds.

The stationary front distribution of ladder percolation gives everything in
closed form at Bessel argument 2:

    pi_0 = J_0 / (2 J_3 + J_0)          probability the two levels are even
    tau  = (2 J_3 + J_0)/(2 J_3 + 2 J_0) long-run time per unit height
    T    = sum_n pi_n gamma_n            mean residual time at a late epoch

tau != T is the waiting-time paradox failing to cancel: unlike a Poisson
process, the ladder's height process has gaps whose length-biased sampling
and partial progress do not offset.
"""

from ladder_fpp import avg_residual_time, bessel_j, pi0, time_constant

for n in (0, 1, 2, 3):
    j = bessel_j(n, 1e-14)
    print(f"J_{n}(2) = {j.value:.15f}  (err <= {j.err:.1e})")

p0 = pi0(1e-12)
tau = time_constant(1e-12)
T = avg_residual_time(1e-12)

print()
print(f"pi_0 = {p0.value:.12f} ± {p0.err:.1e}")
print(f"tau  = {tau.value:.12f} ± {tau.err:.1e}")
print(f"T    = {T.value:.12f} ± {T.err:.1e}")
print()
print(f"percolation rate 1/tau = 1 + pi_0 = {1 + p0.value:.12f}")
print(f"waiting-time gap tau - T = {tau.value - T.value:.10f}")
