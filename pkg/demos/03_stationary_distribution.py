"""The stationary front distribution, three ways.

Route 1: closed form pi_n = 2 (J_{n+2} - J_{n+3})/(2 J_3 + J_0).
Route 2: dense linear solve of the truncated balance equations Pi Q = 0
         (never sees a Bessel function).
Route 3: long Gillespie run of the chain, time-averaged occupation.

The tail decays factorially: truncating at K = 25 leaves mass ~1e-29, so the
two exact routes agree to working precision and the Monte Carlo route agrees
to its standard error.
"""

from ladder_fpp import (
    SimConfig,
    empirical_front_distribution,
    pi,
    simulate_front_chain,
    stationary_truncated_solve,
)

sol = stationary_truncated_solve(25)
cfg = SimConfig(seed=2026, mode="front_chain", t_max=5e4)
traj = simulate_front_chain(cfg)
occ = empirical_front_distribution(traj, burn_in=100.0)

print(f"truncated solve: K = {sol.K}, tail bound {sol.tail_bound:.1e}")
print(f"Gillespie run: {traj.n_events} events over {traj.total_time:.0f} time units")
print()
print(f"{'n':>2} {'closed form':>16} {'linear solve':>16} {'Monte Carlo':>14} {'MC s.e.':>9}")
for n in range(9):
    cf = pi(n, 1e-13).value
    mc = occ[n].mean if n < len(occ) else 0.0
    se = occ[n].std_err if n < len(occ) else 0.0
    print(f"{n:>2} {cf:>16.12f} {sol.probs[n]:>16.12f} {mc:>14.6f} {se:>9.1e}")

worst = max(abs(sol.probs[n] - pi(n, 1e-13).value) for n in range(21))
print()
print(f"max |solve - closed form| over n <= 20: {worst:.1e}")
print(f"ratio pi_1/pi_0 = {sol.probs[1]/sol.probs[0]:.10f}  (= 3 - 1/pi_0)")
