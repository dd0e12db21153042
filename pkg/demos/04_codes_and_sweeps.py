"""Random access codes powered by Bell-diagonal correlations, plus sweeps.

A 2->1 (or 3->1) random access code encodes two (three) input bits into a
single communicated bit; the figure of merit is the worst-case probability
of recovering whichever input bit is requested.  Shared Bell-diagonal
correlations push this beyond the best classical strategy, with a closed
form in the correlation triple.  The sweep maps the separable region and
shows the efficiency is NOT monotone in geometric discord.
"""

import numpy as np

from unsteer import (
    BellDiagonalParams,
    optimal_rac_spec,
    optimize_rac,
    rac_classical_bound,
    rac_efficiency_bd,
    simulate_rac,
    sweep_separable_max,
)

BANNER = "=" * 70


def show(title):
    print(f"\n{BANNER}\n{title}\n{BANNER}")


show("closed-form efficiency vs the classical bounds")
for n, triple in ((2, (0.5, 0.5, 0.0)), (3, (1 / 3, 1 / 3, -1 / 3))):
    p = BellDiagonalParams(*triple)
    eff = rac_efficiency_bd(p, n)
    bound = rac_classical_bound(n)
    print(f"  n={n} at {tuple(round(v, 4) for v in triple)}: "
          f"efficiency={eff:.5f} vs classical {bound:.5f} "
          f"({'beats it' if eff > bound else 'does not beat it'})")

show("exact Born-rule simulation agrees with the closed form")
params = BellDiagonalParams(0.9, 0.2, -0.1)
spec = optimal_rac_spec(params, 3)
res = simulate_rac(spec)
closed = rac_efficiency_bd(params, 3)
print(f"triple (0.9, 0.2, -0.1), n=3:")
print(f"  closed form : {closed:.15f}")
print(f"  simulation  : {res.p_min:.15f}")
print(f"  success table spread: {np.ptp(res.table):.2e} (protocol equalizes all inputs)")
print(f"  encodings for input 000 and 111:")
print(f"    {np.array_str(spec.encodings[0], precision=4)}")
print(f"    {np.array_str(spec.encodings[-1], precision=4)}")

show("free optimization over encoding directions lands on the same value")
opt = optimize_rac(params, 3, restarts=10)
print(f"  optimizer p_min: {opt.p_min:.12f} (gap {abs(opt.p_min - closed):.2e})")

show("sweeping the separable region (step 0.02)")
rep2 = sweep_separable_max(2, 0.02)
rep3 = sweep_separable_max(3, 0.02)
a2 = rep2.strength_argmax
a3 = rep3.strength_argmax
print(f"  n=2: strength peaks at ({a2.c1}, {a2.c2}, {a2.c3}) -> {rep2.strength_max}")
print(f"       efficiency peaks at {rep2.efficiency_max:.5f}")
print(f"  n=3: strength peaks at ({a3.c1}, {a3.c2}, {a3.c3}) -> {rep3.strength_max}")
print(f"       efficiency peaks at {rep3.efficiency_max:.5f}")

show("discord does not order the code efficiency")
low, high = rep2.witness_pair
print("witness pair from the n=2 sweep:")
print(f"  {low['params']}: discord={low['discord']:.5f}  efficiency={low['efficiency']:.5f}")
print(f"  {high['params']}: discord={high['discord']:.5f}  efficiency={high['efficiency']:.5f}")
print("the second triple carries MORE discord yet runs the code WORSE, so")
print("neither measure is a monotone function of the other.")
