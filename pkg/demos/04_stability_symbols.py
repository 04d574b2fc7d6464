"""Fourier stability symbols of the homogeneous chain and the negative-mode
exhibit for the unstable second-gradient model.

Run:  python demos/04_stability_symbols.py
"""

import numpy as np

from chain_elastica import AtomisticSystem, make_potential
from chain_elastica.analysis import (atomistic_symbol, cb_symbol, direct_symbol,
                                     find_negative_mode, hoc_taylor_symbol,
                                     stability_constants)
from chain_elastica.continuum import continuum_model

sys_ = AtomisticSystem(8, make_potential("harmonic"), bonds=(1, 2))
x = np.linspace(0.0, 1.0, 6)[1:]
print("symbols on the band (0, 1], harmonic with second neighbors:")
print(f"{'x':>6s} {'atomistic':>12s} {'truncated':>12s} {'cauchy-born':>12s}")
for xv in x:
    a = atomistic_symbol(sys_, np.array([xv]))[0]
    h = hoc_taylor_symbol(sys_, np.array([xv]))[0]
    print(f"{xv:6.2f} {a:12.6f} {h:12.6f} {cb_symbol(sys_):12.6f}")

rep = stability_constants(sys_, band=(0.0, 1.0), Ns=(8, 16, 32, 64))
print(f"\nstability constants: atomistic {rep.lambda_a:.4f} <= "
      f"truncated {rep.lambda_hoc_taylor:.4f} <= cauchy-born {rep.lambda_cb:.4f}")
print(f"pointwise ordering on the band: {rep.ordering_holds}")

print("\nunstable second-gradient model (nearest neighbors): smallest")
print("negative continuum mode sin(m pi x / N) vs the closed form:")
ill = continuum_model("ill2", make_potential("harmonic"), bonds=(1,))
for N in (8, 16, 32):
    pred = int(np.ceil(2 * np.sqrt(3) * N / np.pi))
    print(f"  N={N:3d}: m* = {find_negative_mode(ill, N)}  (predicted {pred})")

m4 = continuum_model("hoc4", make_potential("harmonic"), bonds=(1,))
xb = np.linspace(0, np.pi, 2001)[1:]
print(f"\nfourth-order model symbol min on (0, pi]: "
      f"{np.min(direct_symbol(m4, xb)):.4f}  (a perfect square: never negative)")
