"""Coherent families of the squared oscillator and the bound-state ladder.

Run: python3 demos/05_state_families.py
"""

import math

import numpy as np

from lfock import (LambdaBasis, classical_frequency,
                   identify_bound_state_nonlinearity, nonlinear_cs,
                   nonlinear_spectrum, penson_solomon_cs)

print("squared-oscillator spectrum (n + 1/2)^2:")
print("  ", [nonlinear_spectrum(n) for n in range(6)])
print("classical frequency grows with amplitude:",
      [classical_frequency(a) for a in (0.0, 0.5, 1.0, 2.0)])

print("\nthree coherent families at alpha = 1.3, coefficient magnitudes:")
fams = {f: nonlinear_cs(f, 1.3) for f in ("canonical", "f2", "f1")}
print("  n   " + "".join(f"{f}".rjust(14) for f in fams))
for n in range(8):
    cells = []
    for f, st in fams.items():
        c = abs(st.coeffs[n]) if n < st.coeffs.shape[0] else 0.0
        cells.append(f"{c:14.6e}")
    print(f"  {n}  " + "".join(cells))
print("faster-growing C(n) means faster decay: f1 is the narrowest")

f2 = nonlinear_cs("f2", 1.0)
print(f"\nf2 norm constant at alpha = 1: {f2.norm_constant:.12f}")
print("  (equals I_0(2)^(-1/2), the inverse square root of a Bessel value)")

print("\nall three are one generalized series Z^n/sqrt(C(n)):")
for f, power in (("canonical", 1), ("f2", 2), ("f1", 3)):
    direct = fams[f]
    T = direct.coeffs.shape[0]
    via = penson_solomon_cs(1.3, lambda n: float(math.factorial(n)) ** power,
                            N=T)
    d = np.max(np.abs(direct.coeffs - via.coeffs))
    print(f"  C(n) = (n!)^{power}: max deviation from {f} = {d:.3g}")

print("\nthe deformed bound states fit the same mold; measured ratios")
print("lam sqrt(n) c_n / c_(n-1) against the prediction m - n + 1:")
basis = LambdaBasis(0.8, 16)
m = 6
got = identify_bound_state_nonlinearity(m, basis)
want = np.arange(m, 0, -1, dtype=float)
for n in range(m):
    print(f"  n = {n + 1}: measured {got[n]:12.8f}   predicted {want[n]:g}")
