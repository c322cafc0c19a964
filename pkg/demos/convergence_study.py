"""Fixed-step convergence of every shipped method on y' = y.

Halving the step size must shrink the global error at t = 1 by 2^p for a
method of order p.  The high-order methods are measured at larger steps:
below h ~ 0.1 their error has already reached the 64-bit roundoff floor
(~1e-15), where no slope can be read off.

Run:  python demos/convergence_study.py
"""
import math

import numpy as np

from rkforge import shipped_methods
from rkforge.generated import METHODS

print(f"{'method':>12} {'p':>2} {'slope':>7}   errors at the four step sizes")
for tableau in shipped_methods():
    mod = METHODS[tableau.name]
    hs = (0.5, 0.25, 0.125, 0.0625) if tableau.p >= 6 else (0.1, 0.05, 0.025, 0.0125)
    errs = []
    for h in hs:
        _, y = getattr(mod, f"{tableau.name}_fixed_last")(
            lambda t, y: y, h, np.array([1.0]), 0.0, 1.0)
        errs.append(abs(float(y[0]) - math.e))
    usable = [(h, e) for h, e in zip(hs, errs) if e > 1e-13]
    slope = np.polyfit(np.log([h for h, _ in usable]),
                       np.log([e for _, e in usable]), 1)[0]
    print(f"{tableau.name:>12} {tableau.p:>2} {slope:>7.3f}   "
          + "  ".join(f"{e:.2e}" for e in errs))
