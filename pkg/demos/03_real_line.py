# Dual transforms on the real line, the integers and the circle.

from fractions import Fraction

import numpy as np

from metricdual import (RealNorm, TNorm, ZNorm, is_quasiconcave, real_bidual_fixpoint, real_dual,
                        real_dual_closed, t_dual_at, z_dual_at)

t = np.array([0.01, 0.1, 1.0, 10.0, 100.0])

# power profiles: dual is 2**(alpha-1) t**alpha
for alpha in (0.3, 0.5, 1.0):
    w = RealNorm.power(alpha)
    num = real_dual(w, t)
    print(f"alpha={alpha}:", np.round(num, 6), "max rel err",
          float(np.max(np.abs(num / (2 ** (alpha - 1) * t ** alpha) - 1))))

# log(1 + t): quasi-concave, so the closed form applies
w = RealNorm.log1p()
print("log1p closed vs numeric:", real_dual_closed(w, 1.0), real_dual(w, 1.0))

# a table that dips below its chord between 2 and 3
fixture = RealNorm.table([(0, 0), (1, 1), (2, 1.2), (3, 2)], 0.1)
qc = is_quasiconcave(fixture)
print("fixture quasi-concave?", qc.ok, qc.reason, qc.witness)
rep = real_bidual_fixpoint(fixture)
k = np.argmax(np.abs(rep.bidual - rep.omega))
print(f"largest bidual gap at t={rep.probes[k]:.3f}: omega={rep.omega[k]:.4f} bidual={rep.bidual[k]:.4f}")
print("bidual quasi-concave:", rep.bidual_quasiconcave, " below omega:", rep.bidual_below,
      " same dual:", rep.dual_gap)

# Z with |k| is dual to the circle with its arc norm, and back
Z = ZNorm.absolute()
print([str(z_dual_at(Z, Fraction(p, 7))) for p in range(4)])
lam = TNorm.canonical()
print([round(t_dual_at(lam, k), 9) for k in range(6)])
