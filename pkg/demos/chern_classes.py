"""Chern classes of the kernel bundle, computed three ways."""
from frobenius_bundles.chow import (chern_E0_by_change_k, chern_E0_by_frobenius_step,
                                    chern_E0_symbolic, euler_char_hrr, twist_chern)

n, p = 2, 2

# direct formula from the monad, for E0(-L)
c = chern_E0_symbolic(n, p, 1)
print("c(E0(-L)) =", c.total)
print("c(E0)     =", twist_chern(n, c.total, (1, 0)))  # symmetric when p = n = 2

# q = 4 via one Frobenius step from q = 2
q4 = chern_E0_by_frobenius_step(n, p, 1)
print("q=4 by Frobenius step agrees:", q4 == chern_E0_symbolic(n, 4, 1).total)

# k = 3 by walking down from k = 4
print("k=3 by change of k agrees:", chern_E0_by_change_k(n, 4, 3) == chern_E0_symbolic(n, 4, 3).total)

# Riemann-Roch on a few twists
for tw in [(0, 0), (1, 0), (2, 2)]:
    print(tw, "chi =", euler_char_hrr(n, twist_chern(n, c.total, tw)))
