"""Cohomology of E0(-L) and its dual over a small box of twists."""
from frobenius_bundles.cohomology import monad_chi, monad_cohom_table
from frobenius_bundles.model import build_monad, dual_monad

m = build_monad(2, 2, 1)
table = monad_cohom_table(m, ((-1, 2), (-1, 2)))
for tw in table.twists():
    h = [iv.value for iv in table.column(tw)]
    print(tw, h, "chi", monad_chi(2, 2, 1, tw))

# the dual monad; twist (t-1, s) is the dual of E0 twisted by sh + tL
d = dual_monad(m)
print(monad_cohom_table(d, [(-1, 0)]).column((-1, 0)))   # H^1 = 1 at s = t = 0

# CSV for a spreadsheet
print(table.to_csv()[:200])
