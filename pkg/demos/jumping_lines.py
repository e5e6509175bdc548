"""Splitting types on random lines, inside and off the divisor."""
import numpy as np

from frobenius_bundles.model import build_monad, random_line, splitting_type

rng = np.random.default_rng(7)
for q in (2, 4):
    m = build_monad(2, q, 1)
    for factor, name in ((0, "L-line"), (1, "h-line")):
        for inside in (False, True):
            ln = random_line(m, factor, rng, in_divisor=inside)
            print(f"q={q} {name} {'in' if inside else 'off'} divisor:",
                  splitting_type(m, ln).degrees)
