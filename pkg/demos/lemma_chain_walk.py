"""One fourth-moment chain, by hand and then by the checker.

Small enough to verify by hand: F_7, A = B = C = {1, 2, 3}, g = id,
h = 1, additive kind.  The chain ties the solution count
M = #{(a, b, c, x) : a(1 + b) = x, b - c = shift in the level set}
to the image size and the quadratic energies through exact
inequalities, each asserted with constant 1 on integers.

The walk recomputes every intermediate quantity from scratch, compares
against the checker's report, then runs one larger seeded instance and
prints its full report dict.

Run:  python3 demos/lemma_chain_walk.py
"""

import json

from fpsp.energy import level_set, moment, rep_fn, select_dyadic_k
from fpsp.field import make_field
from fpsp.functions import f_image, make_fn
from fpsp.sets import generate
from fpsp.verify import lemma_chain_check, solution_count_M

field = make_field(7)
a = generate(field, "explicit", elements=[1, 2, 3])
g = make_fn(field, "identity")
h = make_fn(field, "const", c=1)

# The difference histogram of B = C = {1,2,3}: shifts -2..2 occur
# 1,2,3,2,1 times, so counts indexed by residue are [3,2,1,0,0,1,2].
r = rep_fn(a, a, "difference")
print("r_{B-B} counts by residue:", r.counts.tolist())
assert r.counts.tolist() == [3, 2, 1, 0, 0, 1, 2]
assert moment(r, 2) == 19 and moment(r, 4) == 115

# The selector scans powers of two only and maximizes k^4 n_k there:
# k=1 scores 1*5, k=2 scores 16*3 = 48, k=4 hits an empty level.  (The
# non-dyadic k=3 would score 81, but dyadic levels lose at most a
# constant factor 16 and keep the level structure uniform.)
for k in (1, 2, 3, 4):
    nk = level_set(r, k).n_k
    print("  k=%d: n_k=%d, k^4 n_k = %d" % (k, nk, k ** 4 * nk))
kstar = select_dyadic_k(r)
print("selected k* = %d (dyadic)" % kstar)

# M counts (a, x) pairs weighted by r(x) over the level set; the checker
# defines M = |A| * sum_{x in X_k} r(x).  At k = k* = 2 the level set is
# {0, 1, 6} with r-values 3, 2, 2, so each of the three a contributes 7.
xk = level_set(r, kstar).x
m_direct = solution_count_M(a, a, a, xk, "sum")
print("M = |A| * sum_{x in X_k} r(x) = %d" % m_direct)
assert m_direct == 3 * (3 + 2 + 2)

# The chain report reproduces all of it and asserts the inequalities.
rep = lemma_chain_check(a, a, a, g, h, "sum")
inst = rep.instance
assert inst["M"] == m_direct and inst["k"] == kstar
assert inst["E4"] == 115
print("\nchecker instance:", json.dumps(inst, sort_keys=True))
for chk in rep.checks:
    print("  %-22s %10d %2s %-10d %s"
          % (chk.name, chk.lhs, {"ge": ">=", "le": "<="}.get(
              chk.relation, chk.relation), chk.rhs,
             "ok" if chk.passed else "FAIL"))
assert rep.ok

# A larger instance: random sets at p = 1009, multiplicative kind, so
# the fiber function is g*h and the histogram is r_{B/C}.
big = make_field(1009)
a2 = generate(big, "random", size=8, seed=11, zero_free=True)
b2 = generate(big, "random", size=32, seed=12, zero_free=True)
c2 = generate(big, "random", size=16, seed=13, zero_free=True)
g2 = make_fn(big, "power", k=2)
h2 = make_fn(big, "random", seed=14)
rep2 = lemma_chain_check(a2, b2, c2, g2, h2, "prod")
print("\np=1009 prod chain: %s" % ("all checks pass" if rep2.ok else
                                   "FAILURES %s" % rep2.failures()))
print(json.dumps(rep2.to_dict(), sort_keys=True, indent=1))
