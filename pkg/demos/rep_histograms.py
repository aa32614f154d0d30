"""Representation functions and their moments.

r_{B-C}(x) counts pairs (b, c) with b - c = x; sum and ratio variants
swap the operation.  The second moment E2 = sum_x r(x)^2 is the additive
energy of the pair, the fourth moment E4 drives the quadruple counts.
This script builds a few histograms, checks the mass identity
sum_x r(x) = |B||C| and the Cauchy-Schwarz floor
E2 * |supp r| >= (|B||C|)^2, then times the naive O(|B||C|) counter
against the transform path as the sets grow.

Run:  python3 demos/rep_histograms.py
"""

import time

from fpsp.energy import (dyadic_buckets, level_counts, moment, popular_diff,
                         rep_fn, select_dyadic_k)
from fpsp.field import make_field
from fpsp.sets import generate

field = make_field(101)
b = generate(field, "interval", start=1, size=12)
c = generate(field, "random", size=12, seed=7)

for kind in ("difference", "sum", "ratio"):
    r = rep_fn(b, c, kind)
    e2 = moment(r, 2)
    supp = r.support_size()
    assert r.counts.sum() == r.mass == b.size * c.size
    assert e2 * supp >= r.mass ** 2
    print("%-10s  mass %4d  support %3d  E2 %6d  E4 %7d  max r %2d"
          % (kind, r.mass, supp, e2, moment(r, 4), r.counts.max()))

# Fractional moments go through exact counts and a compensated float sum.
r = rep_fn(b, c, "difference")
print("E_{4/3} of the difference histogram: %.6f" % moment(r, 4 / 3))

# Dyadic structure: level_counts[k] = #{x : r(x) >= k}; the selected k
# maximizes k^4 * n_k, the quantity the chain arguments feed on.
nk = level_counts(r)
k = select_dyadic_k(r)
print("level counts n_k for k=1..%d: %s" % (len(nk) - 1, nk[1:].tolist()))
print("selected k* = %d with n_k = %d, score k^4 n_k = %d"
      % (k, nk[k], k ** 4 * int(nk[k])))
for bucket in dyadic_buckets(r):
    print("  bucket [%d, %d): %d values of x"
          % (bucket.delta, 2 * bucket.delta, bucket.size))

pop = popular_diff(b, c)
print("popular differences (r(x) >= |B||C| / (2 support)): %d elements"
      % pop.size)

# Timing: the naive counter wins on small instances, the transform path
# on large ones; both are exact so the crossover is pure speed.
print("\nnaive vs transform (difference kind), p = 65537:")
big = make_field(65537)
for n in (64, 256, 1024, 4096, 8192):
    bb = generate(big, "random", size=n, seed=1)
    cc = generate(big, "random", size=n, seed=2)
    t0 = time.perf_counter()
    rn = rep_fn(bb, cc, "difference", method="naive")
    t1 = time.perf_counter()
    rt = rep_fn(bb, cc, "difference", method="transform")
    t2 = time.perf_counter()
    assert (rn.counts == rt.counts).all()
    print("  n=%4d   naive %7.1f ms   transform %7.1f ms   (identical)"
          % (n, 1e3 * (t1 - t0), 1e3 * (t2 - t1)))
