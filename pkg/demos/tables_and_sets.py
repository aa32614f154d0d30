"""Field tables and set families, end to end.

Walks the basic layer: build F_p, look at the primitive-root power and
discrete-log tables, check the inverse table against Fermat, then build
each set family and push a pair of sets through the exact combine
(sum / diff / prod / ratio) both elementwise and via the transform path.

Run:  python3 demos/tables_and_sets.py
"""

import os
import tempfile

import numpy as np

from fpsp.field import make_field
from fpsp.sets import (affine, combine, generate, read_set_file,
                       subgroup_orders, write_set_file)

p = 101
field = make_field(p)
print("F_%d, primitive root %d" % (p, field.root))

# pow/dlog are mutually inverse on F_p^*: dlog[pow[e]] = e.
e = np.arange(p - 1)
assert (field.dlog_table[field.pow_table[e]] == e).all()
print("pow/dlog round trip over all %d exponents: ok" % (p - 1))

# inv_table[x] * x = 1 for x != 0; slot 0 is a filler zero.
x = np.arange(1, p, dtype=np.int64)
assert ((field.inv_table[x] * x) % p == 1).all()
assert field.inv_table[0] == 0
print("inverse table vs Fermat: ok")

# One of each family.
interval = generate(field, "interval", start=10, size=8)
ap = generate(field, "ap", start=3, step=7, size=8)
gp = generate(field, "gp", start=2, ratio=5, size=8)
sub = generate(field, "mul_subgroup", order=20)
rnd = generate(field, "random", size=8, seed=42, zero_free=True)
expl = generate(field, "explicit", elements=[1, 2, 3, 5, 8, 13, 21, 34])

for name, s in [("interval", interval), ("ap", ap), ("gp", gp),
                ("mul_subgroup", sub), ("random", rnd), ("explicit", expl)]:
    print("%-13s size %2d  %s" % (name, s.size, s.elements()[:8].tolist()))

print("subgroup orders available at p=%d: %s" % (p, subgroup_orders(field)))

# Exact combine: the elementwise path and the transform path must agree
# bit for bit, whatever the operation.
for op in ("sum", "diff", "prod", "ratio"):
    lhs = combine(interval, rnd, op, method="pairwise")
    rhs = combine(interval, rnd, op, method="transform")
    assert (lhs.elements() == rhs.elements()).all()
    print("interval %s random: %d elements (pairwise == transform)"
          % (op, lhs.size))

# Affine images preserve additive structure: |lam*A + t + lam*B + t'| is
# the sumset size again.  Dilation by 0 is rejected upstream.
shifted = affine(interval, 17, 59)
assert combine(shifted, affine(rnd, 17, 3), "sum").size \
    == combine(interval, rnd, "sum").size
print("sumset size is affine-invariant: ok")

# Sets round trip through the text format (p= header, one decimal per
# line, increasing).
fd, path = tempfile.mkstemp(suffix=".txt")
os.close(fd)
try:
    write_set_file(path, sub)
    back = read_set_file(path)
    assert back.field.p == p and (back.elements() == sub.elements()).all()
    print("set file round trip (%d elements): ok" % back.size)
finally:
    os.unlink(path)
