"""Growth of f(A, B) = {g(a) * (h(a) + b)} against sumset and product set.

The images f(A, B) interpolate between additive and multiplicative
structure depending on g and h.  Three experiments:

  1. |f(A, A)| for several (g, h) choices across set families, next to
     |A + A| and |A . A|.
  2. multiplicative subgroups at p = 1009 with g = id, h = 1, where the
     image collapses onto the sumset exactly: x + y = x * (1 + y/x) and
     y/x stays in the subgroup, so f(A, A) = A + A element for element.
  3. a log-log slope estimate for max(|f(A,A)|, |A+A|) on those
     subgroups, the quantity the growth statements bound from below.

Run:  python3 demos/image_growth.py
"""

import numpy as np

from fpsp.field import make_field
from fpsp.functions import f_image, make_fn, mu
from fpsp.sets import combine, generate

field = make_field(101)

specs = [("id, h=1", make_fn(field, "identity"), make_fn(field, "const", c=1)),
         ("id, h=x", make_fn(field, "identity"), make_fn(field, "identity")),
         ("g=x^2, h=1", make_fn(field, "power", k=2),
          make_fn(field, "const", c=1)),
         ("random g,h", make_fn(field, "random", seed=5),
          make_fn(field, "random", seed=6))]

fams = [("interval", generate(field, "interval", start=1, size=16)),
        ("ap", generate(field, "ap", start=3, step=11, size=16)),
        ("subgroup", generate(field, "mul_subgroup", order=20)),
        ("random", generate(field, "random", size=16, seed=9,
                            zero_free=True))]

print("image sizes at p=101 (|A| in 16..20):")
print("%-10s %-12s %8s %8s %8s %4s" % ("family", "functions", "|f(A,A)|",
                                       "|A+A|", "|A.A|", "mu"))
for fam_name, a in fams:
    ss = combine(a, a, "sum").size
    pp = combine(a, a, "prod").size
    for g_name, g, h in specs:
        img = f_image(g, h, a, a)
        print("%-10s %-12s %8d %8d %8d %4d"
              % (fam_name, g_name, img.size, ss, pp, mu(g)))

# The subgroup collapse: with g = id, h = 1 the image IS the sumset.
print("\nsubgroup collapse at p=1009 (g=id, h=1):")
big = make_field(1009)
gid = make_fn(big, "identity")
hone = make_fn(big, "const", c=1)
print("%6s %6s %9s %9s" % ("order", "|A|", "|f(A,A)|", "|A+A|"))
nas, lhss = [], []
for order in (7, 14, 28, 56):
    a = generate(big, "mul_subgroup", order=order)
    img = f_image(gid, hone, a, a)
    ss = combine(a, a, "sum")
    assert img.size == ss.size
    print("%6d %6d %9d %9d" % (order, a.size, img.size, ss.size))
    nas.append(a.size)
    lhss.append(max(img.size, ss.size))

slope = float(np.polyfit(np.log(nas), np.log(lhss), 1)[0])
print("log-log slope of max(|f(A,A)|, |A+A|) in |A|: %.3f" % slope)
print("(a lower bound of the form |A|^{11/9} predicts slope >= %.3f"
      " up to the constant)" % (11 / 9))

# Once h separates points the collapse breaks and the image grows past
# the sumset on the same subgroups.
hrand = make_fn(big, "random", seed=3)
print("\nsame subgroups with random h:")
for order in (7, 14, 28, 56):
    a = generate(big, "mul_subgroup", order=order)
    img = f_image(gid, hrand, a, a)
    ss = combine(a, a, "sum")
    print("  order %2d: |f(A,A)| = %4d vs |A+A| = %4d"
          % (order, img.size, ss.size))
