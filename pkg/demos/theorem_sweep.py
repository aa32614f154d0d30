"""Ratio reports for the growth statements, single rows and a sweep.

Most of the growth statements carry unspecified absolute constants, so
they cannot be pass/failed on one instance.  The harness reports them
as ratios lhs / rhs with constants and logs dropped: stable ratios
across families and primes are evidence the exponent is right, a ratio
drifting to 0 or infinity with p flags the exponent.  The one
constant-explicit statement (the mn/p + sqrt(pmn) incidence count
bound) is asserted exactly on every row.

Run:  python3 demos/theorem_sweep.py
"""

import json

from fpsp.field import make_field
from fpsp.functions import make_fn
from fpsp.sets import generate
from fpsp.sweep import run_sweep, rows_csv
from fpsp.verify import CSV_HEADER, THEOREMS, ThmInstance, theorem_ratio

print("known theorem ids: %s\n" % " ".join(THEOREMS))

# One exact row: the point-count bound on the whole field.  A = F_p
# gives |{(a, a') : a + a' in A + A}| = |A|^2 on the nose and the bound
# is tight up to its error term, so the exact comparison must pass.
field = make_field(101)
full = generate(field, "explicit", elements=range(101))
row = theorem_ratio("Vinh_1_2", ThmInstance(a=full, family="full"))
print("Vinh_1_2 on A = F_101: lhs %d, rhs %.1f, ratio %.4f, exact %s"
      % (row.lhs, row.rhs, row.ratio, row.exact_pass))
assert row.exact_pass

# Ratio rows across families for two of the constant-implicit bounds.
g = make_fn(field, "identity")
h = make_fn(field, "const", c=1)
print("\n%s" % CSV_HEADER)
for fam in ("interval", "random", "mul_subgroup"):
    if fam == "mul_subgroup":
        a = generate(field, fam, order=20)
    elif fam == "interval":
        a = generate(field, fam, start=1, size=16)
    else:
        a = generate(field, fam, size=16, seed=3, zero_free=True)
    for tid in ("HIS_1_1", "Cor_1_7"):
        row = theorem_ratio(tid, ThmInstance(a=a, g=g, h=h, family=fam))
        print(row.csv_line())

# The sweep driver crosses primes x families x sizes x seeds and runs
# the requested chains and theorem rows on every instance, emitting one
# deterministic JSON report (byte-identical across reruns and worker
# counts; all timing lives in the separate meta dict).
cfg = {"primes": [101, 257],
       "families": ["interval", "random"],
       "sizes": [[4, 8, 8]],
       "seeds": [0, 1],
       "g": ["power:2"],
       "h": ["const:1"],
       "chains": ["lemma"],
       "theorems": ["Vinh_1_2", "HIS_1_1", "Cor_1_8"]}
out = run_sweep(cfg, workers=2)
report, meta = out["report"], out["meta"]
print("\nsweep: %d instances in %.2f s with %d workers, %d failures"
      % (meta["n_instances"], meta["elapsed_s"], meta["workers"],
         report["n_failures"]))
print("aggregates per theorem:")
print(json.dumps(report["aggregates"], sort_keys=True, indent=1))
print("\nrow CSV:")
print(rows_csv(report["rows"]))
