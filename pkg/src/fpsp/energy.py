"""Representation functions, moment energies, and popularity selections.

The central object is the exact histogram r_{B?C}(x): how many pairs
(b, c) in B x C realize x as b-c, b/c, or b+c.  Two independent computation
paths exist on purpose: a pairwise numpy enumeration ("naive") and an NTT
convolution ("transform"); they must agree bit for bit and serve as each
other's oracle.

On top of the histogram sit the moment energies E_n = sum_x r(x)^n (exact
big integers for integer n, floats for fractional n), level sets
X_k = {x : r(x) >= k}, dyadic buckets, and the two popularity selections the
inequality chains consume: popular differences (threshold |B||C| / (2|B-C|))
and the popular-sum core construction with its epsilon parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import convolve
from .errors import (BadEpsilon, BadExponent, BadParams, EmptySet,
                     FieldMismatch, ZeroDivisor)
from .field import PrimeField
from .sets import FSet

KINDS = ("difference", "ratio", "sum")


@dataclass(frozen=True)
class RepFn:
    """Exact histogram of a representation function over F_p.

    counts[x] = number of (b, c) in B x C with b ? c = x.  For the ratio
    kind, index 0 is structurally zero.  mass = |B| * |C| always.
    """
    field: PrimeField
    kind: str
    counts: np.ndarray
    size_b: int
    size_c: int

    @property
    def mass(self) -> int:
        return self.size_b * self.size_c

    def count(self, x: int) -> int:
        return int(self.counts[x % self.field.p])

    def support(self) -> FSet:
        return FSet(self.field, self.counts > 0)

    def support_size(self) -> int:
        return int((self.counts > 0).sum())


def _rep_naive(b: FSet, c: FSet, kind: str) -> np.ndarray:
    p = b.field.p
    be, ce = b.elements(), c.elements()
    counts = np.zeros(p, dtype=np.int64)
    if len(be) == 0 or len(ce) == 0:
        return counts
    if kind == "ratio":
        ce = b.field.inv_table[ce]
    chunk = max(1, 4_000_000 // max(len(ce), 1))
    for i in range(0, len(be), chunk):
        rows = be[i:i + chunk, None]
        if kind == "difference":
            vals = (rows - ce[None, :]) % p
        elif kind == "sum":
            vals = (rows + ce[None, :]) % p
        else:
            vals = rows * ce[None, :] % p
        counts += np.bincount(vals.ravel(), minlength=p)
    return counts


def _rep_transform(b: FSet, c: FSet, kind: str) -> np.ndarray:
    p = b.field.p
    if kind in ("difference", "sum"):
        xb = b.mask.astype(np.int64)
        yc = c.mask.astype(np.int64)
        if kind == "difference":
            yc = np.roll(yc[::-1], 1)  # indicator of -C
        return convolve.cyclic_convolve(xb, yc, p)
    # ratio: move to exponents in Z_{p-1}
    q = p - 1
    f = b.field
    bexp = f.dlog_table[b.elements()]
    cexp = f.dlog_table[c.elements()]
    xv = np.zeros(q, dtype=np.int64)
    yv = np.zeros(q, dtype=np.int64)
    xv[bexp] = 1
    yv[(-cexp) % q] = 1
    hist_exp = convolve.cyclic_convolve(xv, yv, q)
    counts = np.zeros(p, dtype=np.int64)
    counts[f.pow_table] = hist_exp
    return counts


def rep_fn(b: FSet, c: FSet, kind: str, method: str = "auto") -> RepFn:
    """Exact representation histogram for kind in {difference, ratio, sum}."""
    if b.field != c.field:
        raise FieldMismatch("rep_fn operands over different fields")
    if kind not in KINDS:
        raise BadParams("unknown rep kind %r" % kind)
    if kind == "ratio" and (not b.is_zero_free or not c.is_zero_free):
        raise ZeroDivisor("ratio histogram needs both sets inside F_p^*")
    if method == "auto":
        p = b.field.p
        heavy = b.size * c.size > 32 * p * max(1, int(math.log2(p)))
        method = "transform" if heavy else "naive"
    if method == "naive":
        counts = _rep_naive(b, c, kind)
    elif method == "transform":
        counts = _rep_transform(b, c, kind)
    else:
        raise BadParams("unknown method %r" % method)
    return RepFn(b.field, kind, counts, b.size, c.size)


def _is_integral(n) -> bool:
    if isinstance(n, int):
        return True
    if isinstance(n, Fraction):
        return n.denominator == 1
    return False


def moment(r: RepFn, n) -> int | float:
    """E_n = sum_x r(x)^n.  Exact int for integral n >= 1 (counts^n can
    exceed int64, so the reduction runs over Python ints); float via fsum
    for fractional n, enumerating values ascending."""
    if n < 1:
        raise BadExponent("moment needs n >= 1, got %r" % (n,))
    nz = r.counts[r.counts > 0]
    if _is_integral(n):
        k = int(n)
        return sum(int(cnt) ** k for cnt in nz.tolist())
    e = float(n)
    return math.fsum(float(cnt) ** e for cnt in nz.tolist())


@dataclass(frozen=True)
class LevelSet:
    k: int
    x: FSet
    n_k: int


def level_set(r: RepFn, k: int) -> LevelSet:
    """X_k = {x : r(x) >= k} with its size n_k."""
    if k < 1:
        raise BadParams("level_set needs k >= 1")
    mask = r.counts >= k
    return LevelSet(k, FSet(r.field, mask), int(mask.sum()))


def level_counts(r: RepFn) -> np.ndarray:
    """n_k for k = 0..max count: n[k] = |{x : r(x) >= k}| (n[0] = p)."""
    nz = r.counts[r.counts > 0]
    top = int(nz.max()) if len(nz) else 0
    hist = np.bincount(nz, minlength=top + 1)
    n = np.zeros(top + 1, dtype=np.int64)
    n[0] = r.field.p
    if top:
        # suffix sums of the count histogram
        n[1:] = np.cumsum(hist[::-1])[::-1][1:]
    return n


def select_dyadic_k(r: RepFn) -> int:
    """The proofs' automatic level: the smallest power of two k maximizing
    k^4 * n_k (ties broken toward smaller k)."""
    n = level_counts(r)
    top = len(n) - 1
    if top < 1:
        raise EmptySet("histogram has empty support")
    best_k, best_score = 1, 0
    k = 1
    while k <= top:
        score = k ** 4 * int(n[k])
        if score > best_score:
            best_k, best_score = k, score
        k *= 2
    return best_k


def popular_diff(b: FSet, c: FSet) -> FSet:
    """P = {x in B-C : r_{B-C}(x) >= |B||C| / (2|B-C|)}, threshold compared
    exactly as 2 * r(x) * |B-C| >= |B||C|."""
    if b.size == 0 or c.size == 0:
        raise EmptySet("popular_diff needs nonempty sets")
    r = rep_fn(b, c, "difference")
    supp = int((r.counts > 0).sum())
    mask = 2 * r.counts * supp >= r.mass
    mask &= r.counts > 0
    return FSet(b.field, mask)


def normalize_eps(eps: Fraction | float | None, size: int) -> Fraction:
    """Epsilon handling shared by the popularity machinery: None means the
    default 1/log2(size) (rationalized so comparisons stay exact), anything
    else is converted to a Fraction; the result must land in (0,1)."""
    if eps is None:
        if size < 3:
            raise BadEpsilon("default eps = 1/log2|C| needs |C| >= 3")
        eps = Fraction(1.0 / math.log2(size)).limit_denominator(1 << 40)
    elif not isinstance(eps, Fraction):
        eps = Fraction(eps).limit_denominator(1 << 62)
    if not 0 < eps < 1:
        raise BadEpsilon("eps must be in (0,1), got %s" % eps)
    return eps


def popular_sum_core(c: FSet, eps: Fraction | float | None = None
                     ) -> tuple[FSet, FSet]:
    """Popular sums P of C and the core C' of elements mostly summing into P.

    P  = {x in C+C : r_{C+C}(x) >= eps |C|^2 / |C+C|}
    C' = {c' in C : |{c'' in C : c'+c'' in P}| >= (1-eps)|C|}

    eps defaults to 1/log2|C| and must lie in (0,1); comparisons are exact
    via Fraction cross-multiplication.
    """
    if c.size == 0:
        raise EmptySet("popular_sum_core needs a nonempty set")
    eps = normalize_eps(eps, c.size)
    p = c.field.p
    r = rep_fn(c, c, "sum")
    supp = int((r.counts > 0).sum())
    num, den = eps.numerator, eps.denominator
    # r(x) * |C+C| >= eps * |C|^2  <=>  r(x) * |C+C| * den >= num * |C|^2
    pmask = (r.counts * supp * den >= num * c.size * c.size) & (r.counts > 0)
    pset = FSet(c.field, pmask)
    ce = c.elements()
    good = np.zeros(p, dtype=bool)
    # |{c'': c'+c'' in P}| >= (1-eps)|C|  <=>  den*count >= (den-num)*|C|
    for cp in ce.tolist():
        cnt = int(pmask[(cp + ce) % p].sum())
        if den * cnt >= (den - num) * c.size:
            good[cp] = True
    return pset, FSet(c.field, good)


@dataclass(frozen=True)
class DyadicBucket:
    delta: int
    members: FSet
    size: int


def dyadic_buckets(r: RepFn) -> list[DyadicBucket]:
    """Nonempty buckets {x : Delta <= r(x) < 2*Delta} for Delta = 1,2,4,..."""
    out = []
    nz_max = int(r.counts.max())
    delta = 1
    while delta <= nz_max:
        mask = (r.counts >= delta) & (r.counts < 2 * delta)
        sz = int(mask.sum())
        if sz:
            out.append(DyadicBucket(delta, FSet(r.field, mask), sz))
        delta *= 2
    return out


def energy_popular(r: RepFn, n=Fraction(4, 3)) -> tuple[int, FSet]:
    """The dyadic bucket (Delta', P') maximizing |P'| * Delta'^n.

    With a Fraction exponent a/b the argmax is decided exactly by comparing
    size^b * Delta^a as big integers; float exponents fall back to float
    scores.  Ties go to the smaller Delta.  Returns (Delta', P').
    """
    buckets = dyadic_buckets(r)
    if not buckets:
        raise EmptySet("histogram has empty support")
    if isinstance(n, (int, Fraction)):
        frac = Fraction(n)
        a, bden = frac.numerator, frac.denominator

        def key(bucket):
            return bucket.size ** bden * bucket.delta ** a
    else:
        e = float(n)

        def key(bucket):
            return bucket.size * bucket.delta ** e
    best = buckets[0]
    best_key = key(best)
    for bucket in buckets[1:]:
        kv = key(bucket)
        if kv > best_key:
            best, best_key = bucket, kv
    return best.delta, best.members
