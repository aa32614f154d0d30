"""Point-plane incidences in F_p^3 and the proof-specific configurations.

incidences() is the generic exact counter: blocked dot products in float64
(every intermediate is an integer below 2^42, so the BLAS path is exact),
reduced mod p.  max_collinear() canonicalizes pairwise directions per anchor
point.  rudnev_ratio() reports the observed count against the
|R|^(1/2)|S| + k|S| shape.

The four proof configurations (sum_E1, sum_E2, prod_E1, prod_E2) all share
one algebraic skeleton: both the point set and the plane set are products
PAIRS x T of a deduplicated pair set with a scalar set, and a point lies on
a plane exactly when one bilinear kernel (alpha*t + beta mod p) collides.
That turns incidence counting for these configs into a histogram sum of
squares, O(|PAIRS| * |T|) instead of O(|R| * |S|), and the same kernel with
multiset pairs is the quadruple-energy histogram used by the verify module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (BadParams, EmptySet, FieldMismatch, SizeCap, ZeroDivisor,
                     ZeroInA)
from .field import PrimeField
from .functions import FnTable
from .sets import FSet

VARIANTS = ("sum_E1", "sum_E2", "prod_E1", "prod_E2")

TRIPLES_CAP = 10_000_000
COLLINEAR_CAP = 20_000
MATERIALIZE_CAP = 1_000_000


@dataclass(frozen=True)
class IncidenceConfig:
    """A deduplicated point set and normalized plane set over one field."""
    field: PrimeField
    points: np.ndarray   # (n, 3) int64, unique rows, lexicographic order
    planes: np.ndarray   # (m, 4) int64, normalized, unique rows
    provenance: str = ""

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_planes(self) -> int:
        return len(self.planes)


def normalize_planes(field: PrimeField, raw: np.ndarray) -> np.ndarray:
    """Scale each plane so its first nonzero (a,b,c) coefficient is 1, then
    deduplicate.  Rows with (a,b,c) = 0 are rejected."""
    p = field.p
    arr = np.asarray(raw, dtype=np.int64).reshape(-1, 4) % p
    abc = arr[:, :3]
    nz = abc != 0
    if not nz.any(axis=1).all():
        raise BadParams("plane with zero normal vector")
    lead_idx = np.argmax(nz, axis=1)
    lead = abc[np.arange(len(arr)), lead_idx]
    mult = field.inv_table[lead]
    normalized = arr * mult[:, None] % p
    return np.unique(normalized, axis=0)


def make_config(field: PrimeField, points, planes,
                provenance: str = "") -> IncidenceConfig:
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 3) % field.p
    pts = np.unique(pts, axis=0)
    pls = normalize_planes(field, np.asarray(planes, dtype=np.int64))
    return IncidenceConfig(field, pts, pls, provenance)


def incidences(cfg: IncidenceConfig) -> int:
    """Exact |{(r, s) : r in R, s in S, r on s}|."""
    R, S = cfg.points, cfg.planes
    if len(R) == 0 or len(S) == 0:
        return 0
    p = cfg.field.p
    aug = np.concatenate(
        [R, np.ones((len(R), 1), dtype=np.int64)], axis=1).astype(np.float64)
    total = 0
    block = max(1, 8_000_000 // max(len(R), 1))
    Sf = S.astype(np.float64)
    for j in range(0, len(S), block):
        vals = aug @ Sf[j:j + block].T
        resid = np.rint(vals).astype(np.int64) % p
        total += int(np.count_nonzero(resid == 0))
    return total


def max_collinear(points: np.ndarray, field: PrimeField,
                  cap: int = COLLINEAR_CAP) -> int:
    """Largest number of points of R on one line, by exact direction
    canonicalization per anchor.  O(|R|^2 log |R|)."""
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 3)
    n = len(pts)
    if n == 0:
        raise EmptySet("max_collinear needs at least one point")
    if n > cap:
        raise SizeCap("max_collinear capped at |R| <= %d, got %d" % (cap, n))
    if n == 1:
        return 1
    p = field.p
    inv = field.inv_table
    best = 1
    for i in range(n - 1):
        if n - 1 - i <= best - 1:
            break  # not enough points left to beat the current best
        d = (pts[i + 1:] - pts[i]) % p
        dx, dy, dz = d[:, 0], d[:, 1], d[:, 2]
        mult = np.where(dx != 0, inv[dx], np.where(dy != 0, inv[dy], inv[dz]))
        canon = d * mult[:, None] % p
        keys = (canon[:, 0] * p + canon[:, 1]) * p + canon[:, 2]
        keys.sort()
        edges = np.flatnonzero(keys[1:] != keys[:-1])
        run = int(np.diff(np.r_[-1, edges, len(keys) - 1]).max())
        best = max(best, 1 + run)
    return best


def rudnev_ratio(cfg: IncidenceConfig) -> dict:
    """Report row: observed incidences against |R|^(1/2)|S| + k|S|."""
    nr, ns = cfg.n_points, cfg.n_planes
    count = incidences(cfg)
    k = max_collinear(cfg.points, cfg.field) if nr else 0
    bound = (nr ** 0.5) * ns + k * ns
    ratio = count / bound if bound > 0 else 0.0
    return {
        "provenance": cfg.provenance,
        "n_points": nr,
        "n_planes": ns,
        "incidences": count,
        "max_collinear": k,
        "bound": bound,
        "ratio": ratio,
        "hyp_r_le_s": nr <= ns,
        "hyp_r_le_p2": nr <= cfg.field.p ** 2,
    }


# -- proof configurations ---------------------------------------------------


def _proof_pairs(variant: str, a: FSet, x: FSet, third: FSet, g: FnTable,
                 h: FnTable) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Multiset kernel pairs (alpha, beta) and scalar list ts for a variant.

    E1 variants: pairs run over A x C (third = C), ts = X elements.
    E2 variants: pairs run over A x X, ts = f(A,B) elements (third = F).
    A point lies on a plane iff alpha*t + beta collides across the two
    product factors, and the quad energy is the same histogram taken with
    multiplicity.
    """
    if variant not in VARIANTS:
        raise BadParams("unknown variant %r" % variant)
    if not (a.field == x.field == third.field == g.field == h.field):
        raise FieldMismatch("mixed fields in proof config")
    if not a.is_zero_free:
        raise ZeroInA("0 in A")
    p = a.field.p
    ae = a.elements()
    ga = g.values[ae]
    ha = h.values[ae]
    inv = a.field.inv_table
    if variant in ("prod_E1", "prod_E2") and not x.is_zero_free:
        raise ZeroDivisor("prod variants need 0 not in X")
    # prod_E1 with 0 in C gives alpha = 0 pairs; those are still fine: the
    # plane rows carry a fixed -1 (E1) or +1 (E2) in the third slot, so
    # distinct raw planes are never scalar multiples of each other and the
    # kernel-collision identity does not care whether alpha vanishes.
    if variant == "sum_E1":
        ce = third.elements()
        alpha = np.repeat(ga, len(ce))
        beta = (np.repeat(ga, len(ce))
                * ((np.repeat(ha, len(ce)) + np.tile(ce, len(ae))) % p)) % p
        ts = x.elements()
    elif variant == "prod_E1":
        ce = third.elements()
        alpha = np.repeat(ga, len(ce)) * np.tile(ce, len(ae)) % p
        beta = np.repeat(ga * ha % p, len(ce))
        ts = x.elements()
    elif variant == "sum_E2":
        xe = x.elements()
        alpha = np.repeat(inv[ga], len(xe))
        w = (np.repeat(ha, len(xe)) + np.tile(xe, len(ae))) % p
        beta = (-w) % p
        ts = third.elements()
    else:  # prod_E2
        xe = x.elements()
        alpha = np.repeat(inv[ga], len(xe)) * np.tile(inv[xe], len(ae)) % p
        w = np.repeat(ha, len(xe)) * np.tile(inv[xe], len(ae)) % p
        beta = (-w) % p
        ts = third.elements()
    return alpha, beta, ts


def _dedup_pairs(alpha: np.ndarray, beta: np.ndarray,
                 p: int) -> tuple[np.ndarray, np.ndarray]:
    keys = np.unique(alpha * p + beta)
    return keys // p, keys % p


def bilinear_hist(alpha: np.ndarray, beta: np.ndarray, ts: np.ndarray,
                  p: int, cap: int = TRIPLES_CAP) -> np.ndarray:
    """Histogram of (alpha_i * t_j + beta_i) mod p over all (i, j)."""
    work = len(alpha) * len(ts)
    if work > cap:
        raise SizeCap("kernel histogram needs %d cells, cap is %d"
                      % (work, cap))
    counts = np.zeros(p, dtype=np.int64)
    if work == 0:
        return counts
    chunk = max(1, 4_000_000 // max(len(ts), 1))
    for i in range(0, len(alpha), chunk):
        vals = (alpha[i:i + chunk, None] * ts[None, :]
                + beta[i:i + chunk, None]) % p
        counts += np.bincount(vals.ravel(), minlength=p)
    return counts


def proof_incidences(variant: str, a: FSet, x: FSet, third: FSet, g: FnTable,
                     h: FnTable, cap: int = TRIPLES_CAP) -> int:
    """I(R, S) for a proof configuration without materializing R or S.

    Both R and S are products of the same deduplicated pair set with the
    same scalar set, and incidence is a kernel collision, so
    I = sum_t H(t)^2 for one histogram H.
    """
    alpha, beta, ts = _proof_pairs(variant, a, x, third, g, h)
    p = a.field.p
    ua, ub = _dedup_pairs(alpha, beta, p)
    hist = bilinear_hist(ua, ub, ts, p, cap)
    return int(np.dot(hist, hist))


def build_proof_config(variant: str, a: FSet, x: FSet, third: FSet,
                       g: FnTable, h: FnTable,
                       cap: int = MATERIALIZE_CAP) -> IncidenceConfig:
    """Materialize the point/plane sets of a proof configuration.

    sum_E1:  R = {(x, g(a'), g(a')(c'+h(a')))},
             S = {g(a) X - x' Y - Z + g(a)(c+h(a)) = 0}
    sum_E2:  R = {(F, 1/g(a'), h(a')+x')},
             S = {X/g(a) - F' Y + Z - (h(a)+x) = 0}
    prod_E1: R = {(x, g(a')c', g(a')h(a'))},
             S = {g(a)c X - x' Y - Z + g(a)h(a) = 0}
    prod_E2: R = {(F, 1/(g(a')x'), h(a')/x')},
             S = {X/(x g(a)) - F' Y + Z - h(a)/x = 0}
    """
    alpha, beta, ts = _proof_pairs(variant, a, x, third, g, h)
    p = a.field.p
    ua, ub = _dedup_pairs(alpha, beta, p)
    n = len(ua) * len(ts)
    if n > cap:
        raise SizeCap("materializing %d points exceeds cap %d" % (n, cap))
    e2 = variant in ("sum_E2", "prod_E2")
    # points: (t, alpha, beta) for E1 shapes, (t, alpha, -beta) for E2
    pa = np.tile(ua, len(ts))
    pb = np.tile(ub, len(ts))
    pt = np.repeat(ts, len(ua))
    third_coord = (-pb) % p if e2 else pb
    points = np.stack([pt, pa, third_coord], axis=1)
    # planes: (alpha, -t, -1, beta) for E1 shapes, (alpha, -t, +1, beta) for E2
    qa = np.repeat(ua, len(ts))
    qb = np.repeat(ub, len(ts))
    qt = np.tile(ts, len(ua))
    ccoef = np.full(len(qa), 1 if e2 else p - 1, dtype=np.int64)
    planes = np.stack([qa, (-qt) % p, ccoef, qb], axis=1)
    cfg = make_config(a.field, points, planes, provenance=variant)
    return cfg
