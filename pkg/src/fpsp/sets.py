"""Subsets of F_p as bit-vector masks, plus generators and set algebra.

An FSet is a boolean membership mask of length p with a cached size.  That
representation makes the combine operations (A+B, A-B, A*B, A/B) either a
pairwise numpy enumeration or a support-of-convolution question, and the two
paths are kept as mutual oracles.  Elements always come back sorted
ascending, so everything downstream is deterministic.

The module also owns the on-disk set format: a `p=<modulus>` header line
followed by one strictly increasing decimal element per line, `#` comments
allowed.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from . import convolve
from .errors import (BadParams, EmptySet, FieldMismatch, ParseError,
                     ZeroDilation, ZeroDivisor)
from .field import PrimeField, factorize
from .rng import CounterRng

FAMILIES = ("interval", "ap", "gp", "mul_subgroup", "random", "explicit")


class FSet:
    """An immutable subset of F_p backed by a boolean mask."""

    __slots__ = ("field", "mask", "_size", "_elems")

    def __init__(self, field: PrimeField, mask: np.ndarray):
        if len(mask) != field.p:
            raise BadParams("mask length %d != p=%d" % (len(mask), field.p))
        self.field = field
        self.mask = mask.astype(bool)
        self.mask.flags.writeable = False
        self._size = int(self.mask.sum())
        self._elems = None

    @classmethod
    def from_elements(cls, field: PrimeField, elems: Iterable[int]) -> "FSet":
        mask = np.zeros(field.p, dtype=bool)
        arr = np.asarray(list(elems) if not isinstance(elems, np.ndarray)
                         else elems, dtype=np.int64)
        if len(arr):
            mask[arr % field.p] = True
        return cls(field, mask)

    @property
    def size(self) -> int:
        return self._size

    def elements(self) -> np.ndarray:
        """Sorted int64 array of members."""
        if self._elems is None:
            self._elems = np.flatnonzero(self.mask).astype(np.int64)
        return self._elems

    @property
    def is_zero_free(self) -> bool:
        return not self.mask[0]

    def __len__(self) -> int:
        return self._size

    def __iter__(self):
        return iter(self.elements().tolist())

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x % self.field.p])

    def __eq__(self, other) -> bool:
        return (isinstance(other, FSet) and self.field == other.field
                and bool(np.array_equal(self.mask, other.mask)))

    def __hash__(self) -> int:
        return hash((self.field, self.elements().tobytes()))

    def __repr__(self) -> str:
        el = self.elements()
        shown = ",".join(map(str, el[:8].tolist()))
        if self._size > 8:
            shown += ",..."
        return "FSet(p=%d, n=%d, {%s})" % (self.field.p, self._size, shown)


def generate(field: PrimeField, family: str, *, start: int | None = None,
             step: int | None = None, ratio: int | None = None,
             order: int | None = None, size: int | None = None,
             seed: int = 0, instance_id: str | int | None = None,
             elements: Iterable[int] | None = None,
             zero_free: bool = False) -> FSet:
    """Build one of the standard set families.

    interval:     start, size          {start, start+1, ...}
    ap:           start, step, size    {start + i*step}
    gp:           start, ratio, size   {start * ratio^i}
    mul_subgroup: order                the subgroup of F_p^* of that order
    random:       size, seed           uniform size-subset
    explicit:     elements             literal members
    zero_free=True rejects (or for random: avoids) 0.
    """
    p = field.p
    if family not in FAMILIES:
        raise BadParams("unknown family %r" % family)

    if family == "explicit":
        if elements is None:
            raise BadParams("explicit family needs elements")
        elems = [e % p for e in elements]
        if len(set(elems)) != len(elems):
            raise BadParams("duplicate explicit elements")
        out = FSet.from_elements(field, elems)
    elif family == "mul_subgroup":
        if order is None or order < 1:
            raise BadParams("mul_subgroup needs order >= 1")
        if (p - 1) % order != 0:
            raise BadParams("order %d does not divide p-1=%d" % (order, p - 1))
        stride = (p - 1) // order
        exps = (np.arange(order, dtype=np.int64) * stride) % (p - 1)
        out = FSet.from_elements(field, field.pow_table[exps])
    else:
        if size is None or size < 0:
            raise BadParams("%s family needs size >= 0" % family)
        if size > p:
            raise BadParams("size %d > p = %d" % (size, p))
        if family == "interval":
            if start is None:
                raise BadParams("interval needs start")
            elems = (start + np.arange(size, dtype=np.int64)) % p
        elif family == "ap":
            if start is None or step is None:
                raise BadParams("ap needs start and step")
            if step % p == 0 and size > 1:
                raise BadParams("ap with step 0 repeats elements")
            elems = (start + step * np.arange(size, dtype=np.int64)) % p
        elif family == "gp":
            if start is None or ratio is None:
                raise BadParams("gp needs start and ratio")
            if start % p == 0:
                raise BadParams("gp start must be nonzero")
            if ratio % p == 0:
                raise BadParams("gp ratio must be nonzero")
            vals = []
            acc = start % p
            for _ in range(size):
                vals.append(acc)
                acc = acc * ratio % p
            elems = np.array(vals, dtype=np.int64)
            if len(set(vals)) != size:
                raise BadParams("gp repeats elements (ratio order too small)")
        else:  # random
            rng = CounterRng(seed, instance_id if instance_id is not None
                             else "set:p=%d:n=%d" % (p, size))
            if zero_free:
                if size > p - 1:
                    raise BadParams("zero-free size %d > p-1" % size)
                elems = rng.subset(p - 1, size) + 1
            else:
                elems = rng.subset(p, size)
        out = FSet.from_elements(field, elems)

    if zero_free and not out.is_zero_free:
        raise BadParams("family produced 0 but zero_free was requested")
    if family not in ("random", "mul_subgroup", "explicit") and \
            size is not None and out.size != size:
        raise BadParams("%s family repeats elements" % family)
    return out


def _check_fields(a: FSet, b: FSet) -> PrimeField:
    if a.field != b.field:
        raise FieldMismatch("operands over different fields: %r vs %r"
                            % (a.field, b.field))
    return a.field


def _combine_pairwise(a: FSet, b: FSet, op: str) -> np.ndarray:
    p = a.field.p
    ae, be = a.elements(), b.elements()
    mask = np.zeros(p, dtype=bool)
    if len(ae) == 0 or len(be) == 0:
        return mask
    if op == "ratio":
        be = a.field.inv_table[be]
        op = "prod"
    # Chunk rows of a to bound the outer product at ~4e6 cells.
    chunk = max(1, 4_000_000 // max(len(be), 1))
    for i in range(0, len(ae), chunk):
        rows = ae[i:i + chunk, None]
        if op == "sum":
            vals = (rows + be[None, :]) % p
        elif op == "diff":
            vals = (rows - be[None, :]) % p
        else:  # prod
            vals = rows * be[None, :] % p
        mask[vals.ravel()] = True
    return mask


def _combine_transform(a: FSet, b: FSet, op: str) -> np.ndarray:
    p = a.field.p
    if op in ("sum", "diff"):
        xb = a.mask.astype(np.int64)
        yb = b.mask.astype(np.int64)
        if op == "diff":
            yb = np.roll(yb[::-1], 1)  # indicator of -B
        counts = convolve.cyclic_convolve(xb, yb, p)
        return counts > 0
    # prod / ratio run over exponents in Z_{p-1}; zero needs bookkeeping.
    q = p - 1
    f = a.field
    ae, be = a.elements(), b.elements()
    mask = np.zeros(p, dtype=bool)
    a_has0 = bool(a.mask[0])
    b_has0 = bool(b.mask[0])
    if op == "ratio" and b_has0:
        raise ZeroDivisor("0 in denominator set")
    if a_has0 and len(be) > 0:
        mask[0] = True
    if op == "prod" and b_has0 and len(ae) > 0:
        mask[0] = True
    aexp = f.dlog_table[ae[ae > 0]]
    bexp = f.dlog_table[be[be > 0]]
    if len(aexp) == 0 or len(bexp) == 0:
        return mask
    xv = np.zeros(q, dtype=np.int64)
    yv = np.zeros(q, dtype=np.int64)
    xv[aexp] = 1
    if op == "ratio":
        yv[(-bexp) % q] = 1
    else:
        yv[bexp] = 1
    counts = convolve.cyclic_convolve(xv, yv, q)
    mask[f.pow_table[np.flatnonzero(counts > 0)]] = True
    return mask


def _use_transform(a: FSet, b: FSet) -> bool:
    p = a.field.p
    return a.size * b.size > 32 * p * max(1, int(math.log2(p)))


def combine(a: FSet, b: FSet, op: str, method: str = "auto") -> FSet:
    """Element-wise set operation: op in {sum, diff, prod, ratio}."""
    field = _check_fields(a, b)
    if op not in ("sum", "diff", "prod", "ratio"):
        raise BadParams("unknown combine op %r" % op)
    if op == "ratio" and b.mask[0]:
        raise ZeroDivisor("0 in denominator set")
    if method == "auto":
        method = "transform" if _use_transform(a, b) else "pairwise"
    if method == "pairwise":
        mask = _combine_pairwise(a, b, op)
    elif method == "transform":
        mask = _combine_transform(a, b, op)
    else:
        raise BadParams("unknown method %r" % method)
    return FSet(field, mask)


def affine(a: FSet, lam: int, t: int) -> FSet:
    """{lam*x + t : x in A}; lam must be invertible so sizes are preserved."""
    p = a.field.p
    lam %= p
    if lam == 0:
        raise ZeroDilation("affine scaling by 0")
    elems = (lam * a.elements() + t) % p
    return FSet.from_elements(a.field, elems)


def subgroup_orders(field: PrimeField) -> list[int]:
    """All divisors of p-1, ascending: the available subgroup orders."""
    divs = [1]
    for q, e in factorize(field.p - 1).items():
        divs = [d * q ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


# -- on-disk format ------------------------------------------------------


def write_set_file(path: str, a: FSet) -> None:
    lines = ["p=%d" % a.field.p]
    lines += [str(x) for x in a.elements().tolist()]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def parse_set_text(text: str, field: PrimeField | None = None
                   ) -> tuple[int, list[int]]:
    """Parse the set format; returns (p, elements).  Strictness follows the
    format contract: header first, strictly increasing elements, in range."""
    p = None
    elems: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if p is None:
            if not line.startswith("p="):
                raise ParseError("line %d: expected p=<modulus> header" % lineno)
            try:
                p = int(line[2:])
            except ValueError:
                raise ParseError("line %d: bad modulus %r" % (lineno, line))
            if field is not None and p != field.p:
                raise ParseError("file modulus %d != expected %d"
                                 % (p, field.p))
            continue
        try:
            v = int(line)
        except ValueError:
            raise ParseError("line %d: bad element %r" % (lineno, line))
        if not 0 <= v < p:
            raise ParseError("line %d: element %d out of range [0,%d)"
                             % (lineno, v, p))
        if elems and v <= elems[-1]:
            raise ParseError("line %d: elements must be strictly increasing"
                             % lineno)
        elems.append(v)
    if p is None:
        raise ParseError("missing p=<modulus> header")
    return p, elems


def read_set_file(path: str, field: PrimeField | None = None) -> FSet:
    from .field import make_field
    with open(path) as fh:
        p, elems = parse_set_text(fh.read(), field)
    f = field if field is not None else make_field(p)
    return FSet.from_elements(f, elems)
