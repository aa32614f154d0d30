"""Tables for functions g, h : F_p^* -> F_p^* and the image f(A,B).

The two-variable maps under study all have the shape

    f(a, b) = g(a) * (h(a) + b),

so a function is just a flat value table over F_p^* (index 0 unused).  The
key structural quantity is the multiplicity mu(g): the largest fiber size
max_x |g^{-1}(x)|, optionally restricted to a domain set.  Constructors
reject any table that would take the value 0 on F_p^*.
"""

from __future__ import annotations

import numpy as np

from .errors import (BadParams, FieldMismatch, ParseError, ZeroInA,
                     ZeroInCodomain)
from .field import PrimeField
from .rng import CounterRng
from .sets import FSet


class FnTable:
    """A function F_p^* -> F_p^* as a flat lookup table."""

    __slots__ = ("field", "values", "label")

    def __init__(self, field: PrimeField, values: np.ndarray, label: str = ""):
        p = field.p
        if len(values) != p:
            raise BadParams("value table must have length p (index 0 unused)")
        vals = np.asarray(values, dtype=np.int64) % p
        if (vals[1:] == 0).any():
            raise ZeroInCodomain("function takes value 0 on F_p^*")
        vals[0] = 0  # unused slot, normalized for equality checks
        self.field = field
        self.values = vals
        self.values.flags.writeable = False
        self.label = label

    def __call__(self, x: int) -> int:
        x %= self.field.p
        if x == 0:
            raise BadParams("function tables are defined on F_p^* only")
        return int(self.values[x])

    def __eq__(self, other) -> bool:
        return (isinstance(other, FnTable) and self.field == other.field
                and bool(np.array_equal(self.values, other.values)))

    def __hash__(self) -> int:
        return hash((self.field, self.values.tobytes()))

    def __repr__(self) -> str:
        return "FnTable(p=%d, %s)" % (self.field.p, self.label or "custom")


def make_fn(field: PrimeField, kind: str, *, c: int | None = None,
            k: int | None = None, u: int | None = None, v: int | None = None,
            seed: int | None = None, table: np.ndarray | None = None,
            instance_id: str | int | None = None) -> FnTable:
    """Build a function table.

    kind: const (c), identity, power (k), affine (u, v), random (seed),
    table (explicit values indexed 1..p-1 or 0..p-1).
    """
    p = field.p
    xs = np.arange(p, dtype=np.int64)
    if kind == "const":
        if c is None:
            raise BadParams("const needs c")
        if c % p == 0:
            raise ZeroInCodomain("const 0 is not a map into F_p^*")
        vals = np.full(p, c % p, dtype=np.int64)
        label = "const:%d" % (c % p)
    elif kind == "identity":
        vals = xs.copy()
        label = "id"
    elif kind == "power":
        if k is None:
            raise BadParams("power needs k")
        # x^k on F_p^*; negative k acts through the group, via exponent
        # reduction mod p-1.
        e = k % (p - 1)
        vals = np.ones(p, dtype=np.int64)
        base = xs.copy()
        ee = e
        while ee:
            if ee & 1:
                vals = vals * base % p
            base = base * base % p
            ee >>= 1
        label = "power:%d" % k
    elif kind == "affine":
        if u is None or v is None:
            raise BadParams("affine needs u and v")
        vals = (u * xs + v) % p
        label = "affine:%d,%d" % (u % p, v % p)
    elif kind == "random":
        if seed is None:
            raise BadParams("random needs seed")
        rng = CounterRng(seed, instance_id if instance_id is not None
                         else "fn:p=%d" % p)
        vals = np.zeros(p, dtype=np.int64)
        vals[1:] = rng.integers(1, p, p - 1)
        label = "random:%d" % seed
    elif kind == "table":
        if table is None:
            raise BadParams("table kind needs values")
        arr = np.asarray(table, dtype=np.int64)
        if len(arr) == p - 1:
            vals = np.zeros(p, dtype=np.int64)
            vals[1:] = arr
        elif len(arr) == p:
            vals = arr
        else:
            raise BadParams("table must list p-1 (or p) values")
        label = "table"
    else:
        raise BadParams("unknown function kind %r" % kind)
    return FnTable(field, vals, label)


def parse_fn_spec(field: PrimeField, spec: str,
                  instance_id: str | int | None = None) -> FnTable:
    """Parse the compact spec grammar used by the CLI and sweep configs:
    const:<c> | id | power:<k> | affine:<u>,<v> | random:<seed> | file:<path>.
    """
    spec = spec.strip()
    try:
        if spec == "id":
            return make_fn(field, "identity")
        if spec.startswith("const:"):
            return make_fn(field, "const", c=int(spec[6:]))
        if spec.startswith("power:"):
            return make_fn(field, "power", k=int(spec[6:]))
        if spec.startswith("affine:"):
            u_s, v_s = spec[7:].split(",")
            return make_fn(field, "affine", u=int(u_s), v=int(v_s))
        if spec.startswith("random:"):
            return make_fn(field, "random", seed=int(spec[7:]),
                           instance_id=instance_id)
        if spec.startswith("file:"):
            return read_fn_file(spec[5:], field)
    except (ValueError, BadParams) as exc:
        raise ParseError("bad function spec %r: %s" % (spec, exc))
    raise ParseError("bad function spec %r" % spec)


def write_fn_file(path: str, fn: FnTable) -> None:
    lines = ["p=%d" % fn.field.p]
    lines += [str(v) for v in fn.values[1:].tolist()]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_fn_file(path: str, field: PrimeField) -> FnTable:
    with open(path) as fh:
        text = fh.read()
    p = None
    vals: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if p is None:
            if not line.startswith("p="):
                raise ParseError("line %d: expected p=<modulus> header" % lineno)
            p = int(line[2:])
            if p != field.p:
                raise ParseError("function file modulus %d != %d" % (p, field.p))
            continue
        try:
            vals.append(int(line))
        except ValueError:
            raise ParseError("line %d: bad value %r" % (lineno, line))
    if p is None:
        raise ParseError("missing p=<modulus> header")
    if len(vals) != field.p - 1:
        raise ParseError("expected %d values, got %d" % (field.p - 1, len(vals)))
    return make_fn(field, "table", table=np.array(vals, dtype=np.int64))


def mu(fn: FnTable, domain: FSet | None = None) -> int:
    """Largest fiber size of fn over the domain (default all of F_p^*)."""
    p = fn.field.p
    if domain is None:
        dom = np.arange(1, p, dtype=np.int64)
    else:
        if domain.field != fn.field:
            raise FieldMismatch("domain over a different field")
        dom = domain.elements()
        dom = dom[dom > 0]
    if len(dom) == 0:
        return 0
    return int(np.bincount(fn.values[dom], minlength=p).max())


def pointwise_product(g: FnTable, h: FnTable) -> FnTable:
    """(g*h)(x) = g(x)h(x); stays inside F_p^* automatically."""
    if g.field != h.field:
        raise FieldMismatch("tables over different fields")
    vals = g.values * h.values % g.field.p
    lab = "(%s)*(%s)" % (g.label or "?", h.label or "?")
    return FnTable(g.field, vals, lab)


def f_image(g: FnTable, h: FnTable, a: FSet, b: FSet) -> FSet:
    """The image set f(A,B) = {g(a)(h(a)+b) : a in A, b in B}.

    A must avoid 0 (tables are defined on F_p^* only); B must too, per the
    maps under study, though values g(a)(h(a)+b) may legitimately be 0 when
    b = -h(a), and those values are kept.
    """
    if g.field != h.field or g.field != a.field or a.field != b.field:
        raise FieldMismatch("mixed fields in f_image")
    if not a.is_zero_free:
        raise ZeroInA("0 in A")
    if not b.is_zero_free:
        raise BadParams("0 in B; the maps need B inside F_p^*")
    p = a.field.p
    ae, be = a.elements(), b.elements()
    mask = np.zeros(p, dtype=bool)
    if len(ae) and len(be):
        ga = g.values[ae]
        ha = h.values[ae]
        vals = ga[:, None] * ((ha[:, None] + be[None, :]) % p) % p
        mask[vals.ravel()] = True
    return FSet(a.field, mask)
