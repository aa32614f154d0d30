"""Deterministic experiment sweeps over instance grids.

A sweep walks the cartesian grid primes x families x size-triples x seeds
x (g, h) specs in declaration order, runs the requested verification
chains and theorem ratio rows on every instance, and returns one report
dict.  Two hard requirements shape the code:

  * Rerunning the same config must produce a byte-identical report, and
    the worker count must not matter.  All randomness is CounterRng keyed
    by the instance coordinates, instances are enumerated in a fixed
    order, workers only ever map that list (multiprocessing map preserves
    order), and aggregates are computed once in the parent.  Wall-clock
    data lives in a separate envelope ("meta") around the report.
  * A failed EXACT check must be loud: the report carries a failure count
    and the offending check rows; callers turn that into exit status 1.

Set construction per family avoids 0 by design (the maps under study live
on F_p^*): intervals are drawn inside [1, p-1], arithmetic progressions
are a dilated zero-free interval, geometric progressions never contain 0,
subgroup orders snap down to the largest divisor of p-1 within the
requested size, and random sets sample [1, p-1] directly.
"""

from __future__ import annotations

import json
import statistics
import time
from fractions import Fraction
from multiprocessing import Pool

from .errors import BadParams, ConfigError
from .field import make_field
from .functions import parse_fn_spec
from .incidence import COLLINEAR_CAP, TRIPLES_CAP
from .rng import CounterRng
from .sets import generate, subgroup_orders
from .verify import (CSV_HEADER, THEOREMS, ThmInstance, composite_N_check,
                     eplus_chain, lemma_chain_check, phi_chain, theorem_ratio)

CHAIN_NAMES = ("lemma", "composite", "eplus", "phi")
_GP_RETRIES = 64


class SweepConfig:
    """Validated sweep description.  See from_dict for the key set."""

    __slots__ = ("primes", "families", "sizes", "seeds", "g_specs",
                 "h_specs", "kinds", "chains", "theorems", "k", "eps",
                 "triples_cap", "collinear_cap")

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        """Parse and validate a config dict (usually loaded from JSON).

        Required: primes, families, sizes (list of [na, nb, nc] with
        na <= nb), seeds.  Optional: g, h (function spec lists, default
        identity and const 1), kinds (default ["sum"]), chains (default
        ["lemma"]), theorems (default []), k ("auto" or an integer level),
        eps (float or "num/den" string, phi chain only), triples_cap,
        collinear_cap.
        """
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        known = {"primes", "families", "sizes", "seeds", "g", "h", "kinds",
                 "chains", "theorems", "k", "eps", "triples_cap",
                 "collinear_cap"}
        extra = set(raw) - known
        if extra:
            raise ConfigError("unknown config keys: %s"
                              % ", ".join(sorted(extra)))
        cfg = cls()

        def want_list(key, default=None):
            if key not in raw:
                if default is None:
                    raise ConfigError("missing required key %r" % key)
                return list(default)
            val = raw[key]
            if not isinstance(val, list) or not val:
                raise ConfigError("%r must be a nonempty list" % key)
            return val

        cfg.primes = want_list("primes")
        for p in cfg.primes:
            if not isinstance(p, int) or p < 3:
                raise ConfigError("bad prime %r" % (p,))
        cfg.families = want_list("families")
        for fam in cfg.families:
            if fam not in ("interval", "ap", "gp", "mul_subgroup", "random"):
                raise ConfigError("unknown family %r" % (fam,))
        cfg.sizes = []
        for triple in want_list("sizes"):
            if (not isinstance(triple, (list, tuple)) or len(triple) != 3
                    or not all(isinstance(v, int) and v >= 1
                               for v in triple)):
                raise ConfigError("sizes entries must be [na, nb, nc] of "
                                  "positive ints, got %r" % (triple,))
            na, nb, nc = triple
            if na > nb:
                raise ConfigError("size triple %r needs na <= nb"
                                  % (triple,))
            for p in cfg.primes:
                if max(triple) > p - 1:
                    raise ConfigError("size triple %r does not fit in "
                                      "F_%d^*" % (triple, p))
            cfg.sizes.append((na, nb, nc))
        cfg.seeds = want_list("seeds")
        for s in cfg.seeds:
            if not isinstance(s, int) or s < 0:
                raise ConfigError("bad seed %r" % (s,))
        cfg.g_specs = [str(s) for s in want_list("g", ["id"])]
        cfg.h_specs = [str(s) for s in want_list("h", ["const:1"])]
        cfg.kinds = [str(s) for s in want_list("kinds", ["sum"])]
        for kd in cfg.kinds:
            if kd not in ("sum", "prod"):
                raise ConfigError("unknown kind %r" % (kd,))
        cfg.chains = [str(s) for s in want_list("chains", ["lemma"])]
        for ch in cfg.chains:
            if ch not in CHAIN_NAMES:
                raise ConfigError("unknown chain %r (have %s)"
                                  % (ch, "/".join(CHAIN_NAMES)))
        cfg.theorems = [str(s) for s in raw.get("theorems", [])]
        for tid in cfg.theorems:
            if tid not in THEOREMS:
                raise ConfigError("unknown theorem id %r" % (tid,))
        k = raw.get("k", "auto")
        if k != "auto" and (not isinstance(k, int) or k < 1):
            raise ConfigError("k must be \"auto\" or an integer >= 1")
        cfg.k = k
        eps = raw.get("eps")
        if eps is not None and not isinstance(eps, (int, float, str)):
            raise ConfigError("eps must be a number or \"num/den\" string")
        cfg.eps = eps
        cfg.triples_cap = raw.get("triples_cap", TRIPLES_CAP)
        cfg.collinear_cap = raw.get("collinear_cap", COLLINEAR_CAP)
        for nm in ("triples_cap", "collinear_cap"):
            v = getattr(cfg, nm)
            if not isinstance(v, int) or v < 1:
                raise ConfigError("%s must be a positive integer" % nm)
        if "phi" in cfg.chains:
            for _, nb, nc in cfg.sizes:
                if nb > 100 or nc > 100:
                    raise ConfigError("phi chain needs |B|, |C| <= 100")
        return cfg

    def to_dict(self) -> dict:
        return {"primes": list(self.primes),
                "families": list(self.families),
                "sizes": [list(t) for t in self.sizes],
                "seeds": list(self.seeds),
                "g": list(self.g_specs), "h": list(self.h_specs),
                "kinds": list(self.kinds), "chains": list(self.chains),
                "theorems": list(self.theorems), "k": self.k,
                "eps": self.eps, "triples_cap": self.triples_cap,
                "collinear_cap": self.collinear_cap}

    def descriptors(self) -> list:
        """The instance grid, in fixed declaration order."""
        out = []
        for p in self.primes:
            for fam in self.families:
                for triple in self.sizes:
                    for seed in self.seeds:
                        for gs in self.g_specs:
                            for hs in self.h_specs:
                                out.append((p, fam, triple, seed, gs, hs))
        return out


def _parse_eps(eps):
    if eps is None:
        return None
    if isinstance(eps, str) and "/" in eps:
        return Fraction(eps)
    return float(eps)


def _descriptor_id(desc) -> str:
    p, fam, (na, nb, nc), seed, gs, hs = desc
    return "p=%d|%s|na=%d,nb=%d,nc=%d|seed=%d|g=%s|h=%s" % (
        p, fam, na, nb, nc, seed, gs, hs)


def build_instance_sets(field, family: str, na: int, nb: int, nc: int,
                        seed: int) -> dict:
    """Four zero-free sets A, B, C, D for one grid point (|D| = |C|).

    All draws come from one CounterRng keyed by (p, family, sizes, seed),
    consumed in a fixed order, so the instance is a pure function of its
    coordinates.
    """
    p = field.p
    rng = CounterRng(seed, "sweep|%d|%s|%d-%d-%d" % (p, family, na, nb, nc))
    out = {}
    for name, n in (("A", na), ("B", nb), ("C", nc), ("D", nc)):
        if family == "interval":
            start = 1 + int(rng.below(p - n))
            out[name] = generate(field, "interval", start=start, size=n,
                                 zero_free=True)
        elif family == "ap":
            # a zero-free interval dilated by a nonzero step
            step = 1 + int(rng.below(p - 1))
            j = 1 + int(rng.below(p - n))
            out[name] = generate(field, "ap", start=step * j % p, step=step,
                                 size=n, zero_free=True)
        elif family == "gp":
            start = 1 + int(rng.below(p - 1))
            made = None
            for _ in range(_GP_RETRIES):
                ratio = 2 + int(rng.below(p - 2))
                try:
                    made = generate(field, "gp", start=start, ratio=ratio,
                                    size=n, zero_free=True)
                    break
                except BadParams:
                    continue  # ratio order too small; redraw
            if made is None:
                raise ConfigError("no gp ratio of order >= %d found in F_%d"
                                  % (n, p))
            out[name] = made
        elif family == "mul_subgroup":
            order = max(o for o in subgroup_orders(field) if o <= n)
            out[name] = generate(field, "mul_subgroup", order=order)
        else:  # random
            out[name] = generate(field, "random", size=n, seed=seed,
                                 instance_id="sweep|%s|%d|%s|%d-%d-%d"
                                 % (name, p, family, na, nb, nc),
                                 zero_free=True)
    return out


def _instance_payload(cfg: SweepConfig, desc) -> dict:
    """Chains and ratio rows for one grid point; no timing inside."""
    p, fam, (na, nb, nc), seed, gs, hs = desc
    field = make_field(p)
    sets = build_instance_sets(field, fam, na, nb, nc, seed)
    a, b, c, d = sets["A"], sets["B"], sets["C"], sets["D"]
    g = parse_fn_spec(field, gs)
    h = parse_fn_spec(field, hs)
    ident = _descriptor_id(desc)
    chains = []
    for ch in cfg.chains:
        if ch == "lemma":
            for kind in cfg.kinds:
                rep = lemma_chain_check(a, b, c, g, h, kind, k=cfg.k,
                                        triples_cap=cfg.triples_cap,
                                        collinear_cap=cfg.collinear_cap)
                entry = rep.to_dict()
                entry["chain"] = "lemma:%s" % kind
                entry["id"] = ident
                chains.append(entry)
        elif ch == "composite":
            rep = composite_N_check(b, c)
            entry = rep.to_dict()
            entry["chain"] = "composite"
            entry["id"] = ident
            chains.append(entry)
        elif ch == "eplus":
            rep = eplus_chain(a, b, c, g, h, cap=cfg.triples_cap)
            entry = rep.to_dict()
            entry["chain"] = "eplus"
            entry["id"] = ident
            chains.append(entry)
        else:  # phi
            rep = phi_chain(b, c, eps=_parse_eps(cfg.eps))
            entry = rep.to_dict()
            entry["chain"] = "phi"
            entry["id"] = ident
            chains.append(entry)
    rows = []
    inst = ThmInstance(a=a, b=b, c=c, d=d, g=g, h=h, family=fam, seed=seed)
    for tid in cfg.theorems:
        rows.append(theorem_ratio(tid, inst).to_dict())
    return {"id": ident, "chains": chains, "rows": rows}


_WORKER_CFG = None


def _init_worker(cfg_json: str) -> None:
    global _WORKER_CFG
    _WORKER_CFG = SweepConfig.from_dict(json.loads(cfg_json))


def _run_one(desc) -> dict:
    return _instance_payload(_WORKER_CFG, desc)


def _aggregate(rows: list) -> dict:
    per = {}
    for row in rows:
        per.setdefault(row["theorem"], []).append(row)
    out = {}
    for tid in sorted(per):
        group = per[tid]
        ratios = [r["ratio"] for r in group]
        out[tid] = {
            "count": len(group),
            "min_ratio": min(ratios),
            "median_ratio": statistics.median(ratios),
            "max_ratio": max(ratios),
            "n_hyp_ok": sum(1 for r in group if r["hyp_ok"]),
            "n_exact_fail": sum(1 for r in group
                                if r.get("exact_pass") is False),
        }
    return out


def run_sweep(config, workers: int = 1) -> dict:
    """Run the grid and return {"meta": ..., "report": ...}.

    The report half is a pure function of the config; meta carries
    wall-clock and worker count and is excluded from byte comparisons.
    """
    cfg = config if isinstance(config, SweepConfig) \
        else SweepConfig.from_dict(config)
    if not isinstance(workers, int) or workers < 1:
        raise ConfigError("workers must be a positive integer")
    t0 = time.perf_counter()
    descs = cfg.descriptors()
    if workers == 1 or len(descs) <= 1:
        payloads = [_instance_payload(cfg, d) for d in descs]
    else:
        cfg_json = json.dumps(cfg.to_dict(), sort_keys=True)
        with Pool(processes=min(workers, len(descs)),
                  initializer=_init_worker, initargs=(cfg_json,)) as pool:
            payloads = pool.map(_run_one, descs, chunksize=1)
    chains = []
    rows = []
    for pay in payloads:
        chains.extend(pay["chains"])
        rows.extend(pay["rows"])
    failures = []
    for entry in chains:
        for chk in entry["checks"]:
            if not chk["passed"]:
                failures.append({"id": entry["id"],
                                 "chain": entry["chain"],
                                 "check": chk["name"]})
    for row in rows:
        if row.get("exact_pass") is False:
            failures.append({"id": "%s|p=%d|seed=%d"
                             % (row["theorem"], row["p"], row["seed"]),
                             "chain": "theorem",
                             "check": row["theorem"]})
    report = {
        "config": cfg.to_dict(),
        "chains": chains,
        "rows": rows,
        "aggregates": _aggregate(rows),
        "failures": failures,
        "n_failures": len(failures),
    }
    meta = {
        "elapsed_s": time.perf_counter() - t0,
        "workers": workers,
        "n_instances": len(descs),
    }
    return {"meta": meta, "report": report}


def report_json(result: dict) -> str:
    """Canonical serialization; identical configs give identical bytes."""
    return json.dumps(result, sort_keys=True, indent=1)


def rows_csv(rows: list) -> str:
    """The ratio rows as CSV, one line per row dict, fixed column order."""
    lines = [CSV_HEADER]
    for row in rows:
        lines.append("%s,%d,%s,%d,%d,%d,%d,%d,%d,%d,%.10g,%.10g,%s" % (
            row["theorem"], row["p"], row["family"], row["seed"],
            row["na"], row["nb"], row["nc"], row["nd"], row["m"],
            row["lhs"], row["rhs"], row["ratio"],
            "true" if row["hyp_ok"] else "false"))
    return "\n".join(lines) + "\n"


def load_config_file(path: str) -> SweepConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ConfigError("config %s is not valid JSON: %s" % (path, exc))
    return SweepConfig.from_dict(raw)
