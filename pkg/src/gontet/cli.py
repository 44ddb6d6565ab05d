"""Command-line front end: single evaluations, bulk tables with a persistent
cache, identity-verification suites, and benchmarks.

Every big value is printed as a decimal string; native JSON numbers are
reserved for floats, counts and exit diagnostics.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import statistics
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import gon as gon_mod
from . import hilbert as hilbert_mod
from . import identities as ident_mod
from . import quantum as quantum_mod
from . import spinnet as spinnet_mod
from . import tet as tet_mod
from .exactnum import LaurentPoly, RootOfUnity, Surd
from .triples import (
    NotAdmissible,
    canonical_tet,
    fusion_range,
    is_admissible_tet,
    is_admissible_triple,
    tet_faces,
)

CACHE_MAGIC = b"GTC1"
CACHE_VERSION = 1


# ---------------------------------------------------------------------------
# seeded generators shared by the verify suites and the test suite
# ---------------------------------------------------------------------------

def random_admissible_triple(rng: random.Random, max_label: int) -> tuple[int, int, int]:
    while True:
        a = rng.randint(0, max_label)
        b = rng.randint(0, max_label)
        choices = [c for c in fusion_range(a, b) if c <= max_label]
        if choices:
            return a, b, rng.choice(choices)


def random_admissible_tet(rng: random.Random, max_label: int):
    while True:
        a, b, c = random_admissible_triple(rng, max_label)
        e = rng.randint(0, max_label)
        fs = [f for f in fusion_range(a, e) if f <= max_label]
        if not fs:
            continue
        f = rng.choice(fs)
        ds = [d for d in fusion_range(b, f) if d <= max_label
              and is_admissible_triple(c, d, e)]
        if ds:
            d = rng.choice(ds)
            t = ((a, b, c), (d, e, f))
            assert is_admissible_tet(t)
            return t


def random_bipyramid(rng: random.Random, max_label: int):
    """Labels (a..k) with ((a,b,c),(d,e,f)) and ((a,b,c),(g,h,k)) admissible."""
    while True:
        (a, b, c), (d, e, f) = random_admissible_tet(rng, max_label)
        h = rng.randint(0, max_label)
        gs = [g for g in fusion_range(c, h) if g <= max_label]
        if not gs:
            continue
        g = rng.choice(gs)
        ks = [k for k in fusion_range(b, g) if k <= max_label
              and is_admissible_triple(a, h, k)]
        if ks:
            k = rng.choice(ks)
            return (a, b, c, d, e, f, g, h, k)


def random_biunit_instance(rng: random.Random, max_label: int):
    """(a,c,d,e,f) with the fixed faces admissible and a nonempty b-range."""
    while True:
        a, e, f = random_admissible_triple(rng, max_label)
        c = rng.randint(0, max_label)
        ds = [d for d in fusion_range(c, e) if d <= max_label]
        if not ds:
            continue
        d = rng.choice(ds)
        if set(fusion_range(a, c)) & set(fusion_range(d, f)):
            return a, c, d, e, f


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def suite_duality(max_label: int, seed: int, count: int):
    rng = random.Random(seed)
    passed = failed = 0
    for _ in range(count):
        q = [rng.randint(0, max_label) for _ in range(4)]
        if ident_mod.verify_duality(*q).equal:
            passed += 1
        else:
            failed += 1
    return passed, failed


def suite_duality_exhaustive(max_label: int):
    passed = failed = 0
    for a in range(max_label + 1):
        for b in range(a, max_label + 1):
            for c in range(b, max_label + 1):
                for d in range(c, max_label + 1):
                    if ident_mod.verify_duality(a, b, c, d).equal:
                        passed += 1
                    else:
                        failed += 1
    return passed, failed


def _admissible_triples_upto(max_label: int):
    for a in range(max_label + 1):
        for b in range(a, max_label + 1):
            for c in range(b, min(a + b, max_label) + 1):
                if (a + b + c) % 2 == 0:
                    yield a, b, c


def suite_pascal(max_label: int):
    passed = failed = 0
    for a, b, c in _admissible_triples_upto(max_label):
        s = (a + b + c) // 2
        lhs = (gon_mod.gon3(a - 1, b, c - 1) + gon_mod.gon3(a - 1, b - 1, c)
               + gon_mod.gon3(a, b - 1, c - 1))
        if Fraction(lhs) == Fraction(s, s + 1) * gon_mod.gon3(a, b, c):
            passed += 1
        else:
            failed += 1
    return passed, failed


def suite_beta(max_label: int):
    passed = failed = 0
    for a, b, c in _admissible_triples_upto(max_label):
        s = (a + b + c) // 2
        lhs = (Fraction(1, gon_mod.gon3(a + 1, b, c + 1))
               + Fraction(1, gon_mod.gon3(a + 1, b + 1, c))
               + Fraction(1, gon_mod.gon3(a, b + 1, c + 1)))
        if lhs == Fraction(s + 3, s + 2) / gon_mod.gon3(a, b, c):
            passed += 1
        else:
            failed += 1
    return passed, failed


def suite_divisibility(max_label: int):
    passed = failed = 0
    for a, b, c in _admissible_triples_upto(max_label):
        g = gon_mod.gon3(a, b, c)
        if g % (a + 1) == 0 and g % (b + 1) == 0 and g % (c + 1) == 0:
            passed += 1
        else:
            failed += 1
    return passed, failed


def suite_regge(max_label: int, seed: int, count: int):
    rng = random.Random(seed)
    passed = failed = 0
    for _ in range(count):
        t = random_admissible_tet(rng, max_label)
        v = tet_mod.tet(t)
        if all(tet_mod.tet(im) == v for im in tet_mod.regge_images(t)):
            passed += 1
        else:
            failed += 1
    return passed, failed


def suite_tet_orbit(max_label: int, seed: int, count: int):
    from .triples import tet_images
    rng = random.Random(seed)
    passed = failed = 0
    for _ in range(count):
        t = random_admissible_tet(rng, max_label)
        v = tet_mod.tet(t)
        if all(tet_mod.tet(im) == v for im in tet_images(t)):
            passed += 1
        else:
            failed += 1
    return passed, failed


def suite_biunit(max_label: int, seed: int, count: int):
    rng = random.Random(seed)
    passed = failed = 0
    for _ in range(count):
        inst = random_biunit_instance(rng, max_label)
        if tet_mod.biunitarity_sum(inst, "b") == 1:
            passed += 1
        else:
            failed += 1
    return passed, failed


def suite_pentagon(max_label: int, seed: int, count: int):
    rng = random.Random(seed)
    passed = failed = 0
    for _ in range(count):
        bp = random_bipyramid(rng, max_label)
        if Fraction(ident_mod.hed1(bp)) == ident_mod.hed2(bp):
            passed += 1
        else:
            failed += 1
    return passed, failed


def suite_barycentric(max_label: int, seed: int, count: int):
    rng = random.Random(seed)
    passed = failed = 0
    for _ in range(count):
        t = random_admissible_tet(rng, max_label)
        target = tet_mod.tet(t)
        dmax = ident_mod.barycentric_stable_delta(t)
        ok = all(
            ident_mod.barycentric_P(t, d) == Fraction(target * (d + 1) ** 2)
            for d in range(dmax + 3)
        )
        if ok:
            passed += 1
        else:
            failed += 1
    return passed, failed


def suite_q_duality(max_label: int, seed: int, count: int, kappa: int | None):
    rng = random.Random(seed)
    root = RootOfUnity(kappa) if kappa else None
    passed = failed = 0
    for _ in range(count):
        q = [rng.randint(0, max_label) for _ in range(4)]
        if quantum_mod.verify_q_duality(*q, root).equal:
            passed += 1
        else:
            failed += 1
    return passed, failed


def suite_q_classical_limit(max_label: int, seed: int, count: int):
    rng = random.Random(seed)
    passed = failed = 0
    for _ in range(count):
        t = random_admissible_tet(rng, max_label)
        if quantum_mod.tet_q(t).at_one() == tet_mod.tet(t):
            passed += 1
        else:
            failed += 1
    return passed, failed


def suite_q_pentagon(max_label: int, seed: int, count: int, kappa: int | None):
    rng = random.Random(seed)
    root = RootOfUnity(kappa) if kappa else None
    passed = failed = 0
    done = 0
    while done < count:
        bp = random_bipyramid(rng, max_label)
        if root is not None:
            a, b, c, d, e, f, g, h, k = bp
            tets = [((a, b, c), (d, e, f)), ((a, b, c), (g, h, k))]
            from .triples import is_q_admissible_tet
            if not all(is_q_admissible_tet(t, root) for t in tets):
                continue
        if quantum_mod.verify_q_pentagon(bp, root).equal:
            passed += 1
        else:
            failed += 1
        done += 1
    return passed, failed


VERIFY_SUITES = {
    "duality": lambda a: suite_duality(a.max, a.seed, a.count),
    "duality-exhaustive": lambda a: suite_duality_exhaustive(a.max),
    "pascal": lambda a: suite_pascal(a.max),
    "beta": lambda a: suite_beta(a.max),
    "divisibility": lambda a: suite_divisibility(a.max),
    "regge": lambda a: suite_regge(a.max, a.seed, a.count),
    "tet-orbit": lambda a: suite_tet_orbit(a.max, a.seed, a.count),
    "biunit": lambda a: suite_biunit(a.max, a.seed, a.count),
    "pentagon": lambda a: suite_pentagon(a.max, a.seed, a.count),
    "barycentric": lambda a: suite_barycentric(a.max, a.seed, a.count),
}

VERIFY_Q_SUITES = {
    "duality": lambda a: suite_q_duality(a.max, a.seed, a.count, a.kappa),
    "classical-limit": lambda a: suite_q_classical_limit(a.max, a.seed, a.count),
    "pentagon": lambda a: suite_q_pentagon(a.max, a.seed, a.count, a.kappa),
}


# ---------------------------------------------------------------------------
# cache file
# ---------------------------------------------------------------------------

def load_cache(path: str, kind: str) -> dict[str, str]:
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except FileNotFoundError:
        return {}
    if not blob.startswith(CACHE_MAGIC):
        return {}
    off = len(CACHE_MAGIC)
    hlen = int.from_bytes(blob[off:off + 4], "big")
    off += 4
    try:
        header = json.loads(blob[off:off + hlen])
    except ValueError:
        return {}
    off += hlen
    if header.get("version") != CACHE_VERSION or header.get("kind") != kind:
        return {}
    out = {}
    while off < len(blob):
        rlen = int.from_bytes(blob[off:off + 4], "big")
        off += 4
        key, value = json.loads(blob[off:off + rlen])
        out[key] = value
        off += rlen
    return out


def save_cache(path: str, kind: str, data: dict[str, str]) -> None:
    header = json.dumps({"version": CACHE_VERSION, "kind": kind},
                        sort_keys=True).encode()
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(os.path.abspath(path)) or ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(CACHE_MAGIC)
            fh.write(len(header).to_bytes(4, "big"))
            fh.write(header)
            for key in sorted(data):
                rec = json.dumps([key, data[key]]).encode()
                fh.write(len(rec).to_bytes(4, "big"))
                fh.write(rec)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# table generation
# ---------------------------------------------------------------------------

def table_inputs(verb: str, args) -> list[str]:
    """Canonical keys, sorted; the key alone determines the value."""
    keys: list[str] = []
    if verb == "gon":
        keys = [f"{a},{b},{c}" for a, b, c in _admissible_triples_upto(args.max)]
    elif verb == "tet-regular":
        keys = [str(2 * n) for n in range(args.n_max + 1)]
    elif verb in ("tet", "sixj"):
        seen = set()
        m = args.max
        for a in range(m + 1):
            for b in range(m + 1):
                for c in fusion_range(a, b):
                    if c > m:
                        break
                    for e in range(m + 1):
                        for f in fusion_range(a, e):
                            if f > m:
                                break
                            for d in fusion_range(b, f):
                                if d > m:
                                    break
                                if not is_admissible_triple(c, d, e):
                                    continue
                                t = canonical_tet(((a, b, c), (d, e, f)))
                                if t not in seen:
                                    seen.add(t)
                                    (x1, x2, x3), (x4, x5, x6) = t
                                    keys.append(f"{x1},{x2},{x3},{x4},{x5},{x6}")
    else:
        raise ValueError(f"no table for verb {verb!r}")
    return sorted(keys)


def table_value(verb: str, key: str) -> str:
    parts = [int(x) for x in key.split(",")]
    if verb == "gon":
        return str(gon_mod.gon3(*parts))
    if verb == "tet-regular":
        return str(tet_mod.tet_regular(parts[0]))
    if verb == "tet":
        return str(tet_mod.tet((tuple(parts[:3]), tuple(parts[3:]))))
    if verb == "sixj":
        s = tet_mod.sixj((tuple(parts[:3]), tuple(parts[3:])))
        return f"{s.coeff}|{s.radicand}"
    raise ValueError(verb)


def _table_batch(job) -> list[tuple[str, str]]:
    verb, keys = job
    return [(k, table_value(verb, k)) for k in keys]


def run_table(verb: str, args, out) -> int:
    keys = table_inputs(verb, args)
    cache: dict[str, str] = {}
    if args.cache:
        cache = load_cache(args.cache, verb)
    todo = [k for k in keys if k not in cache]
    if todo:
        if args.jobs and args.jobs > 1:
            chunk = max(1, len(todo) // (args.jobs * 8))
            jobs = [(verb, todo[i:i + chunk]) for i in range(0, len(todo), chunk)]
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                for batch in ex.map(_table_batch, jobs):
                    cache.update(batch)
        else:
            cache.update(_table_batch((verb, todo)))
    if args.cache:
        save_cache(args.cache, verb, {k: cache[k] for k in keys})
    for k in keys:
        record = {"key": k, "value": cache[k]}
        if args.format == "csv":
            print(f"{k.replace(',', ' ')},{cache[k]}", file=out)
        elif args.format == "plain":
            print(f"{k} {cache[k]}", file=out)
        else:
            print(json.dumps(record, sort_keys=True), file=out)
    return 0


# ---------------------------------------------------------------------------
# benchmarks
# ---------------------------------------------------------------------------

def run_bench(case: str, args, out) -> int:
    runs = args.runs
    if case == "tet-speed":
        t = ((50, 30, 76), (92, 48, 84))
        times = []
        value = None
        for _ in range(runs):
            t0 = time.perf_counter()
            value = tet_mod.tet(t)
            times.append((time.perf_counter() - t0) * 1e3)
        rec = {"case": case, "runs": runs,
               "median_ms": statistics.median(times), "value": str(value)}
    elif case == "gon-batch":
        keys = [f"{a},{b},{c}" for a, b, c in _admissible_triples_upto(args.max)]
        t0 = time.perf_counter()
        values = {k: table_value("gon", k) for k in keys}
        rec = {"case": case, "count": len(keys),
               "total_ms": (time.perf_counter() - t0) * 1e3,
               "first": values[keys[0]], "last": values[keys[-1]]}
    elif case == "sixj-batch":
        rng = random.Random(args.seed)
        tets = [random_admissible_tet(rng, args.max) for _ in range(args.count)]
        t0 = time.perf_counter()
        acc = 0
        for t in tets:
            acc ^= hash(tet_mod.sixj(t))
        total = time.perf_counter() - t0
        rec = {"case": case, "count": len(tets), "total_s": total,
               "per_call_ms": total / len(tets) * 1e3, "checksum": str(acc)}
    else:
        raise ValueError(f"unknown bench case {case!r}")
    print(json.dumps(rec, sort_keys=True), file=out)
    return 0


# ---------------------------------------------------------------------------
# value formatting
# ---------------------------------------------------------------------------

def _fmt(value):
    if isinstance(value, Surd):
        return value.to_json()
    if isinstance(value, LaurentPoly):
        return value.to_json()
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, float):
        return value
    return str(value)


def _emit(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(record, sort_keys=True), file=out)
    elif fmt == "csv":
        keys = sorted(record)
        print(",".join(keys), file=out)
        print(",".join(json.dumps(record[k]) if isinstance(record[k], (dict, list))
                       else str(record[k]) for k in keys), file=out)
    else:
        main = record.get("value", record)
        if isinstance(main, dict) and "coeff" in main:
            rad = int(main["radicand"])
            print(main["coeff"] if rad == 1 else f"{main['coeff']}*sqrt({rad})",
                  file=out)
        else:
            print(main if not isinstance(main, dict)
                  else json.dumps(main, sort_keys=True), file=out)


class DomainError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gontet",
        description="Exact spin-network symbols: gon, tet, 6j and their q-deformations",
    )
    ap.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    ap.add_argument("--kappa", type=int, default=None,
                    help="root-of-unity order for q verbs (q = exp(i pi/kappa))")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--strict", action="store_true",
                    help="exit 1 on non-admissible input instead of returning 0")
    ap.add_argument("--cache", default=None, help="table cache file")
    ap.add_argument("--jobs", type=int, default=1)
    sp = ap.add_subparsers(dest="verb", required=True)

    def labels(p, n, name="labels"):
        p.add_argument(name, type=int, nargs=n)

    labels(sp.add_parser("gon", help="gon of a triple or larger multiset"), "+")
    labels(sp.add_parser("theta-k"), 3)
    labels(sp.add_parser("clebsch0", help="special Clebsch-Gordan, integer spins"), 3)
    p = sp.add_parser("gon-asym")
    labels(p, 3)
    p.add_argument("-k", type=int, required=True)
    labels(sp.add_parser("tet"), 6)
    labels(sp.add_parser("tet-k"), 6)
    labels(sp.add_parser("tet-regular"), 1)
    labels(sp.add_parser("sixj"), 6)
    labels(sp.add_parser("regge"), 6)
    p = sp.add_parser("biunit")
    p.add_argument("--slot", choices=("b", "e"), required=True)
    labels(p, 5)
    labels(sp.add_parser("duality"), 4)
    labels(sp.add_parser("hed"), 9)
    p = sp.add_parser("barycentric")
    labels(p, 6)
    p.add_argument("--delta", type=int, required=True)
    labels(sp.add_parser("cube"), 12)
    labels(sp.add_parser("dyson-ct"), 3)
    p = sp.add_parser("hilbert-inv")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int, nargs="?", default=0)
    p = sp.add_parser("hilbert-trace")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int, nargs="?", default=0)
    labels(sp.add_parser("hilbert-rowsum"), 3)
    labels(sp.add_parser("gon-q"), "+")
    labels(sp.add_parser("tet-q"), 6)
    labels(sp.add_parser("sixj-q"), 6)
    p = sp.add_parser("verify")
    p.add_argument("suite", choices=sorted(VERIFY_SUITES))
    p.add_argument("--max", type=int, default=20)
    p.add_argument("--count", type=int, default=100)
    p = sp.add_parser("verify-q")
    p.add_argument("suite", choices=sorted(VERIFY_Q_SUITES))
    p.add_argument("--max", type=int, default=8)
    p.add_argument("--count", type=int, default=25)
    p = sp.add_parser("spinnet")
    p.add_argument("--graph", choices=("loop", "theta", "tetra"), required=True)
    p.add_argument("--prescription", choices=("Z", "P", "K", "U"), required=True)
    labels(p, "+")
    p = sp.add_parser("table")
    p.add_argument("what", choices=("gon", "tet", "tet-regular", "sixj"))
    p.add_argument("--max", type=int, default=6)
    p.add_argument("--n-max", type=int, default=6)
    p = sp.add_parser("bench")
    p.add_argument("case", choices=("tet-speed", "gon-batch", "sixj-batch"))
    p.add_argument("--runs", type=int, default=25)
    p.add_argument("--max", type=int, default=40)
    p.add_argument("--count", type=int, default=1000)
    return ap


def _require_admissible(args, ok: bool):
    if args.strict and not ok:
        raise DomainError("input is not admissible")


def _dispatch(args, out) -> int:
    verb = args.verb
    root = RootOfUnity(args.kappa) if args.kappa else None

    if verb == "gon":
        xs = args.labels
        if len(xs) == 3:
            v = gon_mod.gon3(*xs)
        else:
            v = gon_mod.gon_poly(xs)
        _require_admissible(args, v != 0)
        _emit({"value": _fmt(v)}, args.format, out)
    elif verb == "theta-k":
        v = gon_mod.theta_k(*args.labels)
        _require_admissible(args, v != 0)
        _emit({"value": _fmt(v)}, args.format, out)
    elif verb == "clebsch0":
        v = gon_mod.special_clebsch(*args.labels)
        _require_admissible(args, bool(v))
        _emit(v.to_json(), args.format, out)
    elif verb == "gon-asym":
        v = gon_mod.gon_asym(*args.labels, args.k)
        _emit({"value": v}, args.format, out)
    elif verb == "tet":
        t = (tuple(args.labels[:3]), tuple(args.labels[3:]))
        v = tet_mod.tet(t)
        _require_admissible(args, is_admissible_tet(t))
        _emit({"value": _fmt(v)}, args.format, out)
    elif verb == "tet-k":
        t = (tuple(args.labels[:3]), tuple(args.labels[3:]))
        v = tet_mod.tet_k(t)
        _require_admissible(args, is_admissible_tet(t))
        _emit({"value": _fmt(v)}, args.format, out)
    elif verb == "tet-regular":
        _emit({"value": _fmt(tet_mod.tet_regular(args.labels[0]))}, args.format, out)
    elif verb == "sixj":
        t = (tuple(args.labels[:3]), tuple(args.labels[3:]))
        v = tet_mod.sixj(t)
        _require_admissible(args, is_admissible_tet(t))
        _emit(v.to_json(), args.format, out)
    elif verb == "regge":
        t = (tuple(args.labels[:3]), tuple(args.labels[3:]))
        images = tet_mod.regge_images(t)
        _emit({"images": [[list(x), list(y)] for x, y in images],
               "values": [str(tet_mod.tet(im)) for im in images]}, args.format, out)
    elif verb == "biunit":
        v = tet_mod.biunitarity_sum(tuple(args.labels), args.slot)
        _emit({"sum": _fmt(v)}, args.format, out)
    elif verb == "duality":
        rep = ident_mod.verify_duality(*args.labels)
        _emit(rep.to_json(), args.format, out)
    elif verb == "hed":
        bp = tuple(args.labels)
        h1 = ident_mod.hed1(bp)
        h2 = ident_mod.hed2(bp)
        _emit({"hed1": _fmt(h1), "hed2": _fmt(h2),
               "equal": Fraction(h1) == h2,
               "x_range": ident_mod.hed2_range(bp)}, args.format, out)
    elif verb == "barycentric":
        t = (tuple(args.labels[:3]), tuple(args.labels[3:]))
        sols = ident_mod.barycentric_enum(t, args.delta)
        p_val = ident_mod.barycentric_P(t, args.delta)
        _emit({"delta": args.delta, "solutions": [list(s) for s in sols],
               "P": _fmt(p_val),
               "ratio": _fmt(p_val / (args.delta + 1) ** 2)}, args.format, out)
    elif verb == "cube":
        v, count = ident_mod.cube_census(args.labels)
        _emit({"value": _fmt(v), "assignments": count}, args.format, out)
    elif verb == "dyson-ct":
        _emit({"value": _fmt(ident_mod.dyson_ct(*args.labels))}, args.format, out)
    elif verb == "hilbert-inv":
        inv = hilbert_mod.invert_exact(hilbert_mod.hilbert(args.n, args.s))
        _emit({"matrix": [[_fmt(x) for x in row] for row in inv]}, args.format, out)
    elif verb == "hilbert-trace":
        _emit({"value": _fmt(hilbert_mod.trace_inverse(args.n, args.s))},
              args.format, out)
    elif verb == "hilbert-rowsum":
        v = hilbert_mod.rowsum_gon(*args.labels)
        signed = hilbert_mod.rowsum_signed(*args.labels)
        _emit({"value": _fmt(v), "signed": _fmt(signed)}, args.format, out)
    elif verb == "gon-q":
        xs = args.labels
        if len(xs) == 3:
            v = quantum_mod.gon_q(*xs, root)
        else:
            v = quantum_mod.gon_q_poly(xs, root)
        _require_admissible(args, not v.is_zero())
        _emit({"value": _fmt(v), "at_one": str(v.at_one())}, args.format, out)
    elif verb == "tet-q":
        t = (tuple(args.labels[:3]), tuple(args.labels[3:]))
        v = quantum_mod.tet_q(t, root)
        _require_admissible(args, not v.is_zero())
        rec = {"value": _fmt(v), "at_one": str(v.at_one())}
        if root is not None and not v.is_zero():
            rec["at_root"] = quantum_mod.tet_q_at_root(t, root)
        _emit(rec, args.format, out)
    elif verb == "sixj-q":
        if root is None:
            raise DomainError("sixj-q needs --kappa")
        t = (tuple(args.labels[:3]), tuple(args.labels[3:]))
        v = quantum_mod.sixj_q(t, root)
        _emit({"value": v.real, "imag": v.imag}, args.format, out)
    elif verb == "verify":
        passed, failed = VERIFY_SUITES[args.suite](args)
        _emit({"suite": args.suite, "passed": passed, "failed": failed},
              args.format, out)
        return 1 if failed else 0
    elif verb == "verify-q":
        passed, failed = VERIFY_Q_SUITES[args.suite](args)
        _emit({"suite": args.suite, "passed": passed, "failed": failed},
              args.format, out)
        return 1 if failed else 0
    elif verb == "spinnet":
        xs = args.labels
        if args.graph == "loop":
            g = spinnet_mod.Loop(xs[0])
        elif args.graph == "theta":
            g = spinnet_mod.Theta(*xs[:3])
        else:
            g = spinnet_mod.Tetra((tuple(xs[:3]), tuple(xs[3:6])))
        v = spinnet_mod.evaluate(g, spinnet_mod.Prescription(args.prescription))
        _emit({"value": _fmt(v)}, args.format, out)
    elif verb == "table":
        return run_table(args.what, args, out)
    elif verb == "bench":
        return run_bench(args.case, args, out)
    else:  # pragma: no cover
        raise AssertionError(verb)
    return 0


def run(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _dispatch(args, out)
    except (DomainError, NotAdmissible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
