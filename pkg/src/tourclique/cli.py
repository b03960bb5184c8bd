"""Command-line surface.

Subcommands: gen, omega, chi, contains, mountain, mountain-audit, chain,
bounds, atlas, lemma-suite.  Exit codes: 0 success, 1 property violation or
negative result, 2 usage, 3 budget exceeded.  Randomized commands require an
explicit --seed.  All output is deterministic given identical inputs and
seeds.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import bounds as bounds_mod
from . import chains, containment, mountains
from .atlas import Atlas, AtlasRecord
from .bignum import format_value
from .constructions import FamilyId, build_family, family_labels
from .core import (Tournament, VertexSet, backedge_graph, canonical_code,
                   format_trn, parse_trn, random_tournament,
                   tournament_from_backedge)
from .solvers import chi_dir, omega_dir, omega_dir_bounds


def _load_trn(path: str) -> Tournament:
    text = sys.stdin.read() if path == "-" else open(path).read()
    return parse_trn(text)


def _load_bags(path: str, n: int) -> tuple[VertexSet, ...]:
    bags = []
    for line in open(path):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        bags.append(VertexSet.from_vertices(n, (int(x) for x in line.split())))
    return tuple(bags)


def _cert_json(cert: mountains.MountainCertificate) -> dict:
    return {
        "r": cert.r,
        "s": cert.s,
        "clique": list(cert.clique),
        "vertex_set": sorted(cert.vertex_set),
        "witnesses": [{"arc": list(arc), "cert": _cert_json(sub)}
                      for arc, sub in sorted(cert.witnesses.items())],
    }


# ---------------------------------------------------------------------------
# property batteries (shared by mountain-audit and lemma-suite)


def run_mountain_audits(seed: int, cases: int, max_n: int = 10,
                        log=print) -> int:
    """Two-colouring descent plus the log lower-bound audit; returns the
    number of violations."""
    rng = random.Random(seed)
    bad = 0
    done = 0
    attempt = 0
    while done < cases:
        attempt += 1
        T = random_tournament(rng.randint(4, max_n), rng.randrange(2 ** 31))
        order = rng.choice([2, 2, 3])
        cert = mountains.find_mountain(T, order - 1, order)
        if cert is None:
            continue
        ok, issues = mountains.verify_mountain(T, cert)
        if not ok:
            bad += 1
            log(f"  certificate failed verification: {issues[:2]}")
            continue
        phi = {v: rng.choice(["red", "blue"]) for v in range(T.n)}
        a = rng.randint(1, order)
        b = order + 1 - a
        col, wit = mountains.two_colouring_witness(T, cert, phi, a, b)
        target = a if col == "red" else b
        mono = all(phi[v] == col for v in wit.vertex_set)
        wok, wissues = mountains.verify_mountain(T, wit)
        if wit.order() != target or not mono or not wok:
            bad += 1
            log(f"  two-colouring witness invalid: {wissues[:2]}")
        if not mountains.log_bound_audit(T):
            bad += 1
            log("  log lower-bound audit failed")
        done += 1
    return bad


def run_lemma_suite(seed: int, count: int, log=print) -> int:
    """The invariant battery; returns the number of violations."""
    from .constructions import build_a, build_d, build_u
    from .core import delta_compose, single_vertex

    rng = random.Random(seed)
    bad = 0

    log("backedge round-trip ...")
    for _ in range(count):
        T = random_tournament(rng.randint(1, 9), rng.randrange(2 ** 31))
        order = list(range(T.n))
        rng.shuffle(order)
        g = backedge_graph(T, order)
        if tournament_from_backedge(g) != T:
            bad += 1
        if g.edge_count() + sum(1 for i in range(T.n) for j in range(i + 1, T.n)
                                if not g.edges[i] >> j & 1) != T.n * (T.n - 1) // 2:
            bad += 1

    log("subadditivity and clique-vs-dichromatic ...")
    for _ in range(count):
        n = rng.randint(2, 9)
        T = random_tournament(n, rng.randrange(2 ** 31))
        w = omega_dir(T).value
        x_mask = 0
        for v in range(n):
            if rng.getrandbits(1):
                x_mask |= 1 << v
        from .solvers import omega_within
        wx = omega_within(T, x_mask).value
        wy = omega_within(T, T.full_mask & ~x_mask).value
        if w > wx + wy:
            bad += 1
            log(f"  subadditivity violated on n={n}")
        if w > chi_dir(T).value:
            bad += 1
            log(f"  clique number exceeded dichromatic number on n={n}")

    log("mountain audits ...")
    bad += run_mountain_audits(rng.randrange(2 ** 31), max(count // 2, 5), log=log)

    log("family freeness facts ...")
    if containment.contains_copy(build_a(3), build_d(3)) is not None:
        bad += 1
    if containment.contains_copy(build_d(4), build_a(3)) is not None:
        bad += 1
    if containment.contains_copy(build_a(3), build_u(3)) is None:
        bad += 1
    if not containment.is_prime(build_u(3)):
        bad += 1

    log("zone partition totality ...")
    for _ in range(max(count // 10, 3)):
        # forward-layered chain with random extra vertices around it
        c3 = delta_compose(single_vertex(), single_vertex(), single_vertex())
        layers = rng.randint(2, 4)
        total = 3 * layers + rng.randint(1, 4)
        rows = [0] * total
        for i in range(total):
            for j in range(i + 1, total):
                rows[i] |= 1 << j
        for s in range(0, 3 * layers, 3):
            rows[s] &= ~(1 << (s + 2))
            rows[s + 2] |= 1 << s
        for i in range(3 * layers, total):
            for j in range(i + 1, total):
                if rng.getrandbits(1):
                    rows[i] &= ~(1 << j)
                    rows[j] |= 1 << i
        T = Tournament(total, tuple(rows))
        bags = tuple(VertexSet(total, 0b111 << s) for s in range(0, 3 * layers, 3))
        chain = chains.BagChain(bags, 2, 1)
        ok, _ = chains.verify_bag_chain(T, chain)
        if not ok:
            continue
        zones = chains.assign_zones(T, chain, 1)
        union = 0
        for z in zones.zones:
            if union & z.bits:
                bad += 1
            union |= z.bits
        outside = T.full_mask & ~sum(b.bits for b in bags)
        if union != outside:
            bad += 1
            log("  zones do not partition the complement")
    return bad


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_gen(args) -> int:
    fid = FamilyId(args.family, args.n)
    T = build_family(fid)
    text = format_trn(T)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    label_path = args.labels or (args.out + ".labels" if args.out else None)
    if label_path:
        with open(label_path, "w") as fh:
            for v, lab in enumerate(family_labels(fid)):
                fh.write(f"{v}\t{lab}\n")
    return 0


def _cmd_omega(args) -> int:
    T = _load_trn(args.trn)
    if T.n > args.max_exact_n:
        if args.seed is None:
            print("error: the bounds fallback is randomized; --seed is required",
                  file=sys.stderr)
            return 2
        lo, hi = omega_dir_bounds(T, seed=args.seed)
        print(json.dumps({"schema": 1, "lower": lo, "upper": hi, "mode": "bounds"})
              if args.json else f"bounds [{lo}, {hi}]")
        return 0
    cert = omega_dir(T, budget=args.budget, max_exact_n=args.max_exact_n)
    print(cert.to_json() if args.json else cert.value)
    return 3 if cert.mode == "exceeded" else 0


def _cmd_chi(args) -> int:
    T = _load_trn(args.trn)
    cert = chi_dir(T, budget=args.budget)
    print(cert.to_json() if args.json else cert.value)
    return 3 if cert.mode == "exceeded" else 0


def _cmd_contains(args) -> int:
    host = _load_trn(args.host)
    pattern = _load_trn(args.pattern)
    emb = containment.contains_copy(host, pattern)
    if emb is None:
        print("not found")
        return 1  # negative results use exit 1 by convention
    print(json.dumps({"schema": 1, "mapping": list(emb.mapping)}) if args.json
          else " ".join(map(str, emb.mapping)))
    return 0


def _cmd_mountain(args) -> int:
    T = _load_trn(args.trn)
    cert = mountains.find_mountain(T, args.r, args.s)
    if cert is None:
        print("none")
        return 1
    print(json.dumps({"schema": 1, "mountain": _cert_json(cert)}, indent=None))
    return 0


def _cmd_mountain_audit(args) -> int:
    bad = run_mountain_audits(args.seed, args.cases)
    print(f"violations: {bad}")
    return 1 if bad else 0


def _cmd_chain(args) -> int:
    T = _load_trn(args.tourn)
    bags = _load_bags(args.bags, T.n)
    if args.action == "verify":
        chain = chains.BagChain(bags, args.c, args.a)
        ok, viol = chains.verify_bag_chain(T, chain)
        print(json.dumps({"schema": 1, "valid": ok,
                          "violations": [v.__dict__ for v in viol]}, default=str))
        return 0 if ok else 1
    if args.action == "zones":
        chain = chains.BagChain(bags, args.c, args.a)
        zs = chains.assign_zones(T, chain, args.c_small)
        print(json.dumps({"schema": 1,
                          "zones": [sorted(z) for z in zs.zones]}))
        return 0
    if args.action == "merge":
        q = chains.NearBagChain(bags, args.c, args.a)
        merged = chains.merge_bags(T, q, args.c)
        print(json.dumps({"schema": 1, "bags": [sorted(b) for b in merged.bags],
                          "c": merged.c, "a": merged.a}))
        return 0
    # dichotomy
    q = chains.NearBagChain(bags, args.c, args.a)
    try:
        res = chains.chain_dichotomy(T, q, args.m, args.c, args.a, args.c_small,
                                     require_hypothesis=not args.relax)
    except chains.ChainHypothesisError as exc:
        print(json.dumps({"schema": 1, "hypothesis_failure": str(exc)}))
        return 1
    out = {"schema": 1, "kind": res.kind, "hypothesis_ok": res.hypothesis_ok,
           "notes": list(res.notes)}
    if res.kind == "ordering":
        out["order"] = list(res.ordering.order)
        out["backedge_clique"] = res.ordering.backedge_clique
        out["bound"] = res.ordering.bound
    else:
        out["embedding"] = list(res.embedding.mapping)
    print(json.dumps(out))
    return 0


def _cmd_bounds(args) -> int:
    if args.what == "f":
        expr = bounds_mod.main_bound(args.t)
    elif args.what == "ramsey":
        expr = bounds_mod.ramsey_upper(args.s, args.t)
    elif args.what == "q":
        expr = bounds_mod.growth_subset_size(args.b, args.r, args.s)
    else:  # ladder
        entries = bounds_mod.mountain_ladder(args.b)
        for i, e in enumerate(entries):
            print(f"c_{i + 1} = {format_value(e.value)}")
        return 0
    print(format_value(expr.value))
    print(bounds_mod.render_trace(expr, max_depth=args.depth))
    return 0


def _cmd_atlas(args) -> int:
    atlas = Atlas(args.db)
    if args.action == "add":
        T = _load_trn(args.trn)
        code = canonical_code(T).hex()
        w = omega_dir(T, budget=args.budget)
        x = chi_dir(T, budget=args.budget)
        rec = AtlasRecord(
            code=code, n=T.n,
            omega=w.value if w.mode == "exact" else [w.lower_bound, w.value],
            omega_mode=w.mode, chi=x.value, chi_mode=x.mode,
            omega_a=containment.family_index(T, "A"),
            omega_d=containment.family_index(T, "D"))
        atlas.upsert(rec)
        print(code)
        return 0
    if args.action == "get":
        code = args.code or canonical_code(_load_trn(args.trn)).hex()
        rec = atlas.get(code)
        if rec is None:
            print("absent")
            return 1
        print(json.dumps(rec.__dict__))
        return 0
    if args.action == "list":
        recs = atlas.records()
        for code in sorted(recs):
            r = recs[code]
            print(f"{code} n={r.n} omega={r.omega} chi={r.chi} "
                  f"omega_a={r.omega_a} omega_d={r.omega_d}")
        if atlas.quarantined:
            print(f"quarantined: {len(atlas.quarantined)}", file=sys.stderr)
        return 0
    kept = atlas.compact()
    print(f"kept {kept}")
    return 0


def _cmd_lemma_suite(args) -> int:
    bad = run_lemma_suite(args.seed, args.count)
    print(f"violations: {bad}")
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tourclique",
                                description="tournament clique number toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a family member as .trn")
    g.add_argument("--family", required=True, choices=["A", "D", "U"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("-o", "--out")
    g.add_argument("--labels")
    g.set_defaults(fn=_cmd_gen)

    o = sub.add_parser("omega", help="tournament clique number")
    o.add_argument("trn")
    o.add_argument("--budget", type=int)
    o.add_argument("--max-exact-n", type=int, default=14)
    o.add_argument("--seed", type=int)
    o.add_argument("--json", action="store_true")
    o.set_defaults(fn=_cmd_omega)

    c = sub.add_parser("chi", help="dichromatic number")
    c.add_argument("trn")
    c.add_argument("--budget", type=int)
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=_cmd_chi)

    k = sub.add_parser("contains", help="induced subtournament search")
    k.add_argument("--host", required=True)
    k.add_argument("--pattern", required=True)
    k.add_argument("--json", action="store_true")
    k.set_defaults(fn=_cmd_contains)

    m = sub.add_parser("mountain", help="find an (r, s)-mountain certificate")
    m.add_argument("trn")
    m.add_argument("--r", type=int, required=True)
    m.add_argument("--s", type=int, required=True)
    m.set_defaults(fn=_cmd_mountain)

    ma = sub.add_parser("mountain-audit", help="two-colouring and log-bound suites")
    ma.add_argument("--seed", type=int, required=True)
    ma.add_argument("--cases", type=int, default=50)
    ma.set_defaults(fn=_cmd_mountain_audit)

    ch = sub.add_parser("chain", help="bag-chain operations")
    ch.add_argument("action", choices=["verify", "zones", "merge", "dichotomy"])
    ch.add_argument("tourn")
    ch.add_argument("--bags", required=True)
    ch.add_argument("--c", type=int, required=True)
    ch.add_argument("--a", type=int, required=True)
    ch.add_argument("--c-small", type=int, default=1)
    ch.add_argument("--m", type=int, default=2)
    ch.add_argument("--relax", action="store_true",
                    help="run the dichotomy measuring steps even if the "
                         "entry hypothesis fails")
    ch.set_defaults(fn=_cmd_chain)

    b = sub.add_parser("bounds", help="constant pipeline values with traces")
    b.add_argument("what", choices=["f", "ramsey", "q", "ladder"])
    b.add_argument("--t", type=int, default=1)
    b.add_argument("--s", type=int, default=1)
    b.add_argument("--b", type=int, default=1)
    b.add_argument("--r", type=int, default=1)
    b.add_argument("--depth", type=int, default=4)
    b.set_defaults(fn=_cmd_bounds)

    a = sub.add_parser("atlas", help="invariant cache")
    a.add_argument("action", choices=["add", "get", "list", "compact"])
    a.add_argument("trn", nargs="?")
    a.add_argument("--db", required=True)
    a.add_argument("--code")
    a.add_argument("--budget", type=int)
    a.set_defaults(fn=_cmd_atlas)

    ls = sub.add_parser("lemma-suite", help="full invariant battery")
    ls.add_argument("--seed", type=int, required=True)
    ls.add_argument("--count", type=int, default=40)
    ls.set_defaults(fn=_cmd_lemma_suite)

    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
