"""Induced-subtournament search, family indices, modules and primality."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .core import CANONICAL_MAX_N, Tournament, VertexSet, canonical_code, iter_bits
from .constructions import build_a, build_d, size_a


@dataclass(frozen=True)
class Embedding:
    """An induced copy of a pattern inside a host: mapping[q] = host vertex."""

    pattern_n: int
    host_n: int
    mapping: tuple[int, ...]


def verify_embedding(host: Tournament, pattern: Tournament, emb: Embedding) -> bool:
    """Check injectivity and that all arc directions are preserved."""
    if emb.pattern_n != pattern.n or emb.host_n != host.n:
        return False
    if len(emb.mapping) != pattern.n or len(set(emb.mapping)) != pattern.n:
        return False
    if any(not 0 <= v < host.n for v in emb.mapping):
        return False
    for a in range(pattern.n):
        for b in range(pattern.n):
            if a != b and pattern.has_arc(a, b) != host.has_arc(emb.mapping[a], emb.mapping[b]):
                return False
    return True


def contains_copy(host: Tournament, pattern: Tournament) -> Embedding | None:
    """First induced embedding of ``pattern`` in ``host``, or None.

    Backtracking over pattern vertices, always extending the one with the
    fewest remaining host candidates (degree and adjacency pruning).  The
    returned embedding is deterministic.
    """
    np_, nh = pattern.n, host.n
    if np_ > nh:
        return None
    if np_ == 0:
        return Embedding(0, nh, ())
    host_full = host.full_mask
    # degree feasibility: an image must have at least the pattern degrees
    cands0 = []
    for q in range(np_):
        od = pattern.out_degree(q)
        idg = np_ - 1 - od
        mask = 0
        for v in range(nh):
            if host.out_degree(v) >= od and nh - 1 - host.out_degree(v) >= idg:
                mask |= 1 << v
        if mask == 0:
            return None
        cands0.append(mask)

    mapping = [-1] * np_
    used = [0]

    def rec(cands: list[int], depth: int) -> bool:
        if depth == np_:
            return True
        best_q, best_cnt = -1, nh + 1
        for q in range(np_):
            if mapping[q] < 0:
                cnt = (cands[q] & ~used[0]).bit_count()
                if cnt == 0:
                    return False
                if cnt < best_cnt:
                    best_q, best_cnt = q, cnt
        q = best_q
        for v in iter_bits(cands[q] & ~used[0]):
            nxt = list(cands)
            ok = True
            for p in range(np_):
                if mapping[p] < 0 and p != q:
                    if pattern.has_arc(q, p):
                        nxt[p] &= host.out(v)
                    else:
                        nxt[p] &= host.inn(v)
                    if nxt[p] & ~used[0] == 0:
                        ok = False
                        break
            if not ok:
                continue
            mapping[q] = v
            used[0] |= 1 << v
            if rec(nxt, depth + 1):
                return True
            mapping[q] = -1
            used[0] ^= 1 << v
        return False

    if rec(cands0, 0):
        return Embedding(np_, nh, tuple(mapping))
    return None


_family_index_cache: dict[tuple[object, str], int] = {}


def family_index(T: Tournament, family: str) -> int:
    """Largest n such that T contains the n-th member of the family (A or D)."""
    if family not in ("A", "D"):
        raise ValueError("family must be 'A' or 'D'")
    if T.n == 0:
        warnings.warn("family index of the empty tournament is 0")
        return 0
    key_t: object = canonical_code(T) if T.n <= CANONICAL_MAX_N else T
    key = (key_t, family)
    if key in _family_index_cache:
        return _family_index_cache[key]
    build = build_a if family == "A" else build_d
    size = size_a if family == "A" else (lambda n: (1 << n) - 1)
    n = 1
    while True:
        m = n + 1
        if size(m) > T.n or contains_copy(T, build(m)) is None:
            break
        n = m
    _family_index_cache[key] = n
    return n


def _module_closure(T: Tournament, m: int) -> int:
    """Smallest module containing the vertices of mask ``m``.

    A vertex outside that sees the set non-uniformly must join any module
    containing it.
    """
    full = T.full_mask
    changed = True
    while changed and m != full:
        changed = False
        for x in iter_bits(full & ~m):
            a = T.out_rows[x] & m
            if a != 0 and a != m:
                m |= 1 << x
                changed = True
    return m


def find_module(T: Tournament) -> VertexSet | None:
    """A nontrivial module (1 < |M| < n), or None if the tournament is prime.

    Scans vertex pairs in lexicographic order and returns the closure of the
    first pair whose closure is proper.
    """
    if T.n < 3:
        raise ValueError("modules are only defined for at least 3 vertices")
    full = T.full_mask
    for u in range(T.n):
        for v in range(u + 1, T.n):
            m = _module_closure(T, (1 << u) | (1 << v))
            if m != full:
                return VertexSet(T.n, m)
    return None


def is_prime(T: Tournament) -> bool:
    """True iff no nontrivial substitution decomposition exists."""
    if T.n < 3:
        return True
    return find_module(T) is None
