"""Generators for the three extremal tournament families A, D and U.

Family D is the iterated cyclic composition of two previous copies and a
single vertex.  Family A interleaves a "spine" of n vertices with n-1 blocks
that are copies of the previous member.  Family U is the odd/even template
whose even seats, when substituted with A-members, reproduce family A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core import Tournament, delta_compose, single_vertex

MAX_D_INDEX = 8   # size 2^n - 1
MAX_A_INDEX = 5   # size grows as (n-1)*prev + n


@dataclass(frozen=True)
class FamilyId:
    """Identifier of a family member: tag in {A, D, U} and its index."""

    tag: str
    n: int

    def __post_init__(self):
        if self.tag not in ("A", "D", "U"):
            raise ValueError(f"unknown family tag {self.tag!r}")
        if self.n < 1:
            raise ValueError("family index must be at least 1")


def size_a(n: int) -> int:
    """Exact vertex count of the n-th A-member: a_1 = 1, a_n = (n-1)a_{n-1} + n."""
    if n < 1:
        raise ValueError("index must be at least 1")
    a = 1
    for i in range(2, n + 1):
        a = (i - 1) * a + i
    assert a <= 2 * math.factorial(n), "A-family size bound violated"
    return a


@lru_cache(maxsize=None)
def _build_d(n: int) -> tuple[Tournament, tuple[str, ...]]:
    if n == 1:
        return single_vertex(), ("d",)
    prev, prev_labels = _build_d(n - 1)
    t = delta_compose(prev, prev, single_vertex())
    labels = (tuple("1." + x for x in prev_labels)
              + tuple("2." + x for x in prev_labels)
              + ("3.d",))
    return t, labels


def build_d(n: int) -> Tournament:
    """The n-th D-member on 2^n - 1 vertices."""
    if n < 1:
        raise ValueError("index must be at least 1")
    if n > MAX_D_INDEX:
        raise ValueError(f"D index capped at {MAX_D_INDEX} (2^n - 1 vertices)")
    return _build_d(n)[0]


def d_labels(n: int) -> tuple[str, ...]:
    """Recursion-path labels for build_d(n): part indices ending in 'd'."""
    if not 1 <= n <= MAX_D_INDEX:
        raise ValueError("index out of range")
    return _build_d(n)[1]


def a_structure(n: int) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
    """Spine positions and block [start, end) ranges in the build_a(n) layout.

    The layout interleaves spine and blocks: v_1, T_1, v_2, T_2, ..., v_n.
    """
    if n == 1:
        return (0,), ()
    a = size_a(n - 1)
    step = a + 1
    spine = tuple(i * step for i in range(n))
    blocks = tuple((i * step + 1, i * step + 1 + a) for i in range(n - 1))
    return spine, blocks


@lru_cache(maxsize=None)
def _build_a(n: int) -> tuple[Tournament, tuple[str, ...]]:
    if n == 1:
        return single_vertex(), ("v1",)
    prev, prev_labels = _build_a(n - 1)
    a = prev.n
    spine, blocks = a_structure(n)
    total = n + (n - 1) * a
    rows = [0] * total
    block_mask = [(((1 << a) - 1) << s) for s, _ in blocks]
    # spine: higher-index spine vertices beat lower-index ones
    for j in range(n):
        for i in range(j):
            rows[spine[j]] |= 1 << spine[i]
    for b, (s, _) in enumerate(blocks):
        # internal copy of the previous member
        for p in range(a):
            rows[s + p] |= prev.out_rows[p] << s
        # earlier blocks beat later blocks
        for b2 in range(b + 1, n - 1):
            for p in range(a):
                rows[s + p] |= block_mask[b2]
    # spine vs blocks: v_i beats block j iff i <= j (1-based), else the block beats v_i
    for i0 in range(n):
        for b in range(n - 1):
            if i0 <= b:
                rows[spine[i0]] |= block_mask[b]
            else:
                s, e = blocks[b]
                for p in range(s, e):
                    rows[p] |= 1 << spine[i0]
    labels = [""] * total
    for i0 in range(n):
        labels[spine[i0]] = f"v{i0 + 1}"
    for b, (s, _) in enumerate(blocks):
        for p in range(a):
            labels[s + p] = f"T{b + 1}.{prev_labels[p]}"
    return Tournament(total, tuple(rows)), tuple(labels)


def build_a(n: int) -> Tournament:
    """The n-th A-member, in the spine-interleaved layout v_1, T_1, ..., v_n."""
    if n < 1:
        raise ValueError("index must be at least 1")
    if n > MAX_A_INDEX:
        raise ValueError(f"A index capped at {MAX_A_INDEX} (size blows up factorially)")
    return _build_a(n)[0]


def a_labels(n: int) -> tuple[str, ...]:
    if not 1 <= n <= MAX_A_INDEX:
        raise ValueError("index out of range")
    return _build_a(n)[1]


def build_u(n: int) -> Tournament:
    """The n-th U-member on 2n - 1 vertices u_1..u_{2n-1}.

    Arc u_i -> u_j iff (i, j both odd and i > j) or (at least one of i, j
    even and i < j).  Odd seats and even seats each induce a transitive
    subtournament.
    """
    if n < 1:
        raise ValueError("index must be at least 1")
    m = 2 * n - 1
    rows = [0] * m
    for i0 in range(m):
        i = i0 + 1
        for j0 in range(m):
            j = j0 + 1
            if i == j:
                continue
            both_odd = i % 2 == 1 and j % 2 == 1
            if (both_odd and i > j) or (not both_odd and i < j):
                rows[i0] |= 1 << j0
    return Tournament(m, tuple(rows))


def u_labels(n: int) -> tuple[str, ...]:
    return tuple(f"u{i + 1}" for i in range(2 * n - 1))


def build_family(fid: FamilyId) -> Tournament:
    if fid.tag == "A":
        return build_a(fid.n)
    if fid.tag == "D":
        return build_d(fid.n)
    return build_u(fid.n)


def family_labels(fid: FamilyId) -> tuple[str, ...]:
    if fid.tag == "A":
        return a_labels(fid.n)
    if fid.tag == "D":
        return d_labels(fid.n)
    return u_labels(fid.n)
