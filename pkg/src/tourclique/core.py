"""Tournament and ordered-graph value types plus structural operations.

Vertices are dense integers ``0..n-1``.  Adjacency rows and vertex subsets
are Python ints used as bitmasks, so neighbourhood algebra is plain word
arithmetic.  Every value here is immutable after construction; all
operations are pure functions and safe for concurrent shared reads.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

CANONICAL_MAX_N = 16


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Tournament:
    """A loop-free orientation of a complete graph.

    ``out_rows[v]`` has bit ``w`` set iff the arc ``v -> w`` exists.
    Exactly one of ``v -> w``, ``w -> v`` holds for each pair ``v != w``.
    """

    n: int
    out_rows: tuple[int, ...]

    def __post_init__(self):
        n = self.n
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(self.out_rows) != n:
            raise ValueError("row count does not match vertex count")
        full = (1 << n) - 1
        for v, row in enumerate(self.out_rows):
            if row & ~full:
                raise ValueError(f"row {v} has bits outside 0..{n - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
        for v in range(n):
            for w in range(v + 1, n):
                fwd = self.out_rows[v] >> w & 1
                bwd = self.out_rows[w] >> v & 1
                if fwd and bwd:
                    raise ValueError(f"digon between {v} and {w}")
                if not fwd and not bwd:
                    raise ValueError(f"missing arc between {v} and {w}")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def out(self, v: int) -> int:
        """Bitmask of out-neighbours of ``v``."""
        return self.out_rows[v]

    def inn(self, v: int) -> int:
        """Bitmask of in-neighbours of ``v``."""
        return self.full_mask & ~self.out_rows[v] & ~(1 << v)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_rows[u] >> v & 1)

    def out_degree(self, v: int) -> int:
        return self.out_rows[v].bit_count()

    def vertices(self) -> range:
        return range(self.n)


@dataclass(frozen=True)
class VertexSet:
    """A subset of the vertices of an ``n``-vertex tournament, as a bitmask."""

    n: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("set bits outside the ambient vertex range")

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        return cls(n, mask_of(vertices))

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(n, 0)

    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.bits >> v & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)


@dataclass(frozen=True)
class OrderedBackedgeGraph:
    """Undirected graph on tournament vertices plus the total order behind it.

    ``order[k]`` is the vertex in position ``k``.  ``edges[v]`` is the
    symmetric adjacency row of ``v`` (bits indexed by vertex label).
    """

    n: int
    order: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(self.n)):
            raise ValueError("order is not a permutation of the vertices")
        if len(self.edges) != self.n:
            raise ValueError("edge row count mismatch")
        for v, row in enumerate(self.edges):
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for w in iter_bits(row):
                if not self.edges[w] >> v & 1:
                    raise ValueError("edge rows are not symmetric")

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.edges) // 2


def from_matrix(n: int, cells: Sequence[Sequence[int]]) -> Tournament:
    """Build a tournament from an ``n x n`` 0/1 grid; cell (i, j) = 1 iff i -> j."""
    if len(cells) != n or any(len(row) != n for row in cells):
        raise ValueError("grid dimensions do not match vertex count")
    rows = []
    for i in range(n):
        row = 0
        for j, cell in enumerate(cells[i]):
            if cell not in (0, 1):
                raise ValueError(f"cell ({i}, {j}) is not 0/1")
            if cell:
                row |= 1 << j
        rows.append(row)
    return Tournament(n, tuple(rows))


def single_vertex() -> Tournament:
    return Tournament(1, (0,))


def transitive_tournament(n: int) -> Tournament:
    """The transitive tournament with arcs i -> j for all i < j."""
    full = (1 << n) - 1
    return Tournament(n, tuple((full >> (v + 1)) << (v + 1) for v in range(n)))


def induced(T: Tournament, subset) -> tuple[Tournament, tuple[int, ...]]:
    """Induced subtournament on ``subset`` plus the new-to-old vertex map.

    ``subset`` may be a VertexSet, a bitmask int, or an iterable of vertices.
    New labels follow increasing old labels.
    """
    bits = _subset_bits(T, subset)
    order = tuple(iter_bits(bits))
    index = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        row = 0
        sub = T.out_rows[v] & bits
        for w in iter_bits(sub):
            row |= 1 << index[w]
        rows.append(row)
    return Tournament(len(order), tuple(rows)), order


def _subset_bits(T: Tournament, subset) -> int:
    if isinstance(subset, VertexSet):
        if subset.n != T.n:
            raise ValueError("vertex set has a different ambient size")
        return subset.bits
    if isinstance(subset, int):
        bits = subset
    else:
        bits = mask_of(subset)
    if bits < 0 or bits >> T.n:
        raise ValueError("subset contains vertices outside the tournament")
    return bits


def delta_compose(T1: Tournament, T2: Tournament, T3: Tournament) -> Tournament:
    """Cyclic composition: disjoint union with V1 => V2 => V3 => V1."""
    n1, n2, n3 = T1.n, T2.n, T3.n
    n = n1 + n2 + n3
    m1 = ((1 << n1) - 1)
    m2 = ((1 << n2) - 1) << n1
    m3 = ((1 << n3) - 1) << (n1 + n2)
    rows = []
    for v in range(n1):
        rows.append(T1.out_rows[v] | m2)
    for v in range(n2):
        rows.append((T2.out_rows[v] << n1) | m3)
    for v in range(n3):
        rows.append((T3.out_rows[v] << (n1 + n2)) | m1)
    return Tournament(n, tuple(rows))


def substitute(T: Tournament, v: int, Tp: Tournament) -> Tournament:
    """Replace vertex ``v`` of ``T`` by the tournament ``Tp``.

    The result keeps the other vertices of ``T`` first (in increasing old
    label order) and appends the vertices of ``Tp`` as a block; every old
    in-neighbour of ``v`` is out-complete to the block and every old
    out-neighbour is in-complete from it.
    """
    if not 0 <= v < T.n:
        raise ValueError(f"vertex {v} outside tournament")
    keep = [u for u in range(T.n) if u != v]
    index = {u: i for i, u in enumerate(keep)}
    base = len(keep)
    block = ((1 << Tp.n) - 1) << base
    rows = []
    for u in keep:
        row = 0
        for w in iter_bits(T.out_rows[u] & ~(1 << v)):
            row |= 1 << index[w]
        if T.has_arc(u, v):
            row |= block
        rows.append(row)
    for p in range(Tp.n):
        row = Tp.out_rows[p] << base
        for w in iter_bits(T.out_rows[v]):
            row |= 1 << index[w]
        rows.append(row)
    return Tournament(base + Tp.n, tuple(rows))


def backedge_graph(T: Tournament, order: Sequence[int]) -> OrderedBackedgeGraph:
    """Backedge graph of ``T`` under ``order``: edge uv iff u precedes v and v -> u."""
    order = tuple(order)
    if sorted(order) != list(range(T.n)):
        raise ValueError("order is not a permutation of the vertices")
    edges = [0] * T.n
    earlier = 0
    for w in order:
        back = T.out_rows[w] & earlier
        edges[w] |= back
        for u in iter_bits(back):
            edges[u] |= 1 << w
        earlier |= 1 << w
    return OrderedBackedgeGraph(T.n, order, tuple(edges))


def tournament_from_backedge(g: OrderedBackedgeGraph) -> Tournament:
    """The unique tournament whose backedge graph under ``g.order`` is ``g``."""
    rows = [0] * g.n
    for i, u in enumerate(g.order):
        for w in g.order[i + 1:]:
            if g.edges[u] >> w & 1:
                rows[w] |= 1 << u
            else:
                rows[u] |= 1 << w
    return Tournament(g.n, tuple(rows))


def is_out_complete(T: Tournament, X, Y) -> bool:
    """True iff every arc between X and Y points from X to Y (vacuous if either empty)."""
    xb = _subset_bits(T, X)
    yb = _subset_bits(T, Y)
    if xb & yb:
        raise ValueError("sets overlap")
    for x in iter_bits(xb):
        if T.out_rows[x] & yb != yb:
            return False
    return True


def random_tournament(n: int, seed: int) -> Tournament:
    """Orient each pair by an independent fair coin from a seeded generator."""
    rng = random.Random(seed)
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.getrandbits(1):
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
    return Tournament(n, tuple(rows))


def canonical_code(T: Tournament) -> bytes:
    """A canonical byte string: equal codes iff the tournaments are isomorphic.

    Exact search over vertex orderings: the code encodes, column by column,
    the lexicographically least arc pattern reachable by any relabelling.
    Refinement happens implicitly because only minimal-column extensions
    survive each round.  Exact for n <= CANONICAL_MAX_N.
    """
    n = T.n
    if n > CANONICAL_MAX_N:
        raise ValueError(f"canonical_code is exact only up to n = {CANONICAL_MAX_N}")
    if n == 0:
        return bytes([0])
    rows = T.out_rows
    frontier: list[tuple[int, ...]] = [()]
    columns: list[int] = []
    for level in range(n):
        best_col = None
        extensions: list[tuple[int, ...]] = []
        for prefix in frontier:
            used = mask_of(prefix)
            for v in range(n):
                if used >> v & 1:
                    continue
                col = 0
                for k, p in enumerate(prefix):
                    col |= (rows[p] >> v & 1) << (level - 1 - k)
                if best_col is None or col < best_col:
                    best_col = col
                    extensions = [prefix + (v,)]
                elif col == best_col:
                    extensions.append(prefix + (v,))
        columns.append(best_col or 0)
        frontier = extensions
    bitstring = 0
    width = 0
    for level, col in enumerate(columns):
        bitstring = (bitstring << level) | col
        width += level
    payload = bitstring.to_bytes((width + 7) // 8 or 1, "big")
    return bytes([n]) + payload


# ---------------------------------------------------------------------------
# ".trn" text format: line 1 = n, then n lines of n chars from {0,1}, where
# char j of line i is 1 iff the arc i -> j exists.  Lines starting with '#'
# are comments; trailing whitespace is ignored.

def parse_trn(text: str) -> Tournament:
    lines = [ln.rstrip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty .trn input")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"bad vertex count line: {lines[0]!r}") from None
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} rows, found {len(lines) - 1}")
    cells = []
    for i, ln in enumerate(lines[1:]):
        if len(ln) != n or any(ch not in "01" for ch in ln):
            raise ValueError(f"bad row {i}: {ln!r}")
        cells.append([int(ch) for ch in ln])
    return from_matrix(n, cells)


def format_trn(T: Tournament) -> str:
    out = [str(T.n)]
    for v in range(T.n):
        out.append("".join("1" if T.out_rows[v] >> w & 1 else "0" for w in range(T.n)))
    return "\n".join(out) + "\n"
