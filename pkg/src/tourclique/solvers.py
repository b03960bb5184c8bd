"""Exact and heuristic solvers: clique number of graphs, tournament clique
number, and dichromatic number.

The tournament clique number search places vertices left to right and prunes
as soon as the backedge graph of the placed prefix reaches the target clique
size (prefix edges are final, so this is sound).  Budgets are counted in
search-tree nodes so runs are deterministic.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .core import Tournament, iter_bits

DEFAULT_MAX_EXACT_N = 14
DEFAULT_CHI_MAX_EXACT_N = 20


class BudgetExceeded(Exception):
    """Raised internally when a node budget runs out."""


@dataclass(frozen=True)
class Graph:
    """A loop-free symmetric graph with bitmask adjacency rows."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError("row count mismatch")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} has out-of-range bits")
            if row >> v & 1:
                raise ValueError(f"loop at {v}")
            for w in iter_bits(row):
                if not self.rows[w] >> v & 1:
                    raise ValueError("rows are not symmetric")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2


def graph_from_edges(n: int, edges) -> Graph:
    rows = [0] * n
    for u, v in edges:
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def max_clique(g: Graph, within: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Exact maximum clique via branch and bound with a greedy colouring bound.

    Returns (size, witness).  Size 0 only for an empty candidate set.
    """
    cand0 = g.full_mask if within is None else within
    if cand0 == 0:
        return 0, ()
    rows = g.rows
    best_size = 0
    best: tuple[int, ...] = ()
    cur: list[int] = []

    def expand(cand: int) -> None:
        nonlocal best_size, best
        # greedy colouring: colour classes are independent sets; a vertex of
        # colour c can only head a clique of size (placed + c)
        order: list[int] = []
        colours: list[int] = []
        uncoloured = cand
        c = 0
        while uncoloured:
            c += 1
            avail = uncoloured
            while avail:
                bit = avail & -avail
                v = bit.bit_length() - 1
                order.append(v)
                colours.append(c)
                uncoloured ^= bit
                avail &= ~(rows[v] | bit)
        live = cand
        for i in range(len(order) - 1, -1, -1):
            if len(cur) + colours[i] <= best_size:
                return
            v = order[i]
            bit = 1 << v
            cur.append(v)
            nxt = live & rows[v]
            if nxt:
                expand(nxt)
            elif len(cur) > best_size:
                best_size = len(cur)
                best = tuple(sorted(cur))
            cur.pop()
            live ^= bit

    expand(cand0)
    return best_size, best


def has_clique(rows: Sequence[int], cand: int, k: int) -> bool:
    """True iff the graph given by symmetric ``rows`` has a k-clique inside ``cand``."""
    if k <= 0:
        return True
    if cand.bit_count() < k:
        return False
    if k == 1:
        return cand != 0
    bit = cand & -cand
    v = bit.bit_length() - 1
    if has_clique(rows, cand & rows[v], k - 1):
        return True
    return has_clique(rows, cand ^ bit, k)


# ---------------------------------------------------------------------------
# tournament clique number


@dataclass(frozen=True)
class OmegaCertificate:
    """Result of a tournament clique number computation.

    In exact mode, ``value`` is the minimum over all orderings of the clique
    number of the backedge graph, ``witness_order`` achieves it, and
    ``lower_bound == value``.  When the node budget runs out the best known
    bounds are carried instead.
    """

    value: int
    witness_order: tuple[int, ...]
    lower_witness: str
    mode: str  # "exact" | "exceeded"
    nodes_expanded: int
    lower_bound: int

    def to_json(self) -> str:
        return json.dumps({
            "schema": 1,
            "value": self.value,
            "order": list(self.witness_order),
            "mode": self.mode,
            "nodes_expanded": self.nodes_expanded,
            "lower_bound": self.lower_bound,
        })


def _transitive_order(T: Tournament, allowed: int) -> tuple[int, ...] | None:
    """Topological order of T[allowed] if transitive, else None."""
    verts = list(iter_bits(allowed))
    degs = [(-(T.out_rows[v] & allowed).bit_count(), v) for v in verts]
    degs.sort()
    seen = {-d for d, _ in degs}
    if seen != set(range(len(verts))):
        return None
    order = tuple(v for _, v in degs)
    later = 0
    for v in reversed(order):
        if T.out_rows[v] & later != later:
            return None
        later |= 1 << v
    return order


def _decide_omega(T: Tournament, allowed: int, k: int,
                  counter: list[int], budget: int | None) -> tuple[int, ...] | None:
    """Lexicographically least placement of ``allowed`` whose backedge clique
    number is at most ``k``, or None if impossible.

    Forward check: the backedge neighbourhood of an unplaced vertex against
    the prefix only grows, so once some unplaced vertex cannot be placed the
    whole subtree is dead.
    """
    rows = T.out_rows
    full = T.full_mask
    inn = tuple(full & ~rows[v] & ~(1 << v) for v in range(T.n))
    g = [0] * T.n
    placed: list[int] = []
    state = [0]  # placed mask

    def rec(remaining: int) -> bool:
        if remaining == 0:
            return True
        rem = remaining
        while rem:
            bit = rem & -rem
            v = bit.bit_length() - 1
            rem ^= bit
            counter[0] += 1
            if budget is not None and counter[0] > budget:
                raise BudgetExceeded
            back = rows[v] & state[0]
            # v joins a clique of size 1 + (clique inside its backedge nbrs)
            if not has_clique(g, back, k):
                g[v] = back
                bb = back
                while bb:
                    ub = bb & -bb
                    g[ub.bit_length() - 1] |= bit
                    bb ^= ub
                placed.append(v)
                state[0] |= bit
                rest = remaining ^ bit
                ok = True
                aff = rest & inn[v]  # unplaced vertices whose backedge set grew
                while aff:
                    wb = aff & -aff
                    aff ^= wb
                    if has_clique(g, rows[wb.bit_length() - 1] & state[0], k):
                        ok = False
                        break
                if ok and rec(rest):
                    return True
                placed.pop()
                state[0] ^= bit
                bb = back
                while bb:
                    ub = bb & -bb
                    g[ub.bit_length() - 1] &= ~bit
                    bb ^= ub
                g[v] = 0
        return False

    if rec(allowed):
        return tuple(placed)
    return None


def omega_upper_order(T: Tournament, allowed: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Cheap upper bound: clique number of the backedge graph under a greedy order."""
    mask = T.full_mask if allowed is None else allowed
    verts = sorted(iter_bits(mask), key=lambda v: (-(T.out_rows[v] & mask).bit_count(), v))
    g = [0] * T.n
    placed_mask = 0
    for v in verts:
        back = T.out_rows[v] & placed_mask
        g[v] = back
        for u in iter_bits(back):
            g[u] |= 1 << v
        placed_mask |= 1 << v
    size, _ = max_clique(Graph(T.n, tuple(g)), within=mask)
    return size, tuple(verts)


def omega_within(T: Tournament, allowed: int, budget: int | None = None) -> OmegaCertificate:
    """Exact tournament clique number of T[allowed] (orders use original labels)."""
    m = allowed.bit_count()
    counter = [0]
    if m == 0:
        return OmegaCertificate(0, (), "exhaustive", "exact", 0, 0)
    topo = _transitive_order(T, allowed)
    if topo is not None:
        return OmegaCertificate(1, topo, "exhaustive", "exact", 0, 1)
    ub_value, ub_order = omega_upper_order(T, allowed)
    k = 2
    try:
        while True:
            if budget is not None and counter[0] >= budget:
                raise BudgetExceeded
            if k >= ub_value:
                # the greedy ordering already certifies k; find the
                # lexicographically least witness at this level
                order = _decide_omega(T, allowed, k, counter, budget)
                assert order is not None, "certified level must be satisfiable"
                return OmegaCertificate(k, order, "exhaustive", "exact", counter[0], k)
            order = _decide_omega(T, allowed, k, counter, budget)
            if order is not None:
                return OmegaCertificate(k, order, "exhaustive", "exact", counter[0], k)
            k += 1
    except BudgetExceeded:
        return OmegaCertificate(ub_value, ub_order, "budget exhausted", "exceeded",
                                counter[0], k)


def omega_dir(T: Tournament, budget: int | None = None,
              max_exact_n: int = DEFAULT_MAX_EXACT_N) -> OmegaCertificate:
    """Exact tournament clique number with an ordering witness.

    Exact mode is limited to ``max_exact_n`` vertices; use
    :func:`omega_dir_bounds` beyond that.
    """
    if T.n > max_exact_n:
        raise ValueError(
            f"exact solve limited to n <= {max_exact_n} (got {T.n}); "
            "raise max_exact_n or use omega_dir_bounds")
    if budget is not None and budget <= 0:
        ub_value, ub_order = (0, ()) if T.n == 0 else omega_upper_order(T)
        return OmegaCertificate(ub_value, ub_order, "budget exhausted", "exceeded",
                                0, 0 if T.n == 0 else 1)
    return omega_within(T, T.full_mask, budget)


class ExactOmega:
    """Memoizing exact evaluator for clique numbers of induced subsets.

    Chain and mountain operations evaluate many overlapping subsets of one
    tournament; the cache is keyed by (tournament, subset mask).
    """

    name = "exact"

    def __init__(self, budget: int | None = None):
        self.budget = budget
        self._cache: dict[tuple[Tournament, int], int] = {}

    def omega(self, T: Tournament, subset: int) -> int:
        key = (T, subset)
        val = self._cache.get(key)
        if val is None:
            cert = omega_within(T, subset, self.budget)
            if cert.mode != "exact":
                raise BudgetExceeded("exact evaluation of a subset exceeded the budget")
            val = cert.value
            self._cache[key] = val
        return val

    def bounds(self, T: Tournament, subset: int) -> tuple[int, int]:
        v = self.omega(T, subset)
        return v, v


class IntervalOmega:
    """Evaluator returning certified lower/upper bounds for large subsets.

    Falls back to the exact solver when the subset is small enough.
    """

    name = "bounds"

    def __init__(self, exact_limit: int = DEFAULT_MAX_EXACT_N, seed: int = 0):
        self.exact_limit = exact_limit
        self.seed = seed
        self._exact = ExactOmega()
        self._cache: dict[tuple[Tournament, int], tuple[int, int]] = {}

    def bounds(self, T: Tournament, subset: int) -> tuple[int, int]:
        if subset.bit_count() <= self.exact_limit:
            return self._exact.bounds(T, subset)
        key = (T, subset)
        if key not in self._cache:
            from .core import induced
            sub, _ = induced(T, subset)
            self._cache[key] = omega_dir_bounds(sub, seed=self.seed)
        return self._cache[key]

    def omega(self, T: Tournament, subset: int) -> int:
        lo, hi = self.bounds(T, subset)
        if lo != hi:
            raise ValueError("interval evaluator could not certify an exact value")
        return lo


def omega_dir_bounds(T: Tournament, seed: int = 0, sa_steps: int = 1500,
                     samples: int = 12, sample_size: int = 12,
                     sample_budget: int = 60_000) -> tuple[int, int]:
    """Certified (lower, upper) bounds on the tournament clique number.

    Upper: simulated annealing over orderings.  Lower: exact values of
    randomly sampled induced subsets of at most ``sample_size`` vertices.
    """
    n = T.n
    if n == 0:
        return 0, 0
    topo = _transitive_order(T, T.full_mask)
    if topo is not None:
        return 1, 1
    rng = random.Random(seed)

    def cost(order: list[int]) -> int:
        g = [0] * n
        placed = 0
        for v in order:
            back = T.out_rows[v] & placed
            g[v] = back
            for u in iter_bits(back):
                g[u] |= 1 << v
            placed |= 1 << v
        size, _ = max_clique(Graph(n, tuple(g)))
        return size

    ub, greedy = omega_upper_order(T)
    order = list(greedy)
    cur = ub
    temp = 2.0
    for _ in range(sa_steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        order[i], order[j] = order[j], order[i]
        c = cost(order)
        if c <= cur or rng.random() < math.exp((cur - c) / max(temp, 1e-9)):
            cur = c
            ub = min(ub, c)
        else:
            order[i], order[j] = order[j], order[i]
        temp *= 0.998

    lower = 2  # non-transitive: every ordering has a backedge
    size = min(sample_size, n)
    verts = list(range(n))
    for _ in range(samples):
        rng.shuffle(verts)
        mask = 0
        for v in verts[:size]:
            mask |= 1 << v
        cert = omega_within(T, mask, budget=sample_budget)
        lower = max(lower, cert.lower_bound if cert.mode == "exceeded" else cert.value)
    return lower, max(lower, ub)


# ---------------------------------------------------------------------------
# dichromatic number


@dataclass(frozen=True)
class DicolouringCertificate:
    """A minimum partition of the vertices into transitive classes."""

    value: int
    classes: tuple[tuple[int, ...], ...]
    mode: str
    nodes_expanded: int

    def to_json(self) -> str:
        return json.dumps({
            "schema": 1,
            "value": self.value,
            "classes": [list(c) for c in self.classes],
            "mode": self.mode,
            "nodes_expanded": self.nodes_expanded,
        })


def _fit_position(T: Tournament, cls: list[int], v: int) -> int | None:
    """Insertion position keeping the class transitive, or None.

    ``cls`` is kept in dominance order: earlier members beat later ones.
    """
    p = 0
    seen_zero = False
    for u in cls:
        if T.has_arc(u, v):
            if seen_zero:
                return None
            p += 1
        else:
            seen_zero = True
    return p


def _decide_chi(T: Tournament, k: int, counter: list[int],
                budget: int | None) -> list[list[int]] | None:
    """First partition of V(T) into at most k transitive classes, or None."""
    n = T.n
    classes: list[list[int]] = []

    def rec(v: int) -> bool:
        if v == n:
            return True
        limit = min(len(classes) + 1, k)
        for ci in range(limit):
            counter[0] += 1
            if budget is not None and counter[0] > budget:
                raise BudgetExceeded
            if ci == len(classes):
                classes.append([v])
                if rec(v + 1):
                    return True
                classes.pop()
            else:
                pos = _fit_position(T, classes[ci], v)
                if pos is not None:
                    classes[ci].insert(pos, v)
                    if rec(v + 1):
                        return True
                    classes[ci].pop(pos)
        return False

    if rec(0):
        return [list(c) for c in classes]
    return None


def greedy_chi_upper(T: Tournament) -> list[list[int]]:
    classes: list[list[int]] = []
    for v in range(T.n):
        for cls in classes:
            pos = _fit_position(T, cls, v)
            if pos is not None:
                cls.insert(pos, v)
                break
        else:
            classes.append([v])
    return classes


def chi_dir(T: Tournament, budget: int | None = None,
            max_exact_n: int = DEFAULT_CHI_MAX_EXACT_N) -> DicolouringCertificate:
    """Exact dichromatic number: minimum transitive-class partition."""
    if T.n > max_exact_n:
        raise ValueError(f"exact dichromatic solve limited to n <= {max_exact_n}")
    if T.n == 0:
        return DicolouringCertificate(0, (), "exact", 0)
    counter = [0]
    upper = greedy_chi_upper(T)
    k = 1
    try:
        while k < len(upper):
            found = _decide_chi(T, k, counter, budget)
            if found is not None:
                return _chi_cert(found, k, counter[0], "exact")
            k += 1
        return _chi_cert(upper, len(upper), counter[0], "exact")
    except BudgetExceeded:
        return _chi_cert(upper, len(upper), counter[0], "exceeded")


def _chi_cert(classes, value, nodes, mode) -> DicolouringCertificate:
    canon = tuple(sorted(tuple(sorted(c)) for c in classes))
    return DicolouringCertificate(value, canon, mode, nodes)
