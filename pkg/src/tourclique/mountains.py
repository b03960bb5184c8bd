"""Heavy/light arcs and mountain certificates.

An order-1 mountain is a single vertex.  An arc u -> v is r-heavy when some
order-r mountain is out-complete to u and in-complete from v; a witnessed
clique of size s whose arcs are all r-heavy, together with the witnesses and
their recursive witnesses, forms an (r, s)-mountain once minimised.  An
order-(r+1) mountain is an (r, r+1)-mountain.

Existence queries are memoised per (parameters, allowed vertex mask) on a
per-tournament search object, so repeated audits on the same tournament are
cheap.  Everything here is exact; searches that would exceed the step limit
raise instead of approximating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import Tournament, VertexSet, iter_bits, mask_of
from .solvers import ExactOmega, has_clique, omega_within

R_CAP_DEFAULT = 4
_STEP_LIMIT_DEFAULT = 50_000_000


class MountainBudgetExceeded(Exception):
    """Raised when a mountain search exceeds its step limit."""


@dataclass(frozen=True, eq=False)
class MountainCertificate:
    """Recursive witness for an (r, s)-mountain.

    ``witnesses`` maps each arc (u, v) of the induced clique to an order-r
    certificate whose vertices all beat u and are beaten by v.
    ``vertex_set`` is the union of the clique and all witness vertices and is
    minimal: no vertex can be removed keeping a fully witnessed clique.
    """

    r: int
    s: int
    clique: tuple[int, ...]
    witnesses: dict[tuple[int, int], "MountainCertificate"]
    vertex_set: frozenset[int]

    def order(self) -> int | None:
        """Mountain order if this is an order mountain (s = 1 or s = r + 1)."""
        if self.s == 1:
            return 1
        if self.s == self.r + 1:
            return self.s
        return None

    def vertex_mask(self) -> int:
        return mask_of(self.vertex_set)


def _single_cert(v: int) -> MountainCertificate:
    return MountainCertificate(1, 1, (v,), {}, frozenset((v,)))


class _MountainSearch:
    """Memoised existence/extraction engine for one tournament."""

    def __init__(self, T: Tournament, step_limit: int = _STEP_LIMIT_DEFAULT):
        self.T = T
        self.rows = T.out_rows
        self.full = T.full_mask
        self.inn = tuple(T.inn(v) for v in range(T.n))
        self.step_limit = step_limit
        self.steps = 0
        self._exists: dict[tuple[int, int, int], bool] = {}

    def _tick(self, k: int = 1) -> None:
        self.steps += k
        if self.steps > self.step_limit:
            raise MountainBudgetExceeded(f"step limit {self.step_limit} exceeded")

    def heavy(self, r: int, u: int, v: int, allowed: int | None = None) -> bool:
        """Is the arc u -> v r-heavy (witness inside ``allowed``)?"""
        if not self.T.has_arc(u, v):
            raise ValueError(f"no arc {u} -> {v}")
        a = self.full if allowed is None else allowed
        return self.exists_order(r, a & self.inn[u] & self.rows[v])

    def pair_heavy(self, r: int, u: int, v: int, allowed: int) -> bool:
        if self.T.has_arc(u, v):
            return self.heavy(r, u, v, allowed)
        return self.heavy(r, v, u, allowed)

    def exists_order(self, k: int, allowed: int) -> bool:
        if k == 1:
            return allowed != 0
        return self.exists_rs(k - 1, k, allowed)

    def exists_rs(self, r: int, s: int, allowed: int) -> bool:
        """Does ``allowed`` contain an s-set with all arcs r-heavy inside it?"""
        if s == 1:
            return allowed != 0
        key = (r, s, allowed)
        val = self._exists.get(key)
        if val is not None:
            return val
        verts = list(iter_bits(allowed))
        if len(verts) < s:
            val = False
        else:
            hrows = [0] * self.T.n
            for i, u in enumerate(verts):
                for w in verts[i + 1:]:
                    self._tick()
                    if self.pair_heavy(r, u, w, allowed):
                        hrows[u] |= 1 << w
                        hrows[w] |= 1 << u
            val = has_clique(hrows, allowed, s)
        self._exists[key] = val
        return val

    def _least_clique(self, r: int, s: int, allowed: int) -> tuple[int, ...] | None:
        """Lexicographically least s-set of ``allowed`` pairwise r-heavy within it."""
        verts = list(iter_bits(allowed))
        chosen: list[int] = []

        def rec(start: int) -> tuple[int, ...] | None:
            if len(chosen) == s:
                return tuple(chosen)
            for idx in range(start, len(verts) - (s - len(chosen)) + 1):
                v = verts[idx]
                self._tick()
                if all(self.pair_heavy(r, u, v, allowed) for u in chosen):
                    chosen.append(v)
                    got = rec(idx + 1)
                    if got is not None:
                        return got
                    chosen.pop()
            return None

        return rec(0)

    def _seed_order(self, k: int, allowed: int) -> int:
        if k == 1:
            low = allowed & -allowed
            return low
        return self._seed_rs(k - 1, k, allowed)

    def _seed_rs(self, r: int, s: int, allowed: int) -> int:
        """Union of one witnessed clique and greedily chosen witness sets."""
        clique = self._least_clique(r, s, allowed)
        assert clique is not None
        union = mask_of(clique)
        for u, v in _clique_arcs(self.T, clique):
            union |= self._seed_order(r, allowed & self.inn[u] & self.rows[v])
        return union

    def minimize_rs(self, r: int, s: int, start: int) -> int:
        """Remove vertices (smallest label first) while a witnessed clique survives."""
        S = start
        while True:
            for x in iter_bits(S):
                if self.exists_rs(r, s, S & ~(1 << x)):
                    S &= ~(1 << x)
                    break
            else:
                return S

    def extract_order(self, k: int, allowed: int) -> MountainCertificate | None:
        if k == 1:
            if allowed == 0:
                return None
            return _single_cert((allowed & -allowed).bit_length() - 1)
        return self.extract_rs(k - 1, k, allowed)

    def extract_rs(self, r: int, s: int, allowed: int) -> MountainCertificate | None:
        if s == 1:
            if allowed == 0:
                return None
            v = (allowed & -allowed).bit_length() - 1
            return MountainCertificate(r, 1, (v,), {}, frozenset((v,)))
        if not self.exists_rs(r, s, allowed):
            return None
        S = self.minimize_rs(r, s, self._seed_rs(r, s, allowed))
        clique = self._least_clique(r, s, S)
        assert clique is not None
        wits: dict[tuple[int, int], MountainCertificate] = {}
        union = mask_of(clique)
        for u, v in _clique_arcs(self.T, clique):
            w = self.extract_order(r, S & self.inn[u] & self.rows[v])
            assert w is not None
            wits[(u, v)] = w
            union |= w.vertex_mask()
        assert union == S, "minimal set does not match its own extraction"
        return MountainCertificate(r, s, clique, wits, frozenset(iter_bits(S)))


_searches: dict[tuple[Tournament, int], _MountainSearch] = {}


def _search(T: Tournament, step_limit: int = _STEP_LIMIT_DEFAULT) -> _MountainSearch:
    key = (T, step_limit)
    if key not in _searches:
        _searches[key] = _MountainSearch(T, step_limit)
    return _searches[key]


def clear_caches() -> None:
    _searches.clear()


def _clique_arcs(T: Tournament, clique: Sequence[int]) -> list[tuple[int, int]]:
    arcs = []
    for i, u in enumerate(clique):
        for w in clique[i + 1:]:
            arcs.append((u, w) if T.has_arc(u, w) else (w, u))
    arcs.sort()
    return arcs


# ---------------------------------------------------------------------------
# public operations


@dataclass(frozen=True)
class ArcClassification:
    """Per-arc heavy/light flags at level r, with a witness per heavy arc."""

    r: int
    n: int
    heavy: frozenset[tuple[int, int]]
    witnesses: dict[tuple[int, int], MountainCertificate]

    def is_heavy(self, u: int, v: int) -> bool:
        return (u, v) in self.heavy


def classify_arcs(T: Tournament, r: int,
                  step_limit: int = _STEP_LIMIT_DEFAULT) -> ArcClassification:
    """Classify every arc of T as r-heavy or r-light, with witnesses."""
    if r < 1:
        raise ValueError("r must be positive")
    search = _search(T, step_limit)
    heavy = set()
    wits: dict[tuple[int, int], MountainCertificate] = {}
    for u in range(T.n):
        for v in iter_bits(T.out_rows[u]):
            if search.heavy(r, u, v):
                heavy.add((u, v))
                cert = search.extract_order(r, search.inn[u] & search.rows[v])
                wits[(u, v)] = cert
    return ArcClassification(r, T.n, frozenset(heavy), wits)


def find_mountain(T: Tournament, r: int, s: int,
                  within: VertexSet | int | None = None,
                  step_limit: int = _STEP_LIMIT_DEFAULT) -> MountainCertificate | None:
    """A minimal (r, s)-mountain certificate in T, or None."""
    if r < 1 or s < 1:
        raise ValueError("r and s must be positive")
    search = _search(T, step_limit)
    if within is None:
        allowed = T.full_mask
    elif isinstance(within, VertexSet):
        allowed = within.bits
    else:
        allowed = within
    return search.extract_rs(r, s, allowed)


def verify_mountain(T: Tournament, cert: MountainCertificate) -> tuple[bool, list[str]]:
    """Recursively check a certificate: shape, completeness relations,
    minimality, and the factorial-squared size bound for order mountains."""
    issues: list[str] = []
    search = _search(T)

    def rec(c: MountainCertificate, path: str) -> None:
        if c.r < 1 or c.s < 1:
            issues.append(f"{path}: non-positive parameters")
            return
        if len(c.clique) != c.s or sorted(set(c.clique)) != list(c.clique):
            issues.append(f"{path}: clique is not a sorted {c.s}-set")
            return
        if any(not 0 <= v < T.n for v in c.clique):
            issues.append(f"{path}: clique vertex outside tournament")
            return
        expected_arcs = set(_clique_arcs(T, c.clique))
        if set(c.witnesses) != expected_arcs:
            issues.append(f"{path}: witness arcs do not match the clique arcs of T")
        union = set(c.clique)
        for (u, v), w in sorted(c.witnesses.items()):
            sub = f"{path}/{u}->{v}"
            if w.order() != (c.r if c.r > 1 else 1):
                issues.append(f"{sub}: witness is not an order-{c.r} mountain")
            for m in sorted(w.vertex_set):
                if m in (u, v):
                    issues.append(f"{sub}: witness overlaps the arc endpoints")
                    break
                if not T.has_arc(m, u):
                    issues.append(f"{sub}: witness not out-complete to {u}")
                    break
                if not T.has_arc(v, m):
                    issues.append(f"{sub}: witness not in-complete from {v}")
                    break
            rec(w, sub)
            union |= w.vertex_set
        if frozenset(union) != c.vertex_set:
            issues.append(f"{path}: vertex_set is not the union of clique and witnesses")
        mask = c.vertex_mask()
        if not search.exists_rs(c.r, c.s, mask):
            issues.append(f"{path}: set does not contain a witnessed clique")
        else:
            for x in sorted(c.vertex_set):
                if search.exists_rs(c.r, c.s, mask & ~(1 << x)):
                    issues.append(f"{path}: not minimal, vertex {x} removable")
                    break
        o = c.order()
        if o is not None and len(c.vertex_set) > math.factorial(o) ** 2:
            issues.append(f"{path}: size exceeds (order!)^2 bound")

    rec(cert, "cert")
    return (not issues, issues)


def _colour_of(phi, v: int) -> str:
    c = phi[v] if not callable(phi) else phi(v)
    if c not in ("red", "blue"):
        raise ValueError(f"colouring must map to 'red'/'blue', got {c!r}")
    return c


def two_colouring_witness(T: Tournament, cert: MountainCertificate, phi,
                          a: int, b: int) -> tuple[str, MountainCertificate]:
    """From a 2-coloured order-r mountain extract a red order-a or blue
    order-b monochromatic mountain, where a + b = r + 1.

    Follows the recursive descent: the clique has enough vertices of one
    colour; each of their connecting witnesses either yields the opposite
    full-target mountain (done) or a smaller same-colour mountain, and those
    reassemble into the same-colour target.
    """
    if a < 1 or b < 1:
        raise ValueError("colour targets must be positive")
    order = cert.order()
    if order is None:
        raise ValueError("certificate is not an order mountain")
    if a + b != order + 1:
        raise ValueError(f"need a + b = order + 1 ({a} + {b} != {order} + 1)")
    ok, problems = verify_mountain(T, cert)
    if not ok:
        raise ValueError(f"invalid certificate: {problems[:3]}")
    search = _search(T)

    def descend(c: MountainCertificate, ta: int, tb: int) -> tuple[str, MountainCertificate]:
        o = c.order()
        if o == 1:
            return _colour_of(phi, c.clique[0]), c
        reds = [v for v in c.clique if _colour_of(phi, v) == "red"]
        blues = [v for v in c.clique if _colour_of(phi, v) == "blue"]
        if len(blues) >= tb:
            primary, target, members = "blue", tb, blues
        else:
            primary, target, members = "red", ta, reds
        if target == 1:
            return primary, _single_cert(members[0])
        chosen = members[:target]
        collected: dict[tuple[int, int], MountainCertificate] = {}
        union = mask_of(chosen)
        for u, v in _clique_arcs(T, chosen):
            if primary == "blue":
                col, sub = descend(c.witnesses[(u, v)], ta, tb - 1)
                if col == "red":
                    return col, sub  # full red target found below
            else:
                col, sub = descend(c.witnesses[(u, v)], ta - 1, tb)
                if col == "blue":
                    return col, sub
            collected[(u, v)] = sub
            union |= sub.vertex_mask()
        # all witnesses came back in the primary colour: the chosen vertices
        # form a witnessed clique inside the monochromatic union
        out = search.extract_order(target, union)
        assert out is not None, "assembled monochromatic set lost its mountain"
        return primary, out

    colour, result = descend(cert, a, b)
    return colour, result


def _light_masks(T: Tournament, r: int,
                 step_limit: int = _STEP_LIMIT_DEFAULT) -> tuple[list[int], list[int]]:
    """(light_in, light_out) masks per vertex."""
    search = _search(T, step_limit)
    light_in = [0] * T.n
    light_out = [0] * T.n
    for u in range(T.n):
        for v in iter_bits(T.out_rows[u]):
            if not search.heavy(r, u, v):
                light_out[u] |= 1 << v
                light_in[v] |= 1 << u
    return light_in, light_out


def greedy_light_set(T: Tournament, r: int, order: Sequence[int]) -> VertexSet:
    """Scan ``order`` adding each vertex with no r-light in-neighbour already taken."""
    order = tuple(order)
    if sorted(order) != list(range(T.n)):
        raise ValueError("order is not a permutation")
    light_in, _ = _light_masks(T, r)
    taken = 0
    for v in order:
        if light_in[v] & taken == 0:
            taken |= 1 << v
    return VertexSet(T.n, taken)


def min_light_dominating(T: Tournament, r: int,
                         step_limit: int = _STEP_LIMIT_DEFAULT) -> VertexSet:
    """Minimum set W such that every vertex outside W has an r-light
    in-neighbour in W.  Exact branch and bound; V(T) is always feasible."""
    n = T.n
    if n == 0:
        return VertexSet(0, 0)
    light_in, light_out = _light_masks(T, r, step_limit)
    full = T.full_mask
    best_mask = [full]
    best_size = [n]

    def rec(w: int, covered: int, size: int) -> None:
        if covered == full:
            if size < best_size[0]:
                best_size[0] = size
                best_mask[0] = w
            return
        if size + 1 >= best_size[0]:
            return
        v = ((~covered & full) & -(~covered & full)).bit_length() - 1
        options = light_in[v] | (1 << v)
        for u in iter_bits(options):
            rec(w | (1 << u), covered | (1 << u) | light_out[u], size + 1)

    rec(0, 0, 0)
    return VertexSet(n, best_mask[0])


@dataclass(frozen=True)
class GrowMountain:
    cert: MountainCertificate


@dataclass(frozen=True)
class HypothesisFailed:
    bullet: int
    description: str
    measured: object
    required: object


@dataclass(frozen=True)
class ProofStepContradiction:
    diagnostic: str


def grow_mountain_step(T: Tournament, r: int, s: int, b: int, c: int,
                       q_override: int | None = None,
                       step_limit: int = _STEP_LIMIT_DEFAULT):
    """Execute the mountain-growing step: from (r, s)-mountains to an
    (r, s+1)-mountain under three measured hypotheses.

    Measures the hypotheses exactly and then follows the constructive
    argument: a minimum light dominating set, the partition (A, B, C) around
    a size-q subset, an ordering-greedy set inside B, and the clique
    extension attempts.  Returns GrowMountain, HypothesisFailed, or
    ProofStepContradiction.

    At the honest Ramsey-derived q the first hypothesis needs astronomically
    large clique number, so ``q_override`` allows exercising the procedure at
    desk scale; with an override, a dead end in the counting argument is
    reported as a ProofStepContradiction mentioning the override.
    """
    if r < 1 or not 1 <= s <= r or b < 1 or c < 1:
        raise ValueError("need r >= 1, 1 <= s <= r, b >= 1, c >= 1")
    from . import bounds as _bounds
    if q_override is not None:
        if q_override < 1:
            raise ValueError("q_override must be positive")
        q = q_override
    else:
        q_val = _bounds.growth_subset_size(b, r, s).value
        if not isinstance(q_val, int):
            return HypothesisFailed(
                1, "clique number at least (b+1)q + c", T.n,
                f"about {q_val} plus, far beyond any finite tournament here")
        q = q_val
    ev = ExactOmega()
    search = _search(T, step_limit)
    full = T.full_mask
    thresh1 = (b + 1) * q + c
    w_t = ev.omega(T, full)
    if w_t < thresh1:
        return HypothesisFailed(1, "clique number at least (b+1)q + c", w_t, thresh1)
    for v in range(T.n):
        w_out = ev.omega(T, T.out_rows[v])
        if w_out > b:
            return HypothesisFailed(
                2, f"out-neighbourhood clique number of vertex {v} at most b", w_out, b)
    # third hypothesis: every subset of clique number >= c carries an
    # order-r mountain and an (r, s)-mountain.  Existence is monotone, so
    # only subsets lacking one need their clique number checked.
    for mask in range(1, full + 1):
        if not search.exists_order(r, mask) or not search.exists_rs(r, s, mask):
            if ev.omega(T, mask) >= c:
                return HypothesisFailed(
                    3, "rich subsets contain the required mountains",
                    f"subset {bin(mask)} of clique number >= {c} lacks one", c)

    W = min_light_dominating(T, r, step_limit)
    if len(W) < q:
        return ProofStepContradiction(
            f"minimum light dominating set has {len(W)} < q = {q} vertices, "
            "impossible under the measured first hypothesis" if q_override is None
            else f"dominating set smaller than overridden q = {q}")
    S_mask = 0
    for v in list(W)[:q]:
        S_mask |= 1 << v
    A_mask = B_mask = C_mask = 0
    light_in, _ = _light_masks(T, r, step_limit)
    for x in iter_bits(full & ~S_mask):
        if T.out_rows[x] & S_mask == S_mask:
            A_mask |= 1 << x
        elif light_in[x] & S_mask:
            B_mask |= 1 << x
        else:
            C_mask |= 1 << x
    w_a = ev.omega(T, A_mask)
    if w_a < c:
        return ProofStepContradiction(
            f"out-complete part has clique number {w_a} < c = {c}, impossible "
            "under measured hypotheses")
    M = search.extract_order(r, A_mask)
    if M is None:
        return ProofStepContradiction("rich out-complete part lacks an order mountain")
    w_b = ev.omega(T, B_mask)
    bound_b = b * math.factorial(r) ** 2 + 1
    if w_b >= bound_b:
        return ProofStepContradiction(
            "light-dominated part measured too rich; its light arcs would be "
            "witnessed heavy by the mountain in the out-complete part")
    # greedy set along an optimal ordering of B, then the two extension attempts
    cert_b = omega_within(T, B_mask)
    taken = 0
    for v in cert_b.witness_order:
        if light_in[v] & taken == 0:
            taken |= 1 << v
    hrows = [0] * T.n
    verts = list(iter_bits(taken))
    for i, u in enumerate(verts):
        for w in verts[i + 1:]:
            if search.pair_heavy(r, u, w, full):
                hrows[u] |= 1 << w
                hrows[w] |= 1 << u
    if has_clique(hrows, taken, s + 1):
        cert = search.extract_rs(r, s + 1, full)
        assert cert is not None
        return GrowMountain(cert)
    Ap = search.extract_rs(r, s, A_mask)
    if Ap is None:
        return ProofStepContradiction("rich out-complete part lacks an (r, s)-mountain")
    for v in iter_bits(S_mask):
        if all(search.heavy(r, u, v) for u in Ap.clique):
            cert = search.extract_rs(r, s + 1, full)
            assert cert is not None
            return GrowMountain(cert)
    return ProofStepContradiction(
        "no extension found; a light dominating set smaller than the minimum "
        "would exist" + ("" if q_override is None else
                         f" (q overridden to {q}, counting argument not binding)"))


def log_bound_audit(T: Tournament, r_cap: int = R_CAP_DEFAULT) -> bool:
    """For the largest order r with an r-mountain (up to r_cap), check the
    logarithmic clique-number lower bound floor(log2 r)."""
    if T.n == 0:
        return True
    search = _search(T)
    r_max = 1
    while r_max < r_cap and search.exists_order(r_max + 1, T.full_mask):
        r_max += 1
    ev = ExactOmega()
    return ev.omega(T, T.full_mask) >= math.floor(math.log2(r_max))
