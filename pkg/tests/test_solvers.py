import random

import pytest

from tourclique.core import (backedge_graph, random_tournament,
                             transitive_tournament)
from tourclique.solvers import (ExactOmega, Graph, chi_dir, graph_from_edges,
                                max_clique, omega_dir, omega_dir_bounds,
                                omega_within)

from conftest import cyclic_triangle, oracle_chi, oracle_omega


def brute_max_clique(g: Graph) -> int:
    best = 0
    for mask in range(1 << g.n):
        verts = [v for v in range(g.n) if mask >> v & 1]
        if all(g.rows[u] >> v & 1 for i, u in enumerate(verts)
               for v in verts[i + 1:]):
            best = max(best, len(verts))
    return best


def test_max_clique_examples():
    empty4 = Graph(4, (0, 0, 0, 0))
    size, wit = max_clique(empty4)
    assert size == 1 and len(wit) == 1
    k5 = graph_from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert max_clique(k5) == (5, (0, 1, 2, 3, 4))
    c5 = graph_from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    size, wit = max_clique(c5)
    assert size == 2 == brute_max_clique(c5)
    assert c5.rows[wit[0]] >> wit[1] & 1


def test_max_clique_random_vs_brute():
    rng = random.Random(0)
    for _ in range(60):
        n = rng.randint(1, 9)
        rows = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        g = Graph(n, tuple(rows))
        size, wit = max_clique(g)
        assert size == brute_max_clique(g)
        assert all(g.rows[u] >> v & 1 for i, u in enumerate(wit)
                   for v in wit[i + 1:])


def test_omega_dir_basics():
    assert omega_dir(transitive_tournament(5)).value == 1
    assert omega_dir(transitive_tournament(0)).value == 0
    c3 = cyclic_triangle()
    cert = omega_dir(c3)
    assert cert.value == 2 == oracle_omega(c3)
    assert cert.mode == "exact" and cert.lower_witness == "exhaustive"


def test_omega_witness_achieves_value():
    rng = random.Random(1)
    for _ in range(30):
        T = random_tournament(rng.randint(1, 9), rng.randrange(1 << 30))
        cert = omega_dir(T)
        g = backedge_graph(T, cert.witness_order)
        size, _ = max_clique(Graph(T.n, g.edges))
        assert size == cert.value


def test_omega_agrees_with_permutation_oracle():
    rng = random.Random(2)
    for _ in range(40):
        T = random_tournament(rng.randint(1, 7), rng.randrange(1 << 30))
        assert omega_dir(T).value == oracle_omega(T)


def test_omega_lexicographic_witness():
    # among all optimal orderings the placement sequence is lexicographically
    # least; check against explicit enumeration on small cases
    import itertools
    rng = random.Random(7)
    for _ in range(10):
        T = random_tournament(5, rng.randrange(1 << 30))
        cert = omega_dir(T)
        best = None
        for perm in itertools.permutations(range(5)):
            g = backedge_graph(T, perm)
            size, _ = max_clique(Graph(5, g.edges))
            if size == cert.value and (best is None or perm < best):
                best = perm
        assert cert.witness_order == best


def test_omega_budget_exceeded():
    T = random_tournament(10, 4)
    cert = omega_dir(T, budget=5)
    assert cert.mode == "exceeded"
    exact = omega_dir(T)
    assert cert.lower_bound <= exact.value <= cert.value


def test_omega_shrinking_property():
    # deleting one vertex lowers the clique number by at most one, so every
    # intermediate value is realised by some induced subtournament
    rng = random.Random(3)
    for _ in range(10):
        T = random_tournament(9, rng.randrange(1 << 30))
        mask = T.full_mask
        value = omega_within(T, mask).value
        seen = {value}
        while mask:
            v = next(iter([b for b in range(T.n) if mask >> b & 1]))
            mask &= ~(1 << v)
            new = omega_within(T, mask).value
            assert value - 1 <= new <= value
            value = new
            seen.add(value)
        assert seen >= set(range(0, max(seen) + 1))


def test_subadditivity_random():
    rng = random.Random(4)
    for _ in range(60):
        n = rng.randint(2, 9)
        T = random_tournament(n, rng.randrange(1 << 30))
        x = rng.randrange(1 << n)
        w = omega_dir(T).value
        wx = omega_within(T, x).value
        wy = omega_within(T, T.full_mask & ~x).value
        assert w <= wx + wy


def test_chi_dir_basics():
    assert chi_dir(transitive_tournament(6)).value == 1
    c3 = cyclic_triangle()
    cert = chi_dir(c3)
    assert cert.value == 2 == oracle_chi(c3)
    for cls in cert.classes:
        assert len(cls) <= 2


def test_chi_agrees_with_partition_oracle():
    rng = random.Random(5)
    for _ in range(40):
        T = random_tournament(rng.randint(1, 7), rng.randrange(1 << 30))
        assert chi_dir(T).value == oracle_chi(T)


def test_chi_classes_are_transitive_partition():
    from tourclique.core import induced
    from tourclique.solvers import _transitive_order
    rng = random.Random(6)
    for _ in range(20):
        T = random_tournament(rng.randint(2, 10), rng.randrange(1 << 30))
        cert = chi_dir(T)
        seen = set()
        for cls in cert.classes:
            seen.update(cls)
            sub, _ = induced(T, cls)
            assert _transitive_order(sub, sub.full_mask) is not None
        assert seen == set(range(T.n))
        assert len(cert.classes) == cert.value


def test_omega_chi_inequality():
    rng = random.Random(8)
    for _ in range(30):
        T = random_tournament(rng.randint(1, 9), rng.randrange(1 << 30))
        assert omega_dir(T).value <= chi_dir(T).value


def test_omega_of_recursive_family_members():
    from tourclique.constructions import build_d
    d3 = build_d(3)
    assert omega_dir(d3).value == oracle_omega(d3) == 2


def test_omega_dir_bounds():
    t20 = transitive_tournament(20)
    assert omega_dir_bounds(t20) == (1, 1)
    rng = random.Random(9)
    for _ in range(6):
        T = random_tournament(12, rng.randrange(1 << 30))
        lo, hi = omega_dir_bounds(T, seed=1)
        exact = omega_dir(T).value
        assert lo <= exact <= hi


def test_omega_dir_bounds_bracket_recursive_member():
    from tourclique.constructions import build_d
    d4 = build_d(4)
    lo, hi = omega_dir_bounds(d4, seed=0)
    exact = omega_dir(d4, max_exact_n=15).value
    assert lo <= exact <= hi
    assert hi >= omega_dir(build_d(3)).value  # the previous member embeds


def test_exact_omega_evaluator_caches():
    T = random_tournament(8, 17)
    ev = ExactOmega()
    v1 = ev.omega(T, T.full_mask)
    v2 = ev.omega(T, T.full_mask)
    assert v1 == v2 == omega_dir(T).value
    assert ev.bounds(T, 0b1111) == (omega_within(T, 0b1111).value,) * 2
