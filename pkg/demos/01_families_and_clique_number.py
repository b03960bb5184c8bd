"""Tour of the basic objects: tournaments, backedge graphs, the clique
number of a tournament, and the two extremal families.

Run:  python3 demos/01_families_and_clique_number.py
"""

from tourclique import (backedge_graph, build_a, build_d, chi_dir,
                        delta_compose, format_trn, omega_dir,
                        random_tournament, single_vertex,
                        transitive_tournament)

# A tournament orients every pair.  The directed triangle is the smallest
# one that is not transitive.
c3 = delta_compose(single_vertex(), single_vertex(), single_vertex())
print("the directed triangle, as .trn text:")
print(format_trn(c3))

# Each vertex ordering turns a tournament into an undirected "backedge"
# graph: an edge wherever an arc points backwards.  The clique number of the
# tournament is the smallest clique number any ordering achieves.
for order in [(0, 1, 2), (2, 1, 0)]:
    g = backedge_graph(c3, order)
    print(f"ordering {order}: {g.edge_count()} backedge(s)")

cert = omega_dir(c3)
print(f"clique number of the triangle: {cert.value} "
      f"(witness ordering {cert.witness_order})")
print(f"transitive tournaments always score 1: "
      f"{omega_dir(transitive_tournament(6)).value}")

# Random tournaments stay surprisingly low for a while.
for n in (6, 10, 13):
    T = random_tournament(n, seed=1)
    print(f"random n={n}: clique number {omega_dir(T).value}, "
          f"dichromatic number {chi_dir(T).value}")

# The D family stacks two copies of itself against a single vertex in a
# cycle; the A family interleaves a spine with blocks of the previous
# member.  Both have slowly growing clique number.
for n in (2, 3, 4):
    d = build_d(n)
    print(f"D_{n}: {d.n} vertices, clique number "
          f"{omega_dir(d, max_exact_n=15).value}, dichromatic {chi_dir(d).value}")
for n in (2, 3):
    a = build_a(n)
    print(f"A_{n}: {a.n} vertices, clique number {omega_dir(a).value}, "
          f"dichromatic {chi_dir(a).value}")
