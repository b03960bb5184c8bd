"""Mountains: recursive certificates that force clique number.

An arc is heavy when a smaller mountain sits entirely behind it (beating
the tail, beaten by the head); a clique of heavy arcs plus all its witnesses
is a mountain.  Mountains of order r force clique number log2(r), and a
two-colouring of a mountain always contains a monochromatic smaller one.

Run:  python3 demos/03_mountains.py
"""

import random

from tourclique import (classify_arcs, find_mountain, greedy_light_set,
                        log_bound_audit, min_light_dominating, omega_dir,
                        random_tournament, two_colouring_witness,
                        verify_mountain)
from tourclique.core import delta_compose, single_vertex, transitive_tournament

c3 = delta_compose(single_vertex(), single_vertex(), single_vertex())

# Level-one heaviness is just "sits on a directed triangle".
print("heavy arcs of the triangle:", sorted(classify_arcs(c3, 1).heavy))
print("heavy arcs of a transitive tournament:",
      sorted(classify_arcs(transitive_tournament(5), 1).heavy))

# The triangle is itself the smallest mountain above a single vertex.
cert = find_mountain(c3, 1, 2)
print("order-2 mountain in the triangle: clique", cert.clique,
      "vertices", sorted(cert.vertex_set))
print("verifies:", verify_mountain(c3, cert)[0])

# Random tournaments around ten vertices start carrying order-3 mountains.
rng = random.Random(0)
for _ in range(40):
    T = random_tournament(11, rng.randrange(1 << 30))
    cert = find_mountain(T, 2, 3)
    if cert is not None:
        print(f"order-3 mountain on {len(cert.vertex_set)} vertices, "
              f"clique {cert.clique}; tournament clique number "
              f"{omega_dir(T).value}")
        phi = {v: rng.choice(["red", "blue"]) for v in range(T.n)}
        col, wit = two_colouring_witness(T, cert, phi, 2, 2)
        print(f"  random two-colouring yields a {col} order-{wit.order()} "
              f"mountain on {sorted(wit.vertex_set)}")
        break

# Light arcs (the complement of heavy) admit small dominating sets on
# transitive-ish tournaments and degenerate to everything on the triangle.
print("minimum light dominating set, transitive:",
      min_light_dominating(transitive_tournament(5), 1).members())
print("minimum light dominating set, triangle:",
      min_light_dominating(c3, 1).members())
print("greedy light set along the identity order:",
      greedy_light_set(transitive_tournament(5), 1, range(5)).members())

# The logarithmic lower bound holds on every instance we can measure.
ok = all(log_bound_audit(random_tournament(9, s)) for s in range(50))
print("log lower-bound audit over 50 random tournaments:", ok)
