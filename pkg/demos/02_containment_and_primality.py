"""Induced-subtournament search, the family indices, and primality.

The two families are mutually unavoidable: a tournament omitting both only
has bounded clique number.  This script shows the separations that make
both families necessary.

Run:  python3 demos/02_containment_and_primality.py
"""

from tourclique import (build_a, build_d, build_u, contains_copy,
                        family_index, find_module, is_prime, substitute,
                        transitive_tournament)
from tourclique.core import delta_compose, single_vertex

c3 = delta_compose(single_vertex(), single_vertex(), single_vertex())

# The A side never contains the third D member, and the D side never
# contains the third A member: each family is blind to the other.
print("D_3 inside A_4?", contains_copy(build_a(4), build_d(3)) is not None)
print("A_3 inside D_5?", contains_copy(build_d(5), build_a(3)) is not None)

# The witness for the second separation is primality: every prime piece of
# a D member has at most three vertices, but A_3 contains a five-vertex
# prime tournament (the U template).
u3 = build_u(3)
print("U_3 prime?", is_prime(u3))
print("U_3 inside A_3?", contains_copy(build_a(3), u3) is not None)
print("D_3 prime?", is_prime(build_d(3)))

# Modules are the images of substitutions; the search returns one.
blown_up = substitute(c3, 2, c3)
print("module of a substituted triangle:", find_module(blown_up).members())

# The family indices: the largest member of each family inside a host.
for T, name in [(transitive_tournament(6), "transitive_6"),
                (build_d(4), "D_4"), (build_a(3), "A_3")]:
    print(f"{name}: largest A index {family_index(T, 'A')}, "
          f"largest D index {family_index(T, 'D')}")
