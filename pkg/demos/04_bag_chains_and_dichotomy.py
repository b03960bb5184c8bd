"""Bag-chains: ordered vertex sets with mostly-forward arcs, and the
dichotomy that either bounds their union's clique number with an explicit
ordering, or extracts an A-family copy from a clique of backward edges.

Run:  python3 demos/04_bag_chains_and_dichotomy.py
"""

from tourclique import (BagChain, NearBagChain, assign_zones, backward_graph,
                        build_a, build_chain_length8, chain_dichotomy,
                        merge_bags, verify_bag_chain, verify_embedding)
from tourclique.core import (Tournament, VertexSet, delta_compose,
                             single_vertex)

c3 = delta_compose(single_vertex(), single_vertex(), single_vertex())


def forward_layers(layers):
    n = sum(t.n for t in layers)
    rows, off, offsets = [], 0, []
    for t in layers:
        offsets.append(off)
        off += t.n
    for li, t in enumerate(layers):
        later = 0
        for lj in range(li + 1, len(layers)):
            later |= ((1 << layers[lj].n) - 1) << offsets[lj]
        for v in range(t.n):
            rows.append((t.out_rows[v] << offsets[li]) | later)
    return Tournament(n, tuple(rows))


# Eight triangle layers, all arcs forward: a clean chain of level 2.
T = forward_layers([c3] * 8)
bags = tuple(VertexSet(24, 0b111 << (3 * i)) for i in range(8))
chain = BagChain(bags, 2, 1)
print("forward layering verifies as a (2,1) chain:",
      verify_bag_chain(T, chain)[0])

# Merging near-chain bags closes a merged bag once its level tops c.
merged = merge_bags(T, NearBagChain(bags, 2, 0), 2)
print("merged bag count at level 2:", len(merged.bags))
print("backward edges between merged bags:",
      backward_graph(T, merged.bags).edge_count())

# No backward clique: the dichotomy emits a concatenated ordering whose
# backedge clique number it verifies independently.
res = chain_dichotomy(T, NearBagChain(bags, 2, 0), m=2, c=2, a=0, c_small=1)
print(f"dichotomy: {res.kind}, backedge clique {res.ordering.backedge_clique} "
      f"< bound {res.ordering.bound}")

# Now twelve singleton bags hiding a pairwise-backward quadruple: the
# backward graph carries a 4-clique and the dichotomy assembles an induced
# copy of the second A member (a directed triangle) instead.
rows = [0] * 12
for i in range(12):
    for j in range(i + 1, 12):
        rows[i] |= 1 << j
def flip(u, v):
    rows[u] &= ~(1 << v)
    rows[v] |= 1 << u
for s in (0, 3, 6, 9):
    flip(s, s + 2)
for i, u in enumerate((0, 3, 6, 9)):
    for v in (0, 3, 6, 9)[i + 1:]:
        flip(u, v)
Tq = Tournament(12, tuple(rows))
qbags = tuple(VertexSet(12, 1 << i) for i in range(12))
res = chain_dichotomy(Tq, NearBagChain(qbags, 1, 1), m=2, c=1, a=1,
                      c_small=1, require_hypothesis=False)
print(f"quad instance: {res.kind}, embedded triangle at "
      f"{res.embedding.mapping}, verified "
      f"{verify_embedding(Tq, build_a(2), res.embedding)}")

# Zones place leftover vertices between bags by their last rich
# in-neighbourhood; see assign_zones for the audits built on top.
T2 = forward_layers([c3, c3, single_vertex()])
bags2 = (VertexSet(7, 0b111), VertexSet(7, 0b111000))
zones = assign_zones(T2, BagChain(bags2, 2, 1), 1)
print("zone of the trailing vertex:",
      [p for p, z in enumerate(zones.zones) if 6 in z][0] + 0.5)

# The doubling construction grows a whole length-8 chain out of a wide
# enough layering (a few seconds; constants overridden to desk scale).
T3 = forward_layers([c3] * 52)
res8 = build_chain_length8(T3, n=3, c=2, c_large=2,
                           ladder=lambda cl: [2] * 7,
                           class_bar=lambda cl, x: cl, levels=3)
print(f"doubling construction: {res8.kind} with "
      f"{len(res8.chain.bags)} bags, verified "
      f"{verify_bag_chain(T3, res8.chain)[0]}")
