"""The constant pipeline: every threshold in the theory made concrete.

Values stay exact integers while they fit; past roughly 8000 digits they
become deterministic power-tower magnitudes, because the honest constants
leave the material universe almost immediately.  Every value carries a
derivation trace that re-evaluates.

Run:  python3 demos/05_constant_pipeline.py
"""

from tourclique import (growth_subset_size, main_bound, mountain_ladder,
                        ramsey_upper, re_evaluate, rich_out_threshold)
from tourclique.bignum import format_value
from tourclique.bounds import render_trace

print("Ramsey upper bounds: R(3,3) =", ramsey_upper(3, 3).value,
      " R(4,4) <=", ramsey_upper(4, 4).value)

print("\npadded subset size for one mountain-growing step:")
print(render_trace(growth_subset_size(1, 2, 1)))

print("\nthe mountain ladder at b = 1 (thresholds for orders 1, 2, 3):")
for i, e in enumerate(mountain_ladder(1)):
    print(f"  order {i + 1}: clique number {e.value}")

print("\nrich-out-neighbourhood thresholds grow brutally:")
for b in (1, 2, 3, 4, 8):
    print(f"  b={b}: {format_value(rich_out_threshold(b).value)}")
print(f"  b=16 (collapsed ladder): "
      f"{format_value(rich_out_threshold(16).value)}")

print("\nthe final recursion: f(1) is zero, then towers take over")
for t in (1, 2, 3, 4):
    e = main_bound(t)
    print(f"  f({t}) = {format_value(e.value)}")

f2 = main_bound(2)
print("\nf(2) trace, two levels deep:")
print(render_trace(f2, max_depth=2))
print("\nre-evaluated f(2) equals the stored value:",
      re_evaluate(f2) == f2.value)
