"""
The invariant of a few small groups
===================================

Coset sums of prime-order subgroups span an ideal of Z[G].  Its intersection
with Z*e is generated by one non-negative integer, computed here by integer
row reduction.  Groups with a fixed point free representation give 0.
"""

from scharlau.groups import builtin, find_partition
from scharlau.ideal import compute_invariant, partition_witness

for spec in ("cyclic:12", "quaternion8", "sl2:5", "gpq:5:2", "gpq:7:3", "gpq:11:5"):
    G = builtin(spec)
    res = compute_invariant(G)
    print(f"{spec:>12}  |G|={G.order:>4}  invariant={res.invariant:>3}  "
          f"generators={res.generators:>5}  rank={res.rank}")

# A partition into subgroups gives an explicit multiple of e inside the ideal.
G = builtin("gpq:7:3")
P = find_partition(G)
_, n = partition_witness(G, P)
print(f"gpq:7:3 splits into {len(P.blocks)} subgroups, so {n}*e lies in the ideal")
