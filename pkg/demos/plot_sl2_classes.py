"""
Conjugacy classes of SL2(Z/p)
=============================

Classes are read off from the trace, with the two unipotent classes split by
whether the off-diagonal entry is a square.  Here we compare that labelling
with the orbits found from the multiplication table.
"""

from collections import Counter

from scharlau.groups import conjugacy_classes
from scharlau.sl2 import classify, enumerate_sl2

p = 13
G = enumerate_sl2(p)
classes = conjugacy_classes(G)
print(f"|SL2(Z/{p})| = {G.order}, {len(classes)} classes (p + 4 = {p + 4})")

for rep, members in classes:
    labels = Counter(str(classify(G.elements[g])) for g in members)
    (label, count), = labels.items()
    print(f"{label:>14}  size {count:>4}  e.g. {G.elements[rep]}")
