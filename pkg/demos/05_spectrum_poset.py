"""The label space at q = 0: same points as q > 0, coarser separation.

Representation labels are pairs (torus point, Weyl element).  The map from
the q > 0 labels to the crystal labels is the identity; what degenerates is
the topology, sketched as a directed graph of specializations: each label
sits over everything strictly below it in Bruhat order at the same torus
point.  Chains of specializations are exactly the failures of the Hausdorff
property.
"""

from qcrystal.coxeter import normal_form
from qcrystal.spectrum import (
    RepLabel,
    non_hausdorff_witness,
    sort_labels,
    specialization_edges,
    t_q_map,
    to_dot,
)
from qcrystal.reps import TorusPoint
from qcrystal.coxeter import Permutation
import itertools

n = 2
t0 = TorusPoint.base(n)
labels = [
    RepLabel(t0, Permutation(images))
    for images in itertools.permutations(range(1, n + 2))
]

print("== labels over a single torus point (rank 2) ==")
for label in sort_labels(labels):
    print("  word", normal_form(label.w).letters() or "(empty)")

print()
print("== the label correspondence q > 0 -> q = 0 is the identity ==")
mapping = t_q_map(labels)
print("  fixed points:", sum(1 for a, b in mapping.items() if a == b), "of", len(labels))

print()
edges = specialization_edges(labels)
covers = specialization_edges(labels, transitive_reduction=True)
print(f"== specializations: {len(edges)} edges, {len(covers)} covering edges ==")
for a, b in covers:
    print(
        "  ",
        normal_form(a.w).letters(),
        "->",
        normal_form(b.w).letters() or "(empty)",
    )

print()
wit = non_hausdorff_witness(n)
print("== witness pair that no disjoint open sets separate ==")
print("  ", wit[0].w.images, "over", wit[1].w.images)

print()
print("== DOT output (pipe into graphviz) ==")
print(to_dot(labels, covers, wit))
