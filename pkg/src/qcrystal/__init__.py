"""Verification workbench for quantized SU(n+1) function algebras at and
near their q = 0 crystal limit.

The layers, bottom up: ``coxeter`` (words and Bruhat order in the symmetric
group), ``fock`` (symbolic weighted-shift operators with certified norm
brackets), ``coalgebra`` (coproduct index paths), ``reps`` (representations
labeled by a torus point and a reduced word), ``crystal`` (limit deficits,
braid and factorization checks, the separating kernel element), ``soibelman``
(grids of blocks and limit sampling), ``spectrum`` (the specialization graph
of labels), and ``cli`` (reproducible batch reports).
"""

__version__ = "0.1.0"
