"""Weighted shifts on the Fock ladder: factor words, sections, norm brackets.

Operators here are stored symbolically as sums of tensor words in a handful
of primitives (shift, coshift, vacuum projection, q-diagonals).  Sections cut
the first d ladder states per slot; norm_bounds wraps the section norm with a
certified upper bound from the weights outside the cut.
"""

import numpy as np

from qcrystal.fock import (
    FactorWord,
    Primitive,
    TensorTermSum,
    norm_bounds,
    section,
)

d = 6
q = 0.3

print("== single-slot primitives ==")
shift = TensorTermSum(1, q, ((1.0 + 0j, (FactorWord((Primitive.SHIFT,)),)),))
print("section of the backward shift S at d =", d)
print(np.real(section(shift, d)).astype(int))

weighted = TensorTermSum(
    1, q, ((1.0 + 0j, (FactorWord((Primitive.SHIFT, Primitive.DIAG_SQRTW)),)),)
)
print("section of S sqrt(1 - q^(2N)) at q =", q)
print(np.round(np.real(section(weighted, d)), 4))

print()
print("== certified norm brackets ==")
for label, ts in [
    ("S", shift),
    ("S sqrt(W)", weighted),
    ("S sqrt(W) - S", weighted - shift),
]:
    lo, up = norm_bounds(ts, 16)
    print(f"  {label:14s} lower {lo:.12f}  upper {up:.12f}")

print()
print("== a two-slot sum: S (x) I + I (x) S* ==")
I = FactorWord(())
two = TensorTermSum(
    2,
    q,
    (
        (1.0 + 0j, (FactorWord((Primitive.SHIFT,)), I)),
        (1.0 + 0j, (I, FactorWord((Primitive.COSHIFT,)))),
    ),
)
lo, up = norm_bounds(two, 12)
print(f"  bracket [{lo:.6f}, {up:.6f}] around the true value 2")
