"""How fast do the scaled generators reach their crystal limit?

For a word w and 0 < q < 1, each generator entry of the scaled representation
differs from its q = 0 counterpart by a deficit operator; certified bounds on
its norm quantify the convergence.  Two anchors are exact: at the one-letter
word, entry (2,1) has deficit exactly q, and entry (1,1) exactly
1 - sqrt(1 - q^2).
"""

import math

from qcrystal.coxeter import ReducedWord, longest_word
from qcrystal.crystal import convergence_deficit, deficit_table, deficit_table_csv

n = 2
d = 8

print("== exact anchors at the one-letter word ==")
word = ReducedWord((1,), n)
for q in (0.5, 0.3, 0.1):
    rep = convergence_deficit(word, q, d)
    lo21, up21 = rep.bounds(2, 1)
    lo11, up11 = rep.bounds(1, 1)
    print(f"  q={q}: (2,1) in [{lo21:.12f}, {up21:.12f}] (target {q})")
    print(f"        (1,1) in [{lo11:.12f}, {up11:.12f}] (target {1 - math.sqrt(1 - q * q):.12f})")

print()
print("== the longest word, table over a q grid ==")
w_long = longest_word(n).word()
reports = deficit_table(w_long, [0.3, 0.2, 0.1, 0.05, 0.01], d)
print(deficit_table_csv(reports))

uppers = [rep.max_upper for rep in reports]
print("max uppers strictly decreasing:", all(b < a for a, b in zip(uppers, uppers[1:])))
print(f"deficit(0.01) / deficit(0.3) = {uppers[-1] / uppers[0]:.4f}  (<= 0.1 expected)")
