"""Tour of the Coxeter layer: words, normal forms, Bruhat order."""

from qcrystal.coxeter import (
    Permutation,
    bruhat_leq,
    longest_permutation,
    maximal_subwords_of_longest,
    normal_form,
    reduced_words,
)

print("== permutations and normal forms ==")
w = Permutation((3, 2, 1))
nf = normal_form(w)
print("one-line", w.images, "-> segments", nf.segments, "-> word", nf.letters())

for images in [(2, 1, 3), (2, 3, 1), (1, 2, 3)]:
    u = Permutation(images)
    print(f"  {images}: length {u.length()}, word {normal_form(u).letters()}")

print()
print("== all reduced words of the longest element ==")
for n in (2, 3):
    w0 = longest_permutation(n)
    words = reduced_words(w0)
    print(f"  rank {n}: longest element {w0.images} has {len(words)} reduced words")
    if n == 2:
        for rw in words:
            print("   ", rw.letters)

print()
print("== Bruhat order below the longest element (rank 2) ==")
w0 = longest_permutation(2)
import itertools

for images in itertools.permutations((1, 2, 3)):
    u = Permutation(images)
    mark = "<=" if bruhat_leq(u, w0) else "||"
    print(f"  {images} {mark} {w0.images}  (length {u.length()})")

print()
print("== corank-one subwords of the longest word ==")
subs = maximal_subwords_of_longest(2)
print("  maximal proper subwords:", [s.images for s in subs])
print("  each is covered by w_L:", all(bruhat_leq(s, w0) and s.length() == w0.length() - 1 for s in subs))
