"""Direct sums of torus-labeled blocks: grids, sup norms, probes, limit samples.

A block is a representation label (t, w) with a multiplicity; a finite family
of blocks stands for the direct sum of the labeled representations.  Norms of
direct sums are sups over blocks, so certified bounds aggregate by taking
maxima, and the t-sweep over a torus grid is the finite stand-in for the
direct integral over the whole torus.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .coxeter import ReducedWord, longest_permutation, longest_word
from .crystal import (
    DeficitReport,
    convergence_deficit,
    evaluate_kernel_element,
    generator_indices,
)
from .fock import norm_bounds, section
from .reps import RepSpec, TorusPoint, rep_image, scaled_rep_image


def _root_of_unity(k: int, m: int) -> complex:
    """exp(2 pi i k / m), exact on the four axis points."""
    k %= m
    if (4 * k) % m == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[(4 * k) // m % 4]
    angle = 2.0 * np.pi * k / m
    return complex(np.cos(angle), np.sin(angle))


@dataclass(frozen=True)
class TorusGrid:
    """m^n torus points with uniform quadrature weights."""

    n: int
    m: int
    points: tuple[TorusPoint, ...]
    weights: tuple[float, ...]


def torus_grid(n: int, m: int) -> TorusGrid:
    """The uniform grid of all n-tuples of m-th roots of unity.

    Points are ordered lexicographically in the exponent tuples; the axis
    values 1, i, -1, -i come out exactly when m divides into quarters.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    roots = [_root_of_unity(k, m) for k in range(m)]
    points = []
    idx = [0] * n
    while True:
        points.append(TorusPoint(tuple(roots[k] for k in idx)))
        for pos in range(n - 1, -1, -1):
            idx[pos] += 1
            if idx[pos] < m:
                break
            idx[pos] = 0
        else:
            break
    weight = 1.0 / m**n
    return TorusGrid(n, m, tuple(points), (weight,) * len(points))


@dataclass(frozen=True)
class BlockRep:
    """One direct summand: a torus label, a reduced word, a multiplicity."""

    t: TorusPoint
    word: ReducedWord
    multiplicity: int = 1

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if self.t.n != self.word.n:
            raise ValueError("torus point and word rank mismatch")


def soibelman_blocks(grid: TorusGrid) -> list[BlockRep]:
    """One longest-word block per grid point: the discretized faithful family."""
    word = longest_word(grid.n).word()
    return [BlockRep(t, word) for t in grid.points]


def blocks_to_json(blocks: list[BlockRep]) -> str:
    return json.dumps(
        [
            {
                "t": [[v.real, v.imag] for v in b.t.values],
                "word": list(b.word.letters),
                "multiplicity": b.multiplicity,
            }
            for b in blocks
        ]
    )


def blocks_from_json(text: str, n: int) -> list[BlockRep]:
    data = json.loads(text)
    out = []
    for item in data:
        t = TorusPoint(tuple(complex(re, im) for re, im in item["t"]))
        word = ReducedWord(tuple(int(r) for r in item["word"]), n)
        out.append(BlockRep(t, word, int(item.get("multiplicity", 1))))
    return out


def block_norm_bounds(
    blocks: list[BlockRep], i: int, j: int, q: float, d: int
) -> tuple[float, float]:
    """Certified bounds for the direct sum: the blockwise maxima."""
    if not blocks:
        raise ValueError("need at least one block")
    lows, ups = [], []
    for b in blocks:
        ts = rep_image(RepSpec(b.word.n, q, b.t, b.word), i, j)
        lo, up = norm_bounds(ts, d)
        lows.append(lo)
        ups.append(up)
    return max(lows), max(ups)


@dataclass(frozen=True)
class BlockDeficitReport:
    n: int
    q: float
    d: int
    words: tuple[tuple[int, ...], ...]
    per_word: tuple[DeficitReport, ...]
    cells: tuple[tuple[tuple[int, int], tuple[float, float]], ...]

    def bounds(self, i: int, j: int) -> tuple[float, float]:
        for key, value in self.cells:
            if key == (i, j):
                return value
        raise KeyError((i, j))

    @property
    def max_upper(self) -> float:
        return max(up for _, (_, up) in self.cells)

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema": "qcrystal.block_deficit.v1",
                "n": self.n,
                "q": self.q,
                "d": self.d,
                "words": [list(w) for w in self.words],
                "cells": {f"{i},{j}": [lo, up] for (i, j), (lo, up) in self.cells},
                "max_upper": self.max_upper,
            },
            sort_keys=True,
        )


def block_deficit_sup(blocks: list[BlockRep], q: float, d: int) -> BlockDeficitReport:
    """Per-generator deficit bounds for a block family: sup over the blocks.

    Deficit norms do not depend on the torus label, so the sup over blocks is
    the max over the distinct words present, and a grid sweep returns the same
    value as any single point with the same word.
    """
    if not blocks:
        raise ValueError("need at least one block")
    n = blocks[0].word.n
    words: list[tuple[int, ...]] = []
    for b in blocks:
        if b.word.letters not in words:
            words.append(b.word.letters)
    reports = tuple(
        convergence_deficit(ReducedWord(w, n), q, d, t=None) for w in words
    )
    cells = []
    for i, j in generator_indices(n):
        per = [r.bounds(i, j) for r in reports]
        cells.append(((i, j), (max(p[0] for p in per), max(p[1] for p in per))))
    return BlockDeficitReport(n, q, d, tuple(words), reports, tuple(cells))


@dataclass(frozen=True)
class ProbeBlockResult:
    index: int
    word: tuple[int, ...]
    is_longest: bool
    annihilates: bool
    norm_lower: float
    norm_upper: float


@dataclass(frozen=True)
class ProbeReport:
    n: int
    d: int
    blocks: tuple[ProbeBlockResult, ...]
    separating: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema": "qcrystal.probe.v1",
                "n": self.n,
                "d": self.d,
                "blocks": [
                    {
                        "index": b.index,
                        "word": list(b.word),
                        "is_longest": b.is_longest,
                        "annihilates": b.annihilates,
                        "norm_bounds": [b.norm_lower, b.norm_upper],
                    }
                    for b in self.blocks
                ],
                "separating": self.separating,
            },
            sort_keys=True,
        )


def faithfulness_probe(blocks: list[BlockRep], d: int) -> ProbeReport:
    """Evaluate the separating product on each crystal block.

    Reports, per block, whether the element annihilates exactly, and the
    certified norm bounds otherwise.  ``separating`` holds when the element
    vanishes on every non-longest-word block and survives on every
    longest-word block: the dichotomy that makes the longest-word family the
    minimal faithful one.
    """
    if not blocks:
        raise ValueError("need at least one block")
    n = blocks[0].word.n
    results = []
    separating = True
    for idx, b in enumerate(blocks):
        ts = evaluate_kernel_element(RepSpec(n, 0.0, b.t, b.word))
        dead = ts.is_zero()
        lo, up = (0.0, 0.0) if dead else norm_bounds(ts, d)
        is_longest = b.word.permutation() == longest_permutation(n)
        if is_longest == dead:
            separating = False
        results.append(
            ProbeBlockResult(idx, b.word.letters, is_longest, dead, lo, up)
        )
    return ProbeReport(n, d, tuple(results), separating)


@dataclass(frozen=True)
class LimitSampleRow:
    q: float
    word: tuple[int, ...]
    cells: tuple[tuple[tuple[int, int], tuple[float, float, float]], ...]

    def gap(self, i: int, j: int) -> tuple[float, float, float]:
        """(max entrywise gap over blocks, norm lower, norm upper)."""
        for key, value in self.cells:
            if key == (i, j):
                return value
        raise KeyError((i, j))

    @property
    def max_entry_gap(self) -> float:
        return max(g for _, (g, _, _) in self.cells)

    @property
    def max_upper(self) -> float:
        return max(up for _, (_, _, up) in self.cells)


@dataclass(frozen=True)
class LimitSampleReport:
    n: int
    d: int
    q_values: tuple[float, ...]
    words: tuple[tuple[int, ...], ...]
    rows: tuple[LimitSampleRow, ...]
    limit_declaration: str = "crystal sections at q = 0"

    def row(self, q: float, word: tuple[int, ...]) -> LimitSampleRow:
        for r in self.rows:
            if r.q == q and r.word == word:
                return r
        raise KeyError((q, word))

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema": "qcrystal.limit_sample.v1",
                "n": self.n,
                "d": self.d,
                "q_values": list(self.q_values),
                "words": [list(w) for w in self.words],
                "rows": [
                    {
                        "q": r.q,
                        "word": list(r.word),
                        "cells": {
                            f"{i},{j}": list(v) for (i, j), v in r.cells
                        },
                        "max_entry_gap": r.max_entry_gap,
                        "max_upper": r.max_upper,
                    }
                    for r in self.rows
                ],
                "limit": self.limit_declaration,
            },
            sort_keys=True,
        )


def limit_algebra_sample(
    grid: TorusGrid,
    q_values: list[float],
    d: int,
    words: list[ReducedWord] | None = None,
) -> LimitSampleReport:
    """Sample the convergence of scaled q-images to their crystal limits.

    ``q_values`` must be strictly decreasing.  For every q, word and generator
    entry the report holds the largest entrywise section gap across the grid
    blocks together with certified norm bounds of the deficit; the declared
    limit operators are the crystal sections at q = 0.
    """
    if not q_values or any(not 0.0 < q < 1.0 for q in q_values):
        raise ValueError("q values must lie in (0, 1)")
    if any(b >= a for a, b in zip(q_values, q_values[1:])):
        raise ValueError("q values must be strictly decreasing")
    n = grid.n
    if words is None:
        words = [longest_word(n).word()]
    rows = []
    for q in q_values:
        for word in words:
            report = convergence_deficit(word, q, d)
            cells = []
            for i, j in generator_indices(n):
                gap = 0.0
                for t in grid.points:
                    spec_q = RepSpec(n, q, t, word)
                    spec_0 = RepSpec(n, 0.0, t, word)
                    diff = section(scaled_rep_image(spec_q, i, j), d) - section(
                        rep_image(spec_0, i, j), d
                    )
                    gap = max(gap, float(np.abs(diff).max()))
                lo, up = report.bounds(i, j)
                cells.append(((i, j), (gap, lo, up)))
            rows.append(LimitSampleRow(q, word.letters, tuple(cells)))
    return LimitSampleReport(
        n,
        d,
        tuple(q_values),
        tuple(w.letters for w in words),
        tuple(rows),
    )
