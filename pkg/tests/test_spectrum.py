"""Label space: identity q-map, specialization edges, non-Hausdorff witness."""

import itertools

import pytest

from qcrystal.coxeter import Permutation, bruhat_leq, longest_permutation
from qcrystal.reps import TorusPoint
from qcrystal.spectrum import (
    RepLabel,
    non_hausdorff_witness,
    sort_labels,
    specialization_edges,
    t_q_map,
    to_dot,
    to_graph_json,
)


def s3_labels(points):
    return [
        RepLabel(t, Permutation(p))
        for t in points
        for p in itertools.permutations((1, 2, 3))
    ]


def test_t_q_map_is_identity():
    labels = s3_labels([TorusPoint.base(2), TorusPoint((1j, -1.0))])
    mapping = t_q_map(labels)
    assert mapping == {l: l for l in labels}


def test_specialization_edges_match_bruhat_fibers():
    t1 = TorusPoint.base(2)
    t2 = TorusPoint((1j, 1.0))
    labels = s3_labels([t1, t2])
    edges = specialization_edges(labels)
    for a, b in edges:
        assert a.t.values == b.t.values  # no edges across torus fibers
        assert a.w != b.w
        assert bruhat_leq(b.w, a.w)
    # each fiber carries the 13 strict comparabilities of S_3
    assert len(edges) == 2 * 13
    # edges are deterministic
    assert edges == specialization_edges(labels)


def test_transitive_reduction_keeps_covers():
    labels = s3_labels([TorusPoint.base(2)])
    reduced = specialization_edges(labels, transitive_reduction=True)
    full = specialization_edges(labels)
    assert set(reduced) <= set(full)
    # the Bruhat order of S_3 has 8 covering relations
    assert len(reduced) == 8
    for a, b in reduced:
        assert a.w.length() == b.w.length() + 1


def test_non_hausdorff_witness():
    big, small = non_hausdorff_witness(2)
    assert big.w == longest_permutation(2)
    assert small.w == Permutation.simple(1, 2)
    assert big.t == small.t
    edges = specialization_edges([big, small])
    assert (big, small) in edges
    with pytest.raises(ValueError):
        non_hausdorff_witness(1)


def test_dot_export_is_deterministic_and_complete():
    labels = s3_labels([TorusPoint.base(2)])
    edges = specialization_edges(labels, transitive_reduction=True)
    dot = to_dot(labels, edges)
    assert dot.startswith("digraph spectrum {")
    assert dot == to_dot(list(reversed(labels)), edges)  # input order irrelevant
    assert dot.count("->") == len(edges)
    assert '"t0_w1_2_1"' in dot
    assert '"t0_we"' in dot


def test_graph_json_export():
    labels = s3_labels([TorusPoint.base(2)])
    edges = specialization_edges(labels)
    text = to_graph_json(labels, edges)
    assert '"schema": "qcrystal.spectrum_graph.v1"' in text
    assert text == to_graph_json(labels, edges)


def test_sort_labels_orders_by_torus_then_word():
    t1 = TorusPoint.base(2)
    t2 = TorusPoint((-1.0, 1.0))
    labels = [RepLabel(t1, longest_permutation(2)), RepLabel(t2, Permutation.identity(2))]
    ordered = sort_labels(list(reversed(labels)))
    assert ordered[0].t == t2  # -1 sorts before 1 on the real part
