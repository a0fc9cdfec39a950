"""The label space of the crystal algebra as a finite combinatorial sketch.

Labels are pairs (t, w) of a torus point and a Weyl group element.  The same
labels parameterize the q > 0 and the q = 0 representations, so the q-to-
crystal map on labels is the identity; what changes at q = 0 is the topology,
sketched here by specialization edges: a label (t, w) degenerates onto every
(t, u) with u strictly below w in Bruhat order.  Points joined by a chain of
specializations cannot be separated by disjoint open sets, which is the
non-Hausdorff phenomenon the witness pair exhibits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .coxeter import Permutation, bruhat_leq, longest_permutation, normal_form
from .reps import TorusPoint


@dataclass(frozen=True)
class RepLabel:
    t: TorusPoint
    w: Permutation

    def __post_init__(self) -> None:
        if self.t.n != self.w.n:
            raise ValueError("torus point and permutation rank mismatch")


def _label_key(label: RepLabel) -> tuple:
    return (
        tuple((v.real, v.imag) for v in label.t.values),
        label.w.images,
    )


def sort_labels(labels: list[RepLabel]) -> list[RepLabel]:
    return sorted(labels, key=_label_key)


def t_q_map(labels: list[RepLabel]) -> dict[RepLabel, RepLabel]:
    """The q-to-crystal correspondence on labels: the identity map."""
    return {label: label for label in labels}


def specialization_edges(
    labels: list[RepLabel], transitive_reduction: bool = False
) -> list[tuple[RepLabel, RepLabel]]:
    """Directed edges (t, w) -> (t, u) for u strictly below w, same t.

    With ``transitive_reduction`` only covering edges survive; either way the
    edge list is deterministically ordered.
    """
    ordered = sort_labels(labels)
    edges = []
    for a in ordered:
        for b in ordered:
            if a.t.values != b.t.values or a.w == b.w:
                continue
            if bruhat_leq(b.w, a.w):
                edges.append((a, b))
    if transitive_reduction:
        pairs = set(edges)
        edges = [
            (a, b)
            for a, b in edges
            if not any((a, c) in pairs and (c, b) in pairs for c in ordered)
        ]
    return edges


def non_hausdorff_witness(n: int) -> tuple[RepLabel, RepLabel]:
    """Two labels that cannot be separated: the longest word degenerates onto s_1.

    Every open set around the s_1 label meets every net converging into the
    longest-word label at the same torus point.
    """
    if n < 2:
        raise ValueError("rank must be at least 2")
    t = TorusPoint.base(n)
    return (
        RepLabel(t, longest_permutation(n)),
        RepLabel(t, Permutation.simple(1, n)),
    )


def _node_id(label: RepLabel, t_index: dict[tuple, int]) -> str:
    letters = normal_form(label.w).letters()
    word = "_".join(str(r) for r in letters) if letters else "e"
    return f"t{t_index[tuple(label.t.values)]}_w{word}"


def _node_text(label: RepLabel) -> str:
    t_txt = ",".join(f"{v.real:.3g}{v.imag:+.3g}i" for v in label.t.values)
    letters = normal_form(label.w).letters()
    w_txt = ",".join(str(r) for r in letters) if letters else "e"
    return f"t=({t_txt}) w={w_txt}"


def to_dot(
    labels: list[RepLabel],
    edges: list[tuple[RepLabel, RepLabel]],
    witness: tuple[RepLabel, RepLabel] | None = None,
) -> str:
    """Deterministic DOT rendering of the specialization graph.

    When both members of ``witness`` are among the labels, their nodes are
    drawn bold and a comment names the non-separated pair.
    """
    ordered = sort_labels(labels)
    t_index: dict[tuple, int] = {}
    for label in ordered:
        t_index.setdefault(tuple(label.t.values), len(t_index))
    marked = set(witness) if witness and all(w in labels for w in witness) else set()
    lines = ["digraph spectrum {"]
    for label in ordered:
        style = ", style=bold" if label in marked else ""
        lines.append(
            f'  "{_node_id(label, t_index)}" [label="{_node_text(label)}"{style}];'
        )
    for a, b in edges:
        lines.append(f'  "{_node_id(a, t_index)}" -> "{_node_id(b, t_index)}";')
    if marked:
        a, b = witness
        lines.append(
            f'  // non-separated pair: "{_node_id(a, t_index)}" "{_node_id(b, t_index)}"'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_graph_json(
    labels: list[RepLabel],
    edges: list[tuple[RepLabel, RepLabel]],
    witness: tuple[RepLabel, RepLabel] | None = None,
) -> str:
    ordered = sort_labels(labels)
    index = {label: pos for pos, label in enumerate(ordered)}
    data = {
        "schema": "qcrystal.spectrum_graph.v1",
        "nodes": [
            {
                "t": [[v.real, v.imag] for v in label.t.values],
                "word": list(normal_form(label.w).letters()),
            }
            for label in ordered
        ],
        "edges": [[index[a], index[b]] for a, b in edges],
    }
    if witness and all(w in index for w in witness):
        data["witness"] = [index[witness[0]], index[witness[1]]]
    return json.dumps(data, sort_keys=True, indent=2)
