"""Wirtinger presentations and zero-framed longitudes from PD codes.

Arcs run from one under pass to the next.  At a crossing of sign ``eps``
whose under strand goes from arc ``g_in`` to arc ``g_out`` beneath arc
``u`` the relation is ``g_out = u^-eps g_in u^eps``.  With this convention
the longitude of a component is the product of ``u^eps`` over its under
passes in order of travel, starting from the base arc, so it commutes with
the base meridian.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .diagram import DiagramError, PDCode

__all__ = ["Relation", "WirtingerPresentation", "presentation_from_pd",
           "longitude", "linking_matrix_check", "exponent_sums"]


@dataclass(frozen=True)
class Relation:
    out: int
    over: int
    into: int
    sign: int


@dataclass(frozen=True)
class WirtingerPresentation:
    """Generators are arc ids ``0..len(arc_component)-1``.

    ``passes[c]`` lists, for component ``c`` (1-based), the under passes in
    order of travel from the start of its base arc as ``(over_arc, sign)``;
    ``arcs[c]`` lists its arcs in the same order, ``arcs[c][0]`` being the
    base arc.
    """

    arc_component: tuple[int, ...]
    relations: tuple[Relation, ...]
    arcs: dict
    passes: dict
    writhes: tuple[int, ...]

    @property
    def n_components(self) -> int:
        return len(self.writhes)

    def base_arc(self, c: int) -> int:
        return self.arcs[c][0]

    def dump(self) -> str:
        lines = [f"gen a_{g} (comp {c})" for g, c in enumerate(self.arc_component)]
        for r in self.relations:
            s = "+" if r.sign > 0 else "-"
            t = "-" if r.sign > 0 else "+"
            lines.append(f"rel a_{r.out} = a_{r.over}^{t} a_{r.into} a_{r.over}^{s}")
        return "\n".join(lines) + "\n"


def presentation_from_pd(pd: PDCode, base_shift: Sequence[int] | None = None) -> WirtingerPresentation:
    """Wirtinger presentation; ``base_shift[c-1]`` rotates the base arc choice.

    By default the base arc of a component is the arc containing its lowest
    edge label.
    """
    errors = pd.validate()
    if errors:
        raise DiagramError("; ".join(errors))
    signs = pd.signs()
    edges = pd.components_edges()
    # each edge's crossing as under-in
    under_in = {x[0]: i for i, x in enumerate(pd.crossings)}
    # walk every component along edges in label order (labels increase along travel)
    edge_arc = {}
    arc_component = []
    raw_arcs = {}
    raw_passes = {}
    for c in range(1, pd.n_components + 1):
        labels = edges[c]
        # start right after some under pass so that arcs are whole
        start = 0
        for k, lab in enumerate(labels):
            if lab in under_in:
                start = (k + 1) % len(labels)
                break
        order = labels[start:] + labels[:start]
        arcs = [len(arc_component)]
        arc_component.append(c)
        for k, lab in enumerate(order):
            edge_arc[lab] = arcs[-1]
            if lab in under_in and k != len(order) - 1:
                arcs.append(len(arc_component))
                arc_component.append(c)
        raw_arcs[c] = arcs
        raw_passes[c] = [under_in[lab] for lab in order if lab in under_in]
    relations = []
    for i, (a, b, cc, d) in enumerate(pd.crossings):
        relations.append(Relation(edge_arc[cc], edge_arc[b], edge_arc[a], signs[i]))
    # choose base arc: arc holding the lowest label, optionally rotated
    arcs_out = {}
    passes_out = {}
    for c in range(1, pd.n_components + 1):
        arcs = raw_arcs[c]
        xs = raw_passes[c]
        k0 = arcs.index(edge_arc[edges[c][0]])
        if base_shift is not None:
            k0 = (k0 + base_shift[c - 1]) % len(arcs)
        arcs = arcs[k0:] + arcs[:k0]
        # pass j ends arc j in the walk; rotate identically
        if xs:
            xs = xs[k0:] + xs[:k0]
        arcs_out[c] = tuple(arcs)
        passes_out[c] = tuple((edge_arc[pd.crossings[i][1]], signs[i]) for i in xs)
    writhes = [0] * pd.n_components
    for x, s in zip(pd.crossings, signs):
        if pd.component_of[x[0]] == pd.component_of[x[1]]:
            writhes[pd.component_of[x[0]] - 1] += s
    return WirtingerPresentation(tuple(arc_component), tuple(relations),
                                 arcs_out, passes_out, tuple(writhes))


def longitude(p: WirtingerPresentation, j: int) -> list[tuple[int, int]]:
    """Zero-framed longitude of component ``j`` as ``(arc, exponent)`` letters."""
    if not 1 <= j <= p.n_components:
        raise DiagramError(f"component {j} out of range")
    word = [(u, s) for u, s in p.passes[j]]
    w = p.writhes[j - 1]
    if w:
        word.append((p.base_arc(j), -w))
    return word


def exponent_sums(p: WirtingerPresentation, word) -> np.ndarray:
    sums = np.zeros(p.n_components, dtype=int)
    for g, e in word:
        sums[p.arc_component[g] - 1] += e
    return sums


def linking_matrix_check(p: WirtingerPresentation, expected: np.ndarray | None = None) -> np.ndarray:
    """Matrix of longitude exponent sums (zero diagonal after framing).

    Raises if the self exponent is nonzero or ``expected`` disagrees.
    """
    n = p.n_components
    m = np.zeros((n, n), dtype=int)
    for j in range(1, n + 1):
        m[j - 1] = exponent_sums(p, longitude(p, j))
    if np.any(np.diag(m) != 0):
        raise AssertionError(f"longitude self exponents not zero: {np.diag(m)}")
    if not np.array_equal(m, m.T):
        raise AssertionError(f"longitude exponent sums not symmetric:\n{m}")
    if expected is not None and not np.array_equal(m, expected):
        raise AssertionError(f"linking matrix mismatch:\n{m}\nvs\n{expected}")
    return m
