"""Oriented link diagrams as slice words and PD codes.

A slice word lists elementary Morse events read bottom to top on numbered
vertical strand positions (0-based):

``cup i O``
    create two adjacent strands at positions ``i, i+1``.  ``O`` is ``R``
    (travelling left to right along the cup: left strand goes down, right
    strand goes up) or ``L`` (the reverse).
``cap i``
    annihilate strands ``i, i+1``.
``x+ i`` / ``x- i``
    transpose strands ``i, i+1``; with ``x+`` the strand entering at ``i``
    (bottom left) passes over, with ``x-`` it passes under.

Orientation lives only on cups.  Every component is oriented by its first
cup (lowest event index); :func:`reorient` rewrites the remaining cups to
agree.  Components are numbered 1..n in the public API.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Event", "DiagramError", "Trace", "PDCode", "LinkDiagram",
    "parse_slice_word", "format_slice_word", "trace", "reorient",
    "validate", "slice_to_pd", "component_data", "sublink",
    "disjoint_union", "mirror", "reverse", "from_word", "pd_from_json",
    "pd_to_json", "braid_closure", "linking_matrix", "tagged_word",
]

CROSS = ("x+", "x-")


class DiagramError(ValueError):
    """Raised when an operation receives an invalid diagram."""


class Event(NamedTuple):
    kind: str                 # "cup", "cap", "x+", "x-"
    pos: int
    orient: str | None = None  # "R"/"L" for cups
    tag: object = None         # construction bookkeeping, never serialized

    def untagged(self) -> "Event":
        return Event(self.kind, self.pos, self.orient) if self.tag is not None else self

    def __str__(self) -> str:
        if self.kind == "cup":
            return f"cup {self.pos} {self.orient}"
        return f"{self.kind} {self.pos}"


def parse_slice_word(text: str) -> tuple[Event, ...]:
    """Parse the text format: one event per line or ``;``-separated, ``#`` comments."""
    events = []
    items = []
    for lineno, line in enumerate(text.splitlines(), 1):
        items += [(lineno, chunk) for chunk in line.split("#", 1)[0].split(";")]
    for lineno, raw in items:
        parts = raw.split()
        if not parts:
            continue
        kind = parts[0].lower()
        try:
            if kind == "cup":
                orient = parts[2].upper() if len(parts) > 2 else "R"
                if orient not in ("R", "L") or len(parts) > 3:
                    raise ValueError
                events.append(Event("cup", int(parts[1]), orient))
            elif kind in ("cap", "x+", "x-") and len(parts) == 2:
                events.append(Event(kind, int(parts[1])))
            else:
                raise ValueError
        except (ValueError, IndexError):
            raise DiagramError(f"line {lineno}: cannot parse {raw!r}") from None
    return tuple(events)


def format_slice_word(events: Iterable[Event]) -> str:
    return "".join(f"{e}\n" for e in events)


# ---------------------------------------------------------------------------
# tracing

@dataclass(frozen=True)
class Trace:
    """Result of walking a slice word.

    ``counts[t]`` is the strand count at level ``t`` (between event ``t-1``
    and event ``t``).  ``comp[t][p]`` and ``direction[t][p]`` give the
    canonical component (0-based, ordered by first cup) and direction
    (+1 up, -1 down) of segment ``(t, p)``.
    """

    counts: tuple[int, ...]
    comp: tuple[tuple[int, ...], ...]
    direction: tuple[tuple[int, ...], ...]
    first_cup: tuple[int, ...]
    errors: tuple[str, ...]

    @property
    def n_components(self) -> int:
        return len(self.first_cup)


def _step(events, t, p, d):
    """One step of a directed walk from segment (t, p) heading d.

    Returns (t', p', d', crossing_event_or_None).
    """
    if d > 0:
        e = events[t]
        j = e.pos
        if e.kind == "cup":
            return (t + 1, p if p < j else p + 2, 1, None)
        if e.kind == "cap":
            if p == j:
                return (t, j + 1, -1, None)
            if p == j + 1:
                return (t, j, -1, None)
            return (t + 1, p if p < j else p - 2, 1, None)
        if p == j:
            return (t + 1, j + 1, 1, t)
        if p == j + 1:
            return (t + 1, j, 1, t)
        return (t + 1, p, 1, None)
    e = events[t - 1]
    j = e.pos
    if e.kind == "cup":
        if p == j:
            return (t, j + 1, 1, None)
        if p == j + 1:
            return (t, j, 1, None)
        return (t - 1, p if p < j else p - 2, -1, None)
    if e.kind == "cap":
        return (t - 1, p if p < j else p + 2, -1, None)
    if p == j:
        return (t - 1, j + 1, -1, t - 1)
    if p == j + 1:
        return (t - 1, j, -1, t - 1)
    return (t - 1, p, -1, None)


def _counts(events) -> tuple[list[int], list[str]]:
    counts = [0]
    errors = []
    n = 0
    for idx, e in enumerate(events):
        if e.kind == "cup":
            if not 0 <= e.pos <= n:
                errors.append(f"event {idx}: cup position {e.pos} out of range (strands={n})")
                break
            if e.orient not in ("R", "L"):
                errors.append(f"event {idx}: cup orientation must be R or L")
            n += 2
        elif e.kind in ("cap",) + CROSS:
            if not 0 <= e.pos <= n - 2:
                errors.append(f"event {idx}: {e.kind} position {e.pos} out of range (strands={n})")
                break
            if e.kind == "cap":
                n -= 2
        else:
            errors.append(f"event {idx}: unknown event kind {e.kind!r}")
            break
        counts.append(n)
    else:
        if n != 0:
            errors.append(f"open strands at end ({n} live)")
    return counts, errors


def trace(events: Sequence[Event], *, strict: bool = True) -> Trace:
    """Walk every component, assigning components and directions to segments.

    With ``strict`` the cup orientations must be mutually consistent; with
    ``strict=False`` each component takes the orientation of its first cup
    and other cups are ignored (used by :func:`reorient`).
    """
    events = tuple(events)
    counts, errors = _counts(events)
    if errors:
        return Trace(tuple(counts), (), (), (), tuple(errors))
    comp = [[-1] * c for c in counts]
    direction = [[0] * c for c in counts]
    first_cup = []
    for idx, e in enumerate(events):
        if e.kind != "cup" or comp[idx + 1][e.pos] >= 0:
            continue
        cid = len(first_cup)
        first_cup.append(idx)
        # 'R': right strand goes up
        start = (idx + 1, e.pos + 1, 1) if e.orient == "R" else (idx + 1, e.pos, 1)
        t, p, d = start
        while True:
            if comp[t][p] >= 0 and (comp[t][p] != cid or direction[t][p] != d):
                errors.append(f"inconsistent traversal at level {t}, position {p}")
                break
            comp[t][p] = cid
            direction[t][p] = d
            t2, p2, d2, _ = _step(events, t, p, d)
            if (t2, p2, d2) == start:
                break
            t, p, d = t2, p2, d2
    if strict and not errors:
        for idx, e in enumerate(events):
            if e.kind == "cup":
                left = direction[idx + 1][e.pos]
                want = -1 if e.orient == "R" else 1
                if left != want:
                    errors.append(f"event {idx}: cup orientation {e.orient} disagrees with its component")
            elif e.kind == "cap":
                if direction[idx][e.pos] == direction[idx][e.pos + 1]:
                    errors.append(f"event {idx}: cap joins strands of equal orientation")
    return Trace(tuple(counts), tuple(map(tuple, comp)), tuple(map(tuple, direction)),
                 tuple(first_cup), tuple(errors))


def reorient(events: Sequence[Event]) -> tuple[Event, ...]:
    """Rewrite cup orientations so each component follows its first cup."""
    tr = trace(events, strict=False)
    if tr.errors:
        raise DiagramError("; ".join(tr.errors))
    out = []
    for idx, e in enumerate(events):
        if e.kind == "cup":
            orient = "R" if tr.direction[idx + 1][e.pos] < 0 else "L"
            e = e._replace(orient=orient)
        out.append(e)
    return tuple(out)


def crossing_sign(events, tr: Trace, idx: int) -> int:
    e = events[idx]
    dl = tr.direction[idx][e.pos]
    dr = tr.direction[idx][e.pos + 1]
    return dl * dr if e.kind == "x+" else -dl * dr


def validate(events: Sequence[Event]) -> list[str]:
    """All violated slice-word invariants; empty when the word is valid."""
    return list(trace(events).errors)


# ---------------------------------------------------------------------------
# PD codes

def _edge_successors(component_of: dict[int, int]) -> dict[int, int]:
    succ = {}
    by_comp: dict[int, list[int]] = {}
    for arc, c in component_of.items():
        by_comp.setdefault(c, []).append(arc)
    for arcs in by_comp.values():
        arcs.sort()
        for a, b in zip(arcs, arcs[1:] + arcs[:1]):
            succ[a] = b
    return succ


@dataclass(frozen=True)
class PDCode:
    """Planar-diagram code.

    Each crossing ``(a, b, c, d)`` lists edge labels counterclockwise
    starting from the incoming under-edge, so the under strand runs a -> c.
    ``component_of`` maps every edge label to its component (1-based).
    Components without crossings appear as a single label used by no
    crossing.  Along each component labels increase in the direction of
    travel (cyclically); this fixes the direction of over strands.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    component_of: dict
    n_components: int

    def validate(self) -> list[str]:
        errors = []
        counts: dict[int, int] = {}
        for x in self.crossings:
            if len(x) != 4:
                errors.append(f"crossing {x} does not have 4 labels")
                continue
            for a in x:
                counts[a] = counts.get(a, 0) + 1
        for a, k in counts.items():
            if k != 2:
                errors.append(f"edge {a} occurs {k} times")
            if a not in self.component_of:
                errors.append(f"edge {a} has no component")
        comps = set(self.component_of.values())
        if comps != set(range(1, self.n_components + 1)):
            errors.append("component labels must be exactly 1..n")
        for a, c in self.component_of.items():
            if a not in counts:
                same = [b for b, cb in self.component_of.items() if cb == c]
                if len(same) != 1:
                    errors.append(f"edge {a} unused by crossings but its component has other edges")
        if errors:
            return errors
        # successor structure must close into one cycle per component
        succ = _edge_successors(self.component_of)
        for i, (a, b, c, d) in enumerate(self.crossings):
            if succ[a] != c:
                errors.append(f"crossing {i}: under strand {a}->{c} is not consecutive")
            if succ[b] != d and succ[d] != b:
                errors.append(f"crossing {i}: over strand {b},{d} is not consecutive")
            if self.component_of[a] != self.component_of[c] or self.component_of[b] != self.component_of[d]:
                errors.append(f"crossing {i}: strand changes component")
        return errors

    @cached_property
    def successor(self) -> dict[int, int]:
        return _edge_successors(self.component_of)

    @cached_property
    def _over_d_to_b(self) -> tuple[bool, ...]:
        """Direction of every over strand, found by walking the components.

        A walk enters a crossing at some slot and leaves by the opposite
        slot.  Components with an under pass are anchored there (a -> c);
        components that only pass over are anchored by label order.
        """
        occ: dict[int, list[tuple[int, int]]] = {}
        for i, x in enumerate(self.crossings):
            for s, lab in enumerate(x):
                occ.setdefault(lab, []).append((i, s))
        result = [None] * len(self.crossings)
        for comp, labels in self.components_edges().items():
            anchor = None
            for lab in labels:
                for (i, s) in occ.get(lab, ()):
                    if s == 0:
                        anchor = (i, 0)
                        break
                if anchor:
                    break
            if anchor is None:
                for lab in labels:
                    for (i, s) in occ.get(lab, ()):
                        other = self.crossings[i][(s + 2) % 4]
                        if self.successor[lab] == other:
                            anchor = (i, s)
                            break
                    if anchor:
                        break
            if anchor is None:
                continue
            i, s = anchor
            for _ in range(2 * len(labels) + 2):
                if s in (1, 3):
                    result[i] = (s == 3)
                out_slot = (s + 2) % 4
                lab = self.crossings[i][out_slot]
                nxt = [o for o in occ[lab] if o != (i, out_slot)]
                i, s = nxt[0] if nxt else (i, out_slot)
                if (i, s) == anchor:
                    break
        return tuple(True if r is None else r for r in result)

    def over_goes_d_to_b(self, i: int) -> bool:
        return self._over_d_to_b[i]

    def signs(self) -> tuple[int, ...]:
        return tuple(1 if self.over_goes_d_to_b(i) else -1 for i in range(len(self.crossings)))

    def components_edges(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for a, c in self.component_of.items():
            out.setdefault(c, []).append(a)
        for v in out.values():
            v.sort()
        return out


def pd_to_json(pd: PDCode) -> str:
    return json.dumps({
        "crossings": [list(x) for x in pd.crossings],
        "components": {str(a): c for a, c in sorted(pd.component_of.items())},
    })


def pd_from_json(text: str) -> PDCode:
    data = json.loads(text)
    try:
        crossings = tuple(tuple(int(v) for v in x) for x in data["crossings"])
        component_of = {int(a): int(c) for a, c in data["components"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"malformed PD JSON: {exc}") from None
    n = len(set(component_of.values()))
    pd = PDCode(crossings, component_of, n)
    errors = pd.validate()
    if errors:
        raise DiagramError("; ".join(errors))
    return pd


def slice_to_pd(events: Sequence[Event], order: Sequence[int] | None = None) -> PDCode:
    """PD code of a valid slice word.

    Edges are labelled by walking components in user order, each from the
    up-going strand of its first cup; ``order[u]`` is the canonical
    component shown as user component ``u+1``.
    """
    events = tuple(events)
    tr = trace(events)
    if tr.errors:
        raise DiagramError("; ".join(tr.errors))
    n = tr.n_components
    order = tuple(range(n)) if order is None else tuple(order)
    # per crossing event: endpoints -> edge label
    ends: dict[int, dict[str, int]] = {}
    component_of = {}
    label = 1
    for user, cid in enumerate(order, 1):
        idx = tr.first_cup[cid]
        e = events[idx]
        start = (idx + 1, e.pos + 1, 1) if e.orient == "R" else (idx + 1, e.pos, 1)
        t, p, d = start
        first = label
        passes = []
        while True:
            t2, p2, d2, x = _step(events, t, p, d)
            if x is not None:
                passes.append((x, t, p, d))
            if (t2, p2, d2) == start:
                break
            t, p, d = t2, p2, d2
        m = len(passes)
        if m == 0:
            component_of[label] = user
            label += 1
            continue
        for k, (x, t, p, d) in enumerate(passes):
            incoming = first + (k - 1) % m if k else first + m - 1
            outgoing = first + k
            j = events[x].pos
            # which strand of the crossing: left enters at (x, j)
            if d > 0:
                left = (t == x and p == j)
            else:
                left = (t == x + 1 and p == j + 1)
            slots = ends.setdefault(x, {})
            if left:
                slots["LB" if d > 0 else "RT"] = incoming
                slots["RT" if d > 0 else "LB"] = outgoing
            else:
                slots["RB" if d > 0 else "LT"] = incoming
                slots["LT" if d > 0 else "RB"] = outgoing
        for k in range(m):
            component_of[first + k] = user
        label += m
    crossings = []
    ring = ["RB", "RT", "LT", "LB"]
    for idx, e in enumerate(events):
        if e.kind not in CROSS:
            continue
        slots = ends[idx]
        dl = tr.direction[idx][e.pos]
        dr = tr.direction[idx][e.pos + 1]
        if e.kind == "x+":   # right strand under
            start = "RB" if dr > 0 else "LT"
        else:                # left strand under
            start = "LB" if dl > 0 else "RT"
        k = ring.index(start)
        crossings.append(tuple(slots[ring[(k + i) % 4]] for i in range(4)))
    return PDCode(tuple(crossings), component_of, n)


# ---------------------------------------------------------------------------
# diagrams

@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram.

    ``word`` is the slice word (``None`` for imported PD codes), ``order``
    the canonical component shown as each user component.
    """

    word: tuple[Event, ...] | None = None
    order: tuple[int, ...] = ()
    pd_code: PDCode | None = None
    names: tuple[str, ...] = ()
    provenance: tuple[str, ...] = field(default=(), compare=False)

    @cached_property
    def trace(self) -> Trace:
        if self.word is None:
            raise DiagramError("diagram has no slice word")
        return trace(self.word)

    @cached_property
    def pd(self) -> PDCode:
        if self.pd_code is not None:
            return self.pd_code
        return slice_to_pd(self.word, self.order)

    @property
    def n_components(self) -> int:
        if self.word is None:
            return self.pd.n_components
        return len(self.order)

    @property
    def n_crossings(self) -> int:
        if self.word is None:
            return len(self.pd.crossings)
        return sum(e.kind in CROSS for e in self.word)

    def user_component(self, level: int, pos: int) -> int:
        """1-based user component of slice segment (level, pos)."""
        return self._user_of_canonical[self.trace.comp[level][pos]]

    @cached_property
    def _user_of_canonical(self) -> dict[int, int]:
        return {cid: u for u, cid in enumerate(self.order, 1)}

    def validate(self) -> list[str]:
        errors = []
        if self.word is not None:
            errors += validate(self.word)
            if not errors:
                n = self.trace.n_components
                if sorted(self.order) != list(range(n)):
                    errors.append("component order is not a permutation of the traced components")
        elif self.pd_code is not None:
            errors += self.pd_code.validate()
        else:
            errors.append("diagram has neither slice word nor PD code")
        return errors

    def with_provenance(self, note: str) -> "LinkDiagram":
        return LinkDiagram(self.word, self.order, self.pd_code, self.names,
                           self.provenance + (note,))


def from_word(events: Iterable[Event], order: Sequence[int] | None = None,
              provenance: Sequence[str] = (), *, tag_order: Sequence | None = None) -> LinkDiagram:
    """Build a validated diagram.

    With ``tag_order`` the user components are the components of the cups
    carrying those tags, in that order; tags are stripped afterwards.
    """
    events = tuple(events)
    tr = trace(events)
    if tr.errors:
        raise DiagramError("; ".join(tr.errors))
    if tag_order is not None:
        where = {}
        for idx, e in enumerate(events):
            if e.kind == "cup" and e.tag is not None:
                where.setdefault(e.tag, tr.comp[idx + 1][e.pos])
        order = [where[tg] for tg in tag_order]
        if sorted(order) != list(range(tr.n_components)):
            raise DiagramError("tag order does not name every component exactly once")
    elif order is None:
        order = range(tr.n_components)
    events = tuple(e.untagged() for e in events)
    d = LinkDiagram(events, tuple(order), provenance=tuple(provenance))
    return d


def tagged_word(d: LinkDiagram) -> list[Event]:
    """Copy of the word with every cup tagged by its user component."""
    out = []
    for idx, e in enumerate(d.word):
        if e.kind == "cup":
            e = e._replace(tag=d.user_component(idx + 1, e.pos))
        out.append(e)
    return out


def _require_word(d: LinkDiagram):
    if d.word is None:
        raise DiagramError("operation needs a slice word; imported PD codes support invariants only")
    errors = d.validate()
    if errors:
        raise DiagramError("; ".join(errors))


def component_data(d: LinkDiagram) -> dict:
    """Writhe per component, linking matrix and crossing count.

    The linking matrix has zero diagonal; writhes are reported separately.
    """
    errors = d.validate()
    if errors:
        raise DiagramError("; ".join(errors))
    pd = d.pd
    n = pd.n_components
    writhe = np.zeros(n, dtype=int)
    twice = np.zeros((n, n), dtype=int)
    for x, s in zip(pd.crossings, pd.signs()):
        i = pd.component_of[x[0]] - 1
        j = pd.component_of[x[1]] - 1
        if i == j:
            writhe[i] += s
        else:
            twice[i, j] += s
            twice[j, i] += s
    return {"writhe": writhe, "lk": twice // 2, "crossings": len(pd.crossings)}


def linking_matrix(d: LinkDiagram) -> np.ndarray:
    return component_data(d)["lk"]


# ---------------------------------------------------------------------------
# combinators

def sublink(d: LinkDiagram, components: Iterable[int]) -> LinkDiagram:
    """Keep only the given (1-based) components, renumbered in increasing order."""
    keep = sorted(set(components))
    if not keep:
        raise DiagramError("sublink needs a nonempty set of components")
    _require_word(d)
    if not all(1 <= c <= d.n_components for c in keep):
        raise DiagramError(f"components {keep} out of range")
    tr = d.trace
    keep_cid = {d.order[c - 1] for c in keep}
    out = []
    for idx, e in enumerate(d.word):
        level = idx if e.kind != "cup" else idx + 1
        comps = tr.comp[level]
        kept_left = sum(1 for p in range(e.pos) if comps[p] in keep_cid)
        if e.kind in ("cup", "cap"):
            if comps[e.pos] in keep_cid:
                tag = d.user_component(idx + 1, e.pos) if e.kind == "cup" else None
                out.append(Event(e.kind, kept_left, e.orient, tag))
        else:
            if comps[e.pos] in keep_cid and comps[e.pos + 1] in keep_cid:
                out.append(Event(e.kind, kept_left))
    return from_word(out, tag_order=keep,
                     provenance=d.provenance + (f"sublink {keep}",))


def disjoint_union(d: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    _require_word(d)
    _require_word(d2)
    n = d.n_components
    w2 = [e._replace(tag=e.tag + n) if e.tag is not None else e for e in tagged_word(d2)]
    events = tagged_word(d) + w2
    return from_word(events, tag_order=range(1, n + d2.n_components + 1),
                     provenance=d.provenance + ("disjoint_union",) + d2.provenance)


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing."""
    if d.word is None:
        pd = d.pd
        # rotating each tuple by one step exchanges over and under
        flipped = []
        for (a, b, c, dd), s in zip(pd.crossings, pd.signs()):
            flipped.append((dd, a, b, c) if s > 0 else (b, c, dd, a))
        return LinkDiagram(None, (), PDCode(tuple(flipped), dict(pd.component_of), pd.n_components),
                           d.names, d.provenance + ("mirror",))
    swap = {"x+": "x-", "x-": "x+"}
    events = tuple(e._replace(kind=swap.get(e.kind, e.kind)) for e in d.word)
    return LinkDiagram(events, d.order, None, d.names, d.provenance + ("mirror",))


def reverse(d: LinkDiagram, component: int) -> LinkDiagram:
    """Reverse the orientation of one (1-based) component."""
    _require_word(d)
    idx = d.trace.first_cup[d.order[component - 1]]
    e = d.word[idx]
    events = list(tagged_word(d))
    events[idx] = events[idx]._replace(orient="L" if e.orient == "R" else "R")
    return from_word(reorient(events), tag_order=range(1, d.n_components + 1),
                     provenance=d.provenance + (f"reverse {component}",))


def braid_closure(braid: Sequence[int], strands: int) -> tuple[Event, ...]:
    """Slice word of the closure of a braid (generators ±1..±(strands-1)).

    All braid strands go up; positive generators are positive crossings.
    """
    events = [Event("cup", i, "L") for i in range(strands)]
    for g in braid:
        if g == 0 or abs(g) >= strands:
            raise DiagramError(f"bad braid generator {g}")
        events.append(Event("x+" if g > 0 else "x-", abs(g) - 1))
    events += [Event("cap", i) for i in reversed(range(strands))]
    return tuple(events)
