"""Link constructions on slice words.

Everything is built from three local gadgets: blackboard parallels with
twist correction (cabling), a clasp that cuts a pair of parallel strands
and rejoins them hooked together, and a band joining two strands through a
horizontal corridor.  Tree clasper surgery is band summing with an
iterated Bing double of the Hopf link placed beside the diagram.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .diagram import (CROSS, DiagramError, Event, LinkDiagram, component_data,
                      from_word, mirror, reorient, tagged_word, trace)

__all__ = [
    "BudgetExceeded", "CableSpec", "TreeClasper", "DEFAULT_CROSSING_BUDGET",
    "cable", "bing_double", "whitehead_double", "band_sum", "clasper_surgery",
    "tree_link", "realize_milnor", "random_self_ck_move", "random_cmk_clasper",
    "random_tree", "caterpillar", "realization_clasper", "Leaf", "permute", "add_kinks", "unlink",
]

DEFAULT_CROSSING_BUDGET = 512


class BudgetExceeded(DiagramError):
    pass


def _finish(events, tag_order, provenance, budget):
    crossings = sum(e.kind in CROSS for e in events)
    if budget is not None and crossings > budget:
        raise BudgetExceeded(f"construction produced {crossings} crossings (budget {budget})")
    return from_word(reorient(events), tag_order=tag_order, provenance=provenance)


def _require(d: LinkDiagram):
    if d.word is None:
        raise DiagramError("construction needs a slice word")
    errors = d.validate()
    if errors:
        raise DiagramError("; ".join(errors))


def unlink(n: int) -> LinkDiagram:
    """Side-by-side unknots, all alive between the cups and the caps."""
    events = [Event("cup", 2 * i, "R") for i in range(n)]
    events += [Event("cap", 2 * i) for i in reversed(range(n))]
    return from_word(events, provenance=(f"unlink {n}",))


def permute(d: LinkDiagram, perm: Sequence[int]) -> LinkDiagram:
    """New component ``i`` is old component ``perm[i-1]``."""
    if sorted(perm) != list(range(1, d.n_components + 1)):
        raise DiagramError(f"{perm} is not a permutation of the components")
    return LinkDiagram(d.word, tuple(d.order[p - 1] for p in perm), None, d.names,
                       d.provenance + (f"permute {tuple(perm)}",))


# ---------------------------------------------------------------------------
# cabling

@dataclass(frozen=True)
class CableSpec:
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if any(r < 1 for r in self.multiplicities):
            raise DiagramError("cable multiplicities must be >= 1")

    @property
    def index_map(self) -> tuple[int, ...]:
        """Source component (1-based) of each new component."""
        return tuple(c for c, r in enumerate(self.multiplicities, 1) for _ in range(r))


def _full_twists(start, r, count):
    """count full twists (negative: left-handed) of strands start..start+r-1."""
    kind = "x+" if count > 0 else "x-"
    out = []
    for _ in range(abs(count)):
        for _ in range(r):
            out += [Event(kind, start + k) for k in range(r - 1)]
    return out


def _cable_events(d: LinkDiagram, mult: Sequence[int]):
    """Blackboard cable with zero-framing twists after each first cup.

    Returns (events, anchors) where ``anchors[c]`` is ``(index, start)``:
    inserting strand-neutral events at ``index`` acts on the left bundle of
    component ``c`` occupying positions ``start..start+r-1``.
    """
    tr = d.trace
    writhe = component_data(d)["writhe"]
    user = {cid: u for u, cid in enumerate(d.order, 1)}
    first = {user[cid]: idx for cid, idx in enumerate(tr.first_cup)}
    out = []
    anchors = {}
    for idx, e in enumerate(d.word):
        comps = tr.comp[idx]
        r_at = [mult[user[c] - 1] for c in comps]
        offset = sum(r_at[: e.pos])
        if e.kind == "cup":
            c = user[tr.comp[idx + 1][e.pos]]
            r = mult[c - 1]
            left_dir = tr.direction[idx + 1][e.pos]
            for k in range(r):
                copy = k if left_dir > 0 else r - 1 - k
                out.append(Event("cup", offset + k, e.orient, (c, copy)))
            if idx == first[c]:
                if r >= 2 and writhe[c - 1]:
                    out += _full_twists(offset, r, -int(writhe[c - 1]))
                anchors[c] = (len(out), offset)
        elif e.kind == "cap":
            r = r_at[e.pos]
            out += [Event("cap", offset + r - 1 - k) for k in range(r)]
        else:
            a, b = r_at[e.pos], r_at[e.pos + 1]
            for i in range(a):
                out += [Event(e.kind, offset + a - 1 - i + s) for s in range(b)]
    return out, anchors


def cable(d: LinkDiagram, spec: CableSpec | Sequence[int], *, budget: int | None = DEFAULT_CROSSING_BUDGET):
    """Zero-framed parallels; returns ``(diagram, index_map)``.

    Copies of component 1 come first, then copies of component 2, etc.
    """
    _require(d)
    if not isinstance(spec, CableSpec):
        spec = CableSpec(tuple(spec))
    mult = spec.multiplicities
    if len(mult) != d.n_components:
        raise DiagramError(f"need {d.n_components} multiplicities, got {len(mult)}")
    events, _ = _cable_events(d, mult)
    tags = [(c, k) for c, r in enumerate(mult, 1) for k in range(r)]
    out = _finish(events, tags, d.provenance + (f"cable {tuple(mult)}",), budget)
    return out, spec.index_map


# ---------------------------------------------------------------------------
# doubling

def _clasp(p, variant, tag):
    """Cut strands p, p+1 and rejoin them hooked; strand count unchanged."""
    first, second = ("x+", "x-") if variant == 0 else ("x-", "x+")
    return [Event("cup", p + 2, "R", tag), Event(first, p + 1), Event(second, p), Event("cap", p + 1)]


def _doubled(d, c, gadgets):
    """2-cable of component c with clasp gadgets at the given left/right bundle slots."""
    mult = [1] * d.n_components
    mult[c - 1] = 2
    events, anchors = _cable_events(d, mult)
    index, start = anchors[c]
    ins = []
    marks = []
    for slot, variant in gadgets:
        p = start + (0 if slot == "L" else 2)
        marks.append(index + len(ins) + 1)   # first crossing of this clasp
        ins += _clasp(p, variant, (c, "g" + slot))
    events[index:index] = ins
    return events, marks


def _clasp_sign(events, mark):
    ev = reorient(events)
    tr = trace(ev)
    e = ev[mark]
    dl, dr = tr.direction[mark][e.pos], tr.direction[mark][e.pos + 1]
    return dl * dr if e.kind == "x+" else -dl * dr


def whitehead_double(d: LinkDiagram, c: int, clasp_sign: int = 1, *,
                     budget: int | None = DEFAULT_CROSSING_BUDGET) -> LinkDiagram:
    """Untwisted Whitehead double of component ``c`` with a clasp of the given sign."""
    _require(d)
    if clasp_sign not in (1, -1):
        raise DiagramError("clasp sign must be +1 or -1")
    for variant in (0, 1):
        events, marks = _doubled(d, c, [("L", variant)])
        if _clasp_sign(events, marks[0]) == clasp_sign:
            break
    tags = [(i, 0) for i in range(1, d.n_components + 1)]
    return _finish(events, tags, d.provenance + (f"whitehead_double {c} {clasp_sign:+d}",), budget)


def bing_double(d: LinkDiagram, c: int, *, budget: int | None = DEFAULT_CROSSING_BUDGET) -> LinkDiagram:
    """Bing double of component ``c``: it becomes components ``c`` and ``c+1``.

    Component ``c`` is the short loop through the first cup of the old
    component, ``c+1`` the long one.
    """
    _require(d)
    n = d.n_components
    tags = [(i, 0) for i in range(1, c)] + [(c, 0), (c, "gL")] + [(i, 0) for i in range(c + 1, n + 1)]
    for variants in ((0, 1), (1, 0), (0, 0), (1, 1)):
        events, _ = _doubled(d, c, [("L", variants[0]), ("R", variants[1])])
        out = _finish(events, tags, d.provenance + (f"bing_double {c}",), budget)
        if component_data(out)["lk"][c - 1, c] == 0:
            return out
    raise AssertionError("no clasp combination gives unlinked Bing components")


# ---------------------------------------------------------------------------
# bands

def _band(ps, pt, over):
    """Band from the strand at ps to the strand at pt > ps through the corridor."""
    if len(over) != pt - ps - 1:
        raise DiagramError("route crosses a strand without an over/under directive")
    out = [Event("x+" if o else "x-", ps + i) for i, o in enumerate(over)]
    out += [Event("cap", pt - 1), Event("cup", pt - 1, "R")]
    out += [Event("x-" if o else "x+", ps + i) for i, o in reversed(list(enumerate(over)))]
    return out


def band_sum(d: LinkDiagram, a: int, b: int, route=None, *,
             budget: int | None = DEFAULT_CROSSING_BUDGET) -> LinkDiagram:
    """Join components ``a`` and ``b`` by a band; the result has one component fewer.

    ``route`` is ``(level, pos_a, pos_b, directives)`` with one directive per
    strand strictly between the two positions (True/'+' = band passes over).
    The default is the first level holding both components, the closest pair
    of strands and a band passing over everything.
    """
    _require(d)
    if a == b:
        raise DiagramError("band sum needs two different components")
    n = d.n_components
    tr = d.trace
    ca, cb = d.order[a - 1], d.order[b - 1]
    if route is None:
        best = None
        for level, comps in enumerate(tr.comp):
            pa = [p for p, x in enumerate(comps) if x == ca]
            pb = [p for p, x in enumerate(comps) if x == cb]
            for x in pa:
                for y in pb:
                    if best is None or abs(x - y) < best[0]:
                        best = (abs(x - y), level, x, y)
            if best is not None:
                break
        if best is None:
            raise DiagramError("components never share a level")
        _, level, pa, pb = best
        directives = [True] * (abs(pa - pb) - 1)
    else:
        level, pa, pb, directives = route
        directives = [x in (True, "+", "over", 1) for x in directives] if all(
            x in (True, False, "+", "-", "over", "under", 1, -1) for x in directives) else None
        if directives is None:
            raise DiagramError("route crosses a strand without an over/under directive")
        if tr.comp[level][pa] != ca or tr.comp[level][pb] != cb:
            raise DiagramError("route endpoints are not on the named components")
    lo, hi = sorted((pa, pb))
    events = tagged_word(d)
    events[level:level] = _band(lo, hi, directives)
    tags = [i for i in range(1, n + 1) if i != b]
    out = _finish(events, tags, d.provenance + (f"band_sum {a} {b}",), budget)
    return out


# ---------------------------------------------------------------------------
# claspers

def _leaves_of(shape):
    if isinstance(shape, int):
        return [shape]
    return _leaves_of(shape[0]) + _leaves_of(shape[1])


def _freeze(shape):
    return shape if isinstance(shape, int) else (_freeze(shape[0]), _freeze(shape[1]))


@dataclass(frozen=True)
class Leaf:
    component: int
    pos: int
    sign: int = 1


@dataclass(frozen=True)
class TreeClasper:
    """A simple tree clasper.

    ``shape`` is a rooted binary tree of leaf numbers ``0..k`` (nested pairs);
    unrooting at the top pair gives the trivalent tree.  All leaves attach at
    slice ``level``; leaf ``i`` grasps the strand at position ``leaves[i].pos``,
    and its sign chooses a band above (+1) or below (-1) the diagram.  The
    overall sign mirrors the inserted tree link.
    """

    shape: tuple
    leaves: tuple[Leaf, ...]
    level: int
    sign: int = 1

    def __post_init__(self):
        ids = sorted(_leaves_of(self.shape))
        if ids != list(range(len(self.leaves))) or len(ids) < 2:
            raise DiagramError("tree leaves must be numbered 0..k with k >= 1")

    @property
    def degree(self) -> int:
        return len(self.leaves) - 1

    @property
    def is_self(self) -> bool:
        return len({lf.component for lf in self.leaves}) == 1

    def to_json(self) -> dict:
        def nest(s):
            return s if isinstance(s, int) else [nest(s[0]), nest(s[1])]
        return {"tree": nest(self.shape), "level": self.level, "sign": self.sign,
                "leaves": [{"component": lf.component, "pos": lf.pos, "sign": lf.sign}
                           for lf in self.leaves]}

    @classmethod
    def from_json(cls, data: dict) -> "TreeClasper":
        leaves = tuple(Leaf(int(x["component"]), int(x["pos"]), int(x.get("sign", 1)))
                       for x in data["leaves"])
        return cls(_freeze(data["tree"]), leaves, int(data["level"]), int(data.get("sign", 1)))


@lru_cache(maxsize=None)
def _tree_link_cached(shape) -> LinkDiagram:
    from .catalog import hopf_word
    d = from_word(hopf_word())
    labels = [shape[0], shape[1]]
    while True:
        for i, s in enumerate(labels):
            if not isinstance(s, int):
                break
        else:
            break
        d = bing_double(d, i + 1, budget=None)
        labels[i:i + 1] = [s[0], s[1]]
    d = permute(d, [labels.index(leaf) + 1 for leaf in range(len(labels))])
    d = add_kinks(d, [-int(w) for w in component_data(d)["writhe"]])
    return LinkDiagram(d.word, d.order, None, (), (f"tree link {shape}",))


def tree_link(shape) -> LinkDiagram:
    """Iterated Bing double of the Hopf link along ``shape``; component i+1 is leaf i."""
    shape = _freeze(shape)
    if isinstance(shape, int):
        raise DiagramError("a tree needs at least two leaves")
    return _tree_link_cached(shape)


def add_kinks(d: LinkDiagram, counts: Sequence[int]) -> LinkDiagram:
    """Add ``counts[i]`` signed Reidemeister-I curls to component ``i+1``."""
    _require(d)
    tr = d.trace
    events = tagged_word(d)
    inserts = []
    for c, k in enumerate(counts, 1):
        if not k:
            continue
        idx = tr.first_cup[d.order[c - 1]]
        p = d.word[idx].pos
        kind = "x+" if k > 0 else "x-"
        curl = []
        for _ in range(abs(k)):
            curl += [Event("cup", p + 1, "R"), Event(kind, p), Event("cap", p + 1)]
        inserts.append((idx + 1, curl))
    for index, evs in sorted(inserts, key=lambda t: -t[0]):
        events[index:index] = evs
    return _finish(events, range(1, d.n_components + 1), d.provenance + (f"kinks {tuple(counts)}",), None)


def clasper_surgery(d: LinkDiagram, t: TreeClasper, *,
                    budget: int | None = DEFAULT_CROSSING_BUDGET) -> LinkDiagram:
    """Surgery on a simple tree clasper.

    The tree link is inserted at ``t.level`` to the right of all strands and
    each of its components is banded to the strand its leaf grasps.
    """
    _require(d)
    tr = d.trace
    if not 0 < t.level < len(d.word):
        raise DiagramError(f"clasper level {t.level} outside the diagram")
    N = tr.counts[t.level]
    for lf in t.leaves:
        if not 0 <= lf.pos < N or d.user_component(t.level, lf.pos) != lf.component:
            raise DiagramError(f"leaf {lf} does not grasp a strand of component {lf.component} at level {t.level}")
    B = tree_link(t.shape)
    if t.sign < 0:
        B = mirror(B)
    btr = B.trace
    inner = []
    for idx, e in enumerate(B.word):
        inner.append(e._replace(pos=e.pos + N,
                                tag=("B", B.user_component(idx + 1, e.pos)) if e.kind == "cup" else None))
    bands = []
    for i, lf in enumerate(t.leaves):
        cup_idx = btr.first_cup[B.order[i]]
        target = B.word[cup_idx].pos + N
        bands.append((cup_idx + 1, _band(lf.pos, target, [lf.sign > 0] * (target - lf.pos - 1))))
    for index, evs in sorted(bands, key=lambda b: -b[0]):
        inner[index:index] = evs
    events = tagged_word(d)
    events[t.level:t.level] = inner
    return _finish(events, range(1, d.n_components + 1),
                   d.provenance + ("clasper " + json.dumps(t.to_json(), sort_keys=True),), budget)


def caterpillar(m: int):
    """Left-combed tree on leaves 0..m-1."""
    shape = (0, 1)
    for k in range(2, m):
        shape = (shape, k)
    return shape


def _sub_multisets(index):
    """Leaf label multisets drawn from ``index`` using every label, largest first."""
    counts = {c: index.count(c) for c in sorted(set(index))}
    out = [()]
    for c, k in counts.items():
        out = [m + (c,) * j for m in out for j in range(1, k + 1)]
    return sorted(out, key=lambda m: (-len(m), m))


@lru_cache(maxsize=None)
def _realization(index: tuple[int, ...]):
    from .milnor import MagnusData
    n = max(index)
    base = unlink(n)
    for labels in _sub_multisets(index):
        if len(labels) < 2:
            continue
        seen = set()
        for perm in permutations(labels):
            if perm in seen:
                continue
            seen.add(perm)
            leaves = tuple(Leaf(c, 2 * (c - 1), 1) for c in perm)
            clasper = TreeClasper(caterpillar(len(perm)), leaves, n)
            d = clasper_surgery(base, clasper, budget=None)
            value = MagnusData(d, len(index) - 1).mu_bar(index)
            if value.delta == 0 and abs(value.value) == 1:
                return clasper, d
    raise DiagramError(f"no single caterpillar clasper on the unlink gives mu{index} = +-1")


def realization_clasper(index: Sequence[int]) -> TreeClasper:
    """Clasper on ``unlink(max(index))`` whose surgery has mu(index) = +-1.

    Leaf labels range over sub-multisets of ``index`` (largest first) and
    caterpillar leaf orders; the first candidate with |mu| = 1 and all
    shorter invariants zero wins.  Some indices have no such clasper: with
    vanishing linking numbers mu(1..12) is always 0 by the shuffle relations.
    """
    return _realization(_check_realizable(index))[0]


def _check_realizable(index):
    index = tuple(index)
    if len(index) < 2:
        raise DiagramError("index needs at least two entries")
    n = max(index)
    if set(index) != set(range(1, n + 1)):
        raise DiagramError("index entries must be exactly 1..n")
    return index


def realize_milnor(index: Sequence[int], *, budget: int | None = DEFAULT_CROSSING_BUDGET) -> LinkDiagram:
    """Link with mu(index) = +-1 and vanishing shorter invariants.

    Built from the unlink by surgery on the clasper of ``realization_clasper``.
    """
    index = _check_realizable(index)
    d = _realization(index)[1]
    if budget is not None and d.n_crossings > budget:
        raise BudgetExceeded(f"construction produced {d.n_crossings} crossings (budget {budget})")
    return d.with_provenance(f"realize {index}")


# ---------------------------------------------------------------------------
# random moves

def random_tree(k: int, rng: random.Random):
    """Uniform leaf-labelled rooted binary tree on leaves 0..k (Remy's algorithm)."""
    tree = 0
    for leaf in range(1, k + 1):
        subtrees = []

        def collect(s, path):
            subtrees.append(path)
            if not isinstance(s, int):
                collect(s[0], path + (0,))
                collect(s[1], path + (1,))
        collect(tree, ())
        path = subtrees[rng.randrange(len(subtrees))]
        left = rng.random() < 0.5

        def rebuild(s, p):
            if not p:
                return (leaf, s) if left else (s, leaf)
            kids = list(s)
            kids[p[0]] = rebuild(s[p[0]], p[1:])
            return tuple(kids)
        tree = rebuild(tree, path)
    return tree


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _levels_with(d: LinkDiagram, c: int):
    tr = d.trace
    cid = d.order[c - 1]
    return [t for t in range(1, len(d.word)) if cid in tr.comp[t]]


def random_cmk_clasper(d: LinkDiagram, m: int, c: int, on_c: int, seed) -> TreeClasper:
    """Random degree-``m`` clasper with at least ``on_c`` leaves on component ``c``."""
    _require(d)
    rng = _rng(seed)
    if not 1 <= on_c <= m + 1:
        raise DiagramError("a degree-m clasper has m+1 leaves")
    levels = _levels_with(d, c)
    if not levels:
        raise DiagramError(f"component {c} has no attachment room")
    level = rng.choice(levels)
    tr = d.trace
    cid = d.order[c - 1]
    strands_c = [p for p, x in enumerate(tr.comp[level]) if x == cid]
    all_strands = list(range(tr.counts[level]))
    positions = [rng.choice(strands_c) for _ in range(on_c)]
    positions += [rng.choice(all_strands) for _ in range(m + 1 - on_c)]
    rng.shuffle(positions)
    leaves = tuple(Leaf(d.user_component(level, p), p, rng.choice((1, -1))) for p in positions)
    return TreeClasper(random_tree(m, rng), leaves, level, rng.choice((1, -1)))


def random_self_ck_move(d: LinkDiagram, c: int, k: int, seed, *,
                        budget: int | None = DEFAULT_CROSSING_BUDGET) -> LinkDiagram:
    """Surgery on a random degree-``k`` tree clasper with every leaf on component ``c``."""
    clasper = random_cmk_clasper(d, k, c, k + 1, seed)
    return clasper_surgery(d, clasper, budget=budget)
