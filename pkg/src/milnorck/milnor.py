"""Milnor invariants from the Magnus expansion of zero-framed longitudes.

Every Wirtinger arc of component ``c`` is a conjugate of the base meridian
``x_c``.  Starting from ``E(arc) = 1 + X_c`` the conjugating prefixes are
recomputed ``q`` times from the previous values; after ``t`` rounds all
coefficients of degree <= t are final.  ``mu(i_1..i_{m-1} j)`` is the
coefficient of ``X_{i_1}..X_{i_{m-1}}`` in the expansion of the longitude of
component ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from .diagram import DiagramError, LinkDiagram
from .series import TruncatedSeries
from .wirtinger import WirtingerPresentation, longitude, presentation_from_pd

__all__ = ["MilnorIndex", "MilnorValue", "arc_expansion", "MagnusData",
           "mu_raw", "delta", "mu_bar", "milnor_table", "r_of", "shorter_indices"]


def r_of(index: Sequence[int]) -> int:
    """Largest multiplicity of any entry."""
    return max(index.count(i) for i in set(index))


@dataclass(frozen=True)
class MilnorIndex:
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) < 2:
            raise DiagramError("a Milnor index needs at least two entries")

    @classmethod
    def parse(cls, text: str) -> "MilnorIndex":
        text = text.strip()
        if "," in text:
            return cls(tuple(int(t) for t in text.split(",")))
        return cls(tuple(int(ch) for ch in text))

    @property
    def r(self) -> int:
        return r_of(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        sep = "" if max(self.entries) < 10 else ","
        return sep.join(map(str, self.entries))


@dataclass(frozen=True)
class MilnorValue:
    value: int
    delta: int

    @property
    def residue(self) -> int:
        return self.value % self.delta if self.delta else self.value

    @property
    def signed_residue(self) -> int:
        """Representative of least absolute value (ties towards positive)."""
        if not self.delta:
            return self.value
        r = self.value % self.delta
        return r - self.delta if 2 * r > self.delta else r

    def to_json(self, index) -> dict:
        return {"I": list(index), "value": self.value, "delta": self.delta}


def arc_expansion(p: WirtingerPresentation, q: int, rounds: int | None = None) -> list[TruncatedSeries]:
    """Magnus images of every arc, exact through degree ``q``.

    ``rounds`` (default ``q``) is the number of propagation sweeps.
    """
    if q < 1:
        raise DiagramError("degree cap must be at least 1")
    n = p.n_components
    rounds = q if rounds is None else rounds
    E = [TruncatedSeries.generator(n, q, c) for c in p.arc_component]
    for _ in range(rounds):
        Einv = [e.inverse() for e in E]
        new = list(E)
        for c in range(1, n + 1):
            arcs = p.arcs[c]
            P = TruncatedSeries.one(n, q)
            Pinv = TruncatedSeries.one(n, q)
            for k, (u, s) in enumerate(p.passes[c][:-1] if p.passes[c] else ()):
                if s > 0:
                    P, Pinv = P * E[u], Einv[u] * Pinv
                else:
                    P, Pinv = P * Einv[u], E[u] * Pinv
                new[arcs[k + 1]] = Pinv * P.left_mul_generator(c)
        E = new
    return E


class MagnusData:
    """Longitude expansions of one diagram, shared across many indices."""

    def __init__(self, d: LinkDiagram | WirtingerPresentation, q: int, base_shift=None):
        if isinstance(d, LinkDiagram):
            errors = d.validate()
            if errors:
                raise DiagramError("; ".join(errors))
            p = presentation_from_pd(d.pd, base_shift)
        else:
            p = d
        self.presentation = p
        self.q = q
        self.n = p.n_components
        E = arc_expansion(p, q)
        self.arcs = E
        self.longitudes = []
        for j in range(1, self.n + 1):
            lam = TruncatedSeries.one(self.n, q)
            for g, e in longitude(p, j):
                if e > 0:
                    for _ in range(e):
                        lam = lam * E[g]
                else:
                    inv = E[g].inverse()
                    for _ in range(-e):
                        lam = lam * inv
            self.longitudes.append(lam)
        self._delta = {}

    def mu_raw(self, index: Sequence[int]) -> int:
        index = tuple(index)
        if len(index) < 2 or len(index) - 1 > self.q:
            raise DiagramError(f"index {index} needs degree cap {len(index) - 1} (have {self.q})")
        if not all(1 <= i <= self.n for i in index):
            raise DiagramError(f"index {index} refers to components outside 1..{self.n}")
        return self.longitudes[index[-1] - 1][index[:-1]]

    def delta(self, index: Sequence[int]) -> int:
        index = tuple(index)
        if index in self._delta:
            return self._delta[index]
        g = 0
        for sub in shorter_indices(index):
            g = gcd(g, self.mu_raw(sub))
            if g == 1:
                break
        self._delta[index] = g
        return g

    def mu_bar(self, index: Sequence[int]) -> MilnorValue:
        return MilnorValue(self.mu_raw(index), self.delta(index))


def shorter_indices(index: Sequence[int]) -> set[tuple[int, ...]]:
    """Indices from deleting at least one entry and rotating cyclically."""
    index = tuple(index)
    m = len(index)
    out = set()
    for mask in range(1, 2 ** m - 1):
        sub = tuple(index[i] for i in range(m) if not mask >> i & 1)
        if len(sub) < 2:
            continue
        for r in range(len(sub)):
            out.add(sub[r:] + sub[:r])
    return out


def _check_index(d: LinkDiagram, index) -> tuple[int, ...]:
    if isinstance(index, MilnorIndex):
        index = index.entries
    index = tuple(index)
    MilnorIndex(index)
    if not all(1 <= i <= d.n_components for i in index):
        raise DiagramError(f"index {index} refers to components outside 1..{d.n_components}")
    return index


def mu_raw(d: LinkDiagram, index) -> int:
    index = _check_index(d, index)
    return MagnusData(d, len(index) - 1).mu_raw(index)


def delta(d: LinkDiagram, index) -> int:
    index = _check_index(d, index)
    return MagnusData(d, max(len(index) - 2, 1)).delta(index)


def mu_bar(d: LinkDiagram, index) -> MilnorValue:
    index = _check_index(d, index)
    return MagnusData(d, len(index) - 1).mu_bar(index)


def all_indices(n: int, max_len: int, max_r: int | None = None, min_len: int = 2) -> list[tuple[int, ...]]:
    out = []
    for m in range(min_len, max_len + 1):
        for idx in product(range(1, n + 1), repeat=m):
            if max_r is None or r_of(idx) <= max_r:
                out.append(idx)
    return out


def milnor_table(d: LinkDiagram, max_len: int, max_r: int | None = None,
                 base_shift=None) -> dict[tuple[int, ...], MilnorValue]:
    """mu-bar for every index up to ``max_len`` (optionally with r(I) <= max_r)."""
    data = MagnusData(d, max_len - 1, base_shift)
    return {I: data.mu_bar(I) for I in all_indices(d.n_components, max_len, max_r)}
