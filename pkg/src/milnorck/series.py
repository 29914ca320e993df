"""Truncated noncommutative power series with integer coefficients.

Elements of Z<<X_1..X_n>> modulo words of length > q.  Coefficients are
stored densely per degree: degree d is a flat array of length n**d whose
index is the word read as base-n digits, first letter most significant.
Arrays use ``dtype=object`` so arithmetic is exact Python integers.
"""
from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

__all__ = ["TruncatedSeries", "SeriesError"]


class SeriesError(ValueError):
    pass


def _word_index(word, n):
    idx = 0
    for letter in word:
        idx = idx * n + (letter - 1)
    return idx


def _index_word(idx, n, d):
    letters = []
    for _ in range(d):
        idx, r = divmod(idx, n)
        letters.append(r + 1)
    return tuple(reversed(letters))


class TruncatedSeries:
    """Series in variables X_1..X_n (1-based letters), truncated above degree q."""

    __slots__ = ("n", "q", "levels")

    def __init__(self, n: int, q: int, levels: list[np.ndarray] | None = None):
        if n < 1 or q < 0:
            raise SeriesError("need n >= 1 variables and degree cap q >= 0")
        self.n = n
        self.q = q
        if levels is None:
            levels = [np.zeros(n ** d, dtype=object) for d in range(q + 1)]
            for lv in levels:
                lv[:] = 0
        self.levels = levels

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, n, q):
        return cls(n, q)

    @classmethod
    def one(cls, n, q):
        s = cls(n, q)
        s.levels[0][0] = 1
        return s

    @classmethod
    def generator(cls, n, q, i, sign=1):
        """The Magnus image of x_i (``sign=1``) or x_i^-1 (``sign=-1``)."""
        if not 1 <= i <= n:
            raise SeriesError(f"variable X_{i} outside 1..{n}")
        s = cls.one(n, q)
        if sign > 0:
            if q >= 1:
                s.levels[1][i - 1] = 1
        else:
            for d in range(1, q + 1):
                s.levels[d][_word_index((i,) * d, n)] = (-1) ** d
        return s

    @classmethod
    def from_dict(cls, n, q, coeffs: Mapping[tuple, int]):
        s = cls(n, q)
        for word, c in coeffs.items():
            word = tuple(word)
            if len(word) > q:
                continue
            if any(not 1 <= a <= n for a in word):
                raise SeriesError(f"word {word} uses a variable outside 1..{n}")
            s.levels[len(word)][_word_index(word, n)] += c
        return s

    def copy(self):
        return TruncatedSeries(self.n, self.q, [lv.copy() for lv in self.levels])

    # access -------------------------------------------------------------
    def __getitem__(self, word) -> int:
        word = tuple(word)
        if len(word) > self.q:
            return 0
        return int(self.levels[len(word)][_word_index(word, self.n)])

    def items(self):
        """Nonzero (word, coefficient) pairs, by degree then lexicographically."""
        for d, lv in enumerate(self.levels):
            for idx in np.flatnonzero(lv != 0):
                yield _index_word(int(idx), self.n, d), int(lv[idx])

    def to_dict(self) -> dict:
        return dict(self.items())

    @property
    def constant(self) -> int:
        return int(self.levels[0][0])

    def truncate(self, q: int) -> "TruncatedSeries":
        return TruncatedSeries(self.n, q, [lv.copy() for lv in self.levels[: q + 1]])

    def serialize(self) -> str:
        """``word:coeff`` pairs sorted by word; ``e`` is the empty word."""
        sep = "" if self.n < 10 else "."
        parts = sorted((w, c) for w, c in self.items())
        parts = [(sep.join(map(str, w)) or "e", c) for w, c in parts]
        return " ".join(f"{w}:{c}" for w, c in parts)

    def __repr__(self):
        return f"TruncatedSeries(n={self.n}, q={self.q}, {self.serialize() or '0'})"

    # arithmetic ---------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if (self.n, self.q) != (other.n, other.q):
            raise SeriesError(f"mismatched series parameters {(self.n, self.q)} vs {(other.n, other.q)}")

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.n, self.q) == (other.n, other.q) and all(
            np.array_equal(a, b) for a, b in zip(self.levels, other.levels))

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(self.n, self.q, [a + b for a, b in zip(self.levels, other.levels)])

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(self.n, self.q, [a - b for a, b in zip(self.levels, other.levels)])

    def __neg__(self):
        return TruncatedSeries(self.n, self.q, [-a for a in self.levels])

    def scale(self, k: int):
        return TruncatedSeries(self.n, self.q, [a * k for a in self.levels])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        a, b = self.levels, other.levels
        out = []
        for d in range(self.q + 1):
            acc = None
            for i in range(d + 1):
                x, y = a[i], b[d - i]
                if i == 0:
                    term = x[0] * y if x[0] != 0 else None
                elif i == d:
                    term = x * y[0] if y[0] != 0 else None
                else:
                    term = np.multiply.outer(x, y).ravel()
                if term is None:
                    continue
                acc = term if acc is None else acc + term
            if acc is None:
                acc = np.zeros(self.n ** d, dtype=object)
                acc[:] = 0
            out.append(acc)
        return TruncatedSeries(self.n, self.q, out)

    __rmul__ = scale

    def left_mul_generator(self, i: int) -> "TruncatedSeries":
        """(1 + X_i) * self, without a full product."""
        out = [lv.copy() for lv in self.levels]
        for d in range(1, self.q + 1):
            block = out[d].reshape(self.n, -1)
            block[i - 1] += self.levels[d - 1]
        return TruncatedSeries(self.n, self.q, out)

    def left_mul_generator_inverse(self, i: int) -> "TruncatedSeries":
        """(1 + X_i)^-1 * self, using (1+X)^-1 = 1 - X (1+X)^-1 degree by degree."""
        out = [lv.copy() for lv in self.levels]
        for d in range(1, self.q + 1):
            block = out[d].reshape(self.n, -1)
            block[i - 1] -= out[d - 1]
        return TruncatedSeries(self.n, self.q, out)

    def inverse(self) -> "TruncatedSeries":
        """Two-sided inverse by geometric series; needs constant term +-1."""
        c = self.constant
        if c not in (1, -1):
            raise SeriesError(f"series with constant term {c} is not a unit")
        # self = c (1 + t) with t of positive degree
        t = self.scale(c)
        t.levels[0][0] = 0
        result = TruncatedSeries.one(self.n, self.q)
        power = TruncatedSeries.one(self.n, self.q)
        for k in range(1, self.q + 1):
            power = power * t
            result = result + power.scale((-1) ** k)
        return result.scale(c)

    def __pow__(self, k: int) -> "TruncatedSeries":
        base = self if k >= 0 else self.inverse()
        result = TruncatedSeries.one(self.n, self.q)
        for _ in range(abs(k)):
            result = result * base
        return result

    def restrict(self, variables: Iterable[int]) -> "TruncatedSeries":
        """Image under X_k -> 0 for k outside ``variables`` (a ring map)."""
        keep = set(variables)
        coeffs = {w: c for w, c in self.items() if set(w) <= keep}
        return TruncatedSeries.from_dict(self.n, self.q, coeffs)
