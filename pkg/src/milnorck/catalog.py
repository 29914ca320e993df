"""Named link diagrams and their isotopic alternates.

Small links are literal slice words read bottom to top; the satellite
links are built with the constructions module.  Each ``-alt`` entry is a
different diagram of the same oriented link with the same component
numbering, which backs the isotopy-stability checks.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from .diagram import DiagramError, LinkDiagram, braid_closure, from_word, parse_slice_word

__all__ = ["CatalogEntry", "catalog", "catalog_names", "entry", "hopf_word", "ENTRIES"]


def hopf_word():
    #   ___     ___
    #  /   \   /   \
    #  |    \ /    |      two positive crossings;
    #  |     /     |      left circle runs down its left side,
    #  |    / \    |      right circle up its right side
    #  |    \ /    |
    #  |     /     |
    #  \___/   \___/
    return parse_slice_word("cup 0 R; cup 2 L; x+ 1; x+ 1; cap 2; cap 0")


UNKNOT = "cup 0 R; cap 0"

# closure of s1 s1 s1 on two upward strands
TREFOIL = braid_closure([1, 1, 1], 2)

# closure of s1 s1 s2^-1 s1 s2^-1: component 1 uses strands 1-2
WHITEHEAD = braid_closure([1, 1, -2, 1, -2], 3)

# closure of (s1 s2^-1)^3
BORROMEAN = braid_closure([1, -2] * 3, 3)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[], LinkDiagram]
    description: str
    expected: dict = field(default_factory=dict)
    alternates: tuple[str, ...] = ()


def _unknot():
    return from_word(parse_slice_word(UNKNOT))


def _unknot_alt():
    return from_word(braid_closure([1], 2))


def _hopf():
    return from_word(hopf_word())


def _whitehead():
    return from_word(WHITEHEAD)


def _borromean():
    return from_word(BORROMEAN)


def _wh_double_borromean():
    from .constructions import whitehead_double
    return whitehead_double(_borromean(), 1, 1)


def _wh_double_borromean_alt():
    from .constructions import bing_double
    return bing_double(_whitehead(), 2)


def _wh_wh_hopf():
    from .constructions import whitehead_double
    return whitehead_double(whitehead_double(_hopf(), 1, 1), 2, -1)


def _wh_wh_hopf_alt():
    from .constructions import whitehead_double
    return whitehead_double(whitehead_double(_hopf(), 2, -1), 1, 1)


def _lazy(f):
    cache = {}

    def get():
        if "d" not in cache:
            cache["d"] = f()
        return cache["d"]
    return get


def _from_recipe(name, f):
    def get():
        return f().with_provenance(f"catalog {name}")
    return _lazy(get)


ENTRIES: dict[str, CatalogEntry] = {}


def _add(name, f, description, expected=None, alternates=()):
    ENTRIES[name] = CatalogEntry(name, _from_recipe(name, f), description, expected or {}, alternates)


def _cons(name):
    from . import constructions
    return getattr(constructions, name)


_add("unknot", _unknot, "round unknot", {"components": 1, "jones": [[0, 1]], "conway": [1]}, ("unknot-alt",))
_add("unknot-alt", _unknot_alt, "closure of one positive 2-strand generator")
_add("hopf", _hopf, "positive Hopf link",
     {"lk": [[0, 1], [1, 0]], "jones": [[1, -1], [5, -1]], "conway": [0, 1]}, ("hopf-alt",))
_add("hopf-alt", lambda: from_word(braid_closure([1, 1], 2)), "closure of s1^2")
_add("trefoil", lambda: from_word(TREFOIL), "right-handed trefoil",
     {"components": 1, "jones": [[2, 1], [6, 1], [8, -1]], "conway": [1, 0, 1]}, ("trefoil-alt",))
_add("trefoil-alt", lambda: from_word(braid_closure([1, 1, 1, 2], 3)), "Markov stabilization of the trefoil braid")
_add("whitehead", _whitehead, "Whitehead link",
     {"lk": [[0, 0], [0, 0]], "mu": {"1122": 1}}, ("whitehead-alt",))
_add("whitehead-alt", lambda: _cons("whitehead_double")(_hopf(), 1, 1),
     "Whitehead double of one Hopf component, positive clasp")
_add("borromean", _borromean, "Borromean rings",
     {"lk": [[0, 0, 0]] * 3, "mu": {"123": -1}}, ("borromean-alt",))
_add("borromean-alt", lambda: _cons("bing_double")(_hopf(), 1), "Bing double of one Hopf component")
_add("wh-double-borromean", _wh_double_borromean,
     "Whitehead double of the Borromean rings (component 1, positive clasp)",
     {"lk": [[0, 0, 0]] * 3, "conway": [], "mu": {"123123": -2, "112323": 1}}, ("wh-double-borromean-alt",))
_add("wh-double-borromean-alt", _wh_double_borromean_alt, "Bing double of the Whitehead link (component 2)")
_add("wh-wh-hopf", _wh_wh_hopf, "Hopf link with both components Whitehead doubled, clasps +1 and -1",
     {"lk": [[0, 0], [0, 0]],
      "jones": [[-9, 1], [-7, -2], [-5, 1], [-3, -1], [3, -1], [5, 1], [7, -2], [9, 1]]},
     ("wh-wh-hopf-alt",))
_add("wh-wh-hopf-alt", _wh_wh_hopf_alt, "same link, components doubled in the other order")


def catalog_names() -> list[str]:
    return list(ENTRIES) + ["unlink-<n>"]


def entry(name: str) -> CatalogEntry:
    m = re.fullmatch(r"unlink-(\d+)(-alt)?", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise DiagramError("unlink needs at least one component")
        from .constructions import unlink

        if m.group(2):
            # nested circles instead of side by side
            from .diagram import Event
            events = [Event("cup", i, "R") for i in range(n)] + [Event("cap", n - 1 - i) for i in range(n)]
            build = _lazy(lambda: from_word(events, provenance=(f"catalog {name}",)))
        else:
            build = _lazy(lambda: unlink(n).with_provenance(f"catalog {name}"))
        expected = {"components": n, "lk": [[0] * n] * n}
        return CatalogEntry(name, build, f"{n}-component unlink", expected,
                            () if m.group(2) else (f"unlink-{n}-alt",))
    if name not in ENTRIES:
        raise DiagramError(f"unknown catalog link {name!r}")
    return ENTRIES[name]


def catalog(name: str) -> LinkDiagram:
    """The diagram registered under ``name`` (``unlink-<n>`` for any n >= 1)."""
    return entry(name).build()
