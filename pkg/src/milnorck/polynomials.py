"""Jones, Alexander and Conway polynomials, and exact derivatives.

Conventions
-----------
* The Kauffman bracket smooths ``(a, b, c, d)`` to ``A <(a b)(c d)> +
  A^-1 <(a d)(b c)>`` and gives a crossingless loop the value 1, so a
  positive curl has bracket ``-A^3``.
* ``jones(d) = (-A^3)^-w <d>`` with ``A = q^(-1/4)``.  The positive Hopf
  link gives ``-q^(1/2) - q^(5/2)`` and the right-handed trefoil
  ``q + q^3 - q^4``.
* ``alexander`` is the one-variable polynomial of the Fox matrix of the
  Wirtinger presentation with every meridian sent to ``t``, symmetrized
  in ``t^(1/2)``; ``conway`` rewrites it in ``z = t^(1/2) - t^(-1/2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

from sympy import Poly, symbols
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from .diagram import DiagramError, LinkDiagram, PDCode, component_data
from .wirtinger import presentation_from_pd

__all__ = ["LaurentPoly", "ConwayPolynomial", "BracketBudgetExceeded",
           "kauffman_bracket", "jones", "alexander", "conway",
           "derivative_at", "derivative_report", "DEFAULT_BRACKET_BUDGET"]

DEFAULT_BRACKET_BUDGET = 24


class BracketBudgetExceeded(DiagramError):
    pass


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in a variable ``v`` with half-integer exponents.

    ``terms`` maps twice the exponent to the coefficient; zero coefficients
    are never stored.
    """

    terms: tuple[tuple[int, int], ...] = ()
    var: str = "q"

    @classmethod
    def from_terms(cls, terms: Mapping[int, int] | Iterable[tuple[int, int]], var: str = "q") -> "LaurentPoly":
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        return cls(tuple(sorted((e, c) for e, c in acc.items() if c)), var)

    @classmethod
    def one(cls, var="q"):
        return cls(((0, 1),), var)

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_terms(d, self.var)

    def __neg__(self):
        return LaurentPoly(tuple((e, -c) for e, c in self.terms), self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly.from_terms({e: c * other for e, c in self.terms}, self.var)
        d: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_terms(d, self.var)

    __rmul__ = __mul__

    def shift(self, twice: int) -> "LaurentPoly":
        """Multiply by ``v^(twice/2)``."""
        return LaurentPoly(tuple((e + twice, c) for e, c in self.terms), self.var)

    def invert_variable(self) -> "LaurentPoly":
        """Substitute ``v -> v^-1``."""
        return LaurentPoly.from_terms({-e: c for e, c in self.terms}, self.var)

    def evaluate(self, x) -> Fraction:
        return derivative_at(self, 0, x)

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.terms]

    @classmethod
    def from_json(cls, data, var="q") -> "LaurentPoly":
        return cls.from_terms(((e, c) for e, c in data), var)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.terms:
            if e == 0:
                mono = ""
            elif e == 2:
                mono = self.var
            elif e % 2 == 0:
                mono = f"{self.var}^{e // 2}"
            else:
                mono = f"{self.var}^({e}/2)"
            mag = abs(c)
            body = (str(mag) if mag != 1 or not mono else "") + mono
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text


# ---------------------------------------------------------------------------
# Kauffman bracket

def kauffman_bracket(pd: PDCode, budget: int | None = DEFAULT_BRACKET_BUDGET) -> LaurentPoly:
    """Bracket in ``A`` (stored as twice-exponents of ``A``; variable name ``A``).

    Crossings are smoothed one at a time while states with the same pairing
    of dangling edge ends are merged; the result equals the full state sum.
    """
    errors = pd.validate()
    if errors:
        raise DiagramError("; ".join(errors))
    if budget is not None and len(pd.crossings) > budget:
        raise BracketBudgetExceeded(f"{len(pd.crossings)} crossings exceed the bracket budget {budget}")
    used = {a for x in pd.crossings for a in x}
    free = sum(1 for a in pd.component_of if a not in used)
    # state: frozenset of open paths (frozenset of two end labels) -> {(A exponent, loops): coeff}
    states: dict[frozenset, dict[tuple[int, int], int]] = {frozenset(): {(0, 0): 1}}
    for a, b, c, d in pd.crossings:
        new: dict[frozenset, dict[tuple[int, int], int]] = {}
        for paths, poly in states.items():
            for expo, arcs in ((1, ((a, b), (c, d))), (-1, ((a, d), (b, c)))):
                p2, loops = _join(paths, arcs)
                bucket = new.setdefault(p2, {})
                for (e, k), coeff in poly.items():
                    key = (e + expo, k + loops)
                    bucket[key] = bucket.get(key, 0) + coeff
        states = new
    loop_value = LaurentPoly.from_terms({4: -1, -4: -1}, "A")   # -A^2 - A^-2
    total: dict[int, dict[int, int]] = {}
    for paths, poly in states.items():
        if paths:
            raise DiagramError("PD code leaves dangling edges")
        for (e, k), coeff in poly.items():
            total.setdefault(k, {})
            total[k][e] = total[k].get(e, 0) + coeff
    result = LaurentPoly((), "A")
    for k, poly in total.items():
        term = LaurentPoly.from_terms({2 * e: c for e, c in poly.items()}, "A")
        for _ in range(k - 1 + free):
            term = term * loop_value
        result = result + term
    if not pd.crossings:
        result = LaurentPoly.one("A")
        for _ in range(free - 1):
            result = result * loop_value
    return result


def _join(paths: frozenset, arcs) -> tuple[frozenset, int]:
    ends = {}
    for p in paths:
        x, y = tuple(p) if len(p) == 2 else (next(iter(p)),) * 2
        ends[x] = p
        ends[y] = p
    paths = set(paths)
    loops = 0
    for x, y in arcs:
        if x == y:
            loops += 1
            continue
        px, py = ends.get(x), ends.get(y)
        if px is not None and px is py:
            paths.discard(px)
            del ends[x], ends[y]
            loops += 1
            continue
        ux = _other(px, x) if px is not None else x
        uy = _other(py, y) if py is not None else y
        for p, e in ((px, x), (py, y)):
            if p is not None:
                paths.discard(p)
                del ends[e]
                ends.pop(_other(p, e), None)
        q = frozenset((ux, uy))
        paths.add(q)
        ends[ux] = q
        ends[uy] = q
    return frozenset(paths), loops


def _other(p, e):
    a, b = tuple(p)
    return b if a == e else a


def jones(d: LinkDiagram, budget: int | None = DEFAULT_BRACKET_BUDGET) -> LaurentPoly:
    """Jones polynomial in ``q`` (half-integer exponents for even component counts)."""
    pd = d.pd
    br = kauffman_bracket(pd, budget)
    w = int(sum(pd.signs()))
    # (-A^3)^-w, then A^k -> q^(-k/4): twice-exponent of q is -k/2
    sign = -1 if w % 2 else 1
    terms = {}
    for e2, c in br.terms:          # e2 = twice the A exponent
        k = e2 // 2 - 3 * w
        if k % 2:
            raise DiagramError("bracket exponents inconsistent with the writhe")
        terms[-k // 2] = c * sign
    return LaurentPoly.from_terms(terms, "q")


# ---------------------------------------------------------------------------
# Alexander and Conway

_t = symbols("t")


@dataclass(frozen=True)
class ConwayPolynomial:
    """Coefficients of ``z^0, z^1, ...``.

    ``sign_fixed`` is False when no normalization pins the overall sign
    (links whose linking-number coefficient vanishes but whose polynomial
    does not); the leading coefficient is then made positive.
    """

    coeffs: tuple[int, ...]
    sign_fixed: bool = True

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                body = (str(abs(c)) if abs(c) != 1 or not mono else "") + mono
                parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return text + "".join(f" {s} {b}" for s, b in parts[1:])

    def to_json(self):
        return {"coeffs": list(self.coeffs), "sign_fixed": self.sign_fixed}


def _fox_minor(d: LinkDiagram) -> Poly:
    """Determinant of the Alexander matrix with first row and column deleted, times a unit."""
    pd = d.pd
    p = presentation_from_pd(pd)
    n_arcs = len(p.arc_component)
    rels = p.relations
    if n_arcs - len(rels) > 1:
        return Poly(0, _t)
    if n_arcs == 1:
        return Poly(1, _t)
    # entries multiplied by t to clear t^-1; polynomial coefficient lists
    rows = []
    for r in rels:
        row = [dict() for _ in range(n_arcs)]

        def add(col, poly):
            for e, c in poly.items():
                row[col][e] = row[col].get(e, 0) + c
        if r.sign > 0:
            add(r.into, {0: 1})              # t * t^-1
            add(r.over, {1: 1, 0: -1})       # t * (1 - t^-1)
        else:
            add(r.into, {2: 1})              # t * t
            add(r.over, {1: 1, 2: -1})       # t * (1 - t)
        add(r.out, {1: -1})
        rows.append(row)
    minor = [row[1:] for row in rows[1:]]
    dom = ZZ[_t]
    mat = DomainMatrix([[dom.from_sympy(sum(c * _t ** e for e, c in entry.items()))
                         for entry in row] for row in minor], (len(minor), len(minor)), dom)
    return Poly(dom.to_sympy(mat.det()), _t)


def _symmetrize(poly: Poly) -> dict[int, int]:
    """Symmetric Laurent form in s = t^(1/2): exponent of s -> coefficient."""
    if poly.is_zero:
        return {}
    terms = {m[0]: int(c) for m, c in zip(poly.monoms(), poly.coeffs())}
    lo, hi = min(terms), max(terms)
    return {2 * e - (lo + hi): c for e, c in terms.items()}


def _to_z(sym: dict[int, int]) -> list[int]:
    sym = dict(sym)
    out: dict[int, int] = {}
    while any(sym.values()):
        k = max(e for e, c in sym.items() if c)
        c = sym[k]
        if k < 0:
            raise DiagramError("Alexander polynomial is not symmetric")
        out[k] = c
        # subtract c * (s - 1/s)^k
        for j in range(k + 1):
            e = k - 2 * j
            sym[e] = sym.get(e, 0) - c * comb(k, j) * (-1) ** j
    if not out:
        return []
    return [out.get(k, 0) for k in range(max(out) + 1)]


def _hoste_coefficient(d: LinkDiagram) -> int:
    lk = component_data(d)["lk"]
    n = lk.shape[0]
    if n == 1:
        return 1
    lap = -lk.astype(object)
    for i in range(n):
        lap[i, i] = sum(lk[i, j] for j in range(n) if j != i)
    minor = lap[1:, 1:]
    return int(DomainMatrix([[ZZ(int(x)) for x in row] for row in minor], minor.shape, ZZ).det())


def conway(d: LinkDiagram) -> ConwayPolynomial:
    """Conway polynomial from the Fox matrix, sign fixed where possible."""
    coeffs = _to_z(_symmetrize(_fox_minor(d)))
    if not coeffs:
        return ConwayPolynomial(())
    n = d.n_components
    target = _hoste_coefficient(d)
    lead = coeffs[n - 1] if n - 1 < len(coeffs) else 0
    if target and lead:
        if abs(target) != abs(lead):
            raise AssertionError(f"z^{n - 1} coefficient {lead} disagrees with linking numbers ({target})")
        s = 1 if target == lead else -1
        return ConwayPolynomial(tuple(c * s for c in coeffs))
    s = 1 if coeffs[-1] > 0 else -1
    return ConwayPolynomial(tuple(c * s for c in coeffs), sign_fixed=False)


def alexander(d: LinkDiagram) -> LaurentPoly:
    """One-variable Alexander polynomial in ``t``, Conway-normalized."""
    cw = conway(d)
    out = LaurentPoly((), "t")
    z = LaurentPoly.from_terms({1: 1, -1: -1}, "t")    # t^(1/2) - t^(-1/2)
    power = LaurentPoly.one("t")
    for c in cw.coeffs:
        out = out + power * c
        power = power * z
    return out


# ---------------------------------------------------------------------------
# derivatives

def _sqrt_fraction(x: Fraction) -> Fraction:
    from math import isqrt
    if x < 0:
        raise ValueError(f"{x} has no rational square root")
    num, den = isqrt(x.numerator), isqrt(x.denominator)
    if num * num != x.numerator or den * den != x.denominator:
        raise ValueError(f"{x} has no rational square root")
    return Fraction(num, den)


def derivative_at(p: LaurentPoly, order: int, point, variable: str = "q") -> Fraction:
    """Exact ``order``-th derivative at ``point``.

    ``variable="q"`` differentiates in the polynomial's own variable
    (half-integer exponents allowed when ``point`` is a rational square);
    ``variable="sqrt"`` treats the polynomial as one in ``s = q^(1/2)``
    and ``point`` as a value of ``s``.
    """
    x = Fraction(point)
    if x == 0:
        raise ValueError("derivatives are taken away from 0")
    if variable not in ("q", "sqrt"):
        raise ValueError("variable must be 'q' or 'sqrt'")
    root = None
    total = Fraction(0)
    for twice, c in p.terms:
        e = Fraction(twice) if variable == "sqrt" else Fraction(twice, 2)
        factor = Fraction(1)
        for i in range(order):
            factor *= e - i
        if factor == 0:
            continue
        power = e - order
        if power.denominator == 1:
            value = x ** int(power)
        else:
            if root is None:
                root = _sqrt_fraction(x)
            value = root ** int(2 * power)
        total += c * factor * value
    return total


def derivative_report(polys: Mapping[str, LaurentPoly], orders=range(0, 5), point=1,
                      variables=("q", "sqrt")) -> dict:
    """Exact derivatives of several polynomials and the first order where they differ.

    Values are strings such as ``"2259/8"`` so the report is plain JSON.
    """
    names = list(polys)
    report = {"point": str(Fraction(point)), "polynomials": {n: polys[n].to_json() for n in names},
              "derivatives": {}, "first_distinguishing_order": {}}
    for var in variables:
        table = {n: [str(derivative_at(polys[n], k, point, var)) for k in orders] for n in names}
        report["derivatives"][var] = table
        first = None
        for i, k in enumerate(orders):
            if len({table[n][i] for n in names}) > 1:
                first = k
                break
        report["first_distinguishing_order"][var] = first
    return report
