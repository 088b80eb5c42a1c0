"""Monomials in countably many variables and their isotone-map avatars."""
from __future__ import annotations

import re
from collections import Counter
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .errors import GuardExceeded, InvalidInput, ParseError
from .isotone import DEFAULT_MAX_CANDIDATES, INF, IsotoneMap


class Monomial:
    """A monomial ``x_1^{e_1} x_2^{e_2} ...`` stored exponent-sparse.

    ``items`` is the sorted tuple of ``(variable, exponent)`` pairs with
    positive exponents.  The empty tuple is the unit monomial.
    """

    __slots__ = ("items", "_factors", "_hash")

    def __init__(self, exponents: Mapping[int, int] | Iterable[Tuple[int, int]] = ()):
        pairs = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict = {}
        for var, e in pairs:
            if var < 1:
                raise InvalidInput(f"variable indices start at 1, got {var}")
            if e < 0:
                raise InvalidInput(f"negative exponent for x{var}")
            if e:
                acc[var] = acc.get(var, 0) + e
        self.items = tuple(sorted(acc.items()))
        self._factors = None
        self._hash = hash(self.items)

    @classmethod
    def from_factors(cls, factors: Iterable[int]) -> "Monomial":
        return cls(Counter(factors))

    @classmethod
    def from_exponents(cls, exps: Sequence[int]) -> "Monomial":
        """From a dense exponent vector ``(e_1, ..., e_m)``."""
        return cls((i + 1, e) for i, e in enumerate(exps) if e)

    # -- views ----------------------------------------------------------
    @property
    def factors(self) -> tuple:
        """Weakly increasing list of variable indices, with multiplicity."""
        if self._factors is None:
            self._factors = tuple(v for v, e in self.items for _ in range(e))
        return self._factors

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.items)

    @property
    def max_var(self) -> int:
        """Largest variable index; 0 for the unit monomial."""
        return self.items[-1][0] if self.items else 0

    @property
    def min_var(self) -> int:
        return self.items[0][0] if self.items else 0

    def exponent(self, var: int) -> int:
        for v, e in self.items:
            if v == var:
                return e
        return 0

    def exponents(self, m: int) -> tuple:
        if self.max_var > m:
            raise InvalidInput(f"{self} involves variables beyond x{m}")
        vec = [0] * m
        for v, e in self.items:
            vec[v - 1] = e
        return tuple(vec)

    def is_unit(self) -> bool:
        return not self.items

    # -- arithmetic -----------------------------------------------------
    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.items + other.items)

    def divides(self, other: "Monomial") -> bool:
        return all(other.exponent(v) >= e for v, e in self.items)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise InvalidInput(f"{other} does not divide {self}")
        acc = dict(self.items)
        for v, e in other.items:
            acc[v] -= e
        return Monomial(acc)

    def lcm(self, other: "Monomial") -> "Monomial":
        acc = dict(self.items)
        for v, e in other.items:
            acc[v] = max(acc.get(v, 0), e)
        return Monomial(acc)

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Monomial) and self.items == other.items

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.degree, self.factors)

    def __lt__(self, other: "Monomial"):
        return self.sort_key() < other.sort_key()

    def to_str(self, alphabet: str = "x") -> str:
        if not self.items:
            return "1"
        return "*".join(f"{alphabet}{v}" + (f"^{e}" if e > 1 else "") for v, e in self.items)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Monomial({self.to_str()})"


ONE = Monomial()

_FACTOR = re.compile(r"^([xy])(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str) -> Monomial:
    """Parse ``x1^2*x2*x4^3`` (``y`` accepted as an alias of ``x``; ``1`` is the unit)."""
    text = text.strip()
    if text == "1":
        return ONE
    if not text:
        raise ParseError("empty monomial")
    acc = []
    for part in text.split("*"):
        m = _FACTOR.match(part.strip())
        if not m:
            raise ParseError(f"cannot parse monomial factor {part!r} in {text!r}")
        var, exp = int(m.group(2)), int(m.group(3) or 1)
        if var < 1 or exp < 1:
            raise ParseError(f"bad factor {part!r}")
        acc.append((var, exp))
    return Monomial(acc)


def alphabet_of(text: str) -> Optional[str]:
    letters = set(re.findall(r"[xy]", text))
    if len(letters) > 1:
        raise ParseError(f"mixed x/y alphabets in {text!r}")
    return letters.pop() if letters else None


# -- the Gamma and Lambda correspondences ------------------------------

def gamma(f: IsotoneMap) -> Monomial:
    """``prod x_{f(i)}`` over the finite values of a large map.

    For a box map ``[m] -> [n+1]`` the value ``n+1`` counts as infinite.
    """
    if f.is_interval:
        return Monomial.from_factors(v for v in f.prefix if v <= f.bound)
    if not f.is_large:
        raise InvalidInput(f"gamma expects a large map, got {f}")
    return Monomial.from_factors(f.prefix)


def gamma_inv(u: Monomial) -> IsotoneMap:
    return IsotoneMap(u.factors, INF)


def lambda_(f: IsotoneMap) -> Monomial:
    """``prod x_i^{f(i) - f(i-1)}`` with ``f(0) = 1``.

    For a box map on ``[m]`` the product runs over ``i = 1..m``.
    """
    if f.is_interval:
        prev, acc = 1, {}
        for i, v in enumerate(f.prefix, start=1):
            acc[i] = v - prev
            prev = v
        return Monomial(acc)
    if not f.is_small:
        raise InvalidInput(f"lambda expects a small map, got {f}")
    prev, acc = 1, {}
    for i in range(1, len(f.prefix) + 2):
        v = f(i)
        acc[i] = v - prev
        prev = v
    return Monomial(acc)


def lambda_inv(u: Monomial, box: Optional[Tuple[int, int]] = None) -> IsotoneMap:
    """Small map (or box map on ``[m]`` with bound ``n``) whose Lambda is ``u``."""
    vals, run = [], 1
    top = u.max_var
    if box is not None:
        m, n = box
        if top > m or u.degree > n:
            raise InvalidInput(f"{u} does not fit the box (m={m}, n={n})")
        top = m
    for i in range(1, top + 1):
        run += u.exponent(i)
        vals.append(run)
    if box is not None:
        return IsotoneMap(tuple(vals), None, box[0], box[1])
    return IsotoneMap(tuple(vals), 1 + u.degree)


# -- strongly stable order ---------------------------------------------

def st_geq(u: Monomial, v: Monomial) -> bool:
    """``u >=_st v``: u's factor list is longer and coordinatewise smaller on v's length."""
    a, b = u.factors, v.factors
    if len(a) < len(b):
        return False
    return all(x <= y for x, y in zip(a, b))


def _bounded_sequences(bounds: Sequence[int], start: int = 1) -> Iterator[tuple]:
    if not bounds:
        yield ()
        return
    for c in range(start, bounds[0] + 1):
        for rest in _bounded_sequences(bounds[1:], c):
            yield (c,) + rest


def st_dominators(g: Monomial, degree: Optional[int] = None,
                  var_bound: Optional[int] = None,
                  max_candidates: int = DEFAULT_MAX_CANDIDATES) -> list:
    """All monomials of ``deg g`` that are ``>=_st g``, i.e. the degree slice of ``<g>``."""
    d = g.degree if degree is None else degree
    if d != g.degree:
        raise InvalidInput("st_dominators enumerates the slice of the generator's own degree")
    bounds = g.factors
    if var_bound is not None:
        bounds = tuple(min(b, var_bound) for b in bounds)
    top = bounds[-1] if bounds else 1
    if comb(top + d - 1, d) > max_candidates:
        raise GuardExceeded(f"dominators of {g} exceed {max_candidates} candidates")
    return [Monomial.from_factors(seq) for seq in _bounded_sequences(bounds)]


def monomials_of_degree(d: int, m: int) -> Iterator[Monomial]:
    """All monomials of degree d in x_1..x_m, in lexicographic order of factors."""
    for seq in combinations_with_replacement(range(1, m + 1), d):
        yield Monomial.from_factors(seq)


# -- Delta_{m+1}(n) degrees ---------------------------------------------

def delta_set(m: int, n: int) -> list:
    """``Delta_{m+1}(n)``: all (m+1)-tuples of non-negative integers summing to n."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for v in range(left, -1, -1):
            rec(prefix + (v,), left - v, slots - 1)

    rec((), n, m + 1)
    return out


def check_delta(d: Sequence[int], m: int, n: int) -> tuple:
    d = tuple(d)
    if len(d) != m + 1 or any(v < 0 for v in d) or sum(d) != n:
        raise InvalidInput(f"{d} is not in Delta_{m + 1}({n})")
    return d


def degree_of(u: Monomial, m: int, n: int) -> tuple:
    """Padded degree of ``u`` in ``Delta_{m+1}(n)``."""
    if u.max_var > m or u.degree > n:
        raise InvalidInput(f"{u} is outside the box (m={m}, n={n})")
    return u.exponents(m) + (n - u.degree,)


def monomial_of(d: Sequence[int]) -> Monomial:
    """Drop the padding coordinate of a ``Delta`` degree."""
    return Monomial.from_exponents(tuple(d)[:-1])


def degree_map(d: Sequence[int], m: int, n: int) -> tuple:
    """The bijection ``Delta_{m+1}(n) -> Delta_{n+1}(m)``.

    Partial sums plus one give ``g`` in ``Hom([m], [n+1])``; counting the
    values of ``g`` gives the image.
    """
    d = check_delta(d, m, n)
    run, counts = 1, [0] * (n + 1)
    for i in range(m):
        run += d[i]
        counts[run - 1] += 1
    return tuple(counts)


def st_geq_degree(d: Sequence[int], e: Sequence[int]) -> bool:
    """Partial-sum dominance ``d >=_st e`` on degree vectors of equal length."""
    sd = se = 0
    for a, b in zip(d, e):
        sd += a
        se += b
        if sd < se:
            return False
    return True
