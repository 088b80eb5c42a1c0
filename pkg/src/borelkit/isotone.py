"""Isotone maps N -> N u {inf} with finite encodings.

A map on all of N is stored as a finite ``prefix`` followed by a constant
``tail``: an integer tail encodes a *small* map (bounded values), an ``INF``
tail a *large* map (eventually infinite).  Unbounded finite-valued maps have
no encoding.

Maps on a finite interval ``[m]`` with values in ``[n+1]`` (the poset
``Hom([m], [n+1])``, where ``n+1`` plays the role of infinity) carry
``length=m`` and ``bound=n``.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb
from typing import Iterator, Optional, Sequence, Union

from .errors import DomainMismatch, GuardExceeded, InvalidInput, ParseError, UnrepresentableClass

DEFAULT_MAX_CANDIDATES = 10**6


@functools.total_ordering
class _Infinity:
    """The top element of N-hat.  Compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("borelkit.INF")

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ExtNat = Union[int, _Infinity]


def _check_value(v) -> ExtNat:
    if v is INF:
        return v
    if isinstance(v, bool) or not isinstance(v, int):
        raise InvalidInput(f"isotone values must be positive integers or INF, got {v!r}")
    if v < 1:
        raise InvalidInput(f"isotone values must be >= 1, got {v}")
    return v


@dataclass(frozen=True)
class IsotoneMap:
    prefix: tuple
    tail: ExtNat = INF
    length: Optional[int] = None
    bound: Optional[int] = None

    def __post_init__(self):
        prefix = tuple(_check_value(v) for v in self.prefix)
        for a, b in zip(prefix, prefix[1:]):
            if a > b:
                raise InvalidInput(f"values are not weakly increasing: {prefix}")
        if self.length is not None:
            if self.bound is None:
                raise InvalidInput("interval maps need a codomain bound n")
            if len(prefix) != self.length:
                raise InvalidInput(f"interval map on [{self.length}] needs {self.length} values")
            if prefix and prefix[-1] > self.bound + 1:
                raise InvalidInput(f"values exceed n+1 = {self.bound + 1}")
            object.__setattr__(self, "prefix", prefix)
            object.__setattr__(self, "tail", None)
            return
        tail = _check_value(self.tail)
        if prefix and prefix[-1] > tail:
            raise InvalidInput("prefix exceeds the tail value")
        while prefix and prefix[-1] == tail:
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "tail", tail)

    # -- basic views ---------------------------------------------------
    @property
    def is_interval(self) -> bool:
        return self.length is not None

    @property
    def is_small(self) -> bool:
        return not self.is_interval and self.tail is not INF

    @property
    def is_large(self) -> bool:
        return not self.is_interval and self.tail is INF

    def __call__(self, i: int) -> ExtNat:
        if i < 1:
            raise InvalidInput("isotone maps are defined on positive integers")
        if self.is_interval:
            if i > self.length:
                raise InvalidInput(f"{i} outside the domain [{self.length}]")
            return self.prefix[i - 1]
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.tail

    def values(self, upto: int) -> tuple:
        return tuple(self(i) for i in range(1, upto + 1))

    def finite_values(self) -> tuple:
        """Finite values of a large map (the factor list of its monomial)."""
        if not self.is_large:
            raise InvalidInput("finite_values is defined for large maps")
        return self.prefix

    def __str__(self):
        if self.is_interval:
            return "(" + ",".join(str(v) for v in self.prefix) + f";n={self.bound})"
        return "[" + ",".join(str(v) for v in self.prefix) + "|" + str(self.tail) + "]"

    def __repr__(self):
        return f"IsotoneMap({self})"


def large(values: Sequence[int]) -> IsotoneMap:
    return IsotoneMap(tuple(values), INF)


def small(values: Sequence[int], tail: int) -> IsotoneMap:
    return IsotoneMap(tuple(values), tail)


def box_map(values: Sequence[int], n: int) -> IsotoneMap:
    return IsotoneMap(tuple(values), None, len(values), n)


_TEXT = re.compile(r"^\s*\[\s*([0-9,\s]*?)\s*\|\s*(inf|\d+|unbounded)\s*\]\s*$")


def parse_isotone(text: str) -> IsotoneMap:
    """Parse ``[v1,...|inf]`` or ``[v1,...|c]``."""
    m = _TEXT.match(text)
    if not m:
        raise ParseError(f"cannot parse isotone map {text!r}; expected e.g. [2,2,4|inf]")
    body, tail = m.group(1), m.group(2)
    if tail == "unbounded":
        raise UnrepresentableClass("unbounded finite-valued maps have no finite encoding")
    try:
        vals = tuple(int(v) for v in body.split(",") if v.strip())
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    try:
        return IsotoneMap(vals, INF if tail == "inf" else int(tail))
    except InvalidInput as exc:
        raise ParseError(str(exc)) from None


def _common(f: IsotoneMap, g: IsotoneMap) -> int:
    """Number of positions that decide any pointwise comparison of f and g."""
    if f.is_interval or g.is_interval:
        if (f.length, f.bound) != (g.length, g.bound):
            raise DomainMismatch(f"maps on different boxes: {f} and {g}")
        return f.length
    return max(len(f.prefix), len(g.prefix)) + 1


def dual(f: IsotoneMap) -> IsotoneMap:
    """The order-reversing involution ``Df(j) = min{i : f(i) > j}``."""
    if f.is_interval:
        m, n = f.length, f.bound
        vals = []
        for j in range(1, n + 1):
            vals.append(next((i for i in range(1, m + 1) if f.prefix[i - 1] > j), m + 1))
        return IsotoneMap(tuple(vals), None, n, m)
    if f.is_large:
        k = len(f.prefix)
        top = f.prefix[-1] if f.prefix else 1
        vals = [next(i for i in range(1, k + 1) if f.prefix[i - 1] > j) for j in range(1, top)]
        return IsotoneMap(tuple(vals), k + 1)
    c = f.tail
    vals = [next(i for i in range(1, len(f.prefix) + 2) if f(i) > j) for j in range(1, c)]
    return IsotoneMap(tuple(vals), INF)


def leq(f: IsotoneMap, g: IsotoneMap) -> bool:
    n = _common(f, g)
    return all(f(i) <= g(i) for i in range(1, n + 1))


def lex_cmp(f: IsotoneMap, g: IsotoneMap) -> int:
    """-1, 0 or 1 according to the lexicographic order on values."""
    n = _common(f, g)
    for i in range(1, n + 1):
        a, b = f(i), g(i)
        if a != b:
            return 1 if a > b else -1
    return 0


def meet(f: IsotoneMap, g: IsotoneMap) -> IsotoneMap:
    """Pointwise minimum."""
    n = _common(f, g)
    if f.is_interval:
        return IsotoneMap(tuple(min(f(i), g(i)) for i in range(1, n + 1)), None, f.length, f.bound)
    return IsotoneMap(tuple(min(f(i), g(i)) for i in range(1, n)), min(f.tail, g.tail))


def join(f: IsotoneMap, g: IsotoneMap) -> IsotoneMap:
    """Pointwise maximum."""
    n = _common(f, g)
    if f.is_interval:
        return IsotoneMap(tuple(max(f(i), g(i)) for i in range(1, n + 1)), None, f.length, f.bound)
    return IsotoneMap(tuple(max(f(i), g(i)) for i in range(1, n)), max(f.tail, g.tail))


def small_large_convert(values: Sequence[int], target: str) -> IsotoneMap:
    """``f_S`` or ``f^L`` of a partial map ``f: [m] -> N`` with ``f(m) = n``.

    ``f_S`` keeps ``f`` below ``m`` and is ``n+1`` from ``m`` on; ``f^L``
    keeps ``f`` on ``[m]`` and is infinite afterwards.
    """
    vals = tuple(values)
    if not vals:
        raise InvalidInput("a partial map needs at least one value")
    if any(v is INF for v in vals):
        raise InvalidInput("partial maps take finite values")
    target = target.lower()
    if target in ("small", "s"):
        return IsotoneMap(vals[:-1], vals[-1] + 1)
    if target in ("large", "l"):
        return IsotoneMap(vals, INF)
    raise InvalidInput(f"target must be 'small' or 'large', not {target!r}")


def enumerate_box(m: int, n: int, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> Iterator[IsotoneMap]:
    """All isotone maps ``[m] -> [n+1]``, in lexicographic order."""
    if m < 1 or n < 1:
        raise InvalidInput("box dimensions must be positive")
    if comb(m + n, m) > max_candidates:
        raise GuardExceeded(f"box ({m},{n}) has {comb(m + n, m)} maps > {max_candidates}")
    for vals in combinations_with_replacement(range(1, n + 2), m):
        yield IsotoneMap(vals, None, m, n)


def embed_box_map(f: IsotoneMap) -> IsotoneMap:
    """View a box map as a large map on N: the value n+1 and positions past m become INF."""
    if not f.is_interval:
        raise InvalidInput("embed_box_map expects a box map")
    top = f.bound + 1
    return IsotoneMap(tuple(v for v in f.prefix if v < top), INF)


def ne_encode(values: Sequence[int]) -> str:
    """North-East path from (1,1) to (m, f(m)) for a partial map f."""
    vals = tuple(values)
    if not vals or vals[0] < 1 or any(a > b for a, b in zip(vals, vals[1:])):
        raise InvalidInput(f"not a partial isotone map: {vals}")
    word = ["N" * (vals[0] - 1)]
    for a, b in zip(vals, vals[1:]):
        word.append("E" + "N" * (b - a))
    return "".join(word)


def ne_decode(word: str) -> tuple:
    """Inverse of :func:`ne_encode`: f(i) is the highest point of column i."""
    if set(word) - {"N", "E"}:
        raise ParseError(f"NE path words use only N and E: {word!r}")
    vals = [1]
    for step in word:
        if step == "N":
            vals[-1] += 1
        else:
            vals.append(vals[-1])
    return tuple(vals)
