"""Finitely generated strongly stable ideals."""
from __future__ import annotations

import json
from math import comb
from typing import Iterable, Optional

from .errors import DomainMismatch, GuardExceeded, InvalidInput, ParseError
from .isotone import DEFAULT_MAX_CANDIDATES
from .monomial import (Monomial, alphabet_of, monomials_of_degree, parse_monomial,
                       st_dominators, st_geq)


def _antichain(monomials: Iterable[Monomial]) -> tuple:
    pool = sorted(set(monomials))
    keep = [u for u in pool if not any(v != u and st_geq(u, v) for v in pool)]
    return tuple(keep)


class SstIdeal:
    """A strongly stable ideal given by its antichain of sst generators.

    ``SstIdeal([])`` is the zero ideal and ``SstIdeal([ONE])`` the unit ideal.
    The constructor minimalizes, so any generating set is accepted.
    """

    __slots__ = ("gens", "alphabet", "_mingens")

    def __init__(self, gens: Iterable[Monomial] = (), alphabet: str = "x"):
        if alphabet not in ("x", "y"):
            raise InvalidInput(f"alphabet must be 'x' or 'y', got {alphabet!r}")
        self.gens = _antichain(gens)
        self.alphabet = alphabet
        self._mingens = None

    @classmethod
    def parse(cls, items, alphabet: Optional[str] = None) -> "SstIdeal":
        """Build from monomial strings, e.g. ``["x1^2*x2", "x1*x3"]`` or ``"x1^2, x1*x3"``."""
        if isinstance(items, str):
            items = [t for t in items.replace(";", ",").split(",") if t.strip()]
        items = list(items)
        letters = {alphabet_of(t) for t in items} - {None}
        if len(letters) > 1:
            raise ParseError("generators mix the x and y alphabets")
        alpha = alphabet or (letters.pop() if letters else "x")
        return cls((parse_monomial(t) for t in items), alpha)

    # -- views ----------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and self.gens[0].is_unit()

    @property
    def maxvar(self) -> int:
        return max((g.max_var for g in self.gens), default=0)

    @property
    def maxdeg(self) -> int:
        return max((g.degree for g in self.gens), default=0)

    def with_alphabet(self, alphabet: str) -> "SstIdeal":
        return SstIdeal(self.gens, alphabet)

    def __contains__(self, u: Monomial) -> bool:
        return member(u, self)

    def __eq__(self, other):
        return isinstance(other, SstIdeal) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def gen_strings(self) -> list:
        return [g.to_str(self.alphabet) for g in self.gens]

    def __str__(self):
        return "<" + ", ".join(self.gen_strings()) + ">"

    def __repr__(self):
        return f"SstIdeal({self})"

    # -- JSON -----------------------------------------------------------
    def to_dict(self) -> dict:
        return {"alphabet": self.alphabet, "gens": self.gen_strings()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data) -> "SstIdeal":
        if not isinstance(data, dict) or "gens" not in data:
            raise ParseError("ideal JSON needs a 'gens' list")
        return cls.parse(data["gens"], data.get("alphabet"))

    @classmethod
    def from_json(cls, text: str) -> "SstIdeal":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad ideal JSON: {exc}") from None
        return cls.from_dict(data)


def sst_minimalize(monomials: Iterable[Monomial], alphabet: str = "x") -> SstIdeal:
    return SstIdeal(monomials, alphabet)


def member(u: Monomial, ideal: SstIdeal) -> bool:
    return any(st_geq(u, g) for g in ideal.gens)


def monomial_min_gens(ideal: SstIdeal, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> tuple:
    """Minimal monomial generators, sorted by degree then factors.

    Each divisibility-minimal generator of degree d lies in the degree-d slice
    of some sst generator of degree d, so the dominator slices suffice.
    """
    if ideal._mingens is None:
        pool = set()
        for g in ideal.gens:
            pool.update(st_dominators(g, max_candidates=max_candidates))
            if len(pool) > max_candidates:
                raise GuardExceeded("monomial generator enumeration exceeds the guard")
        ordered = sorted(pool)
        keep = [u for u in ordered if not any(v != u and v.divides(u) for v in ordered)]
        ideal._mingens = tuple(keep)
    return ideal._mingens


def _same_alphabet(i: SstIdeal, j: SstIdeal) -> str:
    if i.alphabet != j.alphabet:
        raise DomainMismatch(f"alphabet mismatch: {i.alphabet} vs {j.alphabet}")
    return i.alphabet


def ideal_sum(i: SstIdeal, j: SstIdeal) -> SstIdeal:
    return SstIdeal(i.gens + j.gens, _same_alphabet(i, j))


def intersect(i: SstIdeal, j: SstIdeal) -> SstIdeal:
    """Intersection through pairwise lcms of minimal monomial generators."""
    alpha = _same_alphabet(i, j)
    lcms = {u.lcm(v) for u in monomial_min_gens(i) for v in monomial_min_gens(j)}
    return SstIdeal(lcms, alpha)


def equals(i: SstIdeal, j: SstIdeal) -> bool:
    """Mutual generator membership (alphabets are cosmetic here)."""
    return all(member(g, j) for g in i.gens) and all(member(g, i) for g in j.gens)


def hilbert_function(ideal: SstIdeal, max_degree: int, var_bound: int,
                     max_candidates: int = DEFAULT_MAX_CANDIDATES) -> tuple:
    """Number of degree-d monomials in x_1..x_m lying in the ideal, for d = 0..D."""
    if max_degree < 0 or var_bound < 1:
        raise InvalidInput("need max_degree >= 0 and var_bound >= 1")
    total = comb(var_bound + max_degree, max_degree)
    if total > max_candidates:
        raise GuardExceeded(f"{total} monomials exceed the guard {max_candidates}")
    return tuple(sum(1 for u in monomials_of_degree(d, var_bound) if member(u, ideal))
                 for d in range(max_degree + 1))


def random_sst_ideal(rng, max_gens: int = 4, max_deg: int = 5, max_var: int = 5,
                     alphabet: str = "x") -> SstIdeal:
    """A random nonzero sst ideal; generators have degree >= 1."""
    k = rng.randint(1, max_gens)
    gens = []
    for _ in range(k):
        d = rng.randint(1, max_deg)
        gens.append(Monomial.from_factors(sorted(rng.randint(1, max_var) for _ in range(d))))
    return SstIdeal(gens, alphabet)
