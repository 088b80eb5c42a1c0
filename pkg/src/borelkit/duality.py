"""Duality of finitely generated strongly stable ideals.

Two independent routes are provided.  :func:`dual` works on the isotone-map
side: the complement of the ideal's poset ideal is a filter of small maps,
generated by pointwise joins of elementary maps, and Lambda turns its minimal
elements into the dual generators.  :func:`dual_via_intersection` instead
intersects the closed-form duals of the principal pieces.
"""
from __future__ import annotations

from typing import Sequence

from .errors import GuardExceeded, InvalidInput
from .ideal import SstIdeal, equals, intersect
from .isotone import DEFAULT_MAX_CANDIDATES, INF, IsotoneMap, dual as dual_map, join, leq
from .monomial import Monomial, gamma_inv, lambda_


def flip(alphabet: str) -> str:
    return "y" if alphabet == "x" else "x"


def elementary(p: int, v: int) -> IsotoneMap:
    """The small map equal to 1 before position p and to v from p on."""
    return IsotoneMap((1,) * (p - 1), v)


def _minimal_maps(maps) -> list:
    pool = list(dict.fromkeys(maps))
    return [h for h in pool if not any(k != h and leq(k, h) for k in pool)]


def complement_filter(ideal: SstIdeal, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> list:
    """Minimal small maps h with ``h`` not below any generator map of the ideal.

    The filter is an intersection over generators of unions of principal
    filters; it is built one generator at a time, keeping an antichain.
    """
    current = [IsotoneMap((), 1)]
    for g in ideal.gens:
        f = gamma_inv(g).prefix
        if len(current) * max(len(f), 1) > max_candidates:
            raise GuardExceeded(f"filter join step exceeds {max_candidates} candidates")
        pieces = [elementary(p, v + 1) for p, v in enumerate(f, start=1)]
        current = _minimal_maps(join(h, e) for h in current for e in pieces)
        if not current:
            break
    return sorted(current, key=lambda h: lambda_(h).sort_key())


def dual(ideal: SstIdeal, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> SstIdeal:
    """The dual strongly stable ideal (alphabet flipped)."""
    mins = complement_filter(ideal, max_candidates)
    return SstIdeal((lambda_(h) for h in mins), flip(ideal.alphabet))


def dual_principal(values: Sequence[int], alphabet: str = "x") -> SstIdeal:
    """Closed form for the dual of a principal ideal: ``<x_1^{a_1}, ..., x_n^{a_n}>``."""
    vals = tuple(values)
    if not vals:
        raise InvalidInput("dual_principal needs a nonempty sequence")
    if any(v < 1 for v in vals) or any(a > b for a, b in zip(vals, vals[1:])):
        raise InvalidInput(f"sequence must be positive and weakly increasing: {vals}")
    return SstIdeal((Monomial({i: a}) for i, a in enumerate(vals, start=1)), alphabet)


def dual_via_intersection(ideal: SstIdeal) -> SstIdeal:
    """Intersect the principal duals of the generators."""
    alpha = flip(ideal.alphabet)
    if not ideal.gens:
        return SstIdeal([Monomial()], alpha)
    out = None
    for g in ideal.gens:
        if g.is_unit():
            piece = SstIdeal([], alpha)
        else:
            piece = dual_principal(g.factors, alpha)
        out = piece if out is None else intersect(out, piece)
    return out


def dual_member(h: IsotoneMap, ideal: SstIdeal) -> bool:
    """Is ``Lambda(h)`` in the dual of the ideal?  Decided without computing the dual.

    With ``g = D(h)``, every generator map ``f`` needs a witness position p
    where ``f(p)`` is finite and ``g(f(p)) <= p``.
    """
    if not h.is_small:
        raise InvalidInput(f"dual_member expects a small map, got {h}")
    g = dual_map(h)
    for gen in ideal.gens:
        f = gamma_inv(gen).prefix
        if not any(g(v) is not INF and g(v) <= p for p, v in enumerate(f, start=1)):
            return False
    return True


def verify_double_dual(ideal: SstIdeal) -> bool:
    back = dual(dual(ideal))
    return equals(back, ideal) and back.alphabet == ideal.alphabet
