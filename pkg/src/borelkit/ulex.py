"""Universal lex-segment ideals from a sequence of values a_1 <= ... <= a_m (a_0 = 1)."""
from __future__ import annotations

from typing import Optional, Sequence

from .errors import InvalidInput
from .ideal import SstIdeal, equals
from .monomial import Monomial


def _check(values: Sequence[int], truncate: Optional[int]) -> tuple:
    vals = tuple(values)
    if not vals:
        raise InvalidInput("need at least one value")
    if vals[0] < 1 or any(a > b for a, b in zip(vals, vals[1:])):
        raise InvalidInput(f"values must be positive and weakly increasing: {vals}")
    if truncate is not None and not 1 <= truncate <= len(vals):
        raise InvalidInput(f"truncation depth {truncate} outside 1..{len(vals)}")
    return vals


def ulex_gamma(values: Sequence[int], truncate: Optional[int] = None,
               alphabet: str = "x") -> SstIdeal:
    """Generators ``x_{a_1}...x_{a_{r-1}} x_{a_r - 1}`` wherever ``a_{r-1} < a_r``.

    Without ``truncate`` the terminal generator ``x_{a_1}...x_{a_m}`` is added;
    with it, only indices r <= truncate are used (a prefix of an infinite family).
    """
    vals = _check(values, truncate)
    top = len(vals) if truncate is None else truncate
    padded = (1,) + vals
    gens = []
    for r in range(1, top + 1):
        if padded[r - 1] < padded[r]:
            gens.append(Monomial.from_factors(vals[:r - 1] + (vals[r - 1] - 1,)))
    if truncate is None:
        gens.append(Monomial.from_factors(vals))
    return SstIdeal(gens, alphabet)


def ulex_lambda(values: Sequence[int], truncate: Optional[int] = None,
                alphabet: str = "x") -> SstIdeal:
    """Generators ``x_1^{a_1-a_0} ... x_r^{a_r - a_{r-1} + 1}`` for r up to m (or the truncation)."""
    vals = _check(values, truncate)
    top = len(vals) if truncate is None else truncate
    padded = (1,) + vals
    gens = []
    for r in range(1, top + 1):
        exps = {i: padded[i] - padded[i - 1] for i in range(1, r)}
        exps[r] = padded[r] - padded[r - 1] + 1
        gens.append(Monomial(exps))
    return SstIdeal(gens, alphabet)


def verify_ulex_duality(values: Sequence[int]) -> bool:
    from .duality import dual
    return equals(dual(ulex_gamma(values)), ulex_lambda(values))
