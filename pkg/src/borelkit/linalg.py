"""Exact dense linear algebra over a prime field or the rationals.

Matrices are lists of rows.  Entries are ints reduced mod p in prime mode and
``Fraction`` in rational mode.  Nothing here ever touches floating point.
"""
from __future__ import annotations

import os
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import GuardExceeded, InvalidInput

DEFAULT_PRIME = 32003
PRIME_ENV = "BORELKIT_PRIME"
MAX_COLUMNS = 2000

Matrix = List[list]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """A coefficient field: ``Field(p)`` for GF(p), ``Field(None)`` for Q."""

    __slots__ = ("p",)

    def __init__(self, p: Optional[int] = DEFAULT_PRIME):
        if p is not None and not _is_prime(p):
            raise InvalidInput(f"{p} is not prime")
        self.p = p

    @classmethod
    def default(cls) -> "Field":
        raw = os.environ.get(PRIME_ENV)
        return cls(int(raw)) if raw else cls(DEFAULT_PRIME)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """``prime:32003``, ``prime`` or ``rational``."""
        text = text.strip().lower()
        if text in ("rational", "q", "qq"):
            return cls(None)
        if text == "prime":
            return cls.default()
        if text.startswith("prime:"):
            try:
                return cls(int(text.split(":", 1)[1]))
            except ValueError:
                raise InvalidInput(f"bad field {text!r}") from None
        raise InvalidInput(f"field must be prime:<p> or rational, got {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __call__(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(self.p)

    def __str__(self):
        return "rational" if self.p is None else f"prime:{self.p}"

    __repr__ = __str__


def _shape(a: Sequence[Sequence]) -> tuple:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(r) != cols for r in a):
        raise InvalidInput("ragged matrix")
    return rows, cols


def convert(a: Sequence[Sequence], field: Field) -> Matrix:
    return [[field(x) for x in row] for row in a]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, field: Field, inner: Optional[int] = None) -> Matrix:
    """Product of an r x k and a k x c matrix.

    ``inner`` gives k explicitly, which matters when a has no rows or b has
    no columns and the shapes cannot be read off the lists.
    """
    rows = len(a)
    k = inner if inner is not None else (len(a[0]) if a else len(b))
    if len(b) != k or any(len(r) != k for r in a):
        raise InvalidInput("shape mismatch in matmul")
    cols = len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(cols):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return [[field(x) for x in row] for row in out]


def transpose(a: Matrix, cols: Optional[int] = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*a)]


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def rref(a: Sequence[Sequence], field: Field) -> tuple:
    """Reduced row echelon form and pivot columns."""
    rows, cols = _shape(a)
    if cols > MAX_COLUMNS:
        raise GuardExceeded(f"{cols} columns exceed the elimination guard {MAX_COLUMNS}")
    m = convert(a, field)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field(x * inv) for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field(x - f * y) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def rank(a: Sequence[Sequence], field: Field) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a, field)[1])


def kernel_basis(a: Sequence[Sequence], field: Field, cols: Optional[int] = None) -> Matrix:
    """Basis of the right kernel, returned as a list of vectors (length = cols)."""
    if not a:
        n = cols if cols is not None else 0
        return [[field(1) if i == j else field(0) for i in range(n)] for j in range(n)]
    n = len(a[0])
    red, pivots = rref(a, field)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [field(0)] * n
        v[fc] = field(1)
        for r, pc in enumerate(pivots):
            v[pc] = field(-red[r][fc])
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence, field: Field) -> Optional[list]:
    """A solution x of ``a x = b``, or None when the system is inconsistent."""
    rows = len(a)
    if len(b) != rows:
        raise InvalidInput("right-hand side length does not match the row count")
    if rows == 0:
        return []
    n = len(a[0])
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    red, pivots = rref(aug, field)
    if n in pivots:
        return None
    x = [field(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return x


def row_space_basis(vectors: Sequence[Sequence], field: Field) -> Matrix:
    """A reduced basis of the span of the given vectors."""
    if not vectors:
        return []
    red, pivots = rref(vectors, field)
    return red[:len(pivots)]


def complement_basis(subspace: Sequence[Sequence], dim: int, field: Field) -> list:
    """Indices of standard basis vectors completing ``subspace`` to the whole space."""
    if not subspace:
        return list(range(dim))
    _, pivots = rref(subspace, field)
    return [c for c in range(dim) if c not in pivots]
