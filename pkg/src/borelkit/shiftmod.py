"""Finite shift modules over Delta_{m+1}(n) and their expansions.

A module assigns a vector space to every degree d in ``Delta_{m+1}(n)`` and a
matrix to every shift ``s_p : d -> d + e_p - e_{p+1}`` (defined when
``d_{p+1} > 0``).  Matrices are lists of rows of shape dim(target) x dim(source);
entries live in the module's :class:`~borelkit.linalg.Field`.
"""
from __future__ import annotations

import json
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (InvalidInput, NonMinimalPresentation,
                     NotRearTorsionFree, ParseError)
from .ideal import SstIdeal, member, monomial_min_gens
from .linalg import (Field, complement_basis, identity, is_zero, kernel_basis, matmul,
                     rank, solve, transpose)
from .monomial import (Monomial, check_delta, degree_map, delta_set, monomial_of,
                       st_geq_degree)

Degree = Tuple[int, ...]


# -- degree combinatorics -------------------------------------------------

def shift_target(d: Sequence[int], p: int) -> Optional[Degree]:
    """``d + e_p - e_{p+1}`` (1-based p), or None when ``d_{p+1} = 0``."""
    if not 1 <= p < len(d) or d[p] == 0:
        return None
    e = list(d)
    e[p - 1] += 1
    e[p] -= 1
    return tuple(e)


def predecessors(e: Sequence[int]) -> List[Tuple[Degree, int]]:
    """Pairs ``(d, p)`` with ``s_p(d) = e``."""
    out = []
    for p in range(1, len(e)):
        if e[p - 1] > 0:
            d = list(e)
            d[p - 1] -= 1
            d[p] += 1
            out.append((tuple(d), p))
    return out


def canonical_path(d: Sequence[int], e: Sequence[int]) -> List[int]:
    """Shift indices taking d to e (applied left to right), or raise if e is not above d."""
    if not st_geq_degree(e, d) or sum(d) != sum(e):
        raise InvalidInput(f"{tuple(e)} is not reachable from {tuple(d)} by shifts")
    cur, path = list(d), []
    target_sums = [sum(e[:j + 1]) for j in range(len(e))]
    while True:
        sums = [sum(cur[:j + 1]) for j in range(len(cur))]
        short = [j for j in range(len(cur) - 1) if sums[j] < target_sums[j]]
        if not short:
            return path
        p = short[-1] + 1
        cur[p - 1] += 1
        cur[p] -= 1
        path.append(p)


def _zero_matrix(rows: int, cols: int) -> list:
    return [[0] * cols for _ in range(rows)]


def _apply(mat: list, v: Sequence, rows: int, field: Field) -> list:
    if rows == 0:
        return []
    return [field(sum(a * b for a, b in zip(row, v))) for row in mat]


def _reduce(v: Sequence, basis_rows: Sequence[Sequence], pivots: Sequence[int], field: Field) -> list:
    """Reduce v modulo a row space in reduced echelon form."""
    w = list(v)
    for row, c in zip(basis_rows, pivots):
        if w[c]:
            f = w[c]
            w = [field(x - f * y) for x, y in zip(w, row)]
    return w


class _Span:
    """Incrementally grown subspace of k^n, kept in reduced echelon form."""

    def __init__(self, dim: int, field: Field):
        self.dim, self.field = dim, field
        self.rows: list = []
        self.pivots: list = []

    def add(self, v: Sequence) -> bool:
        """Add v; return True when it enlarged the span."""
        w = _reduce(v, self.rows, self.pivots, self.field)
        c = next((i for i, x in enumerate(w) if x), None)
        if c is None:
            return False
        inv = self.field.inv(w[c])
        w = [self.field(x * inv) for x in w]
        for i, row in enumerate(self.rows):
            if row[c]:
                f = row[c]
                self.rows[i] = [self.field(x - f * y) for x, y in zip(row, w)]
        self.rows.append(w)
        self.pivots.append(c)
        return True

    def reduce(self, v: Sequence) -> list:
        return _reduce(v, self.rows, self.pivots, self.field)

    def __len__(self):
        return len(self.rows)


# -- the module type ------------------------------------------------------

class FiniteShiftModule:
    """A shift module over ``Delta_{m+1}(n)``.

    ``dims`` maps degrees to dimensions (absent means 0).  ``shifts`` maps
    ``(d, p)`` to the matrix of ``s_p`` at d; absent entries are zero maps.
    """

    def __init__(self, m: int, n: int, dims: Dict[Degree, int],
                 shifts: Optional[Dict[Tuple[Degree, int], list]] = None,
                 field: Optional[Field] = None):
        if m < 1 or n < 0:
            raise InvalidInput("need m >= 1 and n >= 0")
        self.m, self.n = m, n
        self.field = field or Field.default()
        self.dims = {}
        for d, k in dims.items():
            d = check_delta(d, m, n)
            if k < 0:
                raise InvalidInput(f"negative dimension at {d}")
            if k:
                self.dims[d] = k
        self.shifts = {}
        for (d, p), mat in (shifts or {}).items():
            d = tuple(d)
            t = shift_target(d, p)
            if t is None:
                raise InvalidInput(f"shift s_{p} is undefined at {d}")
            if self.dim(d) and self.dim(t) and not is_zero(mat):
                self.shifts[(d, p)] = [[self.field(x) for x in row] for row in mat]

    # -- access ---------------------------------------------------------
    def dim(self, d: Sequence[int]) -> int:
        return self.dims.get(tuple(d), 0)

    def degrees(self) -> list:
        return delta_set(self.m, self.n)

    def support(self) -> list:
        return [d for d in self.degrees() if self.dim(d)]

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def shift(self, d: Sequence[int], p: int) -> list:
        d = tuple(d)
        t = shift_target(d, p)
        if t is None:
            raise InvalidInput(f"s_{p} is not defined at {d}")
        mat = self.shifts.get((d, p))
        if mat is None:
            return _zero_matrix(self.dim(t), self.dim(d))
        return mat

    def apply_shift(self, d, p, v) -> list:
        t = shift_target(d, p)
        return _apply(self.shift(d, p), v, self.dim(t), self.field)

    def transport(self, d, e, v) -> list:
        """Image of v in V_d under the canonical chain of shifts to e."""
        cur = tuple(d)
        w = list(v)
        for p in canonical_path(d, e):
            w = self.apply_shift(cur, p, w)
            cur = shift_target(cur, p)
        return w

    def __eq__(self, other):
        return (isinstance(other, FiniteShiftModule) and (self.m, self.n) == (other.m, other.n)
                and self.dims == other.dims and self.shifts == other.shifts)

    def __repr__(self):
        return f"FiniteShiftModule(m={self.m}, n={self.n}, total_dim={self.total_dim})"

    # -- serialization --------------------------------------------------
    def to_dict(self) -> dict:
        def enc(x):
            return str(x) if self.field.is_rational else int(x)
        return {
            "m": self.m, "n": self.n, "field": str(self.field),
            "dims": [[list(d), k] for d, k in sorted(self.dims.items())],
            "shifts": [[list(d), p, [[enc(x) for x in row] for row in mat]]
                       for (d, p), mat in sorted(self.shifts.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteShiftModule":
        from fractions import Fraction
        try:
            field = Field.parse(data.get("field", "prime"))
            conv = Fraction if field.is_rational else int
            dims = {tuple(d): int(k) for d, k in data["dims"]}
            shifts = {(tuple(d), int(p)): [[conv(x) for x in row] for row in mat]
                      for d, p, mat in data.get("shifts", [])}
            return cls(int(data["m"]), int(data["n"]), dims, shifts, field)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise ParseError(f"bad module JSON: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "FiniteShiftModule":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad module JSON: {exc}") from None


def validate(v: FiniteShiftModule) -> dict:
    """Report shape errors and non-commuting squares ``s_p s_q != s_q s_p``."""
    violations = []
    for (d, p), mat in v.shifts.items():
        t = shift_target(d, p)
        if len(mat) != v.dim(t) or any(len(r) != v.dim(d) for r in mat):
            violations.append({"kind": "shape", "degree": list(d), "p": p})
    if violations:
        return {"valid": False, "violations": violations}
    for d in v.support():
        for p in range(1, v.m + 1):
            for q in range(p + 1, v.m + 1):
                if d[p] == 0 or d[q] == 0:
                    continue
                dp, dq = shift_target(d, p), shift_target(d, q)
                top = shift_target(dp, q)
                if not v.dim(top):
                    continue
                one = matmul(v.shift(dp, q), v.shift(d, p), v.field, inner=v.dim(dp))
                two = matmul(v.shift(dq, p), v.shift(d, q), v.field, inner=v.dim(dq))
                if one != two and not (is_zero(one) and is_zero(two)):
                    violations.append({"kind": "square", "degree": list(d), "p": p, "q": q})
    return {"valid": not violations, "violations": violations}


# -- constructors ---------------------------------------------------------

def projective_support(d: Sequence[int], m: int, n: int) -> list:
    d = check_delta(d, m, n)
    return [e for e in delta_set(m, n) if st_geq_degree(e, d)]


def projective(d: Sequence[int], m: int, n: int, field: Optional[Field] = None) -> FiniteShiftModule:
    """P(d): one-dimensional on the degrees reachable from d, identity shifts."""
    return projective_sum([tuple(d)], m, n, field)


def projective_sum(degrees: Sequence[Sequence[int]], m: int, n: int,
                   field: Optional[Field] = None) -> FiniteShiftModule:
    """Direct sum of P(d) over a list of degrees; the basis at e lists the summands present."""
    degrees = [check_delta(d, m, n) for d in degrees]
    dims, shifts = {}, {}
    present = {e: [i for i, d in enumerate(degrees) if st_geq_degree(e, d)] for e in delta_set(m, n)}
    for e, idx in present.items():
        dims[e] = len(idx)
    for e, idx in present.items():
        if not idx:
            continue
        for p in range(1, m + 1):
            t = shift_target(e, p)
            if t is None:
                continue
            tgt = present[t]
            shifts[(e, p)] = [[1 if tgt[r] == idx[c] else 0 for c in range(len(idx))]
                              for r in range(len(tgt))]
    return FiniteShiftModule(m, n, dims, shifts, field)


def _indicator_module(m: int, n: int, inside: Callable[[Degree], bool],
                      field: Optional[Field]) -> FiniteShiftModule:
    dims = {d: 1 if inside(d) else 0 for d in delta_set(m, n)}
    shifts = {}
    for d, k in dims.items():
        if not k:
            continue
        for p in range(1, m + 1):
            t = shift_target(d, p)
            if t is not None and dims[t]:
                shifts[(d, p)] = [[1]]
    return FiniteShiftModule(m, n, dims, shifts, field)


def _check_box(ideal: SstIdeal, m: int, n: int):
    if ideal.maxvar > m or ideal.maxdeg > n:
        raise InvalidInput(f"{ideal} does not fit the box m={m}, n={n}")


def from_sst_ideal(ideal: SstIdeal, m: int, n: int, field: Optional[Field] = None) -> FiniteShiftModule:
    """The ideal truncated to monomials of degree <= n in x_1..x_m."""
    _check_box(ideal, m, n)
    return _indicator_module(m, n, lambda d: member(monomial_of(d), ideal), field)


def quotient_module(ideal: SstIdeal, m: int, n: int, field: Optional[Field] = None) -> FiniteShiftModule:
    """S/I truncated the same way."""
    _check_box(ideal, m, n)
    return _indicator_module(m, n, lambda d: not member(monomial_of(d), ideal), field)


def direct_sum(*modules: FiniteShiftModule) -> FiniteShiftModule:
    first = modules[0]
    m, n, field = first.m, first.n, first.field
    dims, shifts = {}, {}
    for d in delta_set(m, n):
        dims[d] = sum(v.dim(d) for v in modules)
    for d in delta_set(m, n):
        for p in range(1, m + 1):
            t = shift_target(d, p)
            if t is None or not dims[d] or not dims[t]:
                continue
            mat = _zero_matrix(dims[t], dims[d])
            r0 = c0 = 0
            for v in modules:
                blk = v.shift(d, p)
                for i, row in enumerate(blk):
                    for j, x in enumerate(row):
                        mat[r0 + i][c0 + j] = x
                r0 += v.dim(t)
                c0 += v.dim(d)
            shifts[(d, p)] = mat
    return FiniteShiftModule(m, n, dims, shifts, field)


# -- morphisms, kernels, cokernels ----------------------------------------

class ModuleMap:
    """A degree-preserving map; ``mats[d]`` has shape dim target_d x dim source_d."""

    def __init__(self, source: FiniteShiftModule, target: FiniteShiftModule, mats: Dict[Degree, list]):
        if (source.m, source.n) != (target.m, target.n):
            raise InvalidInput("morphism between modules over different boxes")
        self.source, self.target = source, target
        self.mats = {tuple(d): mat for d, mat in mats.items()}

    def at(self, d) -> list:
        d = tuple(d)
        mat = self.mats.get(d)
        if mat is None:
            return _zero_matrix(self.target.dim(d), self.source.dim(d))
        return mat

    def is_morphism(self) -> bool:
        src, tgt, f = self.source, self.target, self.source.field
        for d in src.support():
            for p in range(1, src.m + 1):
                t = shift_target(d, p)
                if t is None:
                    continue
                one = matmul(self.at(t), src.shift(d, p), f, inner=src.dim(t))
                two = matmul(tgt.shift(d, p), self.at(d), f, inner=tgt.dim(d))
                # an empty factor drops the column count, so compare zero-ness too
                if one != two and not (is_zero(one) and is_zero(two)):
                    return False
        return True


def coefficient_map(source_degrees, target_degrees, coeffs, m: int, n: int,
                    field: Optional[Field] = None) -> ModuleMap:
    """Map between projective sums from a scalar matrix (rows: target summands).

    A nonzero entry needs the source degree to lie in the support of the
    target summand; then the component is that scalar times the inclusion.
    """
    field = field or Field.default()
    src = projective_sum(source_degrees, m, n, field)
    tgt = projective_sum(target_degrees, m, n, field)
    sdeg = [tuple(d) for d in source_degrees]
    tdeg = [tuple(d) for d in target_degrees]
    for i, row in enumerate(coeffs):
        for j, x in enumerate(row):
            if field(x) and not st_geq_degree(sdeg[j], tdeg[i]):
                raise InvalidInput(f"no map P{sdeg[j]} -> P{tdeg[i]}")
    mats = {}
    for e in delta_set(m, n):
        rows = [i for i, d in enumerate(tdeg) if st_geq_degree(e, d)]
        cols = [j for j, d in enumerate(sdeg) if st_geq_degree(e, d)]
        if rows and cols:
            mats[e] = [[field(coeffs[i][j]) for j in cols] for i in rows]
    return ModuleMap(src, tgt, mats)


def _coords(basis: Sequence[Sequence], w: Sequence, field: Field) -> list:
    """Coordinates of w in the given (column) basis."""
    if not basis:
        return []
    cols = transpose([list(b) for b in basis])
    x = solve(cols, list(w), field)
    if x is None:
        raise InvalidInput("vector outside the span")
    return x


def kernel(phi: ModuleMap) -> Tuple[FiniteShiftModule, ModuleMap]:
    src, field = phi.source, phi.source.field
    bases = {}
    for d in src.support():
        if phi.target.dim(d):
            bases[d] = kernel_basis(phi.at(d), field)
        else:
            bases[d] = [[field(1) if i == j else field(0) for i in range(src.dim(d))]
                        for j in range(src.dim(d))]
    dims = {d: len(b) for d, b in bases.items()}
    shifts = {}
    for d, b in bases.items():
        for p in range(1, src.m + 1):
            t = shift_target(d, p)
            if t is None or not b or not dims.get(t):
                continue
            cols = [_coords(bases[t], src.apply_shift(d, p, v), field) for v in b]
            shifts[(d, p)] = transpose(cols)
    k = FiniteShiftModule(src.m, src.n, dims, shifts, field)
    inc = {d: transpose(b) for d, b in bases.items() if b}
    return k, ModuleMap(k, src, inc)


def cokernel(phi: ModuleMap) -> Tuple[FiniteShiftModule, ModuleMap]:
    tgt, field = phi.target, phi.target.field
    spans, comps = {}, {}
    for d in tgt.support():
        span = _Span(tgt.dim(d), field)
        if phi.source.dim(d):
            for col in transpose(phi.at(d)):
                span.add(col)
        spans[d] = span
        used = set(span.pivots)
        comps[d] = [c for c in range(tgt.dim(d)) if c not in used]

    def project(d, v):
        w = spans[d].reduce(v)
        return [w[c] for c in comps[d]]

    dims = {d: len(c) for d, c in comps.items()}
    shifts = {}
    for d, comp in comps.items():
        for p in range(1, tgt.m + 1):
            t = shift_target(d, p)
            if t is None or not comp or not dims.get(t):
                continue
            cols = []
            for c in comp:
                unit = [field(0)] * tgt.dim(d)
                unit[c] = field(1)
                cols.append(project(t, tgt.apply_shift(d, p, unit)))
            shifts[(d, p)] = transpose(cols)
    q = FiniteShiftModule(tgt.m, tgt.n, dims, shifts, field)
    proj = {}
    for d, comp in comps.items():
        if comp:
            n = tgt.dim(d)
            cols = []
            for j in range(n):
                unit = [field(0)] * n
                unit[j] = field(1)
                cols.append(project(d, unit))
            proj[d] = transpose(cols)
    return q, ModuleMap(tgt, q, proj)


def random_presentation(rng, m: int, n: int, field: Optional[Field] = None,
                        max_targets: int = 3, max_sources: int = 3) -> ModuleMap:
    """A random map between small projective sums (coefficients in -3..3)."""
    field = field or Field.default()
    degs = delta_set(m, n)
    targets = [rng.choice(degs) for _ in range(rng.randint(1, max_targets))]
    sources = [rng.choice(degs) for _ in range(rng.randint(0, max_sources))]
    coeffs = []
    for a in targets:
        coeffs.append([rng.randint(-3, 3) if st_geq_degree(b, a) else 0 for b in sources])
    return coefficient_map(sources, targets, coeffs, m, n, field)


def random_module(rng, m: int, n: int, field: Optional[Field] = None) -> FiniteShiftModule:
    """The cokernel of a random presentation (always a valid module)."""
    return cokernel(random_presentation(rng, m, n, field))[0]


# -- duals ----------------------------------------------------------------

def dual_shift_index(d: Sequence[int], p: int) -> int:
    """Index k of the dual shift t_k corresponding to s_p at d: ``1 + d_1 + ... + d_p``."""
    return 1 + sum(d[:p])


def dual_module(v: FiniteShiftModule) -> FiniteShiftModule:
    """The dual over ``Delta_{n+1}(m)``: ``W_{dm(d)} = V_d^*`` with transposed shifts."""
    m, n = v.m, v.n
    dims = {degree_map(d, m, n): k for d, k in v.dims.items()}
    shifts = {}
    for d in v.support():
        for p in range(1, m + 1):
            t = shift_target(d, p)
            if t is None or not v.dim(t):
                continue
            src = degree_map(t, m, n)
            k = dual_shift_index(d, p)
            if shift_target(src, k) != degree_map(d, m, n):
                raise AssertionError("dual shift bookkeeping failed")
            shifts[(src, k)] = transpose(v.shift(d, p), v.dim(t))
    return FiniteShiftModule(n, m, dims, shifts, v.field)


def dual_morphism(phi: ModuleMap, source_dual: Optional[FiniteShiftModule] = None,
                  target_dual: Optional[FiniteShiftModule] = None) -> ModuleMap:
    """``phi^* : target^* -> source^*``."""
    m, n = phi.source.m, phi.source.n
    sd = source_dual or dual_module(phi.source)
    td = target_dual or dual_module(phi.target)
    mats = {}
    for d, mat in phi.mats.items():
        mats[degree_map(d, m, n)] = transpose(mat, phi.source.dim(d))
    return ModuleMap(td, sd, mats)


# -- generators ------------------------------------------------------------

def radical_span(v: FiniteShiftModule, e: Degree) -> _Span:
    span = _Span(v.dim(e), v.field)
    for d, p in predecessors(e):
        if v.dim(d):
            for col in transpose(v.shift(d, p), v.dim(e)):
                span.add(col)
    return span


def generator_vectors(v: FiniteShiftModule) -> List[Tuple[Degree, list]]:
    """A minimal generating set: at each degree, a complement of the radical."""
    out = []
    for e in v.support():
        span = radical_span(v, e)
        for c in complement_basis(span.rows, v.dim(e), v.field):
            unit = [v.field(0)] * v.dim(e)
            unit[c] = v.field(1)
            out.append((e, unit))
    return out


def generators(v: FiniteShiftModule) -> List[Degree]:
    """Generator degrees with multiplicity, sorted."""
    return sorted(d for d, _ in generator_vectors(v))


def radical_quotient(v: FiniteShiftModule) -> Dict[Degree, int]:
    out = {}
    for e in v.support():
        k = v.dim(e) - len(radical_span(v, e))
        if k:
            out[e] = k
    return out


def presentation_regularity(source_degrees, target_degrees, coeffs,
                            field: Optional[Field] = None) -> dict:
    """Regularities of image and cokernel of a minimal presentation by projectives.

    Degrees may be exponent vectors in N_0^m or Delta degrees; only their total
    degree over the first m coordinates matters.
    """
    field = field or Field.default()
    sdeg = [d if isinstance(d, Monomial) else tuple(d) for d in source_degrees]
    tdeg = [d if isinstance(d, Monomial) else tuple(d) for d in target_degrees]
    for i, row in enumerate(coeffs):
        for j, x in enumerate(row):
            if field(x) and sdeg[j] == tdeg[i]:
                raise NonMinimalPresentation(f"unit component between generators of degree {sdeg[j]}")
    if not tdeg:
        raise InvalidInput("presentation needs at least one target generator")
    a_hat = max(_total(d) for d in tdeg)
    if not sdeg:
        return {"image_reg": None, "coker_reg": a_hat, "expansion_degree": a_hat}
    b_hat = max(_total(d) for d in sdeg)
    return {"image_reg": b_hat, "coker_reg": max(a_hat, b_hat - 1),
            "expansion_degree": max(a_hat, b_hat)}


def _total(d) -> int:
    if isinstance(d, Monomial):
        return d.degree
    return sum(d)


# -- expansion to N_0^m ---------------------------------------------------

def break_degree(a: Sequence[int], n: int) -> Tuple[Degree, int]:
    """The Delta_{m+1}(n) degree whose space sits at a in the expansion, and the break."""
    a = tuple(a)
    if sum(a) < n:
        return a + (n - sum(a),), 0
    run = 0
    for r, x in enumerate(a, start=1):
        if run + x >= n:
            first = a[:r - 1] + (n - run,) + (0,) * (len(a) - r)
            return first + (0,), r
        run += x
    raise AssertionError("unreachable")


class GradedPieceTable:
    """An expanded module on all degrees of N_0^m with total degree <= bound."""

    def __init__(self, m: int, bound: int, dims: dict, shifts: dict, mults: dict, field: Field):
        self.m, self.bound, self.field = m, bound, field
        self.dims, self.shifts, self.mults = dims, shifts, mults

    def dim(self, a) -> int:
        return self.dims.get(tuple(a), 0)

    def degrees(self) -> list:
        return sorted(self.dims, key=lambda a: (sum(a), tuple(reversed(a))))

    def multiply(self, a: Sequence[int], exps: Sequence[int], v: Sequence) -> Tuple[Degree, list]:
        """x^exps * v for v in M_a."""
        cur, w = tuple(a), list(v)
        for i, e in enumerate(exps, start=1):
            for _ in range(e):
                nxt = cur[:i - 1] + (cur[i - 1] + 1,) + cur[i:]
                w = _apply(self.mults[(cur, i)], w, self.dim(nxt), self.field)
                cur = nxt
        return cur, w

    def shift_between(self, a: Sequence[int], i: int, b: int, v: Sequence) -> Tuple[Degree, list]:
        """``s_{i,b} = s_i o ... o s_{b-1}`` applied to v in M_a (rightmost first)."""
        cur, w = tuple(a), list(v)
        for p in range(b - 1, i - 1, -1):
            mat = self.shifts.get((cur, p))
            nxt = list(cur)
            nxt[p - 1] += 1
            nxt[p] -= 1
            nxt = tuple(nxt)
            if mat is None:
                if cur[p] == 0:
                    raise InvalidInput(f"s_{p} undefined at {cur}")
                w = [self.field(0)] * self.dim(nxt)
            else:
                w = _apply(mat, w, self.dim(nxt), self.field)
            cur = nxt
        return cur, w


def _degrees_upto(m: int, bound: int):
    for total in range(bound + 1):
        for d in delta_set(m - 1, total) if m > 1 else [(total,)]:
            yield tuple(d)


def expand(v: FiniteShiftModule, bound: int) -> GradedPieceTable:
    m, n, field = v.m, v.n, v.field
    if bound < 0:
        raise InvalidInput("bound must be >= 0")
    degs = list(_degrees_upto(m, bound))
    dims = {a: v.dim(break_degree(a, n)[0]) for a in degs}
    shifts = {}
    for a in degs:
        if not dims[a]:
            continue
        base, r = break_degree(a, n)
        for p in range(1, m + 1):
            if p < m and a[p] == 0:
                continue
            b = list(a)
            b[p - 1] += 1
            if p < m:
                b[p] -= 1
            b = tuple(b)
            if sum(b) > bound:
                continue
            if sum(a) < n or p < r:
                mat = v.shift(base, p)
            else:
                mat = identity(dims[a])
            shifts[(a, p)] = mat
    mults = {}
    for a in degs:
        for i in range(1, m + 1):
            if sum(a) + 1 > bound:
                continue
            cur = a
            mat = identity(dims[a])
            for p in range(m, i - 1, -1):
                nxt = list(cur)
                nxt[p - 1] += 1
                if p < m:
                    nxt[p] -= 1
                nxt = tuple(nxt)
                step = shifts.get((cur, p), _zero_matrix(dims.get(nxt, 0), dims[cur]))
                mat = matmul(step, mat, field, inner=dims[cur])
                cur = nxt
            mults[(a, i)] = mat
    return GradedPieceTable(m, bound, dims, shifts, mults, field)


def expand_morphism(phi: ModuleMap, bound: int) -> dict:
    return {a: phi.at(break_degree(a, phi.source.n)[0]) for a in _degrees_upto(phi.source.m, bound)}


def max_index(a: Sequence[int]) -> int:
    """Largest index with a nonzero entry (0 for the zero vector)."""
    return max((i for i, x in enumerate(a, start=1) if x), default=0)


def min_index(a: Sequence[int]) -> int:
    return min((i for i, x in enumerate(a, start=1) if x), default=0)


def rear_torsion_free_report(table: GradedPieceTable) -> dict:
    """Check that x_j is injective on M_a for j >= max(a), within the table."""
    failures = []
    for a in table.degrees():
        if not table.dim(a) or sum(a) + 1 > table.bound:
            continue
        for j in range(max(max_index(a), 1), table.m + 1):
            mat = table.mults[(a, j)]
            if not mat or rank(mat, table.field) < table.dim(a):
                failures.append({"degree": list(a), "variable": j})
    return {"rear_torsion_free": not failures, "failures": failures}


def table_generators(table: GradedPieceTable) -> List[Tuple[Degree, list]]:
    """Minimal S-module generators of the table (complements of sum_i x_i M_{a-e_i})."""
    out = []
    for a in table.degrees():
        k = table.dim(a)
        if not k:
            continue
        span = _Span(k, table.field)
        for i in range(1, table.m + 1):
            if a[i - 1] == 0:
                continue
            b = a[:i - 1] + (a[i - 1] - 1,) + a[i:]
            if table.dim(b):
                for col in transpose(table.mults[(b, i)], k):
                    span.add(col)
        for c in complement_basis(span.rows, k, table.field):
            unit = [table.field(0)] * k
            unit[c] = table.field(1)
            out.append((a, unit))
    return out


# -- normal forms ----------------------------------------------------------

class IdealNormalForm:
    """Normal forms in a strongly stable ideal: ``w = x^c * u`` with max(u) <= min(c)."""

    def __init__(self, ideal: SstIdeal, field: Optional[Field] = None):
        self.ideal = ideal
        self.field = field or Field.default()
        self.generators = sort_generators(monomial_min_gens(ideal))
        self.m = max((u.max_var for u in self.generators), default=1) or 1

    def degree(self, j: int) -> tuple:
        return self.generators[j].exponents(self.m)

    def decompose(self, w: Monomial) -> Tuple[Monomial, int]:
        for j, u in enumerate(self.generators):
            if u.divides(w):
                c = w / u
                if c.is_unit() or u.max_var <= c.min_var:
                    return c, j
        raise InvalidInput(f"{w} is not in {self.ideal}")

    def normal_form(self, multiplier: Monomial, j: int) -> list:
        """``x^a * u_j`` as a list of ``(coefficient, monomial, generator index)``."""
        c, k = self.decompose(multiplier * self.generators[j])
        return [(self.field(1), c, k)]

    def shift_normal_form(self, i: int, b: int, j: int) -> list:
        """Normal form of ``s_{i,b}(u_j) = u_j * x_i / x_b``."""
        w = self.generators[j] * Monomial({i: 1}) / Monomial({b: 1})
        c, k = self.decompose(w)
        return [(self.field(1), c, k)]

    def augmentation(self, multiplier: Monomial, j: int) -> list:
        return [self.field(1)]

    def target_dim(self, a: Sequence[int]) -> int:
        return 1 if member(Monomial.from_exponents(a), self.ideal) else 0


def sort_generators(gens: Iterable[Monomial]) -> list:
    """Total degree, then reverse-lex on exponents, then input order."""
    gens = list(gens)
    m = max((g.max_var for g in gens), default=0)
    return [g for _, g in sorted(enumerate(gens), key=lambda t: (
        t[1].degree, tuple(reversed(t[1].exponents(m))), t[0]))]


class TableNormalForm:
    """Normal forms in a rear torsion-free table, by solving linear systems.

    The admissible products ``x^a m_d`` with ``max(d) <= min(a)`` must form a
    basis of each graded piece; otherwise :class:`NotRearTorsionFree` is raised.
    """

    def __init__(self, table: GradedPieceTable, check: bool = True):
        self.table = table
        self.field = table.field
        self.m = table.m
        if check:
            rep = rear_torsion_free_report(table)
            if not rep["rear_torsion_free"]:
                raise NotRearTorsionFree(f"x_j fails to be injective: {rep['failures'][0]}")
        gens = table_generators(table)
        order = sorted(range(len(gens)), key=lambda k: (
            sum(gens[k][0]), tuple(reversed(gens[k][0])), k))
        self.gens = [gens[k] for k in order]
        self._bases = {}

    def degree(self, j: int) -> tuple:
        return self.gens[j][0]

    def _admissible(self, e: Degree) -> list:
        if e not in self._bases:
            terms, vecs = [], []
            for j, (d, v) in enumerate(self.gens):
                a = tuple(x - y for x, y in zip(e, d))
                if any(x < 0 for x in a):
                    continue
                if any(a) and max_index(d) > min_index(a):
                    continue
                terms.append((Monomial.from_exponents(a), j))
                vecs.append(self.table.multiply(d, a, v)[1])
            if len(vecs) != self.table.dim(e) or (vecs and rank(transpose(vecs), self.field) < len(vecs)):
                raise NotRearTorsionFree(f"admissible products do not form a basis at {e}")
            self._bases[e] = (terms, vecs)
        return self._bases[e]

    def express(self, e: Degree, w: Sequence) -> list:
        terms, vecs = self._admissible(tuple(e))
        if not terms:
            return []
        x = solve(transpose(vecs), list(w), self.field)
        return [(c, mono, j) for c, (mono, j) in zip(x, terms) if c]

    def normal_form(self, multiplier: Monomial, j: int) -> list:
        d, v = self.gens[j]
        e, w = self.table.multiply(d, multiplier.exponents(self.m), v)
        return self.express(e, w)

    def shift_normal_form(self, i: int, b: int, j: int) -> list:
        d, v = self.gens[j]
        e, w = self.table.shift_between(d, i, b, v)
        return self.express(e, w)

    def augmentation(self, multiplier: Monomial, j: int) -> list:
        d, v = self.gens[j]
        return self.table.multiply(d, multiplier.exponents(self.m), v)[1]

    def target_dim(self, a: Sequence[int]) -> int:
        return self.table.dim(a)


def _table_step(a: Degree, p: int, m: int) -> Optional[Degree]:
    """Target of s_p at a in N_0^m (s_m is always defined, since d_{m+1} is infinite)."""
    if p < m and a[p] == 0:
        return None
    b = list(a)
    b[p - 1] += 1
    if p < m:
        b[p] -= 1
    return tuple(b)


def validate_table(table: GradedPieceTable) -> dict:
    """Commutation of shifts and ``x_i = s_{i,m+1}`` on every square inside the bound."""
    m, f = table.m, table.field
    violations = []

    def step(a, p, w):
        b = _table_step(a, p, m)
        mat = table.shifts.get((a, p))
        if mat is None:
            return b, [f(0)] * table.dim(b)
        return b, _apply(mat, w, table.dim(b), f)

    for a in table.degrees():
        k = table.dim(a)
        if not k or sum(a) + 1 > table.bound:
            continue
        units = [[f(1) if i == j else f(0) for i in range(k)] for j in range(k)]
        for p in range(1, m + 1):
            for q in range(p + 1, m + 1):
                if _table_step(a, p, m) is None or _table_step(a, q, m) is None:
                    continue
                for u in units:
                    mid, w = step(a, p, u)
                    b1, w1 = step(mid, q, w)
                    mid, w = step(a, q, u)
                    b2, w2 = step(mid, p, w)
                    if b1 != b2 or w1 != w2:
                        violations.append({"kind": "square", "degree": list(a), "p": p, "q": q})
                        break
        for i in range(1, m + 1):
            for u in units:
                cur, w = a, u
                for p in range(m, i - 1, -1):
                    cur, w = step(cur, p, w)
                if w != _apply(table.mults[(a, i)], u, table.dim(cur), f):
                    violations.append({"kind": "multiplication", "degree": list(a), "i": i})
                    break
    return {"valid": not violations, "violations": violations}


def free_rank_one(d: Sequence[int], bound: int, field: Optional[Field] = None) -> GradedPieceTable:
    """The free module S u_d with the only shift maps it could carry.

    A shift can only act on the monomial multiplier, since S u_d is zero in
    degree ``d + e_p - e_{p+1}``.  The resulting table is validated and
    :class:`InvalidInput` is raised when it is not a shift module, which
    happens exactly when d involves a variable other than x_1.
    """
    field = field or Field.default()
    d = tuple(d)
    m = len(d)
    if bound < sum(d) + 2:
        raise InvalidInput("bound must exceed deg(d) + 1 to test the shift structure")
    degs = [a for a in _degrees_upto(m, bound) if all(x >= y for x, y in zip(a, d))]
    dims = {a: 1 for a in degs}
    shifts, mults = {}, {}
    for a in degs:
        mult = tuple(x - y for x, y in zip(a, d))
        for p in range(1, m + 1):
            b = _table_step(a, p, m)
            if b is None or b not in dims:
                continue
            if p == m or mult[p] > 0:
                shifts[(a, p)] = [[1]]
        for i in range(1, m + 1):
            b = a[:i - 1] + (a[i - 1] + 1,) + a[i:]
            if b in dims:
                mults[(a, i)] = [[1]]
    table = GradedPieceTable(m, bound, dims, shifts, mults, field)
    report = validate_table(table)
    if not report["valid"]:
        raise InvalidInput(f"S u_{d} is not a shift module: {report['violations'][0]}")
    return table
