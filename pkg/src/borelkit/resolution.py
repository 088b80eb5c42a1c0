"""Resolutions: Koszul-type and minimal projective shift resolutions, and the
generalized Eliahou-Kervaire free resolution, with exactness certificates."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import GuardExceeded, InvalidInput
from .ideal import SstIdeal, monomial_min_gens
from .isotone import INF, meet
from .linalg import Field, kernel_basis, matmul, rank
from .monomial import Monomial, degree_of, delta_set, gamma, gamma_inv, monomial_of, st_geq_degree
from .shiftmod import (FiniteShiftModule, GradedPieceTable, IdealNormalForm, TableNormalForm,
                       _Span, _degrees_upto, expand, from_sst_ideal, generator_vectors,
                       max_index, predecessors, quotient_module)

MAX_TOTAL_DIM = 200000


# -- shift complexes ------------------------------------------------------

class ShiftComplex:
    """A complex of projective shift modules over ``Delta_{m+1}(n)``.

    ``terms[p]`` lists the degrees of the summands ``P(d)`` of F_p and
    ``diffs[p-1]`` is the scalar matrix of ``F_p -> F_{p-1}`` (rows index
    the summands of F_{p-1}).  ``augmentation`` gives ``F_0 -> target`` degreewise.
    """

    def __init__(self, m: int, n: int, terms, diffs, target: FiniteShiftModule,
                 augmentation: Dict[tuple, list], field: Field, kind: str = "shift"):
        self.m, self.n, self.field, self.kind = m, n, field, kind
        self.terms = [list(map(tuple, t)) for t in terms]
        self.diffs = diffs
        self.target = target
        self._augmentation = augmentation
        self._basis_cache = {}

    @property
    def length(self) -> int:
        """Index of the last nonzero term (-1 for the zero complex)."""
        return max((p for p, t in enumerate(self.terms) if t), default=-1)

    def monomial_terms(self) -> list:
        return [[monomial_of(d) for d in t] for t in self.terms]

    def betti(self) -> dict:
        table = {}
        for p, t in enumerate(self.terms):
            row = defaultdict(int)
            for d in t:
                row[sum(d[:-1])] += 1
            if row:
                table[p] = dict(sorted(row.items()))
        return table

    # -- the generic complex interface used by verify_complex ----------
    def multidegrees(self, bound: Optional[int] = None):
        return delta_set(self.m, self.n)

    def levels(self) -> int:
        return len(self.terms)

    def basis(self, p: int, e) -> list:
        key = (p, e)
        if key not in self._basis_cache:
            self._basis_cache[key] = [i for i, d in enumerate(self.terms[p]) if st_geq_degree(e, d)]
        return self._basis_cache[key]

    def differential(self, p: int, e) -> list:
        rows, cols = self.basis(p - 1, e), self.basis(p, e)
        mat = self.diffs[p - 1]
        return [[mat[i][j] for j in cols] for i in rows]

    def augmentation(self, e) -> list:
        return self._augmentation.get(tuple(e), [[0] * len(self.basis(0, e))
                                                for _ in range(self.target.dim(e))])

    def target_dim(self, e) -> int:
        return self.target.dim(e)

    def minimality_violations(self) -> list:
        out = []
        for p, mat in enumerate(self.diffs, start=1):
            for i, row in enumerate(mat):
                for j, x in enumerate(row):
                    if x and self.terms[p][j] == self.terms[p - 1][i]:
                        out.append({"p": p, "row": i, "col": j, "degree": list(self.terms[p][j])})
        return out

    def to_dict(self) -> dict:
        """Terms in canonical monomial order, matrices permuted to match."""
        def enc(x):
            return str(x) if self.field.is_rational else int(x)
        perms = [sorted(range(len(t)), key=lambda i, t=t: monomial_of(t[i]).sort_key())
                 for t in self.terms]
        diffs = []
        for p, mat in enumerate(self.diffs, start=1):
            diffs.append([[enc(mat[i][j]) for j in perms[p]] for i in perms[p - 1]])
        return {
            "engine": self.kind, "m": self.m, "n": self.n, "field": str(self.field),
            "terms": [[str(monomial_of(t[i])) for i in perm] for t, perm in zip(self.terms, perms)],
            "differentials": diffs,
            "betti": betti_rows(self.betti()),
        }


def shift_complex_from_dict(data: dict, ideal: SstIdeal, field: Optional[Field] = None) -> ShiftComplex:
    """Rebuild a stored shift complex resolving ``ideal`` (or S/ideal for quotient mode)."""
    from fractions import Fraction
    from .monomial import parse_monomial
    field = field or Field.parse(data.get("field", "prime"))
    try:
        m, n = int(data["m"]), int(data["n"])
        terms = [[degree_of(parse_monomial(u), m, n) for u in t] for t in data["terms"]]
        conv = Fraction if field.is_rational else int
        diffs = [[[field(conv(x)) for x in row] for row in mat] for mat in data["differentials"]]
        kind = data["engine"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed complex: {exc}") from None
    if len(diffs) != max(len(terms) - 1, 0):
        raise InvalidInput("need one differential between consecutive terms")
    for p, mat in enumerate(diffs, start=1):
        if len(mat) != len(terms[p - 1]) or any(len(r) != len(terms[p]) for r in mat):
            raise InvalidInput(f"differential {p} has the wrong shape")
    if kind == "koszul-quotient":
        target = quotient_module(ideal, m, n, field)
        aug = {e: [[1]] for e in delta_set(m, n) if target.dim(e)}
    else:
        target = from_sst_ideal(ideal, m, n, field)
        aug = {e: [[1] * sum(1 for d in terms[0] if st_geq_degree(e, d))]
               for e in delta_set(m, n) if target.dim(e)}
    return ShiftComplex(m, n, terms, diffs, target, aug, field, kind=kind)


def _box(ideal: SstIdeal, m: Optional[int], n: Optional[int]) -> Tuple[int, int]:
    return (m if m is not None else max(ideal.maxvar, 1),
            n if n is not None else max(ideal.maxdeg, 1))


@dataclass
class ConditionResult:
    holds: bool
    witnesses: Optional[List[int]]
    failing: Optional[Monomial] = None

    def __bool__(self):
        return self.holds


def check_condition_min(gens: Sequence[Monomial]) -> ConditionResult:
    """Each generator map must be the strict unique minimum at some position.

    Witnesses are the first such positions (1-based), in the given order.
    """
    gens = list(gens)
    maps = [gamma_inv(g) for g in gens]
    horizon = max((g.degree for g in gens), default=0) + 1
    witnesses = []
    for i, f in enumerate(maps):
        q = next((q for q in range(1, horizon + 1)
                  if f(q) is not INF and all(f(q) < h(q) for j, h in enumerate(maps) if j != i)),
                 None)
        if q is None:
            return ConditionResult(False, None, gens[i])
        witnesses.append(q)
    return ConditionResult(True, witnesses)


def _sorted_gens(gens) -> list:
    return sorted(gens)


def koszul_shift_resolution(gens: Sequence[Monomial], mode: str = "ideal",
                            m: Optional[int] = None, n: Optional[int] = None,
                            field: Optional[Field] = None) -> ShiftComplex:
    """``F_p = sum over |R| = p of P(meet of the generator maps in R)``.

    In ``ideal`` mode F_p sits in homological degree p-1 and resolves the
    ideal; ``quotient`` mode prepends ``F_0 = P(1)`` and resolves S/I.
    """
    field = field or Field.default()
    gens = _sorted_gens(gens)
    if not gens:
        raise InvalidInput("koszul_shift_resolution needs at least one generator")
    ideal = SstIdeal(gens)
    if len(ideal.gens) != len(set(gens)) or len(set(gens)) != len(gens):
        raise InvalidInput("generators must form an antichain for the strongly stable order")
    if mode not in ("ideal", "quotient"):
        raise InvalidInput("mode must be 'ideal' or 'quotient'")
    m, n = _box(ideal, m, n)
    maps = [gamma_inv(g) for g in gens]
    k = len(gens)
    subsets = [list(combinations(range(k), p)) for p in range(1, k + 1)]
    index = [{R: i for i, R in enumerate(level)} for level in subsets]

    def term(R):
        f = maps[R[0]]
        for r in R[1:]:
            f = meet(f, maps[r])
        return degree_of(gamma(f), m, n)

    terms = [[term(R) for R in level] for level in subsets]
    diffs = []
    for p in range(2, k + 1):
        rows, cols = subsets[p - 2], subsets[p - 1]
        mat = [[0] * len(cols) for _ in rows]
        for j, R in enumerate(cols):
            for i, r in enumerate(R, start=1):
                S = tuple(x for x in R if x != r)
                mat[index[p - 2][S]][j] = field((-1) ** i)
        diffs.append(mat)
    if mode == "quotient":
        unit = (0,) * m + (n,)
        diffs.insert(0, [[field(-1)] * k])
        terms.insert(0, [unit])
        target = quotient_module(ideal, m, n, field)
        aug = {e: [[1]] for e in delta_set(m, n) if target.dim(e)}
    else:
        target = from_sst_ideal(ideal, m, n, field)
        aug = {}
        for e in delta_set(m, n):
            if target.dim(e):
                aug[e] = [[1] * sum(1 for d in terms[0] if st_geq_degree(e, d))]
    return ShiftComplex(m, n, terms, diffs, target, aug, field, kind="koszul-" + mode)


def minimal_projective_resolution(v: FiniteShiftModule, kind: str = "minimal-shift") -> ShiftComplex:
    """Iterated projective covers: each new term covers the kernel of the last map."""
    m, n, field = v.m, v.n, v.field
    if v.total_dim > MAX_TOTAL_DIM:
        raise GuardExceeded(f"module of total dimension {v.total_dim} exceeds {MAX_TOTAL_DIM}")
    degrees = delta_set(m, n)
    gens = generator_vectors(v)
    terms = [[d for d, _ in gens]]
    aug = {}
    for e in degrees:
        cols = [j for j, (d, _) in enumerate(gens) if st_geq_degree(e, d)]
        if cols and v.dim(e):
            columns = [v.transport(gens[j][0], e, gens[j][1]) for j in cols]
            aug[e] = [[columns[c][r] for c in range(len(cols))] for r in range(v.dim(e))]
    diffs = []

    def basis(level, e):
        return [i for i, d in enumerate(level) if st_geq_degree(e, d)]

    current = terms[0]
    mat_at = lambda e: aug.get(e)
    target_dim = v.dim
    limit = min(m, n) + 2
    while current:
        if len(terms) > limit + 1:
            raise AssertionError("resolution exceeded the global dimension bound")
        kernels = {}
        for e in degrees:
            cols = basis(current, e)
            if not cols:
                continue
            if target_dim(e):
                kernels[e] = kernel_basis(mat_at(e), field)
            else:
                kernels[e] = [[field(1) if i == j else field(0) for i in range(len(cols))]
                              for j in range(len(cols))]
        new_degrees, new_cols = [], []
        for e in degrees:
            kb = kernels.get(e)
            if not kb:
                continue
            cols = basis(current, e)
            pos = {s: i for i, s in enumerate(cols)}
            span = _Span(len(cols), field)
            for d, _p in predecessors(e):
                for vec in kernels.get(d, []):
                    emb = [field(0)] * len(cols)
                    for s, x in zip(basis(current, d), vec):
                        emb[pos[s]] = x
                    span.add(emb)
            for vec in kb:
                if span.add(vec):
                    full = [field(0)] * len(current)
                    for s, x in zip(cols, vec):
                        full[s] = x
                    new_degrees.append(e)
                    new_cols.append(full)
        if not new_degrees:
            break
        mat = [[new_cols[j][i] for j in range(len(new_cols))] for i in range(len(current))]
        diffs.append(mat)
        terms.append(new_degrees)
        prev, cur_mat = current, mat

        def mat_at(e, prev=prev, cur_mat=cur_mat, new=new_degrees):
            rows, cols = basis(prev, e), basis(new, e)
            return [[cur_mat[i][j] for j in cols] for i in rows]

        target_dim = (lambda prev: (lambda e: len(basis(prev, e))))(prev)
        current = new_degrees
    if not terms[0]:
        terms = [[]]
    return ShiftComplex(m, n, terms, diffs, v, aug, field, kind=kind)


def minimal_shift_resolution(ideal: SstIdeal, m: Optional[int] = None, n: Optional[int] = None,
                             field: Optional[Field] = None) -> ShiftComplex:
    m, n = _box(ideal, m, n)
    return minimal_projective_resolution(from_sst_ideal(ideal, m, n, field))


# -- the Eliahou-Kervaire complex -----------------------------------------

class EKComplex:
    """Free resolution on symbols ``(i_1 < ... < i_p | u)`` with ``i_p < max(u)``.

    The differential is ``delta - mu``; ``diffs[p-1][col]`` lists
    ``(row, coefficient, multiplier)`` for the image of symbol ``col`` of F_p.
    """

    def __init__(self, oracle, field: Field):
        self.oracle, self.field = oracle, field
        self.m = oracle.m
        ngens = len(oracle.generators) if hasattr(oracle, "generators") else len(oracle.gens)
        self.gen_degrees = [tuple(oracle.degree(j)) for j in range(ngens)]
        self.symbols: List[list] = []
        p = 0
        while True:
            level = []
            for j, d in enumerate(self.gen_degrees):
                b = max_index(d)
                for idx in combinations(range(1, b), p):
                    level.append((idx, j))
            if not level:
                break
            self.symbols.append(level)
            p += 1
        self.index = [{s: i for i, s in enumerate(level)} for level in self.symbols]
        self._degrees = [[self._sym_degree(p, i) for i in range(len(level))]
                         for p, level in enumerate(self.symbols)]
        self.diffs = [self._build(p) for p in range(1, len(self.symbols))]

    def sym_degree(self, p: int, i: int) -> tuple:
        return self._degrees[p][i]

    def _sym_degree(self, p: int, i: int) -> tuple:
        idx, j = self.symbols[p][i]
        d = list(self.gen_degrees[j])
        for t in idx:
            d[t - 1] += 1
        return tuple(d)

    def _build(self, p: int) -> list:
        field, out = self.field, []
        lower = self.index[p - 1]
        for idx, j in self.symbols[p]:
            acc = defaultdict(lambda: field(0))
            mult = {}
            b = max_index(self.gen_degrees[j])
            for q, i in enumerate(idx, start=1):
                rest = tuple(t for t in idx if t != i)
                sign = field((-1) ** q)
                row = lower[(rest, j)]
                acc[row] = field(acc[row] + sign)
                mult[row] = Monomial({i: 1})
                for coeff, c, k in self.oracle.shift_normal_form(i, b, j):
                    if rest and rest[-1] >= max_index(self.gen_degrees[k]):
                        continue
                    row = lower[(rest, k)]
                    acc[row] = field(acc[row] - sign * coeff)
                    mult[row] = c * Monomial({b: 1})
            out.append([(row, x, mult[row]) for row, x in sorted(acc.items()) if x])
        return out

    @property
    def length(self) -> int:
        return len(self.symbols) - 1

    def betti(self) -> dict:
        table = {}
        for p, level in enumerate(self.symbols):
            row = defaultdict(int)
            for i in range(len(level)):
                row[sum(self.sym_degree(p, i))] += 1
            table[p] = dict(sorted(row.items()))
        return table

    def symbol_strings(self, p: int) -> list:
        out = []
        for idx, j in self.symbols[p]:
            d = self.gen_degrees[j]
            out.append("(" + ",".join(map(str, idx)) + " | " + str(Monomial.from_exponents(d)) + ")")
        return out

    # -- generic interface --------------------------------------------
    def multidegrees(self, bound: Optional[int] = None):
        if bound is None:
            bound = max((sum(d) for d in self.gen_degrees), default=0) + 3
        return list(_degrees_upto(self.m, bound))

    def levels(self) -> int:
        return len(self.symbols)

    def basis(self, p: int, e) -> list:
        return [i for i, d in enumerate(self._degrees[p]) if all(x <= y for x, y in zip(d, e))]

    def differential(self, p: int, e) -> list:
        rows, cols = self.basis(p - 1, e), self.basis(p, e)
        pos = {r: i for i, r in enumerate(rows)}
        mat = [[self.field(0)] * len(cols) for _ in rows]
        for c, i in enumerate(cols):
            for row, x, _mult in self.diffs[p - 1][i]:
                mat[pos[row]][c] = x
        return mat

    def augmentation(self, e) -> list:
        cols = self.basis(0, e)
        dim = self.oracle.target_dim(e)
        mat = [[self.field(0)] * len(cols) for _ in range(dim)]
        for c, i in enumerate(cols):
            d = self.sym_degree(0, i)
            a = Monomial.from_exponents(tuple(x - y for x, y in zip(e, d)))
            vec = self.oracle.augmentation(a, self.symbols[0][i][1])
            for r in range(dim):
                mat[r][c] = vec[r]
        return mat

    def target_dim(self, e) -> int:
        return self.oracle.target_dim(e)

    def minimality_violations(self) -> list:
        out = []
        for p, level in enumerate(self.diffs, start=1):
            for col, terms in enumerate(level):
                for row, x, mult in terms:
                    if mult.is_unit():
                        out.append({"p": p, "row": row, "col": col})
        return out

    def to_dict(self) -> dict:
        return {
            "engine": "ek", "m": self.m, "field": str(self.field),
            "terms": [self.symbol_strings(p) for p in range(len(self.symbols))],
            "betti": betti_rows(self.betti()),
        }


def ek_resolution(source, bound: Optional[int] = None, field: Optional[Field] = None) -> EKComplex:
    """EK complex of an sst ideal, a finite shift module (expanded to ``bound``),
    a :class:`GradedPieceTable`, or an explicit normal-form oracle."""
    if isinstance(source, SstIdeal):
        if source.is_zero:
            raise InvalidInput("the zero ideal has the empty resolution")
        oracle = IdealNormalForm(source, field)
    elif isinstance(source, FiniteShiftModule):
        b = bound if bound is not None else source.n + 3
        oracle = TableNormalForm(expand(source, b))
    elif isinstance(source, GradedPieceTable):
        oracle = TableNormalForm(source)
    else:
        oracle = source
    return EKComplex(oracle, oracle.field)


# -- certificates and tables ----------------------------------------------

def verify_complex(cx, bound: Optional[int] = None, stop_after: int = 5) -> dict:
    """Degreewise certificate: d^2 = 0, exactness in positive degrees, H_0 = target, minimality."""
    field = cx.field
    failures = []
    checked = 0
    for e in cx.multidegrees(bound):
        checked += 1
        e = tuple(e)
        mats = [cx.differential(p, e) for p in range(1, cx.levels())]
        sizes = [len(cx.basis(p, e)) for p in range(cx.levels())]
        aug = cx.augmentation(e)
        tdim = cx.target_dim(e)
        ranks = [rank(mt, field) if mt and mt[0] else 0 for mt in mats]
        if mats and aug and sizes[1] and sizes[0]:
            if any(x for row in matmul(aug, mats[0], field, inner=sizes[0]) for x in row):
                failures.append({"kind": "augmentation", "degree": list(e)})
        for p in range(1, len(mats)):
            if sizes[p + 1] and sizes[p - 1]:
                prod = matmul(mats[p - 1], mats[p], field, inner=sizes[p])
                if any(x for row in prod for x in row):
                    failures.append({"kind": "d_squared", "p": p + 1, "degree": list(e)})
        for p in range(1, cx.levels()):
            kernel_dim = sizes[p] - ranks[p - 1]
            image_dim = ranks[p] if p < len(ranks) else 0
            if kernel_dim != image_dim:
                failures.append({"kind": "homology", "p": p, "degree": list(e),
                                 "dim": kernel_dim - image_dim})
        h0 = sizes[0] - (ranks[0] if ranks else 0)
        aug_rank = rank(aug, field) if aug and aug[0] else 0
        if h0 != tdim or aug_rank != tdim:
            failures.append({"kind": "h0", "degree": list(e), "h0": h0, "target": tdim})
        if len(failures) >= stop_after:
            break
    minimal = not cx.minimality_violations()
    kinds = {f["kind"] for f in failures}
    return {
        "ok": not failures,
        "d_squared_zero": not kinds & {"d_squared", "augmentation"},
        "exact": "homology" not in kinds,
        "h0_matches": "h0" not in kinds,
        "minimal": minimal,
        "checked_degrees": checked,
        "failures": failures,
    }


def betti_table(cx) -> dict:
    return cx.betti()


def ek_betti_closed_form(ideal: SstIdeal) -> dict:
    """``beta_{p, deg u + p} = sum over minimal generators u of C(max(u) - 1, p)``."""
    table = defaultdict(lambda: defaultdict(int))
    for u in monomial_min_gens(ideal):
        top = max(u.max_var, 1)
        for p in range(top):
            c = comb(top - 1, p)
            if c:
                table[p][u.degree + p] += c
    return {p: dict(sorted(row.items())) for p, row in sorted(table.items())}


def betti_totals(table: dict) -> list:
    return [sum(table.get(p, {}).values()) for p in range(max(table, default=-1) + 1)]


def betti_rows(table: dict) -> list:
    """Rows ``[p, {total degree: count}]`` with string keys for JSON."""
    return [[p, {str(k): v for k, v in sorted(row.items())}] for p, row in sorted(table.items())]


def format_betti(table: dict) -> str:
    """Rows are homological degrees, columns total degrees."""
    if not table:
        return "(zero complex)"
    cols = sorted({d for row in table.values() for d in row})
    width = max(3, max(len(str(v)) for row in table.values() for v in row.values()) + 1)
    head = "p\\deg " + "".join(str(c).rjust(width) for c in cols)
    lines = [head]
    for p in sorted(table):
        lines.append(str(p).ljust(6) + "".join(
            (str(table[p][c]) if c in table[p] else ".").rjust(width) for c in cols))
    return "\n".join(lines)
