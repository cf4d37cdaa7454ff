"""Simple Lie algebras on a Chevalley basis.

Basis layout for a root system with N positive roots and rank n:

* ``0 .. N-1``      positive root vectors x_beta (root order of :mod:`rootsystem`)
* ``N .. 2N-1``     negative root vectors y_beta = x_{-beta}
* ``2N .. 2N+n-1``  Cartan generators h_i = alpha_i^vee

Signs of N_{alpha,beta} are fixed by declaring N = +(p+1) on every extraspecial
pair and propagating with the usual Chevalley identities.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple

from .ratmat import ONE, ZERO, Echelon, QMatrix, SparseRow, as_rat
from .rootsystem import Root, RootSystem, SimpleType, build_root_system

Coeffs = Tuple[int, ...]


class Element:
    """Sparse vector in a Lie algebra: basis index -> nonzero rational."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None):
        self.coeffs: Dict[int, Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                v = as_rat(v)
                if v:
                    self.coeffs[k] = v

    @classmethod
    def basis(cls, k: int) -> "Element":
        return cls({k: ONE})

    @classmethod
    def from_dense(cls, vec) -> "Element":
        return cls({k: v for k, v in enumerate(vec) if v})

    def to_dense(self, dim: int) -> List[Fraction]:
        out = [ZERO] * dim
        for k, v in self.coeffs.items():
            out[k] = v
        return out

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return Element(out)

    def __neg__(self) -> "Element":
        return Element({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, scalar) -> "Element":
        s = as_rat(scalar)
        return Element({k: s * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            parts.append(f"v.{k + 1}" if v == 1 else f"({v})*v.{k + 1}")
        return "+".join(parts)


class LieAlgebra:
    """Structure-constant table of a simple Lie algebra over Q."""

    def __init__(self, rs: RootSystem, table: Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]]):
        self.root_system = rs
        self.n_pos = len(rs.positive_roots)
        self.rank = rs.rank
        self.dim = 2 * self.n_pos + self.rank
        self.struct_consts = table
        self._rows: List[Dict[int, Tuple[Tuple[int, int], ...]]] = [dict() for _ in range(self.dim)]
        for (i, j), terms in table.items():
            self._rows[i][j] = terms
            self._rows[j][i] = tuple((k, -c) for k, c in terms)

    # basis bookkeeping -----------------------------------------------------

    @property
    def simple_type(self) -> SimpleType:
        return self.root_system.simple_type

    def x(self, i: int) -> Element:
        """Positive root vector for the i-th positive root."""
        return Element.basis(i)

    def y(self, i: int) -> Element:
        return Element.basis(self.n_pos + i)

    def h(self, i: int) -> Element:
        return Element.basis(2 * self.n_pos + i)

    def cartan_indices(self) -> range:
        return range(2 * self.n_pos, self.dim)

    def root_of(self, k: int) -> Optional[Root]:
        """Root of basis vector k, or None for Cartan generators."""
        if k < self.n_pos:
            return self.root_system.positive_roots[k]
        if k < 2 * self.n_pos:
            return -self.root_system.positive_roots[k - self.n_pos]
        return None

    def index_of_root(self, coeffs) -> int:
        coeffs = tuple(coeffs)
        if sum(coeffs) > 0:
            return self.root_system.index(coeffs)
        return self.n_pos + self.root_system.index(tuple(-c for c in coeffs))

    # brackets --------------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> Tuple[Tuple[int, int], ...]:
        return self._rows[i].get(j, ())

    def bracket(self, a: Element, b: Element) -> Element:
        acc: Dict[int, Fraction] = {}
        rows = self._rows
        for i, u in a.coeffs.items():
            ri = rows[i]
            for j, v in b.coeffs.items():
                terms = ri.get(j)
                if terms:
                    uv = u * v
                    for k, c in terms:
                        acc[k] = acc.get(k, ZERO) + uv * c
        return Element(acc)

    def ad_columns(self, a: Element) -> List[SparseRow]:
        """Sparse columns of ad a: column j holds the coordinates of [a, b_j]."""
        cols: List[SparseRow] = [dict() for _ in range(self.dim)]
        rows = self._rows
        for i, u in a.coeffs.items():
            for j, terms in rows[i].items():
                col = cols[j]
                for k, c in terms:
                    col[k] = col.get(k, ZERO) + u * c
        return [{k: v for k, v in col.items() if v} for col in cols]

    def ad_rows(self, a: Element) -> List[SparseRow]:
        """Sparse rows of ad a (row k, column j = coefficient of b_k in [a, b_j])."""
        rows: List[SparseRow] = [dict() for _ in range(self.dim)]
        for j, col in enumerate(self.ad_columns(a)):
            for k, v in col.items():
                rows[k][j] = v
        return rows

    def ad_apply(self, a: Element, vec: SparseRow) -> SparseRow:
        """Coordinates of [a, v] for v given as a sparse coordinate row."""
        return self.bracket(a, Element(vec)).coeffs

    def weight_of_basis(self, h: Element, k: int) -> Fraction:
        """Eigenvalue of ad h on basis vector k (h must be a Cartan element)."""
        r = self.root_of(k)
        if r is None:
            return ZERO
        a = self.root_system.cartan
        base = 2 * self.n_pos
        total = ZERO
        for i in range(self.rank):
            c = h.coeffs.get(base + i)
            if c:
                total += c * sum(r.coeffs[j] * a[i][j] for j in range(self.rank))
        return total

    def is_cartan(self, a: Element) -> bool:
        return all(k >= 2 * self.n_pos for k in a.coeffs)

    def dump(self) -> str:
        """Deterministic text dump, one line ``i j k c`` per nonzero constant (i < j)."""
        lines = []
        for (i, j) in sorted(self.struct_consts):
            for k, c in self.struct_consts[(i, j)]:
                lines.append(f"{i} {j} {k} {c}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"<Lie algebra {self.simple_type} of dimension {self.dim} over Rationals>"


# --------------------------------------------------------------------------
# structure constants


class _Constants:
    """N_{r,s} for arbitrary roots r, s with r + s a root."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.pos = {r.coeffs for r in rs.positive_roots}
        self.order = {r.coeffs: i for i, r in enumerate(rs.positive_roots)}
        self.extraspecial: Dict[Coeffs, Tuple[Coeffs, Coeffs]] = {}
        for xi in rs.positive_roots[rs.rank:]:
            for alpha in rs.positive_roots:
                rest = _sub(xi.coeffs, alpha.coeffs)
                if rest in self.pos:
                    self.extraspecial[xi.coeffs] = (alpha.coeffs, rest)
                    break
        self.cache: Dict[Tuple[Coeffs, Coeffs], Fraction] = {}

    def is_root(self, v: Coeffs) -> bool:
        return v in self.pos or _neg(v) in self.pos

    def norm(self, v: Coeffs) -> int:
        g = self.rs.gram
        n = len(v)
        return sum(v[i] * g[i][j] * v[j] for i in range(n) if v[i] for j in range(n) if v[j])

    def p_value(self, alpha: Coeffs, beta: Coeffs) -> int:
        p = 0
        cur = _sub(beta, alpha)
        while self.is_root(cur):
            p += 1
            cur = _sub(cur, alpha)
        return p

    def __call__(self, r: Coeffs, s: Coeffs) -> Fraction:
        key = (r, s)
        val = self.cache.get(key)
        if val is None:
            val = self._compute(r, s)
            self.cache[key] = val
        return val

    def _compute(self, r: Coeffs, s: Coeffs) -> Fraction:
        t = _add(r, s)
        if not any(t) or not self.is_root(t):
            return ZERO
        r_pos, s_pos = sum(r) > 0, sum(s) > 0
        if not r_pos and not s_pos:
            return -self(_neg(r), _neg(s))
        if not r_pos:
            return -self(s, r)
        if not s_pos:
            if sum(t) > 0:
                return -Fraction(self.norm(t), self.norm(r)) * self(_neg(s), t)
            return Fraction(self.norm(t), self.norm(s)) * self(_neg(t), r)
        # both positive
        gamma, delta = self.extraspecial[t]
        p = self.p_value(gamma, delta)
        if (r, s) == (gamma, delta):
            return Fraction(p + 1)
        if (s, r) == (gamma, delta):
            return Fraction(-(p + 1))
        if self.order[r] > self.order[s]:
            return -self(s, r)
        alpha, beta = r, s
        total = ZERO
        bg = _sub(beta, gamma)
        if self.is_root(bg):
            total += self(beta, _neg(gamma)) * self(alpha, _neg(delta)) / self.norm(bg)
        ag = _sub(alpha, gamma)
        if self.is_root(ag):
            total += self(_neg(gamma), alpha) * self(beta, _neg(delta)) / self.norm(ag)
        return Fraction(self.norm(t), p + 1) * total


def _add(a: Coeffs, b: Coeffs) -> Coeffs:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Coeffs, b: Coeffs) -> Coeffs:
    return tuple(x - y for x, y in zip(a, b))


def _neg(a: Coeffs) -> Coeffs:
    return tuple(-x for x in a)


def build_algebra(rs: RootSystem) -> LieAlgebra:
    return _build_cached(rs.simple_type.family, rs.simple_type.rank)


@lru_cache(maxsize=None)
def _build_cached(family: str, rank: int) -> LieAlgebra:
    rs = build_root_system(SimpleType(family, rank))
    consts = _Constants(rs)
    n_pos = len(rs.positive_roots)
    n = rs.rank
    roots: List[Coeffs] = [r.coeffs for r in rs.positive_roots] + \
        [_neg(r.coeffs) for r in rs.positive_roots]
    index = {c: k for k, c in enumerate(roots)}
    a = rs.cartan
    table: Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]] = {}

    def as_int(v: Fraction) -> int:
        if v.denominator != 1:
            raise ArithmeticError("non-integral structure constant")
        return int(v)

    for i, r in enumerate(roots):
        for j in range(i + 1, len(roots)):
            s = roots[j]
            t = _add(r, s)
            if not any(t):
                sign = 1 if i < n_pos else -1
                cor = rs.coroot_coeffs(Root(r if sign > 0 else s))
                table[(i, j)] = tuple((2 * n_pos + m, sign * c) for m, c in enumerate(cor) if c)
            elif t in index:
                val = as_int(consts(r, s))
                table[(i, j)] = ((index[t], val),)
        # [x_r, h_m] = -<r, alpha_m^vee> x_r
        for m in range(n):
            w = sum(r[q] * a[m][q] for q in range(n))
            if w:
                table[(i, 2 * n_pos + m)] = ((i, -w),)
    return LieAlgebra(rs, table)


def simple_lie_algebra(name: str) -> LieAlgebra:
    """Convenience constructor, e.g. ``simple_lie_algebra("E6")``."""
    return build_algebra(build_root_system(SimpleType.parse(name)))


# --------------------------------------------------------------------------
# matrices and nilpotency


def bracket(L: LieAlgebra, a: Element, b: Element) -> Element:
    return L.bracket(a, b)


def ad_matrix(L: LieAlgebra, a: Element) -> QMatrix:
    return QMatrix.from_sparse(L.ad_rows(a), L.dim)


def is_nilpotent_element(L: LieAlgebra, a: Element) -> bool:
    """ad a is nilpotent iff the chain L ⊇ [a,L] ⊇ [a,[a,L]] ⊇ ... reaches 0."""
    cols = L.ad_columns(a)
    current: List[SparseRow] = [c for c in cols if c]
    prev_dim = L.dim
    while True:
        ech = Echelon()
        for c in current:
            ech.add(c)
        if ech.rank == 0:
            return True
        if ech.rank == prev_dim:
            return False
        prev_dim = ech.rank
        current = [_apply_cols(cols, r) for r in ech.rows()]
        current = [c for c in current if c]


def _apply_cols(cols: List[SparseRow], vec: SparseRow) -> SparseRow:
    acc: SparseRow = {}
    for j, v in vec.items():
        for k, c in cols[j].items():
            acc[k] = acc.get(k, ZERO) + v * c
    return {k: v for k, v in acc.items() if v}


def random_element(L: LieAlgebra, rng, terms: int = 4, span: int = 3) -> Element:
    """Sparse element with a few small integer coefficients (for property tests)."""
    out = {}
    for _ in range(terms):
        out[rng.randrange(L.dim)] = rng.randint(-span, span)
    return Element(out)
