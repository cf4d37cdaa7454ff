"""Sparse multivariate polynomials over Q and a degrevlex Buchberger engine.

The Groebner machinery exists to answer one question: does a family of
homogeneous polynomials vanish simultaneously only at the origin (over the
algebraic closure)?  That is the case iff every variable has a pure power
among the leading monomials of a Groebner basis.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .ratmat import Echelon

Monomial = Tuple[int, ...]


def degrevlex_key(m: Monomial):
    """Sort key: larger key means larger monomial in degrevlex."""
    return (sum(m), tuple(-x for x in reversed(m)))


class MultiPoly:
    __slots__ = ("terms", "num_vars")

    def __init__(self, terms: Optional[Dict[Monomial, object]], num_vars: int):
        self.num_vars = num_vars
        self.terms: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                if len(m) != num_vars:
                    raise ValueError("exponent length does not match num_vars")
                self.terms[tuple(m)] = c

    @classmethod
    def var(cls, i: int, num_vars: int) -> "MultiPoly":
        return cls({tuple(1 if j == i else 0 for j in range(num_vars)): 1}, num_vars)

    @classmethod
    def const(cls, c, num_vars: int) -> "MultiPoly":
        return cls({(0,) * num_vars: c}, num_vars)

    @classmethod
    def linear(cls, coeffs: Sequence, num_vars: Optional[int] = None) -> "MultiPoly":
        n = len(coeffs) if num_vars is None else num_vars
        return cls({tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)}, n)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _same(self, other: "MultiPoly") -> None:
        if self.num_vars != other.num_vars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out, self.num_vars)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self.terms.items()}, self.num_vars)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            s = Fraction(other)
            return MultiPoly({m: s * c for m, c in self.terms.items()}, self.num_vars)
        self._same(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(out, self.num_vars)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self.terms.items())))

    def monomials(self) -> List[Monomial]:
        """Monomials in decreasing degrevlex order."""
        return sorted(self.terms, key=degrevlex_key, reverse=True)

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=degrevlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def monic(self) -> "MultiPoly":
        return self * (1 / self.leading_coefficient()) if self.terms else self

    def primitive(self) -> "MultiPoly":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        return MultiPoly(_primitive(self.terms), self.num_vars)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t *= Fraction(x) ** e
            total += t
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = _var_names(self.num_vars)
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            mono = "*".join(f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(m) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _var_names(n: int) -> List[str]:
    greek = ["a", "b", "c", "d"]
    return greek[:n] if n <= 4 else [f"x{i}" for i in range(n)]


# --------------------------------------------------------------------------
# integer-coefficient kernel used by Buchberger

IntPoly = Dict[Monomial, int]


def _primitive(terms: Dict[Monomial, Fraction]) -> IntPoly:
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(c).denominator for c in terms.values()), 1)
    ints = {m: int(Fraction(c) * den) for m, c in terms.items()}
    return _content_free(ints)


def _content_free(p: IntPoly) -> IntPoly:
    g = reduce(gcd, (abs(c) for c in p.values()), 0)
    lead = p[max(p, key=degrevlex_key)]
    if lead < 0:
        g = -g
    return {m: c // g for m, c in p.items()} if g not in (0, 1) else dict(p)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _lead(p: IntPoly) -> Monomial:
    return max(p, key=degrevlex_key)


def _reduce_full(p: IntPoly, basis: List[Tuple[Monomial, IntPoly]]) -> IntPoly:
    """Fraction-free normal form of p modulo basis (pairs of (lead monomial, poly))."""
    p = dict(p)
    done: IntPoly = {}
    while p:
        m = _lead(p)
        c = p[m]
        for lm, g in basis:
            if _divides(lm, m):
                lc = g[lm]
                shift = tuple(x - y for x, y in zip(m, lm))
                k = gcd(c, lc)
                a, b = lc // k, c // k  # a*p - b*shift*g kills m
                if a != 1:
                    p = {mm: a * cc for mm, cc in p.items()}
                    done = {mm: a * cc for mm, cc in done.items()}
                for gm, gc in g.items():
                    mm = tuple(x + y for x, y in zip(gm, shift))
                    v = p.get(mm, 0) - b * gc
                    if v:
                        p[mm] = v
                    else:
                        p.pop(mm, None)
                break
        else:
            done[m] = p.pop(m)
        # content removal keeps coefficients small
        if p or done:
            g_all = reduce(gcd, (abs(v) for v in list(p.values()) + list(done.values())), 0)
            if g_all > 1:
                p = {mm: v // g_all for mm, v in p.items()}
                done = {mm: v // g_all for mm, v in done.items()}
    return _content_free(done) if done else {}


def _spoly(f: IntPoly, g: IntPoly) -> IntPoly:
    lf, lg = _lead(f), _lead(g)
    l = _lcm(lf, lg)
    cf, cg = f[lf], g[lg]
    k = gcd(cf, cg)
    a, b = cg // k, cf // k
    sf = tuple(x - y for x, y in zip(l, lf))
    sg = tuple(x - y for x, y in zip(l, lg))
    out: IntPoly = {}
    for m, c in f.items():
        mm = tuple(x + y for x, y in zip(m, sf))
        out[mm] = out.get(mm, 0) + a * c
    for m, c in g.items():
        mm = tuple(x + y for x, y in zip(m, sg))
        out[mm] = out.get(mm, 0) - b * c
    return {m: c for m, c in out.items() if c}


def _is_homog(p: IntPoly) -> bool:
    return len({sum(m) for m in p}) <= 1


def _interreduce(polys: List[IntPoly]) -> List[IntPoly]:
    """Linear interreduction: distinct leading monomials, none appearing in another generator."""
    polys = [p for p in polys if p]
    monos = sorted({m for p in polys for m in p}, key=degrevlex_key, reverse=True)
    col = {m: i for i, m in enumerate(monos)}
    ech = Echelon()
    for p in polys:
        ech.add({col[m]: Fraction(c) for m, c in p.items()})
    return [_primitive({monos[j]: v for j, v in r.items()}) for r in ech.rows()]


def buchberger(gens: Sequence[MultiPoly]) -> List[MultiPoly]:
    """Reduced degrevlex Groebner basis (monic) of the ideal generated by ``gens``."""
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].num_vars
    if any(g.num_vars != n for g in gens):
        raise ValueError("generators live in different rings")
    homogeneous = all(g.is_homogeneous() for g in gens)
    basis = _interreduce([_primitive(g.terms) for g in gens if g])
    if not basis:
        return []
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    while pairs:
        i, j = min(pairs, key=lambda ij: (sum(_lcm(_lead(basis[ij[0]]), _lead(basis[ij[1]]))), ij))
        pairs.discard((i, j))
        li, lj = _lead(basis[i]), _lead(basis[j])
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue  # coprime leading monomials
        lij = _lcm(li, lj)
        if _chain_skip(i, j, lij, basis, pairs):
            continue
        s = _spoly(basis[i], basis[j])
        r = _reduce_full(s, [(_lead(g), g) for g in basis if g])
        if not r:
            continue
        if homogeneous and not _is_homog(r):
            raise ArithmeticError("homogeneity lost during reduction")
        basis.append(r)
        k = len(basis) - 1
        pairs.update((a, k) for a in range(k) if basis[a])
    final = _minimalize(basis)
    final = [_reduce_full(p, [(_lead(q), q) for q in final if q is not p]) for p in final]
    polys = [MultiPoly(p, n).monic() for p in final if p]
    return sorted(polys, key=lambda p: degrevlex_key(p.leading_monomial()))


def _chain_skip(i: int, j: int, lij: Monomial, basis: List[IntPoly], pairs) -> bool:
    """Buchberger's second criterion."""
    for k, g in enumerate(basis):
        if k in (i, j) or not g:
            continue
        if _divides(_lead(g), lij):
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                return True
    return False


def _minimalize(basis: List[IntPoly]) -> List[IntPoly]:
    basis = [p for p in basis if p]
    out = []
    for idx, p in enumerate(basis):
        lp = _lead(p)
        dominated = False
        for jdx, q in enumerate(basis):
            if jdx == idx:
                continue
            lq = _lead(q)
            if _divides(lq, lp) and (lq != lp or jdx < idx):
                dominated = True
                break
        if not dominated:
            out.append(p)
    return out


def reduce_poly(p: MultiPoly, basis: Sequence[MultiPoly]) -> MultiPoly:
    """Normal form of p modulo ``basis`` (up to a nonzero scalar)."""
    if not p:
        return p
    ints = [_primitive(g.terms) for g in basis if g]
    r = _reduce_full(_primitive(p.terms), [(_lead(g), g) for g in ints])
    return MultiPoly(r, p.num_vars)


def origin_only(gens: Sequence[MultiPoly]) -> bool:
    """True iff the homogeneous generators have no common zero besides the origin."""
    gens = list(gens)
    if not gens:
        return False
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("origin_only requires homogeneous generators")
    nonzero = [g for g in gens if g]
    if not nonzero:
        return False
    n = nonzero[0].num_vars
    gb = buchberger(nonzero)
    have = [False] * n
    for g in gb:
        lm = g.leading_monomial()
        support = [i for i, e in enumerate(lm) if e]
        if not support:
            return True  # unit ideal
        if len(support) == 1:
            have[support[0]] = True
    return all(have)


# --------------------------------------------------------------------------
# independent oracle for binary forms


def _upoly_trim(p: List[Fraction]) -> List[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _upoly_mod(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = list(a)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
    return _upoly_trim(a)


def upoly_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    """Monic gcd of univariate polynomials given as ascending coefficient lists."""
    a, b = _upoly_trim(list(a)), _upoly_trim(list(b))
    while b:
        a, b = b, _upoly_mod(a, b)
    if not a:
        return []
    return [c / a[-1] for c in a]


def two_var_gcd_oracle(gens: Sequence[MultiPoly]) -> bool:
    """Binary-form version of :func:`origin_only` via univariate gcds.

    Common zeros [a:b] with b != 0 are roots of the dehomogenized gcd; the
    remaining point [1:0] is a common zero iff every form lacks its a^d term.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("need a nonzero generator")
    if any(g.num_vars != 2 for g in gens):
        raise ValueError("oracle handles two variables only")
    if any(not g.is_homogeneous() for g in gens):
        raise ValueError("generators must be homogeneous")
    g: Optional[List[Fraction]] = None
    infinity_common = True
    for p in gens:
        d = p.degree()
        coeffs = [Fraction(0)] * (d + 1)
        for (i, _j), c in p.terms.items():
            coeffs[i] = c
        if coeffs[d] != 0:
            infinity_common = False
        g = coeffs if g is None else upoly_gcd(g, coeffs)
    return len(_upoly_trim(list(g))) <= 1 and not infinity_common


# --------------------------------------------------------------------------
# minors of matrices of linear forms


def maximal_minors(m) -> List[MultiPoly]:
    """All nonzero rows x rows minors, deduplicated up to sign.

    ``m`` is a ParamMatrix or a nested list of MultiPoly.
    """
    rows = m.poly_rows() if hasattr(m, "poly_rows") else [list(r) for r in m]
    k = len(rows)
    if k == 0:
        return []
    ncols = len(rows[0])
    if k > ncols:
        raise ValueError("more rows than columns: no maximal minors")
    n = next(p.num_vars for r in rows for p in r)
    # det of rows[0..i) on column subset S, built row by row (Laplace along the last row)
    level: Dict[Tuple[int, ...], MultiPoly] = {(): MultiPoly.const(1, n)}
    for i in range(k):
        nxt: Dict[Tuple[int, ...], MultiPoly] = {}
        for cols in combinations(range(ncols), i + 1):
            total = MultiPoly({}, n)
            for pos, c in enumerate(cols):
                entry = rows[i][c]
                if not entry:
                    continue
                rest = cols[:pos] + cols[pos + 1:]
                sub = level.get(rest)
                if sub is None or not sub:
                    continue
                sign = -1 if (i + pos) % 2 else 1
                term = entry * sub
                total = total + (term if sign > 0 else -term)
            if total:
                nxt[cols] = total
        level = nxt
    out: List[MultiPoly] = []
    seen = set()
    for cols in sorted(level):
        p = level[cols]
        key = frozenset(p.primitive().terms.items())
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out
