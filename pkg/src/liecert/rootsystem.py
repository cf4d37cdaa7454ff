"""Root systems of simple types from their Cartan matrices (Bourbaki numbering)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

VALID_RANKS = {
    "A": range(1, 100), "B": range(2, 100), "C": range(3, 100), "D": range(4, 100),
    "E": (6, 7, 8), "F": (4,), "G": (2,),
}


@dataclass(frozen=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in VALID_RANKS or self.rank not in VALID_RANKS[self.family]:
            raise ValueError(f"invalid simple type {self.family}{self.rank}")

    @classmethod
    def parse(cls, name: str) -> "SimpleType":
        name = name.strip().upper()
        try:
            return cls(name[0], int(name[1:]))
        except (IndexError, ValueError):
            raise ValueError(f"invalid simple type {name!r}") from None

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Root:
    coeffs: Tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    @property
    def is_positive(self) -> bool:
        return self.height > 0


def gram_matrix(t: SimpleType) -> List[List[int]]:
    """Integer-scaled inner products (alpha_i, alpha_j) of the simple roots."""
    n = t.rank
    g = [[0] * n for _ in range(n)]

    def edge(i, j, v):
        g[i][j] = g[j][i] = v

    fam = t.family
    if fam in "ABCD":
        sq = [2] * n
        if fam == "B":
            sq[-1] = 1
        elif fam == "C":
            sq = [2] * (n - 1) + [4]
        for i in range(n):
            g[i][i] = sq[i]
        for i in range(n - 1):
            edge(i, i + 1, -1)
        if fam == "C":
            edge(n - 2, n - 1, -2)
        if fam == "D":
            edge(n - 2, n - 1, 0)
            edge(n - 3, n - 1, -1)
    elif fam == "E":
        for i in range(n):
            g[i][i] = 2
        edge(0, 2, -1)
        edge(1, 3, -1)
        for i in range(2, n - 1):
            edge(i, i + 1, -1)
    elif fam == "F":
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        for i, sq in enumerate((4, 4, 2, 2)):
            g[i][i] = sq
        edge(0, 1, -2)
        edge(1, 2, -2)
        edge(2, 3, -1)
    elif fam == "G":
        # alpha_1 short, alpha_2 long
        g[0][0], g[1][1] = 2, 6
        edge(0, 1, -3)
    return g


def cartan_matrix(t: SimpleType) -> List[List[int]]:
    """A[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)."""
    g = gram_matrix(t)
    n = t.rank
    return [[2 * g[i][j] // g[i][i] for j in range(n)] for i in range(n)]


@dataclass
class RootSystem:
    simple_type: SimpleType
    cartan: List[List[int]]
    gram: List[List[int]]
    positive_roots: List[Root]
    _index: Dict[Tuple[int, ...], int] = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return self.simple_type.rank

    @property
    def simple_roots(self) -> List[Root]:
        return self.positive_roots[:self.rank]

    def index(self, v) -> int:
        """Position of a positive root in the ordering; KeyError otherwise."""
        key = v.coeffs if isinstance(v, Root) else tuple(v)
        return self._index[key]

    def inner(self, a: Root, b: Root) -> int:
        g = self.gram
        return sum(a.coeffs[i] * g[i][j] * b.coeffs[j]
                   for i in range(self.rank) if a.coeffs[i]
                   for j in range(self.rank) if b.coeffs[j])

    def pairing(self, beta: Root, alpha: Root) -> int:
        """<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)."""
        num = 2 * self.inner(beta, alpha)
        den = self.inner(alpha, alpha)
        if num % den:
            raise ArithmeticError("non-integral Cartan pairing")
        return num // den

    def coroot_coeffs(self, r: Root) -> Tuple[int, ...]:
        """Coordinates of r^vee on the simple coroots."""
        rr = self.inner(r, r)
        out = []
        for i, k in enumerate(r.coeffs):
            c = Fraction(k * self.gram[i][i], rr)
            if c.denominator != 1:
                raise ArithmeticError("non-integral coroot coefficient")
            out.append(int(c))
        return tuple(out)

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]


def build_root_system(t: SimpleType) -> RootSystem:
    return _build(t.family, t.rank)


@lru_cache(maxsize=None)
def _build(family: str, rank: int) -> RootSystem:
    t = SimpleType(family, rank)
    a = cartan_matrix(t)
    n = rank
    simple = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    roots = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # p: how far the alpha_i-string extends downward from beta
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in known:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * a[i][j] for j in range(n))
                q = p - pairing
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in known:
                        known.add(up)
                        nxt.append(up)
        roots.extend(nxt)
        layer = nxt
    # height ascending, then descending lex so simple roots sit at 0..rank-1 in order
    roots.sort(key=lambda c: (sum(c), tuple(-x for x in c)))
    rs = RootSystem(t, a, gram_matrix(t), [Root(c) for c in roots])
    rs._index = {c: i for i, c in enumerate(roots)}
    return rs


def is_root(rs: RootSystem, v: Sequence[int]) -> bool:
    if len(v) != rs.rank:
        raise ValueError("length must equal rank")
    v = tuple(v)
    return v in rs._index or tuple(-x for x in v) in rs._index


def root_string(rs: RootSystem, beta: Root, alpha: Root) -> Tuple[int, int]:
    """(p, q): the alpha-string through beta runs from beta - p alpha to beta + q alpha."""
    if not is_root(rs, beta.coeffs) or not is_root(rs, alpha.coeffs):
        raise ValueError("arguments must be roots")
    if beta == alpha or beta == -alpha:
        raise ValueError("beta must differ from +-alpha")
    p = 0
    cur = beta - alpha
    while is_root(rs, cur.coeffs):
        p += 1
        cur = cur - alpha
    q = 0
    cur = beta + alpha
    while is_root(rs, cur.coeffs):
        q += 1
        cur = cur + alpha
    return p, q
