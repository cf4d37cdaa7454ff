"""sl2-triples synthesized from weighted Dynkin diagrams."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Tuple

from .liealg import Element, LieAlgebra, is_nilpotent_element
from .ratmat import QMatrix, kernel_sparse, solve_linear
from .subalg import weight_space_indices

SEARCH_CAP = 5


class Sl2Error(ValueError):
    pass


@dataclass(frozen=True)
class Characteristic:
    labels: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if any(x not in (0, 2) for x in self.labels):
            raise ValueError(f"characteristic labels must be 0 or 2, got {self.labels}")

    def __str__(self) -> str:
        return "".join(str(x) for x in self.labels)


@dataclass(frozen=True)
class Sl2Triple:
    e: Element
    h: Element
    f: Element


def cartan_from_characteristic(L: LieAlgebra, c: Characteristic) -> Element:
    """The Cartan element h with alpha_i(h) = labels[i] for every simple root."""
    n = L.rank
    if len(c.labels) != n:
        raise ValueError(f"expected {n} labels, got {len(c.labels)}")
    a = L.root_system.cartan
    # alpha_j(sum_i c_i h_i) = sum_i c_i A[i][j]
    system = QMatrix.from_rows([[a[i][j] for i in range(n)] for j in range(n)])
    coords = solve_linear(system, list(c.labels))
    if coords is None:
        raise Sl2Error("singular Cartan system")
    for v in coords:
        if v.denominator != 1:
            raise Sl2Error(f"non-integral neutral element coordinates {coords}")
    base = 2 * L.n_pos
    return Element({base + i: v for i, v in enumerate(coords)})


def _centralizer_dim(L: LieAlgebra, e: Element) -> int:
    return len(kernel_sparse(L.ad_rows(e), L.dim))


def candidate_coefficients(d: int, cap: int = SEARCH_CAP, seed: int = 0) -> Iterator[Tuple[int, ...]]:
    """All-ones first, then vectors of {1..cap}^d drawn from a fixed-seed generator.

    Plain lexicographic order over {1..cap}^d only perturbs the trailing
    coordinates and can stay on a degenerate locus for thousands of steps.
    """
    yield (1,) * d
    rng = random.Random(seed)
    while True:
        yield tuple(rng.randint(1, cap) for _ in range(d))


def choose_e(L: LieAlgebra, h: Element, which: int = 0, cap: int = SEARCH_CAP,
             max_tries: int = 200) -> Element:
    """The ``which``-th candidate in g_2 whose centralizer has dimension dim g_0.

    ``max_tries`` bounds the number of candidates examined; the product
    {1..cap}^d is astronomically large for wide g_2 and an exhausted search
    is reported instead of running forever.
    """
    g2 = weight_space_indices(L, h, 2)
    if not g2:
        raise Sl2Error("weight-2 space is empty")
    g0_dim = len(weight_space_indices(L, h, 0))
    found = 0
    for tries, coeffs in enumerate(candidate_coefficients(len(g2), cap)):
        if tries >= max_tries:
            break
        e = Element(dict(zip(g2, coeffs)))
        if _centralizer_dim(L, e) == g0_dim:
            if found == which:
                return e
            found += 1
    raise Sl2Error(f"no candidate #{which} in the dense orbit after {min(tries + 1, max_tries)} tries")


def complete_triple(L: LieAlgebra, h: Element, e: Element) -> Sl2Triple:
    """Find f in g_{-2} with [e, f] = h."""
    if L.bracket(h, e) != e * 2:
        raise Sl2Error("[h, e] != 2e")
    gm2 = weight_space_indices(L, h, -2)
    cols = [L.bracket(e, Element.basis(k)).coeffs for k in gm2]
    support = sorted(set(h.coeffs).union(*[c.keys() for c in cols]))
    a = QMatrix.from_rows([[col.get(r, 0) for col in cols] for r in support], len(gm2))
    rhs = [h.coeffs.get(r, 0) for r in support]
    sol = solve_linear(a, rhs)
    if sol is None:
        raise Sl2Error("[e, f] = h has no solution in g_{-2}")
    f = Element({k: v for k, v in zip(gm2, sol) if v})
    t = Sl2Triple(e, h, f)
    if not verify_triple(L, t):
        raise Sl2Error("completed triple fails the sl2 relations")
    return t


def verify_triple(L: LieAlgebra, t: Sl2Triple) -> bool:
    return (L.bracket(t.h, t.e) == t.e * 2
            and L.bracket(t.h, t.f) == t.f * -2
            and L.bracket(t.e, t.f) == t.h
            and is_nilpotent_element(L, t.e)
            and is_nilpotent_element(L, t.f))


def synthesize_triple(L: LieAlgebra, c: Characteristic, which: int = 0) -> Sl2Triple:
    h = cartan_from_characteristic(L, c)
    return complete_triple(L, h, choose_e(L, h, which=which))
