"""Centralizers, centres and ad-h gradings of subspaces of a Lie algebra."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

from .liealg import Element, LieAlgebra
from .ratmat import ONE, SparseRow, Subspace, intersect, kernel_sparse


class NotStableError(ValueError):
    pass


@dataclass
class GradedSubspace:
    """Subspace split into ad-h eigenspaces, keyed by ascending integer weight."""

    pieces: Dict[int, Subspace]

    @property
    def weights(self) -> List[int]:
        return list(self.pieces)

    @property
    def dims(self) -> Dict[int, int]:
        return {m: p.dim for m, p in self.pieces.items()}

    @property
    def dim(self) -> int:
        return sum(p.dim for p in self.pieces.values())

    def weight_multiset(self) -> List[int]:
        return [m for m, p in self.pieces.items() for _ in range(p.dim)]

    def piece(self, m: int) -> Subspace:
        return self.pieces[m]


def centralizer(L: LieAlgebra, e: Element) -> Subspace:
    """{x in L : [e, x] = 0}, the kernel of ad e."""
    return Subspace(L.dim, kernel_sparse(L.ad_rows(e), L.dim))


def _elements(s: Subspace) -> List[Element]:
    return [Element(r) for r in s.sparse_basis()]


def is_subalgebra(L: LieAlgebra, s: Subspace) -> bool:
    basis = _elements(s)
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            if not s.contains(L.bracket(a, b).coeffs):
                return False
    return True


def lie_centre(L: LieAlgebra, s: Subspace) -> Subspace:
    """{z in s : [z, s] = 0} for a subalgebra s."""
    basis = _elements(s)
    n = len(basis)
    # brackets[i][j] = [s_i, s_j]
    brackets = [[None] * n for _ in range(n)]
    for i in range(n):
        brackets[i][i] = Element()
        for j in range(i + 1, n):
            bij = L.bracket(basis[i], basis[j])
            if not s.contains(bij.coeffs):
                raise ValueError("subspace is not closed under the bracket")
            brackets[i][j] = bij
            brackets[j][i] = -bij
    # z = sum a_i s_i; the equations are the coordinates of sum_i a_i [s_i, s_j] for every j
    eqs: List[SparseRow] = []
    for j in range(n):
        by_coord: Dict[int, SparseRow] = {}
        for i in range(n):
            for k, v in brackets[i][j].coeffs.items():
                by_coord.setdefault(k, {})[i] = v
        eqs.extend(by_coord.values())
    coeff_vectors = kernel_sparse(eqs, n)
    rows = []
    for a in coeff_vectors:
        z = Element()
        for i, c in a.items():
            z = z + basis[i] * c
        rows.append(z.coeffs)
    return Subspace(L.dim, rows)


def candidate_weights(L: LieAlgebra, h: Element) -> List[Fraction]:
    return sorted({L.weight_of_basis(h, k) for k in range(L.dim)})


def grade_by_h(L: LieAlgebra, h: Element, s: Subspace) -> GradedSubspace:
    """Split an ad-h stable subspace into eigenspaces of ad h."""
    if not L.is_cartan(h):
        raise ValueError("grading element must lie in the Cartan subalgebra")
    for r in s.sparse_basis():
        if not s.contains(L.bracket(h, Element(r)).coeffs):
            raise NotStableError("subspace is not ad-h stable")
    by_weight: Dict[Fraction, List[int]] = {}
    for k in range(L.dim):
        by_weight.setdefault(L.weight_of_basis(h, k), []).append(k)
    pieces: Dict[int, Subspace] = {}
    for m in sorted(by_weight):
        eigen = Subspace(L.dim, ({k: ONE} for k in by_weight[m]))
        piece = intersect(s, eigen)
        if piece.dim:
            if m.denominator != 1:
                raise ArithmeticError(f"non-integral ad-h eigenvalue {m}")
            pieces[int(m)] = piece
    total = sum(p.dim for p in pieces.values())
    if total != s.dim:
        raise ArithmeticError("eigenspaces do not reassemble the subspace")
    return GradedSubspace(pieces)


def weight_space_indices(L: LieAlgebra, h: Element, m: int) -> List[int]:
    """Basis indices spanning the weight-m space of ad h on L."""
    return [k for k in range(L.dim) if L.weight_of_basis(h, k) == m]
