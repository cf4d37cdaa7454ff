"""Certification of property (P) for a distinguished nilpotent orbit.

Pipeline per orbit: characteristic -> sl2-triple -> centralizer g^e and its
centre z -> graded bases -> lambda coefficients -> the parameter matrices
M(l, alpha) -> surjectivity for every nonzero alpha.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .liealg import Element, LieAlgebra
from .mvpoly import MultiPoly, maximal_minors, origin_only
from .ratmat import QMatrix, Subspace, extend_basis, rank, solve_linear
from .sl2 import Characteristic, Sl2Triple, cartan_from_characteristic, synthesize_triple
from .subalg import GradedSubspace, centralizer, grade_by_h, lie_centre

SURJECTIVE_ALL = "SURJECTIVE_ALL"
NOT_SURJECTIVE = "NOT_SURJECTIVE"
P_HOLDS = "P_holds"
NOT_CERTIFIED = "not_certified"


class OrbitError(RuntimeError):
    """A pipeline failure tagged with the stage it happened in."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


# --------------------------------------------------------------------------
# adapted basis


@dataclass
class AdaptedBasis:
    """Graded basis of g^e whose leading vectors in each weight span the centre part."""

    vectors: Dict[int, List[Element]]
    centre_dims: Dict[int, int]

    @property
    def weights(self) -> List[int]:
        return sorted(self.vectors)

    @property
    def dims(self) -> Dict[int, int]:
        return {m: len(v) for m, v in sorted(self.vectors.items())}

    @property
    def centre_profile(self) -> List[Tuple[int, int]]:
        """(m_{i_l}, delta_l) for l = 1..s."""
        return [(m, d) for m, d in sorted(self.centre_dims.items()) if d]

    @property
    def top(self) -> int:
        return self.weights[-1]

    @property
    def d_top(self) -> int:
        return len(self.vectors[self.top])

    def centre_vectors(self, m: int) -> List[Element]:
        return self.vectors[m][:self.centre_dims.get(m, 0)]

    def all_vectors(self) -> List[Element]:
        return [v for m in self.weights for v in self.vectors[m]]


def adapted_basis(L: LieAlgebra, triple: Sl2Triple, ge: GradedSubspace,
                  z: GradedSubspace) -> AdaptedBasis:
    vectors: Dict[int, List[Element]] = {}
    centre_dims: Dict[int, int] = {}
    for m, piece in ge.pieces.items():
        zp = z.pieces.get(m, Subspace.zero(L.dim))
        if not zp.is_subspace_of(piece):
            raise ValueError(f"centre piece of weight {m} is not inside the centralizer piece")
        rows = [Element(r) for r in zp.sparse_basis()]
        rows += [Element(r) for r in extend_basis(zp, piece).sparse_rows()]
        vectors[m] = rows
        centre_dims[m] = zp.dim
    if 2 not in vectors or centre_dims.get(2) != 1:
        raise ValueError("weight-2 centre piece must be the line through e")
    # the weight-2 centre line is spanned by e; use e itself as its basis vector
    if not Subspace(L.dim, [vectors[2][0].coeffs]).contains(triple.e.coeffs):
        raise ValueError("e does not span the weight-2 centre piece")
    vectors[2][0] = triple.e
    return AdaptedBasis(vectors, centre_dims)


# --------------------------------------------------------------------------
# lambda coefficients


LambdaKey = Tuple[int, int, int, int, int, int]


@dataclass
class LambdaTensor:
    """Coordinates of [[f, x_{m_k, q}], v_{m_i, t}] on the basis vector (m_j, p).

    Keys are (m_k, q, m_i, t, m_j, p) with 0-based q, t, p; absent keys are zero.
    """

    entries: Dict[LambdaKey, Fraction] = field(default_factory=dict)

    def get(self, m_k: int, q: int, m_i: int, t: int, m_j: int, p: int) -> Fraction:
        return self.entries.get((m_k, q, m_i, t, m_j, p), Fraction(0))

    def selection_rule_holds(self) -> bool:
        return all(mk == mj - mi + 2 for (mk, _q, mi, _t, mj, _p) in self.entries)


def _coordinates(vectors: List[Element], w: Element) -> Optional[List[Fraction]]:
    support = sorted(set(w.coeffs).union(*[v.coeffs.keys() for v in vectors]))
    a = QMatrix.from_rows([[v.coeffs.get(r, 0) for v in vectors] for r in support], len(vectors))
    return solve_linear(a, [w.coeffs.get(r, 0) for r in support])


def lambda_tensor(L: LieAlgebra, f: Element, ab: AdaptedBasis, full: bool = False) -> LambdaTensor:
    """Expand the double brackets in the adapted basis.

    Only the coordinates landing in the top weight are needed by the matrices;
    ``full=True`` computes every target weight.
    """
    lam = LambdaTensor()
    top = ab.top
    weights = set(ab.weights)
    for m_i, _delta in ab.centre_profile:
        centre = ab.centre_vectors(m_i)
        for m_k in ab.weights:
            m_j = m_k + m_i - 2
            if not full and m_j != top:
                continue
            fx = [L.bracket(f, x) for x in ab.vectors[m_k]]
            for q, fxq in enumerate(fx):
                for t, v in enumerate(centre):
                    w = L.bracket(fxq, v)
                    if not w:
                        continue
                    if m_j not in weights:
                        raise ArithmeticError(f"[[f, x], v] of weight {m_j} lies outside g^e")
                    coords = _coordinates(ab.vectors[m_j], w)
                    if coords is None:
                        raise ArithmeticError("[[f, x], v] lies outside g^e")
                    for p, c in enumerate(coords):
                        if c:
                            lam.entries[(m_k, q, m_i, t, m_j, p)] = c
    return lam


# --------------------------------------------------------------------------
# parameter matrices


@dataclass(frozen=True)
class ParamMatrix:
    """sum_t alpha_t * terms[t], each term a rows x cols rational matrix."""

    rows: int
    cols: int
    terms: Tuple[QMatrix, ...]
    zero_case: bool = False

    @property
    def num_params(self) -> int:
        return len(self.terms)

    def specialize(self, alpha) -> QMatrix:
        if len(alpha) != self.num_params:
            raise ValueError("wrong number of parameters")
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for a, m in zip(alpha, self.terms):
            if not a:
                continue
            for i in range(self.rows):
                for j in range(self.cols):
                    if m[i, j]:
                        out[i][j] += a * m[i, j]
        return QMatrix.from_rows(out, self.cols)

    def poly_rows(self) -> List[List[MultiPoly]]:
        return [[MultiPoly.linear([m[i, j] for m in self.terms], self.num_params)
                 for j in range(self.cols)] for i in range(self.rows)]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.poly_rows())


def build_param_matrix(ab: AdaptedBasis, lam: LambdaTensor, l: int) -> Tuple[ParamMatrix, int, Optional[int]]:
    """M(l, alpha) for the l-th centre weight (1-based, 2 <= l <= s).

    Returns the matrix with m_i and m_k; m_k is None when the required weight
    is missing from g^e, in which case the matrix is the zero d_r x 1 matrix.
    """
    profile = ab.centre_profile
    if not 2 <= l <= len(profile):
        raise ValueError(f"l must lie in 2..{len(profile)}")
    m_i, delta = profile[l - 1]
    top, d_top = ab.top, ab.d_top
    m_k = top - m_i + 2
    if m_k not in ab.vectors:
        zero = QMatrix.zeros(d_top, 1)
        return ParamMatrix(d_top, 1, (zero,) * delta, zero_case=True), m_i, None
    cols = len(ab.vectors[m_k])
    terms = tuple(
        QMatrix.from_rows([[lam.get(m_k, q, m_i, t, top, p) for q in range(cols)]
                           for p in range(d_top)], cols)
        for t in range(delta))
    return ParamMatrix(d_top, cols, terms), m_i, m_k


@dataclass(frozen=True)
class MatrixVerdict:
    verdict: str
    method: str

    @property
    def surjective(self) -> bool:
        return self.verdict == SURJECTIVE_ALL


def check_matrix(m: ParamMatrix, seed: int = 0) -> MatrixVerdict:
    """Decide whether M(alpha) has rank ``rows`` for every nonzero complex alpha."""
    if m.zero_case:
        return MatrixVerdict(NOT_SURJECTIVE, "zero_case")
    if m.rows > m.cols:
        return MatrixVerdict(NOT_SURJECTIVE, "rank")
    if m.num_params == 1:
        ok = rank(m.terms[0]) == m.rows
        return MatrixVerdict(SURJECTIVE_ALL if ok else NOT_SURJECTIVE, "rank")
    # a full-rank specialization proves full generic rank; otherwise the minors decide
    rng = random.Random(seed)
    generic = any(
        rank(m.specialize([rng.randint(-50, 50) or 1 for _ in range(m.num_params)])) == m.rows
        for _ in range(3))
    minors = maximal_minors(m)
    if not generic and not minors:
        return MatrixVerdict(NOT_SURJECTIVE, "groebner")
    ok = origin_only(minors)
    return MatrixVerdict(SURJECTIVE_ALL if ok else NOT_SURJECTIVE, "groebner")


# --------------------------------------------------------------------------
# whole-orbit verification


@dataclass
class OrbitData:
    """Intermediate objects of the pipeline, kept for inspection and tests."""

    characteristic: Characteristic
    h: Element
    triple: Sl2Triple
    ge: GradedSubspace
    z: GradedSubspace
    basis: AdaptedBasis


@dataclass
class MatrixRecord:
    l: int
    m_i: int
    m_k: Optional[int]
    rows: int
    cols: int
    num_params: int
    method: str
    verdict: str
    redundant: bool = False

    def as_dict(self) -> dict:
        return {"l": self.l, "m_i": self.m_i, "m_k": self.m_k, "rows": self.rows,
                "cols": self.cols, "num_params": self.num_params, "method": self.method,
                "verdict": self.verdict, "redundant": self.redundant}


@dataclass
class OrbitReport:
    algebra: str
    characteristic: Tuple[int, ...]
    dim_centralizer: int
    dim_centre: int
    centre_weights: List[int]
    m_r: int
    matrices: List[MatrixRecord]
    elapsed_ms: int = 0
    ordinal: Optional[int] = None

    @property
    def checks(self) -> List[MatrixRecord]:
        """The matrices that count as genuine checks (the l = s shortcut excluded)."""
        return [r for r in self.matrices if not r.redundant]

    @property
    def verdict(self) -> str:
        ok = all(r.verdict == SURJECTIVE_ALL for r in self.matrices)
        return P_HOLDS if ok else NOT_CERTIFIED

    def computed(self) -> dict:
        """Invariants keyed like a catalog ``expected`` block."""
        return {
            "dim_centralizer": self.dim_centralizer,
            "dim_centre": self.dim_centre,
            "centre_weights": list(self.centre_weights),
            "m_r": self.m_r,
            "matrix_checks": [{"m_i": r.m_i, "m_k": r.m_k, "rows": r.rows, "cols": r.cols,
                               "num_params": r.num_params} for r in self.checks],
            "verdict": self.verdict,
        }


def run_pipeline(L: LieAlgebra, c: Characteristic, which: int = 0) -> OrbitData:
    stage = "neutral element"
    try:
        h = cartan_from_characteristic(L, c)
        stage = "sl2-triple"
        triple = synthesize_triple(L, c, which=which)
        stage = "centralizer"
        ge_space = centralizer(L, triple.e)
        stage = "centre"
        z_space = lie_centre(L, ge_space)
        stage = "grading"
        ge = grade_by_h(L, h, ge_space)
        z = grade_by_h(L, h, z_space)
        stage = "adapted basis"
        ab = adapted_basis(L, triple, ge, z)
    except OrbitError:
        raise
    except Exception as exc:
        raise OrbitError(stage, str(exc)) from exc
    return OrbitData(c, h, triple, ge, z, ab)


def verify_orbit(L: LieAlgebra, c: Characteristic, which: int = 0,
                 redundant_checks: bool = True) -> OrbitReport:
    """Run the full certification for one characteristic.

    The matrix for l = s with d_r = 1 is always surjective; it is skipped
    unless ``redundant_checks`` asks for it as a sanity check.
    """
    start = time.perf_counter()
    report = certify(L, run_pipeline(L, c, which), redundant_checks)
    report.elapsed_ms = int(round((time.perf_counter() - start) * 1000))
    return report


def certify(L: LieAlgebra, data: OrbitData, redundant_checks: bool = True) -> OrbitReport:
    """Build and check every M(l, alpha) for an already computed pipeline."""
    start = time.perf_counter()
    ab = data.basis
    try:
        lam = lambda_tensor(L, data.triple.f, ab)
    except Exception as exc:
        raise OrbitError("lambda", str(exc)) from exc
    s = len(ab.centre_profile)
    records: List[MatrixRecord] = []
    for l in range(2, s + 1):
        redundant = l == s and ab.d_top == 1
        if redundant and not redundant_checks:
            continue
        try:
            m, m_i, m_k = build_param_matrix(ab, lam, l)
            v = check_matrix(m)
        except Exception as exc:
            raise OrbitError(f"matrix l={l}", str(exc)) from exc
        records.append(MatrixRecord(l, m_i, m_k, m.rows, m.cols, m.num_params,
                                    v.method, v.verdict, redundant))
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return OrbitReport(
        algebra=str(L.simple_type),
        characteristic=tuple(data.characteristic.labels),
        dim_centralizer=data.ge.dim,
        dim_centre=data.z.dim,
        centre_weights=data.z.weight_multiset(),
        m_r=ab.top,
        matrices=records,
        elapsed_ms=elapsed,
    )
