"""Degree slices of the Koszul complex of a parametrization, syzygy bases,
Hilbert-style dimension summaries, and the bidegree region where the
determinant construction is valid.

The Koszul complex on f1..f4 has K_p = sum of free summands e_I over the
size-p subsets I of {1,2,3,4}, with differential
    e_I -> sum over i in I of (-1)^pos(i, I) * f_i * e_(I minus i),
pos 0-based within the sorted subset.  Slicing in one bidegree mu turns each
summand into the graded piece of bidegree mu - p*d (d the bidegree of the
f_i) and each differential into an exact rational block matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .linalg import (
    GradedBasis,
    QMatrix,
    coeff_vector,
    graded_basis,
    multiplication_matrix,
    poly_from_vector,
    rref_nullspace,
)
from .poly import Bidegree, BigradedPoly, Parametrization, as_bidegree


class InvalidBidegreeError(ValueError):
    """Parametrization bidegree components must be >= 1."""


@dataclass(frozen=True)
class KoszulSlice:
    """One bidegree slice of a Koszul differential, with its block layout.

    Blocks of columns are indexed by size-p subsets of {1,2,3,4}, blocks of
    rows by size-(p-1) subsets, both in lexicographic subset order; each
    carries the graded basis of the corresponding shifted piece.
    """

    p: int
    degree: Bidegree
    matrix: QMatrix
    row_blocks: tuple[tuple[tuple[int, ...], GradedBasis], ...]
    col_blocks: tuple[tuple[tuple[int, ...], GradedBasis], ...]


@dataclass(frozen=True)
class SyzygyBasis:
    """Independent degree-nu syzygies of f1..f4, one 4-tuple per column."""

    nu: Bidegree
    columns: tuple[tuple[BigradedPoly, BigradedPoly, BigradedPoly, BigradedPoly], ...]

    def __len__(self) -> int:
        return len(self.columns)


@dataclass(frozen=True)
class RegionSpec:
    """Corners of the two shifted quadrants whose union is the set of
    bidegrees where the determinant construction applies."""

    e: Bidegree
    corners: tuple[Bidegree, Bidegree]


@dataclass(frozen=True)
class ComplexSummary:
    nu: Bidegree
    dims: tuple[int, int, int, int]
    euler: int
    macrae_degree: int


def koszul_slice(F: Parametrization, p: int, target_degree) -> KoszulSlice:
    """Exact matrix of the p-th Koszul differential in one bidegree slice."""
    if not 1 <= p <= 4:
        raise ValueError("homological index must be in 1..4")
    mu = as_bidegree(target_degree)
    d = F.bidegree
    col_deg = mu - p * d
    row_deg = mu - (p - 1) * d
    col_basis = graded_basis(col_deg)
    row_basis = graded_basis(row_deg)

    col_subsets = list(combinations((1, 2, 3, 4), p))
    row_subsets = list(combinations((1, 2, 3, 4), p - 1))
    row_offset = {J: k * row_basis.dim for k, J in enumerate(row_subsets)}

    mult = [multiplication_matrix(f, col_deg) for f in F.polys]

    M = QMatrix.zeros(row_basis.dim * len(row_subsets), col_basis.dim * len(col_subsets))
    for bj, I in enumerate(col_subsets):
        c0 = bj * col_basis.dim
        for pos, i in enumerate(I):
            J = tuple(x for x in I if x != i)
            r0 = row_offset[J]
            sign = -1 if pos % 2 else 1
            block = mult[i - 1]
            for r in range(block.rows):
                src = block.data[r]
                dst = M.data[r0 + r]
                for c in range(block.cols):
                    val = src[c]
                    if val:
                        dst[c0 + c] = sign * val
    return KoszulSlice(
        p=p,
        degree=mu,
        matrix=M,
        row_blocks=tuple((J, row_basis) for J in row_subsets),
        col_blocks=tuple((I, col_basis) for I in col_subsets),
    )


def z_dim(F: Parametrization, p: int, nu) -> int:
    """Dimension of the kernel of the p-th Koszul differential on the slice
    whose column components have bidegree nu (module degree nu + p*d)."""
    if not 1 <= p <= 3:
        raise ValueError("kernel dimensions are exposed for p in 1..3")
    nu = as_bidegree(nu)
    sl = koszul_slice(F, p, nu + p * F.bidegree)
    _, nullbasis = rref_nullspace(sl.matrix)
    return len(nullbasis)


def syzygy_basis(F: Parametrization, nu) -> SyzygyBasis:
    """Canonical basis of the degree-nu syzygies of f1..f4.

    Columns come from the canonical nullspace of the first Koszul slice;
    every column (a1..a4) satisfies sum(a_i * f_i) = 0 exactly.
    """
    nu = as_bidegree(nu)
    sl = koszul_slice(F, 1, nu + F.bidegree)
    _, nullbasis = rref_nullspace(sl.matrix)
    basis = graded_basis(nu)
    n = basis.dim
    columns = []
    for vec in nullbasis:
        column = tuple(
            poly_from_vector(vec[i * n : (i + 1) * n], basis) for i in range(4)
        )
        columns.append(column)
    return SyzygyBasis(nu=nu, columns=tuple(columns))


def region(e) -> RegionSpec:
    """Corners (2*e1-1, e2-1) and (e1-1, 2*e2-1) bounding the two quadrants
    of usable evaluation bidegrees for a parametrization of bidegree e."""
    e = as_bidegree(e)
    if e.d1 < 1 or e.d2 < 1:
        raise InvalidBidegreeError(f"bidegree components must be >= 1, got {e}")
    return RegionSpec(
        e=e,
        corners=(
            Bidegree(2 * e.d1 - 1, e.d2 - 1),
            Bidegree(e.d1 - 1, 2 * e.d2 - 1),
        ),
    )


def suggested_nu(e) -> Bidegree:
    """Default evaluation bidegree: the corner (2*e1-1, e2-1)."""
    e = as_bidegree(e)
    return Bidegree(2 * e.d1 - 1, e.d2 - 1)


def in_good_region(e, nu) -> bool:
    """True iff nu dominates one of the two corners, i.e. the degree-nu slice
    is outside the torsion-affected region."""
    e = as_bidegree(e)
    nu = as_bidegree(nu)
    c1 = Bidegree(2 * e.d1 - 1, e.d2 - 1)
    c2 = Bidegree(e.d1 - 1, 2 * e.d2 - 1)
    return nu.dominates(c1) or nu.dominates(c2)


def complex_summary(F: Parametrization, nu) -> ComplexSummary:
    """Slice dimensions (dim S_nu, dim Z1, dim Z2, dim Z3) plus the Euler
    characteristic and the predicted determinant degree."""
    nu = as_bidegree(nu)
    h0 = graded_basis(nu).dim
    h1 = z_dim(F, 1, nu)
    h2 = z_dim(F, 2, nu)
    h3 = z_dim(F, 3, nu)
    return ComplexSummary(
        nu=nu,
        dims=(h0, h1, h2, h3),
        euler=h0 - h1 + h2 - h3,
        macrae_degree=h1 - 2 * h2 + 3 * h3,
    )
