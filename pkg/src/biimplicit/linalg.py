"""Monomial bases of graded pieces and exact rational dense linear algebra.

All eliminations run over Q via Fraction arithmetic (always reduced), with
pivots chosen by fewest nonzero entries in the candidate row and then smallest
bit size, which keeps intermediate coefficients tame on the sparse
multiplication-map slices this package produces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .poly import Bidegree, BigradedPoly, Monomial, as_bidegree, exact


class DegreeMismatchError(ValueError):
    """Nonzero polynomial offered against a basis of a different bidegree."""


@dataclass(frozen=True)
class GradedBasis:
    """All monomials of one bidegree, in descending lex order."""

    bidegree: Bidegree
    monomials: tuple[Monomial, ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def index_of(self, mono: Monomial) -> int:
        if not self._index:
            self._index.update({m: i for i, m in enumerate(self.monomials)})
        return self._index[mono]


@lru_cache(maxsize=None)
def _graded_basis_cached(d1: int, d2: int) -> GradedBasis:
    deg = Bidegree(d1, d2)
    if d1 < 0 or d2 < 0:
        return GradedBasis(deg, ())
    monos = tuple(
        (i, d1 - i, j, d2 - j)
        for i in range(d1, -1, -1)
        for j in range(d2, -1, -1)
    )
    return GradedBasis(deg, monos)


def graded_basis(deg) -> GradedBasis:
    """Basis of the graded piece of k[s,u,t,v] in the given bidegree.

    Size (d1+1)(d2+1) when both components are >= 0, empty otherwise.
    """
    deg = as_bidegree(deg)
    return _graded_basis_cached(deg.d1, deg.d2)


def coeff_vector(p: BigradedPoly, basis: GradedBasis) -> list:
    """Coordinates of p in the basis; p must be 0 or bihomogeneous of the
    basis bidegree."""
    vec = [0] * basis.dim
    if p.is_zero():
        return vec
    if p.bidegree() != basis.bidegree:
        raise DegreeMismatchError(
            f"polynomial of bidegree {p.bidegree()} against basis of "
            f"bidegree {basis.bidegree}"
        )
    for mono, c in p.terms.items():
        vec[basis.index_of(mono)] = c
    return vec


def poly_from_vector(vec, basis: GradedBasis) -> BigradedPoly:
    """Inverse of coeff_vector."""
    return BigradedPoly(
        {m: c for m, c in zip(basis.monomials, vec) if c}
    )


class QMatrix:
    """Dense matrix over Q, stored row-major as lists of int/Fraction."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: list[list]):
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("data shape does not match rows x cols")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def from_rows(cls, rows: list[list]) -> "QMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(nrows, ncols, [list(r) for r in rows])

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def matmul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("incompatible shapes")
        out = QMatrix.zeros(self.rows, other.cols)
        for i, row in enumerate(self.data):
            orow = out.data[i]
            for k, a in enumerate(row):
                if not a:
                    continue
                brow = other.data[k]
                for j, b in enumerate(brow):
                    if b:
                        orow[j] += a * b
        return out

    def matvec(self, vec: list) -> list:
        if self.cols != len(vec):
            raise ValueError("incompatible shapes")
        out = []
        for row in self.data:
            acc = 0
            for a, x in zip(row, vec):
                if a and x:
                    acc += a * x
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def copy_data(self) -> list[list]:
        return [list(r) for r in self.data]

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            a == b
            for ra, rb in zip(self.data, other.data)
            for a, b in zip(ra, rb)
        )

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols})"


def _row_weight(row: list, start: int) -> tuple[int, int]:
    """Pivot preference key: (nonzero count, total bit size) from `start` on."""
    nonzeros = 0
    bits = 0
    for x in row[start:]:
        if x:
            nonzeros += 1
            f = Fraction(x)
            bits += f.numerator.bit_length() + f.denominator.bit_length()
    return (nonzeros, bits)


def _rref(data: list[list], rows: int, cols: int) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form; returns (data, pivot column list)."""
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        best = -1
        best_key = None
        for i in range(r, rows):
            if data[i][c]:
                key = _row_weight(data[i], c)
                if best < 0 or key < best_key:
                    best, best_key = i, key
        if best < 0:
            continue
        if best != r:
            data[r], data[best] = data[best], data[r]
        prow = data[r]
        piv = prow[c]
        if piv != 1:
            inv = Fraction(1) / Fraction(piv)
            data[r] = prow = [exact(x * inv) if x else 0 for x in prow]
        for i in range(rows):
            if i == r:
                continue
            f = data[i][c]
            if f:
                row = data[i]
                data[i] = [
                    exact(a - f * b) if b else a for a, b in zip(row, prow)
                ]
        pivots.append(c)
        r += 1
    return data, pivots


def rref_nullspace(M: QMatrix) -> tuple[int, list[list]]:
    """Exact rank and canonical nullspace basis of M over Q.

    The basis has one vector per free column, in ascending free-column order;
    each vector carries 1 in its own free coordinate, the negated reduced
    entries in the pivot coordinates, and 0 elsewhere.  M v = 0 exactly.
    """
    data, pivots = _rref(M.copy_data(), M.rows, M.cols)
    rank = len(pivots)
    pivot_set = set(pivots)
    free = [c for c in range(M.cols) if c not in pivot_set]
    basis: list[list] = []
    for fc in free:
        vec = [0] * M.cols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            val = data[i][fc]
            if val:
                vec[pc] = -val
        basis.append(vec)
    return rank, basis


def exact_rank(M: QMatrix) -> int:
    data, pivots = _rref(M.copy_data(), M.rows, M.cols)
    return len(pivots)


def multiplication_matrix(f: BigradedPoly, src) -> QMatrix:
    """Matrix of m -> f*m from the graded piece `src` to `src + bidegree(f)`,
    in the canonical bases of both pieces."""
    src = as_bidegree(src)
    delta = f.bidegree()
    source = graded_basis(src)
    target = graded_basis(src + delta)
    M = QMatrix.zeros(target.dim, source.dim)
    for j, mono in enumerate(source.monomials):
        for fm, c in f.terms.items():
            prod = (
                mono[0] + fm[0],
                mono[1] + fm[1],
                mono[2] + fm[2],
                mono[3] + fm[3],
            )
            M.data[target.index_of(prod)][j] = c
    return M
