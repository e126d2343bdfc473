"""Exact linear algebra over ZZ and QQ on top of sympy's DomainMatrix.

Sparse rows are plain ``{column: value}`` dicts; dense matrices are lists of
rows of ints or Fractions. Nothing here ever sees a float.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Mapping, Sequence, Tuple

from cdsw_shared.rational import Rational, to_fraction
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.sdm import SDM

SparseRow = Mapping[int, Rational]


def _qq(value: Rational):
    value = to_fraction(value)
    return QQ(value.numerator, value.denominator)


def to_domain_matrix(rows: Sequence[Sequence[Rational]]) -> DomainMatrix:
    """Convert a dense rational matrix to a sparse DomainMatrix over QQ."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    sdm = {
        i: {j: _qq(v) for j, v in enumerate(row) if v != 0}
        for i, row in enumerate(rows)
    }
    sdm = {i: row for i, row in sdm.items() if row}
    return DomainMatrix.from_rep(SDM(sdm, (nrows, ncols), QQ))


def from_domain_matrix(matrix: DomainMatrix) -> List[List[Fraction]]:
    """Convert a DomainMatrix back to dense Fraction rows."""
    nrows, ncols = matrix.shape
    dense = [[Fraction(0)] * ncols for _ in range(nrows)]
    for i, row in matrix.to_sparse().rep.items():
        for j, value in row.items():
            dense[i][j] = to_fraction(value)
    return dense


def inverse(rows: Sequence[Sequence[Rational]]) -> List[List[Fraction]]:
    """Exact inverse of a square rational matrix."""
    return from_domain_matrix(to_domain_matrix(rows).to_dense().inv())


def determinant(rows: Sequence[Sequence[Rational]]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    if not rows:
        return Fraction(1)
    return to_fraction(to_domain_matrix(rows).to_dense().det())


def mat_vec(rows: Sequence[Sequence[Rational]], vector: Sequence[Rational]) -> List[Fraction]:
    """Matrix-vector product."""
    return [sum((Fraction(a) * Fraction(b) for a, b in zip(row, vector)), Fraction(0)) for row in rows]


def transpose(rows: Sequence[Sequence[Rational]]) -> List[List[Rational]]:
    """Transpose of a dense matrix."""
    return [list(col) for col in zip(*rows)]


def trace(matrix: DomainMatrix):
    """Trace of a square DomainMatrix, as a domain element."""
    rep = matrix.to_sparse().rep
    total = matrix.domain.zero
    for i, row in rep.items():
        if i in row:
            total += row[i]
    return total


def clear_denominators(row: SparseRow) -> Dict[int, int]:
    """Scale a sparse rational row by the lcm of its denominators."""
    fractions = {col: to_fraction(v) for col, v in row.items() if v != 0}
    if not fractions:
        return {}
    scale = lcm(*(f.denominator for f in fractions.values()))
    return {col: int(f * scale) for col, f in fractions.items()}


@dataclass(frozen=True)
class Echelon:
    """Fraction-free reduced row echelon form of a sparse integer matrix.

    The true RREF is ``rows / denominator``; row ``r`` has its pivot at
    ``pivots[r]`` with entry ``denominator`` and every other pivot column zero.
    """

    ncols: int
    denominator: int
    pivots: Tuple[int, ...]
    rows: Tuple[Dict[int, int], ...]

    @property
    def rank(self) -> int:
        """Number of pivots."""
        return len(self.pivots)

    def reduce(self, vector: SparseRow) -> Dict[int, Fraction]:
        """
        Subtract the row space component of a vector.

        Returns the canonical remainder, supported on non-pivot columns.
        """
        remainder = {col: to_fraction(v) for col, v in vector.items() if v != 0}
        den = self.denominator
        for pivot, row in zip(self.pivots, self.rows):
            coefficient = remainder.get(pivot)
            if not coefficient:
                continue
            factor = coefficient / den
            for col, value in row.items():
                updated = remainder.get(col, Fraction(0)) - factor * value
                if updated:
                    remainder[col] = updated
                else:
                    remainder.pop(col, None)
        return remainder


def echelon(rows: Sequence[SparseRow], ncols: int) -> Echelon:
    """
    Fraction-free row reduction of sparse rational rows.

    Args:
        rows: Sparse rows ``{column: rational}``
        ncols: Number of columns

    Returns:
        The fraction-free RREF with its pivots
    """
    integer_rows = [r for r in (clear_denominators(row) for row in rows) if r]
    if not integer_rows or ncols == 0:
        return Echelon(ncols=ncols, denominator=1, pivots=(), rows=())

    # identical rows add nothing to the span
    unique = {tuple(sorted(r.items())): r for r in integer_rows}
    sdm = {i: {j: ZZ(v) for j, v in r.items()} for i, r in enumerate(unique.values())}
    matrix = DomainMatrix.from_rep(SDM(sdm, (len(sdm), ncols), ZZ))

    reduced, den, pivots = matrix.rref_den()
    rep = reduced.to_sparse().rep
    echelon_rows = tuple(
        {j: int(v) for j, v in rep.get(r, {}).items() if v} for r in range(len(pivots))
    )
    return Echelon(
        ncols=ncols,
        denominator=int(den),
        pivots=tuple(int(p) for p in pivots),
        rows=echelon_rows,
    )


def rank(rows: Sequence[SparseRow], ncols: int) -> int:
    """Rank of a sparse rational matrix."""
    return echelon(rows, ncols).rank
