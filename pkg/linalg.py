"""
Exact sparse linear algebra over Q(i), backed by sympy's DomainMatrix.

Vectors are sparse dicts column -> GaussianRational. All reduction goes
through DomainMatrix.rref over the QQ_I domain.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from errors import RankDeficiencyError, ResidualError
from scalar import GaussianRational, ZERO

logger = logging.getLogger(__name__)

SparseVector = Dict[int, GaussianRational]


def to_domain(x: GaussianRational):
    return QQ_I(QQ(x.re.numerator, x.re.denominator), QQ(x.im.numerator, x.im.denominator))


def _rational(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def from_domain(element) -> GaussianRational:
    return GaussianRational(_rational(element.x), _rational(element.y))


def row_reduce(rows: Sequence[SparseVector], ncols: int) -> Tuple[List[SparseVector], List[int]]:
    """
    Reduced row echelon form of the given sparse rows.

    Returns the nonzero reduced rows and their pivot columns, in pivot order.
    """
    dok = {}
    for r, row in enumerate(rows):
        for c, value in row.items():
            if value:
                dok[(r, c)] = to_domain(value)
    if not dok:
        return [], []
    matrix = DomainMatrix.from_dok(dok, (len(rows), ncols), QQ_I)
    reduced, pivots = matrix.rref()
    entries: Dict[int, SparseVector] = {}
    for (r, c), value in reduced.to_dok().items():
        if value:
            entries.setdefault(r, {})[c] = from_domain(value)
    return [entries[r] for r in range(len(pivots))], list(pivots)


class RowSpace:
    """
    Row space of a set of relations in reduced echelon form.

    reduce() returns the unique representative of a vector modulo the span
    with zero entries on every pivot column.
    """

    def __init__(self, rows: Sequence[SparseVector], ncols: int):
        self.ncols = ncols
        self.rows, self.pivots = row_reduce(rows, ncols)
        self._by_pivot = dict(zip(self.pivots, self.rows))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vector: SparseVector) -> SparseVector:
        result = {c: v for c, v in vector.items() if v}
        for pivot in self.pivots:
            factor = result.get(pivot)
            if not factor:
                continue
            for c, v in self._by_pivot[pivot].items():
                updated = result.get(c, ZERO) - factor * v
                if updated:
                    result[c] = updated
                else:
                    result.pop(c, None)
        return result


def solve_exact(rows: Sequence[SparseVector], rhs: Sequence[GaussianRational],
                unknowns: int) -> List[GaussianRational]:
    """
    Solve the overdetermined system rows * x = rhs exactly.

    Raises RankDeficiencyError when the columns are dependent and
    ResidualError when the system is inconsistent.
    """
    augmented = []
    for row, value in zip(rows, rhs):
        extended = dict(row)
        if value:
            extended[unknowns] = value
        augmented.append(extended)
    reduced, pivots = row_reduce(augmented, unknowns + 1)
    if unknowns in pivots:
        raise ResidualError("cocycle system is inconsistent: nonzero residual")
    if len(pivots) < unknowns:
        free = {j for j in range(unknowns) if j not in pivots}
        # a pivot row without free entries still fixes its column
        identified = {pivot: row.get(unknowns, ZERO) for row, pivot in zip(reduced, pivots)
                      if not free.intersection(row)}
        missing = sorted(j for j in range(unknowns) if j not in identified)
        raise RankDeficiencyError(
            f"design matrix rank {len(pivots)} < {unknowns}; unidentified columns {missing}",
            identified, missing)
    solution = [ZERO] * unknowns
    for row, pivot in zip(reduced, pivots):
        solution[pivot] = row.get(unknowns, ZERO)
    logger.debug(f"solved {len(rows)} equations for {unknowns} unknowns")
    return solution
