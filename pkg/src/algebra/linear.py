"""
Degreewise linear algebra module.
Provides exact row reduction of ideal slices into quotient bases, kernels and
ranks, on top of sympy's sparse domain matrices.
"""

from typing import Dict, Iterable, List, Sequence, Tuple

from sympy.polys.matrices.sdm import SDM

from src.utils.logger import get_logger

logger = get_logger(__name__)

SparseRow = Dict[int, object]


class DegreeQuotient:
    """
    Quotient of the span of n spanning monomials by an ideal slice.

    Rows are sparse vectors over the spanning set. Columns are eliminated in
    index order, so low column indices become pivots first and the quotient
    basis consists of the surviving high-index columns.
    """

    def __init__(self, size: int, rows: Iterable[SparseRow], domain):
        """
        Reduce the rows spanning the ideal slice.

        Args:
            size: Number of spanning monomials
            rows: Sparse rows (column -> nonzero domain element)
            domain: sympy domain of the coefficients
        """
        self.size = size
        self.domain = domain
        self._pivot_rows: Dict[int, SparseRow] = {}

        killed, dense_rows = self._split_monomial_rows(rows)
        for column in killed:
            self._pivot_rows[column] = {}

        if dense_rows:
            matrix = SDM(dict(enumerate(dense_rows)), (len(dense_rows), size), domain)
            reduced, pivots = matrix.rref()
            for row_index, column in enumerate(pivots):
                row = reduced.get(row_index, {})
                self._pivot_rows[column] = {
                    c: v for c, v in row.items() if c != column
                }

        self.basis_columns: Tuple[int, ...] = tuple(
            c for c in range(size) if c not in self._pivot_rows
        )
        self._position = {c: i for i, c in enumerate(self.basis_columns)}

    @staticmethod
    def _split_monomial_rows(rows: Iterable[SparseRow]) -> Tuple[set, List[SparseRow]]:
        """Peel off rows that kill a single monomial, propagating through the rest."""
        killed: set = set()
        pending = [row for row in rows if row]
        while True:
            remaining = []
            newly_killed = False
            for row in pending:
                row = {c: v for c, v in row.items() if c not in killed}
                if not row:
                    continue
                if len(row) == 1:
                    killed.update(row)
                    newly_killed = True
                else:
                    remaining.append(row)
            pending = remaining
            if not newly_killed:
                return killed, pending

    @property
    def rank(self) -> int:
        return len(self.basis_columns)

    def ideal_rows(self) -> Iterable[SparseRow]:
        """Reduced basis of the ideal slice, one row per pivot column."""
        one = self.domain.one
        for column, row in self._pivot_rows.items():
            yield {column: one, **row}

    def reduce(self, vector: SparseRow) -> Tuple:
        """
        Normal form of a sparse vector over the spanning set.

        Args:
            vector: Column -> coefficient

        Returns:
            Dense coefficient tuple over the quotient basis
        """
        K = self.domain
        result = [K.zero] * self.rank
        for column, coeff in vector.items():
            if not coeff:
                continue
            pivot_row = self._pivot_rows.get(column)
            if pivot_row is None:
                result[self._position[column]] += coeff
                continue
            for free, entry in pivot_row.items():
                result[self._position[free]] -= coeff * entry
        return tuple(result)

    def lift(self, coords: Sequence) -> SparseRow:
        """Sparse vector over the spanning set representing quotient coordinates."""
        return {self.basis_columns[i]: c for i, c in enumerate(coords) if c}


def kernel_basis(columns: Sequence[Sequence], nrows: int, domain) -> List[Tuple]:
    """
    Basis of the kernel of a linear map.

    Args:
        columns: Images of the source basis vectors, each a dense vector of length nrows
        nrows: Dimension of the target
        domain: sympy domain

    Returns:
        Kernel basis vectors as dense tuples over the source basis
    """
    ncols = len(columns)
    if ncols == 0:
        return []
    entries: Dict[int, SparseRow] = {}
    for j, column in enumerate(columns):
        for i, value in enumerate(column):
            if value:
                entries.setdefault(i, {})[j] = value
    if not entries:
        return [tuple(domain.one if k == j else domain.zero for k in range(ncols)) for j in range(ncols)]

    matrix = SDM(entries, (max(nrows, 1), ncols), domain)
    reduced, pivots = matrix.rref()
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [domain.zero] * ncols
        vector[free] = domain.one
        for row_index, pivot in enumerate(pivots):
            entry = reduced.get(row_index, {}).get(free)
            if entry:
                vector[pivot] = -entry
        basis.append(tuple(vector))
    return basis


def matrix_rank(rows: Sequence[Sequence], ncols: int, domain) -> int:
    """Rank of a dense matrix given by rows."""
    entries = {
        i: {j: v for j, v in enumerate(row) if v}
        for i, row in enumerate(rows)
    }
    entries = {i: row for i, row in entries.items() if row}
    if not entries:
        return 0
    _, pivots = SDM(entries, (len(rows), ncols), domain).rref()
    return len(pivots)
