"""Exact sparse linear algebra: rank, kernel, image, solve with chosen lifts.

Everything reduces to one Gauss-Jordan pass that records the row operations,
so a single decomposition answers rank/kernel/image questions and supports
any number of later solves against the same matrix.  The final reduced rows
form the reduced row echelon form, which is unique, so every output is
canonical no matter which pivot order the elimination used internally.
"""

from .errors import SchemaError

DENSE_DENSITY = 0.25  # switch to natural-order pivoting above this density


class SparseMatrix:
    """Immutable-by-convention sparse matrix over an exact field.

    entries maps (row, col) -> nonzero scalar; no duplicates, no stored zeros.
    """

    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(self, rows, cols, field, entries=None):
        self.rows = rows
        self.cols = cols
        self.field = field
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise SchemaError(f"entry ({r},{c}) outside {rows}x{cols}")
            if (r, c) in clean:
                raise SchemaError(f"duplicate entry at ({r},{c})")
            v = field.of(v)
            if not field.is_zero(v):
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, field, dense_rows):
        rows = len(dense_rows)
        cols = len(dense_rows[0]) if rows else 0
        entries = {}
        for r, row in enumerate(dense_rows):
            if len(row) != cols:
                raise SchemaError("ragged rows")
            for c, v in enumerate(row):
                v = field.of(v)
                if not field.is_zero(v):
                    entries[(r, c)] = v
        return cls(rows, cols, field, entries)

    @classmethod
    def from_columns(cls, field, columns, rows):
        entries = {}
        for c, col in enumerate(columns):
            for r, v in enumerate(col):
                v = field.of(v)
                if not field.is_zero(v):
                    entries[(r, c)] = v
        return cls(rows, len(columns), field, entries)

    @classmethod
    def identity(cls, n, field):
        return cls(n, n, field, {(i, i): field.one for i in range(n)})

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def column(self, c):
        f = self.field
        col = [f.zero] * self.rows
        for (r, cc), v in self.entries.items():
            if cc == c:
                col[r] = v
        return col

    def to_dense(self):
        f = self.field
        out = [[f.zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def mul_vec(self, vec):
        if len(vec) != self.cols:
            raise SchemaError("dimension mismatch in mul_vec")
        f = self.field
        out = [f.zero] * self.rows
        for (r, c), v in self.entries.items():
            if not f.is_zero(vec[c]):
                out[r] = f.add(out[r], f.mul(v, vec[c]))
        return out

    def transpose(self):
        return SparseMatrix(
            self.cols, self.rows, self.field,
            {(c, r): v for (r, c), v in self.entries.items()})

    def density(self):
        cells = self.rows * self.cols
        return len(self.entries) / cells if cells else 0.0

    def nnz(self):
        return len(self.entries)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.field == other.field
                and self.entries == other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


class Decomposition:
    """Row-reduction data for one matrix: rank, bases, and solve support.

    rref_rows[i] is a dict col->value; pivots[i] = (i, pivot_col) refers to
    rref_rows, sorted by pivot column.  ops_rows (same indexing, plus the
    zero rows after rank) applies the recorded row operations to any
    right-hand side, so E @ M = RREF holds exactly.
    """

    def __init__(self, matrix, rank, pivots, rref_rows, ops_rows):
        self.matrix = matrix
        self.rank = rank
        self.pivots = pivots
        self.rref_rows = rref_rows
        self.ops_rows = ops_rows

    def pivot_cols(self):
        return [c for _, c in self.pivots]

    def kernel_basis(self):
        """Canonical RREF kernel basis, one vector per free column."""
        f = self.matrix.field
        pivot_of_col = {c: i for i, c in enumerate(self.pivot_cols())}
        basis = []
        for free in range(self.matrix.cols):
            if free in pivot_of_col:
                continue
            v = [f.zero] * self.matrix.cols
            v[free] = f.one
            for c, i in pivot_of_col.items():
                coeff = self.rref_rows[i].get(free)
                if coeff is not None:
                    v[c] = f.neg(coeff)
            basis.append(v)
        return basis

    def image_basis(self):
        """The original columns at the pivot positions."""
        return [self.matrix.column(c) for c in self.pivot_cols()]

    def apply_ops(self, b):
        f = self.matrix.field
        out = []
        for row in self.ops_rows:
            s = f.zero
            for j, v in row.items():
                if not f.is_zero(b[j]):
                    s = f.add(s, f.mul(v, b[j]))
            out.append(s)
        return out

    def solve(self, b):
        """One solution of M x = b (free variables zero), or None."""
        f = self.matrix.field
        if len(b) != self.matrix.rows:
            raise SchemaError("dimension mismatch in solve")
        y = self.apply_ops(b)
        for i in range(self.rank, len(y)):
            if not f.is_zero(y[i]):
                return None
        x = [f.zero] * self.matrix.cols
        for i, (_, c) in enumerate(self.pivots):
            x[c] = y[i]
        return x


def decompose(M):
    """Gauss-Jordan with recorded row operations.

    Pivot selection is Markowitz fill-minimizing with a deterministic
    (row, col) tie-break on sparse inputs, natural column order on dense
    ones; both finish in the unique RREF.
    """
    f = M.field
    rows = M.row_dicts()
    m = len(rows)
    ops = [{i: f.one} for i in range(m)]
    markowitz = M.density() <= DENSE_DENSITY

    col_count = {}
    for row in rows:
        for c in row:
            col_count[c] = col_count.get(c, 0) + 1

    free_rows = set(range(m))  # rows not yet used as pivot rows
    pivots = []  # (row index, col) in selection order

    def pick_pivot():
        best = None
        if markowitz:
            for r in free_rows:
                row = rows[r]
                if not row:
                    continue
                rn = len(row) - 1
                for c, _ in row.items():
                    score = rn * (col_count[c] - 1)
                    key = (score, r, c)
                    if best is None or key < best:
                        best = key
            return None if best is None else (best[1], best[2])
        # dense: first column with a nonzero in a free row, lowest row
        best_c = None
        best_r = None
        for r in free_rows:
            for c in rows[r]:
                if best_c is None or c < best_c or (c == best_c and r < best_r):
                    best_c, best_r = c, r
        return None if best_c is None else (best_r, best_c)

    while True:
        picked = pick_pivot()
        if picked is None:
            break
        pr, pc = picked
        free_rows.discard(pr)
        prow, pops = rows[pr], ops[pr]
        inv = f.inv(prow[pc])
        if inv != f.one:
            for c in list(prow):
                prow[c] = f.mul(prow[c], inv)
            for c in list(pops):
                pops[c] = f.mul(pops[c], inv)
        # eliminate pc everywhere else (Gauss-Jordan: pivot rows included)
        for r in range(m):
            if r == pr:
                continue
            row = rows[r]
            coeff = row.get(pc)
            if coeff is None:
                continue
            rop = ops[r]
            for c, v in prow.items():
                nv = f.sub(row.get(c, f.zero), f.mul(coeff, v))
                if f.is_zero(nv):
                    if c in row:
                        del row[c]
                        col_count[c] -= 1
                else:
                    if c not in row:
                        col_count[c] = col_count.get(c, 0) + 1
                    row[c] = nv
            for c, v in pops.items():
                nv = f.sub(rop.get(c, f.zero), f.mul(coeff, v))
                if f.is_zero(nv):
                    rop.pop(c, None)
                else:
                    rop[c] = nv
        pivots.append((pr, pc))

    pivots.sort(key=lambda rc: rc[1])
    rref_rows = [rows[r] for r, _ in pivots]
    ops_rows = [ops[r] for r, _ in pivots]
    zero_rows = sorted(free_rows) + [r for r, _ in []]
    for r in zero_rows:
        if rows[r]:
            raise AssertionError("unpivoted nonzero row after elimination")
        ops_rows.append(ops[r])
    return Decomposition(M, len(pivots),
                         [(i, c) for i, (_, c) in enumerate(pivots)],
                         rref_rows, ops_rows)


def rank_kernel_image(M):
    """(rank, kernel basis, image basis, decomposition for later solves)."""
    dec = decompose(M)
    return dec.rank, dec.kernel_basis(), dec.image_basis(), dec


def rank(M):
    return decompose(M).rank


def kernel(M):
    return decompose(M).kernel_basis()


def solve(M, b, dec=None):
    """Solve M x = b exactly; None means b is not in the image."""
    return (dec or decompose(M)).solve(b)
