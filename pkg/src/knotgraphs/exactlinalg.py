"""Exact rational sparse linear algebra: ranks, kernels, homology dimensions.

All arithmetic is over Q via `fractions.Fraction` (arbitrary precision,
always in lowest terms, positive denominator), so every rank and homology
dimension below is exact and deterministic.

The elimination core is fraction-free: rows are scaled to coprime integer
vectors and combined by cross-multiplication, with a Markowitz-style pivot
choice ((nnz(row)-1) * (nnz(col)-1), ties broken by lowest row then lowest
column index) to limit fill-in on sparse combinatorial matrices.

Matrices serialize to a plain triplet text format::

    rows cols nnz
    row col num/den          (one line per entry, row-major sorted, 0-indexed)

Values are immutable after construction; computations on distinct matrices
are independent, a single elimination runs single-threaded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

#: The coefficient field: rationals in lowest terms with positive denominator.
Rational = Fraction


class SparseMatrix:
    """An immutable sparse matrix over Q.

    `entries` maps (row, col) to a nonzero Fraction; zero entries are never
    stored and all indices are bounds-checked.
    """

    __slots__ = ("n_rows", "n_cols", "entries")

    def __init__(self, n_rows, n_cols, entries=None):
        if n_rows < 0 or n_cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.n_rows = n_rows
        self.n_cols = n_cols
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise ValueError(f"entry ({r},{c}) outside {n_rows}x{n_cols}")
            v = Fraction(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, rows, n_cols=None):
        """Build from a list of dense row lists (or sparse row dicts)."""
        ent = {}
        width = n_cols or 0
        for r, row in enumerate(rows):
            items = row.items() if isinstance(row, dict) else enumerate(row)
            for c, v in items:
                if v:
                    ent[(r, c)] = Fraction(v)
                width = max(width, c + 1)
        return cls(len(rows), width if n_cols is None else n_cols, ent)

    @classmethod
    def from_columns(cls, n_rows, columns):
        """Build from a list of sparse column dicts {row: value}."""
        ent = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    ent[(r, c)] = Fraction(v)
        return cls(n_rows, len(columns), ent)

    @classmethod
    def zero(cls, n_rows, n_cols):
        return cls(n_rows, n_cols, {})

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    def nnz(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def transpose(self):
        return SparseMatrix(
            self.n_cols, self.n_rows,
            {(c, r): v for (r, c), v in self.entries.items()})

    def column(self, c):
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def apply(self, vec):
        """Matrix-vector product; vec is a sparse dict {col: Fraction}."""
        out = {}
        for (r, c), v in self.entries.items():
            x = vec.get(c)
            if x:
                out[r] = out.get(r, Fraction(0)) + v * x
        return {r: v for r, v in out.items() if v}

    def compose(self, other):
        """self @ other, i.e. apply other first."""
        if other.n_rows != self.n_cols:
            raise ValueError("shape mismatch in composition")
        cols_of_other = {}
        for (r, c), v in other.entries.items():
            cols_of_other.setdefault(c, {})[r] = v
        ent = {}
        for c, col in cols_of_other.items():
            for r, v in self.apply(col).items():
                ent[(r, c)] = v
        return SparseMatrix(self.n_rows, other.n_cols, ent)

    __matmul__ = compose

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix)
                and self.n_rows == other.n_rows
                and self.n_cols == other.n_cols
                and self.entries == other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz()})"

    def to_text(self):
        """Serialize to the documented triplet format."""
        lines = [f"{self.n_rows} {self.n_cols} {self.nnz()}"]
        for (r, c) in sorted(self.entries):
            v = self.entries[(r, c)]
            lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        rows, cols, nnz = map(int, lines[0].split())
        if len(lines) - 1 != nnz:
            raise ValueError("nnz header does not match entry count")
        ent = {}
        for ln in lines[1:]:
            r, c, val = ln.split()
            num, den = val.split("/")
            ent[(int(r), int(c))] = Fraction(int(num), int(den))
        return cls(rows, cols, ent)


def _integer_rows(m):
    """Rows of m scaled to coprime integer vectors (order: ascending row)."""
    by_row = {}
    for (r, c), v in m.entries.items():
        by_row.setdefault(r, {})[c] = v
    out = []
    for r in sorted(by_row):
        row = by_row[r]
        denom_lcm = 1
        for v in row.values():
            d = v.denominator
            denom_lcm = denom_lcm // gcd(denom_lcm, d) * d
        ints = {c: int(v * denom_lcm) for c, v in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        out.append(ints)
    return out


def _normalize_row(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _ff_echelon(int_rows):
    """Fraction-free elimination with Markowitz pivoting.

    Takes integer row dicts, returns the list of (pivot_col, row) pairs in
    elimination order; the rank is its length.  Pivot choice: minimize
    (nnz(row)-1)*(nnz(col)-1), ties by lowest active-row position then
    lowest column index, which makes the run fully deterministic.
    """
    active = [dict(row) for row in int_rows if row]
    echelon = []
    while active:
        col_nnz = {}
        for row in active:
            for c in row:
                col_nnz[c] = col_nnz.get(c, 0) + 1
        best = None
        for ri, row in enumerate(active):
            row_cost = len(row) - 1
            for c in row:
                key = (row_cost * (col_nnz[c] - 1), ri, c)
                if best is None or key < best:
                    best = key
        _, bri, bc = best
        pivot = active.pop(bri)
        pv = pivot[bc]
        remaining = []
        for row in active:
            rv = row.pop(bc, 0)
            if rv:
                new = {}
                for c in row.keys() | pivot.keys():
                    if c == bc:
                        continue
                    val = pv * row.get(c, 0) - rv * pivot.get(c, 0)
                    if val:
                        new[c] = val
                row = _normalize_row(new)
            if row:
                remaining.append(row)
        active = remaining
        echelon.append((bc, pivot))
    return echelon


def rank(m):
    """Dimension of the column space of m over Q."""
    return len(_ff_echelon(_integer_rows(m)))


def _rref(echelon):
    """Turn fraction-free echelon output into reduced row echelon form.

    Returns a list of (pivot_col, row_dict) with pivot coefficient 1 and no
    other pivot column appearing in any row.
    """
    reduced = []
    for pc, irow in echelon:
        row = {c: Fraction(v) for c, v in irow.items()}
        # eliminate previously placed pivots from this row
        while True:
            hit = None
            for qc, qrow in reduced:
                if qc in row:
                    hit = (qc, qrow)
                    break
            if hit is None:
                break
            qc, qrow = hit
            coef = row.pop(qc)
            for c, v in qrow.items():
                if c == qc:
                    continue
                nv = row.get(c, Fraction(0)) - coef * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        pv = row[pc]
        row = {c: v / pv for c, v in row.items()}
        # eliminate the new pivot from earlier rows
        for qc, qrow in reduced:
            coef = qrow.pop(pc, None)
            if coef:
                for c, v in row.items():
                    if c == pc:
                        continue
                    nv = qrow.get(c, Fraction(0)) - coef * v
                    if nv:
                        qrow[c] = nv
                    else:
                        qrow.pop(c, None)
        reduced.append((pc, row))
    return reduced


def kernel_basis(m):
    """A basis of ker(m) as sparse column dicts {col: Fraction}.

    The vectors are linearly independent, each is annihilated by m, and
    there are exactly n_cols - rank(m) of them (one per free column, in
    ascending column order).
    """
    reduced = _rref(_ff_echelon(_integer_rows(m)))
    pivots = {pc for pc, _ in reduced}
    basis = []
    for free in range(m.n_cols):
        if free in pivots:
            continue
        vec = {free: Fraction(1)}
        for pc, row in reduced:
            coef = row.get(free)
            if coef:
                vec[pc] = -coef
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class ChainComplexSlice:
    """One chain complex: basis sizes per degree and differentials d_k.

    The differential at degree k maps degree k to degree k+1, so its matrix
    has basis_sizes[k+1] rows and basis_sizes[k] columns.  Consecutive
    differentials must compose to zero; both conditions are enforced at
    construction time.
    """

    basis_sizes: dict = field(default_factory=dict)
    differentials: dict = field(default_factory=dict)

    def __post_init__(self):
        for k, mat in self.differentials.items():
            src = self.basis_sizes.get(k, 0)
            tgt = self.basis_sizes.get(k + 1, 0)
            if mat.n_cols != src or mat.n_rows != tgt:
                raise ValueError(
                    f"differential at degree {k} is {mat.n_rows}x{mat.n_cols}, "
                    f"expected {tgt}x{src}")
        for k, mat in self.differentials.items():
            nxt = self.differentials.get(k + 1)
            if nxt is not None and not nxt.compose(mat).is_zero():
                raise ValueError(f"d o d != 0 between degrees {k} and {k + 2}")

    def differential(self, k):
        mat = self.differentials.get(k)
        if mat is not None:
            return mat
        return SparseMatrix.zero(self.basis_sizes.get(k + 1, 0),
                                 self.basis_sizes.get(k, 0))

    def degrees(self):
        return sorted(self.basis_sizes)

    def euler_characteristic(self):
        return sum((-1) ** k * s for k, s in self.basis_sizes.items())


def homology_dims(c):
    """Homology dimension per degree: nullity(d_k) - rank(d_{k-1})."""
    dims = {}
    ranks = {k: rank(mat) for k, mat in c.differentials.items()}
    for k, size in c.basis_sizes.items():
        out_rank = ranks.get(k, 0)
        in_rank = ranks.get(k - 1, 0)
        dims[k] = size - out_rank - in_rank
        if dims[k] < 0:
            raise ValueError(f"negative homology dimension at degree {k}")
    return dims


class Echelon:
    """Incremental reduced row echelon over arbitrary hashable coordinates.

    Rows are sparse dicts {key: Fraction}.  Inserted vectors can carry a tag;
    `express` then rewrites a vector as a combination of the tagged inserted
    vectors, which is how quotient complexes and basis rewrites are done.
    """

    def __init__(self):
        self.rows = []          # list of (pivot_key, row_dict, combo_dict)
        self._pivots = {}       # pivot_key -> row index

    def rank(self):
        return len(self.rows)

    @property
    def pivots(self):
        return set(self._pivots)

    def _reduce(self, vec, combo):
        vec = dict(vec)
        combo = dict(combo)
        while True:
            hit = None
            for key in vec:
                idx = self._pivots.get(key)
                if idx is not None:
                    hit = idx
                    break
            if hit is None:
                return vec, combo
            pivot, row, rcombo = self.rows[hit]
            coef = vec[pivot]
            for c, v in row.items():
                nv = vec.get(c, Fraction(0)) - coef * v
                if nv:
                    vec[c] = nv
                else:
                    vec.pop(c, None)
            for t, v in rcombo.items():
                nv = combo.get(t, Fraction(0)) - coef * v
                if nv:
                    combo[t] = nv
                else:
                    combo.pop(t, None)

    def reduce(self, vec):
        """Residual of vec modulo the span; supported on non-pivot keys."""
        residual, _ = self._reduce(vec, {})
        return residual

    def insert(self, vec, tag=None):
        """Add vec to the span.  Returns True if it enlarged the span."""
        combo = {tag: Fraction(1)} if tag is not None else {}
        residual, combo = self._reduce(vec, combo)
        if not residual:
            return False
        pivot = min(residual, key=_pivot_sort_key)
        pv = residual[pivot]
        row = {c: v / pv for c, v in residual.items()}
        rcombo = {t: v / pv for t, v in combo.items()}
        # keep stored rows fully reduced
        for i, (pc, prow, pcombo) in enumerate(self.rows):
            coef = prow.pop(pivot, None)
            if coef:
                for c, v in row.items():
                    if c == pivot:
                        continue
                    nv = prow.get(c, Fraction(0)) - coef * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
                for t, v in rcombo.items():
                    nv = pcombo.get(t, Fraction(0)) - coef * v
                    if nv:
                        pcombo[t] = nv
                    else:
                        pcombo.pop(t, None)
        self._pivots[pivot] = len(self.rows)
        self.rows.append((pivot, row, rcombo))
        return True

    def express(self, vec):
        """Coefficients over inserted tags with vec = sum(c_t * v_t), or None."""
        residual, combo = self._reduce(vec, {})
        if residual:
            return None
        return {t: -v for t, v in combo.items()}

    def contains(self, vec):
        return not self.reduce(vec)


def _pivot_sort_key(key):
    # tuples, ints and strings all appear as coordinate keys; keep the
    # pivot choice deterministic across mixed key types
    return (str(type(key)), key if isinstance(key, (int, str)) else str(key))


@dataclass
class BigradedComplex:
    """Bases and differentials of a family of columns indexed by complexity.

    Each column is a ChainComplexSlice whose integer degree keys ascend along
    the differential.  `bases` holds the labeled basis per (complexity, key)
    and `degree_info` maps (complexity, key) to (level, total degree) so
    homology output can be reported in the natural gradings.
    """

    complex_id: str
    d: int
    columns: dict
    bases: dict
    degree_info: dict

    def column(self, i):
        return self.columns[i]

    def basis(self, i, key):
        return self.bases.get((i, key), [])
