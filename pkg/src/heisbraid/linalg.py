"""Exact linear algebra over the rationals.

Vectors are dicts {index: Fraction} (zero entries absent); matrices are
dicts of sparse rows.  Elimination switches to dense lists below the
column cutover, sparse dict rows above it.
"""

from __future__ import annotations

from fractions import Fraction

DENSE_CUTOVER = 64

F0 = Fraction(0)
F1 = Fraction(1)


def vec_add(u, v, c=F1):
    """u + c*v for sparse vectors."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, F0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_scale(u, c):
    if not c:
        return {}
    return {k: c * x for k, x in u.items()}


def sparse_to_dense(u, n):
    out = [F0] * n
    for k, x in u.items():
        out[k] = x
    return out


def dense_to_sparse(row):
    return {j: x for j, x in enumerate(row) if x}


class Echelon:
    """Row-echelon basis of a subspace of Q^n.

    Rows are forward-reduced only (each row's minimal support column is
    its pivot, with coefficient 1); inserting never rewrites old rows,
    which keeps incremental construction cheap.  `rref()` back-substitutes
    in place when callers need fully reduced rows.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = {}  # pivot column -> sparse row

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec, record=None):
        """Residue of vec modulo the row space (ascending-pivot sweep).

        With `record` (a dict), accumulates the coefficients of the
        stored rows used, so vec = sum(record[p] * row_p) + residue.
        """
        import heapq

        v = dict(vec)
        rows = self.rows
        work = [p for p in v if p in rows]
        heapq.heapify(work)
        seen = set(work)
        while work:
            p = heapq.heappop(work)
            c = v.get(p)
            if not c:
                continue
            row = rows[p]
            if record is not None:
                record[p] = record.get(p, F0) + c
            for k, x in row.items():
                y = v.get(k, F0) - c * x
                if y:
                    v[k] = y
                    if k not in seen and k in rows:
                        heapq.heappush(work, k)
                        seen.add(k)
                else:
                    v.pop(k, None)
        return v

    def express(self, vec):
        """Coordinates of vec over the stored rows, or None if outside."""
        record = {}
        residue = self.reduce(vec, record)
        return None if residue else record

    def add(self, vec):
        """Insert vec; return the new pivot column, or None if dependent."""
        v = self.reduce(vec)
        if not v:
            return None
        p = min(v)
        inv = F1 / v[p]
        self.rows[p] = vec_scale(v, inv)
        return p

    def rref(self):
        """Back-substitute so each row meets pivot columns only at its own."""
        for p in sorted(self.rows, reverse=True):
            row = self.rows[p]
            hot = sorted(k for k in row if k != p and k in self.rows)
            while hot:
                q = hot[0]
                c = row.get(q)
                if c:
                    row = vec_add(row, self.rows[q], -c)
                hot = sorted(k for k in row if k != p and k in self.rows)
            self.rows[p] = row
        return self

    def contains(self, vec):
        return not self.reduce(vec)

    def pivot_cols(self):
        return sorted(self.rows)

    def free_cols(self):
        piv = set(self.rows)
        return [j for j in range(self.ncols) if j not in piv]


def echelon_of(rows, ncols):
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    return ech


def rank_of(rows, ncols):
    return echelon_of(rows, ncols).rank


def nullspace(rows, ncols):
    """Basis of {x in Q^ncols : A x = 0}, A given by sparse rows."""
    ech = echelon_of(rows, ncols).rref()
    piv = ech.pivot_cols()
    basis = []
    for f in ech.free_cols():
        x = {f: F1}
        for p in piv:
            c = ech.rows[p].get(f)
            if c:
                x[p] = -c
        basis.append(x)
    return basis


def solve(rows, ncols, b):
    """One solution of A x = b, or None if inconsistent."""
    aug = Echelon(ncols + 1)
    for i, r in enumerate(rows):
        row = dict(r)
        c = b.get(i) if isinstance(b, dict) else (b[i] if i < len(b) else F0)
        if c:
            row[ncols] = Fraction(c)
        aug.add(row)
    if ncols in aug.rows:
        return None
    aug.rref()
    x = {}
    for p in sorted(aug.rows, reverse=True):
        row = aug.rows[p]
        s = row.get(ncols, F0)
        for j, c in row.items():
            if j != p and j != ncols:
                s -= c * x.get(j, F0)
        if s:
            x[p] = s
    return x


def solve_and_nullspace(rows, ncols, b):
    """Particular solution (or None) together with a nullspace basis."""
    return solve(rows, ncols, b), nullspace(rows, ncols)


class GradedEchelon:
    """A family of Echelons keyed by the degree of (homogeneous) rows.

    Degrees partition the ambient coordinates; reducing a vector only
    touches the block it lives in, which keeps fill-in local.
    """

    def __init__(self, ncols, degrees):
        self.ncols = ncols
        self.degrees = degrees
        self.blocks = {}

    def _key(self, vec):
        ks = {self.degrees[i] for i in vec}
        assert len(ks) == 1, f"inhomogeneous vector across degrees {sorted(ks)}"
        return ks.pop()

    def _block(self, key):
        blk = self.blocks.get(key)
        if blk is None:
            blk = self.blocks[key] = Echelon(self.ncols)
        return blk

    def add(self, vec):
        if not vec:
            return None
        return self._block(self._key(vec)).add(vec)

    def _split(self, vec):
        groups = {}
        for i, c in vec.items():
            groups.setdefault(self.degrees[i], {})[i] = c
        return groups

    def reduce(self, vec):
        out = {}
        for k, g in self._split(vec).items():
            out.update(self._block(k).reduce(g))
        return out

    def express(self, vec):
        out = {}
        for k, g in self._split(vec).items():
            coords = self._block(k).express(g)
            if coords is None:
                return None
            out.update(coords)
        return out

    @property
    def rank(self):
        return sum(b.rank for b in self.blocks.values())

    @property
    def rows(self):
        out = {}
        for b in self.blocks.values():
            out.update(b.rows)
        return out

    def pivot_cols(self):
        out = []
        for b in self.blocks.values():
            out.extend(b.pivot_cols())
        return sorted(out)

    def free_cols(self):
        piv = set(self.pivot_cols())
        return [j for j in range(self.ncols) if j not in piv]


class Quotient:
    """Q^n / span(relations), with projection and a fixed section.

    With `degrees` given, relations are assumed homogeneous and the
    elimination is blocked per degree.
    """

    def __init__(self, ambient_dim, relations, degrees=None):
        self.ambient_dim = ambient_dim
        if degrees is None:
            self.ech = echelon_of(relations, ambient_dim)
        else:
            self.ech = GradedEchelon(ambient_dim, degrees)
            for r in relations:
                self.ech.add(r)
        self.reps = self.ech.free_cols()  # ambient indices of representatives
        self.index = {c: i for i, c in enumerate(self.reps)}
        self.dim = len(self.reps)

    def project(self, vec):
        """Coordinates of the class of vec in the representative basis."""
        v = self.ech.reduce(vec)
        return {self.index[k]: c for k, c in v.items()}

    def section(self, coords):
        """Ambient representative of a coordinate vector."""
        return {self.reps[i]: c for i, c in coords.items()}


def quotient_basis(ambient_dim, relations, degrees=None):
    return Quotient(ambient_dim, relations, degrees)


class RatMatrix:
    """Exact rational matrix, sparse rows; dense kernels below the cutover."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = {}
        if rows:
            for i, r in rows.items():
                clean = {j: Fraction(c) for j, c in r.items() if c}
                if clean:
                    self.rows[i] = clean

    @classmethod
    def from_dense(cls, data):
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        rows = {i: dense_to_sparse(r) for i, r in enumerate(data)}
        return cls(nrows, ncols, rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {i: {i: F1} for i in range(n)})

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, ncols)

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(sorted((i, tuple(sorted(r.items()))) for i, r in self.rows.items()))))

    def is_zero(self):
        return not self.rows

    def entry(self, i, j):
        return self.rows.get(i, {}).get(j, F0)

    def set_entry(self, i, j, c):
        c = Fraction(c)
        row = self.rows.setdefault(i, {})
        if c:
            row[j] = c
        else:
            row.pop(j, None)
            if not row:
                self.rows.pop(i, None)

    def __add__(self, other):
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        out = RatMatrix(self.nrows, self.ncols, self.rows)
        for i, r in other.rows.items():
            out.rows[i] = vec_add(out.rows.get(i, {}), r)
            if not out.rows[i]:
                del out.rows[i]
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return RatMatrix(self.nrows, self.ncols)
        return RatMatrix(self.nrows, self.ncols, {i: vec_scale(r, c) for i, r in self.rows.items()})

    def __matmul__(self, other):
        """Matrix product self @ other (composition of column-vector maps)."""
        assert self.ncols == other.nrows, (self.ncols, other.nrows)
        # rows of the product: row_i(self) . other
        out = {}
        for i, r in self.rows.items():
            acc = {}
            for k, c in r.items():
                orow = other.rows.get(k)
                if orow:
                    acc = vec_add(acc, orow, c)
            if acc:
                out[i] = acc
        return RatMatrix(self.nrows, other.ncols, out)

    def apply(self, vec):
        """Matrix times sparse column vector."""
        out = {}
        for i, r in self.rows.items():
            s = F0
            for j, c in r.items():
                x = vec.get(j)
                if x:
                    s += c * x
            if s:
                out[i] = s
        return out

    def transpose(self):
        out = {}
        for i, r in self.rows.items():
            for j, c in r.items():
                out.setdefault(j, {})[i] = c
        return RatMatrix(self.ncols, self.nrows, out)

    def columns(self):
        cols = {}
        for i, r in self.rows.items():
            for j, c in r.items():
                cols.setdefault(j, {})[i] = c
        return cols

    def rank(self):
        return rank_of(self.rows.values(), self.ncols)

    def is_invertible(self):
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self):
        """Exact inverse; raises if singular."""
        assert self.nrows == self.ncols
        n = self.nrows
        if n <= DENSE_CUTOVER:
            return self._inverse_dense()
        # sparse Gauss-Jordan on [A | I]
        aug = Echelon(2 * n)
        for i in range(n):
            row = dict(self.rows.get(i, {}))
            row[n + i] = F1
            aug.add(row)
        aug.rref()
        inv_rows = {}
        for p, row in aug.rows.items():
            if p >= n:
                raise ZeroDivisionError("matrix is singular")
            inv_rows[p] = {j - n: c for j, c in row.items() if j >= n}
        if len(inv_rows) < n:
            raise ZeroDivisionError("matrix is singular")
        return RatMatrix(n, n, inv_rows)

    def _inverse_dense(self):
        n = self.nrows
        a = [sparse_to_dense(self.rows.get(i, {}), n) + [F1 if j == i else F0 for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            inv = F1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    c = a[r][col]
                    a[r] = [x - c * y for x, y in zip(a[r], a[col])]
        return RatMatrix.from_dense([row[n:] for row in a])

    def to_dense(self):
        return [sparse_to_dense(self.rows.get(i, {}), self.ncols) for i in range(self.nrows)]

    def __repr__(self):
        return f"RatMatrix({self.nrows}x{self.ncols}, {sum(len(r) for r in self.rows.values())} nz)"
