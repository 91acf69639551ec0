"""Dense exact linear algebra over the Scalar field Q(u).

Matrices are row-major grids of Scalars; vectors are plain lists of Scalars.
Everything is decided by exact arithmetic: elimination uses honest division
in the fraction field (no floating point anywhere), subspaces are stored in
reduced row-echelon form so that equality is a syntactic check, and the
inner product on coordinates is the plain dot product, which on 2-form
coefficient vectors agrees with the trace form up to a fixed positive scale.
"""

from __future__ import annotations

from .scalars import Scalar, ZERO, ONE, _coerce


def vec(entries):
    return [e if isinstance(e, Scalar) else _coerce(e) for e in entries]


def zero_vec(n):
    return [ZERO] * n


def vec_add(a, b):
    return [x + y for x, y in zip(a, b, strict=True)]


def vec_sub(a, b):
    return [x - y for x, y in zip(a, b, strict=True)]


def vec_scale(c, a):
    return [c * x for x in a]


def vec_dot(a, b):
    acc = ZERO
    for x, y in zip(a, b, strict=True):
        acc = acc + x * y
    return acc


def vec_is_zero(a):
    return all(x.is_zero for x in a)


def basis_vec(n, k):
    v = zero_vec(n)
    v[k] = ONE
    return v


class Matrix:
    """Rectangular matrix of Scalars."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        self.data = [[e if isinstance(e, Scalar) else _coerce(e) for e in row]
                     for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        m = cls.zeros(n, n)
        for k in range(n):
            m.data[k][k] = ONE
        return m

    @classmethod
    def from_columns(cls, cols):
        n = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    def __getitem__(self, rc):
        return self.data[rc[0]][rc[1]]

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __add__(self, other):
        self._shape_check(other)
        return Matrix([vec_add(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        self._shape_check(other)
        return Matrix([vec_sub(a, b) for a, b in zip(self.data, other.data)])

    def __neg__(self):
        return Matrix([[-e for e in row] for row in self.data])

    def _shape_check(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("dimension mismatch")

    def scale(self, c):
        c = c if isinstance(c, Scalar) else _coerce(c)
        return Matrix([[c * e for e in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            ot = list(zip(*other.data))
            return Matrix([[vec_dot(row, col) for col in ot]
                           for row in self.data])
        if isinstance(other, list):
            return self.apply(other)
        c = _coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    def apply(self, v):
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [vec_dot(row, v) for row in self.data]

    def transpose(self):
        return Matrix([list(col) for col in zip(*self.data)])

    def trace(self):
        acc = ZERO
        for k in range(min(self.rows, self.cols)):
            acc = acc + self.data[k][k]
        return acc

    @property
    def is_zero(self):
        return all(e.is_zero for row in self.data for e in row)

    def is_skew(self):
        if self.rows != self.cols:
            return False
        return all(self.data[i][j] == -self.data[j][i]
                   for i in range(self.rows) for j in range(i, self.cols))

    def is_symmetric(self):
        if self.rows != self.cols:
            return False
        return all(self.data[i][j] == self.data[j][i]
                   for i in range(self.rows) for j in range(i + 1, self.cols))

    def rref(self):
        """Reduced row-echelon form with exact pivots; returns (R, pivots)."""
        m = [row[:] for row in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = None
            for i in range(r, self.rows):
                if not m[i][c].is_zero:
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            pv = m[r][c]
            if pv != ONE:
                m[r] = [e / pv for e in m[r]]
            for i in range(self.rows):
                if i != r and not m[i][c].is_zero:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(m), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """Null space {x : Ax = 0} as a Subspace of dimension cols - rank."""
        R, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = zero_vec(self.cols)
            v[fc] = ONE
            for r, pc in enumerate(pivots):
                v[pc] = -R.data[r][fc]
            basis.append(v)
        return Subspace.from_vectors(self.cols, basis)

    def solve(self, b):
        """One exact solution of Ax = b, or None when inconsistent."""
        if len(b) != self.rows:
            raise ValueError("dimension mismatch")
        aug = Matrix([row + [bi] for row, bi in zip(self.data, b)])
        R, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = zero_vec(self.cols)
        for r, pc in enumerate(pivots):
            x[pc] = R.data[r][self.cols]
        return x

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"

    def pretty(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]"
                         for row in self.data)


class Subspace:
    """Linear subspace given by an RREF basis (canonical representative)."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis_rows, _canonical=False):
        self.ambient_dim = ambient_dim
        if _canonical:
            self.basis = basis_rows
        else:
            self.basis = self._canonicalize(ambient_dim, basis_rows)

    @staticmethod
    def _canonicalize(ambient_dim, rows):
        if not rows:
            return []
        R, pivots = Matrix(rows).rref()
        return [R.data[k] for k in range(len(pivots))]

    @classmethod
    def from_vectors(cls, ambient_dim, vectors):
        return cls(ambient_dim, [v[:] for v in vectors])

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return vec_is_zero(vec_sub(v, self.project(v)))

    def orthogonal_complement(self):
        """Complement for the coordinate dot product; dims add to ambient."""
        if not self.basis:
            full = [basis_vec(self.ambient_dim, k)
                    for k in range(self.ambient_dim)]
            return Subspace.from_vectors(self.ambient_dim, full)
        return Matrix(self.basis).kernel()

    def project(self, v):
        """Orthogonal projection onto the subspace (Gram system, exact)."""
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        if not self.basis:
            return zero_vec(self.ambient_dim)
        B = Matrix(self.basis)
        gram = B * B.transpose()
        rhs = B.apply(v)
        coeffs = gram.solve(rhs)
        out = zero_vec(self.ambient_dim)
        for c, row in zip(coeffs, self.basis):
            out = vec_add(out, vec_scale(c, row))
        return out

    def __repr__(self):
        return f"Subspace(dim={self.dim} in R^{self.ambient_dim})"


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("dimension mismatch")
    return a == b
