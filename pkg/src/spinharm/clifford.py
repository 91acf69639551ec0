"""Real spin representations of Spin(6) and Spin(7) on Delta = R^8.

The generators are the fixed integer 8x8 matrices

    e1 = +E18+E27-E36-E45    e2 = -E17+E28+E35-E46
    e3 = -E16+E25-E38+E47    e4 = -E15-E26-E37-E48
    e5 = -E13-E24+E57+E68    e6 = +E14-E23-E58+E67
    e7 = +E12-E34-E56+E78                       (n = 7 only)

with E_ij the skew matrix sending the j-th basis spinor to minus the i-th.
They satisfy e_i e_j + e_j e_i = -2 delta_ij exactly, and for n = 6 the
volume element j = e1...e6 is an almost complex structure on Delta that
anticommutes with every e_i.

Multivectors are graded coefficient maps over strictly increasing index
tuples.  A term e_{i1...ik} acts on spinors as the ordered matrix product
e_{i1}...e_{ik}; in particular 2-forms act with no extra factor, while the
lift of a skew matrix A = sum_{i<j} A_ji E_ij into the spin representation
carries the factor 1/2 (the unique factor making [lift(A), X.] = (AX). hold,
so the lift is a Lie algebra homomorphism so(n) -> spin(n)).

For a frame tensor T (one 2-form per frame direction) the module builds
c_T = 1/2 sum_i T_i . T_i and sigma_T = 1/2 sum_i T_i ^ T_i together with
|T|^2 = sum_i sum_{j<k} (T_i)_jk^2.  Under these conventions the difference
c_T - sigma_T is the scalar -(1/2)|T|^2 (kappa = 1/2; a 2-form omega obeys
omega.omega = omega^omega - |omega|^2 because the mixed grade-2 products
cancel in pairs).  Literature statements with the constant 3/2 use a |T|^2
normalization three times ours.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Scalar, ZERO, ONE, _coerce
from .linalg import Matrix

# the unique factor making the so(n) -> spin(n) transport a Lie algebra
# homomorphism; tests mutate it to demonstrate the verification suite trips
LIFT_FACTOR = Fraction(1, 2)

_GEN_TABLE = {
    1: ((1, 8, +1), (2, 7, +1), (3, 6, -1), (4, 5, -1)),
    2: ((1, 7, -1), (2, 8, +1), (3, 5, +1), (4, 6, -1)),
    3: ((1, 6, -1), (2, 5, +1), (3, 8, -1), (4, 7, +1)),
    4: ((1, 5, -1), (2, 6, -1), (3, 7, -1), (4, 8, -1)),
    5: ((1, 3, -1), (2, 4, -1), (5, 7, +1), (6, 8, +1)),
    6: ((1, 4, +1), (2, 3, -1), (5, 8, -1), (6, 7, +1)),
    7: ((1, 2, +1), (3, 4, -1), (5, 6, -1), (7, 8, +1)),
}


def index_pairs(n):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def _perm_sign(seq):
    """Sign of the permutation sorting seq (distinct entries)."""
    sign = 1
    items = list(seq)
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if items[a] > items[b]:
                sign = -sign
    return sign


class MultiVector:
    """Element of the exterior algebra on R^n with Scalar coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if any(not (1 <= i <= n) for i in key):
                raise ValueError(f"index out of range in {key}")
            if len(set(key)) != len(key) or list(key) != sorted(key):
                raise ValueError(f"indices must be strictly increasing: {key}")
            c = c if isinstance(c, Scalar) else _coerce(c)
            if not c.is_zero:
                clean[key] = c
        self.terms = clean

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    @classmethod
    def scalar(cls, n, c):
        return cls(n, {(): c})

    @classmethod
    def vector(cls, n, coords):
        return cls(n, {(i + 1,): c for i, c in enumerate(coords)})

    @classmethod
    def two_form(cls, n, coeffs):
        return cls(n, {key: c for key, c in coeffs.items()})

    def coeff(self, key):
        return self.terms.get(tuple(key), ZERO)

    @property
    def is_zero(self):
        return not self.terms

    def grades(self):
        return sorted({len(k) for k in self.terms})

    def grade(self, k):
        return MultiVector(self.n,
                           {key: c for key, c in self.terms.items()
                            if len(key) == k})

    def is_pure_grade(self, k):
        return all(len(key) == k for key in self.terms)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, ZERO) + c
            if s.is_zero:
                out.pop(key, None)
            else:
                out[key] = s
        return MultiVector(self.n, out)

    def __neg__(self):
        return MultiVector(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = c if isinstance(c, Scalar) else _coerce(c)
        if c.is_zero:
            return MultiVector.zero(self.n)
        return MultiVector(self.n, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, MultiVector) and self.n == other.n
                and self.terms == other.terms)

    def _check(self, other):
        if not isinstance(other, MultiVector) or other.n != self.n:
            raise ValueError("mismatched exterior algebras")

    def wedge(self, other):
        self._check(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                if set(k1) & set(k2):
                    continue
                merged = tuple(sorted(k1 + k2))
                sign = _perm_sign(k1 + k2)
                prev = out.get(merged, ZERO)
                val = prev + c1 * c2 if sign > 0 else prev - c1 * c2
                out[merged] = val
        return MultiVector(self.n, {k: v for k, v in out.items()
                                    if not v.is_zero})

    def interior(self, other):
        """Left contraction X -| m for a grade-1 self."""
        if not self.is_pure_grade(1):
            raise ValueError("interior product needs a grade-1 left factor")
        self._check(other)
        out = {}
        for (l,), cx in self.terms.items():
            for key, c in other.terms.items():
                if l not in key:
                    continue
                pos = key.index(l)
                rest = key[:pos] + key[pos + 1:]
                val = cx * c
                if pos % 2:
                    val = -val
                s = out.get(rest, ZERO) + val
                out[rest] = s
        return MultiVector(other.n, {k: v for k, v in out.items()
                                     if not v.is_zero})

    def vector_coords(self):
        if not self.is_pure_grade(1):
            raise ValueError("not a grade-1 element")
        return [self.terms.get((i,), ZERO) for i in range(1, self.n + 1)]

    def pair_coeffs(self):
        """Grade-2 coefficients flattened in index_pairs order."""
        if not self.is_pure_grade(2):
            raise ValueError("not a grade-2 element")
        return [self.terms.get(p, ZERO) for p in index_pairs(self.n)]

    @classmethod
    def from_pair_coeffs(cls, n, coords):
        return cls(n, {p: c for p, c in zip(index_pairs(n), coords)})

    def to_skew_matrix(self):
        """Grade-2 element as the skew matrix A with A_ji = omega_ij."""
        if not self.is_pure_grade(2):
            raise ValueError("not a grade-2 element")
        m = Matrix.zeros(self.n, self.n)
        for (i, j), c in self.terms.items():
            m.data[i - 1][j - 1] = m.data[i - 1][j - 1] - c
            m.data[j - 1][i - 1] = m.data[j - 1][i - 1] + c
        return m

    @classmethod
    def from_skew_matrix(cls, a: Matrix):
        if not a.is_skew():
            raise ValueError("skew-symmetric matrix required")
        n = a.rows
        return cls(n, {(i, j): a.data[j - 1][i - 1]
                       for (i, j) in index_pairs(n)})

    def norm2(self):
        acc = ZERO
        for c in self.terms.values():
            acc = acc + c * c
        return acc

    def __repr__(self):
        if self.is_zero:
            return "MultiVector(0)"
        body = " + ".join(f"({c})*e{''.join(map(str, k))}" if k else f"({c})"
                          for k, c in sorted(self.terms.items()))
        return f"MultiVector({body})"


class SpinRep:
    """The real spin representation for n = 6 or 7, with cached products."""

    _cache = {}

    def __init__(self, n):
        if n not in (6, 7):
            raise ValueError("unsupported dimension (need 6 or 7)")
        self.n = n
        self.gens = [self._generator(i) for i in range(1, n + 1)]
        self._endo_cache = {}

    @classmethod
    def build(cls, n):
        if n not in cls._cache:
            cls._cache[n] = cls(n)
        return cls._cache[n]

    @staticmethod
    def _generator(i):
        m = Matrix.zeros(8, 8)
        for (a, b, s) in _GEN_TABLE[i]:
            # E_ab has entry (a,b) = -1 and (b,a) = +1
            m.data[a - 1][b - 1] = Scalar.rational(-s)
            m.data[b - 1][a - 1] = Scalar.rational(s)
        return m

    def _tuple_endo(self, key):
        if key in self._endo_cache:
            return self._endo_cache[key]
        if not key:
            out = Matrix.identity(8)
        else:
            out = self.gens[key[0] - 1]
            for i in key[1:]:
                out = out * self.gens[i - 1]
        self._endo_cache[key] = out
        return out

    def endo(self, m: MultiVector) -> Matrix:
        """Spinor endomorphism of a multivector (ordered products)."""
        if m.n != self.n:
            raise ValueError("dimension mismatch")
        out = Matrix.zeros(8, 8)
        for key, c in m.terms.items():
            out = out + self._tuple_endo(key).scale(c)
        return out

    def act(self, m: MultiVector, spinor):
        return self.endo(m).apply(spinor)

    def act_vector(self, coords, spinor):
        """Clifford action of the vector with the given frame coordinates."""
        return self.endo(MultiVector.vector(self.n, coords)).apply(spinor)

    def volume_element(self) -> MultiVector:
        if self.n != 6:
            raise ValueError("unsupported dimension (volume element needs n=6)")
        return MultiVector(6, {(1, 2, 3, 4, 5, 6): ONE})

    def j_matrix(self) -> Matrix:
        return self._tuple_endo((1, 2, 3, 4, 5, 6)) if self.n == 6 else None

    def spin_lift(self, a) -> Matrix:
        """Lift of a skew matrix (or 2-form) into the spin representation."""
        if isinstance(a, MultiVector):
            omega = a
            if not omega.is_pure_grade(2):
                raise ValueError("grade-2 element required")
        else:
            omega = MultiVector.from_skew_matrix(a)
        return self.endo(omega).scale(Scalar.rational(LIFT_FACTOR))


def bracket(a: MultiVector, b: MultiVector) -> MultiVector:
    """2-form commutator: sum_i (e_i -| a) ^ (e_i -| b).

    Acts on spinors through a.b - b.a = 2*[a, b].
    """
    if not (a.is_pure_grade(2) and b.is_pure_grade(2)):
        raise ValueError("grade-2 elements required")
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    out = MultiVector.zero(a.n)
    for i in range(1, a.n + 1):
        ei = MultiVector(a.n, {(i,): ONE})
        out = out + ei.interior(a).wedge(ei.interior(b))
    return out


class FrameTensor:
    """A 2-form for every frame direction (values T_{e_i})."""

    __slots__ = ("n", "slots")

    def __init__(self, n, slots):
        if len(slots) != n:
            raise ValueError("one slot per frame direction required")
        for s in slots:
            if s.n != n or not s.is_pure_grade(2):
                raise ValueError("slots must be grade-2 elements")
        self.n = n
        self.slots = list(slots)


class CSigma:
    __slots__ = ("c", "sigma", "norm2", "kappa")

    def __init__(self, c, sigma, norm2, kappa):
        self.c = c
        self.sigma = sigma
        self.norm2 = norm2
        self.kappa = kappa


def c_sigma(rep: SpinRep, t: FrameTensor) -> CSigma:
    """c_T = 1/2 sum T_i.T_i, sigma_T = 1/2 sum T_i^T_i, |T|^2, fitted kappa.

    kappa is the unique constant with c_T = act(sigma_T) - kappa |T|^2 Id
    when the difference is scalar (it always is; kappa = 1/2 under this
    module's norm conventions).
    """
    if t.n != rep.n:
        raise ValueError("dimension mismatch")
    half = Scalar.rational(1, 2)
    c = Matrix.zeros(8, 8)
    sigma = MultiVector.zero(t.n)
    norm2 = ZERO
    for slot in t.slots:
        e = rep.endo(slot)
        c = c + (e * e).scale(half)
        sigma = sigma + slot.wedge(slot).scale(half)
        norm2 = norm2 + slot.norm2()
    diff = c - rep.endo(sigma)
    kappa = None
    diag = diff.data[0][0]
    scalar_matrix = all(
        (diff.data[i][j] == diag if i == j else diff.data[i][j].is_zero)
        for i in range(8) for j in range(8))
    if scalar_matrix and not norm2.is_zero:
        kappa = -diag / norm2
    elif scalar_matrix and norm2.is_zero:
        kappa = None if not diag.is_zero else Scalar.rational(1, 2)
    return CSigma(c, sigma, norm2, kappa)
