"""Spinor-defined G-structure algebra at a point.

A unit spinor phi in Delta = R^8 determines SU(3) (n = 6) or G2 (n = 7) as
the stabilizer inside SO(n).  This module computes, exactly over Q(u):

  * the spinor-space decomposition  psi = a phi + b (j phi) + X.phi
    (the j-term only for n = 6), solved by one 8x8 linear system;
  * the stabilizer algebra = kernel of the 2-form action omega -> omega.phi
    (dimension 8 resp. 14) and its orthogonal complement m (dimension 7);
  * the almost complex structure J with J(X).phi = j.X.phi (n = 6);
  * the cubic form psi(X,Y,Z) = -<X.Y.Z.phi, phi> for n = 6 and
    +<X.Y.Z.phi, phi> for n = 7 (the sign each dimension's theory uses);
  * intrinsic torsion slots from an endomorphism S via
    g(xi_X Y, Z) = psi(S(X), Y, Z), with the extra factor 2/3 for n = 7;
  * chi^S = sum_i xi_{e_i} S(e_i) and the pointwise Dirac contraction;
  * the Gray-Hervella splitting of (S, eta) into W-components.

All splits are orthogonal projections in exact arithmetic, so components
recombine to the input on the nose and each component re-classifies pure.
"""

from __future__ import annotations

from itertools import combinations

from .scalars import Scalar, ZERO, ONE, evaluate_exact
from .linalg import (Matrix, Subspace, vec_add, vec_dot, vec_is_zero,
                     vec_scale, vec_sub, zero_vec)
from .clifford import MultiVector, SpinRep, index_pairs


class InternalInvariantError(AssertionError):
    """A structural identity the representation guarantees failed to hold."""


class SpinorParts:
    """Result of the spinor decomposition; b is None when n = 7."""

    __slots__ = ("a", "b", "vector")

    def __init__(self, a, b, vector):
        self.a = a
        self.b = b
        self.vector = vector


class UnitSpinor:
    __slots__ = ("coords", "n")

    def __init__(self, coords, n):
        coords = [c if isinstance(c, Scalar) else Scalar.rational(c)
                  for c in coords]
        if len(coords) != 8:
            raise ValueError("spinor coordinates must have length 8")
        if vec_is_zero(coords):
            raise ValueError("zero spinor rejected")
        if vec_dot(coords, coords) != ONE:
            raise ValueError("unit spinor required")
        self.coords = coords
        self.n = n


class SpinorStructure:
    """All pointwise data attached to a defining unit spinor."""

    def __init__(self, rep: SpinRep, phi):
        self.rep = rep
        self.n = rep.n
        if isinstance(phi, UnitSpinor):
            if phi.n != rep.n:
                raise ValueError("dimension mismatch")
            self.phi = phi.coords
        else:
            self.phi = UnitSpinor(phi, rep.n).coords
        self._cache = {}

    # -- spinor decomposition ------------------------------------------------

    def _decomp_columns(self):
        cols = [self.phi]
        if self.n == 6:
            cols.append(self.rep.j_matrix().apply(self.phi))
        for g in self.rep.gens:
            cols.append(g.apply(self.phi))
        return Matrix.from_columns(cols)

    def decompose(self, psi) -> SpinorParts:
        """Solve psi = a phi (+ b j phi) + X.phi exactly.

        The columns always span Delta, so failure signals a broken
        representation and raises InternalInvariantError.
        """
        if "decomp" not in self._cache:
            self._cache["decomp"] = self._decomp_columns()
        sol = self._cache["decomp"].solve(psi)
        if sol is None:
            raise InternalInvariantError("spinor decomposition inconsistent")
        if self.n == 6:
            return SpinorParts(sol[0], sol[1], sol[2:])
        return SpinorParts(sol[0], None, sol[1:])

    # -- stabilizer algebra and complement -----------------------------------

    def action_matrix(self) -> Matrix:
        """Matrix of omega -> omega.phi from 2-form coefficients to Delta."""
        if "action" not in self._cache:
            cols = []
            for (i, j) in index_pairs(self.n):
                m = self.rep._tuple_endo((i, j))
                cols.append(m.apply(self.phi))
            self._cache["action"] = Matrix.from_columns(cols)
        return self._cache["action"]

    def annihilator(self) -> Subspace:
        """2-forms annihilating phi: su(3) for n = 6, g2 for n = 7."""
        if "ann" not in self._cache:
            self._cache["ann"] = self.action_matrix().kernel()
        return self._cache["ann"]

    def complement_m(self) -> Subspace:
        """Orthogonal complement of the stabilizer inside the 2-forms."""
        if "m" not in self._cache:
            self._cache["m"] = self.annihilator().orthogonal_complement()
        return self._cache["m"]

    # -- derived structures ---------------------------------------------------

    def almost_complex(self) -> Matrix:
        """J with J(X).phi = j.X.phi; J^2 = -Id, orthogonal, skew (n = 6)."""
        if self.n != 6:
            raise ValueError("almost complex structure needs n = 6")
        if "J" not in self._cache:
            jm = self.rep.j_matrix()
            cols = []
            for g in self.rep.gens:
                parts = self.decompose(jm.apply(g.apply(self.phi)))
                if not (parts.a.is_zero and parts.b.is_zero):
                    raise InternalInvariantError(
                        "j.X.phi has a phi or j.phi component")
                cols.append(parts.vector)
            self._cache["J"] = Matrix.from_columns(cols)
        return self._cache["J"]

    def kahler_form(self) -> MultiVector:
        return MultiVector.from_skew_matrix(self.almost_complex())

    def psi_form(self, sign=None) -> MultiVector:
        """The cubic form psi(X,Y,Z) = sign * <X.Y.Z.phi, phi> as a 3-form.

        The default sign is the dimension-appropriate one: -1 for n = 6 and
        +1 for n = 7.  Pass sign explicitly to override.
        """
        if sign is None:
            sign = -1 if self.n == 6 else +1
        key = ("psi", sign)
        if key not in self._cache:
            terms = {}
            for (a, b, c) in combinations(range(1, self.n + 1), 3):
                m = self.rep._tuple_endo((a, b, c))
                val = vec_dot(m.apply(self.phi), self.phi)
                if sign < 0:
                    val = -val
                if not val.is_zero:
                    terms[(a, b, c)] = val
            self._cache[key] = MultiVector(self.n, terms)
        return self._cache[key]

    def psi_eval(self, x_coords, b, c):
        """psi(X, e_b, e_c) for a coordinate vector X."""
        psi = self.psi_form()
        acc = ZERO
        for a in range(1, self.n + 1):
            xa = x_coords[a - 1]
            if xa.is_zero or a == b or a == c:
                continue
            tri = tuple(sorted((a, b, c)))
            coeff = psi.coeff(tri)
            if coeff.is_zero:
                continue
            # sign of (a, b, c) relative to sorted order; b < c always here
            if a < b:
                sign = 1
            elif a < c:
                sign = -1
            else:
                sign = 1
            acc = acc + (xa * coeff if sign > 0 else -(xa * coeff))
        return acc

    # -- torsion machinery ----------------------------------------------------

    def torsion_from_S(self, s: Matrix, eta=None):
        """Torsion slots xi_i with g(xi_X Y, Z) = psi(S(X), Y, Z).

        n = 7 carries the extra factor 2/3.  For n = 6 this description is
        only valid when eta vanishes.
        """
        if self.n == 6 and eta is not None and not vec_is_zero(eta):
            raise ValueError("use homogeneous model torsion")
        factor = Scalar.rational(2, 3) if self.n == 7 else ONE
        slots = []
        for i in range(self.n):
            col = s.column(i)
            coeffs = {}
            for (b, c) in index_pairs(self.n):
                val = factor * self.psi_eval(col, b, c)
                if not val.is_zero:
                    coeffs[(b, c)] = val
            slots.append(MultiVector(self.n, coeffs))
        return slots

    def chi_vector(self, xi_slots, s: Matrix):
        """chi^S = sum_i xi_{e_i} S(e_i) as frame coordinates."""
        out = zero_vec(self.n)
        for i, slot in enumerate(xi_slots):
            a = slot.to_skew_matrix()
            out = vec_add(out, a.apply(s.column(i)))
        return out

    def dirac(self, s: Matrix, eta=None):
        """sum_i e_i.(S(e_i).phi + eta(e_i) j.phi), the pointwise Dirac term."""
        out = zero_vec(8)
        jphi = (self.rep.j_matrix().apply(self.phi)
                if self.n == 6 else None)
        for i in range(self.n):
            term = self.rep.act_vector(s.column(i), self.phi)
            if eta is not None and jphi is not None and not eta[i].is_zero:
                term = vec_add(term, vec_scale(eta[i], jphi))
            out = vec_add(out, self.rep.gens[i].apply(term))
        return out

    def lee_vector(self, s: Matrix):
        """Solve S.phi = Z.phi for skew S of u(3)-perp type (n = 6)."""
        omega = MultiVector.from_skew_matrix(s)
        parts = self.decompose(self.rep.act(omega, self.phi))
        if not (parts.a.is_zero and parts.b.is_zero):
            raise ValueError("S.phi is not of the form Z.phi")
        return parts.vector

    # -- Gray-Hervella classification ------------------------------------------

    def classify(self, s: Matrix, eta=None):
        if self.n == 6:
            return self.classify_su3(s, eta)
        return self.classify_g2(s)

    def classify_su3(self, s: Matrix, eta=None):
        if self.n != 6:
            raise ValueError("SU(3) classification needs n = 6")
        return self._classify_su3(s, eta if eta is not None else zero_vec(6))

    def classify_g2(self, s: Matrix):
        if self.n != 7:
            raise ValueError("G2 classification needs n = 7")
        return self._classify_g2(s)

    def _classify_su3(self, s, eta):
        j = self.almost_complex()
        n6 = Scalar.rational(6)
        mu = s.trace() / n6
        sym = (s + s.transpose()).scale(Scalar.rational(1, 2))
        skw = (s - sym)
        w1m = Matrix.identity(6).scale(mu)
        sym0 = sym - w1m
        w2m = (sym0 - j * sym0 * j).scale(Scalar.rational(1, 2))
        w3 = (sym0 + j * sym0 * j).scale(Scalar.rational(1, 2))
        omega = MultiVector.from_skew_matrix(skw)
        x = omega.pair_coeffs()
        omega_j = self.kahler_form()
        xj = omega_j.pair_coeffs()
        lam = vec_dot(x, xj) / vec_dot(xj, xj)
        w1p = j.scale(lam)
        g_part = self.annihilator().project(x)
        w2p = MultiVector.from_pair_coeffs(6, g_part).to_skew_matrix()
        w4_coords = vec_sub(vec_sub(x, g_part), vec_scale(lam, xj))
        w4 = MultiVector.from_pair_coeffs(6, w4_coords).to_skew_matrix()
        return SU3Classes(self, mu=mu, w1m=w1m, lam=lam, w1p=w1p, w2p=w2p,
                          w2m=w2m, w3=w3, w4=w4, eta=list(eta))

    def _classify_g2(self, s):
        lam = s.trace() / Scalar.rational(7)
        w1 = Matrix.identity(7).scale(lam)
        sym = (s + s.transpose()).scale(Scalar.rational(1, 2))
        w3 = sym - w1
        skw = s - sym
        omega = MultiVector.from_skew_matrix(skw)
        x = omega.pair_coeffs()
        g_part = self.annihilator().project(x)
        w2 = MultiVector.from_pair_coeffs(7, g_part).to_skew_matrix()
        m_coords = vec_sub(x, g_part)
        v = self._solve_w4_vector(m_coords)
        w4 = MultiVector.from_pair_coeffs(7, m_coords).to_skew_matrix()
        return G2Classes(self, lam=lam, w1=w1, w2=w2, w3=w3, w4=w4, v=v)

    def _solve_w4_vector(self, m_coords):
        """Unique V with V -| psi equal to the given m-part 2-form."""
        psi = self.psi_form()
        cols = []
        for l in range(1, 8):
            el = MultiVector(7, {(l,): ONE})
            cols.append(el.interior(psi).pair_coeffs())
        m = Matrix.from_columns(cols)
        v = m.solve(m_coords)
        if v is None:
            raise InternalInvariantError(
                "m-part not representable as V -| psi")
        return v


class SU3Classes:
    """Gray-Hervella components of (S, eta) for n = 6.

    Components are endomorphism matrices that sum exactly to the input S;
    eta carries the W5 class.  Flags list classes with nonzero component.
    """

    LABELS = ("W1+", "W1-", "W2+", "W2-", "W3", "W4", "W5")

    def __init__(self, structure, mu, w1m, lam, w1p, w2p, w2m, w3, w4, eta):
        self.structure = structure
        self.mu = mu
        self.lam = lam
        self.components = {"W1+": w1p, "W1-": w1m, "W2+": w2p,
                           "W2-": w2m, "W3": w3, "W4": w4}
        self.eta = eta

    def total(self) -> Matrix:
        out = Matrix.zeros(6, 6)
        for m in self.components.values():
            out = out + m
        return out

    def flags(self):
        out = {label for label, m in self.components.items() if not m.is_zero}
        if not vec_is_zero(self.eta):
            out.add("W5")
        return out

    def flags_at(self, sub, t0):
        """Flags after exact evaluation at rational parameter t0."""
        out = set()
        for label, m in self.components.items():
            if _matrix_nonzero_at(m, sub, t0):
                out.add(label)
        if any(not evaluate_exact(e, sub, t0).is_zero for e in self.eta):
            out.add("W5")
        return out


class G2Classes:
    """Gray-Hervella components of S for n = 7; W4 stores the vector V."""

    LABELS = ("W1", "W2", "W3", "W4")

    def __init__(self, structure, lam, w1, w2, w3, w4, v):
        self.structure = structure
        self.lam = lam
        self.components = {"W1": w1, "W2": w2, "W3": w3, "W4": w4}
        self.v = v

    def total(self) -> Matrix:
        out = Matrix.zeros(7, 7)
        for m in self.components.values():
            out = out + m
        return out

    def flags(self):
        return {label for label, m in self.components.items()
                if not m.is_zero}

    def flags_at(self, sub, t0):
        return {label for label, m in self.components.items()
                if _matrix_nonzero_at(m, sub, t0)}


def _matrix_nonzero_at(m: Matrix, sub, t0) -> bool:
    for row in m.data:
        for e in row:
            if not e.is_zero and not evaluate_exact(e, sub, t0).is_zero:
                return True
    return False
