"""Double-precision twin of the exact pipeline, used only as an oracle.

Recomputes the homogeneous analysis end to end in floating point with
numpy's solvers (SVD null spaces, least squares), sharing no solver code
with the exact path: the generator table is the only common input.  Backs
cmd_scan and the exact-vs-numeric agreement tests; never decides verdicts.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .clifford import _GEN_TABLE, index_pairs
from .scalars import PoleError, eval_numeric

_NULL_TOL = 1e-9


def generators(n):
    gens = []
    for i in range(1, n + 1):
        m = np.zeros((8, 8))
        for (a, b, s) in _GEN_TABLE[i]:
            m[a - 1, b - 1] = -s
            m[b - 1, a - 1] = s
        gens.append(m)
    return gens


def two_form_action(coeffs, gens):
    out = np.zeros((8, 8))
    for (i, j), c in coeffs.items():
        out += c * (gens[i - 1] @ gens[j - 1])
    return out


def skew_matrix(coeffs, n):
    out = np.zeros((n, n))
    for (i, j), c in coeffs.items():
        out[i - 1, j - 1] -= c
        out[j - 1, i - 1] += c
    return out


def _nullspace(a):
    _, s, vh = np.linalg.svd(a)
    rank = int(np.sum(s > _NULL_TOL * max(a.shape)))
    return vh[rank:].T


class NumericModel:
    """One model at one parameter value, everything in float64."""

    def __init__(self, model, t0):
        self.n = model.n
        self.sub = model.substitution
        self.gens = generators(self.n)
        self.phi = np.array([float(c.as_fraction()) for c in model.phi0])
        self.pairs = index_pairs(self.n)
        self.slots = []
        for slot in model.lam:
            coeffs = {}
            for key, c in slot.terms.items():
                coeffs[key] = eval_numeric(c, self.sub, t0)
            self.slots.append(coeffs)
        if self.n == 6:
            j = np.eye(8)
            for g in self.gens[:6]:
                j = j @ g
            self.jmat = j
        else:
            self.jmat = None
        action = np.zeros((8, len(self.pairs)))
        for col, (i, j_) in enumerate(self.pairs):
            action[:, col] = (self.gens[i - 1] @ self.gens[j_ - 1]) @ self.phi
        self.g_basis = _nullspace(action)          # stabilizer algebra
        self.m_basis = _nullspace(self.g_basis.T)  # orthogonal complement

    def slot_coords(self, k):
        v = np.zeros(len(self.pairs))
        for idx, p in enumerate(self.pairs):
            v[idx] = self.slots[k].get(p, 0.0)
        return v

    def lift(self, coeffs):
        return 0.5 * two_form_action(coeffs, self.gens)

    def extract(self):
        cols = [self.phi]
        if self.n == 6:
            cols.append(self.jmat @ self.phi)
        for g in self.gens:
            cols.append(g @ self.phi)
        basis = np.column_stack(cols)
        s = np.zeros((self.n, self.n))
        eta = np.zeros(self.n)
        for i in range(self.n):
            sol = np.linalg.solve(basis, self.lift(self.slots[i]) @ self.phi)
            if self.n == 6:
                eta[i] = sol[1]
                s[:, i] = sol[2:]
            else:
                s[:, i] = sol[1:]
        return s, eta

    def torsion_coords(self):
        out = []
        for k in range(self.n):
            x = self.slot_coords(k)
            out.append(self.m_basis @ (self.m_basis.T @ x))
        return out

    def coords_to_form(self, x):
        return {p: x[idx] for idx, p in enumerate(self.pairs)
                if abs(x[idx]) > 0}

    def divergence_endo(self, s):
        out = np.zeros(self.n)
        for i in range(self.n):
            a = skew_matrix(self.slots[i], self.n)
            out += (a @ s - s @ a)[:, i]
        return out

    def divergence_vector(self, v):
        acc = 0.0
        for i in range(self.n):
            acc += (skew_matrix(self.slots[i], self.n) @ v)[i]
        return acc

    def vector_action(self, coords):
        out = np.zeros((8, 8))
        for i, c in enumerate(coords):
            out += c * self.gens[i]
        return out

    def residual_su3(self):
        s, eta = self.extract()
        xi = self.torsion_coords()
        xi_forms = [self.coords_to_form(x) for x in xi]
        xi_mats = [skew_matrix(f, self.n) for f in xi_forms]
        chi = np.zeros(self.n)
        for i in range(self.n):
            chi += xi_mats[i] @ s[:, i]
        jphi = self.jmat @ self.phi
        res = self.vector_action(chi) @ self.phi
        xi_eta = {}
        for i in range(self.n):
            if eta[i]:
                for p, c in xi_forms[i].items():
                    xi_eta[p] = xi_eta.get(p, 0.0) + eta[i] * c
        res = res - 0.5 * (two_form_action(xi_eta, self.gens) @ jphi)
        res = res + self.vector_action(self.divergence_endo(s)) @ self.phi
        res = res + self.divergence_vector(eta) * jphi
        res = res + self.jmat @ (self.vector_action(s @ eta) @ self.phi)
        res = res - float(eta @ eta) * self.phi
        return res

    def residual_g2(self):
        s, _ = self.extract()
        return self.divergence_endo(s)

    def residual(self):
        return self.residual_su3() if self.n == 6 else self.residual_g2()

    def cross_check_residual(self):
        delta = np.zeros(8)
        for k in range(self.n):
            lift = self.lift(self.slots[k])
            delta -= lift @ (lift @ self.phi)
        c_xi = np.zeros((8, 8))
        for f in (self.coords_to_form(x) for x in self.torsion_coords()):
            a = two_form_action(f, self.gens)
            c_xi += 0.5 * (a @ a)
        return delta + 0.5 * (c_xi @ self.phi)


def residual_norm(model, t0):
    """Euclidean norm of the numeric harmonicity residual, or None at a pole."""
    try:
        nm = NumericModel(model, t0)
        return float(np.linalg.norm(nm.residual()))
    except PoleError:
        return None


def scan(model, t_min: Fraction, t_max: Fraction, steps: int):
    """(t, residual-norm) rows over an inclusive grid with `steps` intervals."""
    if steps < 1:
        raise ValueError("steps must be positive")
    t_min, t_max = Fraction(t_min), Fraction(t_max)
    if t_min <= 0 or t_max <= t_min:
        raise ValueError("need 0 < t_min < t_max")
    rows = []
    for k in range(steps + 1):
        t = t_min + (t_max - t_min) * k / steps
        rows.append((t, residual_norm(model, t)))
    return rows
