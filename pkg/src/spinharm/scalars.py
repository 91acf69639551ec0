"""Exact arithmetic over the rational-function field Q(u).

Every geometric quantity in this package is a Scalar: a reduced fraction
num(u)/den(u) of univariate polynomials with arbitrary-precision rational
coefficients.  Square roots never appear explicitly; each homogeneous model
declares a Substitution binding the metric parameter t to u (t = u^2 encodes
u = sqrt(t), t = u^2/2 encodes u = sqrt(2t), t = u keeps t rational), so
coefficients like (1-t)/(2*sqrt(t)) become honest rational functions of u.

Polynomials are coefficient tuples in increasing degree with no trailing
zeros; the zero polynomial is the empty tuple.  Scalars keep den monic and
gcd(num, den) = 1, which makes equality a syntactic check and is used
everywhere as the exact zero test.  Verdicts are always decided exactly;
floating point appears only in eval_numeric, the oracle backend.
"""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction


class ScalarDomainError(ArithmeticError):
    """Base for exact-arithmetic domain errors."""


class NotExpressibleInT(ScalarDomainError):
    """A Scalar with odd powers of u surviving the substitution to t."""


class PoleError(ScalarDomainError):
    """Evaluation at a zero of the denominator."""


class IdenticallyZero(ScalarDomainError):
    """Root finding on the zero polynomial (verdict: holds for all t)."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"rational coefficient expected, got {type(x).__name__}")


class Poly:
    """Univariate polynomial over Q, coefficients in increasing degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls((c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(out)

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = _as_fraction(other)
            return Poly(tuple(c * q for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("zero denominator")
        rem = list(self.coeffs)
        dn = other.coeffs
        dd = other.degree
        lead = dn[-1]
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c:
                q = c / lead
                quot[k - dd] = q
                for j, dc in enumerate(dn):
                    rem[k - dd + j] -= q * dc
        return Poly(quot), Poly(rem[:dd])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("inexact polynomial division")
        return q

    def monic(self):
        if self.is_zero:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return Poly(tuple(c / lead for c in self.coeffs))

    def eval(self, x):
        """Horner evaluation; x may be Fraction, int, or float."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scale_argument(self, m):
        """p(v) -> p(m*v) for rational m."""
        m = _as_fraction(m)
        return Poly(tuple(c * m**k for k, c in enumerate(self.coeffs)))

    def even_odd_parts(self):
        """p(u) = E(u^2) + u*O(u^2); returns (E, O)."""
        return (Poly(self.coeffs[0::2]), Poly(self.coeffs[1::2]))

    def int_coeffs(self):
        """Scaled copy with coprime integer coefficients, positive leading."""
        if self.is_zero:
            return []
        lcm = 1
        for c in self.coeffs:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in self.coeffs]
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return [c // g for c in ints]

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


ZERO_POLY = Poly()
ONE_POLY = Poly((1,))
U_POLY = Poly((0, 1))


def _int_pseudo_rem(a, b):
    """Pseudo-remainder of integer coefficient lists (fraction-free)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = [c * lb for c in a]
        for j in range(len(b)):
            a[da - db + j] -= la * b[j]
        while a and a[-1] == 0:
            a.pop()
    return a


def _int_primitive(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
    if not g:
        return a
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the fraction-free (primitive PRS) Euclidean algorithm."""
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    x, y = a.int_coeffs(), b.int_coeffs()
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _int_primitive(_int_pseudo_rem(x, y))
        x, y = y, r
    return Poly([Fraction(c) for c in x]).monic()


class Scalar:
    """Element of Q(u): num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE_POLY, _reduced=False):
        if not isinstance(num, Poly):
            num = Poly.const(_as_fraction(num))
        if not isinstance(den, Poly):
            den = Poly.const(_as_fraction(den))
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero:
                den = ONE_POLY
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lead = den.coeffs[-1]
                if lead != 1:
                    num = num * (1 / lead)
                    den = den.monic()
        self.num = num
        self.den = den

    @classmethod
    def rational(cls, p, q=1):
        return cls(Poly.const(Fraction(p, q)), ONE_POLY, _reduced=True)

    @classmethod
    def u(cls, power=1):
        return cls(Poly((0,) * power + (1,)), ONE_POLY, _reduced=True)

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_rational(self):
        return self.den == ONE_POLY and self.num.degree <= 0

    def as_fraction(self):
        if not self.is_rational:
            raise ValueError("not a rational constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == ONE_POLY and other.den == ONE_POLY:
            return Scalar(self.num + other.num, ONE_POLY)
        return Scalar(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ZERO
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("zero denominator")
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.rational(x)
    return NotImplemented


ZERO = Scalar.rational(0)
ONE = Scalar.rational(1)


# ---------------------------------------------------------------------------
# substitutions t <-> u


class Substitution:
    """Binding of the metric parameter t to the formal variable u."""

    T_EQUALS_U_SQUARED = None   # t = u^2, u = sqrt(t)
    T_EQUALS_HALF_U_SQUARED = None   # t = u^2/2, u = sqrt(2t)
    T_EQUALS_U = None   # t = u, rational parameter

    _BY_LABEL = {}

    def __init__(self, label, u_squared_per_t):
        # u^2 = u_squared_per_t * t, or None when u = t directly
        self.label = label
        self.u_squared_per_t = u_squared_per_t
        Substitution._BY_LABEL[label] = self

    def __repr__(self):
        return f"Substitution({self.label!r})"

    @classmethod
    def from_label(cls, label):
        try:
            return cls._BY_LABEL[label]
        except KeyError:
            raise ValueError(f"unknown substitution {label!r}") from None

    def t_as_scalar(self):
        """The image of t in Q(u)."""
        if self.u_squared_per_t is None:
            return Scalar.u()
        return Scalar(Poly((0, 0, Fraction(1, self.u_squared_per_t))))

    def u_value(self, t0: Fraction):
        """(c, root) with u = root if rational else sqrt(c), at t = t0."""
        if self.u_squared_per_t is None:
            return t0, t0
        c = self.u_squared_per_t * t0
        r = _fraction_sqrt(c)
        return c, r


Substitution.T_EQUALS_U_SQUARED = Substitution("t=u^2", Fraction(1))
Substitution.T_EQUALS_HALF_U_SQUARED = Substitution("t=u^2/2", Fraction(2))
Substitution.T_EQUALS_U = Substitution("t=u", None)


def _fraction_sqrt(c: Fraction):
    """Exact square root of a nonnegative rational, or None."""
    if c < 0:
        return None
    pn = math.isqrt(c.numerator)
    pd = math.isqrt(c.denominator)
    if pn * pn == c.numerator and pd * pd == c.denominator:
        return Fraction(pn, pd)
    return None


def as_polynomial_in_t(s: Scalar, sub: Substitution) -> Scalar:
    """Rewrite a u-Scalar as a rational function of t under the substitution.

    Errors with NotExpressibleInT when odd powers of u survive; every
    final harmonicity residual must pass this conversion.
    """
    if sub.u_squared_per_t is None:
        return s
    ne, no = s.num.even_odd_parts()
    de, do = s.den.even_odd_parts()
    # multiply num and den by the conjugate De(u^2) - u*Do(u^2)
    odd_residue = no * de - ne * do
    if not odd_residue.is_zero:
        raise NotExpressibleInT("not expressible in t")
    v = U_POLY   # the variable u^2 =: v before rescaling to t
    den_v = de * de - v * (do * do)
    num_v = ne * de - v * (no * do)
    m = sub.u_squared_per_t   # v = m*t
    return Scalar(num_v.scale_argument(m), den_v.scale_argument(m))


class QuadValue:
    """Element a + b*sqrt(c) of a real quadratic extension of Q."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b=Fraction(0), c=Fraction(0)):
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        if b:
            r = _fraction_sqrt(c)
            if r is not None:
                a, b, c = a + b * r, Fraction(0), Fraction(0)
        else:
            c = Fraction(0)
        self.a, self.b, self.c = a, b, c

    @property
    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        return (isinstance(other, QuadValue) and self.a == other.a
                and self.b == other.b and self.c == other.c)

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __add__(self, other):
        assert not (self.b and other.b and self.c != other.c)
        return QuadValue(self.a + other.a, self.b + other.b,
                         self.c or other.c)

    def __neg__(self):
        return QuadValue(-self.a, -self.b, self.c)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        assert not (self.b and other.b and self.c != other.c)
        c = self.c or other.c
        return QuadValue(self.a * other.a + self.b * other.b * c,
                         self.a * other.b + self.b * other.a, c)

    def __truediv__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("zero denominator")
        nrm = other.a * other.a - other.b * other.b * other.c
        conj = QuadValue(other.a, -other.b, other.c)
        num = self * conj
        return QuadValue(num.a / nrm, num.b / nrm, num.c)

    def to_float(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.c))

    def __repr__(self):
        if self.b == 0:
            return f"QuadValue({self.a})"
        return f"QuadValue({self.a} + {self.b}*sqrt({self.c}))"


def _poly_eval_quad(p: Poly, c: Fraction) -> QuadValue:
    """p(sqrt(c)) exactly in Q(sqrt(c))."""
    e, o = p.even_odd_parts()
    return QuadValue(e.eval(c), o.eval(c), c)


def evaluate_exact(s: Scalar, sub: Substitution, t0: Fraction) -> QuadValue:
    """Exact value of s at parameter t0 > 0, in Q(sqrt(c))."""
    t0 = Fraction(t0)
    c, root = sub.u_value(t0)
    if root is not None:
        dv = s.den.eval(root)
        if dv == 0:
            raise PoleError("pole")
        return QuadValue(s.num.eval(root) / dv)
    num = _poly_eval_quad(s.num, c)
    den = _poly_eval_quad(s.den, c)
    if den.is_zero:
        raise PoleError("pole")
    return num / den


def eval_numeric(s: Scalar, sub: Substitution, t0) -> float:
    """Double-precision value of s at t0; oracle backend, never a verdict."""
    t0f = float(t0)
    if sub.u_squared_per_t is None:
        u0 = t0f
    else:
        u0 = math.sqrt(float(sub.u_squared_per_t) * t0f)
    # exact pole check at rational t0, else float guard
    if isinstance(t0, (int, Fraction)):
        cr = sub.u_value(Fraction(t0))
        if cr[1] is not None:
            if s.den.eval(cr[1]) == 0:
                raise PoleError("pole")
        elif _poly_eval_quad(s.den, cr[0]).is_zero:
            raise PoleError("pole")
    den = s.den.eval(u0)
    if den == 0.0:
        raise PoleError("pole")
    return s.num.eval(u0) / den


# ---------------------------------------------------------------------------
# rational root finding


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def rational_roots(p: Poly) -> dict:
    """All rational roots of p with multiplicities (rational-root theorem).

    Raises IdenticallyZero on the zero polynomial; callers translate that
    into a 'holds for all t' verdict.
    """
    if p.is_zero:
        raise IdenticallyZero("identically zero")
    roots = {}
    work = Poly(p.coeffs)
    # strip t^k
    k = 0
    while work.coeffs and work.coeffs[0] == 0:
        work = Poly(work.coeffs[1:])
        k += 1
    if k:
        roots[Fraction(0)] = k
    if work.degree < 1:
        return roots
    ints = work.int_coeffs()
    a0, an = ints[0], ints[-1]
    cands = set()
    for p_ in _divisors(a0):
        for q_ in _divisors(an):
            cands.add(Fraction(p_, q_))
            cands.add(Fraction(-p_, q_))
    for r in sorted(cands):
        mult = 0
        while work.degree >= 1 and work.eval(r) == 0:
            work = work.exact_div(Poly((-r, 1)))
            mult += 1
        if mult:
            roots[r] = mult
    return roots


# ---------------------------------------------------------------------------
# canonical printing (grammar-compatible, diff-friendly)


def _format_poly(p: Poly, scale=1, var="u"):
    """Terms in increasing degree; integer coefficients when scale clears them."""
    if p.is_zero:
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        c = c * scale
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def format_scalar(s: Scalar, var="u") -> str:
    """Canonical string: integer-coefficient num/den in increasing degree."""
    if s.is_zero:
        return "0"
    lcm = 1
    for c in s.num.coeffs + s.den.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    g = 0
    for c in s.num.coeffs + s.den.coeffs:
        g = math.gcd(g, abs(int(c * lcm)))
    scale = Fraction(lcm, g)
    num_s = _format_poly(s.num, scale, var)
    if s.den == ONE_POLY and scale == 1:
        return num_s
    den_s = _format_poly(s.den, scale, var)
    if den_s == "1":
        return num_s
    num_atom = " " not in num_s
    den_atom = " " not in den_s and "*" not in den_s
    num_s = num_s if num_atom else f"({num_s})"
    den_s = den_s if den_atom else f"({den_s})"
    return f"{num_s}/{den_s}"
