"""Exact scalars for the coefficient field Q(i)(v) with v**2 = q.

ExactScalar is a reduced fraction of sparse Laurent polynomials in v with
Fraction or GaussianRational coefficients.  ConstantFactor is the group
(C*)^I restricted to coordinates zeta**k * q**e with e rational and zeta a
fixed primitive M-th root of unity (M = 8 by default): the exact home of
the constants omega-bar(w) appearing on l-weights.
"""

from __future__ import annotations

from fractions import Fraction

from .kernel import poly_add, poly_mul, poly_neg, poly_scale, poly_sub


class GaussianRational:
    """Element of Q(i), stored as re + im*i with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = GaussianRational._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return repr(self.re)
        return f"({self.re}+{self.im}i)"


def _inv_coeff(c):
    if isinstance(c, GaussianRational):
        return GaussianRational(1) / c
    return Fraction(1) / c


def _poly_min_exp(p):
    return min(p) if p else 0


def _poly_to_list(p):
    """Dense coefficient list of v**min_exp * (c0 + c1 v + ...), plus min_exp."""
    lo = min(p)
    hi = max(p)
    out = [Fraction(0)] * (hi - lo + 1)
    for e, c in p.items():
        out[e - lo] = c
    return out, lo


def _list_to_poly(lst, shift=0):
    return {i + shift: c for i, c in enumerate(lst) if c}


def _list_divmod(a, b):
    """Polynomial divmod on dense lists over the coefficient field."""
    a = list(a)
    db = len(b) - 1
    inv_lead = _inv_coeff(b[-1])
    q = [Fraction(0)] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        f = c * inv_lead
        q[i - db] = f
        for j, bc in enumerate(b):
            a[i - db + j] = a[i - db + j] - f * bc
    while a and not a[-1]:
        a.pop()
    return q, a


def _list_gcd(a, b):
    """Monic gcd of dense polynomial lists (field coefficients)."""
    a = [c for c in a]
    b = [c for c in b]
    while b and not b[-1]:
        b.pop()
    while a and not a[-1]:
        a.pop()
    while b:
        _, r = _list_divmod(a, b)
        a, b = b, r
        while b and not b[-1]:
            b.pop()
    if not a:
        return [Fraction(1)]
    inv = _inv_coeff(a[-1])
    return [c * inv for c in a]


_ONE_F = Fraction(1)
_TRIVIAL_DEN = {0: _ONE_F}  # shared read-only by convention


class ExactScalar:
    """Fraction num/den of Laurent polynomials in v (v**2 = q).

    Arithmetic is lazy (no gcd); zero tests and equality are exact via
    cross-multiplication, and canonical reduced form is computed on demand
    (key / hash / reduced / evaluate).
    """

    __slots__ = ("num", "den", "_key", "_canon")

    def __init__(self, num, den=None, reduce=False):
        if den is None:
            den = _TRIVIAL_DEN
        if not den:
            raise ZeroDivisionError("ExactScalar with zero denominator")
        if not num:
            num, den = {}, _TRIVIAL_DEN
        else:
            num, den = self._normalize(num, den)
        self.num = num
        self.den = den
        self._key = None
        self._canon = den is _TRIVIAL_DEN or len(den) == 1
        if reduce and not self._canon:
            self._canonicalize()

    @staticmethod
    def _normalize(num, den):
        # den becomes a polynomial with den[0] = 1; the shift and leading
        # constant are pushed into num.
        lo = _poly_min_exp(den)
        c0 = den[lo]
        if lo == 0 and c0 == 1:
            return num, den
        inv = _inv_coeff(c0)
        den = poly_scale(den, inv, -lo)
        num = poly_scale(num, inv, -lo)
        return num, den

    def _canonicalize(self):
        if self._canon:
            return self
        num, den = self.num, self.den
        nl, nlo = _poly_to_list(num)
        dl, dlo = _poly_to_list(den)
        g = _list_gcd(nl, dl)
        if len(g) > 1:
            nq, nr = _list_divmod(nl, g)
            dq, dr = _list_divmod(dl, g)
            assert not nr and not dr
            num = _list_to_poly(nq, nlo)
            den = _list_to_poly(dq, dlo)
            num, den = self._normalize(num, den)
        self.num = num
        self.den = den
        self._canon = True
        return self

    def reduced(self):
        self._canonicalize()
        return self

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_int(k):
        if not k:
            return ExactScalar({})
        return ExactScalar({0: Fraction(k)})

    @staticmethod
    def from_coeff(c):
        if not c:
            return ExactScalar({})
        return ExactScalar({0: c})

    @staticmethod
    def v_power(k, coeff=None):
        c = _ONE_F if coeff is None else coeff
        return ExactScalar({k: c})

    @staticmethod
    def q_power(e, coeff=None):
        """q**e for rational e; requires 2e integral (v = q**(1/2))."""
        ve = 2 * Fraction(e)
        if ve.denominator != 1:
            raise ValueError(f"q**{e} is not in Q(i)(v): needs v**{ve}")
        return ExactScalar.v_power(int(ve), coeff)

    # -- ring ops ------------------------------------------------------
    def __add__(self, other):
        o = _coerce_scalar(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return ExactScalar(poly_add(self.num, o.num), dict(self.den))
        num = poly_add(poly_mul(self.num, o.den), poly_mul(o.num, self.den))
        return ExactScalar(num, poly_mul(self.den, o.den))

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_scalar(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return ExactScalar(poly_sub(self.num, o.num), dict(self.den))
        num = poly_sub(poly_mul(self.num, o.den), poly_mul(o.num, self.den))
        return ExactScalar(num, poly_mul(self.den, o.den))

    def __rsub__(self, other):
        o = _coerce_scalar(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_scalar(other)
        if o is None:
            return NotImplemented
        return ExactScalar(poly_mul(self.num, o.num), poly_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_scalar(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("ExactScalar division by zero")
        return ExactScalar(poly_mul(self.num, o.den), poly_mul(self.den, o.num))

    def __rtruediv__(self, other):
        o = _coerce_scalar(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return ExactScalar(poly_neg(self.num), self.den)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = _coerce_scalar(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return self.num == o.num
        return poly_mul(self.num, o.den) == poly_mul(o.num, self.den)

    def __hash__(self):
        return hash(self.key())

    def key(self):
        if self._key is None:
            self._canonicalize()
            self._key = (
                tuple(sorted((e, _ckey(c)) for e, c in self.num.items())),
                tuple(sorted((e, _ckey(c)) for e, c in self.den.items())),
            )
        return self._key

    def is_polynomial(self):
        self._canonicalize()
        return len(self.den) == 1

    def evaluate(self, v0):
        """Exact value at a rational (or Gaussian-rational) v0 != 0."""
        self._canonicalize()
        num = sum((c * v0**e for e, c in self.num.items()), Fraction(0))
        den = sum((c * v0**e for e, c in self.den.items()), Fraction(0))
        return num / den

    def __repr__(self):
        self._canonicalize()

        def side(p):
            if not p:
                return "0"
            return " + ".join(f"{c}*v^{e}" for e, c in sorted(p.items()))

        if len(self.den) == 1:
            return f"({side(self.num)})"
        return f"({side(self.num)}) / ({side(self.den)})"


def _ckey(c):
    if isinstance(c, GaussianRational):
        return (c.re, c.im)
    return (Fraction(c), Fraction(0))


def _coerce_scalar(x):
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar.from_int(x) if isinstance(x, int) else ExactScalar.from_coeff(x)
    if isinstance(x, GaussianRational):
        return ExactScalar.from_coeff(x)
    return None


ZERO = ExactScalar.from_int(0)
ONE = ExactScalar.from_int(1)


def qnum(m, r=1):
    """Quantum number [m]_{q^r} as a Laurent polynomial in v (sum form)."""
    if m == 0:
        return ExactScalar.from_int(0)
    s = 1 if m > 0 else -1
    m = abs(m)
    c = Fraction(s)
    num = {}
    for k in range(m):
        num[2 * r * (m - 1 - 2 * k)] = c
    return ExactScalar(num)


def qbinom(n, k, r=1):
    """Quantum binomial [n choose k]_{q^r} for 0 <= k <= n."""
    out = ONE
    for j in range(1, k + 1):
        out = out * qnum(n - j + 1, r) / qnum(j, r)
    return out


_ZETA_SCALARS = {0: ONE, 2: ExactScalar.from_coeff(GaussianRational(0, 1)),
                 4: ExactScalar.from_int(-1),
                 6: ExactScalar.from_coeff(GaussianRational(0, -1))}


class ConstantFactor:
    """A point of (C*)^I with coordinates zeta**k * q**e, e in Q, k in Z/M."""

    __slots__ = ("qexps", "zetas", "M")

    def __init__(self, qexps, zetas, M=8):
        self.qexps = tuple(Fraction(e) for e in qexps)
        zet = []
        for z in zetas:
            z = Fraction(z)
            if z.denominator != 1:
                raise ValueError(f"zeta exponent {z} is not an integer")
            zet.append(int(z) % M)
        self.zetas = tuple(zet)
        self.M = M
        if len(self.qexps) != len(self.zetas):
            raise ValueError("coordinate length mismatch")

    @staticmethod
    def one(n, M=8):
        return ConstantFactor([Fraction(0)] * n, [0] * n, M)

    @property
    def n(self):
        return len(self.qexps)

    def mul(self, other, sign=1):
        if self.M != other.M or self.n != other.n:
            raise ValueError("incompatible constant groups")
        if sign == 1:
            return ConstantFactor(
                [a + b for a, b in zip(self.qexps, other.qexps)],
                [a + b for a, b in zip(self.zetas, other.zetas)],
                self.M,
            )
        return ConstantFactor(
            [a - b for a, b in zip(self.qexps, other.qexps)],
            [a - b for a, b in zip(self.zetas, other.zetas)],
            self.M,
        )

    def inv(self):
        return ConstantFactor([-e for e in self.qexps], [-z for z in self.zetas], self.M)

    def pow(self, k):
        return ConstantFactor([e * k for e in self.qexps], [z * k for z in self.zetas], self.M)

    def is_one(self):
        return all(e == 0 for e in self.qexps) and all(z == 0 for z in self.zetas)

    def __eq__(self, other):
        return (
            isinstance(other, ConstantFactor)
            and self.M == other.M
            and self.qexps == other.qexps
            and self.zetas == other.zetas
        )

    def __hash__(self):
        return hash((self.qexps, self.zetas, self.M))

    def coordinate_scalar(self, j):
        """Coordinate j as an ExactScalar; needs zeta-power even and M = 8."""
        z = self.zetas[j]
        if self.M != 8 or z % 2 != 0:
            raise ValueError(
                f"constant zeta^{z} (M={self.M}) is outside Q(i)(v)"
            )
        return _ZETA_SCALARS[z] * ExactScalar.q_power(self.qexps[j])

    def sqrt_class(self):
        """A square root in the same group, when one exists (zeta-parts even).

        Returns the canonical root; the other root differs by -1 per node.
        """
        zet = []
        for z in self.zetas:
            if z % 2 != 0:
                raise ValueError(
                    f"no square root of zeta^{z} in the zeta_{self.M} group"
                )
            zet.append(z // 2)
        return ConstantFactor([e / 2 for e in self.qexps], zet, self.M)

    def to_json(self):
        return [
            [e.numerator, e.denominator, z]
            for e, z in zip(self.qexps, self.zetas)
        ]

    @staticmethod
    def from_json(data, M=8):
        return ConstantFactor(
            [Fraction(a, b) for a, b, _ in data], [z for _, _, z in data], M
        )

    def __repr__(self):
        parts = []
        for e, z in zip(self.qexps, self.zetas):
            s = ""
            if z:
                s += f"zeta^{z}"
            if e:
                s += f"q^{e}"
            parts.append(s or "1")
        return "(" + ", ".join(parts) + ")"
