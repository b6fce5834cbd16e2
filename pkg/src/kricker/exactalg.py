"""Exact arithmetic: Laurent polynomials over Q, their fraction field, matrices.

Everything is immutable and hashable.  No floating point anywhere: rational
coefficients are `fractions.Fraction`, exponents are Python ints.
"""

from fractions import Fraction
import re

__all__ = [
    "LaurentPoly",
    "RationalFraction",
    "PolyMatrix",
    "t_power",
    "ZERO",
    "ONE",
    "T",
    "parse_laurent",
]


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("coefficient must be rational, got %r" % (x,))


class LaurentPoly:
    """An element of Q[t^{+-1}], stored as {exponent: nonzero Fraction}."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        clean = {}
        for e, c in terms.items():
            c = _frac(c)
            if c != 0:
                clean[int(e)] = c
        object.__setattr__(self, "terms", tuple(sorted(clean.items())))
        object.__setattr__(self, "_hash", hash(("LP", self.terms)))

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors --------------------------------------------------
    @staticmethod
    def const(c):
        return LaurentPoly({0: _frac(c)})

    @staticmethod
    def zero():
        return LaurentPoly({})

    @staticmethod
    def one():
        return LaurentPoly({0: 1})

    # -- basic queries --------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == ((0, Fraction(1)),)

    def is_monomial(self):
        return len(self.terms) == 1

    def as_dict(self):
        return dict(self.terms)

    def coeff(self, e):
        for ee, c in self.terms:
            if ee == e:
                return c
        return Fraction(0)

    def min_exp(self):
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return self.terms[0][0]

    def max_exp(self):
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return self.terms[-1][0]

    def leading_coeff(self):
        """Coefficient of the highest power of t."""
        if not self.terms:
            return Fraction(0)
        return self.terms[-1][1]

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, Fraction(0)) + c
        return LaurentPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: c * other for e, c in self.terms})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        d = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                d[e] = d.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have negative powers in Q[t^±1]")
            e, c = self.terms[0]
            return LaurentPoly({e * n: c ** n})
        r = LaurentPoly.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def bar(self):
        """The involution t -> t^{-1}."""
        return LaurentPoly({-e: c for e, c in self.terms})

    def shift(self, k):
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self.terms})

    def eval(self, q):
        """Evaluate at a nonzero rational q."""
        q = _frac(q)
        if q == 0:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at 0")
        return sum((c * q ** e for e, c in self.terms), Fraction(0))

    # -- polynomial division (for gcd / fraction reduction) --------------
    def _as_poly(self):
        """Return (shift k, dense coefficient list) with self = t^k * list."""
        if not self.terms:
            return 0, []
        lo, hi = self.min_exp(), self.max_exp()
        coeffs = [Fraction(0)] * (hi - lo + 1)
        for e, c in self.terms:
            coeffs[e - lo] = c
        return lo, coeffs

    @staticmethod
    def _from_poly(shift, coeffs):
        return LaurentPoly({shift + i: c for i, c in enumerate(coeffs)})

    def divmod_poly(self, other):
        """Division in Q[t^±1]; remainder degree < divisor degree (as polynomials)."""
        if other.is_zero():
            raise ZeroDivisionError("Laurent polynomial division by zero")
        s1, a = self._as_poly()
        s2, b = other._as_poly()
        a = list(a)
        q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
        for i in range(len(a) - len(b), -1, -1):
            c = a[i + len(b) - 1] / b[-1]
            q[i] = c
            if c:
                for j, bc in enumerate(b):
                    a[i + j] -= c * bc
        quot = LaurentPoly._from_poly(s1 - s2, q)
        rem = LaurentPoly._from_poly(s1, a[: len(b) - 1])
        return quot, rem

    def __mod__(self, other):
        return self.divmod_poly(other)[1]

    def __floordiv__(self, other):
        return self.divmod_poly(other)[0]

    def gcd(self, other):
        """Monic gcd in Q[t^±1] (normalized: lowest exponent 0, leading coeff 1)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        a = a.shift(-a.min_exp())
        return a * (1 / a.leading_coeff())

    # -- misc -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "LaurentPoly(%s)" % (self.text(),)

    def text(self):
        """Render as `c0*t^e0 + c1*t^e1 + ...` with ascending exponents."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            parts.append("%s*t^%d" % (c, e))
        return " + ".join(parts)


_TERM_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?)\*t\^(-?\d+)\s*$")


def parse_laurent(text):
    """Parse the `c*t^e + ...` rendering back, bit-exactly."""
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero()
    d = {}
    for part in text.split("+"):
        m = _TERM_RE.match(part)
        if not m:
            raise ValueError("bad Laurent polynomial term: %r" % part)
        c, e = Fraction(m.group(1)), int(m.group(2))
        d[e] = d.get(e, Fraction(0)) + c
    return LaurentPoly(d)


def t_power(k):
    return LaurentPoly({k: 1})


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
T = t_power(1)


class RationalFraction:
    """A reduced element num/den of the fraction field of Q[t^±1].

    Canonical form: den is a genuine polynomial with nonzero constant term
    (lowest exponent 0) and positive leading coefficient, gcd(num, den) = 1.
    Equality of fractions is then structural equality.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = LaurentPoly.const(num)
        if den is None:
            den = ONE
        if isinstance(den, (int, Fraction)):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("not a fraction: zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        else:
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            # orient the denominator: lowest exponent 0, positive leading coeff
            k = den.min_exp()
            num = num.shift(-k)
            den = den.shift(-k)
            lc = den.leading_coeff()
            if lc < 0 or lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", hash(("RF", num, den)))

    def __setattr__(self, *a):
        raise AttributeError("RationalFraction is immutable")

    @staticmethod
    def of(p):
        if isinstance(p, RationalFraction):
            return p
        return RationalFraction(p)

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    def as_laurent(self):
        if not self.is_polynomial():
            raise ValueError("not a Laurent polynomial: %r" % self)
        return self.num

    def __add__(self, other):
        other = RationalFraction.of(other if not isinstance(other, (int, Fraction)) else LaurentPoly.const(other))
        return RationalFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFraction.of(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RationalFraction.of(other)
        return RationalFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero fraction")
        return RationalFraction(self.den, self.num)

    def __truediv__(self, other):
        return self * RationalFraction.of(other).inverse()

    def bar(self):
        return RationalFraction(self.num.bar(), self.den.bar())

    def poly_part_split(self):
        """Return (p, r) with self = p + r, p in Q[t^±1], r 'proper' mod Q[t^±1].

        The split takes the polynomial quotient of num by den; it is one
        convenient representative choice, not canonical mod Q[t^±1].
        """
        q, rem = self.num.divmod_poly(self.den)
        return q, RationalFraction(rem, self.den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RationalFraction.of(other)
        if not isinstance(other, RationalFraction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.is_polynomial():
            return "RF(%s)" % self.num.text()
        return "RF((%s)/(%s))" % (self.num.text(), self.den.text())

    def text(self):
        if self.is_polynomial():
            return self.num.text()
        return "(%s) / (%s)" % (self.num.text(), self.den.text())


class PolyMatrix:
    """A rectangular matrix of LaurentPoly or RationalFraction entries."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", hash(("PM", entries)))

    def __setattr__(self, *a):
        raise AttributeError("PolyMatrix is immutable")

    @staticmethod
    def identity(n):
        return PolyMatrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(r, c):
        return PolyMatrix([[ZERO] * c for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_square(self):
        return self.rows == self.cols

    def transpose(self):
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def map(self, f):
        return PolyMatrix([[f(x) for x in row] for row in self.entries])

    def conj_transpose(self):
        return self.transpose().map(lambda x: x.bar())

    def is_hermitian(self):
        return self.is_square() and self.conj_transpose() == self

    def __add__(self, other):
        return PolyMatrix(
            [[self.entries[i][j] + other.entries[i][j] for j in range(self.cols)] for i in range(self.rows)]
        )

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            out = []
            for i in range(self.rows):
                row = []
                for j in range(other.cols):
                    acc = None
                    for k in range(self.cols):
                        term = self.entries[i][k] * other.entries[k][j]
                        acc = term if acc is None else acc + term
                    row.append(acc)
                out.append(row)
            return PolyMatrix(out)
        return self.map(lambda x: x * other)

    def eval(self, q):
        """Entrywise evaluation; entries must be Laurent polynomials."""
        out = []
        for row in self.entries:
            out.append([x.eval(q) if isinstance(x, LaurentPoly) else x.num.eval(q) / x.den.eval(q) for x in row])
        return out

    def det(self):
        """Exact determinant via fraction-field elimination; LaurentPoly result
        when all entries are Laurent polynomials."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [[RationalFraction.of(x) if not isinstance(x, RationalFraction) else x for x in row] for row in self.entries]
        det = RationalFraction(ONE)
        for col in range(n):
            piv = None
            for r in range(col, n):
                if not a[r][col].is_zero():
                    piv = r
                    break
            if piv is None:
                return ZERO if all(isinstance(x, LaurentPoly) for row in self.entries for x in row) else RationalFraction(ZERO)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = det * (-1)
            det = det * a[col][col]
            inv = a[col][col].inverse()
            for r in range(col + 1, n):
                if a[r][col].is_zero():
                    continue
                f = a[r][col] * inv
                for c in range(col, n):
                    a[r][c] = a[r][c] - f * a[col][c]
        if all(isinstance(x, LaurentPoly) for row in self.entries for x in row):
            return det.as_laurent()
        return det

    def inverse(self):
        """Exact inverse over the fraction field.

        Raises ValueError("degenerate presentation") when singular.
        """
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = [
            [RationalFraction.of(x) if not isinstance(x, RationalFraction) else x for x in row]
            for row in self.entries
        ]
        inv = [[RationalFraction(ONE if i == j else ZERO) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = None
            for r in range(col, n):
                if not a[r][col].is_zero():
                    piv = r
                    break
            if piv is None:
                raise ValueError("degenerate presentation")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                inv[col], inv[piv] = inv[piv], inv[col]
            pinv = a[col][col].inverse()
            a[col] = [x * pinv for x in a[col]]
            inv[col] = [x * pinv for x in inv[col]]
            for r in range(n):
                if r == col or a[r][col].is_zero():
                    continue
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return PolyMatrix(inv)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "PolyMatrix(%d x %d)" % (self.rows, self.cols)
