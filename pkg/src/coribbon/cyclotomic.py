"""Exact arithmetic in the cyclotomic coefficient field.

Every scalar in this package lives in Q(A) where A is a primitive (4r)-th
root of unity and r >= 2 is the level.  Elements are stored as polynomials
in A with rational coefficients, reduced modulo the (4r)-th cyclotomic
polynomial, so equality is decidable coefficient-wise.  The quantum
parameter is q = A**2; quantum integers, factorials and the loop value of
the diagram calculus are provided here as well.

Numeric embedding (`to_complex`) fixes A = exp(i*pi/(2r)).  It exists for
display and sanity checks only and is never used on a correctness path.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

_ZERO = Fraction(0)
_ONE = Fraction(1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Integer coefficients (low degree first) of the m-th cyclotomic polynomial.

    Computed by dividing x**m - 1 by the cyclotomic polynomials of all
    proper divisors of m; the division is exact over the integers.
    """
    if m < 1:
        raise ValueError("cyclotomic polynomial index must be positive, got %r" % (m,))
    if m == 1:
        return (-1, 1)
    poly = [0] * (m + 1)
    poly[0], poly[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            poly = _polydiv_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _polydiv_exact(num, den):
    """Exact division of integer polynomials (den monic); remainder must vanish."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for k in range(dd + 1):
                num[i - dd + k] -= c * den[k]
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return out


@lru_cache(maxsize=None)
def field_degree(level):
    """Degree phi(4r) of Q(A) over Q at the given level."""
    _check_level(level)
    return len(cyclotomic_polynomial(4 * level)) - 1


def _check_level(level):
    if not isinstance(level, int) or level < 2:
        raise ValueError("level must be an integer >= 2, got %r" % (level,))


class CycloScalar:
    """Immutable element of Q(A), A a primitive (4r)-th root of unity.

    `coeffs` is a tuple of Fractions of length phi(4r); entry i is the
    coefficient of A**i of the canonical representative.  Arithmetic
    reduces eagerly, so == is plain coefficient comparison.
    """

    __slots__ = ("level", "coeffs")

    def __init__(self, level, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != field_degree(level):
            raise ValueError(
                "expected %d coefficients at level %d, got %d"
                % (field_degree(level), level, len(coeffs))
            )
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycloScalar is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_polynomial(cls, level, poly):
        """Reduce an arbitrary-degree coefficient sequence modulo Phi_{4r}."""
        return cls(level, _reduce(level, [Fraction(c) for c in poly]))

    @classmethod
    def from_rational(cls, level, value):
        deg = field_degree(level)
        coeffs = [_ZERO] * deg
        coeffs[0] = Fraction(value)
        return cls(level, coeffs)

    # -- ring structure ------------------------------------------------------

    def _require_same_level(self, other):
        if self.level != other.level:
            raise ValueError(
                "level mismatch: %d vs %d" % (self.level, other.level)
            )

    def __add__(self, other):
        other = _coerce(self.level, other)
        self._require_same_level(other)
        return CycloScalar(
            self.level, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(self.level, other)
        self._require_same_level(other)
        return CycloScalar(
            self.level, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __rsub__(self, other):
        return _coerce(self.level, other).__sub__(self)

    def __neg__(self):
        return CycloScalar(self.level, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycloScalar(self.level, [a * f for a in self.coeffs])
        other = _coerce(self.level, other)
        self._require_same_level(other)
        a, b = self.coeffs, other.coeffs
        prod = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        prod[i + j] += ca * cb
        return CycloScalar(self.level, _reduce(self.level, prod))

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        modulus = [Fraction(c) for c in cyclotomic_polynomial(4 * self.level)]
        inv = _poly_modular_inverse(list(self.coeffs), modulus)
        return CycloScalar(self.level, _reduce(self.level, inv))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return self * Fraction(f.denominator, f.numerator)
        other = _coerce(self.level, other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(self.level, other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        out = one(self.level)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates and conversions -----------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _coerce(self.level, other)
        if not isinstance(other, CycloScalar):
            return NotImplemented
        return self.level == other.level and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def to_complex(self):
        """Numeric value with A = exp(i*pi/(2r)); double precision, debug only."""
        a = cmath.exp(1j * cmath.pi / (2 * self.level))
        value = 0j
        power = 1 + 0j
        for c in self.coeffs:
            if c:
                value += float(c) * power
            power *= a
        return value

    def __repr__(self):
        return "CycloScalar(r=%d, %s)" % (self.level, str(self))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                mag = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else "%s*" % abs(c)
                mag += "A" if i == 1 else "A^%d" % i
            if not parts:
                parts.append(mag if c > 0 else "-" + mag)
            else:
                parts.append(("+ " if c > 0 else "- ") + mag)
        return " ".join(parts) if parts else "0"

    # -- serialization -------------------------------------------------------

    def to_json(self):
        """List of {num, den} decimal strings, index i = coefficient of A**i."""
        return [
            {"num": str(c.numerator), "den": str(c.denominator)}
            for c in self.coeffs
        ]

    @classmethod
    def from_json(cls, level, data):
        return cls(
            level, [Fraction(int(d["num"]), int(d["den"])) for d in data]
        )


def _coerce(level, value):
    if isinstance(value, CycloScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return CycloScalar.from_rational(level, value)
    raise TypeError("cannot coerce %r to CycloScalar" % (value,))


def _reduce(level, poly):
    """Reduce a coefficient list modulo Phi_{4r}; returns exactly phi(4r) entries."""
    deg = field_degree(level)
    modulus = cyclotomic_polynomial(4 * level)
    poly = list(poly)
    if len(poly) < deg:
        poly += [_ZERO] * (deg - len(poly))
    for i in range(len(poly) - 1, deg - 1, -1):
        c = poly[i]
        if c:
            poly[i] = _ZERO
            for k in range(deg):
                poly[i - deg + k] -= c * modulus[k]
    return poly[:deg]


def _poly_modular_inverse(a, modulus):
    """Inverse of polynomial a modulo `modulus` over Q via extended Euclid."""
    r0, r1 = list(modulus), _trim(a)
    s0, s1 = [_ZERO], [_ONE]
    while _degree(r1) > 0:
        q, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if _degree(r1) < 0:
        raise ZeroDivisionError("element is not invertible")
    lead = r1[0]
    return [c / lead for c in s1]


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _degree(p):
    p = _trim(p)
    if len(p) == 1 and p[0] == 0:
        return -1
    return len(p) - 1


def _poly_divmod(num, den):
    num, den = _trim(num), _trim(den)
    q = [_ZERO] * max(1, len(num) - len(den) + 1)
    rem = list(num)
    dd = len(den) - 1
    lead = den[-1]
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i] / lead
        if c:
            q[i - dd] = c
            for k in range(dd + 1):
                rem[i - dd + k] -= c * den[k]
    return _trim(q), _trim(rem)


def _poly_mul(a, b):
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [_ZERO] * (n - len(a))
    b = list(b) + [_ZERO] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


# -- frequently used values --------------------------------------------------

@lru_cache(maxsize=None)
def zero(level):
    return CycloScalar.from_rational(level, 0)


@lru_cache(maxsize=None)
def one(level):
    return CycloScalar.from_rational(level, 1)


@lru_cache(maxsize=None)
def root_power(level, n):
    """A**n in canonical form; negative exponents wrap modulo 4r."""
    _check_level(level)
    n %= 4 * level
    poly = [_ZERO] * (n + 1)
    poly[n] = _ONE
    return CycloScalar.from_polynomial(level, poly)


@lru_cache(maxsize=None)
def quantum_int(level, n):
    """Quantum integer [n] = (q**n - q**-n)/(q - q**-1) with q = A**2."""
    if n < 0:
        return -quantum_int(level, -n)
    total = zero(level)
    for k in range(n):
        total = total + root_power(level, 2 * (n - 1 - 2 * k))
    return total


@lru_cache(maxsize=None)
def quantum_factorial(level, n):
    """[n]! = [1][2]...[n], with [0]! = 1."""
    if n < 0:
        raise ValueError("quantum factorial needs n >= 0, got %r" % (n,))
    if n == 0:
        return one(level)
    return quantum_factorial(level, n - 1) * quantum_int(level, n)


@lru_cache(maxsize=None)
def loop_value(level):
    """Value of a closed loop in the diagram calculus: -A**2 - A**-2."""
    return -(root_power(level, 2) + root_power(level, -2))
