"""Exact number tower: big integers, rationals, quadratic surds, Laurent
polynomials in q (balanced convention) and their quotients.

Plain Python ints and fractions.Fraction carry the integer/rational load;
everything here is immutable and safe to share between threads.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping


class NotDivisible(ArithmeticError):
    """Raised when an exact Laurent-polynomial division has no solution."""


# ---------------------------------------------------------------------------
# integer factorization helpers (for squarefree normalization of surds)
# ---------------------------------------------------------------------------

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic for n < 3.3e24, overwhelmingly reliable above
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(0xC0FFEE ^ n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as an exponent map."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    # wheel over 6k+-1 covers everything the library produces (smooth values)
    f = 7
    incr = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f < 100000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += incr[i]
        i = (i + 1) % 8
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if _is_probable_prime(m):
                out[m] = out.get(m, 0) + 1
                continue
            r = math.isqrt(m)
            if r * r == m:
                stack.extend((r, r))
                continue
            d = _pollard_rho(m)
            stack.extend((d, m // d))
    return out


def squarefree_split(n: int) -> tuple[int, int]:
    """Write n >= 0 as g*g*d with d squarefree; returns (g, d)."""
    if n < 0:
        raise ValueError("radicand must be non-negative")
    if n in (0, 1):
        return 1, n
    g = 1
    d = 1
    for p, e in factorize(n).items():
        g *= p ** (e // 2)
        if e % 2:
            d *= p
    return g, d


# ---------------------------------------------------------------------------
# Surd: coeff * sqrt(radicand)
# ---------------------------------------------------------------------------

class Surd:
    """An exact value r*sqrt(d) with rational r and squarefree d >= 0.

    The constructor normalizes: square factors of the radicand move into the
    coefficient, zero forces radicand 1, radicand 1 means the value is
    rational.
    """

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff, radicand: int = 1):
        coeff = Fraction(coeff)
        radicand = int(radicand)
        if radicand < 0:
            raise ValueError("radicand must be non-negative")
        if radicand == 0:
            coeff, radicand = Fraction(0), 1
        if coeff == 0:
            radicand = 1
        elif radicand != 1:
            g, d = squarefree_split(radicand)
            coeff *= g
            radicand = d if d != 1 else 1
            if radicand == 0:  # unreachable, kept for clarity of invariant
                coeff, radicand = Fraction(0), 1
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, *a):
        raise AttributeError("Surd is immutable")

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def square(self) -> Fraction:
        return self.coeff * self.coeff * self.radicand

    def __bool__(self) -> bool:
        return self.coeff != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Surd):
            return self.coeff == other.coeff and self.radicand == other.radicand
        if isinstance(other, (int, Fraction)):
            return self.radicand == 1 and self.coeff == other
        return NotImplemented

    def __hash__(self):
        return hash((self.coeff, self.radicand))

    def __neg__(self) -> "Surd":
        return Surd(-self.coeff, self.radicand)

    def __mul__(self, other) -> "Surd":
        if isinstance(other, Surd):
            g = math.gcd(self.radicand, other.radicand)
            c = self.coeff * other.coeff * g
            return Surd(c, (self.radicand // g) * (other.radicand // g))
        if isinstance(other, (int, Fraction)):
            return Surd(self.coeff * other, self.radicand)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other) -> "Surd":
        if isinstance(other, Surd):
            if not other:
                return self
            if not self:
                return other
            if self.radicand != other.radicand:
                raise ValueError("cannot add surds with different radicands")
            return Surd(self.coeff + other.coeff, self.radicand)
        return NotImplemented

    def __float__(self) -> float:
        return float(self.coeff) * math.sqrt(self.radicand)

    def __repr__(self):
        return f"Surd({self.coeff!r}, {self.radicand})"

    def __str__(self):
        if self.radicand == 1:
            return str(self.coeff)
        return f"{self.coeff}*sqrt({self.radicand})"

    def to_json(self) -> dict:
        return {"coeff": str(self.coeff), "radicand": str(self.radicand)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Surd":
        return cls(Fraction(obj["coeff"]), int(obj["radicand"]))

    @classmethod
    def sqrt_of(cls, value) -> "Surd":
        """sqrt of a non-negative int or Fraction as a normalized surd."""
        value = Fraction(value)
        if value < 0:
            raise ValueError("sqrt_of expects a non-negative value")
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(Fraction(1, value.denominator), value.numerator * value.denominator)


def surd_normalize(coeff, radicand: int) -> Surd:
    """Canonical form of coeff*sqrt(radicand); see Surd."""
    return Surd(coeff, radicand)


# ---------------------------------------------------------------------------
# Laurent polynomials over the integers
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Integer-coefficient Laurent polynomial in q, stored sparsely.

    The coefficient map never holds explicit zeros. Instances are treated
    as immutable; all operations return fresh objects.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        c: dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for e, v in items:
            if v:
                c[e] = c.get(e, 0) + v
                if not c[e]:
                    del c[e]
        object.__setattr__(self, "c", c)

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def const(cls, n: int) -> "LaurentPoly":
        return cls({0: n})

    @classmethod
    def monomial(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls({exp: coeff})

    # -- structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def min_exp(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no degree")
        return min(self.c)

    def max_exp(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no degree")
        return max(self.c)

    def coeff(self, e: int) -> int:
        return self.c.get(e, 0)

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self.c.items())

    def is_palindromic(self) -> bool:
        return all(self.c.get(-e) == v for e, v in self.c.items())

    def content(self) -> int:
        g = 0
        for v in self.c.values():
            g = math.gcd(g, v)
        return g

    # -- arithmetic ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.c == other.c
        if isinstance(other, int):
            return self.c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self.c.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self.c)
        for e, v in other.c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "c", c)
        return out

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero()
            return LaurentPoly({e: v * other for e, v in self.c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.c, other.c
        if len(a) > len(b):
            a, b = b, a
        acc: dict[int, int] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                w = acc.get(e, 0) + v1 * v2
                if w:
                    acc[e] = w
                else:
                    del acc[e]
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "c", acc)
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers only exist for monomials")
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q**k."""
        return LaurentPoly({e + k: v for e, v in self.c.items()})

    # -- evaluation ---------------------------------------------------------
    def at_one(self) -> int:
        return sum(self.c.values())

    def __call__(self, z: complex) -> complex:
        return laurent_eval(self, z)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {"terms": [[e, str(v)] for e, v in self.terms()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "LaurentPoly":
        return cls((int(e), int(v)) for e, v in obj["terms"])

    def __repr__(self):
        if not self.c:
            return "LaurentPoly(0)"
        bits = []
        for e, v in self.terms():
            if e == 0:
                bits.append(f"{v}")
            elif e == 1:
                bits.append(f"{v}*q")
            else:
                bits.append(f"{v}*q^{e}")
        return "LaurentPoly(" + " + ".join(bits) + ")"


def laurent_divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient a/b in the Laurent ring; raises NotDivisible."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return LaurentPoly.zero()
    bmax = b.max_exp()
    blead = b.c[bmax]
    lo = a.min_exp() - b.min_exp()
    r = dict(a.c)
    q: dict[int, int] = {}
    bitems = list(b.c.items())
    while r:
        e = max(r)
        k = e - bmax
        if k < lo:
            raise NotDivisible(f"{a!r} is not divisible by {b!r}")
        coeff, rem = divmod(r[e], blead)
        if rem:
            raise NotDivisible(f"{a!r} is not divisible by {b!r}")
        q[k] = coeff
        for be, bv in bitems:
            ee = be + k
            w = r.get(ee, 0) - bv * coeff
            if w:
                r[ee] = w
            else:
                r.pop(ee, None)
    out = LaurentPoly.__new__(LaurentPoly)
    object.__setattr__(out, "c", q)
    return out


def laurent_eval(p: LaurentPoly, z: complex) -> complex:
    """Numeric value of p at z (double precision).

    Horner evaluation on q**2 after factoring the lowest power when the
    exponents share one parity, plain power sums otherwise. The rounding
    error is O(#terms * max|coeff| * machine epsilon), so huge coefficients
    evaluated near cancellation lose accuracy; see the root-of-unity
    helpers in the quantum module for a precision-scaled alternative.
    """
    if z == 0:
        raise ZeroDivisionError("Laurent polynomials cannot be evaluated at 0")
    if p.is_zero():
        return complex(0)
    lo, hi = p.min_exp(), p.max_exp()
    parities = {e & 1 for e in p.c}
    if len(parities) == 1:
        z2 = z * z
        acc: complex = 0
        for e in range(hi, lo - 1, -2):
            acc = acc * z2 + p.c.get(e, 0)
        return acc * z ** lo
    acc = 0
    for e in range(hi, lo - 1, -1):
        acc = acc * z + p.c.get(e, 0)
    return acc * z ** lo


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """GCD in the Laurent ring (primitive PRS), normalized to content 1,
    lowest exponent 0, positive leading coefficient."""
    if a.is_zero():
        return _gcd_normalize(b)
    if b.is_zero():
        return _gcd_normalize(a)
    a = _primitive_shifted(a)
    b = _primitive_shifted(b)
    while not b.is_zero():
        r = _pseudo_rem(a, b)
        a, b = b, _primitive_shifted(r) if not r.is_zero() else LaurentPoly.zero()
    return _gcd_normalize(a)


def _gcd_normalize(p: LaurentPoly) -> LaurentPoly:
    if p.is_zero():
        return p
    p = p.shift(-p.min_exp())
    ct = p.content()
    if p.c[p.max_exp()] < 0:
        ct = -ct
    return LaurentPoly({e: v // ct for e, v in p.c.items()})


def _primitive_shifted(p: LaurentPoly) -> LaurentPoly:
    return _gcd_normalize(p)


def _pseudo_rem(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    da, db = a.max_exp(), b.max_exp()
    if da < db:
        return a
    lead = b.c[db]
    r = a
    while not r.is_zero() and r.max_exp() >= db:
        k = r.max_exp() - db
        c = r.c[r.max_exp()]
        r = r * lead - b.shift(k) * c
    return r


# ---------------------------------------------------------------------------
# Rational functions in q
# ---------------------------------------------------------------------------

class RatFunc:
    """Quotient of Laurent polynomials, kept in a canonical reduced form.

    Normalization: common polynomial factor removed, content gcd 1, lowest
    exponent of the denominator 0 and its leading coefficient positive.
    Equality of normal forms is then plain syntactic equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = LaurentPoly({0: 1}), *,
                 _normalized: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("RatFunc denominator is zero")
        if not _normalized:
            num, den = _ratfunc_normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def from_int(cls, n: int) -> "RatFunc":
        return cls(LaurentPoly.const(n), LaurentPoly.one(), _normalized=True)

    def is_laurent(self) -> bool:
        return self.den == LaurentPoly.one()

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise NotDivisible("denominator does not divide out")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (LaurentPoly, int)):
            return self == RatFunc(other if isinstance(other, LaurentPoly)
                                   else LaurentPoly.const(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        if isinstance(other, int):
            return RatFunc.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def at_one(self) -> Fraction:
        return Fraction(self.num.at_one(), self.den.at_one())

    def __call__(self, z: complex) -> complex:
        return laurent_eval(self.num, z) / laurent_eval(self.den, z)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"


def _ratfunc_normalize(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return LaurentPoly.zero(), LaurentPoly.one()
    # cheap path first: the denominator often divides exactly
    try:
        num = laurent_divexact(num, den)
        den = LaurentPoly.one()
    except NotDivisible:
        g = laurent_gcd(num, den)
        if g != LaurentPoly.one():
            num = laurent_divexact(num, g)
            den = laurent_divexact(den, g)
    shift = -den.min_exp()
    if shift:
        num = num.shift(shift)
        den = den.shift(shift)
    ct = math.gcd(num.content(), den.content())
    if den.c[den.max_exp()] < 0:
        ct = -ct
    if ct != 1:
        num = LaurentPoly({e: v // ct for e, v in num.c.items()})
        den = LaurentPoly({e: v // ct for e, v in den.c.items()})
    return num, den


# ---------------------------------------------------------------------------
# q-integers and q-factorials (balanced convention)
# ---------------------------------------------------------------------------

def qint(n: int) -> LaurentPoly:
    """Balanced q-integer q^(n-1) + q^(n-3) + ... + q^(1-n); qint(0) = 0."""
    if n < 0:
        raise ValueError("qint expects a non-negative integer")
    return LaurentPoly({e: 1 for e in range(1 - n, n, 2)})


@lru_cache(maxsize=None)
def qfactorial(s: int) -> LaurentPoly:
    """Product qint(1)*...*qint(s); qfactorial(0) = 1."""
    if s < 0:
        raise ValueError("qfactorial expects a non-negative integer")
    if s == 0:
        return LaurentPoly.one()
    return qfactorial(s - 1) * qint(s)


@dataclass(frozen=True)
class RootOfUnity:
    """The deformation point q = exp(i*pi/kappa); level = kappa - 2."""

    kappa: int

    def __post_init__(self):
        if self.kappa < 2:
            raise ValueError("kappa must be at least 2")

    @property
    def level(self) -> int:
        return self.kappa - 2

    def q(self) -> complex:
        return cmath.exp(1j * math.pi / self.kappa)
