"""The triangular symbol gon on triples and arbitrary admissible multisets,
the Kauffman theta, special Clebsch-Gordan values and Stirling estimators."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import Surd
from .triples import fusion_range, fusion_range_multi, is_admissible_triple

# process-wide memo caches; plain dict get/set is atomic under the GIL and a
# benign race merely recomputes an identical value
_GON3_CACHE: dict[tuple[int, int, int], int] = {}
_GON_POLY_CACHE: dict[tuple[int, ...], int] = {}


class Degenerate(ValueError):
    """Raised by the asymptotic estimators when an internal variable is 0."""


class NonIntegerSpin(ValueError):
    """Raised when an orbital-case operation receives a strict half-integer."""


def gon3(a: int, b: int, c: int) -> int:
    """The multinomial (m+n+p+1)!/(m! n! p!); 0 off the admissible set.

    Computed as (sigma+1) * C(sigma, p) * C(m+n, m) so every intermediate
    stays integral and no full factorial is formed.
    """
    if not is_admissible_triple(a, b, c):
        return 0
    key = (a, b, c) if a <= b <= c else tuple(sorted((a, b, c)))
    v = _GON3_CACHE.get(key)
    if v is None:
        a, b, c = key
        m = (c + a - b) // 2
        n = (a + b - c) // 2
        p = (b + c - a) // 2
        s = m + n + p
        v = (s + 1) * math.comb(s, p) * math.comb(m + n, m)
        _GON3_CACHE[key] = v
    return v


def gon3_prime_factors(a: int, b: int, c: int) -> dict[int, int]:
    """Prime factorization of gon3 via Legendre's formula; {} when zero."""
    if not is_admissible_triple(a, b, c):
        return {}
    m = (c + a - b) // 2
    n = (a + b - c) // 2
    p = (b + c - a) // 2
    s = m + n + p
    out: dict[int, int] = {}
    for prime in _primes_upto(s + 1):
        e = _legendre(s + 1, prime) - _legendre(m, prime) - _legendre(n, prime) - _legendre(p, prime)
        if e:
            out[prime] = e
    return out


def _legendre(n: int, p: int) -> int:
    e = 0
    while n:
        n //= p
        e += n
    return e


_PRIME_TABLE: list[int] = [2]


def _primes_upto(n: int) -> list[int]:
    while _PRIME_TABLE[-1] < n:
        cand = _PRIME_TABLE[-1] + 1
        while any(cand % p == 0 for p in _PRIME_TABLE if p * p <= cand):
            cand += 1
        _PRIME_TABLE.append(cand)
    return [p for p in _PRIME_TABLE if p <= n]


def theta_k(a: int, b: int, c: int) -> Fraction:
    """Kauffman theta: (-1)^sigma gon3 over the three binomial factors."""
    g = gon3(a, b, c)
    if g == 0:
        return Fraction(0)
    s = (a + b + c) // 2
    n = (a + b - c) // 2
    p = (b + c - a) // 2
    m = (c + a - b) // 2
    denom = math.comb(a, n) * math.comb(b, p) * math.comb(c, m)
    sign = -1 if s % 2 else 1
    return Fraction(sign * g, denom)


def gon_poly(xs: Iterable[int]) -> int:
    """gon on an arbitrary multiset of non-negative integers.

    Triangulation recursion: peel the top two labels of the sorted multiset
    and sum over the compatible diagonal x, dividing each triangle glue by
    (x+1). Duality makes the result independent of the peeling order.
    """
    key = tuple(sorted(xs))
    if any(x < 0 for x in key):
        raise ValueError("gon_poly expects non-negative labels")
    return _gon_poly_sorted(key)


def _gon_poly_sorted(key: tuple[int, ...]) -> int:
    n = len(key)
    if n == 0:
        return 1
    if n == 1:
        return 1 if key[0] == 0 else 0
    if n == 2:
        return key[0] + 1 if key[0] == key[1] else 0
    if n == 3:
        return gon3(*key)
    v = _GON_POLY_CACHE.get(key)
    if v is None:
        rest, u, w = key[:-2], key[-2], key[-1]
        xs_range = set(fusion_range_multi(rest)) & set(fusion_range(u, w))
        v = 0
        for x in sorted(xs_range):
            g = gon3(x, u, w)
            if g:
                inner = _gon_poly_sorted(tuple(sorted(rest + (x,))))
                if inner:
                    v += inner * g // (x + 1)
        _GON_POLY_CACHE[key] = v
    return v


def gon4_hyper(a: int, b: int) -> int:
    """gon(a,a,b,b) through the terminating hypergeometric-style sum.

    Independent of the triangulation recursion; used as an oracle.
    """
    if a < 0 or b < 0:
        raise ValueError("gon4_hyper expects non-negative labels")
    total = Fraction(0)
    for j in range(min(a, b) + 1):
        num = math.factorial(a + j + 1) * math.factorial(b + j + 1)
        den = (2 * j + 1) * math.factorial(j) ** 4 \
            * math.factorial(a - j) * math.factorial(b - j)
        total += Fraction(num, den)
    assert total.denominator == 1
    return total.numerator


def special_clebsch(j1, j2, j) -> Surd:
    """Clebsch-Gordan coefficient <j1 0; j2 0 | j 0> for integer spins.

    The value is cos((j1+j2-j)pi/2) * sqrt(2j+1) * gon(j1,j2,j) /
    ((sigma+1) * sqrt(gon(2j1,2j2,2j))) with sigma = (j1+j2+j)/2, returned
    as a normalized surd; zero whenever (j1,j2,j) is not admissible.
    """
    vals = []
    for x in (j1, j2, j):
        xi = Fraction(x)
        if xi.denominator != 1:
            raise NonIntegerSpin(f"{x} is a strict half-integer; only the orbital case is defined")
        vals.append(int(xi))
    j1, j2, j = vals
    g = gon3(j1, j2, j)
    if g == 0:
        return Surd(0)
    s = (j1 + j2 + j) // 2
    cos_sign = 1 if (j1 + j2 - j) % 4 == 0 else -1
    big = gon3(2 * j1, 2 * j2, 2 * j)
    # sqrt(2j+1)/sqrt(big) = sqrt((2j+1)*big)/big
    return Surd(Fraction(cos_sign * g, (s + 1) * big), (2 * j + 1) * big)


def _asym_vars(a: int, b: int, c: int):
    if not is_admissible_triple(a, b, c):
        raise Degenerate(f"({a},{b},{c}) is not admissible")
    s = (a + b + c) // 2
    m, n, p = s - b, s - c, s - a
    if m == 0 or n == 0 or p == 0:
        raise Degenerate("estimator needs m, n, p all positive")
    return s, m, n, p


def gon_asym(a: int, b: int, c: int, k: int) -> float:
    """Stirling estimate of gon(k*a, k*b, k*c), computed in log space."""
    if k < 1:
        raise ValueError("k must be at least 1")
    s, m, n, p = _asym_vars(a, b, c)
    area = math.sqrt(s * m * n * p)
    log_base = s * math.log(s) - m * math.log(m) - n * math.log(n) - p * math.log(p)
    return s * s / (2 * math.pi * area) * math.exp(k * log_base)


def theta_k_asym(a: int, b: int, c: int, k: int) -> float:
    """Stirling estimate of theta_k(k*a, k*b, k*c), including the sign."""
    if k < 1:
        raise ValueError("k must be at least 1")
    s, m, n, p = _asym_vars(a, b, c)
    area = math.sqrt(s * m * n * p)
    log_base = (
        s * math.log(s) + m * math.log(m) + n * math.log(n) + p * math.log(p)
        - a * math.log(a) - b * math.log(b) - c * math.log(c)
    )
    mag = (k ** 1.5) * s * area * math.sqrt(2 * math.pi) / math.sqrt(a * b * c) \
        * math.exp(k * log_base)
    sign = -1 if (k * s) % 2 else 1
    return sign * mag


def clear_caches() -> None:
    _GON3_CACHE.clear()
    _GON_POLY_CACHE.clear()
