"""Exact shifted Hilbert matrices, fraction-free inversion, the gon trace
and row-sum theorems, and the q-deformed analog."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .exactnum import LaurentPoly, RatFunc, laurent_divexact, qint
from .triples import NotAdmissible, is_admissible_triple

Matrix = list


class Singular(ArithmeticError):
    """The matrix has no inverse."""


def hilbert(n: int, s: int = 0) -> Matrix:
    """The n x n shifted Hilbert matrix with entries 1/(i+j-1+s)."""
    if n < 1 or s < 0:
        raise ValueError("need n >= 1 and s >= 0")
    return [[Fraction(1, i + j + 1 + s) for j in range(n)] for i in range(n)]


def _bareiss_jordan(a: Matrix, one, div):
    """Fraction-free Gauss-Jordan on an augmented matrix over a ring with
    exact division.  Returns (d, rows) where the left block has been reduced
    to d*I and the right block to d times the inverse."""
    n = len(a)
    width = len(a[0])
    a = [row[:] for row in a]
    prev = one
    neg = 0
    for k in range(n):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    neg ^= 1
                    break
            else:
                raise Singular("zero pivot column")
        pivot = a[k][k]
        for i in range(n):
            if i == k:
                continue
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(width):
                row_i[j] = div(pivot * row_i[j] - aik * row_k[j], prev)
        prev = pivot
    det = a[n - 1][n - 1]
    if neg:
        det = -det
        for row in a:
            for j in range(n, width):
                row[j] = -row[j]
    return det, [row[n:] for row in a]


def _int_divexact(a: int, b: int) -> int:
    q, r = divmod(a, b)
    assert r == 0
    return q


def invert_exact(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix of Fractions or RatFuncs."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return []
    if isinstance(m[0][0], RatFunc):
        return _invert_ratfunc(m)
    # clear denominators: A = L*M is integral, M^-1 = L * A^-1
    scale = 1
    for row in m:
        for x in row:
            x = Fraction(x)
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    aug = []
    for i, row in enumerate(m):
        r = [int(Fraction(x) * scale) for x in row]
        r += [scale if j == i else 0 for j in range(n)]
        aug.append(r)
    det, inv = _bareiss_jordan(aug, 1, _int_divexact)
    if det == 0:
        raise Singular("determinant is zero")
    return [[Fraction(x, det) for x in row] for row in inv]


def _invert_ratfunc(m: Matrix) -> Matrix:
    n = len(m)
    # scale row i by the product of its denominators to get a polynomial
    # matrix B = D*M, then M^-1 = B^-1 * D
    row_scale = []
    b = []
    for row in m:
        scale = LaurentPoly.one()
        for x in row:
            scale = scale * x.den
        row_scale.append(scale)
        b.append([laurent_divexact(scale, x.den) * x.num for x in row])
    aug = []
    for i, row in enumerate(b):
        aug.append(row + [row_scale[i] if j == i else LaurentPoly.zero()
                          for j in range(n)])
    det, inv = _bareiss_jordan(aug, LaurentPoly.one(), laurent_divexact)
    if det.is_zero():
        raise Singular("determinant is zero")
    return [[RatFunc(x, det) for x in row] for row in inv]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def trace_inverse(n: int, s: int = 0) -> Fraction:
    """Exact trace of the inverse shifted Hilbert matrix."""
    inv = invert_exact(hilbert(n, s))
    return sum((inv[i][i] for i in range(n)), Fraction(0))


def rowsum_gon(a: int, b: int, c: int) -> int:
    """|row sum| of the inverse shifted Hilbert matrix that equals gon3.

    Sorts the labels internally (the row-sum expression is not symmetric);
    with a <= b <= c the matrix is H(a+1, b-a) and the row is
    (c+a-b)/2 + 1.
    """
    a, b, c = sorted((a, b, c))
    if not is_admissible_triple(a, b, c):
        raise NotAdmissible(f"({a},{b},{c}) is not an admissible triple")
    inv = invert_exact(hilbert(a + 1, b - a))
    row = inv[(c + a - b) // 2]
    total = sum(row)
    assert total.denominator == 1
    return abs(int(total))


def rowsum_signed(a: int, b: int, c: int) -> int:
    """The raw (signed) row sum behind rowsum_gon."""
    a, b, c = sorted((a, b, c))
    if not is_admissible_triple(a, b, c):
        raise NotAdmissible(f"({a},{b},{c}) is not an admissible triple")
    inv = invert_exact(hilbert(a + 1, b - a))
    total = sum(inv[(c + a - b) // 2])
    return int(total)


def q_hilbert(n: int, s: int = 0) -> Matrix:
    """The n x n quantum Hilbert matrix with entries 1/[i+j-1+s]_q."""
    if n < 1 or s < 0:
        raise ValueError("need n >= 1 and s >= 0")
    return [[RatFunc(LaurentPoly.one(), qint(i + j + 1 + s))
             for j in range(n)] for i in range(n)]


def q_hilbert_inverse(n: int, s: int = 0) -> Matrix:
    return invert_exact(q_hilbert(n, s))


def q_trace_inverse(n: int, s: int = 0) -> RatFunc:
    """Trace of the inverse quantum Hilbert matrix; reduces to a Laurent
    polynomial (the quantum gon of the regular quadrilateral when s = 0)."""
    inv = q_hilbert_inverse(n, s)
    total = inv[0][0]
    for i in range(1, n):
        total = total + inv[i][i]
    return total
