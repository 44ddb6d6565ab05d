"""The tetrahedral symbol tet, its Kauffman and unitary relatives, Regge
symmetry, Racah cells and bi-unitarity sums."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Surd
from .gon import gon3, gon3_prime_factors
from .triples import (
    NotAdmissible,
    TetLabels,
    fusion_range,
    is_admissible_tet,
    is_admissible_triple,
    tet_faces,
)


class OddArgument(ValueError):
    """tet_regular only exists for even arguments."""


@dataclass(frozen=True)
class TetPerimeters:
    sigma: tuple[int, int, int, int]
    tau: tuple[int, int, int]
    m_sigma: int
    m_tau: int


def tet_perimeters(t: TetLabels) -> TetPerimeters:
    """Face semi-perimeters sigma(1..4) and quadrilateral semi-perimeters
    tau(1..3) of the labelling; requires even face perimeters."""
    (a, b, c), (d, e, f) = t
    tot = a + b + c + d + e + f
    for x, y, z in tet_faces(t):
        if (x + y + z) % 2:
            raise NotAdmissible("face perimeters must be even")
    sigma = ((a + b + c) // 2, (b + d + f) // 2, (a + e + f) // 2, (c + d + e) // 2)
    tau = ((a + b + d + e) // 2, (a + f + d + c) // 2, (e + f + b + c) // 2)
    assert sum(sigma) == sum(tau) == tot
    return TetPerimeters(sigma, tau, max(sigma), min(tau))


def tet(t: TetLabels) -> int:
    """Alternating sum of multinomials over s in [max sigma, min tau].

    The first term is an exact factorial quotient; each following term is a
    multiplicative update by small integer factors, so the whole sum stays
    in integer arithmetic.
    """
    if not is_admissible_tet(t):
        return 0
    per = tet_perimeters(t)
    lo, hi = per.m_sigma, per.m_tau
    if lo > hi:
        return 0
    fact = math.factorial
    den = 1
    for s_i in per.sigma:
        den *= fact(lo - s_i)
    for t_u in per.tau:
        den *= fact(t_u - lo)
    term = fact(lo + 1) // den
    total = -term if lo % 2 else term
    for s in range(lo, hi):
        num = s + 2
        for t_u in per.tau:
            num *= t_u - s
        den = 1
        for s_i in per.sigma:
            den *= s + 1 - s_i
        term = term * num // den
        total = total - term if (s + 1) % 2 else total + term
    return total


def tet_regular(two_n: int) -> int:
    """tet of the regular labelling (2n,...,2n) via the terminating series.

    Independent code path from tet (binomial-free factorial terms).
    """
    if two_n < 0 or two_n % 2:
        raise OddArgument("regular tet argument must be even and non-negative")
    n = two_n // 2
    fact = math.factorial
    total = 0
    for k in range(n + 1):
        term = fact(4 * n + 1 - k) // (fact(n - k) ** 4 * fact(k) ** 3)
        total = total - term if k % 2 else total + term
    return total


def _j_factor(per: TetPerimeters) -> int:
    j = 1
    for t_u in per.tau:
        for s_i in per.sigma:
            j *= math.factorial(t_u - s_i)
    return j


def _e_factor(t: TetLabels) -> int:
    (a, b, c), (d, e, f) = t
    out = 1
    for x in (a, b, c, d, e, f):
        out *= math.factorial(x)
    return out


def tet_k(t: TetLabels) -> Fraction:
    """The Kauffman tetrahedral value J/E * tet."""
    v = tet(t)
    if v == 0:
        return Fraction(0)
    per = tet_perimeters(t)
    return Fraction(_j_factor(per) * v, _e_factor(t))


def sixj(t: TetLabels) -> Surd:
    """tet over the square root of the four face gons, as a normalized surd.

    The radicand is split squarefree from the Legendre factorizations of the
    gons, so no big-integer factorization is ever needed.
    """
    v = tet(t)
    if v == 0:
        return Surd(0)
    exps: dict[int, int] = {}
    prod = 1
    for face in tet_faces(t):
        g = gon3(*face)
        prod *= g
        for p, e in gon3_prime_factors(*face).items():
            exps[p] = exps.get(p, 0) + e
    root = 1
    for p, e in exps.items():
        root *= p ** (e // 2)
    rad = prod // (root * root)
    # tet/sqrt(G) = tet*sqrt(rad)/(root*rad)
    return Surd(Fraction(v, root * rad), rad)


def regge_images(t: TetLabels) -> list[TetLabels]:
    """The three semi-perimeter-shifted labellings of eqs. tested for
    invariance; images of an admissible input are asserted admissible."""
    if not is_admissible_tet(t):
        raise NotAdmissible("Regge shifts are defined on admissible labels")
    (a, b, c), (d, e, f) = t
    p12 = (a + b + d + e) // 2
    p23 = (b + c + e + f) // 2
    p31 = (a + c + d + f) // 2
    images = [
        ((p12 - a, p12 - b, c), (p12 - d, p12 - e, f)),
        ((a, p23 - b, p23 - c), (d, p23 - e, p23 - f)),
        ((p31 - a, b, p31 - c), (p31 - d, e, p31 - f)),
    ]
    for im in images:
        if any(x < 0 for pair in im for x in pair) or not is_admissible_tet(im):
            raise NotAdmissible(f"Regge image {im} of {t} is not admissible")
    return images


def racah_cell(t: TetLabels) -> Surd:
    """(-1)^((a+c+d+f)/2) * sqrt((b+1)(e+1)) * sixj(t)."""
    if not is_admissible_tet(t):
        raise NotAdmissible("Racah cells are defined on admissible labels")
    (a, b, c), (d, e, f) = t
    sign = -1 if ((a + c + d + f) // 2) % 2 else 1
    return sign * Surd(1, (b + 1) * (e + 1)) * sixj(t)


def biunitarity_sum(fixed: tuple[int, int, int, int, int], slot: str) -> Fraction:
    """Sum of (b+1)(e+1) tet^2 / (product of face gons) over the free slot.

    slot "b": fixed = (a, c, d, e, f), summing b over the intersection of
    the fusion ranges of (a,c) and (d,f).  slot "e": fixed = (a, b, c, d, f),
    summing e over the ranges of (a,f) and (c,d).
    """
    if any(x < 0 for x in fixed):
        raise ValueError("labels must be non-negative")
    total = Fraction(0)
    if slot == "b":
        a, c, d, e, f = fixed
        rng = sorted(set(fusion_range(a, c)) & set(fusion_range(d, f)))
        tets = [((a, b, c), (d, e, f)) for b in rng]
    elif slot == "e":
        a, b, c, d, f = fixed
        rng = sorted(set(fusion_range(a, f)) & set(fusion_range(c, d)))
        tets = [((a, b, c), (d, e, f)) for e in rng]
    else:
        raise ValueError("slot must be 'b' or 'e'")
    for t in tets:
        if not is_admissible_tet(t):
            continue
        (a, b, c), (d, e, f) = t
        v = tet(t)
        den = 1
        for face in tet_faces(t):
            den *= gon3(*face)
        total += Fraction((b + 1) * (e + 1) * v * v, den)
    return total


def is_admissible(a: int, b: int, c: int) -> bool:
    return is_admissible_triple(a, b, c)
