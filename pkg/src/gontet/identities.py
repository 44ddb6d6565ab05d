"""Composite topological identities: duality channels, bipyramid gluings,
barycentric subdivision, the cube dissection sum and the constant-term
oracle for gon."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .gon import gon3, gon_poly
from .tet import tet
from .triples import (
    TetLabels,
    fusion_range,
    fusion_range_multi,
    is_admissible_tet,
    is_admissible_triple,
)

Bipyramid = tuple[int, int, int, int, int, int, int, int, int]


class NonIntegral(ArithmeticError):
    """An exact division that the theory guarantees failed; signals a bug."""


class SizeLimit(ValueError):
    """Desk-scale oracle invoked beyond its intended size."""


@dataclass
class IdentityReport:
    lhs: object
    rhs: object
    equal: bool
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
            "witness": {k: (list(v) if isinstance(v, (list, tuple, set)) else str(v))
                        for k, v in self.witness.items()},
        }


def _channel_sum(p: int, q: int, r: int, s: int) -> tuple[int, list[int]]:
    rng = sorted(set(fusion_range(p, q)) & set(fusion_range(r, s)))
    total = 0
    for x in rng:
        g1 = gon3(p, q, x)
        g2 = gon3(r, s, x)
        if g1 and g2:
            total += g1 * g2 // (x + 1)
    return total, rng


def verify_duality(a: int, b: int, c: int, d: int) -> IdentityReport:
    """Compare the s-, t- and u-channel decompositions of a quadrilateral."""
    s_val, s_rng = _channel_sum(a, b, c, d)
    t_val, t_rng = _channel_sum(a, d, b, c)
    u_val, u_rng = _channel_sum(a, c, b, d)
    equal = s_val == t_val == u_val
    return IdentityReport(
        lhs=s_val, rhs=t_val, equal=equal,
        witness={"s_range": s_rng, "t_range": t_rng, "u_range": u_rng,
                 "u_value": u_val, "value": s_val},
    )


def hed1(bp: Bipyramid) -> int:
    """Two-tetrahedron bipyramid value: tet * tet over the signed base gon."""
    a, b, c, d, e, f, g, h, k = bp
    t1 = tet(((a, b, c), (d, e, f)))
    if t1 == 0:
        return 0
    t2 = tet(((a, b, c), (g, h, k)))
    if t2 == 0:
        return 0
    base = gon3(a, b, c)
    sign = -1 if ((a + b + c) // 2) % 2 else 1
    num = sign * t1 * t2
    quot, rem = divmod(num, base)
    if rem:
        raise NonIntegral(f"hed1 of {bp} is not an integer: {num}/{base}")
    return quot


def hed2_range(bp: Bipyramid) -> list[int]:
    """Diagonal values x with all three shared faces admissible."""
    a, b, c, d, e, f, g, h, k = bp
    return sorted(
        set(fusion_range(d, g)) & set(fusion_range(f, k)) & set(fusion_range(h, e))
    )


def hed2(bp: Bipyramid) -> Fraction:
    """Three-tetrahedron bipyramid sum over the top-to-bottom diagonal."""
    a, b, c, d, e, f, g, h, k = bp
    total = Fraction(0)
    for x in hed2_range(bp):
        t1 = tet(((c, e, d), (x, g, h)))
        t2 = tet(((b, d, f), (x, k, g)))
        t3 = tet(((a, e, f), (x, k, h)))
        num = t1 * t2 * t3 * (x + 1)
        if num == 0:
            continue
        if x % 2:
            num = -num
        den = gon3(x, d, g) * gon3(x, f, k) * gon3(x, e, h)
        sign_exp = (x + d + g) // 2 + (x + f + k) // 2 + (x + e + h) // 2
        if sign_exp % 2:
            den = -den
        total += Fraction(num, den)
    return total


def barycentric_enum(t: TetLabels, delta: int) -> list[tuple[int, int, int]]:
    """All (alpha, beta, gamma) making the six subdivision faces admissible.

    For T = ((a,b,c),(A,B,C)) and a fixed internal edge delta, the six new
    faces are (alpha,beta,c), (a,beta,gamma), (alpha,b,gamma),
    (A,alpha,delta), (beta,B,delta), (gamma,delta,C).
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    (a, b, c), (A, B, C) = t
    out = []
    for alpha in fusion_range(A, delta):
        for beta in fusion_range(B, delta):
            if not is_admissible_triple(alpha, beta, c):
                continue
            for gamma in fusion_range(C, delta):
                if is_admissible_triple(a, beta, gamma) and \
                        is_admissible_triple(alpha, b, gamma):
                    out.append((alpha, beta, gamma))
    return sorted(out)


def barycentric_P(t: TetLabels, delta: int) -> Fraction:
    """The subdivision sum P(delta); P(delta)/(delta+1)^2 equals tet(t)."""
    (a, b, c), (A, B, C) = t
    total = Fraction(0)
    for alpha, beta, gamma in barycentric_enum(t, delta):
        num = (
            tet(((a, b, c), (alpha, beta, gamma)))
            * tet(((a, B, C), (delta, gamma, beta)))
            * tet(((C, A, b), (alpha, gamma, delta)))
            * tet(((A, B, c), (beta, alpha, delta)))
        )
        if num == 0:
            continue
        den = (
            gon3(a, beta, gamma) * gon3(A, alpha, delta) * gon3(alpha, b, gamma)
            * gon3(beta, B, delta) * gon3(alpha, beta, c) * gon3(gamma, delta, C)
        )
        p2_exp = alpha + beta + gamma + delta
        p2 = (alpha + 1) * (beta + 1) * (gamma + 1) * (delta + 1)
        # each face contributes (-1)^(semi-perimeter); the published per-term
        # values pin the last factor to (gamma+C+delta)/2
        p3_exp = (
            (a + beta + gamma) // 2 + (alpha + A + delta) // 2
            + (alpha + b + gamma) // 2 + (beta + B + delta) // 2
            + (alpha + beta + c) // 2 + (gamma + C + delta) // 2
        )
        sign = -1 if (p2_exp + p3_exp) % 2 else 1
        total += Fraction(sign * num * p2, den)
    return total


def barycentric_stable_delta(t: TetLabels, probe: int = 3) -> int:
    """Smallest delta after which the solution count stays constant, found
    by scanning until `probe` consecutive counts agree."""
    counts = [len(barycentric_enum(t, 0))]
    d = 0
    while True:
        d += 1
        counts.append(len(barycentric_enum(t, d)))
        if len(counts) > probe and len(set(counts[-probe - 1:])) == 1:
            return d - probe
        if d > 4 * (sum(t[0]) + sum(t[1]) + 4):
            raise RuntimeError("barycentric cardinality failed to stabilize")


# ---------------------------------------------------------------------------
# cube
# ---------------------------------------------------------------------------

# edge order of the 12 fixed parallelepiped edges
CUBE_EDGE_ORDER = ("01", "13", "32", "20", "45", "57", "76", "64", "04", "15", "26", "37")
# face diagonals introduced by the five-tetrahedron dissection
CUBE_DIAGONALS = ("14", "17", "27", "24", "12", "47")

# the five dissection tetrahedra by vertex set, written as ((face),(opposite))
_CUBE_TETS = (
    (("01", "12", "02"), ("24", "04", "14")),
    (("24", "46", "26"), ("67", "27", "47")),
    (("14", "45", "15"), ("57", "17", "47")),
    (("12", "23", "13"), ("37", "17", "27")),
    (("12", "24", "14"), ("47", "17", "27")),
)
# shared faces = the four faces of the central tetrahedron [1,2,4,7]
_CUBE_SHARED_FACES = (("12", "24", "14"), ("12", "27", "17"),
                      ("14", "47", "17"), ("24", "47", "27"))


def _norm_edge(e: str) -> str:
    return e if e[0] < e[1] else e[1] + e[0]


def cube_census(edges: Sequence[int], convention: str = "plain") -> tuple[int, int]:
    """Cube dissection sum and the number of admissible diagonal assignments.

    `edges` lists the 12 fixed labels in CUBE_EDGE_ORDER.  The convention
    selects the sign treatment of the statistical weights; "plain" (product
    of five tets over the four shared-face gons times (x+1) per diagonal)
    is the one reproducing the published reference values.
    """
    if len(edges) != 12:
        raise ValueError("a parallelepiped has 12 edges")
    if any(x < 0 for x in edges):
        raise ValueError("labels must be non-negative")
    lab = {_norm_edge(e): int(v) for e, v in zip(CUBE_EDGE_ORDER, edges)}

    def rng(d: str) -> list[int]:
        # each diagonal closes two triangles with fixed cube edges
        c1, c2 = _DIAG_CONSTRAINTS[d]
        s = set(fusion_range(lab[c1[0]], lab[c1[1]])) & \
            set(fusion_range(lab[c2[0]], lab[c2[1]]))
        return sorted(s)

    total = Fraction(0)
    count = 0
    d14, d17, d27, d24, d12, d47 = (rng(d) for d in CUBE_DIAGONALS)
    for x14 in d14:
        for x17 in d17:
            for x27 in d27:
                for x24 in d24:
                    for x12 in d12:
                        if not is_admissible_triple(x12, x24, x14):
                            continue
                        if not is_admissible_triple(x12, x27, x17):
                            continue
                        for x47 in d47:
                            diag = {"14": x14, "17": x17, "27": x27,
                                    "24": x24, "12": x12, "47": x47}
                            full = dict(lab)
                            full.update(diag)
                            tets = [tuple(tuple(full[e] for e in tri) for tri in tt)
                                    for tt in _CUBE_TETS]
                            if not all(is_admissible_tet(tt) for tt in tets):
                                continue
                            count += 1
                            num = 1
                            for tt in tets:
                                num *= tet(tt)
                            if num == 0:
                                continue
                            den = 1
                            sign_exp = 0
                            for face in _CUBE_SHARED_FACES:
                                x, y, z = (full[e] for e in face)
                                den *= gon3(x, y, z)
                                sign_exp += (x + y + z) // 2
                            weight = 1
                            for x in diag.values():
                                weight *= x + 1
                                sign_exp += x
                            if convention == "plain":
                                total += Fraction(num * weight, den)
                            elif convention == "signed":
                                term = Fraction(num * weight, den)
                                total += -term if sign_exp % 2 else term
                            else:
                                raise ValueError(f"unknown convention {convention!r}")
    if total.denominator != 1:
        raise NonIntegral(f"cube sum is not an integer: {total}")
    return total.numerator, count


_DIAG_CONSTRAINTS = {
    # diagonal -> the two cube-edge pairs it must fuse with
    "12": (("01", "02"), ("13", "23")),
    "14": (("01", "04"), ("45", "15")),
    "24": (("02", "04"), ("26", "46")),
    "17": (("13", "37"), ("15", "57")),
    "27": (("23", "37"), ("26", "67")),
    "47": (("45", "57"), ("46", "67")),
}


def cube(edges: Sequence[int]) -> int:
    return cube_census(edges)[0]


# ---------------------------------------------------------------------------
# Dyson constant term
# ---------------------------------------------------------------------------

def dyson_ct(m: int, n: int, p: int) -> int:
    """Constant term of the twelve-factor trivariate Laurent product.

    Equals gon(m+n, n+p, p+m); desk-scale oracle, limited to m+n+p <= 12.
    """
    if min(m, n, p) < 0:
        raise ValueError("exponents must be non-negative")
    if m + n + p > 12:
        raise SizeLimit("dyson_ct is a desk-scale oracle (m+n+p <= 12)")
    # factors as (exponent-vector of the monomial, power)
    u, v, w = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    neg = lambda t: tuple(-x for x in t)
    add = lambda s, t: tuple(x + y for x, y in zip(s, t))
    uv = add(u, v)
    vw = add(v, w)
    uvw = add(uv, w)
    factors = [
        (neg(w), 1), (u, m), (neg(u), n), (v, n), (neg(v), p), (w, p),
        (neg(vw), 1), (uv, m), (vw, n), (neg(uv), p), (neg(uvw), 1), (uvw, m),
    ]
    poly: dict[tuple[int, int, int], int] = {(0, 0, 0): 1}
    from math import comb
    for mono, power in factors:
        if power == 0:
            continue
        expansion = [((mono[0] * i, mono[1] * i, mono[2] * i),
                      (-1) ** i * comb(power, i)) for i in range(power + 1)]
        nxt: dict[tuple[int, int, int], int] = {}
        for e1, c1 in poly.items():
            for e2, c2 in expansion:
                e = add(e1, e2)
                val = nxt.get(e, 0) + c1 * c2
                if val:
                    nxt[e] = val
                else:
                    del nxt[e]
        poly = nxt
    return poly.get((0, 0, 0), 0)
