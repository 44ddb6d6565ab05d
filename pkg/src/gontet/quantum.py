"""q-deformations: gon_q on triples and polygons, q-duality, tet_q and its
Kauffman/unitary relatives, the quantum pentagon identity, and numeric
root-of-unity evaluation."""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .exactnum import (
    LaurentPoly,
    RatFunc,
    RootOfUnity,
    laurent_divexact,
    qfactorial,
    qint,
)
from .identities import Bipyramid, IdentityReport
from .tet import tet_perimeters
from .triples import (
    TetLabels,
    fusion_range,
    fusion_range_multi,
    is_admissible_tet,
    is_admissible_triple,
    is_q_admissible_tet,
    is_q_admissible_triple,
    q_fusion_range,
    q_fusion_range_multi,
    tet_faces,
)


class NotQAdmissible(ValueError):
    """Input fails q-admissibility at the requested root of unity."""


class NumericInstability(ArithmeticError):
    """Root-of-unity evaluation left an imaginary residue above tolerance."""


_GON_Q_CACHE: dict[tuple[int, int, int], LaurentPoly] = {}


def gon_q(a: int, b: int, c: int, root: RootOfUnity | None = None) -> LaurentPoly:
    """[sigma+1]!_q / ([m]!_q [n]!_q [p]!_q); zero off the admissible set."""
    if not is_admissible_triple(a, b, c):
        return LaurentPoly.zero()
    if root is not None and not is_q_admissible_triple(a, b, c, root):
        return LaurentPoly.zero()
    key = tuple(sorted((a, b, c)))
    v = _GON_Q_CACHE.get(key)
    if v is None:
        a, b, c = key
        m = (c + a - b) // 2
        n = (a + b - c) // 2
        p = (b + c - a) // 2
        v = qfactorial(m + n + p + 1)
        for k in sorted((m, n, p), reverse=True):
            if k > 1:
                v = laurent_divexact(v, qfactorial(k))
        _GON_Q_CACHE[key] = v
    return v


def gon_q_poly(xs, root: RootOfUnity | None = None) -> LaurentPoly:
    """gon_q on a multiset, by the same peeling recursion as gon_poly.

    With a root-of-unity context the diagonal ranges are truncated to the
    q-admissible fusion sets.
    """
    key = tuple(sorted(xs))
    if any(x < 0 for x in key):
        raise ValueError("labels must be non-negative")
    return _gon_q_poly_sorted(key, root)


_GON_Q_POLY_CACHE: dict[tuple, LaurentPoly] = {}


def _gon_q_poly_sorted(key: tuple[int, ...], root: RootOfUnity | None) -> LaurentPoly:
    n = len(key)
    if n == 0:
        return LaurentPoly.one()
    if n == 1:
        return LaurentPoly.one() if key[0] == 0 else LaurentPoly.zero()
    if n == 2:
        if key[0] != key[1]:
            return LaurentPoly.zero()
        if root is not None and 2 * key[0] > 2 * root.kappa - 4:
            return LaurentPoly.zero()
        return qint(key[0] + 1)
    if n == 3:
        return gon_q(*key, root)
    cache_key = (key, root.kappa if root else None)
    v = _GON_Q_POLY_CACHE.get(cache_key)
    if v is None:
        rest, u, w = key[:-2], key[-2], key[-1]
        if root is None:
            rng = set(fusion_range_multi(rest)) & set(fusion_range(u, w))
        else:
            rng = set(q_fusion_range_multi(rest, root)) & set(q_fusion_range(u, w, root))
        v = LaurentPoly.zero()
        for x in sorted(rng):
            g = gon_q(x, u, w, root)
            if g.is_zero():
                continue
            inner = _gon_q_poly_sorted(tuple(sorted(rest + (x,))), root)
            if inner.is_zero():
                continue
            v = v + laurent_divexact(inner * g, qint(x + 1))
        _GON_Q_POLY_CACHE[cache_key] = v
    return v


def _q_channel(p: int, q: int, r: int, s: int, root: RootOfUnity | None):
    if root is None:
        rng = sorted(set(fusion_range(p, q)) & set(fusion_range(r, s)))
    else:
        rng = sorted(set(q_fusion_range(p, q, root)) & set(q_fusion_range(r, s, root)))
    total = LaurentPoly.zero()
    for x in rng:
        g1 = gon_q(p, q, x, root)
        g2 = gon_q(r, s, x, root)
        if g1.is_zero() or g2.is_zero():
            continue
        total = total + laurent_divexact(g1 * g2, qint(x + 1))
    return total, rng


def verify_q_duality(a: int, b: int, c: int, d: int,
                     root: RootOfUnity | None = None) -> IdentityReport:
    """s/t/u channel sums of the q-duality identity.

    Exact Laurent comparison for generic q; when a root-of-unity context
    truncates any channel range, the identity only holds at the root itself
    and the comparison is numeric there.
    """
    s_val, s_rng = _q_channel(a, b, c, d, root)
    t_val, t_rng = _q_channel(a, d, b, c, root)
    u_val, u_rng = _q_channel(a, c, b, d, root)
    truncated = False
    if root is not None:
        s0 = _q_channel(a, b, c, d, None)[1]
        t0 = _q_channel(a, d, b, c, None)[1]
        u0 = _q_channel(a, c, b, d, None)[1]
        truncated = (s_rng != s0) or (t_rng != t0) or (u_rng != u0)
    if truncated:
        vals = [eval_at_root(p, root) for p in (s_val, t_val, u_val)]
        scale = max(abs(v) for v in vals) or 1.0
        equal = all(abs(v - vals[0]) / scale < 1e-9 for v in vals)
    else:
        equal = s_val == t_val == u_val
    return IdentityReport(
        lhs=s_val, rhs=t_val, equal=equal,
        witness={"s_range": s_rng, "t_range": t_rng, "u_range": u_rng,
                 "truncated": truncated},
    )


def tet_q(t: TetLabels, root: RootOfUnity | None = None) -> LaurentPoly:
    """Alternating sum of balanced q-multinomials over s in [max s, min t].

    Each summand is an exact quotient of q-factorials; the numerator
    factorial is built incrementally above the largest denominator factor.
    """
    if not is_admissible_tet(t):
        return LaurentPoly.zero()
    if root is not None and not is_q_admissible_tet(t, root):
        return LaurentPoly.zero()
    per = tet_perimeters(t)
    total = LaurentPoly.zero()
    for s in range(per.m_sigma, per.m_tau + 1):
        parts = sorted(
            [s - s_i for s_i in per.sigma] + [t_u - s for t_u in per.tau],
            reverse=True,
        )
        # [s+1]!/[parts[0]]! built directly as a product of q-integers
        num = LaurentPoly.one()
        for k in range(parts[0] + 1, s + 2):
            num = num * qint(k)
        for k in parts[1:]:
            if k > 1:
                num = laurent_divexact(num, qfactorial(k))
        total = total - num if s % 2 else total + num
    return total


def eval_at_root(p: LaurentPoly, root: RootOfUnity) -> complex:
    """Evaluate at q = exp(i*pi/kappa) with precision scaled to the
    coefficient size, so cancellation between huge terms is harmless."""
    if p.is_zero():
        return 0j
    bits = max(abs(v).bit_length() for v in p.c.values())
    digits = int(bits * 0.30103) + len(p.c).bit_length() + 30
    with mpmath.workdps(digits):
        q2 = mpmath.expjpi(mpmath.mpf(2) / root.kappa)
        lo, hi = p.min_exp(), p.max_exp()
        parities = {e & 1 for e in p.c}
        if len(parities) == 1:
            acc = mpmath.mpc(0)
            for e in range(hi, lo - 1, -2):
                acc = acc * q2 + p.c.get(e, 0)
            val = acc * mpmath.expjpi(mpmath.mpf(lo) / root.kappa)
        else:
            q = mpmath.expjpi(mpmath.mpf(1) / root.kappa)
            acc = mpmath.mpc(0)
            for e in range(hi, lo - 1, -1):
                acc = acc * q + p.c.get(e, 0)
            val = acc * q ** lo
        return complex(val)


def tet_q_at_root(t: TetLabels, root: RootOfUnity,
                  imag_tol: float = 1e-6) -> float:
    """Numeric tet_q at q = exp(i*pi/kappa); the value is real by the
    palindromic symmetry and the imaginary residue is checked, then dropped."""
    if not is_q_admissible_tet(t, root):
        raise NotQAdmissible(f"{t} is not q-admissible at kappa={root.kappa}")
    val = eval_at_root(tet_q(t, root), root)
    scale = max(abs(val.real), 1e-300)
    if abs(val.imag) > imag_tol * scale:
        raise NumericInstability(
            f"imaginary residue {val.imag:g} exceeds {imag_tol:g} relative")
    return val.real


def tet_k_q(t: TetLabels, root: RootOfUnity | None = None
            ) -> tuple[LaurentPoly, LaurentPoly]:
    """TET_q as an exact (numerator, denominator) pair J_q*tet_q / E_q."""
    value = tet_q(t, root)
    if value.is_zero():
        return LaurentPoly.zero(), LaurentPoly.one()
    per = tet_perimeters(t)
    num = value
    for t_u in per.tau:
        for s_i in per.sigma:
            num = num * qfactorial(t_u - s_i)
    den = LaurentPoly.one()
    for x in t[0] + t[1]:
        den = den * qfactorial(x)
    return num, den


def sixj_q(t: TetLabels, root: RootOfUnity) -> complex:
    """Quantum 6j at the root: tet_q over sqrt|product of face gon_q|."""
    if not is_q_admissible_tet(t, root):
        raise NotQAdmissible(f"{t} is not q-admissible at kappa={root.kappa}")
    num = eval_at_root(tet_q(t, root), root)
    prod = 1.0
    for face in tet_faces(t):
        prod *= eval_at_root(gon_q(*face, root), root).real
    if prod == 0:
        raise NumericInstability("a face gon_q vanishes at this root")
    return num / math.sqrt(abs(prod))


def _hed1_q(bp: Bipyramid, root: RootOfUnity | None) -> RatFunc:
    a, b, c, d, e, f, g, h, k = bp
    t1 = tet_q(((a, b, c), (d, e, f)), root)
    t2 = tet_q(((a, b, c), (g, h, k)), root)
    if t1.is_zero() or t2.is_zero():
        return RatFunc.from_int(0)
    sign = -1 if ((a + b + c) // 2) % 2 else 1
    return RatFunc(t1 * t2 * sign, gon_q(a, b, c, root))


def _hed2_q(bp: Bipyramid, root: RootOfUnity | None) -> tuple[RatFunc, bool]:
    a, b, c, d, e, f, g, h, k = bp
    if root is None:
        rng = sorted(set(fusion_range(d, g)) & set(fusion_range(f, k))
                     & set(fusion_range(h, e)))
        truncated = False
    else:
        rng = sorted(set(q_fusion_range(d, g, root)) & set(q_fusion_range(f, k, root))
                     & set(q_fusion_range(h, e, root)))
        rng_full = sorted(set(fusion_range(d, g)) & set(fusion_range(f, k))
                          & set(fusion_range(h, e)))
        truncated = rng != rng_full
    total = RatFunc.from_int(0)
    for x in rng:
        t1 = tet_q(((c, e, d), (x, g, h)), root)
        t2 = tet_q(((b, d, f), (x, k, g)), root)
        t3 = tet_q(((a, e, f), (x, k, h)), root)
        num = t1 * t2 * t3 * qint(x + 1)
        if num.is_zero():
            continue
        den = gon_q(x, d, g, root) * gon_q(x, f, k, root) * gon_q(x, e, h, root)
        sign = x + (x + d + g) // 2 + (x + f + k) // 2 + (x + e + h) // 2
        if sign % 2:
            num = -num
        total = total + RatFunc(num, den)
    return total, truncated


def verify_q_pentagon(bp: Bipyramid, root: RootOfUnity | None = None) -> IdentityReport:
    """Quantum double-tetrahedron identity hed1_q = hed2_q.

    Symbolic rational-function comparison for generic q or when the root
    does not truncate the diagonal range; numeric comparison at the root
    otherwise (the truncated sums differ as polynomials in general).
    """
    if root is not None:
        a, b, c, d, e, f, g, h, k = bp
        tets = [((a, b, c), (d, e, f)), ((a, b, c), (g, h, k))]
        if not all(is_q_admissible_tet(t, root) for t in tets):
            raise NotQAdmissible("bipyramid is not q-admissible at this root")
    lhs = _hed1_q(bp, root)
    rhs, truncated = _hed2_q(bp, root)
    if truncated:
        assert root is not None
        l = eval_at_root(lhs.num, root) / eval_at_root(lhs.den, root)
        r = eval_at_root(rhs.num, root) / eval_at_root(rhs.den, root)
        scale = max(abs(l), abs(r)) or 1.0
        equal = abs(l - r) / scale < 1e-9
    else:
        equal = lhs == rhs
    return IdentityReport(lhs=lhs, rhs=rhs, equal=equal,
                          witness={"truncated": truncated})


def clear_caches() -> None:
    _GON_Q_CACHE.clear()
    _GON_Q_POLY_CACHE.clear()
