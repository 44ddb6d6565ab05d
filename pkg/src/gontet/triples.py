"""Admissibility predicates, internal variables, fusion ranges, tetrahedron
canonicalization and metric classification."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Iterable, Sequence

from .exactnum import RootOfUnity

Triple = tuple[int, int, int]
TetLabels = tuple[Triple, Triple]


class NotAdmissible(ValueError):
    """Raised by operations that require an admissible input."""


def is_admissible_triple(a: int, b: int, c: int) -> bool:
    """Non-negative, triangular, even perimeter."""
    return (
        a >= 0 and b >= 0 and c >= 0
        and a + b >= c and b + c >= a and c + a >= b
        and (a + b + c) % 2 == 0
    )


@dataclass(frozen=True)
class InternalVars:
    m: int
    n: int
    p: int
    sigma: int

    def external(self) -> Triple:
        return (self.m + self.n, self.n + self.p, self.p + self.m)


def internal_vars(a: int, b: int, c: int) -> InternalVars:
    """Internal variables m=(c+a-b)/2, n=(a+b-c)/2, p=(b+c-a)/2."""
    if not is_admissible_triple(a, b, c):
        raise NotAdmissible(f"({a},{b},{c}) is not an admissible triple")
    m = (c + a - b) // 2
    n = (a + b - c) // 2
    p = (b + c - a) // 2
    return InternalVars(m, n, p, m + n + p)


def fusion_range(a: int, b: int) -> list[int]:
    """The arithmetic progression |a-b|, |a-b|+2, ..., a+b."""
    if a < 0 or b < 0:
        raise ValueError("fusion_range expects non-negative labels")
    return list(range(abs(a - b), a + b + 1, 2))


def fusion_range_multi(xs: Iterable[int]) -> list[int]:
    """Left fold of fusion_range over a list, with set-union semantics.

    The empty product is the trivial representation {0}.
    """
    acc = {0}
    for x in xs:
        if x < 0:
            raise ValueError("fusion_range_multi expects non-negative labels")
        acc = {c for y in acc for c in range(abs(y - x), y + x + 1, 2)}
    return sorted(acc)


def q_fusion_range(a: int, b: int, root: RootOfUnity) -> list[int]:
    """Classical fusion range truncated to triples with a+b+c <= 2*kappa-4."""
    cap = 2 * root.kappa - 4
    return [c for c in fusion_range(a, b) if a + b + c <= cap]


def q_fusion_range_multi(xs: Sequence[int], root: RootOfUnity) -> list[int]:
    """Iterated q-fusion with the same pairwise truncation rule."""
    cap = 2 * root.kappa - 4
    acc = {0}
    for x in xs:
        acc = {c for y in acc
               for c in range(abs(y - x), min(y + x, cap - y - x) + 1, 2)}
    return sorted(acc)


def is_q_admissible_triple(a: int, b: int, c: int, root: RootOfUnity) -> bool:
    return is_admissible_triple(a, b, c) and a + b + c <= 2 * root.kappa - 4


# ---------------------------------------------------------------------------
# tetrahedra
# ---------------------------------------------------------------------------

def tet_faces(t: TetLabels) -> tuple[Triple, Triple, Triple, Triple]:
    """The four face triples (a,b,c), (b,d,f), (a,e,f), (c,d,e)."""
    (a, b, c), (d, e, f) = t
    return ((a, b, c), (b, d, f), (a, e, f), (c, d, e))


def is_admissible_tet(t: TetLabels) -> bool:
    return all(is_admissible_triple(*f) for f in tet_faces(t))


def is_q_admissible_tet(t: TetLabels, root: RootOfUnity) -> bool:
    return all(is_q_admissible_triple(*f, root) for f in tet_faces(t))


def tet_images(t: TetLabels) -> list[TetLabels]:
    """The 24 tetrahedral-symmetry images of the labelling.

    Opposite-edge columns (a,d), (b,e), (c,f) may be permuted, and the two
    rows may be exchanged in an even number of columns.
    """
    (a, b, c), (d, e, f) = t
    cols = ((a, d), (b, e), (c, f))
    out = []
    for p in permutations((0, 1, 2)):
        arranged = [cols[i] for i in p]
        for sw in ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)):
            first = tuple(arranged[i][sw[i]] for i in range(3))
            second = tuple(arranged[i][1 - sw[i]] for i in range(3))
            out.append((first, second))
    return out


def canonical_tet(t: TetLabels) -> TetLabels:
    """Lexicographically least representative of the symmetry orbit."""
    return min(tet_images(t), key=lambda s: s[0] + s[1])


class GeomKind(Enum):
    EUCLIDEAN = "Euclidean"
    MINKOWSKIAN = "Minkowskian"
    FLAT = "Flat"


@dataclass(frozen=True)
class GeomClass:
    kind: GeomKind
    delta: int


def cayley_menger(t: TetLabels) -> GeomClass:
    """Metric classification by the sign of the Cayley-Menger determinant.

    Vertices 1..4 carry the edges a=12, b=23, c=13, d=34, e=14, f=24, the
    layout whose faces are exactly the admissible faces of the labelling.
    For Euclidean label sets the volume is sqrt(delta/288).
    """
    (a, b, c), (d, e, f) = t
    m = [
        [0, a * a, c * c, e * e, 1],
        [a * a, 0, b * b, f * f, 1],
        [c * c, b * b, 0, d * d, 1],
        [e * e, f * f, d * d, 0, 1],
        [1, 1, 1, 1, 0],
    ]
    delta = _int_det(m)
    if delta > 0:
        kind = GeomKind.EUCLIDEAN
    elif delta < 0:
        kind = GeomKind.MINKOWSKIAN
    else:
        kind = GeomKind.FLAT
    return GeomClass(kind, delta)


def _int_det(m: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of a small integer matrix."""
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
