"""Evaluation prescriptions Z, P, K, U for the loop, theta and tetrahedron
spin networks, with the J, E, N conversion factors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exactnum import Surd
from .gon import gon3
from .tet import tet
from .triples import NotAdmissible, TetLabels, is_admissible_tet, is_admissible_triple, tet_faces


class Prescription(Enum):
    Z = "Z"  # integer
    P = "P"  # Penrose
    K = "K"  # Kauffman
    U = "U"  # unitary


@dataclass(frozen=True)
class Loop:
    n: int

    def is_admissible(self) -> bool:
        return self.n >= 0


@dataclass(frozen=True)
class Theta:
    a: int
    b: int
    c: int

    def is_admissible(self) -> bool:
        return is_admissible_triple(self.a, self.b, self.c)


@dataclass(frozen=True)
class Tetra:
    labels: TetLabels

    def is_admissible(self) -> bool:
        return is_admissible_tet(self.labels)


ColoredGraph = Loop | Theta | Tetra


def _vertex_factors(triple) -> int:
    s = sum(triple) // 2
    out = 1
    for v in triple:
        out *= math.factorial(s - v)
    return out


def factors(g: ColoredGraph) -> tuple[int, int, Surd]:
    """The conversion factors (J, E, N) of the colored graph.

    J multiplies the internal-variable factorials over the vertices, E the
    edge factorials, and N is the product over vertices of sqrt|Theta_v|
    with Theta_v the integer theta of the three incident edges; N is kept
    exact as a surd.
    """
    if not g.is_admissible():
        raise NotAdmissible(f"{g} is not admissible")
    if isinstance(g, Loop):
        return 1, 1, Surd(1)
    if isinstance(g, Theta):
        tri = (g.a, g.b, g.c)
        j = _vertex_factors(tri) ** 2
        e = math.factorial(g.a) * math.factorial(g.b) * math.factorial(g.c)
        # two vertices share the same triple, so N = |Theta_v| exactly
        return j, e, Surd(gon3(*tri))
    faces = tet_faces(g.labels)
    j = 1
    for f in faces:
        j *= _vertex_factors(f)
    e = 1
    for x in g.labels[0] + g.labels[1]:
        e *= math.factorial(x)
    n = Surd(1)
    for f in faces:
        n = n * Surd.sqrt_of(gon3(*f))
    return j, e, n


def evaluate(g: ColoredGraph, p: Prescription):
    """Exact value of the spin network under the chosen prescription.

    Loops evaluate to (-1)^n (n+1) under every prescription; theta and
    tetrahedron values start from the integer evaluation and apply the
    J, E, N factors.
    """
    if not g.is_admissible():
        raise NotAdmissible(f"{g} is not admissible")
    if isinstance(g, Loop):
        return -(g.n + 1) if g.n % 2 else g.n + 1

    if isinstance(g, Theta):
        s = (g.a + g.b + g.c) // 2
        z = gon3(g.a, g.b, g.c)
        if s % 2:
            z = -z
    else:
        z = tet(g.labels)

    if p is Prescription.Z:
        return z
    j, e, n = factors(g)
    if p is Prescription.P:
        return j * z
    if p is Prescription.K:
        return Fraction(j * z, e)
    # unitary: divide by N = n.coeff * sqrt(n.radicand)
    rad = n.radicand
    den = n.coeff * rad
    return Surd(Fraction(z) / den, rad)
