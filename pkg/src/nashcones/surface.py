"""The complete 2-D theory: Hirzebruch-Jung continued fractions, closed-form
Hilbert bases, the consecutive-sum boundary, blow-up descent, and full
surface resolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import intlinalg as la
from .errors import ZeroDenominator


@dataclass(frozen=True)
class HJExpansion:
    """Continued fraction [a_1, ..., a_k] with a_i > 1 for i > 1.

    convergents holds (p_i, q_i) for i = 0..k, starting at (1, 0).
    """

    terms: tuple
    convergents: tuple

    @property
    def value(self):
        return Fraction(*self.convergents[-1])


class StdCone2D(NamedTuple):
    """Standard-form 2-D cone spanned by (1,0) and (p,q), 0 <= p < q coprime."""

    p: int
    q: int

    @property
    def is_smooth(self):
        return self.q == 1


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def hj_eval(terms) -> Fraction:
    """Value of a_1 - 1/(a_2 - 1/(... - 1/a_k)), in lowest terms."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty continued fraction")
    t = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        if t == 0:
            raise ZeroDenominator("intermediate tail evaluates to 0")
        t = a - Fraction(1) / t
    return t


def _convergents(terms):
    ps = [0, 1]  # p_{-1}, p_0
    qs = [0]  # q_0
    for i, a in enumerate(terms, start=1):
        ps.append(a * ps[-1] - ps[-2])
        qs.append(1 if i == 1 else a * qs[-1] - qs[-2])
    return tuple(zip(ps[1:], qs))


def hj_expand(x) -> HJExpansion:
    """The unique expansion of a rational with a_i > 1 past the first term.

    Round up, subtract, invert; terminates because the denominators of the
    remainders strictly decrease.
    """
    x = Fraction(x)
    terms = []
    while True:
        a = _ceil(x)
        terms.append(a)
        rem = a - x
        if rem == 0:
            break
        x = 1 / rem
    exp = HJExpansion(tuple(terms), _convergents(terms))
    return exp


def _ext_gcd(a, b):
    """(x, y) with x*a + y*b == gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    return old_x, old_y


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def standardize_rays(r1, r2):
    """SL(2,Z)-normalize the cone spanned by two primitive rays.

    Returns (StdCone2D, transform) with transform mapping the clockwise
    edge to (1, 0) and the other edge to (p, q). The clockwise edge is the
    one from which the other ray lies counterclockwise within a half turn.
    """
    if _cross(r1, r2) == 0:
        raise ValueError("rays are parallel")
    if _cross(r1, r2) < 0:
        r1, r2 = r2, r1
    a, b = r1
    x, y = _ext_gcd(a, b)
    if x * a + y * b < 0:
        x, y = -x, -y
    first = ((x, y), (-b, a))
    if la.mat_vec(first, r1) != (1, 0):
        raise AssertionError("clockwise edge does not map to (1, 0)")
    e, f = la.mat_vec(first, r2)
    if f <= 0:
        raise AssertionError("clockwise edge selection failed")
    g = -(e // f)
    shear = ((1, g), (0, 1))
    transform = la.matmul(shear, first)
    return StdCone2D(e + g * f, f), transform


def standard_form_2d(c):
    """Standard form of a proper 2-D cone, with the SL(2,Z) transform."""
    if c.dim != 2:
        raise ValueError("standard_form_2d needs a 2-D cone")
    r1, r2 = c.rays
    return standardize_rays(r1, r2)


def hilbert_basis_2d(s) -> tuple:
    """Hilbert basis of the standard cone: the expansion convergents."""
    exp = hj_expand(Fraction(s.p, s.q))
    return exp.convergents


def consecutive_sums(s) -> tuple:
    """The boundary generators v_i + v_{i+1} of the blow-up polyhedron."""
    v = hilbert_basis_2d(s)
    return tuple(la.vadd(v[i], v[i + 1]) for i in range(len(v) - 1))


def blowup_vertices_2d(s) -> tuple:
    """Vertices of the blow-up polyhedron: consecutive sums minus the
    collinear ones."""
    v = hilbert_basis_2d(s)
    sums = consecutive_sums(s)
    v0, vk = v[0], v[-1]
    kept = []
    for j, w in enumerate(sums):
        d_in = v0 if j == 0 else la.vsub(w, sums[j - 1])
        d_out = vk if j == len(sums) - 1 else la.vsub(sums[j + 1], w)
        if _cross(d_in, d_out) != 0:
            kept.append(w)
    return tuple(kept)


def nash_blowup_2d(s):
    """Blow up a singular standard cone; children in standard form.

    Localizes the blow-up polyhedron at each boundary vertex and
    standardizes the resulting 2-D cones.
    """
    if s.q <= 1:
        raise ValueError("cone is smooth; nothing to blow up")
    v = hilbert_basis_2d(s)
    v0, vk = v[0], v[-1]
    verts = blowup_vertices_2d(s)
    children = []
    for j, w in enumerate(verts):
        toward_prev = v0 if j == 0 else la.vsub(verts[j - 1], w)
        toward_next = vk if j == len(verts) - 1 else la.vsub(verts[j + 1], w)
        std, _ = standardize_rays(la.primitive(toward_prev), la.primitive(toward_next))
        children.append(std)
    return children


def resolve_2d(s):
    """Iterate blow-ups breadth-first until every cone is smooth.

    Returns (steps, levels); levels[i] lists the cones after i steps.
    """
    levels = [[s]]
    while any(t.q > 1 for t in levels[-1]):
        nxt = []
        for t in levels[-1]:
            if t.q > 1:
                nxt.extend(nash_blowup_2d(t))
        levels.append(nxt)
    return len(levels) - 1, levels
