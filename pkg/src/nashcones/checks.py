"""Executable property sweeps over the 2-D theory.

Each sweep covers every coprime standard cone (p, q) up to a bound and is
shared between the command-line verify suite and the test suite.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import gcd

from .cones import cone_from_rays, minkowski_sum_hull
from .nash import nash_blowup
from .surface import (
    StdCone2D,
    hilbert_basis_2d,
    hj_eval,
    hj_expand,
    nash_blowup_2d,
    resolve_2d,
    standard_form_2d,
    standardize_rays,
)
from . import intlinalg as la


def standard_pairs(q_max):
    for q in range(1, q_max + 1):
        for p in range(q):
            if gcd(p, q) == 1:
                yield p, q


def mirror(s):
    """The standard form of the same cone with the edge roles swapped."""
    if s.q == 1:
        return s
    return StdCone2D(pow(s.p, -1, s.q), s.q)


def check_convergent_identities(q_max=200):
    """Determinant identity, lowest terms, increasing denominators, and
    round-trip evaluation for every expansion with q <= q_max."""
    for p, q in standard_pairs(q_max):
        exp = hj_expand(Fraction(p, q))
        v = exp.convergents
        if exp.value != Fraction(p, q):
            return False
        if any(a <= 1 for a in exp.terms[1:]):
            return False
        for i in range(1, len(v)):
            if v[i - 1][0] * v[i][1] - v[i][0] * v[i - 1][1] != 1:
                return False
            if gcd(v[i][0], v[i][1]) != 1:
                return False
            if v[i][1] <= v[i - 1][1] and i > 1:
                return False
    return True


def check_subword_denominators(q_max=100):
    """Denominator of the (i..j] subword equals p_i q_j - p_j q_i, and
    interior subwords have strictly smaller denominator than the whole."""
    for p, q in standard_pairs(q_max):
        exp = hj_expand(Fraction(p, q))
        a = exp.terms
        v = exp.convergents
        k = len(a)
        for i in range(k):
            for j in range(i + 1, k + 1):
                value = hj_eval(a[i:j])
                expected = v[i][0] * v[j][1] - v[j][0] * v[i][1]
                if value.denominator != expected:
                    return False
                if i >= 1 and (i, j) != (0, k) and j < k and value.denominator >= q:
                    return False
    return True


def _sum_points(basis):
    pts = set()
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            pts.add(la.vadd(basis[i], basis[j]))
    return pts


def check_hull_reduction(q_max=30):
    """cone + Hull(all pair sums) equals cone + Hull(consecutive sums),
    compared vertex-for-vertex and inequality-for-inequality through the
    general kernel."""
    for p, q in standard_pairs(q_max):
        if q == 1:
            continue
        cone = cone_from_rays([(1, 0), (p, q)])
        v = hilbert_basis_2d(StdCone2D(p, q))
        full = _sum_points(v)
        consecutive = {la.vadd(v[i], v[i + 1]) for i in range(len(v) - 1)}
        pa = minkowski_sum_hull(cone, full)
        pb = minkowski_sum_hull(cone, consecutive)
        if pa.vertices != pb.vertices or pa.inequalities != pb.inequalities:
            return False
    return True


def check_descent(q_max=100):
    """q strictly drops under blow-up except at p = q - 1, where both
    children are (up to edge reflection and primitivization) the standard
    cone on (q-2, q) and the next step strictly drops."""
    for p, q in standard_pairs(q_max):
        if q == 1:
            continue
        children = nash_blowup_2d(StdCone2D(p, q))
        if p != q - 1:
            if any(c.q >= q for c in children):
                return False
            continue
        expected, _ = standardize_rays((1, 0), la.primitive((q - 2, q)))
        allowed = {expected, mirror(expected)}
        if len(children) != 2 or any(c not in allowed for c in children):
            return False
        # where q did not drop, it must strictly drop at the next step
        for c in children:
            if c.q == q and any(g.q >= q for g in nash_blowup_2d(c)):
                return False
    return True


def check_cross_validation(q_max=20):
    """The 2-D fast path and the general engine produce the same multiset
    of standard forms."""
    for p, q in standard_pairs(q_max):
        if q == 1:
            continue
        fast = Counter(nash_blowup_2d(StdCone2D(p, q)))
        cone = cone_from_rays([(1, 0), (p, q)])
        general = Counter(standard_form_2d(ch)[0] for ch in nash_blowup(cone))
        if fast != general:
            return False
    return True


def check_full_resolution(q_max=100):
    """Every standard cone resolves to all-smooth within q steps."""
    for p, q in standard_pairs(q_max):
        steps, levels = resolve_2d(StdCone2D(p, q))
        if steps > q:
            return False
        if any(not c.is_smooth for c in levels[-1]):
            return False
    return True


def surface_suite(q_max=100):
    """The named sweeps with their published ranges scaled by q_max."""
    checks = [
        ("convergent identities", check_convergent_identities(2 * q_max)),
        ("subword denominators", check_subword_denominators(q_max)),
        ("hull reduction to consecutive sums", check_hull_reduction(min(30, q_max))),
        ("blow-up descent", check_descent(q_max)),
        ("fast path vs general engine", check_cross_validation(min(20, q_max))),
        ("full resolution within q steps", check_full_resolution(q_max)),
    ]
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return checks
