"""Hilbert bases of proper cones.

Candidates come from the fundamental parallelepipeds of a placing
triangulation (enumerated through the Smith normal form of each ray
matrix); a single global reduction pass keeps exactly the indecomposable
elements.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intlinalg as la
from .cones import cone_from_rays, _dual_extreme_rays


@dataclass(frozen=True)
class HilbertBasis:
    """The unique minimal generating set of cone lattice points."""

    cone: Cone
    elements: tuple

    @property
    def matrix(self):
        return self.elements


def triangulate(c):
    """Placing triangulation of c into simplicial subcones on its own rays.

    Rays are inserted in sorted order (after a greedy independent seed);
    each new ray is joined to the visible boundary simplices of the cone
    built so far. Pieces have pairwise disjoint interiors and cover c.
    """
    rays = c.rays
    d = c.dim
    if len(rays) == d:
        return [c]

    seed = []
    seed_rows = []
    for i, r in enumerate(rays):
        if la.rank(seed_rows + [r]) == len(seed_rows) + 1:
            seed.append(i)
            seed_rows.append(r)
            if len(seed) == d:
                break
    simplices = {tuple(sorted(seed))}
    placed = sorted(seed)

    for i, r in enumerate(rays):
        if i in seed:
            continue
        current = [rays[j] for j in placed]
        cur_facets = _dual_extreme_rays(current, d)
        visible = [f for f in cur_facets if la.dot(f, r) < 0]
        new_simplices = set()
        for f in visible:
            for simplex in simplices:
                face = tuple(j for j in simplex if la.dot(f, rays[j]) == 0)
                if len(face) == d - 1:
                    new_simplices.add(tuple(sorted(face + (i,))))
        simplices |= new_simplices
        placed.append(i)

    return [cone_from_rays([rays[j] for j in simplex]) for simplex in sorted(simplices)]


def parallelepiped_points(c):
    """All lattice points of {sum of t_i * ray_i : 0 <= t_i < 1}.

    One representative per coset of the ray lattice in Z^d, found via the
    Smith normal form of the ray matrix and folded into the half-open
    parallelepiped; the count equals |det| of the ray matrix.
    """
    g = la.mat(c.rays)
    d = c.dim
    if len(g) != d:
        raise ValueError("parallelepiped_points needs a simplicial cone")
    det_g = la.det(g)
    adj_g = la.adjugate(g)
    s, _, v = la.snf(g)
    v_inv = la.unimodular_inverse(v)
    diag = [s[i][i] for i in range(d)]

    points = []
    reps = [(0,) * d]
    for i, si in enumerate(diag):
        if si == 1:
            continue
        reps = [w[:i] + (k,) + w[i + 1 :] for w in reps for k in range(si)]
    for w in reps:
        x = la.vec_mat(w, v_inv)
        # fold x into the parallelepiped: x - floor(coords) . g
        num = la.vec_mat(x, adj_g)  # coords * det_g
        floors = tuple(n // det_g for n in num)
        folded = la.vsub(x, la.vec_mat(floors, g))
        points.append(folded)
    if len(points) != abs(det_g):
        raise AssertionError("parallelepiped point count mismatch")
    return sorted(points)


def _sort_key(v):
    return (sum(v), v)


def hilbert_basis(c):
    """Hilbert basis of the semigroup of lattice points of c.

    Candidates are the primitive rays plus all parallelepiped points over a
    placing triangulation; an element is kept iff subtracting any other
    nonzero candidate leaves the cone.
    """
    zero = (0,) * c.dim
    candidates = set(c.rays)
    for piece in triangulate(c):
        candidates.update(parallelepiped_points(piece))
    candidates.discard(zero)
    ordered = sorted(candidates, key=_sort_key)
    facets = c.facets

    def in_cone(v):
        return all(la.dot(f, v) >= 0 for f in facets)

    kept = []
    for h in ordered:
        decomposable = False
        for other in ordered:
            if other is h or other == h:
                continue
            if in_cone(la.vsub(h, other)):
                decomposable = True
                break
        if not decomposable:
            kept.append(h)
    return HilbertBasis(c, tuple(kept))
