"""Exact cones and polyhedra: duality, vertex/facet enumeration, Minkowski
sums with a recession cone, localization at vertices, lattice indices,
unimodular equivalence, and direct-sum decomposition.

A cone is always kept in dual form: primitive extreme rays plus primitive
inward facet normals, both sorted. Every operation is exact and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from . import intlinalg as la
from .errors import NotAVertex, NotProper


class Cone:
    """A proper (pointed, full-dimensional) rational polyhedral cone.

    Build instances with :func:`cone_from_rays` or :func:`cone_from_facets`;
    the constructor trusts its arguments. Immutable and hashable.
    """

    __slots__ = ("dim", "rays", "facets", "_index", "_dual_index", "_key")

    def __init__(self, dim, rays, facets):
        self.dim = dim
        self.rays = rays
        self.facets = facets
        self._index = None
        self._dual_index = None
        self._key = None

    @property
    def is_simplicial(self):
        return len(self.facets) == self.dim

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return self.dim == other.dim and self.rays == other.rays and self.facets == other.facets

    def __hash__(self):
        return hash((self.dim, self.rays))

    def __repr__(self):
        return f"Cone(dim={self.dim}, rays={list(self.rays)}, facets={list(self.facets)})"


@dataclass(frozen=True)
class Polyhedron:
    """Rational polyhedron as vertices + recession cone + inequalities.

    Vertices are integer points (guaranteed for sums cone + hull of lattice
    points). Each inequality is (normal, offset) meaning normal . x >= offset
    with a primitive integer normal.
    """

    dim: int
    vertices: tuple
    recession: Cone
    inequalities: tuple


# ------------------------------------------------------------------ double
# description


def _dual_extreme_rays(gens, d):
    """Extreme rays of {u : g . u >= 0 for all g in gens}.

    Incremental double description: seed with d linearly independent
    generators (whose dual is simplicial), then cut by the remaining ones in
    input order. Adjacency of two rays is decided by the rank of their
    common tight set. Requires rank(gens) == d so the dual cone is pointed.
    """
    basis_rows = []
    basis_idx = []
    for i, g in enumerate(gens):
        if la.rank(basis_rows + [g]) == len(basis_rows) + 1:
            basis_rows.append(g)
            basis_idx.append(i)
            if len(basis_rows) == d:
                break
    if len(basis_rows) < d:
        raise ValueError("generators do not span the space")

    b_mat = la.mat(basis_rows)
    det_b = la.det(b_mat)
    adj_b = la.adjugate(b_mat)
    sign = 1 if det_b > 0 else -1
    rays = [la.primitive(tuple(sign * adj_b[r][j] for r in range(d))) for j in range(d)]

    processed = list(basis_idx)
    basis_set = set(basis_idx)

    def tight_set(r):
        return frozenset(k for k in processed if la.dot(gens[k], r) == 0)

    state = [(r, tight_set(r)) for r in rays]

    for i, a in enumerate(gens):
        if i in basis_set:
            continue
        pos, zero, neg = [], [], []
        for r, t in state:
            s = la.dot(a, r)
            if s > 0:
                pos.append((r, t, s))
            elif s == 0:
                zero.append((r, t))
            else:
                neg.append((r, t, s))
        processed.append(i)
        if not neg:
            state = [(r, t) for r, t, _ in pos] + [(r, t | {i}) for r, t in zero]
            continue
        new_state = [(r, t) for r, t, _ in pos]
        new_state.extend((r, t | {i}) for r, t in zero)
        for rp, tp, sp in pos:
            for rn, tn, sn in neg:
                common = tp & tn
                if len(common) < d - 2:
                    continue
                if d > 2 and la.rank([gens[k] for k in common]) != d - 2:
                    continue
                w = la.primitive(tuple(sp * y - sn * x for x, y in zip(rp, rn)))
                new_state.append((w, tight_set(w)))
        # drop duplicates (possible only via parallel combinations)
        seen = {}
        for r, t in new_state:
            seen[r] = t
        state = list(seen.items())

    return sorted(r for r, _ in state)


# ------------------------------------------------------------------ cone
# constructors


def cone_from_rays(rays):
    """Cone generated by the given nonzero integer rays.

    Computes the irredundant primitive facet normals by double description
    and keeps only the extreme rays among the inputs.
    """
    ray_list = [la.vec(r) for r in rays]
    if not ray_list:
        raise NotProper("a proper cone needs at least one ray")
    d = len(ray_list[0])
    if any(len(r) != d for r in ray_list):
        raise ValueError("rays have mixed dimensions")
    prim = sorted({la.primitive(r) for r in ray_list})
    if la.rank(prim) < d:
        raise NotProper("rays do not span the ambient space")
    facets = _dual_extreme_rays(prim, d)
    if la.rank(facets) < d:
        raise NotProper("cone contains a line")
    extreme = [r for r in prim if la.rank([f for f in facets if la.dot(f, r) == 0]) == d - 1]
    return Cone(d, tuple(extreme), tuple(facets))


def cone_from_facets(facets):
    """Cone {x : f . x >= 0 for all f} from inward facet normals.

    Redundant or duplicate inequalities are dropped; extreme rays are
    computed by double description.
    """
    facet_list = [la.vec(f) for f in facets]
    if not facet_list:
        raise NotProper("a proper cone needs at least one facet")
    d = len(facet_list[0])
    if any(len(f) != d for f in facet_list):
        raise ValueError("facets have mixed dimensions")
    prim = sorted({la.primitive(f) for f in facet_list})
    if la.rank(prim) < d:
        raise NotProper("cone contains a line")
    rays = _dual_extreme_rays(prim, d)
    if la.rank(rays) < d:
        raise NotProper("cone is not full-dimensional")
    irredundant = [f for f in prim if la.rank([r for r in rays if la.dot(f, r) == 0]) == d - 1]
    return Cone(d, tuple(rays), tuple(irredundant))


def simplicial_cone(facet_matrix):
    """Fast constructor for {x : A x >= 0} with A square nonsingular."""
    a = la.mat(facet_matrix)
    d = len(a)
    dt = la.det(a)
    if dt == 0:
        raise NotProper("facet matrix is singular")
    adj = la.adjugate(a)
    sign = 1 if dt > 0 else -1
    rays = sorted(la.primitive(tuple(sign * adj[r][j] for r in range(d))) for j in range(d))
    norms = sorted(la.primitive(row) for row in a)
    return Cone(d, tuple(rays), tuple(norms))


def dual(c):
    """Dual cone: rays and facets swap roles."""
    return Cone(c.dim, c.facets, c.rays)


def index(c) -> int:
    """Lattice index of the subgroup of Z^d generated by the facet normals."""
    if c._index is None:
        c._index = la.lattice_index(c.facets)
    return c._index


def dual_index(c) -> int:
    """Lattice index of the subgroup of Z^d generated by the rays."""
    if c._dual_index is None:
        c._dual_index = la.lattice_index(c.rays)
    return c._dual_index


def is_smooth(c) -> bool:
    """Whether the cone is unimodularly equivalent to the orthant."""
    return c.is_simplicial and index(c) == 1


# ------------------------------------------------------------------ sums and
# localization


def minkowski_sum_hull(c, points):
    """The polyhedron c + Hull(points) for a finite set of lattice points.

    Works through the homogenization cone in Q^(d+1) generated by 0 x rays
    and 1 x points: its facets give the inequalities, its extreme rays give
    the vertices (positive height) and the recession cone (height zero).
    """
    pts = sorted({la.vec(p) for p in points})
    if not pts:
        raise ValueError("points must be nonempty")
    d = c.dim
    gens = sorted([(0,) + r for r in c.rays] + [(1,) + p for p in pts])
    hom_facets = _dual_extreme_rays(gens, d + 1)
    hom_rays = _dual_extreme_rays(sorted(hom_facets), d + 1)

    verts = []
    rec = []
    for r in hom_rays:
        if r[0] == 0:
            rec.append(r[1:])
        else:
            if r[0] != 1:
                raise AssertionError(f"non-lattice vertex ray {r}")
            verts.append(r[1:])
    if sorted(rec) != list(c.rays):
        raise AssertionError("recession cone does not match the input cone")
    if not set(verts) <= set(pts):
        raise AssertionError("hull vertex outside the input point set")

    ineqs = []
    for g in hom_facets:
        normal = g[1:]
        if not any(normal):
            continue  # the height facet x0 >= 0; no constraint on P itself
        gcd_n = la.vec_gcd(normal)
        offset = -g[0]
        if offset % gcd_n != 0:
            raise AssertionError("facet offset not divisible by normal gcd")
        ineqs.append((tuple(x // gcd_n for x in normal), offset // gcd_n))

    return Polyhedron(d, tuple(sorted(verts)), c, tuple(sorted(ineqs)))


def localize(p, v):
    """Cone of feasible directions at a vertex: inequalities tight at v."""
    vv = la.vec(v)
    if vv not in p.vertices:
        raise NotAVertex(f"{vv} is not a vertex of the polyhedron")
    tight = [n for n, b in p.inequalities if la.dot(n, vv) == b]
    return cone_from_facets(tight)


# ------------------------------------------------------------------ GL(d,Z)
# equivalence


def _invariants(c):
    return (len(c.rays), len(c.facets), index(c), dual_index(c))


def _equivalent_simplicial(fa, fb):
    d = len(fa)
    det_a = la.det(fa)
    adj_a = la.adjugate(fa)
    for perm in permutations(range(d)):
        m = la.matmul(adj_a, tuple(fb[i] for i in perm))
        if all(x % det_a == 0 for row in m for x in row):
            return True
    return False


def _lex_independent_rows(rows, d):
    picked = []
    for r in rows:
        if la.rank(picked + [r]) == len(picked) + 1:
            picked.append(r)
            if len(picked) == d:
                return picked
    raise AssertionError("rows do not span")


def _equivalent_general(a, b):
    d = a.dim
    base = _lex_independent_rows(list(a.rays), d)
    base_cols = la.transpose(la.mat(base))
    det_base = la.det(base_cols)
    adj_base = la.adjugate(base_cols)
    rays_b = b.rays
    target = set(rays_b)
    for tup in permutations(range(len(rays_b)), d):
        t_cols = la.transpose(la.mat([rays_b[i] for i in tup]))
        num = la.matmul(t_cols, adj_base)
        if any(x % det_base for row in num for x in row):
            continue
        u = tuple(tuple(x // det_base for x in row) for row in num)
        if abs(la.det(u)) != 1:
            continue
        if {la.mat_vec(u, r) for r in a.rays} == target:
            return True
    return False


def equivalent(a, b) -> bool:
    """Whether some element of GL(d,Z) maps one cone onto the other.

    Simplicial pairs use the presentation permutation-integrality test; the
    general path matches ordered ray bases and verifies the full ray sets.
    """
    if a.dim != b.dim:
        raise ValueError("cones live in different dimensions")
    if a.rays == b.rays:
        return True
    if _invariants(a) != _invariants(b):
        return False
    if a.is_simplicial:
        return _equivalent_simplicial(a.facets, b.facets)
    return _equivalent_general(a, b)


def canonical_key(c) -> bytes:
    """Deterministic byte key, equal exactly for GL(d,Z)-equivalent cones.

    Within the invariant bucket (d, ray count, facet count, I, I*), the key
    is the lexicographic minimum, over ordered bases drawn from the smaller
    of the two generator sets, of the column-HNF-normalized row-sorted
    generator matrix.
    """
    if c._key is not None:
        return c._key
    d = c.dim
    bucket = (d, len(c.rays), len(c.facets), index(c), dual_index(c))
    if is_smooth(c):
        best = tuple(sorted(la.identity(d)))
    else:
        rows = c.rays if len(c.rays) <= len(c.facets) else c.facets
        best = None
        for tup in permutations(range(len(rows)), d):
            basis = la.mat([rows[i] for i in tup])
            if la.det(basis) == 0:
                continue
            _, u = la.column_hnf(basis)
            cand = tuple(sorted(la.matmul(rows, u)))
            if best is None or cand < best:
                best = cand
    c._key = repr((bucket, best)).encode()
    return c._key


# ------------------------------------------------------------------ direct
# sums


def _saturation_basis(rows):
    """Basis rows of Z^d intersected with the rational span of the rows."""
    return la.kernel_basis(la.kernel_basis(rows))


def _coords_in_basis(r, basis):
    gram = la.matmul(basis, la.transpose(basis))
    det_g = la.det(gram)
    y = la.mat_vec(basis, r)
    num = la.vec_mat(y, la.adjugate(gram))
    if any(x % det_g for x in num):
        raise AssertionError("point not in the lattice spanned by the basis")
    x = tuple(v // det_g for v in num)
    if la.vec_mat(x, basis) != tuple(r):
        raise AssertionError("coordinate solve failed")
    return x


def _split_once(c):
    d = c.dim
    rays = c.rays
    n = len(rays)
    if d <= 1 or n <= 1:
        return None
    rest = range(1, n)
    for size in range(0, n - 1):
        for extra in combinations(rest, size):
            part1 = [rays[0]] + [rays[i] for i in extra]
            chosen = {0, *extra}
            part2 = [rays[i] for i in rest if i not in chosen]
            r1 = la.rank(part1)
            r2 = la.rank(part2)
            if r1 + r2 != d or r1 == d or r2 == d:
                continue
            l1 = _saturation_basis(part1)
            l2 = _saturation_basis(part2)
            if abs(la.det(la.mat(list(l1) + list(l2)))) != 1:
                continue
            c1 = cone_from_rays([_coords_in_basis(r, l1) for r in part1])
            c2 = cone_from_rays([_coords_in_basis(r, l2) for r in part2])
            return c1, c2
    return None


def direct_sum_decompose(c):
    """Finest decomposition of c as a lattice direct sum of lower cones.

    Returns the indecomposable factors (each in coordinates of a lattice
    basis of its span), sorted by decreasing dimension then index; a
    singleton list when c is irreducible.
    """

    def factors(cone):
        split = _split_once(cone)
        if split is None:
            return [cone]
        c1, c2 = split
        return factors(c1) + factors(c2)

    return sorted(factors(c), key=lambda f: (-f.dim, index(f), canonical_key(f)))
