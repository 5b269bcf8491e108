"""Enumeration and classification of simplicial cones by (dimension, index).

Every simplicial cone has a presentation in Hermite normal form with
coprime rows; enumerating those matrices for a fixed index and removing
duplicates under row permutation + unimodular column action yields one
representative per equivalence class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import gcd

from . import intlinalg as la
from .cones import Cone, direct_sum_decompose, dual_index, equivalent, simplicial_cone

_LETTERS = "ABCDEFGH"


def _letter(dim):
    if dim < 1 or dim > len(_LETTERS):
        raise ValueError(f"no class letter for dimension {dim}")
    return _LETTERS[dim - 1]


@dataclass(frozen=True)
class ConeClass:
    """One GL(d,Z)-equivalence class of simplicial cones."""

    name: str
    dim: int
    index: int
    dual_index: int
    presentation: tuple
    reducibility: tuple  # factor class names, finest first; () if irreducible
    cone: Cone = field(compare=False)

    @property
    def display(self):
        if self.dim == 1:
            return "A"
        letter, i, j = self.name.split("_")
        return f"{letter}_{{{i},{j}}}"

    @property
    def reducibility_label(self):
        """Paper-style direct-sum label, e.g. 'B_{2,1} + 2A'; '' if irreducible."""
        if not self.reducibility:
            return ""
        terms = []
        for name in dict.fromkeys(self.reducibility):
            k = self.reducibility.count(name)
            disp = display_name(name)
            if k == 1:
                terms.append(disp)
            elif name == "A":
                terms.append(f"{k}A")
            else:
                terms.append(f"{k} {disp}")
        return " ⊕ ".join(terms)


def display_name(name):
    if name == "A":
        return "A"
    letter, i, j = name.split("_")
    return f"{letter}_{{{i},{j}}}"


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _ordered_factorizations(n, k):
    if k == 1:
        yield (n,)
        return
    for d in _divisors(n):
        for rest in _ordered_factorizations(n // d, k - 1):
            yield (d,) + rest


def enumerate_hnf(d, idx):
    """All HNF presentation matrices of d-dim simplicial cones of index idx.

    Lower triangular, positive diagonal with product idx, off-diagonal
    entries reduced below the row diagonal, every row coprime. Sorted
    lexicographically.
    """
    if d < 1 or idx < 1:
        raise ValueError("dimension and index must be positive")
    results = []
    for diag in _ordered_factorizations(idx, d):
        per_row = []
        feasible = True
        for i, di in enumerate(diag):
            choices = []
            for head in product(range(di), repeat=i):
                g = di
                for x in head:
                    g = gcd(g, x)
                if g == 1:
                    choices.append(head)
            if not choices:
                feasible = False
                break
            per_row.append(choices)
        if not feasible:
            continue
        for combo in product(*per_row):
            rows = tuple(
                combo[i] + (diag[i],) + (0,) * (d - 1 - i) for i in range(d)
            )
            results.append(rows)
    results.sort()
    return results


def _rays_of_presentation(m):
    d = len(m)
    dt = la.det(m)
    adj = la.adjugate(m)
    sign = 1 if dt > 0 else -1
    return tuple(la.primitive(tuple(sign * adj[r][j] for r in range(d))) for j in range(d))


def _perm_equivalent(adj_new, det_new, other, perms):
    for perm in perms:
        m = la.matmul(adj_new, tuple(other[i] for i in perm))
        if all(x % det_new == 0 for row in m for x in row):
            return True
    return False


@lru_cache(maxsize=None)
def classify(d, idx):
    """All equivalence classes of d-dim simplicial cones with index idx.

    Classes are named <letter>_<index>_<j> with j following the
    lexicographic order of the lex-least HNF presentation in each class.
    Reducibility lists the direct-sum factor names, or () if irreducible.
    """
    if d == 1:
        if idx != 1:
            return ()
        cone = Cone(1, ((1,),), ((1,),))
        return (ConeClass("A", 1, 1, 1, ((1,),), (), cone),)

    perms = list(permutations(range(d)))
    reps = []  # (matrix, adj, det, istar)
    buckets = {}
    for m in enumerate_hnf(d, idx):
        dt = la.det(m)
        adj = la.adjugate(m)
        istar = abs(la.det(_rays_of_presentation(m)))
        bucket = buckets.setdefault(istar, [])
        if any(_perm_equivalent(adj, dt, reps[k][0], perms) for k in bucket):
            continue
        bucket.append(len(reps))
        reps.append((m, adj, dt, istar))

    classes = []
    letter = _letter(d)
    for j, (m, _, _, istar) in enumerate(reps, start=1):
        cone = simplicial_cone(m)
        factors = direct_sum_decompose(cone)
        if len(factors) == 1:
            reducibility = ()
        else:
            reducibility = tuple(_factor_name(f) for f in factors)
        classes.append(
            ConeClass(f"{letter}_{idx}_{j}", d, idx, istar, m, reducibility, cone)
        )
    return tuple(classes)


def _factor_name(f):
    if f.dim == 1:
        return "A"
    from .cones import index as cone_index

    for cls in classify(f.dim, cone_index(f)):
        if equivalent(cls.cone, f):
            return cls.name
    raise AssertionError("factor not found in its classification table")


def class_counts(d, index_max):
    """T_d(I) for I = 1..index_max."""
    return [len(classify(d, i)) for i in range(1, index_max + 1)]


@dataclass(frozen=True)
class ClassTable:
    """Classification of one dimension across a range of indices."""

    dim: int
    entries: dict  # index -> tuple of ConeClass

    @property
    def reducibility(self):
        return {
            cls.name: cls.reducibility_label
            for classes in self.entries.values()
            for cls in classes
            if cls.reducibility
        }

    def counts(self):
        return [len(self.entries[i]) for i in sorted(self.entries)]


def class_table(d, index_max) -> ClassTable:
    return ClassTable(d, {i: classify(d, i) for i in range(1, index_max + 1)})


_NAME_RE = re.compile(r"^([A-H])_(\d+)_(\d+)$")


def cone_by_name(name):
    """Resolve a class name like 'C_3_3' to its representative cone."""
    if name == "A":
        return classify(1, 1)[0].cone
    m = _NAME_RE.match(name)
    if not m:
        raise ValueError(f"malformed class name {name!r} (expected like C_3_3)")
    letter, idx, j = m.group(1), int(m.group(2)), int(m.group(3))
    dim = _LETTERS.index(letter) + 1
    table = classify(dim, idx)
    if not 1 <= j <= len(table):
        raise ValueError(f"{name}: only {len(table)} classes of dimension {dim}, index {idx}")
    return table[j - 1].cone
