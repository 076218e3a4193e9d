"""Named complexes and test corpora.

The standing corpus for cross-model validation: every simplicial complex on
up to four labeled vertices, a seeded batch of random complexes on five and
six vertices, and the six-vertex triangulation of the real projective plane
(the smallest complex whose models carry 2-torsion).
"""

from __future__ import annotations

import random
import warnings
from itertools import combinations

from .complexes import SimplicialComplex, mask_of, subsets_of

__all__ = [
    "full_simplex",
    "simplex_boundary",
    "disjoint_points",
    "torus_complex",
    "projective_plane",
    "all_complexes",
    "random_complexes",
    "standard_corpus",
]

#: facets of the 6-vertex triangulation of the real projective plane
#: (antipodal quotient of the icosahedron; every edge lies in exactly two
#: triangles and every vertex link is a 5-cycle)
PROJECTIVE_PLANE_FACETS = [
    [1, 2, 3], [1, 2, 4], [1, 3, 5], [1, 4, 6], [1, 5, 6],
    [2, 3, 6], [2, 4, 5], [2, 5, 6], [3, 4, 5], [3, 4, 6],
]


def full_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex(n, [(1 << n) - 1])


def simplex_boundary(n: int) -> SimplicialComplex:
    """All proper subsets of [n]; the complement retracts to a sphere."""
    return SimplicialComplex.from_missing_faces(n, [list(range(1, n + 1))])


def disjoint_points(n: int) -> SimplicialComplex:
    return SimplicialComplex(n, [1 << (v - 1) for v in range(1, n + 1)])


def torus_complex(n: int) -> SimplicialComplex:
    """Only the empty face; the complement is the algebraic torus."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return SimplicialComplex(n, [0])


def projective_plane() -> SimplicialComplex:
    return SimplicialComplex.from_vertex_lists(6, PROJECTIVE_PLANE_FACETS)


def all_complexes(n: int) -> list[SimplicialComplex]:
    """Every simplicial complex on exactly [n] (empty face always present),
    enumerated by brute force over downward-closed families; n <= 4 only.

    The count is the number of antichains of nonempty subsets of [n]:
    2, 5, 19, 167 for n = 1..4.
    """
    if n > 4:
        raise ValueError("exhaustive enumeration is limited to n <= 4")
    nonempty = [m for m in range(1, 1 << n)]
    out = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for bits in range(1 << len(nonempty)):
            family = {nonempty[i] for i in range(len(nonempty)) if bits >> i & 1}
            closed = all(
                sub in family
                for m in family
                for sub in subsets_of(m)
                if sub and sub != m
            )
            if closed:
                maximal = [m for m in family if not any(m != g and m & g == m for g in family)]
                out.append(SimplicialComplex(n, maximal or [0]))
    return out


def random_complexes(count: int, seed: int = 20260810) -> list[SimplicialComplex]:
    """Seeded random complexes on 5 and 6 vertices.

    Facet counts stay small (at most six generators before maximalization),
    which keeps the facet-cover Čech blocks comfortably sized while still
    hitting missing vertices, disconnected unions, spheres and cones.
    """
    rng = random.Random(seed)
    out = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        while len(out) < count:
            n = rng.choice([5, 6])
            k = rng.randint(1, 6)
            gens = []
            for _ in range(k):
                size = rng.randint(1, n - 1)
                gens.append(mask_of(rng.sample(range(1, n + 1), size)))
            out.append(SimplicialComplex(n, gens))
    return out


def standard_corpus(random_count: int = 200, seed: int = 20260810) -> list[SimplicialComplex]:
    """All complexes on <= 4 vertices, the seeded random batch, and the
    projective-plane triangulation."""
    out: list[SimplicialComplex] = []
    for n in range(1, 5):
        out.extend(all_complexes(n))
    out.extend(random_complexes(random_count, seed))
    out.append(projective_plane())
    return out
