"""Simplicial complexes on the vertex set {1, ..., n} and the index data of
the associated coordinate subspace arrangement.

A face is stored as an integer bitmask: bit k-1 is set exactly when vertex k
belongs to the face (vertex labels are 1-based).  All combinatorial data of
the arrangement ``Z_K`` (union of the coordinate planes of the non-faces) and
of its tubular cover is derived from the face family:

* every face ``sigma`` indexes one cover element ``U_sigma``, the set of
  points whose coordinates outside ``sigma`` are nonzero; cover elements
  intersect by ``U_a & U_b = U_{a & b}``;
* the inclusion-minimal non-faces generate the defining monomial ideal and
  enumerate the maximal planes of the arrangement.

Complexes in which some singleton {i} is not a face are accepted -- they
produce a codimension-one component {z_i = 0} -- but a warning is emitted
because most interesting arrangements have codimension at least two.
"""

from __future__ import annotations

import json
import warnings
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

__all__ = [
    "MAX_VERTICES",
    "ComplexError",
    "CodimensionOneWarning",
    "SimplicialComplex",
    "parse_complex",
    "mask_of",
    "elements",
    "card",
    "face_key",
    "pos_in",
    "subsets_of",
]

#: Hard cap on the number of vertices; every model explodes combinatorially
#: long before a 24-bit mask does.
MAX_VERTICES = 24


class ComplexError(ValueError):
    """Malformed input for a simplicial complex."""


class CodimensionOneWarning(UserWarning):
    """Some singleton {i} is not a face, so the arrangement contains the
    hyperplane {z_i = 0}.  All formulas remain valid verbatim."""


# ---------------------------------------------------------------------------
# bitmask helpers (faces are plain ints; bit k-1 <-> vertex k)
# ---------------------------------------------------------------------------

def mask_of(vertices: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based vertex labels."""
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def elements(mask: int) -> tuple[int, ...]:
    """Sorted 1-based vertex labels of a mask."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def card(mask: int) -> int:
    """Number of vertices in a mask."""
    return mask.bit_count()


def face_key(mask: int) -> tuple[int, int]:
    """Total order on faces: by cardinality, then by bitmask value.

    Every tuple of cover indices is stored sorted strictly increasing in
    this key; all alternating data is normalized against it.
    """
    return (mask.bit_count(), mask)


def pos_in(mask: int, v: int) -> int:
    """1-based position of vertex ``v`` inside the sorted elements of
    ``mask`` (``v`` must belong to the mask)."""
    return (mask & ((1 << (v - 1)) - 1)).bit_count() + 1


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, the empty set included."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


# ---------------------------------------------------------------------------
# the complex
# ---------------------------------------------------------------------------

class SimplicialComplex:
    """A finite simplicial complex on {1, ..., n}, including the empty face.

    The face family is kept as a frozenset of masks and is downward closed
    by construction.  Instances are immutable and hashable; all derived data
    is cached, so they are safe to share between threads.
    """

    __slots__ = ("n", "facets", "__dict__")

    def __init__(self, n: int, facets: Iterable[int]):
        if not isinstance(n, int) or n < 1:
            raise ComplexError(f"vertex count must be a positive integer, got {n!r}")
        if n > MAX_VERTICES:
            raise ComplexError(f"vertex count {n} exceeds the {MAX_VERTICES}-bit mask limit")
        full = (1 << n) - 1
        gens = set()
        for f in facets:
            if f & ~full:
                raise ComplexError(
                    f"face {elements(f)} has vertices outside 1..{n}"
                )
            gens.add(f)
        if not gens:
            gens = {0}
        # reduce the generating set to the maximal antichain
        maximal = [f for f in gens if not any(f != g and f & g == f for g in gens)]
        self.n = n
        self.facets: tuple[int, ...] = tuple(sorted(maximal, key=face_key))
        if self.missing_vertices:
            warnings.warn(
                f"vertices {self.missing_vertices} are not faces; the arrangement "
                "gains codimension-one components",
                CodimensionOneWarning,
                stacklevel=2,
            )

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_vertex_lists(cls, n: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        return cls(n, (mask_of(f) for f in facets))

    @classmethod
    def from_missing_faces(cls, n: int, missing: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Complex whose faces are exactly the subsets containing no listed
        missing face."""
        if n > MAX_VERTICES:
            raise ComplexError(f"vertex count {n} exceeds the {MAX_VERTICES}-bit mask limit")
        bad = [mask_of(f) for f in missing]
        full = (1 << n) - 1
        for b, f in zip(bad, missing):
            if b & ~full:
                raise ComplexError(f"missing face {list(f)} has vertices outside 1..{n}")
            if b == 0:
                raise ComplexError("the empty set cannot be a missing face")
        faces = [s for s in subsets_of(full) if not any(s & b == b for b in bad)]
        maximal = [f for f in faces if not any(f != g and f & g == f for g in faces)]
        return cls(n, maximal)

    # -- derived face data ---------------------------------------------------

    @cached_property
    def faces(self) -> frozenset[int]:
        out: set[int] = set()
        for f in self.facets:
            out.update(subsets_of(f))
        return frozenset(out)

    @cached_property
    def faces_sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.faces, key=face_key))

    def is_face(self, mask: int) -> bool:
        return mask in self.faces

    @cached_property
    def vertex_support(self) -> int:
        """Mask of vertices that actually span a face."""
        m = 0
        for f in self.facets:
            m |= f
        return m

    @property
    def missing_vertices(self) -> tuple[int, ...]:
        return elements(((1 << self.n) - 1) & ~self.vertex_support)

    @cached_property
    def minimal_non_faces(self) -> tuple[int, ...]:
        """Inclusion-minimal subsets of [n] that are not faces.

        These generate the defining monomial ideal and index the maximal
        planes of the arrangement.  A set is a minimal non-face iff it is not
        a face, yet dropping any single vertex gives one; every such set is a
        face plus one vertex, which keeps the search linear in the number of
        faces.
        """
        faces = self.faces
        found = set()
        for f in faces:
            for v in range(1, self.n + 1):
                bit = 1 << (v - 1)
                if f & bit:
                    continue
                s = f | bit
                if s in faces or s in found:
                    continue
                if all((s & ~(1 << (w - 1))) in faces for w in elements(s)):
                    found.add(s)
        return tuple(sorted(found, key=face_key))

    def cover_elements(self) -> tuple[int, ...]:
        """Index set of the full cover: every face, the empty one included
        (its cover element is the algebraic torus)."""
        return self.faces_sorted

    def facet_cover(self) -> tuple[int, ...]:
        """Cofinal subcover indexed by the maximal faces only.

        Each ``U_sigma`` is contained in ``U_facet`` for any facet containing
        ``sigma``, so this subcover and the full cover refine one another.
        """
        return self.facets

    def containing_facet(self, mask: int) -> int:
        """First facet (in the face order) containing the given face."""
        for f in self.facets:
            if mask & f == mask:
                return f
        raise ValueError(f"{elements(mask)} is not a face")

    def face_counts(self) -> dict[int, int]:
        """Number of faces of each cardinality (the f-vector, 0-indexed by
        cardinality; entry 0 counts the empty face)."""
        counts: dict[int, int] = {}
        for f in self.faces:
            counts[card(f)] = counts.get(card(f), 0) + 1
        return dict(sorted(counts.items()))

    def k_subsets(self, k: int) -> list[int]:
        """All k-element subsets of [n] as masks, ascending."""
        return [mask_of(c) for c in combinations(range(1, self.n + 1), k)]

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "facets": [list(elements(f)) for f in self.facets],
            "missing_faces": [list(elements(f)) for f in self.minimal_non_faces],
            "face_counts": {str(k): v for k, v in self.face_counts().items()},
        }

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and self.n == other.n
            and self.facets == other.facets
        )

    def __hash__(self) -> int:
        return hash((self.n, self.facets))

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self.n}, facets={[list(elements(f)) for f in self.facets]})"


def parse_complex(document: str | dict) -> SimplicialComplex:
    """Build a complex from a JSON document (text or already-parsed dict).

    The document must supply ``n`` and either ``facets`` or
    ``missing_faces`` (lists of 1-based vertex lists).  When both are
    present, ``facets`` wins.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ComplexError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ComplexError(f"expected a JSON object, got {type(document).__name__}")
    if "n" not in document or document["n"] in (None, ""):
        raise ComplexError("missing vertex count 'n'")
    n = document["n"]
    if not isinstance(n, int):
        raise ComplexError(f"'n' must be an integer, got {n!r}")
    if "facets" in document:
        facets = document["facets"]
        _check_vertex_lists(facets, "facets")
        return SimplicialComplex.from_vertex_lists(n, facets)
    if "missing_faces" in document:
        missing = document["missing_faces"]
        _check_vertex_lists(missing, "missing_faces")
        return SimplicialComplex.from_missing_faces(n, missing)
    raise ComplexError("document supplies neither 'facets' nor 'missing_faces'")


def _check_vertex_lists(lists: object, label: str) -> None:
    if not isinstance(lists, (list, tuple)):
        raise ComplexError(f"'{label}' must be a list of vertex lists")
    for entry in lists:
        if not isinstance(entry, (list, tuple)) or not all(
            isinstance(v, int) and v >= 1 for v in entry
        ):
            raise ComplexError(f"'{label}' entries must be lists of positive integers")
