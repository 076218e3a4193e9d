"""Finite Čech complex of the arrangement cover with constant logarithmic
coefficients.

Cover elements are indexed by faces; on the element indexed by tau the
coordinates z_i with i outside tau are nonzero, so the closed form
dz_I/z_I (ascending wedge of dz_i/z_i over I) is holomorphic there exactly
when I misses tau.  A cochain of Čech degree t and form degree p assigns to
every strictly increasing (t+1)-tuple of cover indices a constant-coefficient
combination of such forms, subject to that admissibility constraint on the
tuple's intersection.  The exterior derivative kills every dz_I/z_I, so the
total differential of the double complex collapses to the Čech coboundary

    (delta w)_(T') = (-1)^p * sum_j (-1)^j * w_(T' minus j-th index),

the (-1)^p factor being the sign that makes the Čech and de Rham halves of
the ambient double complex anticommute.  Restriction along a larger tuple is
the identity on coefficients: intersections only shrink, so admissible terms
stay admissible.

Two covers are supported:

* ``"faces"``   -- every face indexes a cover element (the defining cover;
  resolvents of cycles live on it);
* ``"facets"``  -- only the maximal faces.  Each cover refines the other
  (every face sits inside some facet), and mutually refining covers have
  canonically isomorphic Čech cohomology for any coefficient presheaf, so
  tables are computed on the small cover and representatives are pulled back
  along face -> containing facet.  The equality of the two tables is itself
  exercised by the test suite on small complexes.

Internally each (p, t) block splits as a direct sum over the index sets I
(the coboundary never mixes the dz_I/z_I coefficients), which keeps the
elimination work per complex small.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Literal, Sequence

from .complexes import SimplicialComplex, card, elements, face_key, mask_of
from .linalg import (
    BigradedTable,
    CohomologyBlock,
    ExactMatrix,
    kernel_basis,
    quotient_basis,
    rank_rational,
)

__all__ = [
    "Cover",
    "LogForm",
    "LogCochain",
    "log_basis",
    "cech_matrix",
    "cochain_coboundary",
    "cohomology",
    "HodgeTable",
    "hodge_table",
    "filtration_ranks_direct",
    "representative_cocycles",
    "representative_cocycle",
    "pullback_to_faces",
]

Cover = Literal["faces", "facets"]
FaceTuple = tuple[int, ...]


def _cover_list(K: SimplicialComplex, cover: Cover) -> tuple[int, ...]:
    if cover == "faces":
        return K.cover_elements()
    if cover == "facets":
        return K.facet_cover()
    raise ValueError(f"unknown cover {cover!r}")


def _intersection(tup: Iterable[int]) -> int:
    inter = -1
    for m in tup:
        inter &= m
    return inter


def canonical_tuple(tup: Sequence[int]) -> tuple[FaceTuple, int] | None:
    """Sort a tuple of cover indices into the face order; returns
    (sorted tuple, permutation sign), or None when an index repeats."""
    if len(set(tup)) != len(tup):
        return None
    keyed = sorted(range(len(tup)), key=lambda i: face_key(tup[i]))
    sign = _perm_sign(keyed)
    return tuple(tup[i] for i in keyed), sign


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class LogForm:
    """Constant-coefficient combination  sum_I c_I dz_I/z_I  of one degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict[int, int | Fraction] | None = None):
        self.degree = degree
        self.terms: dict[int, int | Fraction] = {}
        if terms:
            for mask, coeff in terms.items():
                if card(mask) != degree:
                    raise ValueError(
                        f"index set {elements(mask)} has wrong degree (expected {degree})"
                    )
                if coeff:
                    self.terms[mask] = coeff

    def is_zero(self) -> bool:
        return not self.terms

    def is_admissible(self, tau: int) -> bool:
        """Holomorphic on the cover element indexed by tau?"""
        return all(mask & tau == 0 for mask in self.terms)

    def scale(self, factor: int | Fraction) -> "LogForm":
        return LogForm(self.degree, {m: factor * c for m, c in self.terms.items()})

    def __add__(self, other: "LogForm") -> "LogForm":
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return LogForm(self.degree, out)

    def __sub__(self, other: "LogForm") -> "LogForm":
        return self + other.scale(-1)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LogForm)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = [
            f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}dz{list(elements(m))}/z"
            for m, c in sorted(self.terms.items())
        ]
        return " ".join(bits)


class LogCochain:
    """Alternating cochain: increasing cover-index tuples -> log forms.

    Values are stored on canonically sorted tuples only; evaluation on an
    arbitrary tuple applies the permutation sign (and is zero on repeats),
    which realizes alternation without storing redundant data.
    """

    __slots__ = ("p", "t", "values")

    def __init__(self, p: int, t: int, values: dict[FaceTuple, LogForm] | None = None):
        self.p = p
        self.t = t
        self.values: dict[FaceTuple, LogForm] = {}
        if values:
            for tup, form in values.items():
                if form.degree != p:
                    raise ValueError("form degree does not match the cochain")
                if len(tup) != t + 1:
                    raise ValueError("tuple length does not match the Čech degree")
                if not form.is_zero():
                    if not form.is_admissible(_intersection(tup)):
                        raise ValueError(
                            f"form {form!r} not holomorphic on the intersection of {tup}"
                        )
                    self.values[tup] = form

    def value_at(self, tup: Sequence[int]) -> LogForm:
        canon = canonical_tuple(tup)
        if canon is None:
            return LogForm(self.p)
        key, sign = canon
        form = self.values.get(key)
        if form is None:
            return LogForm(self.p)
        return form if sign == 1 else form.scale(-1)

    def is_zero(self) -> bool:
        return not self.values

    def scale(self, factor: int | Fraction) -> "LogCochain":
        return LogCochain(self.p, self.t, {k: f.scale(factor) for k, f in self.values.items()})

    def __add__(self, other: "LogCochain") -> "LogCochain":
        if (other.p, other.t) != (self.p, self.t):
            raise ValueError("cannot add cochains of different bidegree")
        out = dict(self.values)
        for tup, form in other.values.items():
            out[tup] = out.get(tup, LogForm(self.p)) + form
        return LogCochain(self.p, self.t, out)

    def __sub__(self, other: "LogCochain") -> "LogCochain":
        return self + other.scale(-1)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LogCochain)
            and (self.p, self.t) == (other.p, other.t)
            and self.values == other.values
        )

    def __repr__(self) -> str:
        inner = "; ".join(
            f"{tuple(list(elements(f)) for f in tup)} -> {form!r}"
            for tup, form in sorted(self.values.items(), key=lambda kv: tuple(map(face_key, kv[0])))
        )
        return f"LogCochain(p={self.p}, t={self.t}: {inner})"

    def to_json(self) -> list[dict]:
        out = []
        for tup, form in sorted(self.values.items(), key=lambda kv: tuple(map(face_key, kv[0]))):
            out.append(
                {
                    "tuple": [list(elements(f)) for f in tup],
                    "forms": [
                        {"I": list(elements(m)), "coeff": str(Fraction(c))}
                        for m, c in sorted(form.terms.items())
                    ],
                }
            )
        return out


def cochain_coboundary(K: SimplicialComplex, w: LogCochain, cover: Cover = "faces") -> LogCochain:
    """Čech coboundary of a cochain, computed sparsely on its support.

    Every nonzero value of the result sits on a tuple obtained by inserting
    one extra cover index into a support tuple of ``w``.
    """
    indices = _cover_list(K, cover)
    out: dict[FaceTuple, LogForm] = {}
    sign_p = -1 if w.p % 2 else 1
    seen: set[FaceTuple] = set()
    for base in w.values:
        base_set = set(base)
        for extra in indices:
            if extra in base_set:
                continue
            canon = canonical_tuple(base + (extra,))
            assert canon is not None
            target, _ = canon
            if target in seen:
                continue
            seen.add(target)
            total = LogForm(w.p)
            for j in range(len(target)):
                sub = target[:j] + target[j + 1 :]
                term = w.value_at(sub)
                if term.is_zero():
                    continue
                factor = sign_p * (-1 if j % 2 else 1)
                total = total + term.scale(factor)
            if not total.is_zero():
                out[target] = total
    return LogCochain(w.p, w.t + 1, out)


# ---------------------------------------------------------------------------
# blocks of the complex
# ---------------------------------------------------------------------------

def log_basis(
    K: SimplicialComplex, p: int, t: int, cover: Cover = "faces"
) -> list[tuple[FaceTuple, int]]:
    """Basis of the (form degree p, Čech degree t) block: admissible pairs
    (increasing cover tuple, index set I), tuple-major order."""
    indices = _cover_list(K, cover)
    isets = K.k_subsets(p)
    out = []
    for tup in combinations(indices, t + 1):
        inter = _intersection(tup)
        for iset in isets:
            if iset & inter == 0:
                out.append((tup, iset))
    return out


def cech_matrix(K: SimplicialComplex, p: int, t: int, cover: Cover = "faces") -> ExactMatrix:
    """Matrix of the coboundary from the (p, t) block to the (p, t+1) block."""
    src = log_basis(K, p, t, cover)
    dst = log_basis(K, p, t + 1, cover)
    src_index = {b: i for i, b in enumerate(src)}
    sign_p = -1 if p % 2 else 1
    entries: dict[tuple[int, int], int] = {}
    for row, (tup, iset) in enumerate(dst):
        for j in range(len(tup)):
            sub = tup[:j] + tup[j + 1 :]
            col = src_index.get((sub, iset))
            if col is None:
                continue
            entries[(row, col)] = sign_p * (-1 if j % 2 else 1)
    return ExactMatrix(len(dst), len(src), entries)


class _CechEngine:
    """Per-complex cache for one cover: tuples, intersections, coboundary
    structure and per-index-set ranks."""

    def __init__(self, K: SimplicialComplex, cover: Cover):
        self.K = K
        self.cover = cover
        self.indices = _cover_list(K, cover)
        self.m = len(self.indices)
        self._tuples: dict[int, list[tuple[FaceTuple, int]]] = {}
        self._structure: dict[int, list[list[tuple[int, int]]]] = {}
        self._positions: dict[int, dict[FaceTuple, int]] = {}
        self._rank_cache: dict[tuple[int, int], int] = {}

    def tuples(self, size: int) -> list[tuple[FaceTuple, int]]:
        """All increasing tuples of the given size with their intersections."""
        if size not in self._tuples:
            self._tuples[size] = [
                (tup, _intersection(tup)) for tup in combinations(self.indices, size)
            ]
            self._positions[size] = {tup: i for i, (tup, _) in enumerate(self._tuples[size])}
        return self._tuples[size]

    def structure(self, t: int) -> list[list[tuple[int, int]]]:
        """For every (t+2)-tuple, the signed positions of its sub-tuples:
        entry ``row -> [(col, sign), ...]`` of the degree-t coboundary
        before index-set filtering and before the global form-degree sign."""
        if t not in self._structure:
            self.tuples(t + 1)
            pos = self._positions[t + 1]
            rows = []
            for tup, _ in self.tuples(t + 2):
                row = []
                for j in range(len(tup)):
                    sub = tup[:j] + tup[j + 1 :]
                    row.append((pos[sub], -1 if j % 2 else 1))
                rows.append(row)
            self._structure[t] = rows
        return self._structure[t]

    def admissible(self, size: int, iset: int) -> list[int]:
        return [i for i, (_, inter) in enumerate(self.tuples(size)) if inter & iset == 0]

    def rank(self, iset: int, t: int) -> int:
        """Rank of the degree-t coboundary on the index-set component."""
        if t < 0 or t + 1 > self.m:
            return 0
        cols = self.admissible(t + 1, iset)
        if not cols or t + 2 > self.m:
            return 0
        col_bitmap = 0
        for c in cols:
            col_bitmap |= 1 << c
        key = (t, col_bitmap)
        cached = self._rank_cache.get(key)
        if cached is not None:
            return cached
        col_pos = {c: i for i, c in enumerate(cols)}
        rows = self.admissible(t + 2, iset)
        structure = self.structure(t)
        entries: dict[tuple[int, int], int] = {}
        for new_row, r in enumerate(rows):
            for col, sign in structure[r]:
                pos = col_pos.get(col)
                if pos is not None:
                    entries[(new_row, pos)] = sign
        value = rank_rational(ExactMatrix(len(rows), len(cols), entries))
        self._rank_cache[key] = value
        return value

    def group_dimension(self, iset: int, q: int) -> int:
        """dim of the degree-q cohomology of the index-set component."""
        if q < 0 or q + 1 > self.m:
            return 0
        dim = len(self.admissible(q + 1, iset))
        return dim - self.rank(iset, q) - self.rank(iset, q - 1)


def cohomology(K: SimplicialComplex, cover: Cover = "facets") -> BigradedTable:
    """Bigraded table of the log Čech complex over the rationals.

    Splits each block over the index sets I and sums the component
    dimensions; must agree with the algebra and cell models over Q.
    """
    engine = _CechEngine(K, cover)
    blocks = {}
    for p in range(K.n + 1):
        # q runs over the full square: vanishing above the diagonal q = p is
        # a fact about the cover, not about the block sizes, so it is
        # computed rather than assumed
        for q in range(K.n + 1):
            total = sum(engine.group_dimension(iset, q) for iset in K.k_subsets(p))
            if total:
                blocks[(p, q)] = CohomologyBlock(total)
    return BigradedTable(blocks, "Q")


# ---------------------------------------------------------------------------
# Hodge filtration table
# ---------------------------------------------------------------------------

@dataclass
class HodgeTable:
    """Bigraded ranks plus the induced decreasing filtration.

    ``F[(k, s)]`` is the rank of the degree-s classes representable with
    holomorphic form degree at least k (the filtration the naive truncation
    by form degree induces on the collapsed double complex); it equals the
    sum of h(p, s-p) over p >= k.
    """

    n: int
    h: dict[tuple[int, int], int]
    F: dict[tuple[int, int], int] = field(default_factory=dict)
    filtration: str = "truncation by holomorphic form degree >= k"

    def __post_init__(self) -> None:
        if not self.F:
            for k in range(self.n + 2):
                for s in range(2 * self.n + 1):
                    self.F[(k, s)] = sum(
                        rank for (p, q), rank in self.h.items() if p >= k and p + q == s
                    )

    def betti(self, s: int) -> int:
        return self.F[(0, s)]

    def to_json(self) -> dict:
        return {
            "filtration": self.filtration,
            "h": {f"{p},{q}": r for (p, q), r in sorted(self.h.items())},
            "F": {f"{k},{s}": r for (k, s), r in sorted(self.F.items()) if r},
        }


def hodge_table(K: SimplicialComplex, cover: Cover = "facets") -> HodgeTable:
    """Hodge numbers h(p, q) from the log Čech table, with the filtration
    ranks accumulated over form degree."""
    table = cohomology(K, cover)
    return HodgeTable(K.n, table.ranks())


def filtration_ranks_direct(K: SimplicialComplex, cover: Cover = "facets") -> dict[tuple[int, int], int]:
    """Filtration ranks computed without the bigraded splitting.

    For every cutoff k the truncated complex (all form degrees >= k) is
    assembled as one block matrix per total degree and its cohomology ranks
    are taken there; the bigraded route must reproduce these numbers
    exactly.  Quadratic amount of elimination, intended for validation.
    """
    n = K.n
    m = len(_cover_list(K, cover))
    block: dict[tuple[int, int], ExactMatrix] = {}
    for p in range(n + 1):
        for t in range(m):  # C^t is empty beyond t = m - 1
            block[(p, t)] = cech_matrix(K, p, t, cover)

    def block_dim(p: int, t: int) -> int:
        piece = block.get((p, t))
        return piece.cols if piece else 0

    def assembled_rank(k: int, s: int) -> int:
        """Rank of the total differential out of degree s in the truncated
        complex, assembled as one matrix over all form degrees >= k."""
        entries: dict[tuple[int, int], int] = {}
        row_off = 0
        col_off = 0
        for p in range(k, n + 1):
            piece = block.get((p, s - p))
            if piece is None:
                continue
            for (r, c), v in piece.entries.items():
                entries[(row_off + r, col_off + c)] = v
            row_off += piece.rows
            col_off += piece.cols
        return rank_rational(ExactMatrix(row_off, col_off, entries))

    out: dict[tuple[int, int], int] = {}
    for k in range(n + 2):
        rank_at = {s: assembled_rank(k, s) for s in range(2 * n + 2)}
        for s in range(2 * n + 1):
            dim = sum(block_dim(p, s - p) for p in range(k, n + 1))
            out[(k, s)] = dim - rank_at[s] - rank_at.get(s - 1, 0)
    return out


# ---------------------------------------------------------------------------
# representatives
# ---------------------------------------------------------------------------

def representative_cocycles(K: SimplicialComplex, p: int, q: int) -> list[LogCochain]:
    """Closed cochains on the face cover whose classes form a basis of the
    (p, q) cohomology.

    The kernel-mod-image bases are extracted per index set on the facet
    cover and pulled back along face -> first containing facet; the
    pullback of a cocycle basis along a mutual refinement is again a basis.
    """
    engine = _CechEngine(K, "facets")
    out: list[LogCochain] = []
    for iset in K.k_subsets(p):
        cols = engine.admissible(q + 1, iset)
        if not cols:
            continue
        col_pos = {c: i for i, c in enumerate(cols)}
        tuples_here = engine.tuples(q + 1)

        def filtered(t: int, rows_size: int, cols_size: int) -> ExactMatrix:
            rows_adm = engine.admissible(rows_size, iset)
            cols_adm = engine.admissible(cols_size, iset)
            cpos = {c: i for i, c in enumerate(cols_adm)}
            entries: dict[tuple[int, int], int] = {}
            structure = engine.structure(t)
            for new_row, r in enumerate(rows_adm):
                for col, sign in structure[r]:
                    j = cpos.get(col)
                    if j is not None:
                        entries[(new_row, j)] = sign
            return ExactMatrix(len(rows_adm), len(cols_adm), entries)

        d_out = (
            filtered(q, q + 2, q + 1)
            if q + 2 <= engine.m
            else ExactMatrix(0, len(cols))
        )
        d_in = (
            filtered(q - 1, q + 1, q)
            if q >= 1 and q + 1 <= engine.m
            else ExactMatrix(len(cols), 0)
        )
        reps = quotient_basis(kernel_basis(d_out), d_in)
        for vec in reps:
            values = {
                tuples_here[cols[i]][0]: LogForm(p, {iset: v}) for i, v in vec.items()
            }
            out.append(pullback_to_faces(K, LogCochain(p, q, values)))
    return out


def representative_cocycle(K: SimplicialComplex, p: int, q: int, class_index: int) -> LogCochain:
    """One basis cocycle of the (p, q) cohomology, on the face cover."""
    reps = representative_cocycles(K, p, q)
    if not reps:
        raise ValueError(f"no cohomology in bidegree ({p},{q})")
    if not 0 <= class_index < len(reps):
        raise ValueError(
            f"class index {class_index} out of range: bidegree ({p},{q}) has rank {len(reps)}"
        )
    return reps[class_index]


def pullback_to_faces(K: SimplicialComplex, w: LogCochain) -> LogCochain:
    """Pull a facet-cover cochain back to the full face cover along the
    refinement face -> first containing facet.

    The preimage classes of the refinement map partition the faces, so the
    support of the pullback is enumerated facet-tuple by facet-tuple.
    """
    preimages: dict[int, list[int]] = {f: [] for f in K.facets}
    for face in K.faces_sorted:
        preimages[K.containing_facet(face)].append(face)
    out: dict[FaceTuple, LogForm] = {}
    for facet_tuple, form in w.values.items():
        pools = [preimages[f] for f in facet_tuple]
        for choice in product(*pools):
            canon = canonical_tuple(choice)
            assert canon is not None  # pools are disjoint
            key, sign = canon
            addition = form if sign == 1 else form.scale(-1)
            existing = out.get(key)
            out[key] = addition if existing is None else existing + addition
    return LogCochain(w.p, w.t, {k: f for k, f in out.items() if not f.is_zero()})
