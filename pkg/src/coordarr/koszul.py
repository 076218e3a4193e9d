"""The differential bigraded algebra attached to a simplicial complex.

Generators: one exterior generator u_i of bidegree (1, 0) and one polynomial
generator v_i of bidegree (1, 1) per vertex, subject to

    v_i^2 = 0,   u_i v_i = 0,   v_sigma = 0 for every non-face sigma,

so a monomial basis element is a pair of disjoint vertex sets
``u_gamma v_sigma`` with ``sigma`` a face; its bidegree is
(|gamma| + |sigma|, |sigma|).  The differential sends u_i to v_i and v_i to
0 and extends as a left derivation with Koszul signs in the total degree:
on a basis monomial it produces the terms

    u_gamma v_sigma  |-->  sum over i in gamma with sigma + i a face of
                           (-1)^(pos(i, gamma) - 1) * u_(gamma - i) v_(sigma + i),

where pos is the 1-based position of i in the sorted gamma.  The
differential raises q by one and preserves p, so cohomology is computed one
(p, q)-stripe at a time.

Basis elements of bidegree (p, q) are ordered by (sigma mask, gamma mask);
the cell model orders its (sigma, gamma) cells the same way, so the
dual-basis relabeling between the two models is the identity permutation on
each block.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .complexes import SimplicialComplex, card, elements, pos_in
from .linalg import BigradedTable, ExactMatrix, cohomology_block

__all__ = [
    "basis",
    "differential_matrix",
    "RkElement",
    "monomial",
    "differential",
    "multiply",
    "cohomology",
]

#: basis element: (gamma, sigma) masks, gamma the exterior part
Basis = tuple[int, int]


def basis(K: SimplicialComplex, p: int, q: int) -> list[Basis]:
    """Monomial basis of the (p, q) component.

    All pairs (gamma, sigma) with sigma a face of cardinality q, gamma of
    cardinality p - q disjoint from sigma; empty when out of range.
    """
    if q < 0 or p < q or p - q > K.n:
        return []
    out = []
    for sigma in K.faces_sorted:
        if card(sigma) != q:
            continue
        for gamma in K.k_subsets(p - q):
            if gamma & sigma == 0:
                out.append((gamma, sigma))
    out.sort(key=lambda gs: (gs[1], gs[0]))
    return out


def _diff_terms(K: SimplicialComplex, gamma: int, sigma: int) -> list[tuple[int, Basis]]:
    """Signed targets of the differential on one basis monomial."""
    out = []
    for i in elements(gamma):
        new_sigma = sigma | (1 << (i - 1))
        if not K.is_face(new_sigma):
            continue
        sign = -1 if (pos_in(gamma, i) - 1) % 2 else 1
        out.append((sign, (gamma & ~(1 << (i - 1)), new_sigma)))
    return out


def differential_matrix(K: SimplicialComplex, p: int, q: int) -> ExactMatrix:
    """Matrix of the differential from the (p, q) basis to the (p, q+1) basis."""
    src = basis(K, p, q)
    dst = basis(K, p, q + 1)
    index = {b: i for i, b in enumerate(dst)}
    entries: dict[tuple[int, int], int] = {}
    for j, (gamma, sigma) in enumerate(src):
        for sign, target in _diff_terms(K, gamma, sigma):
            entries[(index[target], j)] = sign
    return ExactMatrix(len(dst), len(src), entries)


class RkElement:
    """Finite linear combination of basis monomials, exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Basis, int | Fraction] | None = None):
        self.terms: dict[Basis, int | Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    self.terms[key] = coeff

    def bidegree(self) -> tuple[int, int] | None:
        """Common bidegree of all terms, or None if mixed or zero."""
        degrees = {(card(g) + card(s), card(s)) for g, s in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "RkElement") -> "RkElement":
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            out[key] = out.get(key, 0) + coeff
        return RkElement(out)

    def __sub__(self, other: "RkElement") -> "RkElement":
        return self + other.scale(-1)

    def scale(self, factor: int | Fraction) -> "RkElement":
        return RkElement({k: factor * v for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RkElement) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (gamma, sigma), coeff in sorted(self.terms.items(), key=lambda t: (t[0][1], t[0][0])):
            mono = "".join(f"u{i}" for i in elements(gamma)) + "".join(f"v{i}" for i in elements(sigma))
            bits.append(f"{'+' if coeff > 0 else '-'}{abs(coeff) if abs(coeff) != 1 or not mono else ''}{mono or abs(coeff)}")
        return " ".join(bits)


def monomial(gamma: Iterable[int], sigma: Iterable[int], coeff: int | Fraction = 1) -> RkElement:
    from .complexes import mask_of

    return RkElement({(mask_of(gamma), mask_of(sigma)): coeff})


def differential(K: SimplicialComplex, a: RkElement) -> RkElement:
    """Differential of an arbitrary element (termwise)."""
    out: dict[Basis, int | Fraction] = {}
    for (gamma, sigma), coeff in a.terms.items():
        for sign, target in _diff_terms(K, gamma, sigma):
            out[target] = out.get(target, 0) + sign * coeff
    return RkElement(out)


def _merge_sign(a: int, b: int) -> int:
    """Sign of merging two sorted disjoint exterior monomials u_a * u_b:
    (-1)^(number of pairs x in a, y in b with x > y)."""
    inversions = 0
    for y in elements(b):
        inversions += (a >> y).bit_count()  # elements of a strictly above y
    return -1 if inversions % 2 else 1


def multiply(K: SimplicialComplex, a: RkElement, b: RkElement) -> RkElement:
    """Product in the algebra.

    Exterior parts multiply with the shuffle sign, polynomial parts are
    square-free (a repeated vertex or a non-face kills the term), and any
    overlap between the combined exterior and polynomial supports dies on
    the mixed relation u_i v_i = 0.
    """
    out: dict[Basis, int | Fraction] = {}
    for (g1, s1), c1 in a.terms.items():
        for (g2, s2), c2 in b.terms.items():
            if g1 & g2 or s1 & s2:
                continue
            sigma = s1 | s2
            gamma = g1 | g2
            if gamma & sigma or not K.is_face(sigma):
                continue
            coeff = c1 * c2 * _merge_sign(g1, g2)
            key = (gamma, sigma)
            out[key] = out.get(key, 0) + coeff
    return RkElement(out)


def cohomology(K: SimplicialComplex, coeff: str = "Z") -> BigradedTable:
    """Bigraded cohomology table of the algebra, stripe by stripe.

    The differential preserves p, so each (p, q) group is the cohomology of
    the two adjacent q-maps at fixed p.
    """
    blocks = {}
    n = K.n
    for p in range(n + 1):
        for q in range(p + 1):
            if not basis(K, p, q):
                continue
            d_in = differential_matrix(K, p, q - 1)
            d_out = differential_matrix(K, p, q)
            blocks[(p, q)] = cohomology_block(d_in, d_out, coeff)
    return BigradedTable(blocks, coeff)
