"""Cellular chain model of the arrangement complement.

The complement deformation-retracts onto a union of products of closed
disks and circles sitting on the boundary of the unit polydisc; one cell
per pair (sigma, gamma) with sigma a face of the complex and gamma a set of
circle directions disjoint from it.  The cell has real dimension
2|sigma| + |gamma| and bidegree (p, q) = (|sigma| + |gamma|, |sigma|).

Boundary convention (this is the single orientation choice everything else
hangs off): the boundary of a product chain moves one disk direction i onto
the circle factor,

    d(D_sigma x S_gamma) = sum over i in sigma of
                           (-1)^(pos(i, gamma + i)) * D_(sigma - i) x S_(gamma + i),

with pos the 1-based position of i in the sorted union.  No term ever drops
a circle direction: the two endpoints of a circle's 1-cell cancel.  The
coboundary on dual cocells is the *negated* transpose of this boundary; with
the plain transpose the relabeling map from the Koszul-model monomials to
dual cocells anticommutes with the differentials, with the negated one it
commutes on the nose, making the relabeling an isomorphism of differential
bigraded modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import SimplicialComplex, card, elements, pos_in, subsets_of
from .linalg import (
    BigradedTable,
    CohomologyBlock,
    ExactMatrix,
    cohomology_block,
    kernel_basis,
    quotient_basis,
)

__all__ = [
    "Cell",
    "cells",
    "cells_of_bidegree",
    "cell_dimension",
    "boundary_matrix",
    "coboundary_matrix",
    "CellChain",
    "CellCochain",
    "boundary_chain",
    "coboundary_cochain",
    "phi",
    "HomologyResult",
    "homology",
    "cohomology",
]

#: a cell: (sigma, gamma) masks, sigma the disk directions (a face)
Cell = tuple[int, int]


def cell_dimension(cell: Cell) -> int:
    sigma, gamma = cell
    return 2 * card(sigma) + card(gamma)


def cells(K: SimplicialComplex) -> list[Cell]:
    """Every cell (sigma, gamma): sigma a face, gamma inside the complement."""
    full = (1 << K.n) - 1
    out = []
    for sigma in K.faces_sorted:
        for gamma in subsets_of(full & ~sigma):
            out.append((sigma, gamma))
    out.sort()
    return out


def cells_of_bidegree(K: SimplicialComplex, p: int, q: int) -> list[Cell]:
    """Cells of bidegree (p, q), ordered by (sigma, gamma) mask pair --
    the same order the algebra model uses for its monomials."""
    if q < 0 or p < q or p - q > K.n:
        return []
    out = []
    for sigma in K.faces_sorted:
        if card(sigma) != q:
            continue
        for gamma in K.k_subsets(p - q):
            if gamma & sigma == 0:
                out.append((sigma, gamma))
    out.sort()
    return out


def _boundary_terms(sigma: int, gamma: int) -> list[tuple[int, Cell]]:
    out = []
    for i in elements(sigma):
        bit = 1 << (i - 1)
        new_gamma = gamma | bit
        sign = -1 if pos_in(new_gamma, i) % 2 else 1
        out.append((sign, (sigma & ~bit, new_gamma)))
    return out


def boundary_matrix(K: SimplicialComplex, p: int, q: int) -> ExactMatrix:
    """Boundary from bidegree (p, q) chains to (p, q-1) chains."""
    src = cells_of_bidegree(K, p, q)
    dst = cells_of_bidegree(K, p, q - 1)
    index = {c: i for i, c in enumerate(dst)}
    entries: dict[tuple[int, int], int] = {}
    for j, (sigma, gamma) in enumerate(src):
        for sign, target in _boundary_terms(sigma, gamma):
            entries[(index[target], j)] = sign
    return ExactMatrix(len(dst), len(src), entries)


def coboundary_matrix(K: SimplicialComplex, p: int, q: int) -> ExactMatrix:
    """Coboundary from (p, q) cochains to (p, q+1) cochains: minus the
    transpose of the (p, q+1) boundary (see the module docstring)."""
    return -boundary_matrix(K, p, q + 1).transpose()


class _Combination:
    """Shared arithmetic for chains/cochains keyed by cells."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Cell, int | Fraction] | None = None):
        self.terms: dict[Cell, int | Fraction] = {}
        if terms:
            for cell, coeff in terms.items():
                if coeff:
                    self.terms[cell] = coeff

    def bidegree(self) -> tuple[int, int] | None:
        degrees = {(card(s) + card(g), card(s)) for s, g in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, factor: int | Fraction):
        return type(self)({k: factor * v for k, v in self.terms.items()})

    def __add__(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot add {type(other).__name__} to {type(self).__name__}")
        out = dict(self.terms)
        for cell, coeff in other.terms.items():
            out[cell] = out.get(cell, 0) + coeff
        return type(self)(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (sigma, gamma), coeff in sorted(self.terms.items()):
            label = f"D{list(elements(sigma))}xS{list(elements(gamma))}"
            bits.append(f"{'+' if coeff > 0 else '-'}{abs(coeff) if abs(coeff) != 1 else ''}{label}")
        return " ".join(bits)


class CellChain(_Combination):
    """Integer/rational combination of product cells, used as a cycle."""

    def to_json(self) -> list[dict]:
        return [
            {"sigma": list(elements(s)), "gamma": list(elements(g)), "coeff": int(c)}
            for (s, g), c in sorted(self.terms.items())
        ]


class CellCochain(_Combination):
    """Functional on cell chains via the dual cocell basis."""

    def pair(self, chain: CellChain) -> int | Fraction:
        total = 0
        for cell, coeff in chain.terms.items():
            dual = self.terms.get(cell)
            if dual:
                total += dual * coeff
        return total


def boundary_chain(chain: CellChain) -> CellChain:
    out: dict[Cell, int | Fraction] = {}
    for (sigma, gamma), coeff in chain.terms.items():
        for sign, target in _boundary_terms(sigma, gamma):
            out[target] = out.get(target, 0) + sign * coeff
    return CellChain(out)


def coboundary_cochain(K: SimplicialComplex, cochain: CellCochain) -> CellCochain:
    """Termwise coboundary: minus the adjoint of the boundary."""
    out: dict[Cell, int | Fraction] = {}
    for (sigma, gamma), coeff in cochain.terms.items():
        # cofaces: move one circle direction i onto the disk factor
        for i in elements(gamma):
            bit = 1 << (i - 1)
            new_sigma = sigma | bit
            if not K.is_face(new_sigma):
                continue
            sign = -1 if pos_in(gamma, i) % 2 else 1
            target = (new_sigma, gamma & ~bit)
            out[target] = out.get(target, 0) - sign * coeff
    return CellCochain(out)


def phi(a) -> CellCochain:
    """Relabel an algebra element as a cell cochain: the monomial with
    exterior part gamma and polynomial part sigma goes to the dual cocell of
    the (sigma, gamma) cell, coefficients untouched."""
    return CellCochain({(sigma, gamma): coeff for (gamma, sigma), coeff in a.terms.items()})


@dataclass
class HomologyResult:
    """Bigraded homology with explicit integer cycle representatives for the
    free generators (canonical echelon form, reduced mod boundaries)."""

    table: BigradedTable
    cycles: dict[tuple[int, int], list[CellChain]]

    def generators(self, p: int, q: int) -> list[CellChain]:
        return self.cycles.get((p, q), [])


def homology(K: SimplicialComplex, coeff: str = "Z") -> HomologyResult:
    """Bigraded cellular homology plus cycle bases.

    Per (p, q): homology of  (p, q+1) --d--> (p, q) --d--> (p, q-1).
    Free representatives are kernel vectors reduced to echelon form modulo
    the boundary image, scaled to primitive integer chains.
    """
    blocks: dict[tuple[int, int], CohomologyBlock] = {}
    cycles: dict[tuple[int, int], list[CellChain]] = {}
    for p in range(K.n + 1):
        for q in range(p + 1):
            basis_cells = cells_of_bidegree(K, p, q)
            if not basis_cells:
                continue
            d_here = boundary_matrix(K, p, q)
            d_above = boundary_matrix(K, p, q + 1)
            blocks[(p, q)] = _homology_block(d_here, d_above, coeff)
            reps = quotient_basis(kernel_basis(d_here), d_above)
            chains = [
                CellChain({basis_cells[i]: v for i, v in vec.items()}) for vec in reps
            ]
            if chains:
                cycles[(p, q)] = chains
    table = BigradedTable(blocks, coeff)
    return HomologyResult(table, cycles)


def _homology_block(d_here: ExactMatrix, d_above: ExactMatrix, coeff: str) -> CohomologyBlock:
    """Homology at the middle of  . --d_above--> C --d_here--> .  : same
    two-map computation as for cohomology with the roles transposed."""
    return cohomology_block(d_above, d_here, coeff)


def cohomology(K: SimplicialComplex, coeff: str = "Z") -> BigradedTable:
    """Bigraded cellular cohomology via the dual (negated-transpose) maps.

    Independent code path from the algebra model; agreement of the two
    tables is the working check on both sign conventions.
    """
    blocks = {}
    for p in range(K.n + 1):
        for q in range(p + 1):
            if not cells_of_bidegree(K, p, q):
                continue
            d_in = coboundary_matrix(K, p, q - 1)
            d_out = coboundary_matrix(K, p, q)
            blocks[(p, q)] = cohomology_block(d_in, d_out, coeff)
    return BigradedTable(blocks, coeff)
