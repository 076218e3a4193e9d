from __future__ import annotations

import random

from coordarr import cells, koszul
from coordarr.complexes import SimplicialComplex, mask_of
from coordarr.corpus import (
    disjoint_points,
    full_simplex,
    projective_plane,
    simplex_boundary,
    torus_complex,
)
from coordarr.linalg import ExactMatrix, compose_is_zero, rank_rational


def edge_boundary():
    return SimplicialComplex.from_vertex_lists(2, [[1], [2]])


def test_cells_count_edge_boundary():
    K = edge_boundary()
    got = cells.cells(K)
    assert len(got) == 8  # 4 with empty disk part, 2 + 2 over the vertices


def test_cells_count_point():
    assert len(cells.cells(full_simplex(1))) == 3


def test_cell_dimension():
    assert cells.cell_dimension((mask_of([1]), mask_of([2]))) == 3


def test_boundary_example_positions():
    d1s2 = cells.CellChain({(mask_of([1]), mask_of([2])): 1})
    assert cells.boundary_chain(d1s2).terms == {(0, mask_of([1, 2])): -1}
    d2s1 = cells.CellChain({(mask_of([2]), mask_of([1])): 1})
    assert cells.boundary_chain(d2s1).terms == {(0, mask_of([1, 2])): 1}


def test_boundary_of_pure_torus_vanishes():
    torus = cells.CellChain({(0, mask_of([1, 2, 3])): 5})
    assert cells.boundary_chain(torus).is_zero()


def test_boundary_squares_to_zero():
    K = SimplicialComplex.from_vertex_lists(4, [[1, 2, 3], [2, 3, 4]])
    for p in range(K.n + 1):
        for q in range(p + 1):
            outer = cells.boundary_matrix(K, p, q - 1) if q >= 1 else None
            inner = cells.boundary_matrix(K, p, q)
            if outer is not None:
                assert compose_is_zero(outer, inner), (p, q)


def test_no_gamma_dropping_terms():
    # the closure of a circle cell contributes its endpoint twice with
    # opposite signs, so no boundary term ever removes a circle direction
    K = full_simplex(3)
    for (sigma, gamma), coeff in cells.boundary_chain(
        cells.CellChain({(mask_of([1, 2]), mask_of([3])): 1})
    ).terms.items():
        assert gamma & mask_of([3]) == mask_of([3])


def test_homology_edge_boundary_generator():
    K = edge_boundary()
    result = cells.homology(K)
    assert result.table.ranks() == {(0, 0): 1, (2, 1): 1}
    gens = result.generators(2, 1)
    assert len(gens) == 1
    assert gens[0].terms == {
        (mask_of([1]), mask_of([2])): 1,
        (mask_of([2]), mask_of([1])): 1,
    }


def test_homology_boundary_simplex_sphere():
    result = cells.homology(simplex_boundary(3))
    assert result.table.ranks() == {(0, 0): 1, (3, 2): 1}
    for gen in result.generators(3, 2):
        assert cells.boundary_chain(gen).is_zero()


def test_homology_full_simplex_trivial():
    assert cells.homology(full_simplex(3)).table.ranks() == {(0, 0): 1}


def test_generators_are_cycles_reduced_and_integral():
    K = disjoint_points(3)
    result = cells.homology(K)
    for (p, q), gens in result.cycles.items():
        assert len(gens) == result.table.free(p, q)
        for g in gens:
            assert cells.boundary_chain(g).is_zero()
            assert g.bidegree() == (p, q)
            assert all(isinstance(c, int) for c in g.terms.values())


def test_cohomology_equals_rk_everywhere_small():
    for K in (edge_boundary(), disjoint_points(3), simplex_boundary(3), torus_complex(2)):
        assert cells.cohomology(K, "Z").ranks() == koszul.cohomology(K, "Z").ranks()


def test_phi_examples():
    w = cells.phi(koszul.monomial([2], [1]))
    assert w.terms == {(mask_of([1]), mask_of([2])): 1}
    assert cells.phi(koszul.monomial([], [])).terms == {(0, 0): 1}


def test_phi_intertwines_differentials_elementwise():
    K = edge_boundary()
    x = koszul.monomial([1, 2], [])
    lhs = cells.phi(koszul.differential(K, x))
    rhs = cells.coboundary_cochain(K, cells.phi(x))
    assert lhs == rhs


def test_phi_matrix_identity_all_blocks():
    K = SimplicialComplex.from_vertex_lists(4, [[1, 2, 3], [3, 4]])
    for p in range(K.n + 1):
        for q in range(p + 1):
            assert koszul.differential_matrix(K, p, q) == cells.coboundary_matrix(K, p, q)


def test_projective_plane_torsion_and_uct():
    K = projective_plane()
    coh = cells.cohomology(K, "Z")
    hom = cells.homology(K, "Z")
    assert coh.torsions() == {(6, 3): (2,)}
    assert hom.table.torsions() == {(6, 2): (2,)}  # degree shift of the universal coefficients
    assert coh.ranks() == hom.table.ranks()


def test_pairing_duality_cellular():
    # the evaluation matrix between homology cycle bases and cohomology
    # cocycle bases is square and invertible in each bidegree
    from coordarr.linalg import kernel_basis, quotient_basis

    K = disjoint_points(3)
    hom = cells.homology(K)
    for (p, q), gens in hom.cycles.items():
        basis_cells = cells.cells_of_bidegree(K, p, q)
        d_out = cells.coboundary_matrix(K, p, q)
        d_in = cells.coboundary_matrix(K, p, q - 1)
        covectors = quotient_basis(kernel_basis(d_out), d_in)
        cocycles = [
            cells.CellCochain({basis_cells[i]: v for i, v in vec.items()}) for vec in covectors
        ]
        assert len(cocycles) == len(gens)
        gram = ExactMatrix(
            len(gens),
            len(cocycles),
            {
                (i, j): w.pair(g)
                for i, g in enumerate(gens)
                for j, w in enumerate(cocycles)
                if w.pair(g)
            },
        )
        assert rank_rational(gram) == len(gens)
        # mixed bidegrees pair to zero: supports are disjoint by construction
        for (p2, q2), other in hom.cycles.items():
            if (p2, q2) == (p, q):
                continue
            for w in cocycles:
                assert all(w.pair(g2) == 0 for g2 in other)


def test_chain_json():
    chain = cells.CellChain({(mask_of([1]), mask_of([2])): -2})
    assert chain.to_json() == [{"sigma": [1], "gamma": [2], "coeff": -2}]
