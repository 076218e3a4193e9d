from __future__ import annotations

import random
from fractions import Fraction

import pytest

from coordarr import cech, cells
from coordarr import resolvents as rv
from coordarr.complexes import SimplicialComplex, card, mask_of
from coordarr.corpus import disjoint_points, simplex_boundary, torus_complex
from coordarr.linalg import ExactMatrix, rank_rational


def edge_boundary():
    return SimplicialComplex.from_vertex_lists(2, [[1], [2]])


def s3_cycle():
    return cells.CellChain({
        (mask_of([1]), mask_of([2])): 1,
        (mask_of([2]), mask_of([1])): 1,
    })


# -- the three operators -----------------------------------------------------


def test_delta_prime_degree_zero_undefined():
    g = rv.UChain(0, 2, {(0,): cells.CellChain({(0, mask_of([1, 2])): 1})})
    with pytest.raises(ValueError):
        rv.delta_prime(g)


def test_delta_prime_squares_to_zero():
    rng = random.Random(3)
    K = simplex_boundary(3)
    for _ in range(20):
        g = _random_uchain(K, rng, degree=2)
        if g.is_zero():
            continue
        assert rv.delta_prime(rv.delta_prime(g)).is_zero()


def test_epsilon_prime():
    chain = cells.CellChain({(0, mask_of([1])): 2})
    g = rv.UChain(0, 1, {(0,): chain, (mask_of([1]),): chain})
    assert rv.epsilon_prime(g) == chain + chain
    assert rv.epsilon_prime(rv.UChain(0, 1, {})).is_zero()
    with pytest.raises(ValueError):
        rv.epsilon_prime(rv.UChain(1, 1, {}))


def test_boundary_delegates_componentwise():
    g = rv.UChain(0, 3, {(mask_of([1]),): cells.CellChain({(mask_of([1]), mask_of([2])): 1})})
    out = rv.boundary(g)
    assert out.values[(mask_of([1]),)].terms == {(0, mask_of([1, 2])): -1}


# -- resolvent construction ---------------------------------------------------


def test_resolvent_edge_boundary_explicit():
    K = edge_boundary()
    res = rv.build_resolvent(K, s3_cycle())
    assert res.q == 1 and len(res.pieces) == 2
    one = mask_of([1])
    two = mask_of([2])
    t12 = mask_of([1, 2])
    assert res.pieces[0].values == {
        (one,): cells.CellChain({(one, two): 1}),
        (two,): cells.CellChain({(two, one): 1}),
    }
    assert res.pieces[1].values == {
        (0, one): cells.CellChain({(0, t12): 1}),
        (0, two): cells.CellChain({(0, t12): -1}),
    }
    # identities, explicitly
    assert rv.epsilon_prime(res.pieces[0]) == res.source
    assert rv.boundary(res.pieces[0]) == rv.delta_prime(res.pieces[1]).scale(-1)


def test_resolvent_of_boundary_cycle():
    K = edge_boundary()
    b = cells.boundary_chain(cells.CellChain({(mask_of([1]), mask_of([2])): 2}))
    res = rv.build_resolvent(K, b)
    res.validate()


def test_resolvent_of_torus_cycle_has_length_zero():
    K = torus_complex(2)
    cycle = cells.CellChain({(0, mask_of([1, 2])): 1})
    res = rv.build_resolvent(K, cycle)
    assert res.q == 0
    assert list(res.pieces[0].values) == [(0,)]
    assert rv.epsilon_prime(res.pieces[0]) == cycle


def test_resolvent_rejects_bad_input():
    K = edge_boundary()
    with pytest.raises(ValueError):
        rv.build_resolvent(K, cells.CellChain())  # zero
    with pytest.raises(ValueError):
        rv.build_resolvent(K, cells.CellChain({(mask_of([1]), 0): 1, (0, 0): 1}))  # mixed
    with pytest.raises(ValueError):
        rv.build_resolvent(K, cells.CellChain({(mask_of([1]), mask_of([2])): 1}))  # not closed
    with pytest.raises(ValueError):
        # disk support outside the complex
        rv.build_resolvent(
            disjoint_points(2),
            cells.CellChain({(mask_of([1, 2]), 0): 1}),
        )


def test_resolvent_identities_across_sample_generators():
    for K in (edge_boundary(), simplex_boundary(3), disjoint_points(3)):
        hom = cells.homology(K)
        for (p, q), gens in hom.cycles.items():
            for g in gens:
                res = rv.build_resolvent(K, g)
                res.validate()
                assert res.q == q
                for k, piece in enumerate(res.pieces):
                    assert piece.degree == k
                    assert piece.dimension == p + q - k
                # top piece: pure tori with p circle directions
                for chain in res.top.values.values():
                    for sigma, gamma in chain.terms:
                        assert sigma == 0 and card(gamma) == p


# -- pairing -------------------------------------------------------------------


def test_pairing_atom_examples():
    t12 = mask_of([1, 2])
    w = cech.LogCochain(2, 0, {(0,): cech.LogForm(2, {t12: 1})})
    torus = rv.UChain(0, 2, {(0,): cells.CellChain({(0, t12): 1})})
    assert rv.pair(w, torus) == rv.PairingScalar(Fraction(1), 2)
    # a disk-bearing atom pairs to zero against any log form
    disk = rv.UChain(0, 3, {(0,): cells.CellChain({(mask_of([1]), mask_of([2])): 5})})
    assert rv.pair(w, disk).is_zero()


def test_pairing_degree_mismatch():
    w = cech.LogCochain(2, 0, {})
    g = rv.UChain(1, 2, {})
    with pytest.raises(ValueError):
        rv.pair(w, g)


def test_pairing_with_representative_is_unit_period():
    K = edge_boundary()
    res = rv.build_resolvent(K, s3_cycle())
    w = cech.representative_cocycle(K, 2, 1, 0)
    value = rv.resolvent_pairing(res, w)
    assert value.tau_power == 2
    assert abs(value.coeff) == 1


def test_pairing_scalar_arithmetic():
    a = rv.PairingScalar(Fraction(3, 2), 2)
    b = rv.PairingScalar(Fraction(1, 2), 2)
    assert a + b == rv.PairingScalar(Fraction(2), 2)
    assert (a * b).tau_power == 4
    assert a.inverse() == rv.PairingScalar(Fraction(2, 3), -2)
    assert (a * a.inverse()) == rv.PairingScalar.one()
    assert rv.PairingScalar(Fraction(0), 5) == rv.PairingScalar.zero()
    with pytest.raises(ValueError):
        a + rv.PairingScalar(Fraction(1), 3)
    assert str(rv.PairingScalar(Fraction(-1), 2)) == "(-1)*(2pii)^2"


# -- pairing relations on random data ------------------------------------------


def _random_uchain(K, rng, degree, dimension=None):
    """Random cover chain honoring the support condition."""
    faces = K.faces_sorted
    values = {}
    for _ in range(rng.randint(1, 3)):
        tup = tuple(sorted(rng.sample(faces, degree + 1), key=lambda f: (card(f), f)))
        if len(set(tup)) < degree + 1:
            continue
        inter = -1
        for f in tup:
            inter &= f
        atoms = {}
        for _ in range(rng.randint(1, 3)):
            sigma = inter
            # random subface of the intersection
            for v in range(1, K.n + 1):
                if sigma >> (v - 1) & 1 and rng.random() < 0.5:
                    sigma &= ~(1 << (v - 1))
            rest = [v for v in range(1, K.n + 1) if not sigma >> (v - 1) & 1]
            gamma = mask_of([v for v in rest if rng.random() < 0.5])
            if dimension is not None and 2 * card(sigma) + card(gamma) != dimension:
                continue
            atoms[(sigma, gamma)] = rng.randint(-3, 3)
        chain = cells.CellChain(atoms)
        if not chain.is_zero():
            values[tup] = chain
    dims = {2 * card(s) + card(g) for ch in values.values() for (s, g) in ch.terms}
    dim = dims.pop() if len(dims) == 1 else (dimension if dimension is not None else 0)
    filtered = {
        tup: cells.CellChain(
            {a: c for a, c in ch.terms.items() if 2 * card(a[0]) + card(a[1]) == dim}
        )
        for tup, ch in values.items()
    }
    filtered = {tup: ch for tup, ch in filtered.items() if not ch.is_zero()}
    return rv.UChain(degree, dim, filtered)


def _random_log_cochain(K, rng, p, t):
    faces = K.faces_sorted
    values = {}
    isets = K.k_subsets(p)
    for _ in range(rng.randint(1, 3)):
        tup = tuple(sorted(rng.sample(faces, t + 1), key=lambda f: (card(f), f)))
        if len(set(tup)) < t + 1:
            continue
        inter = -1
        for f in tup:
            inter &= f
        admissible = [iset for iset in isets if iset & inter == 0]
        if not admissible:
            continue
        terms = {iset: Fraction(rng.randint(-3, 3)) for iset in rng.sample(admissible, min(2, len(admissible)))}
        form = cech.LogForm(p, terms)
        if not form.is_zero():
            values[tup] = form
    return cech.LogCochain(p, t, values)


def test_pairing_relation_cech_side_explicit():
    # <delta w, G> = <w, delta' G>, nonzero on both sides by construction
    K = edge_boundary()
    t12 = mask_of([1, 2])
    w = cech.LogCochain(2, 0, {(0,): cech.LogForm(2, {t12: 1})})
    g = rv.UChain(1, 2, {(0, mask_of([1])): cells.CellChain({(0, t12): 1})})
    lhs = rv.pair(cech.cochain_coboundary(K, w, "faces"), g)
    rhs = rv.pair(w, rv.delta_prime(g))
    assert lhs == rhs == rv.PairingScalar(Fraction(-1), 2)


def test_pairing_relation_cech_side_random():
    # <delta w, G> = <w, delta' G> for admissible cochains and supported chains
    rng = random.Random(17)
    K = simplex_boundary(3)
    for _ in range(80):
        p = rng.randint(0, K.n)
        t = rng.randint(0, 2)
        w = _random_log_cochain(K, rng, p, t)
        g = _random_uchain(K, rng, degree=t + 1)
        if w.is_zero() or g.is_zero():
            continue
        lhs = rv.pair(cech.cochain_coboundary(K, w, "faces"), g)
        rhs = rv.pair(w, rv.delta_prime(g))
        assert lhs == rhs


def test_pairing_relation_boundary_side():
    # closed log forms against boundaries: <w, dG> = 0 for admissible w and
    # supported G (the disk poles are excluded by admissibility)
    rng = random.Random(19)
    K = simplex_boundary(3)
    for _ in range(60):
        p = rng.randint(0, K.n)
        t = rng.randint(0, 2)
        w = _random_log_cochain(K, rng, p, t)
        g = _random_uchain(K, rng, degree=t)
        if w.is_zero() or g.is_zero():
            continue
        assert rv.pair(w, rv.boundary(g)).is_zero()


def test_pairing_invariance_under_boundary_shift():
    # shifting the cycle by a boundary of the bidegree above leaves the
    # resolvent pairing unchanged; the path complex has such boundaries
    K = SimplicialComplex.from_vertex_lists(3, [[1, 2], [2, 3]])
    hom = cells.homology(K)
    (p, q) = (2, 1)
    cycle = hom.generators(p, q)[0]
    w = cech.representative_cocycle(K, p, q, 0)
    base = rv.resolvent_pairing(rv.build_resolvent(K, cycle), w)
    assert not base.is_zero()
    shift = cells.boundary_chain(cells.CellChain({(mask_of([1, 2]), 0): 3}))
    assert shift.bidegree() == (p, q) and not shift.is_zero()
    moved = rv.resolvent_pairing(rv.build_resolvent(K, cycle + shift), w)
    assert moved == base


def test_pairing_invariance_under_coboundary_shift():
    K = edge_boundary()
    res = rv.build_resolvent(K, s3_cycle())
    w = cech.representative_cocycle(K, 2, 1, 0)
    eta = cech.LogCochain(2, 0, {(0,): cech.LogForm(2, {mask_of([1, 2]): Fraction(5, 3)})})
    w_shifted = w + cech.cochain_coboundary(K, eta, "faces")
    assert rv.resolvent_pairing(res, w_shifted) == rv.resolvent_pairing(res, w)


def test_orthogonality_and_gram_invertibility():
    K = disjoint_points(3)
    hom = cells.homology(K)
    reps = {key: cech.representative_cocycles(K, *key) for key in hom.cycles}
    for (p, q), gens in hom.cycles.items():
        resolvents = [rv.build_resolvent(K, g) for g in gens]
        cocycles = reps[(p, q)]
        gram = ExactMatrix(
            len(gens),
            len(cocycles),
            {
                (i, j): value.coeff
                for i, res in enumerate(resolvents)
                for j, w in enumerate(cocycles)
                if (value := rv.resolvent_pairing(res, w))
            },
        )
        assert rank_rational(gram) == len(gens)
        for other_key, other_reps in reps.items():
            if other_key == (p, q):
                continue
            for res in resolvents:
                for w in other_reps:
                    assert rv.resolvent_pairing(res, w).is_zero()


def test_resolvent_json_shape():
    K = edge_boundary()
    doc = rv.build_resolvent(K, s3_cycle()).to_json()
    assert doc["q"] == 1 and len(doc["pieces"]) == 2
    for piece in doc["pieces"]:
        for entry in piece:
            assert set(entry) == {"tuple", "atoms"}
