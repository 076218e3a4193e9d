from __future__ import annotations

import numpy as np
import pytest

from coordarr import kernels as kn
from coordarr.complexes import SimplicialComplex
from coordarr.corpus import full_simplex, simplex_boundary


def edge_boundary():
    return SimplicialComplex.from_vertex_lists(2, [[1], [2]])


# -- polynomials ----------------------------------------------------------------


def test_parse_polynomial_basic():
    f = kn.parse_polynomial("1+z1^2*z2^3", 2)
    assert f.terms == {(0, 0): 1 + 0j, (2, 3): 1 + 0j}


def test_parse_polynomial_complex_coefficients():
    f = kn.parse_polynomial("(0.5-2i)*z1*z2 - 3i", 2)
    assert f.terms == {(1, 1): 0.5 - 2j, (0, 0): -3j}


def test_parse_polynomial_merges_and_signs():
    f = kn.parse_polynomial("z1 - z1 + 2*z2", 2)
    assert f.terms == {(0, 1): 2 + 0j}


def test_parse_polynomial_exponent_via_repeat():
    assert kn.parse_polynomial("z1*z1", 1).terms == {(2,): 1 + 0j}


def test_parse_polynomial_errors():
    with pytest.raises(ValueError):
        kn.parse_polynomial("z3", 2)
    with pytest.raises(ValueError):
        kn.parse_polynomial("", 2)
    with pytest.raises(ValueError):
        kn.parse_polynomial("q1+1", 2)


def test_poly_evaluation_shapes():
    f = kn.parse_polynomial("1+z1^2*z2^3", 2)
    z = np.array([[0.3, -0.4], [0.0, 0.0]], dtype=complex)
    vals = f(z)
    assert vals.shape == (2,)
    assert abs(vals[0] - 0.99424) < 1e-15
    assert vals[1] == 1


# -- quadrature -------------------------------------------------------------------


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        kn.QuadratureSpec(3)
    with pytest.raises(ValueError):
        kn.QuadratureSpec(48)
    with pytest.raises(ValueError):
        kn.QuadratureSpec(64, radius=0.5)


def test_quadrature_unit_form_exact_at_minimal_grid():
    val = kn.torus_quadrature(lambda z: np.ones(len(z), dtype=complex), 1, 1, kn.QuadratureSpec(4))
    assert val == 1


def test_quadrature_kills_small_nonzero_powers():
    spec = kn.QuadratureSpec(16)
    for m in (1, 5, -3, 15):
        val = kn.torus_quadrature(lambda z, m=m: z[:, 0] ** m, 1, 1, spec)
        assert abs(val) < 1e-13, m


def test_quadrature_geometric_pole():
    spec = kn.QuadratureSpec(64)
    val = kn.torus_quadrature(lambda z: z[:, 0] / (z[:, 0] - 0.5), 1, 1, spec)
    assert abs(val - 1) < 1e-12  # tail is 0.5^64


def test_quadrature_multi_axis():
    spec = kn.QuadratureSpec(8)
    val = kn.torus_quadrature(
        lambda z: z[:, 0] * np.conj(z[:, 0]), 0b11, 2, spec
    )  # |z1|^2 = 1 on the torus
    assert abs(val - 1) < 1e-14


# -- kernel construction -----------------------------------------------------------


def test_build_kernel_edge_boundary():
    data = kn.build_kernel(edge_boundary(), 3)
    assert (data.n, data.s) == (2, 3)
    assert data.check_normalized()
    assert data.scale.tau_power == -2
    # top piece: all atoms are the full torus
    full = 0b11
    for chain in data.top_piece.values.values():
        assert all(sigma == 0 and gamma == full for (sigma, gamma) in chain.terms)
    # cocycle support tuples have empty intersection
    for tup in data.cocycle.values:
        inter = -1
        for f in tup:
            inter &= f
        assert inter == 0


def test_build_kernel_full_simplex_has_none():
    with pytest.raises(kn.KernelUnavailableError):
        kn.build_kernel(full_simplex(2), 1)
    with pytest.raises(kn.KernelUnavailableError):
        kn.build_kernel(edge_boundary(), 2)  # H^2 lives at (2,0)? no: empty


def test_build_kernel_boundary_simplex_length_two():
    data = kn.build_kernel(simplex_boundary(3), 5)
    assert data.top_piece.degree == 2
    assert data.check_normalized()


# -- reproduction --------------------------------------------------------------------


def test_constant_reproduction():
    data = kn.build_kernel(edge_boundary(), 3)
    spec = kn.QuadratureSpec(64)
    for zeta in ([0.0, 0.0], [0.3, -0.4], [0.5j, -0.2 - 0.5j]):
        val = kn.evaluate_representation(data, kn.PolyFunction.constant(2), zeta, spec)
        assert abs(val - 1) < 1e-12


def test_monomial_reproduction_matches_direct_evaluation():
    data = kn.build_kernel(edge_boundary(), 3)
    spec = kn.QuadratureSpec(128)
    f = kn.parse_polynomial("1+z1^2*z2^3", 2)
    zeta = [0.3, -0.4]
    val = kn.evaluate_representation(data, f, zeta, spec)
    assert abs(val - 0.99424) < 1e-10


def test_reproduction_linear_in_f():
    data = kn.build_kernel(edge_boundary(), 3)
    spec = kn.QuadratureSpec(64)
    zeta = [0.25 + 0.1j, -0.5]
    f = kn.parse_polynomial("z1^2+z2", 2)
    g = kn.parse_polynomial("1-z1*z2", 2)
    fg_sum = kn.PolyFunction(2, {**f.terms, **{k: f.terms.get(k, 0) + v for k, v in g.terms.items()}})
    lhs = kn.evaluate_representation(data, fg_sum, zeta, spec)
    rhs = kn.evaluate_representation(data, f, zeta, spec) + kn.evaluate_representation(
        data, g, zeta, spec
    )
    assert abs(lhs - rhs) < 1e-13


def test_grid_and_separable_paths_agree():
    data = kn.build_kernel(edge_boundary(), 3)
    spec = kn.QuadratureSpec(32)
    f = kn.parse_polynomial("1+z1^2*z2^3+(0.5i)*z2", 2)
    zeta = [0.2 + 0.1j, -0.3]
    a = kn.evaluate_representation(data, f, zeta, spec, method="separable")
    b = kn.evaluate_representation(data, f, zeta, spec, method="grid")
    assert abs(a - b) < 1e-13


def test_pole_on_torus_rejected():
    data = kn.build_kernel(edge_boundary(), 3)
    with pytest.raises(ValueError):
        kn.evaluate_representation(data, kn.PolyFunction.constant(2), [1.0, 0.0])
    with pytest.raises(ValueError):
        kn.evaluate_representation(data, kn.PolyFunction.constant(2), [0.2, 1.5])


def test_input_validation():
    data = kn.build_kernel(edge_boundary(), 3)
    with pytest.raises(ValueError):
        kn.evaluate_representation(data, kn.PolyFunction.constant(3), [0.1, 0.1])
    with pytest.raises(ValueError):
        kn.evaluate_representation(data, kn.PolyFunction.constant(2), [0.1])
    with pytest.raises(ValueError):
        kn.evaluate_representation(data, kn.PolyFunction.constant(2), [0.1, 0.1], method="magic")


def test_verify_reproduction_report():
    data = kn.build_kernel(edge_boundary(), 3)
    report = kn.verify_reproduction(
        data, kn.parse_polynomial("z1*z2", 2), [[0.3, -0.4]], kn.QuadratureSpec(64)
    )
    assert len(report) == 1
    entry = report[0]
    assert set(entry) == {"zeta", "expected", "computed", "abs_error", "N"}
    assert entry["abs_error"] < 1e-12
    assert entry["N"] == 64


def test_kernel_json_shape():
    doc = kn.build_kernel(edge_boundary(), 3).to_json()
    assert set(doc) == {"n", "s", "cocycle", "top_piece", "scale"}
    assert set(doc["scale"]) == {"num", "den", "tau_power"}
