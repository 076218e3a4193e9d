"""Cauchy-type integral representations with singularities on a coordinate
subspace arrangement.

For a class of top holomorphic degree (bidegree (n, s-n)) the data of the
representation is assembled from the three finite models:

* a representative log cocycle, every value a rational multiple of
  dz_1/z_1 ^ ... ^ dz_n/z_n (admissibility forces its support onto tuples
  of faces with empty intersection);
* the top resolvent piece of a dual product cycle, a degree-(s-n) cover
  chain all of whose atoms are the full torus;
* the exact pairing of the two, a nonzero rational multiple of
  (2 pi i)^n, whose inverse is stored as the normalization scale.

With the scale in place the pairing of cocycle against top piece is exactly
one, and for a function f holomorphic near the closed unit polydisc,

    f(zeta) = sum over support tuples of
              C'_T * B_T * integral over the unit torus of
              f(z) dz_1/(z_1 - zeta_1) ^ ... ^ dz_n/(z_n - zeta_n),

evaluated here by the uniform tensor-product trapezoid rule on the torus
(spectrally accurate for analytic integrands; for polynomial f the rule is
exact up to the geometric tail |zeta|^N).  Only the top piece enters: lower
resolvent pieces carry disk factors, against which holomorphic forms have
no periods.  The kernel is shifted by zeta, the cycle is not; shifting the
cycle instead would sweep out a homotopy that never meets the arrangement,
so the value only depends on the class data.

Test functions are polynomials: dense enough for validation and equipped
with an exact oracle (evaluate the polynomial at zeta).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import cech, cells
from .complexes import SimplicialComplex, elements
from .resolvents import PairingScalar, Resolvent, UChain, build_resolvent, pair, resolvent_pairing

__all__ = [
    "PolyFunction",
    "parse_polynomial",
    "QuadratureSpec",
    "KernelData",
    "KernelUnavailableError",
    "build_kernel",
    "torus_quadrature",
    "evaluate_representation",
    "verify_reproduction",
]


class KernelUnavailableError(ValueError):
    """No class of full holomorphic degree exists in the requested total
    degree; the message reports the relevant bigraded ranks."""


class PolyFunction:
    """Polynomial in n complex variables: exponent tuple -> coefficient."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], complex] | None = None):
        self.n = n
        self.terms: dict[tuple[int, ...], complex] = {}
        if terms:
            for expo, coeff in terms.items():
                if len(expo) != n or any(e < 0 for e in expo):
                    raise ValueError(f"bad exponent vector {expo} for {n} variables")
                if coeff:
                    self.terms[tuple(expo)] = complex(coeff)

    @classmethod
    def constant(cls, n: int, value: complex = 1.0) -> "PolyFunction":
        return cls(n, {(0,) * n: value})

    @classmethod
    def monomial(cls, expo: Sequence[int], coeff: complex = 1.0) -> "PolyFunction":
        return cls(len(expo), {tuple(expo): coeff})

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def max_axis_degree(self) -> int:
        return max((max(e) for e in self.terms), default=0)

    def __call__(self, z: Sequence[complex] | np.ndarray) -> complex | np.ndarray:
        z = np.asarray(z)
        total = np.zeros(z.shape[:-1], dtype=complex) if z.ndim > 1 else 0j
        for expo, coeff in self.terms.items():
            term = coeff
            for j, e in enumerate(expo):
                if e:
                    term = term * z[..., j] ** e
            total = total + term
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for expo, coeff in sorted(self.terms.items()):
            mono = "*".join(f"z{j + 1}^{e}" for j, e in enumerate(expo) if e)
            bits.append(f"({coeff})" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


_FACTOR = re.compile(r"^z(\d+)(?:\^(\d+))?$")


def _parse_complex_literal(text: str) -> complex:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1].strip()
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise ValueError(f"bad complex literal {text!r}") from exc


def parse_polynomial(text: str, n: int) -> PolyFunction:
    """Parse  c*z1^a1*...*zn^an + ...  with complex coefficients written as
    ``re``, ``imi`` or ``(re+imi)``, e.g. ``1+z1^2*z2^3`` or
    ``(0.5-2i)*z1*z3^2``."""
    cleaned = text.replace(" ", "")
    if not cleaned:
        raise ValueError("empty polynomial")
    # split into signed terms at top level (parentheses only wrap scalars,
    # which never contain *, so a simple depth scan suffices)
    terms: list[str] = []
    depth = 0
    current = ""
    for ch in cleaned:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and current and current[-1] not in "eE*^(+-":
            terms.append(current)
            current = ch
        else:
            current += ch
    terms.append(current)

    out: dict[tuple[int, ...], complex] = {}
    for term in terms:
        sign = 1.0
        body = term
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = complex(sign)
        expo = [0] * n
        for factor in body.split("*"):
            match = _FACTOR.match(factor)
            if match:
                idx = int(match.group(1))
                if not 1 <= idx <= n:
                    raise ValueError(f"variable z{idx} out of range for {n} variables")
                expo[idx - 1] += int(match.group(2) or 1)
            else:
                coeff *= _parse_complex_literal(factor)
        key = tuple(expo)
        out[key] = out.get(key, 0j) + coeff
    return PolyFunction(n, out)


@dataclass(frozen=True)
class QuadratureSpec:
    """Uniform tensor grid on the unit torus: N nodes per circle."""

    nodes: int = 64
    radius: float = 1.0

    def __post_init__(self) -> None:
        if self.nodes < 4 or self.nodes & (self.nodes - 1):
            raise ValueError("node count must be a power of two, at least 4")
        if self.radius != 1.0:
            raise ValueError("integration runs over the unit torus only")

    def circle(self) -> np.ndarray:
        angles = 2.0 * np.pi * np.arange(self.nodes) / self.nodes
        return np.exp(1j * angles)


@dataclass
class KernelData:
    """Normalized data of one integral representation."""

    n: int
    s: int
    cocycle: cech.LogCochain
    top_piece: UChain
    scale: PairingScalar
    cycle: cells.CellChain = field(repr=False, default_factory=cells.CellChain)

    def raw_pairing(self) -> PairingScalar:
        return pair(self.cocycle, self.top_piece)

    def check_normalized(self) -> bool:
        total = self.raw_pairing() * self.scale
        return total.coeff == 1 and total.tau_power == 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "cocycle": self.cocycle.to_json(),
            "top_piece": self.top_piece.to_json(),
            "scale": self.scale.to_json(),
        }


def build_kernel(K: SimplicialComplex, s: int) -> KernelData:
    """Assemble the representation data for total degree s.

    Picks a product cycle of bidegree (n, s-n) and a representative log
    cocycle with a nonzero pairing (nondegeneracy of the bidegree pairing
    guarantees some pair works), then normalizes.
    """
    n = K.n
    q = s - n
    hodge = cech.hodge_table(K)
    if q < 0 or hodge.h.get((n, q), 0) == 0:
        row = {p: hodge.h.get((p, s - p), 0) for p in range(n + 1) if hodge.h.get((p, s - p), 0)}
        raise KernelUnavailableError(
            f"no class of full holomorphic degree in H^{s}: "
            f"h(n={n}, q={q}) = 0; nonzero ranks in degree {s}: {row or 'none'}"
        )
    cycles = cells.homology(K).generators(n, q)
    cocycles = cech.representative_cocycles(K, n, q)
    for cycle in cycles:
        resolvent = build_resolvent(K, cycle)
        for cocycle in cocycles:
            raw = resolvent_pairing(resolvent, cocycle)
            if not raw.is_zero():
                return KernelData(
                    n=n,
                    s=s,
                    cocycle=cocycle,
                    top_piece=resolvent.top,
                    scale=raw.inverse(),
                    cycle=cycle,
                )
    raise KernelUnavailableError(
        "pairing matrix between cycle and cocycle bases is zero; "
        "this contradicts nondegeneracy and indicates a bug"
    )


def torus_quadrature(
    g: Callable[[np.ndarray], np.ndarray],
    gamma: int,
    n: int,
    spec: QuadratureSpec,
) -> complex:
    """Average of g over the uniform grid on the torus of the directions in
    ``gamma`` (other coordinates pinned at 1).

    This average equals  (2 pi i)^(-|gamma|) times the contour integral of
    g(z) dz_gamma/z_gamma  with ascending wedge order, the orientation that
    makes each circle run counterclockwise.  For g analytic in a
    neighborhood of the torus the error decays geometrically in N.

    ``g`` receives an array of points of shape (chunk, n) and must return
    the corresponding values; evaluation is chunked along the first torus
    direction and accumulated with numpy's pairwise summation.
    """
    dirs = list(elements(gamma))
    k = len(dirs)
    nodes = spec.circle()
    if k == 0:
        z = np.ones((1, n), dtype=complex)
        return complex(np.asarray(g(z), dtype=complex).reshape(-1)[0])
    chunk_sums = []
    tail = dirs[1:]
    grids = np.meshgrid(*(nodes for _ in tail), indexing="ij") if tail else []
    base = np.ones((spec.nodes ** (k - 1), n), dtype=complex)
    for axis, grid in zip(tail, grids):
        base[:, axis - 1] = grid.reshape(-1)
    for w in nodes:
        pts = base.copy()
        pts[:, dirs[0] - 1] = w
        chunk_sums.append(np.add.reduce(np.asarray(g(pts), dtype=complex)))
    total = np.add.reduce(np.asarray(chunk_sums))
    return complex(total / spec.nodes**k)


def _axis_sums(zeta_j: complex, max_power: int, spec: QuadratureSpec) -> np.ndarray:
    """S(m) = average over grid nodes w of  w^(m+1) / (w - zeta_j),
    m = 0..max_power; the per-axis factors of the separated rule."""
    nodes = spec.circle()
    base = nodes / (nodes - zeta_j)
    out = np.empty(max_power + 1, dtype=complex)
    power = base
    for m in range(max_power + 1):
        out[m] = np.add.reduce(power) / spec.nodes
        power = power * nodes
    return out


def evaluate_representation(
    kernel: KernelData,
    f: PolyFunction,
    zeta: Sequence[complex],
    spec: QuadratureSpec = QuadratureSpec(),
    method: str = "separable",
) -> complex:
    """Reproduce f at an interior point of the unit polydisc.

    The exact part (cycle coefficients, cocycle coefficients, the
    normalization scale and the (2 pi i) powers) is combined over the
    rationals first; the single remaining transcendental ingredient is the
    normalized torus quadrature of f(z) * prod_j z_j/(z_j - zeta_j).  The
    two methods are the same tensor trapezoid rule: ``separable`` factors
    it per monomial per axis, ``grid`` evaluates the full grid.
    """
    n = kernel.n
    if f.n != n:
        raise ValueError(f"polynomial has {f.n} variables, kernel expects {n}")
    zeta = [complex(z) for z in zeta]
    if len(zeta) != n:
        raise ValueError(f"point has {len(zeta)} coordinates, expected {n}")
    if any(abs(z) >= 1.0 for z in zeta):
        raise ValueError("evaluation point must lie strictly inside the unit polydisc")

    full = (1 << n) - 1
    exact = Fraction(0)
    for tup, chain in kernel.top_piece.values.items():
        form = kernel.cocycle.values.get(tup)
        if form is None:
            continue
        b = form.terms.get(full)
        if not b:
            continue
        for (sigma, gamma), c in chain.terms.items():
            if sigma == 0 and gamma == full:
                exact += Fraction(b) * Fraction(c)
    # the tuple sum times (2 pi i)^n is the raw pairing; the scale's
    # tau_power must cancel the quadrature normalization exactly
    if kernel.scale.tau_power + n != 0:
        raise ValueError("kernel scale does not cancel the torus period power")
    prefactor = complex(kernel.scale.coeff * exact)

    if method == "separable":
        if not f.terms:
            return 0j
        max_power = f.max_axis_degree()
        axis = [_axis_sums(zeta[j], max_power, spec) for j in range(n)]
        quad = 0j
        for expo, coeff in sorted(f.terms.items()):
            term = coeff
            for j, e in enumerate(expo):
                term *= axis[j][e]
            quad += term
    elif method == "grid":
        def integrand(z: np.ndarray) -> np.ndarray:
            vals = np.asarray(f(z), dtype=complex)
            for j in range(n):
                vals = vals * z[:, j] / (z[:, j] - zeta[j])
            return vals

        quad = torus_quadrature(integrand, full, n, spec)
    else:
        raise ValueError(f"unknown method {method!r}")
    return prefactor * quad


def verify_reproduction(
    kernel: KernelData,
    f: PolyFunction,
    zetas: Iterable[Sequence[complex]],
    spec: QuadratureSpec = QuadratureSpec(),
) -> list[dict]:
    """Reproduction report for one test function over sample points."""
    report = []
    for zeta in zetas:
        computed = evaluate_representation(kernel, f, zeta, spec)
        expected = complex(f(np.asarray(zeta, dtype=complex)))
        report.append(
            {
                "zeta": [[z.real, z.imag] for z in map(complex, zeta)],
                "expected": [expected.real, expected.imag],
                "computed": [computed.real, computed.imag],
                "abs_error": abs(computed - expected),
                "N": spec.nodes,
            }
        )
    return report
