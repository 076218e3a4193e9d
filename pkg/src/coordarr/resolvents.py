"""Cover-subordinate chains, resolvents of product cycles, and the exact
pairing against logarithmic cochains.

A chain of Čech degree t and dimension s assigns, alternately, a cell chain
to every (t+1)-tuple of cover indices, supported inside the intersection of
the indexed cover elements: every disk direction of every atom must lie in
every index of the tuple.  Three operators act on these:

* ``delta_prime``: degree down by one, dimension kept:
  (delta' G)_(T) = (-1)^s * sum over indices i of G_(i, T);
* ``boundary``: componentwise cell boundary, dimension down by one;
* ``epsilon_prime``: sums the components of a degree-0 chain back into one
  cell chain.

A resolvent of a cycle of bidegree (p, q) trades cell boundary against Čech
degree q times: piece k lives in degree k and dimension p + q - k, the
zeroth piece reassembles the cycle under epsilon', and consecutive pieces
satisfy  boundary(piece k) = -delta'(piece k+1).  The construction is the
explicit flag recursion: piece k is supported on tuples
(sigma_k < sigma_(k-1) < ... < sigma_0) of faces that drop one vertex per
step starting from a disk support sigma_0 of the cycle, and piece k+1 at
the extended flag (sigma_k - i, sigma_k, ..., sigma_0) is

    (-1)^(p+q-k) * sum over atoms D_(sigma_k) x S_gamma with coefficient c of
    (-1)^(pos(i, gamma+i)) * c * D_(sigma_k - i) x S_(gamma + i).

Cardinalities increase strictly along a flag, so the flag order coincides
with the canonical storage order of tuples.

The pairing of a log cochain against a chain of the same degree sums, over
increasing tuples, the integral of the assigned form over the assigned
chain.  Only torus atoms against their own matching index set survive: a
disk factor supports no nonzero integral of a holomorphic form, and on a
torus only the exactly matching logarithmic monomial has a period, worth
(2 pi i) per circle; scalars therefore live in Q times an integer power of
2 pi i and are kept exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cells import CellChain, boundary_chain
from .cech import LogCochain, canonical_tuple
from .complexes import SimplicialComplex, card, elements, pos_in

__all__ = [
    "UChain",
    "delta_prime",
    "boundary",
    "epsilon_prime",
    "PairingScalar",
    "Resolvent",
    "build_resolvent",
    "pair",
    "resolvent_pairing",
]

FaceTuple = tuple[int, ...]


class UChain:
    """Alternating, finitely supported map from (degree+1)-tuples of cover
    indices to cell chains of one dimension."""

    __slots__ = ("degree", "dimension", "values")

    def __init__(self, degree: int, dimension: int, values: dict[FaceTuple, CellChain] | None = None):
        if degree < 0:
            raise ValueError("negative degree")
        self.degree = degree
        self.dimension = dimension
        self.values: dict[FaceTuple, CellChain] = {}
        if values:
            for tup, chain in values.items():
                if len(tup) != degree + 1:
                    raise ValueError("tuple length does not match the degree")
                if not chain.is_zero():
                    self.values[tup] = chain

    def value_at(self, tup: Sequence[int]) -> CellChain:
        canon = canonical_tuple(tup)
        if canon is None:
            return CellChain()
        key, sign = canon
        chain = self.values.get(key)
        if chain is None:
            return CellChain()
        return chain if sign == 1 else chain.scale(-1)

    def is_zero(self) -> bool:
        return not self.values

    def scale(self, factor: int | Fraction) -> "UChain":
        return UChain(self.degree, self.dimension, {k: c.scale(factor) for k, c in self.values.items()})

    def __add__(self, other: "UChain") -> "UChain":
        if (other.degree, other.dimension) != (self.degree, self.dimension):
            raise ValueError("cannot add chains of different (degree, dimension)")
        out = dict(self.values)
        for tup, chain in other.values.items():
            out[tup] = out.get(tup, CellChain()) + chain
        return UChain(self.degree, self.dimension, out)

    def __sub__(self, other: "UChain") -> "UChain":
        return self + other.scale(-1)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, UChain)
            and (self.degree, self.dimension) == (other.degree, other.dimension)
            and self.values == other.values
        )

    def supported_in_cover(self) -> bool:
        """Support condition: disk directions of every atom lie inside the
        intersection of the tuple's cover indices."""
        for tup, chain in self.values.items():
            inter = -1
            for m in tup:
                inter &= m
            for sigma, _gamma in chain.terms:
                if sigma & ~inter:
                    return False
        return True

    def __repr__(self) -> str:
        inner = "; ".join(
            f"{tuple(list(elements(f)) for f in tup)} -> {chain!r}"
            for tup, chain in sorted(self.values.items())
        )
        return f"UChain(t={self.degree}, s={self.dimension}: {inner})"

    def to_json(self) -> list[dict]:
        return [
            {"tuple": [list(elements(f)) for f in tup], "atoms": chain.to_json()}
            for tup, chain in sorted(self.values.items())
        ]


def delta_prime(g: UChain) -> UChain:
    """Čech-type degree lowering: (delta' G)_(T) = (-1)^s sum_i G_(i, T).

    The sum over all cover indices i is implicit: only insertions that land
    in the support contribute, so the computation runs over the support.
    """
    if g.degree == 0:
        raise ValueError("delta' is undefined on degree-0 chains")
    sign_s = -1 if g.dimension % 2 else 1
    out: dict[FaceTuple, CellChain] = {}
    for tup, chain in g.values.items():
        for j in range(len(tup)):
            # removing position j: G evaluated at (tup[j], rest) picks up the
            # sign of moving index j to the front
            rest = tup[:j] + tup[j + 1 :]
            sign = sign_s * (-1 if j % 2 else 1)
            prev = out.get(rest)
            contribution = chain.scale(sign)
            out[rest] = contribution if prev is None else prev + contribution
    return UChain(g.degree - 1, g.dimension, out)


def boundary(g: UChain) -> UChain:
    """Componentwise cell boundary."""
    return UChain(
        g.degree,
        g.dimension - 1,
        {tup: boundary_chain(chain) for tup, chain in g.values.items()},
    )


def epsilon_prime(g: UChain) -> CellChain:
    """Sum of the components of a degree-0 chain."""
    if g.degree != 0:
        raise ValueError("epsilon' applies to degree-0 chains only")
    total = CellChain()
    for chain in g.values.values():
        total = total + chain
    return total


# ---------------------------------------------------------------------------
# exact pairing scalars
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairingScalar:
    """Exact value  coeff * (2 pi i)^tau_power;  zero is (0, 0)."""

    coeff: Fraction
    tau_power: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if not self.coeff and self.tau_power:
            object.__setattr__(self, "tau_power", 0)

    @classmethod
    def zero(cls) -> "PairingScalar":
        return cls(Fraction(0), 0)

    @classmethod
    def one(cls) -> "PairingScalar":
        return cls(Fraction(1), 0)

    def is_zero(self) -> bool:
        return not self.coeff

    def __bool__(self) -> bool:
        return bool(self.coeff)

    def __add__(self, other: "PairingScalar") -> "PairingScalar":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.tau_power != other.tau_power:
            raise ValueError("cannot add scalars with different (2 pi i) powers")
        return PairingScalar(self.coeff + other.coeff, self.tau_power)

    def __mul__(self, other: "PairingScalar") -> "PairingScalar":
        if self.is_zero() or other.is_zero():
            return PairingScalar.zero()
        return PairingScalar(self.coeff * other.coeff, self.tau_power + other.tau_power)

    def scale(self, factor: int | Fraction) -> "PairingScalar":
        return PairingScalar(self.coeff * factor, self.tau_power if factor else 0)

    def inverse(self) -> "PairingScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverting a zero pairing scalar")
        return PairingScalar(1 / self.coeff, -self.tau_power)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        if self.tau_power == 0:
            return str(self.coeff)
        return f"({self.coeff})*(2pii)^{self.tau_power}"

    def to_json(self) -> dict:
        return {
            "num": str(self.coeff.numerator),
            "den": str(self.coeff.denominator),
            "tau_power": self.tau_power,
        }


def pair(w: LogCochain, g: UChain) -> PairingScalar:
    """Pairing of a log cochain with a cover chain of the same degree.

    Sum over increasing tuples of the period of the assigned form on the
    assigned chain.  Atom periods: a disk factor kills the term, and a
    torus S_gamma pairs only with dz_gamma/z_gamma, period (2 pi i)^|gamma|.
    Homogeneity in the form degree p makes every surviving term carry the
    same power p, so the result is a single exact scalar.
    """
    if w.t != g.degree:
        raise ValueError(f"degree mismatch: cochain degree {w.t}, chain degree {g.degree}")
    total = Fraction(0)
    for tup, chain in g.values.items():
        form = w.values.get(tup)
        if form is None:
            continue
        for (sigma, gamma), c in chain.terms.items():
            if sigma:
                continue
            coeff = form.terms.get(gamma)
            if coeff:
                total += Fraction(coeff) * Fraction(c)
    if not total:
        return PairingScalar.zero()
    return PairingScalar(total, w.p)


# ---------------------------------------------------------------------------
# resolvents
# ---------------------------------------------------------------------------

@dataclass
class Resolvent:
    """Pieces 0..q for a cycle of bidegree (p, q); piece k has degree k and
    dimension p + q - k."""

    source: CellChain
    p: int
    q: int
    pieces: list[UChain]

    @property
    def top(self) -> UChain:
        """Last piece: degree q, all atoms pure tori of p circle directions."""
        return self.pieces[self.q]

    def validate(self) -> None:
        if not epsilon_prime(self.pieces[0]) == self.source:
            raise ValueError("piece 0 does not reassemble the source cycle")
        for k in range(self.q):
            lhs = boundary(self.pieces[k])
            rhs = delta_prime(self.pieces[k + 1]).scale(-1)
            if lhs != rhs:
                raise ValueError(f"resolvent identity fails between pieces {k} and {k + 1}")
        if not boundary(self.top).is_zero():
            raise ValueError("top piece has nonzero boundary")
        for k, piece in enumerate(self.pieces):
            if piece.degree != k or piece.dimension != self.p + self.q - k:
                raise ValueError(f"piece {k} has wrong (degree, dimension)")
            if not piece.supported_in_cover():
                raise ValueError(f"piece {k} violates the support condition")

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "cycle": self.source.to_json(),
            "pieces": [piece.to_json() for piece in self.pieces],
        }


def build_resolvent(K: SimplicialComplex, cycle: CellChain) -> Resolvent:
    """Resolvent of a closed homogeneous product cycle, by the flag recursion.

    The input must be a cycle (zero boundary) all of whose atoms share one
    bidegree (p, q) and have disk supports inside the complex.  Both
    resolvent identities and the support condition are verified before the
    result is returned.
    """
    if cycle.is_zero():
        raise ValueError("cannot resolve the zero chain")
    bidegree = cycle.bidegree()
    if bidegree is None:
        raise ValueError("cycle is not homogeneous in bidegree")
    p, q = bidegree
    for sigma, _gamma in cycle.terms:
        if not K.is_face(sigma):
            raise ValueError(f"disk support {elements(sigma)} is not a face")
    if not boundary_chain(cycle).is_zero():
        raise ValueError("chain is not closed")

    # piece 0: group the atoms by their disk support
    grouped: dict[FaceTuple, CellChain] = {}
    for (sigma, gamma), c in cycle.terms.items():
        key = (sigma,)
        grouped.setdefault(key, CellChain())
        grouped[key] = grouped[key] + CellChain({(sigma, gamma): c})
    pieces = [UChain(0, p + q, grouped)]

    for k in range(q):
        prev = pieces[k]
        sign_k = -1 if (p + q - k) % 2 else 1
        values: dict[FaceTuple, CellChain] = {}
        for flag, chain in prev.values.items():
            sigma_k = flag[0]
            for i in elements(sigma_k):
                bit = 1 << (i - 1)
                new_flag = (sigma_k & ~bit,) + flag
                moved: dict[tuple[int, int], int | Fraction] = {}
                for (sigma, gamma), c in chain.terms.items():
                    new_gamma = gamma | bit
                    sign = -1 if pos_in(new_gamma, i) % 2 else 1
                    key = (sigma & ~bit, new_gamma)
                    moved[key] = moved.get(key, 0) + sign_k * sign * c
                contribution = CellChain(moved)
                if contribution.is_zero():
                    continue
                prev_val = values.get(new_flag)
                values[new_flag] = contribution if prev_val is None else prev_val + contribution
        pieces.append(UChain(k + 1, p + q - k - 1, values))

    resolvent = Resolvent(cycle, p, q, pieces)
    resolvent.validate()
    return resolvent


def resolvent_pairing(res: Resolvent, w: LogCochain) -> PairingScalar:
    """Total pairing of a pure-bidegree cocycle against a resolvent.

    Only the piece matching the cochain's Čech degree can contribute; a
    cochain of degree beyond the resolvent length pairs to zero.
    """
    if w.t < 0 or w.t > res.q:
        return PairingScalar.zero()
    return pair(w, res.pieces[w.t])
