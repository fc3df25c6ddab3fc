"""Finitely generated lattices in Q^n: membership, nondegeneracy, inner product.

A lattice is a free abelian group Z^r embedded in Q^n by a list of
Z-linearly independent generator vectors.  Because the generators are also
Q-linearly independent, a vector has at most one rational coordinate vector,
so membership reduces to a rational linear solve plus an integrality check
(no Hermite normal form machinery is needed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]


def _as_vector(v: Sequence) -> Vector:
    return tuple(Fraction(x) for x in v)


def _rank(rows: List[List[Fraction]]) -> int:
    """Rank of a rational matrix by Gaussian elimination (destructive)."""
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [x / pv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


class Lattice:
    """Gamma = Z g_1 + ... + Z g_r inside Q^n, generators Z-independent."""

    def __init__(self, generators: Sequence[Sequence]):
        gens = [_as_vector(g) for g in generators]
        if not gens:
            raise ValueError("lattice needs at least one generator")
        dim = len(gens[0])
        if any(len(g) != dim for g in gens):
            raise ValueError("generators have mixed dimensions")
        if _rank([list(g) for g in gens]) != len(gens):
            raise ValueError("generators are Z-linearly dependent")
        self.dim = dim
        self.rank = len(gens)
        self.generators = tuple(gens)

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        """Z^n with the unit-vector generators."""
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __repr__(self):
        return f"Lattice({[tuple(map(str, g)) for g in self.generators]})"

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def ambient(self, coords: Sequence[int]) -> Vector:
        """Map integer coordinates to the ambient rational vector."""
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        out = [Fraction(0)] * self.dim
        for c, g in zip(coords, self.generators):
            for i in range(self.dim):
                out[i] += c * g[i]
        return tuple(out)

    def membership(self, v: Sequence) -> Optional[Tuple[int, ...]]:
        """Integer coordinates x with G x = v, or None if v is not in Gamma."""
        v = _as_vector(v)
        if len(v) != self.dim:
            raise ValueError(f"vector has dimension {len(v)}, lattice is in Q^{self.dim}")
        # Solve the (possibly overdetermined) system by elimination on [G^T | v].
        rows = [[self.generators[j][i] for j in range(self.rank)] + [v[i]]
                for i in range(self.dim)]
        rank = 0
        pivots = []
        for col in range(self.rank):
            pivot = next((r for r in range(rank, self.dim) if rows[r][col] != 0), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            pv = rows[rank][col]
            rows[rank] = [x / pv for x in rows[rank]]
            for r in range(self.dim):
                if r != rank and rows[r][col] != 0:
                    f = rows[r][col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
            pivots.append(col)
            rank += 1
        # Independence of the generators guarantees a pivot in every column.
        assert rank == self.rank
        if any(rows[r][-1] != 0 for r in range(rank, self.dim)):
            return None
        x = [rows[r][-1] for r in range(rank)]
        if any(c.denominator != 1 for c in x):
            return None
        coords = tuple(int(c) for c in x)
        if self.ambient(coords) != v:
            return None
        return coords

    def __contains__(self, v) -> bool:
        return self.membership(v) is not None

    def nondegenerate(self) -> bool:
        """True iff the generators span Q^n, i.e. contain a basis of F^n."""
        return _rank([list(g) for g in self.generators]) == self.dim

    def point(self, coords: Sequence[int]) -> "LatticePoint":
        return LatticePoint(self, tuple(int(c) for c in coords))

    def zero(self) -> "LatticePoint":
        return self.point((0,) * self.rank)


@dataclass(frozen=True)
class LatticePoint:
    """An element of Gamma, held as integer coordinates in the generators."""

    lattice: Lattice
    coords: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.lattice.rank:
            raise ValueError("coordinate length does not match lattice rank")

    @property
    def ambient(self) -> Vector:
        return self.lattice.ambient(self.coords)

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        if self.lattice != other.lattice:
            raise ValueError("points of different lattices")
        return LatticePoint(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        if self.lattice != other.lattice:
            raise ValueError("points of different lattices")
        return LatticePoint(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticePoint":
        return LatticePoint(self.lattice, tuple(-a for a in self.coords))


@dataclass(frozen=True)
class Direction:
    """An element d = sum d_i D_i of the span of the degree operators."""

    coeffs: Tuple[Fraction, ...]

    @classmethod
    def of(cls, coeffs: Sequence) -> "Direction":
        return cls(_as_vector(coeffs))

    @property
    def dim(self) -> int:
        return len(self.coeffs)


def inner(beta, d: Direction) -> Fraction:
    """The pairing <beta, d> = sum_i beta_i d_i (beta a point or raw vector)."""
    bvec = beta.ambient if isinstance(beta, LatticePoint) else _as_vector(beta)
    if len(bvec) != d.dim:
        raise ValueError(f"dimension mismatch: {len(bvec)} vs {d.dim}")
    return sum((b * c for b, c in zip(bvec, d.coeffs)), Fraction(0))
