"""Ambient quadratic spaces V, Vtilde, Vhat and exact subspace computations.

Coordinates are always taken in the fixed basis (alpha_1..alpha_n, a, b, b', a'),
truncated to the ambient dimension:

    V       dim n+2   signature (n, 0, 2)   radical spanned by a, b
    Vtilde  dim n+3   signature (n+1, 1, 1) radical spanned by a
    Vhat    dim n+4   signature (n+2, 2, 0) non-degenerate

The hyperbolic pairings are normalized to (b | b') = (a | a') = 1 with every
other primed pairing zero; any nonzero value gives an isometric space, so
nothing downstream depends on the choice.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import linalg
from .linalg import FracVec, Mat
from .rootsys import FiniteType, finite_type_data


class Ambient(Enum):
    V = "V"
    VTILDE = "Vtilde"
    VHAT = "Vhat"

    def dim(self, kind: FiniteType) -> int:
        n = finite_type_data(kind).n
        return n + 2 + {Ambient.V: 0, Ambient.VTILDE: 1, Ambient.VHAT: 2}[self]


def basis_labels(kind: FiniteType, ambient: Ambient) -> tuple[str, ...]:
    n = finite_type_data(kind).n
    labels = tuple(f"alpha_{i}" for i in range(1, n + 1)) + ("a", "b", "b'", "a'")
    return labels[: ambient.dim(kind)]


@functools.lru_cache(maxsize=None)
def gram_matrix(kind: FiniteType, ambient: Ambient) -> Mat:
    data = finite_type_data(kind)
    n = data.n
    d = ambient.dim(kind)
    g = [[0] * d for _ in range(d)]
    for i in range(n):
        for j in range(n):
            g[i][j] = data.cartan[i][j]
    # a at n, b at n+1 are isotropic and orthogonal to everything in V
    if d > n + 2:  # b' present: (b | b') = 1
        g[n + 1][n + 2] = g[n + 2][n + 1] = 1
    if d > n + 3:  # a' present: (a | a') = 1
        g[n][n + 3] = g[n + 3][n] = 1
    return tuple(tuple(row) for row in g)


def signature(m) -> tuple[int, int, int]:
    """Exact signature (positive, negative, zero) of a symmetric rational matrix."""
    return linalg.signature(m)


@dataclass(frozen=True)
class RationalSubspace:
    """A subspace of an ambient space, basis kept in reduced row echelon form.

    Keeping bases in RREF makes subspace equality plain tuple equality.
    """

    kind: FiniteType
    ambient: Ambient
    basis: tuple[FracVec, ...]

    @classmethod
    def from_vectors(cls, kind: FiniteType, ambient: Ambient, vectors) -> "RationalSubspace":
        rows = [tuple(Fraction(x) for x in v) for v in vectors]
        if not rows:
            return cls(kind, ambient, ())
        red, _ = linalg.rref(rows)
        basis = tuple(tuple(r) for r in red if any(x != 0 for x in r))
        return cls(kind, ambient, basis)

    @property
    def dim(self) -> int:
        return len(self.basis)


def full_space(kind: FiniteType, ambient: Ambient) -> RationalSubspace:
    d = ambient.dim(kind)
    return RationalSubspace.from_vectors(kind, ambient, linalg.identity(d))


def fixed_space(matrix) -> RationalSubspace:
    """Exact kernel of (M - I): the fixed space of a group element."""
    m = matrix.m
    d = len(m)
    diff = tuple(
        tuple(m[i][j] - (1 if i == j else 0) for j in range(d)) for i in range(d)
    )
    basis = linalg.kernel_basis(diff)
    return RationalSubspace(matrix.kind, matrix.ambient, tuple(basis))


def orth_complement(s: RationalSubspace) -> RationalSubspace:
    """All vectors pairing to zero with the subspace.

    In a degenerate ambient dim(S) + dim(S^perp) can exceed the dimension when
    S meets the radical; Vhat is the safe home for Scherk-style arguments.
    """
    g = gram_matrix(s.kind, s.ambient)
    if not s.basis:
        return full_space(s.kind, s.ambient)
    rows = [tuple(sum(v[i] * g[i][j] for i in range(len(g))) for j in range(len(g)))
            for v in s.basis]
    basis = linalg.kernel_basis(rows)
    return RationalSubspace(s.kind, s.ambient, tuple(basis))


def is_null_space(s: RationalSubspace) -> bool:
    """Whether the form vanishes identically on the subspace."""
    g = gram_matrix(s.kind, s.ambient)
    d = len(g)
    for u in s.basis:
        gu = [sum(u[i] * g[i][j] for i in range(d)) for j in range(d)]
        for v in s.basis:
            if sum(x * y for x, y in zip(gu, v)) != 0:
                return False
    return True
