"""Root system data for the tubular elliptic types D4, E6, E7, E8.

An elliptic root of type X_n^(1,1) is written gamma = beta + k*a + l*b with
beta a root of the finite system X_n (integer coordinates in the simple basis
alpha_1..alpha_n, Bourbaki numbering) and a, b spanning the radical.  The full
elliptic system is exactly {beta + k*a + l*b : beta finite root, k, l integers},
so membership and pairings reduce to the finite Cartan data kept here.

Reflections satisfy s_gamma = s_{-gamma}; roots are therefore stored with a
canonical sign (first nonzero coordinate of beta positive) and the one basis
root that is naturally negative, alpha_0 = -alphatilde + b, carries an explicit
sign flag inside :class:`EllipticBasis`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum

from .linalg import Mat, Vec, mat_vec


class FiniteType(Enum):
    D4 = "D4"
    E6 = "E6"
    E7 = "E7"
    E8 = "E8"

    @classmethod
    def parse(cls, name: str) -> "FiniteType":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown type {name!r}; expected one of D4, E6, E7, E8") from None


# Bourbaki data per type: rank, special node t, marks of the highest root,
# edges of the finite Dynkin diagram (1-based) and the node the affine vertex
# attaches to.
_RAW = {
    FiniteType.D4: dict(
        n=4, t=2, marks=(1, 2, 1, 1),
        edges=((1, 2), (2, 3), (2, 4)), affine_edge=2,
    ),
    FiniteType.E6: dict(
        n=6, t=4, marks=(1, 2, 2, 3, 2, 1),
        edges=((1, 3), (3, 4), (4, 5), (5, 6), (2, 4)), affine_edge=2,
    ),
    FiniteType.E7: dict(
        n=7, t=4, marks=(2, 2, 3, 4, 3, 2, 1),
        edges=((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)), affine_edge=1,
    ),
    FiniteType.E8: dict(
        n=8, t=4, marks=(2, 3, 4, 6, 5, 4, 3, 2),
        edges=((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)), affine_edge=8,
    ),
}

_EXPECTED_T_MT = {
    FiniteType.D4: (2, 2),
    FiniteType.E6: (4, 3),
    FiniteType.E7: (4, 4),
    FiniteType.E8: (4, 6),
}


@dataclass(frozen=True)
class FiniteTypeData:
    """Static table for one finite type: rank, special node, marks, diagram."""

    kind: FiniteType
    n: int
    t: int                      # 1-based index of the unique node of maximal mark
    m_t: int
    marks: Vec
    adjacency: frozenset[tuple[int, int]]
    affine_edge: int            # node the affine vertex 0 attaches to
    cartan: Mat                 # Gram matrix of the simple roots

    @property
    def highest_root(self) -> Vec:
        return self.marks

    def pairing(self, u: Vec, v: Vec) -> int:
        cv = mat_vec(self.cartan, v)
        return sum(x * y for x, y in zip(u, cv))

    def simple_reflect(self, i: int, v: Vec) -> Vec:
        """Apply s_{alpha_i} (1-based i) to a vector in simple-root coordinates."""
        c = sum(self.cartan[i - 1][j] * v[j] for j in range(self.n))
        if c == 0:
            return v
        out = list(v)
        out[i - 1] -= c
        return tuple(out)


def _validate(data: FiniteTypeData) -> None:
    n = data.n
    if (data.t, data.m_t) != _EXPECTED_T_MT[data.kind]:
        raise AssertionError(f"{data.kind}: special node table mismatch")
    if sum(1 for m in data.marks if m == data.m_t) != 1:
        raise AssertionError(f"{data.kind}: maximal mark is not unique")
    # diagram must be a tree on n vertices
    if len(data.adjacency) != n - 1:
        raise AssertionError(f"{data.kind}: diagram is not a tree")
    seen = {1}
    frontier = [1]
    while frontier:
        v = frontier.pop()
        for i, j in data.adjacency:
            for u, w in ((i, j), (j, i)):
                if u == v and w not in seen:
                    seen.add(w)
                    frontier.append(w)
    if len(seen) != n:
        raise AssertionError(f"{data.kind}: diagram is not connected")
    # b = alpha_0 + sum m_i alpha_i must be orthogonal to every affine simple
    # root; with m_0 = 1 this reads  sum_{i=0}^n m_i (alpha_i | alpha_j) = 0.
    aff_marks = (1,) + data.marks
    for j in range(n + 1):
        total = 0
        for i in range(n + 1):
            if i == j:
                c = 2
            elif 0 in (i, j):
                other = i + j
                c = -1 if other == data.affine_edge else 0
            else:
                c = data.cartan[i - 1][j - 1]
            total += aff_marks[i] * c
        if total != 0:
            raise AssertionError(f"{data.kind}: marks fail the radical-direction test at node {j}")


@functools.lru_cache(maxsize=None)
def finite_type_data(kind: FiniteType) -> FiniteTypeData:
    raw = _RAW[kind]
    n = raw["n"]
    edges = frozenset(tuple(sorted(e)) for e in raw["edges"])
    cartan = tuple(
        tuple(
            2 if i == j else (-1 if tuple(sorted((i + 1, j + 1))) in edges else 0)
            for j in range(n)
        )
        for i in range(n)
    )
    t = raw["t"]
    data = FiniteTypeData(
        kind=kind,
        n=n,
        t=t,
        m_t=raw["marks"][t - 1],
        marks=tuple(raw["marks"]),
        adjacency=edges,
        affine_edge=raw["affine_edge"],
        cartan=cartan,
    )
    _validate(data)
    return data


@functools.lru_cache(maxsize=None)
def finite_roots(kind: FiniteType) -> frozenset[Vec]:
    """The finite root system, closed under all simple reflections."""
    data = finite_type_data(kind)
    n = data.n
    roots = {tuple(1 if j == i else 0 for j in range(n)) for i in range(n)}
    frontier = list(roots)
    while frontier:
        v = frontier.pop()
        for i in range(1, n + 1):
            w = data.simple_reflect(i, v)
            if w not in roots:
                roots.add(w)
                frontier.append(w)
    return frozenset(roots)


def highest_root(kind: FiniteType) -> "RootVector":
    return RootVector(beta=finite_type_data(kind).marks, k=0, l=0)


@dataclass(frozen=True, order=True)
class RootVector:
    """An elliptic root beta + k*a + l*b in canonical sign."""

    beta: Vec
    k: int
    l: int

    def __post_init__(self) -> None:
        lead = next((x for x in self.beta if x != 0), 0)
        if lead <= 0:
            raise ValueError(f"root stored with non-canonical sign: {self.beta}")

    @classmethod
    def canonical(cls, beta: Vec, k: int, l: int) -> "RootVector":
        lead = next((x for x in beta if x != 0), 0)
        if lead == 0:
            raise ValueError("zero finite part is not a root")
        if lead < 0:
            return cls(tuple(-x for x in beta), -k, -l)
        return cls(tuple(beta), k, l)

    def negated_coords(self) -> tuple[Vec, int, int]:
        return tuple(-x for x in self.beta), -self.k, -self.l

    def to_json(self) -> dict:
        return {"beta": list(self.beta), "k": self.k, "l": self.l}

    @classmethod
    def from_json(cls, obj: dict) -> "RootVector":
        return cls.canonical(tuple(obj["beta"]), obj["k"], obj["l"])


def is_root(kind: FiniteType, gamma: RootVector) -> bool:
    """Whether gamma lies in the elliptic system: beta finite root, k and l free."""
    return gamma.beta in finite_roots(kind)


def require_root(kind: FiniteType, gamma: RootVector) -> RootVector:
    if not is_root(kind, gamma):
        raise ValueError(f"{gamma} is not a root of type {kind.value}")
    return gamma


def simple_root(kind: FiniteType, i: int) -> RootVector:
    n = finite_type_data(kind).n
    if not 1 <= i <= n:
        raise ValueError(f"simple root index {i} out of range 1..{n}")
    return RootVector(beta=tuple(1 if j == i - 1 else 0 for j in range(n)), k=0, l=0)


@dataclass(frozen=True)
class EllipticBasis:
    """The n+2 basis roots [alpha_1..alpha_n, alpha_0, alpha_{t*}].

    alpha_0 = -alphatilde + b is stored canonically as (alphatilde; k=0, l=-1)
    with sign -1; all other signs are +1.  `true_vectors` undoes the flip when
    the actual pairing values matter (diagram edges), reflections never do.
    """

    kind: FiniteType
    alpha: tuple[RootVector, ...]
    signs: tuple[int, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        data = finite_type_data(self.kind)
        return tuple(str(i) for i in range(1, data.n + 1)) + ("0", f"{data.t}*")

    def true_vectors(self) -> tuple[tuple[Vec, int, int], ...]:
        out = []
        for rv, s in zip(self.alpha, self.signs):
            if s == 1:
                out.append((rv.beta, rv.k, rv.l))
            else:
                out.append(rv.negated_coords())
        return tuple(out)


@functools.lru_cache(maxsize=None)
def elliptic_basis(kind: FiniteType) -> EllipticBasis:
    data = finite_type_data(kind)
    simples = [simple_root(kind, i) for i in range(1, data.n + 1)]
    alpha_0 = RootVector(beta=data.marks, k=0, l=-1)
    alpha_tstar = RootVector(beta=simple_root(kind, data.t).beta, k=1, l=0)
    return EllipticBasis(
        kind=kind,
        alpha=tuple(simples) + (alpha_0, alpha_tstar),
        signs=(1,) * data.n + (-1, 1),
    )


def elliptic_diagram(kind: FiniteType) -> tuple[tuple[str, str, str], ...]:
    """Edges of the elliptic Dynkin diagram on vertices {0..n, t*}.

    Edge styles follow the pairing of the (true-sign) basis roots: "single"
    for pairing -1, "double_dotted" for pairing 2, no edge for 0.
    """
    data = finite_type_data(kind)
    basis = elliptic_basis(kind)
    labels = basis.labels
    vectors = basis.true_vectors()
    edges = []
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            p = data.pairing(vectors[i][0], vectors[j][0])
            if p == 0:
                continue
            if p == -1:
                style = "single"
            elif p == 2:
                style = "double_dotted"
            else:
                raise AssertionError(f"unexpected basis pairing {p} between {labels[i]},{labels[j]}")
            edges.append((labels[i], labels[j], style))
    return tuple(edges)
