"""Group elements of W, Wtilde and What with exact integer matrices.

Composition is operator style throughout: (fg)(v) = f(g(v)), so products of
matrices read left to right as maps applied right to left.

Elements of the cover Wtilde live in two interchangeable forms:

* as Gram-certified integer matrices on Vtilde (or lifted to Vhat), and
* as normal-form triples (w_fin, lambda, mu) with w_fin in the finite Weyl
  group, lambda in the finite root lattice and mu in the affine root lattice
  L(Phi_b) = L(Phi_fin) + Z*b, stored as n fin coordinates plus one b
  coordinate.

The dictionary between the two is

    matrix(w, lambda, mu) = e(w) . TR_b(lambda) . TR_a(mu)

where e embeds the finite group (fixing a, b, b', a'), and TR_x is the
transvection family built from the Eichler-Siegel map.  On the subspace V a
transvection is just v -> v - (v | lambda) x; on the hyperbolic coordinates
b', a' it picks up the correction terms encoded in `_transvection_word`.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .bilinear import Ambient, gram_matrix
from .linalg import Mat, Vec, identity, mat_mul, mat_vec, vec_add, vec_scale
from .rootsys import (
    FiniteType,
    RootVector,
    elliptic_basis,
    finite_type_data,
    require_root,
)


class NotInGroupError(ValueError):
    """Raised when a matrix fails to decompose as an element of Wtilde."""


@dataclass(frozen=True)
class GroupMatrix:
    """An integer matrix certified to preserve its ambient Gram form."""

    kind: FiniteType
    ambient: Ambient
    m: Mat

    def __post_init__(self) -> None:
        g = gram_matrix(self.kind, self.ambient)
        d = len(g)
        if len(self.m) != d or any(len(row) != d for row in self.m):
            raise ValueError(f"matrix is not {d}x{d}")
        if mat_mul(mat_mul(linalg.transpose(self.m), g), self.m) != g:
            raise ValueError("matrix does not preserve the Gram form")

    def __mul__(self, other: "GroupMatrix") -> "GroupMatrix":
        if (self.kind, self.ambient) != (other.kind, other.ambient):
            raise ValueError("ambient mismatch")
        return GroupMatrix(self.kind, self.ambient, mat_mul(self.m, other.m))

    def inverse(self) -> "GroupMatrix":
        return GroupMatrix(self.kind, self.ambient, linalg.int_inverse(self.m))

    def is_identity(self) -> bool:
        return self.m == identity(len(self.m))

    def fixes_radical(self) -> bool:
        """Whether a and b are fixed (columns n and n+1 are standard basis vectors)."""
        n = finite_type_data(self.kind).n
        d = len(self.m)
        for col in (n, n + 1):
            if col >= d:
                continue
            if any(self.m[i][col] != (1 if i == col else 0) for i in range(d)):
                return False
        return True


def identity_matrix(kind: FiniteType, ambient: Ambient) -> GroupMatrix:
    return GroupMatrix(kind, ambient, identity(ambient.dim(kind)))


def _embed(kind: FiniteType, ambient: Ambient, beta: Vec, k: int = 0, l: int = 0,
           bp: int = 0, ap: int = 0) -> Vec:
    n = finite_type_data(kind).n
    full = tuple(beta) + (k, l, bp, ap)
    return full[: ambient.dim(kind)]


def root_coords(kind: FiniteType, gamma: RootVector, ambient: Ambient) -> Vec:
    return _embed(kind, ambient, gamma.beta, gamma.k, gamma.l)


# ---------------------------------------------------------------------------
# Eichler-Siegel map


@dataclass(frozen=True)
class TensorWord:
    """A formal sum of simple tensors f_i (x) g_i acting through the Eichler map.

    The second slots are taken modulo U = R*a; on Vtilde the a coordinate of a
    g vector never pairs with anything, so words are stored verbatim.
    """

    kind: FiniteType
    terms: tuple[tuple[Vec, Vec], ...]

    def compose(self, other: "TensorWord") -> "TensorWord":
        """Semigroup law phi . psi = phi + psi - (phi | psi)."""
        if self.kind != other.kind:
            raise ValueError("kind mismatch")
        g = gram_matrix(self.kind, Ambient.VTILDE)
        cross = []
        for f1, g1 in self.terms:
            for f2, g2 in other.terms:
                c = sum(x * y for x, y in zip(mat_vec(g, g1), f2))
                if c:
                    cross.append((vec_scale(-c, f1), g2))
        return TensorWord(self.kind, self.terms + other.terms + tuple(cross))


def _eichler_matrix(kind: FiniteType, ambient: Ambient,
                    terms: tuple[tuple[Vec, Vec], ...]) -> Mat:
    g = gram_matrix(kind, ambient)
    d = len(g)
    m = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for f, gv in terms:
        gg = mat_vec(g, gv)  # row functional v -> (gv | v)
        for i in range(d):
            fi = f[i]
            if fi:
                for j in range(d):
                    m[i][j] -= fi * gg[j]
    return tuple(tuple(row) for row in m)


def eichler(word: TensorWord) -> GroupMatrix:
    """The endomorphism v -> v - sum (g_i | v) f_i of Vtilde.

    Raises if the result is not an isometry, which flags an invalid word.
    """
    n = finite_type_data(word.kind).n
    d = Ambient.VTILDE.dim(word.kind)
    terms = tuple((t[0] + (0,) * (d - len(t[0])), t[1] + (0,) * (d - len(t[1])))
                  for t in word.terms)
    m = _eichler_matrix(word.kind, Ambient.VTILDE, terms)
    return GroupMatrix(word.kind, Ambient.VTILDE, m)


def _transvection_word(kind: FiniteType, ambient: Ambient, x: str, lam_full: Vec,
                       norm_half: int) -> tuple[tuple[Vec, Vec], ...]:
    # TR_x(lambda) = E(x (x) lambda - lambda (x) x + ((lambda|lambda)/2) x (x) x);
    # the last two terms only act once (x | -) is nonzero, i.e. on b' and a'.
    xvec = _embed(kind, ambient, (0,) * finite_type_data(kind).n,
                  k=1 if x == "a" else 0, l=1 if x == "b" else 0)
    neg_lam = tuple(-c for c in lam_full)
    return ((xvec, lam_full), (neg_lam, xvec), (vec_scale(norm_half, xvec), xvec))


def transvection(kind: FiniteType, x: str, lam: Vec,
                 ambient: Ambient = Ambient.VTILDE) -> GroupMatrix:
    """TR_x(lambda): v -> v - (v | lambda) x on V, additive in lambda.

    For x = 'b' lambda lies in the finite root lattice (n coordinates); for
    x = 'a' in the affine lattice L(Phi_b) (n fin coordinates plus one for b).
    """
    data = finite_type_data(kind)
    n = data.n
    if x == "b":
        if len(lam) != n:
            raise ValueError(f"TR_b wants {n} coordinates, got {len(lam)}")
        fin = tuple(lam)
        lam_full = _embed(kind, ambient, fin)
    elif x == "a":
        if len(lam) != n + 1:
            raise ValueError(f"TR_a wants {n + 1} coordinates, got {len(lam)}")
        fin = tuple(lam[:n])
        lam_full = _embed(kind, ambient, fin, l=lam[n])
    else:
        raise ValueError("x must be 'a' or 'b'")
    norm = data.pairing(fin, fin)
    terms = _transvection_word(kind, ambient, x, lam_full, norm // 2)
    return GroupMatrix(kind, ambient, _eichler_matrix(kind, ambient, terms))


# ---------------------------------------------------------------------------
# Reflections


@functools.lru_cache(maxsize=65536)
def finite_reflection(kind: FiniteType, beta: Vec) -> Mat:
    """Matrix of s_beta on the finite coordinates."""
    data = finite_type_data(kind)
    n = data.n
    cb = mat_vec(data.cartan, beta)
    return tuple(
        tuple((1 if i == j else 0) - beta[i] * cb[j] for j in range(n))
        for i in range(n)
    )


def reflection_matrix(kind: FiniteType, gamma: RootVector,
                      ambient: Ambient = Ambient.V) -> GroupMatrix:
    """The reflection v -> v - (gamma | v) gamma as an integral involution."""
    require_root(kind, gamma)
    g = gram_matrix(kind, ambient)
    d = len(g)
    gv = root_coords(kind, gamma, ambient)
    gg = mat_vec(g, gv)
    m = tuple(
        tuple((1 if i == j else 0) - gv[i] * gg[j] for j in range(d))
        for i in range(d)
    )
    return GroupMatrix(kind, ambient, m)


# ---------------------------------------------------------------------------
# The normal form (w_fin, lambda, mu)


@functools.lru_cache(maxsize=None)
def _cartan_inverse(kind: FiniteType):
    return linalg.frac_inverse(finite_type_data(kind).cartan)


@functools.lru_cache(maxsize=65536)
def _finite_inverse(kind: FiniteType, w: Mat) -> Mat:
    # isometries of the finite form satisfy w^-1 = C^-1 w^T C, which stays integral
    data = finite_type_data(kind)
    cinv = _cartan_inverse(kind)
    wt_c = mat_mul(linalg.transpose(w), data.cartan)
    out = []
    for row in cinv:
        entries = []
        for j in range(data.n):
            val = sum(x * wt_c[i][j] for i, x in enumerate(row))
            if val.denominator != 1:
                raise ValueError("matrix does not normalize the root lattice")
            entries.append(int(val))
        out.append(tuple(entries))
    return tuple(out)


@dataclass(frozen=True)
class Triple:
    """Normal form of an element of Wtilde: finite part, b part, a part."""

    kind: FiniteType
    w: Mat
    lam: Vec
    mu: Vec

    def __post_init__(self) -> None:
        n = finite_type_data(self.kind).n
        if len(self.w) != n or len(self.lam) != n or len(self.mu) != n + 1:
            raise ValueError("triple has wrong dimensions")

    def __mul__(self, other: "Triple") -> "Triple":
        return triple_mul(self, other)

    def inverse(self) -> "Triple":
        data = finite_type_data(self.kind)
        n = data.n
        winv = _finite_inverse(self.kind, self.w)
        lam = vec_scale(-1, mat_vec(self.w, self.lam))
        mu_fin = vec_scale(-1, mat_vec(self.w, self.mu[:n]))
        mu_b = -self.mu[n] + data.pairing(self.mu[:n], self.lam)
        return Triple(self.kind, winv, lam, mu_fin + (mu_b,))

    def is_identity(self) -> bool:
        n = len(self.w)
        return (self.w == identity(n) and not any(self.lam) and not any(self.mu))

    def pow(self, e: int) -> "Triple":
        if e < 0:
            return self.inverse().pow(-e)
        out = identity_triple(self.kind)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "w_fin": [list(r) for r in self.w],
            "lambda": list(self.lam),
            "mu": list(self.mu),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Triple":
        return cls(
            FiniteType.parse(obj["kind"]),
            tuple(tuple(r) for r in obj["w_fin"]),
            tuple(obj["lambda"]),
            tuple(obj["mu"]),
        )


def identity_triple(kind: FiniteType) -> Triple:
    n = finite_type_data(kind).n
    return Triple(kind, identity(n), (0,) * n, (0,) * (n + 1))


def triple_mul(x: Triple, y: Triple) -> Triple:
    """(w1 w2, w2^-1(lambda1) + lambda2, t_b(lambda2)^-1 w2^-1(mu1) + mu2)."""
    if x.kind != y.kind:
        raise ValueError("kind mismatch")
    data = finite_type_data(x.kind)
    n = data.n
    w2inv = _finite_inverse(x.kind, y.w)
    w = mat_mul(x.w, y.w)
    lam = vec_add(mat_vec(w2inv, x.lam), y.lam)
    v = mat_vec(w2inv, x.mu[:n])
    mu_fin = vec_add(v, y.mu[:n])
    mu_b = x.mu[n] + data.pairing(v, y.lam) + y.mu[n]
    return Triple(x.kind, w, lam, mu_fin + (mu_b,))


@functools.lru_cache(maxsize=65536)
def reflection_triple(kind: FiniteType, gamma: RootVector) -> Triple:
    """The reflection for root alpha + l*b + k*a as the triple (s_alpha, l alpha, k alpha + k l b).

    The formula is invariant under gamma -> -gamma, so canonical storage is harmless.
    """
    require_root(kind, gamma)
    beta, k, l = gamma.beta, gamma.k, gamma.l
    return Triple(
        kind,
        finite_reflection(kind, beta),
        vec_scale(l, beta),
        vec_scale(k, beta) + (k * l,),
    )


def central_z(kind: FiniteType) -> Triple:
    """The central element z = E(a (x) b), in triple form (id, 0, b)."""
    n = finite_type_data(kind).n
    return Triple(kind, identity(n), (0,) * n, (0,) * n + (1,))


@functools.lru_cache(maxsize=65536)
def triple_to_matrix(x: Triple, ambient: Ambient = Ambient.VTILDE) -> GroupMatrix:
    """Realize a triple as e(w) . TR_b(lambda) . TR_a(mu) on Vtilde or Vhat."""
    if ambient is Ambient.V:
        raise ValueError("triples live in the cover; project with projection_phi instead")
    n = finite_type_data(x.kind).n
    d = ambient.dim(x.kind)
    e_w = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            if i < n and j < n:
                e_w[i][j] = x.w[i][j]
            elif i == j:
                e_w[i][j] = 1
    trb = transvection(x.kind, "b", x.lam, ambient)
    tra = transvection(x.kind, "a", x.mu, ambient)
    m = mat_mul(mat_mul(tuple(tuple(r) for r in e_w), trb.m), tra.m)
    return GroupMatrix(x.kind, ambient, m)


def _integral(vec) -> Vec:
    out = []
    for v in vec:
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise NotInGroupError("extracted coordinates are not integral")
            out.append(int(v))
        else:
            out.append(int(v))
    return tuple(out)


def finite_weyl_word(kind: FiniteType, w: Mat) -> list[int]:
    """Express w in W_fin as a word in simple reflections, or raise.

    Sorts w(rho) back into the dominant chamber; isometries of the root
    lattice outside W_fin (diagram automorphisms) survive the sort as a
    nontrivial stabilizer element and are rejected.
    """
    data = finite_type_data(kind)
    n = data.n
    cinv = _cartan_inverse(kind)
    rho = tuple(sum(row) for row in cinv)  # (rho | alpha_i) = 1 for all i
    u = tuple(sum(w[i][j] * rho[j] for j in range(n)) for i in range(n))
    word: list[int] = []
    for _ in range(1000):  # longest element of E8 has length 120
        i = next(
            (i for i in range(n)
             if sum(data.cartan[i][j] * u[j] for j in range(n)) < 0),
            None,
        )
        if i is None:
            break
        c = sum(data.cartan[i][j] * u[j] for j in range(n))
        u = tuple(u[j] - (c if j == i else 0) for j in range(n))
        word.append(i + 1)
    else:
        raise NotInGroupError("dominance sort did not terminate")
    # u = s_{i_k} ... s_{i_1} w(rho) is dominant; w is in W_fin exactly when
    # s_{i_k} ... s_{i_1} w is the identity, and then w = s_{i_1} ... s_{i_k}.
    check = w
    for i in word:
        check = mat_mul(finite_reflection(kind, simple_beta(kind, i)), check)
    if check != identity(n):
        raise NotInGroupError("matrix is not in the finite Weyl group")
    return word


def simple_beta(kind: FiniteType, i: int) -> Vec:
    n = finite_type_data(kind).n
    return tuple(1 if j == i - 1 else 0 for j in range(n))


def matrix_to_triple(m: GroupMatrix) -> Triple:
    """Extract the normal form from a Vtilde matrix, rejecting strangers.

    The extraction reads w from the finite block, lambda from the b row of
    the finite columns, mu from the a row and the b' column; the round trip
    against triple_to_matrix is verified before returning.
    """
    if m.ambient is not Ambient.VTILDE:
        raise NotInGroupError("normal forms are extracted from Vtilde matrices")
    data = finite_type_data(m.kind)
    n = data.n
    if not m.fixes_radical():
        raise NotInGroupError("matrix does not restrict to the identity on the radical")
    w = tuple(tuple(m.m[i][j] for j in range(n)) for i in range(n))
    finite_weyl_word(m.kind, w)
    cinv = _cartan_inverse(m.kind)
    pair_lam = tuple(-m.m[n + 1][j] for j in range(n))
    pair_mu = tuple(-m.m[n][j] for j in range(n))
    lam = _integral(mat_vec(cinv, pair_lam))
    mu_fin = _integral(mat_vec(cinv, pair_mu))
    mu_b = -m.m[n][n + 2]
    triple = Triple(m.kind, w, lam, mu_fin + (mu_b,))
    if triple_to_matrix(triple, Ambient.VTILDE).m != m.m:
        raise NotInGroupError("matrix is not in the normal-form image of Wtilde")
    return triple


def projection_phi(x) -> GroupMatrix:
    """Restriction to V; the epimorphism Wtilde -> W with kernel <z>."""
    if isinstance(x, Triple):
        x = triple_to_matrix(x, Ambient.VTILDE)
    if x.ambient is Ambient.V:
        return x
    d = Ambient.V.dim(x.kind)
    block = tuple(tuple(x.m[i][j] for j in range(d)) for i in range(d))
    return GroupMatrix(x.kind, Ambient.V, block)


# ---------------------------------------------------------------------------
# Coxeter transformations


def coxeter_roots(kind: FiniteType) -> tuple[RootVector, ...]:
    """Basis roots in Coxeter order: alpha_1 .. (t omitted) .. alpha_n, alpha_0, alpha_t, alpha_t*."""
    data = finite_type_data(kind)
    basis = elliptic_basis(kind)
    order = [i for i in range(data.n) if i != data.t - 1] + [data.n, data.t - 1, data.n + 1]
    return tuple(basis.alpha[i] for i in order)


def coxeter_transformation(kind: FiniteType, which: str = "Wtilde"):
    """The product of the n+2 simple reflections in the standard order.

    `which` selects the realization: "W" (matrix on V), "Wtilde" (triple) or
    "What" (matrix on Vhat).
    """
    roots = coxeter_roots(kind)
    if which == "Wtilde":
        out = identity_triple(kind)
        for gamma in roots:
            out = out * reflection_triple(kind, gamma)
        return out
    if which == "W":
        ambient = Ambient.V
    elif which == "What":
        ambient = Ambient.VHAT
    else:
        raise ValueError(f"unknown realization {which!r}")
    out_m = identity_matrix(kind, ambient)
    for gamma in roots:
        out_m = out_m * reflection_matrix(kind, gamma, ambient)
    return out_m


def order_in_w(m: GroupMatrix, cap: int = 1000):
    """Least e <= cap with m^e = 1, or None if the cap is exceeded."""
    if cap < 1:
        raise ValueError("cap must be positive")
    d = len(m.m)
    ident = identity(d)
    power = m.m
    for e in range(1, cap + 1):
        if power == ident:
            return e
        power = mat_mul(power, m.m)
    return None


# ---------------------------------------------------------------------------
# Serialization helpers


def triple_dumps(x: Triple) -> str:
    return json.dumps(x.to_json(), sort_keys=True, separators=(",", ":"))


def triple_loads(s: str) -> Triple:
    return Triple.from_json(json.loads(s))
