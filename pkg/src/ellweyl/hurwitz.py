"""Braid-group action on reflection tuples and bounded orbit exploration.

A reflection tuple is an ordered list of roots; the braid generator sigma_i
replaces (g_i, g_{i+1}) by (g_{i+1}, g_{i+1}^{-1} g_i g_{i+1}) and its inverse
by (g_i g_{i+1} g_i^{-1}, g_i).  On roots this is conjugation followed by the
canonical sign flip, and the product of the tuple is invariant.

Braid words are lists of (index, +-1) moves applied first element first.  A
product of sigmas written multiplicatively composes like functions, so the
rightmost factor acts first; words transcribed from such expressions are
stored in application order.

Orbits of reduced factorizations of the Coxeter transformation are infinite,
so exploration prunes on the radical coefficients: a generated state survives
only if every entry has |k| and |l| within the bound or is one of the n+2
basis roots (the basis itself is never pruned away).  Pruned expansions are
counted, which makes censuses reproducible and monotone in the bound.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field

from .group import Triple, identity_triple, reflection_triple
from .linalg import Vec
from .rootsys import (
    FiniteType,
    RootVector,
    elliptic_basis,
    finite_roots,
    finite_type_data,
    is_root,
)

# internal state representation: a tuple of keys (beta, k, l) with beta a tuple
Key = tuple[Vec, int, int]
State = tuple[Key, ...]

BraidMove = tuple[int, int]
BraidWord = tuple[BraidMove, ...]


class ProductMismatchError(ValueError):
    """Two tuples do not multiply to the same group element."""


class ShapeError(ValueError):
    """A tuple does not have the requested normalized shape."""


@functools.lru_cache(maxsize=None)
def _pair_table(kind: FiniteType) -> dict[tuple[Vec, Vec], int]:
    """Pairings of all canonical finite roots, for the conjugation hot loop."""
    data = finite_type_data(kind)
    canon = sorted({b for b in finite_roots(kind) if next(x for x in b if x) > 0})
    table = {}
    for b1 in canon:
        for b2 in canon:
            table[(b1, b2)] = data.pairing(b1, b2)
    return table


def _conjugate_key(table, delta: Key, gamma: Key) -> Key:
    """s_delta applied to gamma, re-canonicalized; equals delta^-1 gamma delta on reflections."""
    p = table[(delta[0], gamma[0])]
    if p == 0:
        return gamma
    beta = tuple(x - p * y for x, y in zip(gamma[0], delta[0]))
    k = gamma[1] - p * delta[1]
    l = gamma[2] - p * delta[2]
    for x in beta:
        if x > 0:
            return (beta, k, l)
        if x < 0:
            return (tuple(-v for v in beta), -k, -l)
    raise AssertionError("conjugation left the root system")


def _move(table, state: State, i: int, direction: int) -> State:
    """Apply sigma_i^direction (1-based i) to a raw state."""
    j = i - 1
    a, b = state[j], state[j + 1]
    if direction == 1:
        pair = (b, _conjugate_key(table, b, a))
    else:
        pair = (_conjugate_key(table, a, b), a)
    return state[:j] + pair + state[j + 2:]


def _key(rv: RootVector) -> Key:
    return (rv.beta, rv.k, rv.l)


def _unkey(key: Key) -> RootVector:
    return RootVector(beta=key[0], k=key[1], l=key[2])


@dataclass(frozen=True)
class ReflTuple:
    """An ordered tuple of roots-as-reflections with canonical-sign entries."""

    kind: FiniteType
    entries: tuple[RootVector, ...]

    def __post_init__(self) -> None:
        for rv in self.entries:
            if not is_root(self.kind, rv):
                raise ValueError(f"{rv} is not a root of type {self.kind.value}")

    @property
    def product(self) -> Triple:
        return _tuple_product(self)

    def state(self) -> State:
        return tuple(_key(rv) for rv in self.entries)

    @classmethod
    def from_state(cls, kind: FiniteType, state: State) -> "ReflTuple":
        return cls(kind, tuple(_unkey(k) for k in state))

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "entries": [rv.to_json() for rv in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "ReflTuple":
        kind = FiniteType.parse(obj["kind"])
        return cls(kind, tuple(RootVector.from_json(e) for e in obj["entries"]))


@functools.lru_cache(maxsize=65536)
def _tuple_product(t: ReflTuple) -> Triple:
    out = identity_triple(t.kind)
    for rv in t.entries:
        out = out * reflection_triple(t.kind, rv)
    return out


def sigma_entries(kind: FiniteType, entries: tuple[RootVector, ...], i: int,
                  direction: int = 1) -> tuple[RootVector, ...]:
    """The sigma_i move on a bare entry tuple (1 <= i <= len-1)."""
    if not 1 <= i <= len(entries) - 1:
        raise IndexError(f"braid index {i} out of range for a tuple of length {len(entries)}")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    table = _pair_table(kind)
    state = tuple(_key(rv) for rv in entries)
    return tuple(_unkey(k) for k in _move(table, state, i, direction))


def sigma(i: int, t: ReflTuple, direction: int = 1) -> ReflTuple:
    """Apply the braid generator sigma_i (or its inverse) to a tuple."""
    return ReflTuple(t.kind, sigma_entries(t.kind, t.entries, i, direction))


def apply_braid(word, t: ReflTuple) -> ReflTuple:
    """Apply a braid word move by move, first entry first."""
    out = t
    for i, direction in word:
        out = sigma(i, out, direction)
    return out


def braid_word_inverse(word) -> BraidWord:
    return tuple((i, -d) for i, d in reversed(tuple(word)))


def braid_word_to_json(word) -> list[int]:
    return [i * d for i, d in word]


def braid_word_from_json(arr) -> BraidWord:
    word = []
    for x in arr:
        if x == 0:
            raise ValueError("0 is not a braid letter")
        word.append((abs(x), 1 if x > 0 else -1))
    return tuple(word)


def standard_tuple(kind: FiniteType) -> ReflTuple:
    """The defining factorization (s_1, .., t omitted, .., s_n, s_0, s_t, s_t*) of c-tilde."""
    from .group import coxeter_roots

    return ReflTuple(kind, coxeter_roots(kind))


# ---------------------------------------------------------------------------
# Orbit exploration


@dataclass
class OrbitCensus:
    """Bounded breadth-first closure of a seed tuple under all sigma moves."""

    kind: FiniteType
    seed: ReflTuple
    coeff_bound: int
    max_states: int
    states: dict[State, int] = field(repr=False)
    truncations: int = 0
    overflow: bool = False

    @property
    def visited(self) -> int:
        return len(self.states)

    def tuples(self):
        for state in self.states:
            yield ReflTuple.from_state(self.kind, state)

    def summary(self) -> dict:
        return {
            "kind": self.kind.value,
            "bound": self.coeff_bound,
            "states": len(self.states),
            "truncations": self.truncations,
        }

    def to_jsonl(self) -> str:
        lines = []
        for state, depth in sorted(self.states.items(), key=lambda kv: (kv[1], kv[0])):
            entries = [{"beta": list(b), "k": k, "l": l} for b, k, l in state]
            lines.append(json.dumps({"entries": entries, "depth": depth},
                                    sort_keys=True, separators=(",", ":")))
        return "\n".join(lines) + "\n"


def _allowed_fn(kind: FiniteType, coeff_bound: int):
    basis_keys = frozenset(_key(rv) for rv in elliptic_basis(kind).alpha)
    bound = coeff_bound

    def allowed(state: State) -> bool:
        for key in state:
            if (-bound <= key[1] <= bound) and (-bound <= key[2] <= bound):
                continue
            if key not in basis_keys:
                return False
        return True

    return allowed


def _expand_chunk(table, chunk, moves, allowed):
    new: dict[State, None] = {}
    trunc = 0
    for state in chunk:
        for i, direction in moves:
            child = _move(table, state, i, direction)
            if allowed(child):
                new[child] = None
            else:
                trunc += 1
    return new, trunc


def orbit_explore(seed: ReflTuple, coeff_bound: int, max_states: int,
                  threads: int = 1) -> OrbitCensus:
    """Breadth-first closure of the seed under sigma_i^{+-1} with pruning.

    Deterministic for fixed (seed, coeff_bound, max_states): levels are
    admitted in generation order, and a level that would exceed max_states is
    cut at the cap with the overflow flag set.
    """
    if coeff_bound < 0 or max_states <= 0:
        raise ValueError("bounds must be positive")
    kind = seed.kind
    table = _pair_table(kind)
    allowed = _allowed_fn(kind, coeff_bound)
    start = seed.state()
    if not allowed(start):
        raise ValueError("seed violates the coefficient bound")
    m = len(start)
    moves = [(i, d) for i in range(1, m) for d in (1, -1)]
    states: dict[State, int] = {start: 0}
    truncations = 0
    overflow = False
    frontier = [start]
    depth = 0
    pool = None
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        pool = ThreadPoolExecutor(max_workers=threads)
    try:
        while frontier:
            depth += 1
            if pool is not None and len(frontier) >= 4 * threads:
                size = (len(frontier) + threads - 1) // threads
                chunks = [frontier[i:i + size] for i in range(0, len(frontier), size)]
                results = list(pool.map(
                    lambda ch: _expand_chunk(table, ch, moves, allowed), chunks))
            else:
                results = [_expand_chunk(table, frontier, moves, allowed)]
            level: dict[State, None] = {}
            for new, trunc in results:
                truncations += trunc
                level.update(new)
            admitted = []
            room = max_states - len(states)
            for child in level:
                if child in states:
                    continue
                if room <= 0:
                    overflow = True
                    break
                states[child] = depth
                admitted.append(child)
                room -= 1
            frontier = admitted
    finally:
        if pool is not None:
            pool.shutdown()
    return OrbitCensus(kind=kind, seed=seed, coeff_bound=coeff_bound,
                       max_states=max_states, states=states,
                       truncations=truncations, overflow=overflow)


def connect_search(frm: ReflTuple, to: ReflTuple, coeff_bound: int,
                   max_states: int):
    """Bidirectional search for a braid word sending `frm` to `to`.

    Returns the word, or None when the bounded search is exhausted; None is
    inconclusive since the unpruned orbit is infinite.  Tuples with different
    products are rejected outright: no braid can connect them.
    """
    if frm.kind != to.kind or len(frm.entries) != len(to.entries):
        raise ProductMismatchError("tuples live in different spaces")
    if frm.product != to.product:
        raise ProductMismatchError("tuples have different products; no braid connects them")
    kind = frm.kind
    table = _pair_table(kind)
    allowed = _allowed_fn(kind, coeff_bound)
    start, goal = frm.state(), to.state()
    if start == goal:
        return ()
    m = len(start)
    moves = [(i, d) for i in range(1, m) for d in (1, -1)]
    # parents map each state to (previous state, move applied to reach it)
    sides = [
        {"seen": {start: None}, "frontier": [start]},
        {"seen": {goal: None}, "frontier": [goal]},
    ]
    meet = None
    while meet is None and (sides[0]["frontier"] or sides[1]["frontier"]):
        idx = 0 if 0 < len(sides[0]["frontier"]) <= len(sides[1]["frontier"]) or not sides[1]["frontier"] else 1
        side, other = sides[idx], sides[1 - idx]
        new_frontier = []
        for state in side["frontier"]:
            for mv in moves:
                child = _move(table, state, mv[0], mv[1])
                if child in side["seen"] or not allowed(child):
                    continue
                side["seen"][child] = (state, mv)
                new_frontier.append(child)
                if child in other["seen"]:
                    meet = child
                    break
            if meet is not None:
                break
        side["frontier"] = new_frontier
        if len(sides[0]["seen"]) + len(sides[1]["seen"]) > max_states:
            break
    if meet is None:
        return None

    def path_to(side_state, seen) -> list[BraidMove]:
        out = []
        cur = side_state
        while seen[cur] is not None:
            prev, mv = seen[cur]
            out.append(mv)
            cur = prev
        out.reverse()
        return out

    forward = path_to(meet, sides[0]["seen"])          # frm -> meet
    backward = path_to(meet, sides[1]["seen"])         # to  -> meet
    word = tuple(forward) + braid_word_inverse(backward)
    if apply_braid(word, frm).entries != to.entries:
        raise AssertionError("reconstructed braid word failed verification")
    return word


# ---------------------------------------------------------------------------
# The explicit D4 computations


def _d4_roots():
    kind = FiniteType.D4
    data = finite_type_data(kind)
    e = lambda i: tuple(1 if j == i - 1 else 0 for j in range(4))
    atilde = data.marks
    return kind, e, atilde


def d4_tau_word() -> BraidWord:
    """The 16-move braid taking the deep D4 factorization back to the standard one.

    Transcribed from the grouped product (s4 s5)(s3 s4)(s2 s3)(s1 s2)
    (s2 s3 s4 s5)(s1 s2 s3 s4) into application order (rightmost factor first).
    """
    groups = [(1, 2, 3, 4), (2, 3, 4, 5), (1, 2), (2, 3), (3, 4), (4, 5)]
    word = []
    for g in groups:
        word.extend((i, 1) for i in reversed(g))
    return tuple(word)


def d4_tau_seed() -> ReflTuple:
    """The factorization of c-tilde that d4_tau_word sends to the standard tuple."""
    kind, e, atilde = _d4_roots()
    return ReflTuple(kind, (
        RootVector(e(1), -1, 0),
        RootVector(e(3), -1, 0),
        RootVector(e(4), -1, 0),
        RootVector(atilde, 1, -1),
        RootVector(e(2), 0, -1),
        RootVector(e(2), -1, -1),
    ))


def d4_tau_intermediate() -> ReflTuple:
    """The tuple after the first eight moves of d4_tau_word."""
    kind, e, atilde = _d4_roots()
    return ReflTuple(kind, (
        RootVector(e(2), 0, -1),
        RootVector(e(2), -1, -1),
        RootVector(e(1), 0, 0),
        RootVector(e(3), 0, 0),
        RootVector(e(4), 0, 0),
        RootVector(atilde, 0, -1),
    ))


@dataclass(frozen=True)
class TwoOrbitReport:
    witness: ReflTuple
    product: Triple
    expected: Triple
    coxeter: Triple
    equals_expected: bool
    differs_from_coxeter: bool
    phi_is_c: bool


def d4_two_orbit_witness() -> TwoOrbitReport:
    """The six-reflection product showing a second Hurwitz orbit downstairs.

    The witness multiplies to c-tilde * z^-1 in the cover, so it cannot lie in
    the orbit of the standard tuple, yet both project to factorizations of c.
    """
    from .group import finite_reflection, identity_matrix, projection_phi, reflection_matrix
    from .bilinear import Ambient
    from .linalg import mat_mul

    kind, e, atilde = _d4_roots()
    witness = ReflTuple(kind, (
        RootVector(e(1), -1, 0),
        RootVector(e(3), -1, 0),
        RootVector(e(4), -1, 0),
        RootVector(atilde, 1, -1),
        RootVector(e(2), 0, 0),
        RootVector(e(2), -1, 0),
    ))
    product = witness.product
    ctilde = standard_tuple(kind).product
    w_fin = identity_triple(kind).w
    for b in (e(1), e(3), e(4), atilde):
        w_fin = mat_mul(w_fin, finite_reflection(kind, b))
    expected = Triple(kind, w_fin, tuple(-m for m in atilde), e(2) + (-1,))
    phi_prod = identity_matrix(kind, Ambient.V)
    for rv in witness.entries:
        phi_prod = phi_prod * reflection_matrix(kind, rv, Ambient.V)
    return TwoOrbitReport(
        witness=witness,
        product=product,
        expected=expected,
        coxeter=ctilde,
        equals_expected=product == expected,
        differs_from_coxeter=product != ctilde,
        phi_is_c=phi_prod.m == projection_phi(ctilde).m,
    )


# ---------------------------------------------------------------------------
# Shape analysis of normalized factorizations


@dataclass(frozen=True)
class LambdaTReport:
    lambda_t: int
    ell: int
    x: int
    valid: bool


def lambda_t_check(t: ReflTuple) -> LambdaTReport:
    """Radical-coefficient constraint for tuples in the normalized shape.

    The shape is: entries 1..n-1 are alpha_i + k_i a (i != t, ascending),
    entry n is alphatilde - b + k a, and the last two share a positive finite
    root beta and a coefficient l, differing only in their a coefficients.
    The report is valid when (lambda_t, l, k'-k) is (1, 0, 1) or
    (m_t - 1, -1, -1); the product must be the Coxeter transformation.
    """
    kind = t.kind
    data = finite_type_data(kind)
    n = data.n
    if len(t.entries) != n + 2:
        raise ShapeError(f"expected {n + 2} entries")
    expected_idx = [i for i in range(1, n + 1) if i != data.t]
    for pos, i in enumerate(expected_idx):
        rv = t.entries[pos]
        if rv.beta != tuple(1 if j == i - 1 else 0 for j in range(n)) or rv.l != 0:
            raise ShapeError(f"entry {pos + 1} is not of the form alpha_{i} + k a")
    rv = t.entries[n - 1]
    if rv.beta != data.marks or rv.l != -1:
        raise ShapeError("entry n is not of the form alphatilde - b + k a")
    last, last2 = t.entries[n], t.entries[n + 1]
    if last.beta != last2.beta or last.l != last2.l:
        raise ShapeError("final entries do not share a root and b coefficient")
    from .group import coxeter_transformation

    if t.product != coxeter_transformation(kind, "Wtilde"):
        raise ProductMismatchError("shaped tuple does not multiply to the Coxeter transformation")
    lambda_t = last.beta[data.t - 1]
    ell = last.l
    x = last2.k - last.k
    valid = (lambda_t, ell, x) in {(1, 0, 1), (data.m_t - 1, -1, -1)}
    return LambdaTReport(lambda_t=lambda_t, ell=ell, x=x, valid=valid)


def matches_normalized_shape(t: ReflTuple) -> bool:
    try:
        lambda_t_check(t)
        return True
    except (ShapeError, ProductMismatchError):
        return False


# ---------------------------------------------------------------------------
# Conjugation orbit of the special reflection


@dataclass(frozen=True)
class PConjugationReport:
    kind: FiniteType
    orbit: frozenset[RootVector]
    distances: dict
    lambda_t_one: tuple[RootVector, ...]
    lambda_t_one_reached: bool
    flip_roots: tuple[RootVector, ...]          # finite roots with lambda_t = m_t - 1
    flip_neighbor_coeff_ok: bool                # each has coefficient 1 at the
                                                # unique simple root meeting alphatilde


def p_conjugation_orbit(kind: FiniteType, coeff_bound: int = 0) -> PConjugationReport:
    """Close {alpha_t} under conjugation by s_alphatilde and the s_i, i != t.

    All generators are finite reflections, so the orbit stays inside the
    finite system and the coefficient bound is moot for this seed; it is kept
    in the signature for interface parity with the other explorations.
    """
    del coeff_bound
    data = finite_type_data(kind)
    n = data.n
    table = _pair_table(kind)
    gen_betas = [data.marks] + [
        tuple(1 if j == i else 0 for j in range(n)) for i in range(n) if i != data.t - 1
    ]
    gens = [(b, 0, 0) for b in gen_betas]
    seed: Key = (tuple(1 if j == data.t - 1 else 0 for j in range(n)), 0, 0)
    distances: dict[Key, int] = {seed: 0}
    frontier = [seed]
    while frontier:
        nxt = []
        for key in frontier:
            for g in gens:
                child = _conjugate_key(table, g, key)
                if child not in distances:
                    distances[child] = distances[key] + 1
                    nxt.append(child)
        frontier = nxt
    orbit = frozenset(_unkey(k) for k in distances)
    positive = sorted(
        b for b in finite_roots(kind) if next(x for x in b if x) > 0
    )
    lam_one = tuple(RootVector(b, 0, 0) for b in positive if b[data.t - 1] == 1)
    flips = tuple(RootVector(b, 0, 0) for b in positive if b[data.t - 1] == data.m_t - 1)
    neighbor = data.affine_edge  # the unique simple root not orthogonal to alphatilde
    flip_ok = all(rv.beta[neighbor - 1] == 1 for rv in flips)
    return PConjugationReport(
        kind=kind,
        orbit=orbit,
        distances={_unkey(k): d for k, d in distances.items()},
        lambda_t_one=lam_one,
        lambda_t_one_reached=all(rv in orbit for rv in lam_one),
        flip_roots=flips,
        flip_neighbor_coeff_ok=flip_ok,
    )
