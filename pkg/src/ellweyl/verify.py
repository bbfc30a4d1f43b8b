"""Named verification checks covering every explicit computation in scope.

Each check raises AssertionError with a short message on failure; the runner
turns that into per-item pass/fail results.  Sample counts default to the
published figures and are overridable through :class:`VerifyConfig`, whose
seed is recorded so every run is reproducible.

The `sabotage_gram` flag is a negative control: it perturbs one Gram entry
inside the signature check so a deliberate failure is surfaced with the
violated item id.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field, replace

from . import scherk
from .bilinear import Ambient, gram_matrix, signature
from .group import (
    GroupMatrix,
    TensorWord,
    Triple,
    central_z,
    coxeter_transformation,
    eichler,
    identity_matrix,
    identity_triple,
    matrix_to_triple,
    order_in_w,
    projection_phi,
    reflection_matrix,
    reflection_triple,
    transvection,
    triple_to_matrix,
)
from .hurwitz import (
    ReflTuple,
    apply_braid,
    connect_search,
    d4_tau_intermediate,
    d4_tau_seed,
    d4_tau_word,
    d4_two_orbit_witness,
    lambda_t_check,
    matches_normalized_shape,
    orbit_explore,
    p_conjugation_orbit,
    sigma,
    standard_tuple,
)
from .interval import build_poset
from .linalg import mat_mul, vec_add
from .rootsys import (
    FiniteType,
    RootVector,
    elliptic_basis,
    elliptic_diagram,
    finite_roots,
    finite_type_data,
    is_root,
)

EXPECTED_ROOT_COUNTS = {FiniteType.D4: 24, FiniteType.E6: 72, FiniteType.E7: 126, FiniteType.E8: 240}
EXPECTED_T_MT = {FiniteType.D4: (2, 2), FiniteType.E6: (4, 3), FiniteType.E7: (4, 4), FiniteType.E8: (4, 6)}


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    sample_small: int = 1000
    sample_large: int = 10000
    connect_samples: int = 100
    census_bound: int = 2
    census_states: int = 10 ** 6
    connect_bound: int = 1
    connect_states: int = 300000
    threads: int = 1
    sabotage_gram: bool = False


@dataclass
class CheckResult:
    check_id: str
    kind: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} [{self.kind}] {self.check_id} ({self.seconds:.2f}s) {self.detail}"

    def to_json(self) -> dict:
        return {
            "check": self.check_id,
            "kind": self.kind,
            "ok": self.ok,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


def _sorted_roots(kind: FiniteType) -> list:
    return sorted(finite_roots(kind))


def random_root(kind: FiniteType, rng: random.Random, coeff: int = 3) -> RootVector:
    beta = rng.choice(_sorted_roots(kind))
    return RootVector.canonical(beta, rng.randint(-coeff, coeff), rng.randint(-coeff, coeff))


def random_triple(kind: FiniteType, rng: random.Random, n_reflections: int = 6,
                  coeff: int = 2) -> Triple:
    out = identity_triple(kind)
    for _ in range(n_reflections):
        out = out * reflection_triple(kind, random_root(kind, rng, coeff))
    return out


# --- individual checks ------------------------------------------------------


def check_table_data(kind, cfg, rng) -> str:
    data = finite_type_data(kind)
    assert (data.t, data.m_t) == EXPECTED_T_MT[kind], "special node table mismatch"
    assert data.marks[data.t - 1] == data.m_t
    assert sum(1 for m in data.marks if m == data.m_t) == 1, "maximal mark not unique"
    return f"t={data.t} m_t={data.m_t}"


def check_root_counts(kind, cfg, rng) -> str:
    roots = finite_roots(kind)
    assert len(roots) == EXPECTED_ROOT_COUNTS[kind], f"|roots|={len(roots)}"
    data = finite_type_data(kind)
    for beta in roots:
        assert data.pairing(beta, beta) == 2, "root of wrong norm"
        for i in range(1, data.n + 1):
            assert data.simple_reflect(i, beta) in roots, "not reflection-closed"
    tilde = data.marks
    assert tilde in roots
    for i in range(data.n):
        bumped = tuple(m + (1 if j == i else 0) for j, m in enumerate(tilde))
        assert bumped not in roots, "highest root is not highest"
    return f"|roots|={len(roots)}"


def check_gram_signature(kind, cfg, rng) -> str:
    n = finite_type_data(kind).n
    expected = {
        Ambient.V: (n, 0, 2),
        Ambient.VTILDE: (n + 1, 1, 1),
        Ambient.VHAT: (n + 2, 2, 0),
    }
    for ambient, sig in expected.items():
        g = gram_matrix(kind, ambient)
        if cfg.sabotage_gram:
            g = tuple(
                tuple(v + (1 if (i, j) == (0, 1) else 0) for j, v in enumerate(row))
                for i, row in enumerate(g)
            )
        got = signature(g)
        assert got == sig, f"{ambient.value} signature {got} != {sig}"
    return "signatures (n,0,2)/(n+1,1,1)/(n+2,2,0)"


def check_elliptic_diagram(kind, cfg, rng) -> str:
    data = finite_type_data(kind)
    edges = elliptic_diagram(kind)
    t, tstar = str(data.t), f"{data.t}*"
    assert (t, tstar, "double_dotted") in edges or (tstar, t, "double_dotted") in edges
    assert all(u != v for u, v, _ in edges), "self loop"
    neighbors_t_aff = {str(j) for i, j in data.adjacency if i == data.t} | \
                      {str(i) for i, j in data.adjacency if j == data.t}
    if data.affine_edge == data.t:
        neighbors_t_aff.add("0")
    star_single = {u if v == tstar else v for u, v, style in edges
                   if tstar in (u, v) and style == "single"}
    assert star_single == neighbors_t_aff, f"{tstar} neighbors {star_single} != {neighbors_t_aff}"
    verts = {x for u, v, _ in edges for x in (u, v)}
    assert verts == {str(i) for i in range(data.n + 1)} | {tstar}, "diagram not connected to all vertices"
    return f"{len(edges)} edges"


def check_eichler_semigroup(kind, cfg, rng) -> str:
    count = max(1, cfg.sample_small // 10)
    n = finite_type_data(kind).n
    d = Ambient.VTILDE.dim(kind)
    for _ in range(count):
        words = []
        for _ in range(2):
            terms = []
            for _ in range(rng.randint(1, 3)):
                beta = rng.choice(_sorted_roots(kind))
                f = beta + (rng.randint(-1, 1), rng.randint(-1, 1), 0)
                g = rng.choice(_sorted_roots(kind)) + (0, rng.randint(-1, 1), 0)
                terms.append((f[:d], g[:d]))
            words.append(TensorWord(kind, tuple(terms)))
        w1, w2 = words
        lhs = _eichler_endomorphism(kind, w1.compose(w2))
        rhs = mat_mul(_eichler_endomorphism(kind, w1), _eichler_endomorphism(kind, w2))
        assert lhs == rhs, "Eichler map is not multiplicative on a composed word"
    return f"{count} word pairs"


def _eichler_endomorphism(kind, word: TensorWord):
    # raw endomorphism matrix; isometry not required for the semigroup law
    from .group import _eichler_matrix

    d = Ambient.VTILDE.dim(kind)
    terms = tuple((f + (0,) * (d - len(f)), g + (0,) * (d - len(g))) for f, g in word.terms)
    return _eichler_matrix(kind, Ambient.VTILDE, terms)


def check_eichler_reflection(kind, cfg, rng) -> str:
    d = Ambient.VTILDE.dim(kind)
    checked = 0
    for gamma in list(elliptic_basis(kind).alpha) + [random_root(kind, rng) for _ in range(20)]:
        coords = gamma.beta + (gamma.k, gamma.l, 0)
        word = TensorWord(kind, ((coords[:d], coords[:d]),))
        assert eichler(word).m == reflection_matrix(kind, gamma, Ambient.VTILDE).m
        checked += 1
    z = eichler(TensorWord(kind, ((_unit(kind, "a"), _unit(kind, "b")),)))
    assert triple_to_matrix(central_z(kind), Ambient.VTILDE).m == z.m, "z != E(a x b)"
    n = finite_type_data(kind).n
    for j in range(n):
        assert z.m[j][n + 2] == 0
    assert z.m[n][n + 2] == -1, "E(a x b) should send b' to b' - a"
    return f"{checked} reflections plus the central element"


def _unit(kind, which: str):
    n = finite_type_data(kind).n
    d = Ambient.VTILDE.dim(kind)
    idx = {"a": n, "b": n + 1}[which]
    return tuple(1 if i == idx else 0 for i in range(d))


def check_transvections(kind, cfg, rng) -> str:
    data = finite_type_data(kind)
    n = data.n
    count = max(1, cfg.sample_small // 10)
    alpha1 = (1,) + (0,) * (n - 1)
    lhs = transvection(kind, "b", alpha1)
    rhs = reflection_matrix(kind, RootVector(alpha1, 0, 0), Ambient.VTILDE) * \
        reflection_matrix(kind, RootVector(alpha1, 0, 1), Ambient.VTILDE)
    assert lhs.m == rhs.m, "TR_b(alpha_1) != s_alpha1 s_{alpha1+b}"
    assert transvection(kind, "a", (0,) * (n + 1)).is_identity()
    for _ in range(count):
        mu1 = tuple(rng.randint(-3, 3) for _ in range(n + 1))
        mu2 = tuple(rng.randint(-3, 3) for _ in range(n + 1))
        prod = transvection(kind, "a", mu1) * transvection(kind, "a", mu2)
        assert prod.m == transvection(kind, "a", vec_add(mu1, mu2)).m
        l1 = tuple(rng.randint(-3, 3) for _ in range(n))
        l2 = tuple(rng.randint(-3, 3) for _ in range(n))
        prod_b = transvection(kind, "b", l1) * transvection(kind, "b", l2)
        assert prod_b.m == transvection(kind, "b", vec_add(l1, l2)).m
    return f"additivity on {count} pairs"


def check_coxeter_triple(kind, cfg, rng) -> str:
    data = finite_type_data(kind)
    c = coxeter_transformation(kind, "Wtilde")
    w_expected = identity_triple(kind).w
    from .group import finite_reflection, simple_beta

    for i in range(1, data.n + 1):
        if i != data.t:
            w_expected = mat_mul(w_expected, finite_reflection(kind, simple_beta(kind, i)))
    w_expected = mat_mul(w_expected, finite_reflection(kind, data.marks))
    expected = Triple(kind, w_expected,
                      tuple(-m for m in data.marks),
                      tuple(1 if j == data.t - 1 else 0 for j in range(data.n)) + (0,))
    assert c == expected, "Coxeter triple differs from the displayed normal form"
    prod = identity_matrix(kind, Ambient.VTILDE)
    from .group import coxeter_roots

    for gamma in coxeter_roots(kind):
        prod = prod * reflection_matrix(kind, gamma, Ambient.VTILDE)
    assert triple_to_matrix(c, Ambient.VTILDE).m == prod.m
    assert matrix_to_triple(prod) == c
    return "triple (w, -alphatilde, alpha_t) and matrix product agree"


def check_center(kind, cfg, rng) -> str:
    c = coxeter_transformation(kind, "Wtilde")
    z = central_z(kind)
    m = order_in_w(projection_phi(c), cap=1000)
    assert m is not None, "order of c in W exceeded the cap"
    assert c.pow(m) == z, "c^m != z"
    assert projection_phi(z).is_identity()
    for k in range(1, 101):
        assert not z.pow(k).is_identity(), f"z^{k} = 1"
    for _ in range(cfg.sample_small):
        x = random_triple(kind, rng, n_reflections=4)
        assert x * z == z * x, "z is not central"
    assert c * z == z * c
    return f"m={m}, central against {cfg.sample_small} elements"


def check_normal_form(kind, cfg, rng) -> str:
    count = cfg.sample_large
    for _ in range(count):
        x = random_triple(kind, rng, n_reflections=rng.randint(1, 5), coeff=2)
        y = random_triple(kind, rng, n_reflections=rng.randint(1, 5), coeff=2)
        lhs = triple_to_matrix(x * y, Ambient.VTILDE)
        rhs = triple_to_matrix(x, Ambient.VTILDE) * triple_to_matrix(y, Ambient.VTILDE)
        assert lhs.m == rhs.m, "triple_mul disagrees with matrix multiplication"
        assert matrix_to_triple(rhs) == x * y, "round trip failed"
    # associativity on a smaller sample
    for _ in range(cfg.sample_small):
        x, y, w = (random_triple(kind, rng, 3) for _ in range(3))
        assert (x * y) * w == x * (y * w)
    return f"{count} pairs multiplied and round-tripped"


def check_semidirect(kind, cfg, rng) -> str:
    n = finite_type_data(kind).n
    z = triple_to_matrix(central_z(kind), Ambient.VTILDE)
    count = max(1, cfg.sample_small)
    from .group import _finite_inverse

    for _ in range(count):
        w = random_triple(kind, rng, n_reflections=3, coeff=0)
        assert not any(w.lam) and not any(w.mu), "coeff-0 triple is not finite"
        e_w = triple_to_matrix(w, Ambient.VTILDE)
        mu = tuple(rng.randint(-2, 2) for _ in range(n + 1))
        lam = tuple(rng.randint(-2, 2) for _ in range(n))
        tra = transvection(kind, "a", mu)
        trb = transvection(kind, "b", lam)
        winv = _finite_inverse(kind, w.w)
        mu_w = tuple(sum(winv[i][j] * mu[j] for j in range(n)) for i in range(n)) + (mu[n],)
        assert (e_w.inverse() * tra * e_w).m == transvection(kind, "a", mu_w).m
        data = finite_type_data(kind)
        shift = data.pairing(mu[:n], lam)
        mu_b = mu[:n] + (mu[n] + shift,)
        assert (trb.inverse() * tra * trb).m == transvection(kind, "a", mu_b).m
        comm = tra * trb * tra.inverse() * trb.inverse()
        expected = triple_to_matrix(central_z(kind).pow(-shift), Ambient.VTILDE)
        assert comm.m == expected.m, "commutator is not the predicted power of z"
    del z
    return f"{count} semidirect and Heisenberg identities"


def check_reflection_bijection(kind, cfg, rng) -> str:
    seen = {}
    count = max(1, cfg.sample_small)
    for _ in range(count):
        gamma = random_root(kind, rng)
        t = reflection_triple(kind, gamma)
        if gamma in seen:
            assert seen[gamma] == t
        else:
            for other, triple in seen.items():
                assert triple != t or other == gamma, "reflection triple collision"
            seen[gamma] = t
    z = central_z(kind)
    gamma = random_root(kind, rng)
    t = reflection_triple(kind, gamma)
    for j in (-2, -1, 1, 2):
        shifted = t * z.pow(j)
        assert not _is_reflection_triple(kind, shifted), "z-shift of a reflection is a reflection"
    # conjugation compatibility upstairs and downstairs
    for _ in range(max(1, cfg.sample_small // 2)):
        g1, g2 = random_root(kind, rng), random_root(kind, rng)
        t1, t2 = reflection_triple(kind, g1), reflection_triple(kind, g2)
        up = t2.inverse() * t1 * t2
        down_m = projection_phi(t2).inverse() * projection_phi(t1) * projection_phi(t2)
        assert projection_phi(up).m == down_m.m
    return f"injective on {len(seen)} sampled roots"


def _is_reflection_triple(kind, t: Triple) -> bool:
    data = finite_type_data(kind)
    n = data.n
    for beta in finite_roots(kind):
        from .group import finite_reflection

        if finite_reflection(kind, beta) != t.w:
            continue
        # t = (s_beta, l beta, k beta + k l b) for some integers k, l
        lam, mu = t.lam, t.mu
        nz = next((i for i in range(n) if beta[i]), None)
        if lam[nz] % beta[nz]:
            continue
        l = lam[nz] // beta[nz]
        k = mu[nz] // beta[nz] if mu[nz] % beta[nz] == 0 else None
        if k is None:
            continue
        if lam == tuple(l * x for x in beta) and mu == tuple(k * x for x in beta) + (k * l,):
            return True
    return False


def check_scherk(kind, cfg, rng) -> str:
    n = finite_type_data(kind).n
    c_hat = coxeter_transformation(kind, "What")
    cert = scherk.scherk_length(c_hat)
    assert cert.length == n + 2, f"scherk(c-hat) = {cert.length}"
    assert not cert.is_null and cert.dim_fperp == n + 2
    z_triple = central_z(kind)
    for j in range(-3, 4):
        m = c_hat * triple_to_matrix(z_triple.pow(j), Ambient.VHAT)
        assert scherk.scherk_length(m).length == n + 2, f"scherk(c z^{j}) wrong"
    for _ in range(25):
        gamma = random_root(kind, rng)
        assert scherk.scherk_length(reflection_matrix(kind, gamma, Ambient.VHAT)).length == 1
    # conjugation invariance and the fixed-space dimension identity
    for _ in range(10):
        x = random_triple(kind, rng, 4)
        g = random_triple(kind, rng, 3)
        mx = triple_to_matrix(x, Ambient.VHAT)
        mg = triple_to_matrix(g, Ambient.VHAT)
        conj = mg * mx * mg.inverse()
        assert scherk.scherk_length(conj).length == scherk.scherk_length(mx).length
        from .bilinear import fixed_space, orth_complement

        f = fixed_space(mx)
        assert f.dim + orth_complement(f).dim == n + 4
    assert scherk.scherk_length(identity_matrix(kind, Ambient.VHAT)).length == 0
    return f"lengths {n + 2} for c-hat and all ẑ-shifts"


def check_orth_independent_roots(kind, cfg, rng) -> str:
    data = finite_type_data(kind)
    n = data.n
    count = max(1, cfg.sample_small // 20)
    for _ in range(count):
        size = rng.randint(1, n + 2)
        roots = []
        coords = []
        attempts = 0
        while len(roots) < size and attempts < 200:
            attempts += 1
            gamma = random_root(kind, rng, coeff=1)
            cand = coords + [gamma.beta + (gamma.k, gamma.l, 0, 0)]
            from .linalg import rref

            red, pivots = rref(cand)
            if len(pivots) == len(cand):
                roots.append(gamma)
                coords = cand
        d = Ambient.VHAT.dim(kind)
        u = tuple(rng.randint(-3, 3) for _ in range(d))
        prod = identity_matrix(kind, Ambient.VHAT)
        for gamma in roots:
            prod = prod * reflection_matrix(kind, gamma, Ambient.VHAT)
        from .linalg import mat_vec

        fixed_by_all = all(
            mat_vec(reflection_matrix(kind, g, Ambient.VHAT).m, u) == u for g in roots
        )
        assert (mat_vec(prod.m, u) == u) == fixed_by_all, "independent-roots fixed-vector identity"
    return f"{count} independent families"


def check_hurwitz_invariants(kind, cfg, rng) -> str:
    std = standard_tuple(kind)
    m = len(std.entries)
    tuples = [std]
    for _ in range(20):
        t = tuples[-1]
        for _ in range(6):
            t = sigma(rng.randint(1, m - 1), t, rng.choice((1, -1)))
        tuples.append(t)
    product = std.product
    words = cfg.sample_large
    checked = 0
    t = std
    for _ in range(words):
        i = rng.randint(1, m - 1)
        d = rng.choice((1, -1))
        t = sigma(i, t, d)
        checked += 1
    assert t.product == product, "product drifted under a long random word"
    for t0 in tuples:
        for i in range(1, m):
            assert sigma(i, sigma(i, t0, 1), -1).entries == t0.entries
            assert sigma(i, sigma(i, t0, -1), 1).entries == t0.entries
        for i in range(1, m - 1):
            lhs = sigma(i, sigma(i + 1, sigma(i, t0)))
            rhs = sigma(i + 1, sigma(i, sigma(i + 1, t0)))
            assert lhs.entries == rhs.entries, "braid relation failed"
        for i in range(1, m - 1):
            for j in range(i + 2, m):
                assert sigma(i, sigma(j, t0)).entries == sigma(j, sigma(i, t0)).entries
        for rv in t0.entries:
            assert is_root(kind, rv)
        assert t0.product == product
    # phi-equivariance: act on V matrices downstairs and compare
    for t0 in tuples[:5]:
        word = [(rng.randint(1, m - 1), rng.choice((1, -1))) for _ in range(6)]
        up = apply_braid(word, t0)
        down = [reflection_matrix(kind, rv, Ambient.V) for rv in t0.entries]
        for i, d in word:
            a, b = down[i - 1], down[i]
            if d == 1:
                down[i - 1], down[i] = b, b.inverse() * a * b
            else:
                down[i - 1], down[i] = a * b * a.inverse(), a
        expected = [reflection_matrix(kind, rv, Ambient.V) for rv in up.entries]
        assert [x.m for x in down] == [x.m for x in expected], "phi-equivariance failed"
    return f"{checked} random moves plus relations on {len(tuples)} states"


def check_tau_braid(kind, cfg, rng) -> str:
    assert kind is FiniteType.D4
    seed = d4_tau_seed()
    word = d4_tau_word()
    mid = apply_braid(word[:8], seed)
    assert mid.entries == d4_tau_intermediate().entries, "intermediate line mismatch"
    final = apply_braid(word, seed)
    assert final.entries == standard_tuple(kind).entries, "final line mismatch"
    assert seed.product == standard_tuple(kind).product
    return "16-move braid reproduces both displayed lines"


def check_two_orbit(kind, cfg, rng) -> str:
    assert kind is FiniteType.D4
    rep = d4_two_orbit_witness()
    assert rep.equals_expected, "witness product differs from the displayed triple"
    assert rep.differs_from_coxeter, "witness product equals the Coxeter transformation"
    assert rep.phi_is_c, "witness does not project to a factorization of c"
    assert rep.product == rep.coxeter * central_z(kind).pow(-1)
    return "witness product is c-tilde z^-1"


def check_lambda_t_census(kind, cfg, rng) -> str:
    assert kind is FiniteType.D4
    std = standard_tuple(kind)
    census = orbit_explore(std, cfg.census_bound, cfg.census_states, threads=cfg.threads)
    shaped = 0
    outcomes = set()
    for state in census.states:
        t = ReflTuple.from_state(kind, state)
        if not matches_normalized_shape(t):
            continue
        rep = lambda_t_check(t)
        shaped += 1
        outcomes.add((rep.lambda_t, rep.ell, rep.x))
        assert rep.valid, f"invalid outcome {rep}"
    data = finite_type_data(kind)
    assert outcomes <= {(1, 0, 1), (data.m_t - 1, -1, -1)}
    assert d4_tau_seed().state() in census.states or census.overflow, \
        "deep witness state unreachable in a closed census"
    return f"census {census.visited} states, {shaped} shaped tuples, outcomes {sorted(outcomes)}"


def check_p_conjugation(kind, cfg, rng) -> str:
    rep = p_conjugation_orbit(kind)
    assert rep.lambda_t_one_reached, "some lambda_t = 1 root is unreached"
    assert rep.flip_neighbor_coeff_ok, "a lambda_t = m_t - 1 root misses the neighbor coefficient"
    assert RootVector(finite_type_data(kind).marks, 0, 0) not in rep.orbit or kind is FiniteType.D4
    return f"orbit {len(rep.orbit)}, lambda_t=1 roots {len(rep.lambda_t_one)}"


def check_connectivity(kind, cfg, rng) -> str:
    assert kind is FiniteType.D4
    std = standard_tuple(kind)
    census = orbit_explore(std, cfg.connect_bound, cfg.census_states, threads=cfg.threads)
    states = list(census.states)
    sample_n = min(cfg.connect_samples, len(states))
    sample = rng.sample(states, sample_n)
    for state in sample:
        t = ReflTuple.from_state(kind, state)
        word = connect_search(t, std, cfg.connect_bound, cfg.connect_states)
        assert word is not None, "inconclusive connection inside the census component"
        assert apply_braid(word, t).entries == std.entries
    return f"{sample_n} census states connected back to the standard tuple"


def check_interval_poset(kind, cfg, rng) -> str:
    assert kind is FiniteType.D4
    std = standard_tuple(kind)
    census = orbit_explore(std, 0, cfg.census_states)
    poset = build_poset(census)
    n = finite_type_data(kind).n
    bottoms = [e for e in poset.nodes.values() if e.length == 0]
    tops = [e for e in poset.nodes.values() if e.length == n + 2]
    assert len(bottoms) == 1 and bottoms[0].element.is_identity()
    assert len(tops) == 1 and tops[0].element == std.product
    for (a, b) in poset.covers:
        assert poset.nodes[b].length == poset.nodes[a].length + 1, "cover does not raise length by 1"
    for e in poset.nodes.values():
        assert e.scherk_len is not None and e.scherk_len <= e.length, "Scherk length exceeds node length"
    lengths = {e.length for e in poset.nodes.values()}
    assert lengths == set(range(n + 3))
    return f"{len(poset.nodes)} nodes, {len(poset.covers)} covers, graded 0..{n + 2}"


def check_census_determinism(kind, cfg, rng) -> str:
    assert kind is FiniteType.D4
    std = standard_tuple(kind)
    a = orbit_explore(std, 0, 10 ** 6)
    b = orbit_explore(std, 0, 10 ** 6, threads=2)
    assert a.summary() == b.summary()
    assert list(a.states.items()) == list(b.states.items()), "census content depends on threading"
    products = {ReflTuple.from_state(kind, s).product for s in a.states}
    assert products == {std.product}, "a census state changed the product"
    return f"{a.visited} states, identical across reruns and threads"


# --- the registry and the runner --------------------------------------------

ALL_KINDS_CHECKS = [
    ("table-data", check_table_data),
    ("root-count", check_root_counts),
    ("gram-signature", check_gram_signature),
    ("elliptic-diagram", check_elliptic_diagram),
    ("eichler-semigroup", check_eichler_semigroup),
    ("eichler-reflection", check_eichler_reflection),
    ("transvections", check_transvections),
    ("coxeter-triple", check_coxeter_triple),
    ("center", check_center),
    ("normal-form", check_normal_form),
    ("semidirect", check_semidirect),
    ("reflection-bijection", check_reflection_bijection),
    ("scherk-length", check_scherk),
    ("orth-independent", check_orth_independent_roots),
    ("hurwitz-invariants", check_hurwitz_invariants),
    ("p-conjugation", check_p_conjugation),
]

D4_ONLY_CHECKS = [
    ("tau-braid", check_tau_braid),
    ("two-orbit", check_two_orbit),
    ("lambda-t-census", check_lambda_t_census),
    ("connectivity", check_connectivity),
    ("interval-poset", check_interval_poset),
    ("census-determinism", check_census_determinism),
]


def run_checks(kinds, cfg: VerifyConfig) -> list[CheckResult]:
    results = []
    for kind in kinds:
        checks = list(ALL_KINDS_CHECKS)
        if kind is FiniteType.D4:
            checks += D4_ONLY_CHECKS
        for check_id, fn in checks:
            rng = random.Random((cfg.seed, kind.value, check_id).__repr__())
            start = time.perf_counter()
            try:
                detail = fn(kind, cfg, rng)
                ok = True
            except AssertionError as exc:
                detail = str(exc) or "assertion failed"
                ok = False
            results.append(CheckResult(check_id, kind.value, ok, detail,
                                       time.perf_counter() - start))
    return results
