"""Absolute-order interval posets assembled from explored factorizations.

Every state of an orbit census is a reduced factorization of the Coxeter
transformation; its prefixes are reduced factorizations of interval elements,
graded by cut position.  Recording the consecutive-cut pairs of every state
yields a DAG whose edges each raise the grade by exactly one, so the DAG is
its own transitive reduction and order queries are reachability searches.

A truncated census can only under-approximate the true interval, hence the
three-valued `leq`: a missing witness is a disproof only when the census
closed without truncation.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum

from .group import Triple, identity_triple, reflection_triple, triple_dumps
from .hurwitz import OrbitCensus, ReflTuple
from .rootsys import FiniteType, RootVector
from .scherk import Verdict, scherk_length, verify_reduced


@dataclass(frozen=True)
class IntervalElement:
    element: Triple
    length: int
    scherk_len: int | None  # None when the build skipped Scherk statistics
    witnesses: frozenset[tuple[int, int]]  # (factorization id, prefix cut)


class LeqAnswer(Enum):
    YES = "yes"
    NO_IN_CENSUS = "no-in-census"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class LeqResult:
    answer: LeqAnswer
    witness: tuple[Triple, ...] | None  # chain x = t_0 < t_1 < ... < t_k = y


@dataclass
class IntervalPoset:
    kind: FiniteType
    nodes: dict[Triple, IntervalElement]
    covers: dict[tuple[Triple, Triple], tuple[int, int]]
    complete: bool

    @property
    def bottom(self) -> Triple:
        return identity_triple(self.kind)

    def node_id(self, x: Triple) -> str:
        return node_id(x)

    def up_neighbors(self, x: Triple):
        return [b for (a, b) in self.covers if a == x]


def node_id(x: Triple) -> str:
    return hashlib.sha256(triple_dumps(x).encode()).hexdigest()[:12]


def prefixes_of(t: ReflTuple, factorization_id: int = 0) -> list[IntervalElement]:
    """The partial products of a reduced factorization, graded by cut.

    Prefixes of reduced factorizations are reduced, so the cut position is the
    reflection length of the prefix element.
    """
    if verify_reduced(t) is not Verdict.REDUCED:
        raise ValueError("prefixes are only taken of certified-reduced factorizations")
    return _prefixes_unchecked(t, factorization_id)


def _prefixes_unchecked(t: ReflTuple, factorization_id: int) -> list[IntervalElement]:
    out = []
    acc = identity_triple(t.kind)
    for cut in range(len(t.entries) + 1):
        out.append(IntervalElement(
            element=acc,
            length=cut,
            scherk_len=scherk_length(acc).length,
            witnesses=frozenset({(factorization_id, cut)}),
        ))
        if cut < len(t.entries):
            acc = acc * reflection_triple(t.kind, t.entries[cut])
    return out


def build_poset(census: OrbitCensus, with_scherk: bool = True) -> IntervalPoset:
    """Assemble the discovered part of [id, c-tilde] from a census.

    Nodes are all prefixes of all census states; covers are the consecutive
    cuts.  The census seed must be a reduced factorization, which makes every
    state reduced (the product is shared and the length is fixed).  Per-node
    Scherk statistics can be skipped for large censuses.
    """
    if verify_reduced(census.seed) is not Verdict.REDUCED:
        raise ValueError("census seed is not a certified-reduced factorization")
    kind = census.kind
    ordered = sorted(census.states.items(), key=lambda kv: (kv[1], kv[0]))
    node_len: dict[Triple, int] = {}
    node_wit: dict[Triple, set[tuple[int, int]]] = {}
    covers: dict[tuple[Triple, Triple], tuple[int, int]] = {}
    for fid, (state, _depth) in enumerate(ordered):
        acc = identity_triple(kind)
        prev = acc
        for cut, key in enumerate(state, start=1):
            acc = acc * reflection_triple(kind, RootVector(beta=key[0], k=key[1], l=key[2]))
            for element, length in ((prev, cut - 1), (acc, cut)):
                known = node_len.get(element)
                if known is None:
                    node_len[element] = length
                    node_wit[element] = set()
                elif known != length:
                    raise AssertionError("prefix grading conflict: census seed was not reduced")
            node_wit[prev].add((fid, cut - 1))
            node_wit[acc].add((fid, cut))
            covers.setdefault((prev, acc), (fid, cut))
            prev = acc
    nodes = {
        el: IntervalElement(
            element=el,
            length=node_len[el],
            scherk_len=scherk_length(el).length if with_scherk else None,
            witnesses=frozenset(node_wit[el]),
        )
        for el in node_len
    }
    complete = (not census.overflow) and census.truncations == 0
    return IntervalPoset(kind=kind, nodes=nodes, covers=covers, complete=complete)


def leq(x: Triple, y: Triple, poset: IntervalPoset) -> LeqResult:
    """Three-valued order query on the discovered interval.

    YES comes with a cover chain from x to y.  A missing chain is only a
    negative when the census closed with no truncation; otherwise UNKNOWN.
    """
    if x not in poset.nodes or y not in poset.nodes:
        raise KeyError("both elements must be nodes of the poset")
    if x == y:
        return LeqResult(LeqAnswer.YES, (x,))
    lx, ly = poset.nodes[x].length, poset.nodes[y].length
    up: dict[Triple, list[Triple]] = {}
    for (a, b) in poset.covers:
        up.setdefault(a, []).append(b)
    if lx < ly:
        parent: dict[Triple, Triple] = {x: x}
        frontier = [x]
        while frontier:
            nxt = []
            for node in frontier:
                for child in up.get(node, ()):
                    if child not in parent:
                        parent[child] = node
                        if child == y:
                            chain = [y]
                            while chain[-1] != x:
                                chain.append(parent[chain[-1]])
                            return LeqResult(LeqAnswer.YES, tuple(reversed(chain)))
                        if poset.nodes[child].length < ly:
                            nxt.append(child)
            frontier = nxt
    if poset.complete:
        return LeqResult(LeqAnswer.NO_IN_CENSUS, None)
    return LeqResult(LeqAnswer.UNKNOWN, None)


def export_poset(poset: IntervalPoset, fmt: str = "json") -> bytes:
    """Deterministic JSON or DOT rendering, nodes ordered by (length, id)."""
    items = sorted(poset.nodes.values(), key=lambda e: (e.length, node_id(e.element)))
    ids = {e.element: node_id(e.element) for e in items}
    edges = sorted((ids[a], ids[b]) for (a, b) in poset.covers)
    if fmt == "json":
        doc = {
            "kind": poset.kind.value,
            "complete": poset.complete,
            "nodes": [
                {
                    "id": ids[e.element],
                    "length": e.length,
                    "scherk_length": e.scherk_len,
                    "triple": e.element.to_json(),
                }
                for e in items
            ],
            "covers": [list(edge) for edge in edges],
        }
        return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()
    if fmt == "dot":
        lines = ["digraph interval {", "  rankdir=BT;"]
        by_length: dict[int, list[str]] = {}
        for e in items:
            by_length.setdefault(e.length, []).append(ids[e.element])
            lines.append(f'  "{ids[e.element]}" [label="{ids[e.element]}\\nl={e.length}"];')
        for length in sorted(by_length):
            group = " ".join(f'"{i}";' for i in by_length[length])
            lines.append(f"  {{ rank=same; {group} }}")
        for a, b in edges:
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unsupported format {fmt!r}")


def poset_from_json(data: bytes | str) -> IntervalPoset:
    """Rebuild a poset from its JSON export (witnesses are not serialized)."""
    doc = json.loads(data)
    kind = FiniteType.parse(doc["kind"])
    by_id: dict[str, Triple] = {}
    nodes: dict[Triple, IntervalElement] = {}
    for nd in doc["nodes"]:
        el = Triple.from_json(nd["triple"])
        by_id[nd["id"]] = el
        nodes[el] = IntervalElement(
            element=el, length=nd["length"], scherk_len=nd["scherk_length"],
            witnesses=frozenset(),
        )
    covers = {(by_id[a], by_id[b]): (-1, -1) for a, b in doc["covers"]}
    return IntervalPoset(kind=kind, nodes=nodes, covers=covers,
                         complete=doc["complete"])
