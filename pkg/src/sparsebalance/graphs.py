"""Explicit signed and unsigned graphs and their combinatorial decision procedures.

Everything here is purely combinatorial (breadth-first search); the spectral
module is checked against these procedures, never the other way round.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Raised when a graph violates its structural invariants."""


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class UnsignedGraph:
    """Simple undirected graph over ``n_bits``-bit vertex identifiers.

    Vertex ids live in ``[1, 2**n_bits - 1]``; id 0 is the adjacency-list
    placeholder and never a vertex.
    """

    n_bits: int
    vertices: FrozenSet[int]
    edges: FrozenSet[Edge]
    _adj: Dict[int, Tuple[int, ...]] = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, n_bits: int, vertices: Iterable[int] = (), edges: Iterable[Edge] = ()):
        if n_bits < 1:
            raise GraphError(f"n_bits must be positive, got {n_bits}")
        edge_set = frozenset(_edge(int(u), int(v)) for u, v in edges)
        vertex_set = frozenset(int(v) for v in vertices) | {x for e in edge_set for x in e}
        top = (1 << n_bits) - 1
        for v in vertex_set:
            if not 1 <= v <= top:
                raise GraphError(f"vertex id {v} outside [1, {top}]")
        for u, v in edge_set:
            if u == v:
                raise GraphError(f"self-loop at {u}")
        object.__setattr__(self, "n_bits", n_bits)
        object.__setattr__(self, "vertices", vertex_set)
        object.__setattr__(self, "edges", edge_set)
        nbrs: Dict[int, List[int]] = {v: [] for v in vertex_set}
        for u, v in edge_set:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "_adj", {v: tuple(sorted(ns)) for v, ns in nbrs.items()})

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], vertices: Iterable[int] = (), n_bits: Optional[int] = None):
        edges = list(edges)
        vertices = set(vertices) | {x for e in edges for x in e}
        if n_bits is None:
            n_bits = max(1, max(vertices, default=1).bit_length())
        return cls(n_bits, vertices, edges)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    def induced(self, vertices: Iterable[int]) -> "UnsignedGraph":
        keep = frozenset(vertices)
        return UnsignedGraph(self.n_bits, keep, (e for e in self.edges if e[0] in keep and e[1] in keep))


@dataclass(frozen=True)
class SignedGraph:
    """An unsigned base graph plus a total signature ``edge -> ±1``."""

    base: UnsignedGraph
    sign: Mapping[Edge, int]

    def __init__(self, base: UnsignedGraph, sign: Mapping[Edge, int]):
        normalized = {_edge(u, v): int(s) for (u, v), s in sign.items()}
        if set(normalized) != set(base.edges):
            raise GraphError("signature must be defined on exactly the edges of the base graph")
        bad = [e for e, s in normalized.items() if s not in (-1, 1)]
        if bad:
            raise GraphError(f"signs must be ±1, got {normalized[bad[0]]} on {bad[0]}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "sign", dict(sorted(normalized.items())))

    @classmethod
    def from_signed_edges(cls, triples: Iterable[Tuple[int, int, int]], vertices: Iterable[int] = (),
                          n_bits: Optional[int] = None) -> "SignedGraph":
        triples = list(triples)
        base = UnsignedGraph.from_edges([(u, v) for u, v, _ in triples], vertices, n_bits)
        return cls(base, {_edge(u, v): s for u, v, s in triples})

    @classmethod
    def uniform(cls, g: UnsignedGraph, s: int) -> "SignedGraph":
        return cls(g, {e: s for e in g.edges})

    @property
    def n_bits(self) -> int:
        return self.base.n_bits

    @property
    def vertices(self) -> FrozenSet[int]:
        return self.base.vertices

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self.base.edges

    def s(self, u: int, v: int) -> int:
        return self.sign[_edge(u, v)]

    def induced(self, vertices: Iterable[int]) -> "SignedGraph":
        sub = self.base.induced(vertices)
        return SignedGraph(sub, {e: self.sign[e] for e in sub.edges})

    def __hash__(self) -> int:
        return hash((self.base, tuple(self.sign.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self.base == other.base and dict(self.sign) == dict(other.sign)


@dataclass(frozen=True)
class ComponentLabeling:
    label: Dict[int, int]
    count: int

    def components(self) -> List[List[int]]:
        """Vertex lists per component, ordered by label; labels follow smallest vertex id."""
        out: List[List[int]] = [[] for _ in range(self.count)]
        for v in sorted(self.label):
            out[self.label[v]].append(v)
        return out


def connected_components(g: UnsignedGraph | SignedGraph) -> ComponentLabeling:
    base = g.base if isinstance(g, SignedGraph) else g
    label: Dict[int, int] = {}
    count = 0
    for root in sorted(base.vertices):
        if root in label:
            continue
        label[root] = count
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in base.neighbors(u):
                if w not in label:
                    label[w] = count
                    queue.append(w)
        count += 1
    return ComponentLabeling(label, count)


@dataclass(frozen=True)
class ComponentVerdict:
    """Per-component outcome of a balance or bipartiteness search.

    ``assignment`` maps each vertex to ±1 when the component passes; otherwise
    ``cycle`` is a closed walk ``[v0, v1, ..., vk]`` with ``vk`` adjacent to ``v0``
    certifying failure (odd number of negative edges, or odd length).
    """

    vertices: Tuple[int, ...]
    ok: bool
    assignment: Optional[Dict[int, int]] = None
    cycle: Optional[Tuple[int, ...]] = None

    @property
    def isolated(self) -> bool:
        return len(self.vertices) == 1


@dataclass(frozen=True)
class Decision:
    answer: bool
    components: Tuple[ComponentVerdict, ...]
    count_isolated: bool = True

    @property
    def witness(self) -> Optional[ComponentVerdict]:
        for c in self.components:
            if c.ok and (self.count_isolated or not c.isolated):
                return c
        return None

    @property
    def passing_count(self) -> int:
        return sum(1 for c in self.components if c.ok and (self.count_isolated or not c.isolated))

    def __bool__(self) -> bool:
        return self.answer


def _tree_cycle(parent: Dict[int, Optional[int]], depth: Dict[int, int], u: int, v: int) -> Tuple[int, ...]:
    # u-v is a non-tree edge; close it through the BFS tree.
    left, right = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    right.pop()
    return tuple(left + right[::-1])


def _search(adj, edge_sign, vertices, count_isolated: bool) -> Decision:
    verdicts = []
    seen: Dict[int, int] = {}
    for root in sorted(vertices):
        if root in seen:
            continue
        parent: Dict[int, Optional[int]] = {root: None}
        depth = {root: 0}
        seen[root] = 1
        members = [root]
        conflict = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj(u):
                want = seen[u] * edge_sign(u, w)
                if w not in seen:
                    seen[w] = want
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    members.append(w)
                    queue.append(w)
                elif seen[w] != want and conflict is None:
                    conflict = (u, w)
        comp = tuple(sorted(members))
        if conflict is None:
            verdicts.append(ComponentVerdict(comp, True, assignment={v: seen[v] for v in comp}))
        else:
            verdicts.append(ComponentVerdict(comp, False, cycle=_tree_cycle(parent, depth, *conflict)))
    verdicts = tuple(verdicts)
    answer = any(c.ok and (count_isolated or not c.isolated) for c in verdicts)
    return Decision(answer, verdicts, count_isolated)


def has_balanced_component(g: SignedGraph, count_isolated: bool = True) -> Decision:
    """Switching search: propagate tentative ±1 labels per component.

    A component passes iff some assignment satisfies ``a(u) * a(v) == s(u, v)`` on
    all its edges. An isolated vertex is vacuously balanced; pass
    ``count_isolated=False`` to ignore such components in the overall answer.
    """
    return _search(g.base.neighbors, g.s, g.vertices, count_isolated)


def has_bipartite_component(g: UnsignedGraph, count_isolated: bool = True) -> Decision:
    """Two-coloring search; colors are reported as +1 (side A) and -1 (side B)."""
    verdicts = []
    color: Dict[int, int] = {}
    for root in sorted(g.vertices):
        if root in color:
            continue
        color[root] = 1
        parent: Dict[int, Optional[int]] = {root: None}
        depth = {root: 0}
        members = [root]
        odd_edge = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in color:
                    color[w] = -color[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    members.append(w)
                    queue.append(w)
                elif color[w] == color[u] and odd_edge is None:
                    odd_edge = (u, w)
        comp = tuple(sorted(members))
        if odd_edge is None:
            verdicts.append(ComponentVerdict(comp, True, assignment={v: color[v] for v in comp}))
        else:
            verdicts.append(ComponentVerdict(comp, False, cycle=_tree_cycle(parent, depth, *odd_edge)))
    verdicts = tuple(verdicts)
    answer = any(c.ok and (count_isolated or not c.isolated) for c in verdicts)
    return Decision(answer, verdicts, count_isolated)


def is_switching_assignment(g: SignedGraph, assignment: Mapping[int, int]) -> bool:
    """Check ``a(u) a(v) = s(u,v)`` on every edge with both endpoints assigned."""
    return all(assignment[u] * assignment[v] == s
               for (u, v), s in g.sign.items() if u in assignment and v in assignment)


def is_proper_coloring(g: UnsignedGraph, coloring: Mapping[int, int]) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges if u in coloring and v in coloring)


def _is_closed_walk(edges, cycle) -> bool:
    if len(cycle) < 3:
        return False
    return all(_edge(cycle[k], cycle[(k + 1) % len(cycle)]) in edges for k in range(len(cycle)))


def is_negative_odd_cycle(g: SignedGraph, cycle: Tuple[int, ...]) -> bool:
    if not _is_closed_walk(g.sign, cycle):
        return False
    negatives = sum(1 for k in range(len(cycle)) if g.s(cycle[k], cycle[(k + 1) % len(cycle)]) < 0)
    return negatives % 2 == 1


def is_odd_cycle(g: UnsignedGraph, cycle: Tuple[int, ...]) -> bool:
    return _is_closed_walk(g.edges, cycle) and len(cycle) % 2 == 1
