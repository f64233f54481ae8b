"""Thread-object bipartite graphs, maximum matching and minimum vertex cover.

Threads and objects live in separate id namespaces: thread 0 and object 0
are different vertices.  All iteration is in ascending id order so the
matching (and hence the cover) returned for a given graph is reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

Edge = Tuple[int, int]

_INF = -1


class PreconditionError(ValueError):
    """Raised when an argument violates a documented precondition."""


@dataclass(frozen=True)
class BipartiteGraph:
    threads: FrozenSet[int] = frozenset()
    objects: FrozenSet[int] = frozenset()
    edges: FrozenSet[Edge] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "threads", frozenset(self.threads))
        object.__setattr__(self, "objects", frozenset(self.objects))
        object.__setattr__(self, "edges", frozenset((int(t), int(o)) for t, o in self.edges))
        for t, o in self.edges:
            if t not in self.threads or o not in self.objects:
                raise PreconditionError(f"edge ({t}, {o}) has an endpoint outside the vertex sets")

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], n_threads: Optional[int] = None,
                   m_objects: Optional[int] = None) -> "BipartiteGraph":
        """Build a graph from an edge iterable; repeated edges collapse.

        When ``n_threads``/``m_objects`` are given the vertex sets are
        ``range(n)``/``range(m)`` (isolated vertices kept); otherwise only
        the endpoints that occur in ``edges`` are included.
        """
        edges = frozenset((int(t), int(o)) for t, o in edges)
        threads = frozenset(range(n_threads)) if n_threads is not None else frozenset(t for t, _ in edges)
        objects = frozenset(range(m_objects)) if m_objects is not None else frozenset(o for _, o in edges)
        return cls(threads, objects, edges)

    def thread_adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {t: [] for t in sorted(self.threads)}
        for t, o in sorted(self.edges):
            adj[t].append(o)
        return adj

    def object_adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {o: [] for o in sorted(self.objects)}
        for t, o in sorted(self.edges, key=lambda e: (e[1], e[0])):
            adj[o].append(t)
        return adj

    def active_threads(self) -> FrozenSet[int]:
        return frozenset(t for t, _ in self.edges)

    def active_objects(self) -> FrozenSet[int]:
        return frozenset(o for _, o in self.edges)

    @property
    def density(self) -> float:
        cells = len(self.threads) * len(self.objects)
        return len(self.edges) / cells if cells else 0.0


@dataclass(frozen=True)
class Matching:
    pairs: FrozenSet[Edge] = frozenset()

    def __len__(self) -> int:
        return len(self.pairs)

    def thread_to_object(self) -> Dict[int, int]:
        return dict(self.pairs)

    def object_to_thread(self) -> Dict[int, int]:
        return {o: t for t, o in self.pairs}


@dataclass(frozen=True)
class VertexCover:
    thread_members: FrozenSet[int] = field(default_factory=frozenset)
    object_members: FrozenSet[int] = field(default_factory=frozenset)

    def __len__(self) -> int:
        return len(self.thread_members) + len(self.object_members)

    def __contains__(self, tagged) -> bool:
        tag, ident = tagged
        members = self.thread_members if tag == "t" else self.object_members
        return ident in members


def check_matching(g: BipartiteGraph, m: Matching) -> None:
    """Raise :class:`PreconditionError` unless ``m`` is a matching of ``g``."""
    seen_t, seen_o = set(), set()
    for t, o in m.pairs:
        if (t, o) not in g.edges:
            raise PreconditionError(f"pair ({t}, {o}) is not an edge of the graph")
        if t in seen_t:
            raise PreconditionError(f"thread {t} is matched twice")
        if o in seen_o:
            raise PreconditionError(f"object {o} is matched twice")
        seen_t.add(t)
        seen_o.add(o)


def max_matching(g: BipartiteGraph) -> Matching:
    """Maximum cardinality matching by Hopcroft-Karp.

    Each phase runs a BFS from all free threads to layer the graph by
    alternating-path distance, then augments along a maximal set of
    vertex-disjoint shortest augmenting paths with DFS.  Terminates when
    the BFS finds no free object, i.e. no augmenting path remains.
    """
    adj = g.thread_adjacency()
    left = list(adj)
    match_t: Dict[int, int] = {}
    match_o: Dict[int, int] = {}
    dist: Dict[int, int] = {}

    def bfs() -> int:
        queue = deque()
        for t in left:
            if t in match_t:
                dist[t] = _INF
            else:
                dist[t] = 0
                queue.append(t)
        found = _INF
        while queue:
            t = queue.popleft()
            if found != _INF and dist[t] >= found:
                continue
            for o in adj[t]:
                mate = match_o.get(o)
                if mate is None:
                    if found == _INF:
                        found = dist[t] + 1
                elif dist[mate] == _INF:
                    dist[mate] = dist[t] + 1
                    queue.append(mate)
        return found

    def dfs(t: int, found: int) -> bool:
        for o in adj[t]:
            mate = match_o.get(o)
            if mate is None:
                if dist[t] + 1 == found:
                    match_t[t] = o
                    match_o[o] = t
                    return True
            elif dist[mate] == dist[t] + 1 and dfs(mate, found):
                match_t[t] = o
                match_o[o] = t
                return True
        dist[t] = _INF
        return False

    while True:
        found = bfs()
        if found == _INF:
            break
        for t in left:
            if t not in match_t:
                dfs(t, found)
    return Matching(frozenset(match_t.items()))


def min_vertex_cover(g: BipartiteGraph, m: Matching) -> VertexCover:
    """König cover from a maximum matching.

    ``Z`` holds the free threads plus everything reachable from them along
    alternating paths (non-matching edge thread->object, matching edge
    object->thread).  The cover is the threads outside ``Z`` together with
    the objects inside it.  ``m`` must be maximum; that is not re-checked.
    """
    check_matching(g, m)
    adj = g.thread_adjacency()
    t2o = m.thread_to_object()
    o2t = m.object_to_thread()

    free = [t for t in adj if t not in t2o]
    z_threads = set(free)
    z_objects = set()
    queue = deque(free)
    while queue:
        t = queue.popleft()
        for o in adj[t]:
            if o in z_objects or t2o.get(t) == o:
                continue
            z_objects.add(o)
            mate = o2t.get(o)
            if mate is not None and mate not in z_threads:
                z_threads.add(mate)
                queue.append(mate)

    # isolated threads are free and land in Z, so they never enter the cover
    cover_t = frozenset(t for t in g.threads if t not in z_threads)
    return VertexCover(cover_t, frozenset(z_objects))


def is_vertex_cover(g: BipartiteGraph, c: VertexCover) -> bool:
    return all(t in c.thread_members or o in c.object_members for t, o in g.edges)
