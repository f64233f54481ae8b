"""Computations as event traces, their causality, and synthetic workloads.

A trace is a totally ordered list of events; each event is one thread
operating on one object.  Happened-before links consecutive events of the
same thread and consecutive events on the same object, closed under
transitivity.

Randomness comes from ``numpy.random.default_rng`` (PCG64) seeded
explicitly, so every generator is reproducible across platforms.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Tuple, Union

import numpy as np

from .bigraph import BipartiteGraph

PathLike = Union[str, "os.PathLike[str]"]


class TraceFormatError(ValueError):
    """A trace file could not be parsed; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int, path: str = "<trace>"):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno
        self.path = path


class Event(NamedTuple):
    index: int
    thread: int
    object: int


@dataclass(frozen=True)
class Trace:
    n_threads: int
    m_objects: int
    events: Tuple[Event, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        for i, e in enumerate(self.events):
            if e.index != i:
                raise ValueError(f"event at position {i} carries index {e.index}")
            if not (0 <= e.thread < self.n_threads and 0 <= e.object < self.m_objects):
                raise ValueError(f"event {i} ({e.thread}, {e.object}) is out of range")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]], n_threads: int = None,
                   m_objects: int = None) -> "Trace":
        pairs = [(int(t), int(o)) for t, o in pairs]
        if n_threads is None:
            n_threads = max((t for t, _ in pairs), default=-1) + 1
        if m_objects is None:
            m_objects = max((o for _, o in pairs), default=-1) + 1
        return cls(n_threads, m_objects, tuple(Event(i, t, o) for i, (t, o) in enumerate(pairs)))

    def __len__(self) -> int:
        return len(self.events)

    def pairs(self) -> List[Tuple[int, int]]:
        return [(e.thread, e.object) for e in self.events]


@dataclass(frozen=True)
class CausalityOracle:
    """Happened-before as a dense boolean matrix: ``reach[i, j]`` iff i -> j."""

    reach: np.ndarray

    def happened_before(self, e: int, f: int) -> bool:
        return bool(self.reach[e, f])

    def concurrent(self, e: int, f: int) -> bool:
        return not self.reach[e, f] and not self.reach[f, e]

    def __len__(self) -> int:
        return self.reach.shape[0]


def build_bigraph(t: Trace) -> BipartiteGraph:
    """Distinct (thread, object) pairs of ``t``; all declared ids are vertices."""
    return BipartiteGraph.from_edges(t.pairs(), t.n_threads, t.m_objects)


def immediate_successors(t: Trace) -> List[Tuple[int, ...]]:
    """For each event, the next event on its thread and on its object."""
    succ: List[List[int]] = [[] for _ in t.events]
    last_thread, last_object = {}, {}
    for e in t.events:
        for table, key in ((last_thread, e.thread), (last_object, e.object)):
            prev = table.get(key)
            if prev is not None and e.index not in succ[prev]:
                succ[prev].append(e.index)
            table[key] = e.index
    return [tuple(s) for s in succ]


def oracle(t: Trace) -> CausalityOracle:
    n = len(t.events)
    succ = immediate_successors(t)
    reach = np.zeros((n, n), dtype=bool)
    # successors always have larger indices, so a reverse sweep sees them first
    for i in range(n - 1, -1, -1):
        for j in succ[i]:
            reach[i, j] = True
            reach[i] |= reach[j]
    return CausalityOracle(reach)


def _check_density(density: float) -> None:
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")


def gen_uniform(n: int, m: int, density: float, seed: int) -> BipartiteGraph:
    """Erdős–Rényi style bipartite graph: every cell kept with prob. ``density``."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be at least 1")
    _check_density(density)
    rng = np.random.default_rng(seed)
    keep = rng.random((n, m)) < density
    ts, os_ = np.nonzero(keep)
    return BipartiteGraph.from_edges(zip(ts.tolist(), os_.tolist()), n, m)


def nonuniform_probabilities(n: int, m: int, density: float, popular_fraction: float,
                             boost: float) -> Tuple[float, float, int, int]:
    """Solve for ``(p_low, p_high, popular_threads, popular_objects)``.

    Cells touching a popular vertex get ``p_high = min(1, boost * p_low)``,
    the rest ``p_low``; ``p_low`` is chosen so the expected edge count is
    ``density * n * m``.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be at least 1")
    _check_density(density)
    if not 0.0 < popular_fraction < 1.0:
        raise ValueError(f"popular_fraction must lie in (0, 1), got {popular_fraction}")
    if boost < 1.0:
        raise ValueError(f"boost must be >= 1, got {boost}")

    kt = math.ceil(popular_fraction * n)
    ko = math.ceil(popular_fraction * m)
    cells = n * m
    hot = cells - (n - kt) * (m - ko)
    cold = cells - hot
    target = density * cells

    # expected count is piecewise linear in p_low with a kink at 1/boost
    if target <= (cold + boost * hot) / boost:
        p_low = target / (cold + boost * hot)
    elif cold > 0:
        p_low = (target - hot) / cold
    else:
        raise ValueError("expected edge count unreachable for these parameters")
    if not 0.0 <= p_low <= 1.0:
        raise ValueError("expected edge count unreachable for these parameters")
    p_high = min(1.0, boost * p_low)
    return p_low, p_high, kt, ko


def gen_nonuniform(n: int, m: int, density: float, popular_fraction: float = 0.2,
                   boost: float = 4.0, seed: int = 0) -> BipartiteGraph:
    """Bipartite graph in which the lowest-numbered vertices are popular."""
    p_low, p_high, kt, ko = nonuniform_probabilities(n, m, density, popular_fraction, boost)
    prob = np.full((n, m), p_low)
    prob[:kt, :] = p_high
    prob[:, :ko] = p_high
    rng = np.random.default_rng(seed)
    keep = rng.random((n, m)) < prob
    ts, os_ = np.nonzero(keep)
    return BipartiteGraph.from_edges(zip(ts.tolist(), os_.tolist()), n, m)


def graph_to_trace(g: BipartiteGraph, seed: int) -> Trace:
    """One event per edge, in a seeded uniformly random order."""
    edges = sorted(g.edges)
    n = max(g.threads, default=-1) + 1
    m = max(g.objects, default=-1) + 1
    if not edges:
        return Trace(n, m, ())
    order = np.random.default_rng(seed).permutation(len(edges))
    return Trace.from_pairs((edges[i] for i in order), n, m)


def format_trace(t: Trace) -> str:
    lines = [f"threads {t.n_threads} objects {t.m_objects}"]
    lines.extend(f"{e.thread} {e.object}" for e in t.events)
    return "\n".join(lines) + "\n"


def parse_trace(text: str, path: str = "<trace>") -> Trace:
    n = m = None
    pairs: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 4 or fields[0] != "threads" or fields[2] != "objects":
                raise TraceFormatError("expected header 'threads <n> objects <m>'", lineno, path)
            try:
                n, m = int(fields[1]), int(fields[3])
            except ValueError:
                raise TraceFormatError("header counts must be integers", lineno, path) from None
            if n < 0 or m < 0:
                raise TraceFormatError("header counts must be non-negative", lineno, path)
            continue
        if len(fields) != 2:
            raise TraceFormatError("expected '<thread-id> <object-id>'", lineno, path)
        try:
            th, ob = int(fields[0]), int(fields[1])
        except ValueError:
            raise TraceFormatError("ids must be integers", lineno, path) from None
        if not 0 <= th < n:
            raise TraceFormatError(f"thread {th} out of range for {n} threads", lineno, path)
        if not 0 <= ob < m:
            raise TraceFormatError(f"object {ob} out of range for {m} objects", lineno, path)
        pairs.append((th, ob))
    if n is None:
        raise TraceFormatError("missing header", 1, path)
    return Trace.from_pairs(pairs, n, m)


def read_trace(path: PathLike) -> Trace:
    with open(path, encoding="utf-8") as fh:
        return parse_trace(fh.read(), os.fspath(path))


def write_trace(t: Trace, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_trace(t))


def events_of(t: Trace, key: str) -> dict:
    """Group event indices by ``'thread'`` or ``'object'``, in trace order."""
    groups: dict = {}
    for e in t.events:
        groups.setdefault(getattr(e, key), []).append(e.index)
    return groups



def sample_trace(g: BipartiteGraph, n_events: int, seed) -> Trace:
    """``n_events`` events drawn uniformly with replacement from the edges of ``g``.

    Unlike :func:`graph_to_trace` the same pair may repeat, and edges may
    be missing from the result.
    """
    edges = sorted(g.edges)
    n = max(g.threads, default=-1) + 1
    m = max(g.objects, default=-1) + 1
    if not edges or n_events <= 0:
        return Trace(n, m, ())
    picks = np.random.default_rng(seed).integers(0, len(edges), size=n_events)
    return Trace.from_pairs((edges[i] for i in picks), n, m)
