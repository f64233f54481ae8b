"""Online component selection: events arrive one at a time.

Components may only be appended.  When an event's thread and object are
both missing from the clock, a mechanism picks one of them:

``naive-threads`` / ``naive-objects``
    always the thread / always the object.
``random``
    thread or object with equal probability, from a seeded stream.
``popularity``
    the endpoint with the larger degree share ``deg(v) / |E|`` in the
    graph revealed so far (new edge included); the thread wins ties.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from .bigraph import BipartiteGraph
from .clock import OBJECT, THREAD, Component, ComponentSet, StampedTrace, Stamper
from .trace import Event, Trace

MECHANISMS = ("naive-threads", "naive-objects", "random", "popularity")


@dataclass(frozen=True)
class Mechanism:
    kind: str
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in MECHANISMS:
            raise ValueError(f"unknown mechanism {self.kind!r}; choose from {', '.join(MECHANISMS)}")
        if self.kind == "random" and self.seed is None:
            object.__setattr__(self, "seed", 0)


@dataclass
class OnlineState:
    components: ComponentSet = field(default_factory=ComponentSet)
    edges: Set[Tuple[int, int]] = field(default_factory=set)
    thread_degree: Dict[int, int] = field(default_factory=dict)
    object_degree: Dict[int, int] = field(default_factory=dict)
    rng: Optional[np.random.Generator] = None

    @classmethod
    def start(cls, mech: Mechanism) -> "OnlineState":
        rng = np.random.default_rng(mech.seed) if mech.kind == "random" else None
        return cls(rng=rng)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def popularity(self, tag: str, ident: int) -> float:
        if not self.edges:
            return 0.0
        deg = self.thread_degree if tag == THREAD else self.object_degree
        return deg.get(ident, 0) / len(self.edges)

    def graph(self) -> BipartiteGraph:
        return BipartiteGraph.from_edges(self.edges)


@dataclass(frozen=True)
class Decision:
    index: int
    thread: int
    object: int
    added: Optional[Component]

    def format(self) -> str:
        added = "-" if self.added is None else f"{self.added[0]}:{self.added[1]}"
        return f"{self.index} {self.thread} {self.object} {added}"


def reveal(state: OnlineState, mech: Mechanism, event: Event) -> Decision:
    """Record ``event`` in ``state`` (in place) and extend the clock if needed."""
    key = (event.thread, event.object)
    if key not in state.edges:
        state.edges.add(key)
        state.thread_degree[event.thread] = state.thread_degree.get(event.thread, 0) + 1
        state.object_degree[event.object] = state.object_degree.get(event.object, 0) + 1

    comps = state.components
    if comps.has_thread(event.thread) or comps.has_object(event.object):
        return Decision(event.index, event.thread, event.object, None)

    if mech.kind == "naive-threads":
        pick = THREAD
    elif mech.kind == "naive-objects":
        pick = OBJECT
    elif mech.kind == "random":
        pick = THREAD if state.rng.random() < 0.5 else OBJECT
    else:
        # shared |E| denominator; kept as popularity for the decision log
        pt = state.popularity(THREAD, event.thread)
        po = state.popularity(OBJECT, event.object)
        pick = OBJECT if po > pt else THREAD

    added = (THREAD, event.thread) if pick == THREAD else (OBJECT, event.object)
    comps.add(added)
    return Decision(event.index, event.thread, event.object, added)


@dataclass(frozen=True)
class OnlineResult:
    components: ComponentSet
    stamped: Optional[StampedTrace]
    decisions: Tuple[Decision, ...]

    def decision_log(self) -> str:
        return "".join(d.format() + "\n" for d in self.decisions)


def run_online(t: Trace, mech: Mechanism, tie: str = THREAD, stamp: bool = True) -> OnlineResult:
    """Reveal ``t`` event by event, stamping each with the clock as it stands.

    With ``stamp=False`` only the component set and decisions are computed
    and ``stamped`` is None.
    """
    state = OnlineState.start(mech)
    stamper = Stamper(state.components, tie) if stamp else None
    stamps, bumped, decisions = [], [], []
    for e in t.events:
        decisions.append(reveal(state, mech, e))
        if stamper is not None:
            v, c = stamper.step(e)
            stamps.append(v)
            bumped.append(c)
    st = StampedTrace(t, state.components, tuple(stamps), tuple(bumped)) if stamp else None
    return OnlineResult(state.components, st, tuple(decisions))


def write_decision_log(result: OnlineResult, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(result.decision_log())


def decision_sizes(decisions: List[Decision]) -> List[int]:
    """Clock size after each event."""
    sizes, k = [], 0
    for d in decisions:
        k += d.added is not None
        sizes.append(k)
    return sizes
