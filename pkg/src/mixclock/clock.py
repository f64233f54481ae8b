"""Mixed vector clocks whose components are a mix of threads and objects.

Every thread and object keeps a clock.  When thread ``p`` operates on
object ``q`` the event takes the componentwise max of both clocks, bumps
one component that belongs to ``p`` or ``q``, and both ``p`` and ``q``
adopt the result.  As long as each event's thread or object is a
component, comparing the stamps reproduces happened-before exactly.

Clocks are sparse (absent entries read as zero), so a component set may
grow while a trace is being stamped without touching earlier stamps.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .bigraph import VertexCover, max_matching, min_vertex_cover
from .trace import Event, Trace, build_bigraph, oracle

Component = Tuple[str, int]
THREAD, OBJECT = "t", "o"
PathLike = Union[str, "os.PathLike[str]"]


class CoverageError(ValueError):
    """An event has neither its thread nor its object among the components."""

    def __init__(self, event: Event):
        super().__init__(
            f"event {event.index} (thread {event.thread}, object {event.object}) "
            "is not covered by the component set")
        self.event = event


class ComponentMismatchError(ValueError):
    """Two clocks governed by different component sets were compared."""


class StampFormatError(ValueError):
    def __init__(self, message: str, lineno: int, path: str = "<stamps>"):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno


def parse_component(token: str) -> Component:
    tag, sep, ident = token.partition(":")
    if not sep or tag not in (THREAD, OBJECT) or not ident.isdigit():
        raise ValueError(f"bad component {token!r}, expected t:<id> or o:<id>")
    return tag, int(ident)


def format_component(c: Component) -> str:
    return f"{c[0]}:{c[1]}"


class ComponentSet:
    """Ordered, duplicate-free, append-only set of tagged components."""

    def __init__(self, members: Iterable[Component] = ()):
        self._members: List[Component] = []
        self._index: Dict[Component, int] = {}
        for c in members:
            self.add(c)

    @classmethod
    def from_cover(cls, cover: VertexCover) -> "ComponentSet":
        return cls([(THREAD, t) for t in sorted(cover.thread_members)]
                   + [(OBJECT, o) for o in sorted(cover.object_members)])

    @classmethod
    def all_threads(cls, t: Trace) -> "ComponentSet":
        return cls((THREAD, i) for i in range(t.n_threads))

    @classmethod
    def all_objects(cls, t: Trace) -> "ComponentSet":
        return cls((OBJECT, i) for i in range(t.m_objects))

    def add(self, c: Component) -> bool:
        """Append ``c``; returns False if it was already present."""
        c = (c[0], int(c[1]))
        if c[0] not in (THREAD, OBJECT):
            raise ValueError(f"unknown component tag {c[0]!r}")
        if c in self._index:
            return False
        self._index[c] = len(self._members)
        self._members.append(c)
        return True

    def has_thread(self, t: int) -> bool:
        return (THREAD, t) in self._index

    def has_object(self, o: int) -> bool:
        return (OBJECT, o) in self._index

    def position(self, c: Component) -> int:
        return self._index[c]

    def __contains__(self, c) -> bool:
        return tuple(c) in self._index

    def __iter__(self) -> Iterator[Component]:
        return iter(self._members)

    def __len__(self) -> int:
        return len(self._members)

    def __getitem__(self, i: int) -> Component:
        return self._members[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComponentSet):
            return NotImplemented
        return self._members == other._members

    def __repr__(self) -> str:
        return "ComponentSet([" + ", ".join(format_component(c) for c in self._members) + "])"

    def threads(self) -> List[int]:
        return [i for tag, i in self._members if tag == THREAD]

    def objects(self) -> List[int]:
        return [i for tag, i in self._members if tag == OBJECT]

    def copy(self) -> "ComponentSet":
        return ComponentSet(self._members)


@dataclass(frozen=True)
class MixedClock:
    """Sparse counter map; only counters >= 1 are stored."""

    entries: Mapping[Component, int] = field(default_factory=dict)
    components: Optional[ComponentSet] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        clean = {(c[0], int(c[1])): int(v) for c, v in dict(self.entries).items() if v}
        for c, v in clean.items():
            if v < 0:
                raise ValueError(f"negative counter for {format_component(c)}")
            if self.components is not None and c not in self.components:
                raise ValueError(f"{format_component(c)} is not a governing component")
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, c: Component) -> int:
        return self.entries.get(c, 0)

    def dense(self, components: Optional[ComponentSet] = None) -> List[int]:
        comps = components if components is not None else self.components
        return [self[c] for c in comps]


def vc_less(a: MixedClock, b: MixedClock) -> bool:
    """Strict vector order: ``a <= b`` everywhere and ``a != b``."""
    if a.components is not None and b.components is not None and a.components is not b.components:
        if a.components != b.components:
            raise ComponentMismatchError("clocks are governed by different component sets")
    for c, v in a.entries.items():
        if v > b[c]:
            return False
    return a.entries != b.entries


def vc_concurrent(a: MixedClock, b: MixedClock) -> bool:
    return not vc_less(a, b) and not vc_less(b, a)


@dataclass(frozen=True)
class StampedTrace:
    trace: Trace
    components: ComponentSet
    stamps: Tuple[MixedClock, ...]
    incremented: Tuple[Optional[Component], ...] = ()

    def __post_init__(self):
        if len(self.stamps) != len(self.trace.events):
            raise ValueError("one stamp per event is required")

    def matrix(self) -> np.ndarray:
        """Dense ``(events, components)`` counter matrix in component order."""
        k = len(self.components)
        out = np.zeros((len(self.stamps), k), dtype=np.int64)
        for i, s in enumerate(self.stamps):
            for c, v in s.entries.items():
                out[i, self.components.position(c)] = v
        return out


class Stamper:
    """Incremental timestamping over a (possibly growing) component set.

    ``tie`` picks the bumped component when both the thread and the object
    are components: ``"thread"`` (default) or ``"object"``.
    """

    def __init__(self, components: ComponentSet, tie: str = THREAD):
        if tie not in (THREAD, OBJECT, "thread", "object"):
            raise ValueError(f"tie must be 'thread' or 'object', got {tie!r}")
        self.components = components
        self.tie = tie[0]
        self._thread_clock: Dict[int, Dict[Component, int]] = {}
        self._object_clock: Dict[int, Dict[Component, int]] = {}

    def choose(self, e: Event) -> Component:
        has_t = self.components.has_thread(e.thread)
        has_o = self.components.has_object(e.object)
        if has_t and has_o:
            return (THREAD, e.thread) if self.tie == THREAD else (OBJECT, e.object)
        if has_t:
            return (THREAD, e.thread)
        if has_o:
            return (OBJECT, e.object)
        raise CoverageError(e)

    def step(self, e: Event) -> Tuple[MixedClock, Component]:
        c = self.choose(e)
        pv = self._thread_clock.get(e.thread, {})
        qv = self._object_clock.get(e.object, {})
        v = dict(pv)
        for key, val in qv.items():
            if val > v.get(key, 0):
                v[key] = val
        v[c] = v.get(c, 0) + 1
        self._thread_clock[e.thread] = v
        self._object_clock[e.object] = v
        return MixedClock(v, self.components), c


def stamp(t: Trace, c: ComponentSet, tie: str = THREAD) -> StampedTrace:
    """Timestamp every event of ``t`` with mixed clocks over ``c``.

    Raises :class:`CoverageError` naming the first event whose thread and
    object are both missing from ``c``.
    """
    for e in t.events:
        if not (c.has_thread(e.thread) or c.has_object(e.object)):
            raise CoverageError(e)
    stamper = Stamper(c, tie)
    stamps, bumped = [], []
    for e in t.events:
        v, comp = stamper.step(e)
        stamps.append(v)
        bumped.append(comp)
    return StampedTrace(t, c, tuple(stamps), tuple(bumped))


def offline_clock(t: Trace) -> ComponentSet:
    """Smallest component set for ``t``: a König cover of its bipartite graph."""
    g = build_bigraph(t)
    return ComponentSet.from_cover(min_vertex_cover(g, max_matching(g)))


def less_matrix(stamps: np.ndarray) -> np.ndarray:
    """``out[i, j]`` iff row i < row j in the strict vector order."""
    a = stamps[:, None, :]
    b = stamps[None, :, :]
    return np.all(a <= b, axis=2) & np.any(a < b, axis=2)


@dataclass
class ValidationReport:
    passed: bool
    n_events: int
    violations: List[Tuple[int, int]]

    def __bool__(self) -> bool:
        return self.passed


def validate(st: StampedTrace, max_report: Optional[int] = None) -> ValidationReport:
    """Compare ``e -> f`` against ``e.v < f.v`` for every ordered pair."""
    n = len(st.stamps)
    if n == 0:
        return ValidationReport(True, 0, [])
    hb = oracle(st.trace).reach
    lt = less_matrix(st.matrix())
    np.fill_diagonal(lt, False)
    bad = np.argwhere(hb != lt)
    violations = [(int(i), int(j)) for i, j in bad[:max_report] if i != j]
    return ValidationReport(len(bad) == 0, n, violations)


def own_counter_violations(st: StampedTrace) -> List[Tuple[int, int]]:
    """Pairs (s, t), s != t, with s not before t yet t.v[s.c] >= s.v[s.c].

    ``s.c`` is the component bumped at ``s`` (``st.incremented``).
    """
    n = len(st.stamps)
    if n == 0:
        return []
    hb = oracle(st.trace).reach
    v = st.matrix()
    cols = np.array([st.components.position(c) for c in st.incremented])
    own = v[np.arange(n), cols]
    seen = v[:, cols].T  # seen[s, t] = t.v[s.c]
    bad = ~hb & (seen >= own[:, None])
    np.fill_diagonal(bad, False)
    return [(int(i), int(j)) for i, j in np.argwhere(bad)]


def format_stamped(st: StampedTrace) -> str:
    comps = list(st.components)
    header = " ".join(["components"] + [format_component(c) for c in comps])
    lines = [header]
    for e, v in zip(st.trace.events, st.stamps):
        counters = " ".join(str(v[c]) for c in comps)
        lines.append(f"{e.thread} {e.object} | {counters}".rstrip())
    return "\n".join(lines) + "\n"


def parse_stamped(text: str, path: str = "<stamps>") -> StampedTrace:
    comps: Optional[ComponentSet] = None
    pairs: List[Tuple[int, int]] = []
    rows: List[List[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if comps is None:
            fields = line.split()
            if fields[0] != "components":
                raise StampFormatError("expected header 'components <tag:id> ...'", lineno, path)
            try:
                members = [parse_component(tok) for tok in fields[1:]]
            except ValueError as exc:
                raise StampFormatError(str(exc), lineno, path) from None
            if len(set(members)) != len(members):
                raise StampFormatError("duplicate component in header", lineno, path)
            comps = ComponentSet(members)
            continue
        left, sep, right = line.partition("|")
        ids = left.split()
        if not sep or len(ids) != 2:
            raise StampFormatError("expected '<thread> <object> | <counters>'", lineno, path)
        try:
            th, ob = int(ids[0]), int(ids[1])
            counters = [int(x) for x in right.split()]
        except ValueError:
            raise StampFormatError("ids and counters must be integers", lineno, path) from None
        if th < 0 or ob < 0 or any(x < 0 for x in counters):
            raise StampFormatError("ids and counters must be non-negative", lineno, path)
        if len(counters) != len(comps):
            raise StampFormatError(
                f"expected {len(comps)} counters, found {len(counters)}", lineno, path)
        pairs.append((th, ob))
        rows.append(counters)
    if comps is None:
        raise StampFormatError("missing header", 1, path)
    trace = Trace.from_pairs(pairs)
    stamps = tuple(MixedClock(dict(zip(comps, row)), comps) for row in rows)
    return StampedTrace(trace, comps, stamps)


def read_stamped(path: PathLike) -> StampedTrace:
    with open(path, encoding="utf-8") as fh:
        return parse_stamped(fh.read(), os.fspath(path))


def write_stamped(st: StampedTrace, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_stamped(st))


def dense_stamps(st: StampedTrace, order: Optional[Sequence[Component]] = None) -> List[List[int]]:
    comps = list(order) if order is not None else list(st.components)
    return [[v[c] for c in comps] for v in st.stamps]
