"""Clock-size experiments over random thread-object graphs.

For every scenario, sweep point and trial a graph is drawn with seed
``base_seed + trial``, its edges are revealed in a seeded random order, and
the offline clock plus every requested online mechanism are sized.

Seed derivation from the per-trial seed ``s`` (all via PCG64):

* graph:               ``default_rng(s)``
* reveal order:        ``default_rng([s, 1])``
* random mechanism:    ``default_rng([s, 2])``

so any row is replayable from its ``seed`` column alone.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .clock import offline_clock
from .online import MECHANISMS, Mechanism, run_online
from .trace import Trace, gen_nonuniform, gen_uniform, graph_to_trace

SCENARIOS = ("uniform", "nonuniform")
OFFLINE = "offline"
CSV_HEADER = ("scenario", "mechanism", "n_threads", "m_objects", "density", "seed",
              "edge_count", "clock_size")
SUMMARY_HEADER = ("scenario", "mechanism", "n_threads", "m_objects", "density", "trials",
                  "mean_edge_count", "mean_clock_size", "std_clock_size")
ORDER_STREAM = 1
MECHANISM_STREAM = 2


def order_seed(seed: int) -> List[int]:
    return [seed, ORDER_STREAM]


def mechanism_seed(seed: int) -> List[int]:
    return [seed, MECHANISM_STREAM]


class ConfigError(ValueError):
    pass


class ExperimentError(RuntimeError):
    """A single (scenario, mechanism, point, trial) run failed."""


@dataclass
class ExperimentConfig:
    scenarios: Tuple[str, ...] = ("uniform",)
    mechanisms: Tuple[str, ...] = MECHANISMS
    n_threads: int = 50
    m_objects: int = 50
    densities: Tuple[float, ...] = (0.05,)
    nodes: Tuple[int, ...] = ()
    trials: int = 100
    base_seed: int = 0
    popular_fraction: float = 0.2
    boost: float = 4.0

    def __post_init__(self):
        self.scenarios = tuple(self.scenarios)
        self.mechanisms = tuple(self.mechanisms)
        self.densities = tuple(float(d) for d in self.densities)
        self.nodes = tuple(int(k) for k in self.nodes)
        for s in self.scenarios:
            if s not in SCENARIOS:
                raise ConfigError(f"unknown scenario {s!r}")
        for mech in self.mechanisms:
            if mech not in MECHANISMS and mech != OFFLINE:
                raise ConfigError(f"unknown mechanism {mech!r}")
        if not self.scenarios or not self.densities:
            raise ConfigError("scenario and density lists must be non-empty")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if any(not 0.0 <= d <= 1.0 for d in self.densities):
            raise ConfigError("densities must lie in [0, 1]")
        if self.nodes and len(self.densities) != 1:
            raise ConfigError("a node sweep takes exactly one density")
        if any(k < 1 for k in self.nodes) or self.n_threads < 1 or self.m_objects < 1:
            raise ConfigError("thread/object counts must be >= 1")
        if not 0.0 < self.popular_fraction < 1.0 or self.boost < 1.0:
            raise ConfigError("need 0 < popular_fraction < 1 and boost >= 1")

    def points(self) -> List[Tuple[int, int, float]]:
        """Sweep points as ``(n_threads, m_objects, density)``."""
        if self.nodes:
            return [(k, k, self.densities[0]) for k in self.nodes]
        return [(self.n_threads, self.m_objects, d) for d in self.densities]


_LIST_KEYS = {"scenarios", "mechanisms", "densities", "nodes"}
_ALIASES = {"scenario": "scenarios", "mechanism": "mechanisms", "density": "densities",
            "threads": "n_threads", "objects": "m_objects", "seed": "base_seed"}


def parse_config(text: str) -> ExperimentConfig:
    """Read ``key = value`` lines; lists are comma-separated."""
    kwargs: Dict[str, object] = {}
    types = {f: type(v) for f, v in asdict(ExperimentConfig()).items()}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        key = _ALIASES.get(key, key)
        if not sep or key not in types:
            raise ConfigError(f"line {lineno}: unrecognised entry {raw.strip()!r}")
        value = value.strip()
        try:
            if key in _LIST_KEYS:
                items = [v.strip() for v in value.split(",") if v.strip()]
                if key == "densities":
                    kwargs[key] = tuple(float(v) for v in items)
                elif key == "nodes":
                    kwargs[key] = tuple(int(v) for v in items)
                else:
                    kwargs[key] = tuple(items)
            else:
                kwargs[key] = types[key](value)
        except ValueError:
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from None
    return ExperimentConfig(**kwargs)


@dataclass(frozen=True)
class ExperimentRecord:
    scenario: str
    mechanism: str
    n_threads: int
    m_objects: int
    density: float
    seed: int
    edge_count: int
    clock_size: int

    def row(self) -> Tuple:
        return (self.scenario, self.mechanism, self.n_threads, self.m_objects,
                f"{self.density:g}", self.seed, self.edge_count, self.clock_size)


def make_graph(scenario: str, n: int, m: int, density: float, seed: int,
               popular_fraction: float = 0.2, boost: float = 4.0):
    if scenario == "uniform":
        return gen_uniform(n, m, density, seed)
    if scenario == "nonuniform":
        return gen_nonuniform(n, m, density, popular_fraction, boost, seed)
    raise ConfigError(f"unknown scenario {scenario!r}")


def clock_size(trace: Trace, mechanism: str, seed: int) -> int:
    if mechanism == OFFLINE:
        return len(offline_clock(trace))
    mech = Mechanism(mechanism, mechanism_seed(seed) if mechanism == "random" else None)
    return len(run_online(trace, mech, stamp=False).components)


def run_trial(cfg: ExperimentConfig, scenario: str, point: Tuple[int, int, float],
              trial: int) -> List[ExperimentRecord]:
    n, m, density = point
    seed = cfg.base_seed + trial
    g = make_graph(scenario, n, m, density, seed, cfg.popular_fraction, cfg.boost)
    trace = graph_to_trace(g, order_seed(seed))
    out = []
    for mech in (OFFLINE,) + tuple(x for x in cfg.mechanisms if x != OFFLINE):
        try:
            size = clock_size(trace, mech, seed)
        except Exception as exc:
            raise ExperimentError(
                f"{scenario}/{mech} n={n} m={m} density={density:g} seed={seed}: {exc}") from exc
        out.append(ExperimentRecord(scenario, mech, n, m, density, seed, len(g.edges), size))
    return out


def _sort_key(r: ExperimentRecord):
    return (r.scenario, r.mechanism, r.n_threads, r.m_objects, r.density, r.seed)


def run_experiment(cfg: ExperimentConfig, n_jobs: int = 1) -> List[ExperimentRecord]:
    jobs = [(s, p, k) for s in cfg.scenarios for p in cfg.points() for k in range(cfg.trials)]
    if n_jobs == 1:
        chunks = [run_trial(cfg, *job) for job in jobs]
    else:
        from joblib import Parallel, delayed
        chunks = Parallel(n_jobs=n_jobs)(delayed(run_trial)(cfg, *job) for job in jobs)
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=_sort_key)
    return records


def records_to_csv(records: Iterable[ExperimentRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def read_records(text: str) -> List[ExperimentRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError("not an experiment CSV (header mismatch)")
    return [ExperimentRecord(r[0], r[1], int(r[2]), int(r[3]), float(r[4]), int(r[5]),
                             int(r[6]), int(r[7])) for r in rows[1:]]


@dataclass
class PointSummary:
    scenario: str
    mechanism: str
    n_threads: int
    m_objects: int
    density: float
    sizes: List[int] = field(default_factory=list)
    edges: List[int] = field(default_factory=list)

    @property
    def mean(self) -> float:
        return float(np.mean(self.sizes))

    def row(self) -> Tuple:
        return (self.scenario, self.mechanism, self.n_threads, self.m_objects,
                f"{self.density:g}", len(self.sizes), f"{np.mean(self.edges):.4f}",
                f"{np.mean(self.sizes):.4f}", f"{np.std(self.sizes):.4f}")


def summarize(records: Sequence[ExperimentRecord]) -> Dict[Tuple, PointSummary]:
    """Per-point means, keyed by ``(scenario, mechanism, n, m, density)``.

    Two derived baselines are added per point: ``naive-min`` is
    ``min(n_threads, m_objects)`` (every declared thread or object becomes a
    component) and ``naive-min-active`` is the per-trial minimum of the
    ``naive-threads`` and ``naive-objects`` rows, which only count vertices
    that actually appear.
    """
    out: Dict[Tuple, PointSummary] = {}

    def bucket(r: ExperimentRecord, mech: str) -> PointSummary:
        key = (r.scenario, mech, r.n_threads, r.m_objects, r.density)
        if key not in out:
            out[key] = PointSummary(*key)
        return out[key]

    naive: Dict[Tuple, Dict[str, int]] = {}
    seen = set()
    for r in records:
        b = bucket(r, r.mechanism)
        b.sizes.append(r.clock_size)
        b.edges.append(r.edge_count)
        trial_key = (r.scenario, r.n_threads, r.m_objects, r.density, r.seed)
        if trial_key not in seen:
            seen.add(trial_key)
            nb = bucket(r, "naive-min")
            nb.sizes.append(min(r.n_threads, r.m_objects))
            nb.edges.append(r.edge_count)
        if r.mechanism in ("naive-threads", "naive-objects"):
            naive.setdefault(trial_key, {})[r.mechanism] = (r.clock_size, r.edge_count)
    for (scenario, n, m, density, _), sizes in sorted(naive.items()):
        if len(sizes) == 2:
            key = (scenario, "naive-min-active", n, m, density)
            b = out.setdefault(key, PointSummary(*key))
            b.sizes.append(min(size for size, _ in sizes.values()))
            b.edges.append(next(iter(sizes.values()))[1])
    return out


def summary_to_csv(summary: Dict[Tuple, PointSummary]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_HEADER)
    for key in sorted(summary):
        w.writerow(summary[key].row())
    return buf.getvalue()


def dominance_violations(records: Sequence[ExperimentRecord]) -> List[Tuple[ExperimentRecord, ExperimentRecord]]:
    """Offline rows exceeding any mechanism row of the same trial."""
    by_trial: Dict[Tuple, List[ExperimentRecord]] = {}
    for r in records:
        by_trial.setdefault((r.scenario, r.n_threads, r.m_objects, r.density, r.seed), []).append(r)
    bad = []
    for rows in by_trial.values():
        offline = [r for r in rows if r.mechanism == OFFLINE]
        for off in offline:
            for r in rows:
                if r.mechanism != OFFLINE and off.clock_size > r.clock_size:
                    bad.append((off, r))
    return bad


def mean_size(records: Sequence[ExperimentRecord], scenario: str, mechanism: str,
              n: int, m: int, density: float) -> float:
    sizes = [r.clock_size for r in records
             if r.scenario == scenario and r.mechanism == mechanism and r.n_threads == n
             and r.m_objects == m and math.isclose(r.density, density)]
    if not sizes:
        raise KeyError((scenario, mechanism, n, m, density))
    return float(np.mean(sizes))
