"""Size-optimal mixed thread/object vector clocks."""

from .bigraph import (BipartiteGraph, Matching, PreconditionError, VertexCover, is_vertex_cover,
                      max_matching, min_vertex_cover)
from .clock import (ComponentSet, CoverageError, MixedClock, StampedTrace, offline_clock, stamp,
                    validate, vc_less)
from .online import MECHANISMS, Mechanism, OnlineState, reveal, run_online
from .trace import (Event, Trace, TraceFormatError, build_bigraph, gen_nonuniform, gen_uniform,
                    graph_to_trace, oracle, read_trace, write_trace)

__version__ = "0.1.0"
