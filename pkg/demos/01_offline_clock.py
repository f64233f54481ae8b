"""
Offline mixed clock on a small computation
==========================================

Four threads share four objects.  A thread-based clock needs four
components, so does an object-based one.  Every operation, however,
touches thread 2, object 2 or object 3, so three components suffice.
"""

from mixclock import (Trace, build_bigraph, max_matching, min_vertex_cover, offline_clock, stamp,
                      validate)

# (thread, object) per operation, in the order they happen; ids start at 1
pairs = [(2, 1), (2, 3), (3, 3), (1, 2), (1, 3), (3, 2), (2, 4), (4, 2), (4, 3)]
trace = Trace.from_pairs(pairs, n_threads=5, m_objects=5)

# The interaction graph drops repeats: one edge per (thread, object) pair.
g = build_bigraph(trace)
print("edges:", sorted(g.edges))

# Maximum matching, then the König cover built from it.
m = max_matching(g)
cover = min_vertex_cover(g, m)
print("matching:", sorted(m.pairs))
print("cover threads:", sorted(cover.thread_members), "objects:", sorted(cover.object_members))

# offline_clock wraps both steps and orders the result (threads, then objects).
components = offline_clock(trace)
print("components:", list(components))

# Timestamp every event and compare against happened-before.
st = stamp(trace, components)
for e, v in zip(trace.events, st.stamps):
    print(f"  T{e.thread} O{e.object}  {v.dense()}")
print("valid:", validate(st).passed)
