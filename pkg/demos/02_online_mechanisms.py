"""
Choosing components online
==========================

When events arrive one at a time the clock can only grow.  Compare the
four mechanisms against the offline optimum on a random workload.
"""

from mixclock import MECHANISMS, Mechanism, gen_nonuniform, graph_to_trace, offline_clock, run_online, validate

g = gen_nonuniform(30, 30, density=0.05, popular_fraction=0.2, boost=4.0, seed=3)
trace = graph_to_trace(g, seed=3)
print(f"{len(trace)} events over {len(g.active_threads())} threads / {len(g.active_objects())} objects")
print(f"offline optimum: {len(offline_clock(trace))}")

for kind in MECHANISMS:
    res = run_online(trace, Mechanism(kind, seed=1 if kind == "random" else None))
    print(f"{kind:>14}: {len(res.components):3d} components, valid={validate(res.stamped).passed}")

# The decision log shows which endpoint each mechanism added and when.
res = run_online(trace, Mechanism("popularity"))
print(res.decision_log().splitlines()[:5])
