"""
Clock size versus graph density
===============================

Averages over random graphs at 50 threads and 50 objects.  Sparse graphs
favour the adaptive mechanisms; dense ones favour a plain thread clock.
Pass a trial count as the first argument (default 20).
"""

import sys

from mixclock.experiment import ExperimentConfig, run_experiment, summarize

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20
cfg = ExperimentConfig(scenarios=("uniform", "nonuniform"), densities=(0.01, 0.02, 0.05, 0.1, 0.2, 0.3),
                       trials=trials)
summary = summarize(run_experiment(cfg))

mechs = ("offline", "naive-min", "random", "popularity")
for scenario in cfg.scenarios:
    print(scenario)
    print("  density " + "".join(f"{m:>12}" for m in mechs))
    for _, _, d in cfg.points():
        row = "".join(f"{summary[(scenario, m, 50, 50, d)].mean:12.1f}" for m in mechs)
        print(f"  {d:7g} {row}")
