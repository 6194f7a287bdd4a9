"""
Normalized bandwidth tables
===========================

Fixes the distance and slices the candidate table at a few jitters,
normalizing every (combo, bandwidth) key rate by the best value in its
jitter group. The plateau shapes show how forgiving each medium is to a
bandwidth mismatch.
"""

from qlinkopt import Metric, SweepAxes, build_mosaic, normalized_table

axes = SweepAxes(
    jitter_values=(5e-12, 5e-11, 2e-10),
    distance_values=(100.0,),
)
mosaic = build_mosaic(axes, metric=Metric.ABSOLUTE_SKR)
table = normalized_table(mosaic, 100.0, jitters=(2e-10, 5e-11, 5e-12))

header = "combo         jitter  " + "".join(
    f"{bw:>7g}" for bw in table.bandwidths_ghz
)
print(header)
print("-" * len(header))
for ci, label in enumerate(table.combo_labels):
    for ji, jitter in enumerate(table.jitter_values):
        row = table.values[ji][ci]
        cells = "".join(f"{v:7.3f}" for v in row)
        print(f"{label:12s} {jitter * 1e12:5.0f}ps {cells}")

# each jitter group contains exactly one 1.000: the winning candidate
