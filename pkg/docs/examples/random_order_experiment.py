"""
Run Greedy-DP and the random-order LP algorithm on a few random instances
and print their ratio reports.
"""

import sys

from stochmatch import (
    EXACT,
    GREEDY_DP,
    ROM,
    ROM_LP,
    ExperimentConfig,
    InstanceParams,
    generateRandomInstance,
    runExperiment,
)
from stochmatch._harness import writeReports

reports = []
for seed in range(3):
    g = generateRandomInstance(InstanceParams(3, 4, patience=(1, 2)), seed)
    for algorithm in (GREEDY_DP, ROM_LP):
        config = ExperimentConfig(
            "random-{}".format(seed), algorithm, ROM, mode=EXACT
        )
        reports.append(runExperiment(g, config))

writeReports(reports, sys.stdout)
