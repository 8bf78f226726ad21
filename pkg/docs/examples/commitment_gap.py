"""
How much committing costs on a single star, and what the relaxations
make of it.
"""

from stochmatch import (
    buildConfigLP,
    buildStandardLP,
    committalOpt,
    dpOpt,
    embeddedInstance,
    noncommittalOpt,
    solveLinearProgram,
)

g = embeddedInstance("commitment-gap")

policy = dpOpt(g, "v", g.offline)
print(
    "optimal string:",
    " ".join(g.edge(e).label() for e in policy.probeString),
    "worth",
    policy.value,
)

committal = committalOpt(g)
noncommittal = noncommittalOpt(g)
print("committal:", committal)
print("non-committal:", noncommittal)
print("ratio: {:.6f}".format(committal / noncommittal))

for name, lp in [("configuration", buildConfigLP(g)), ("standard", buildStandardLP(g))]:
    print(name, "LP:", solveLinearProgram(lp).objectiveValue)
