# Finite-game equilibrium solvers and the intersection simulator built on them
__version__ = "1.0.0"
