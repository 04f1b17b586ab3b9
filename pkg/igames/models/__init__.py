# Immutable domain values, run records and the finite-game model
