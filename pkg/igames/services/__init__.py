# Solver, cost, vehicle and simulation services
