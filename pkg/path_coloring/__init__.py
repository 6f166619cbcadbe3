"""Distance coloring of paths with precoloring and color demands: solvers, verifiers and reductions."""
