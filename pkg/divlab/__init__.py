"""divlab: division polynomials, heights, local-global divisibility bounds and a worked pseudodivisible point."""

__version__ = "1.0.0"
