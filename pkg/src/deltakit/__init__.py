"""deltakit: finite combinatorial checks for simplex categories, Segal
conditions, nerve filtrations, and bimodule tensor calculus over finite
ground rings."""

__version__ = "0.1.0"
