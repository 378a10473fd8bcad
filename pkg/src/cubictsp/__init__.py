"""Graph-TSP approximations on cubic bipartite and cubic graphs."""

from .certify import build_alpha_certificate, check_certificate
from .factor import Cycle, TwoFactor, initial_two_factor
from .gen import fixture, random_cubic_bipartite
from .graph import Graph, Multigraph, validate_cubic_bipartite
from .improve import run_local_improvement
from .tour import Tour, build_tour_from_factor, solve_bipartite

__all__ = [
    "Cycle",
    "Graph",
    "Multigraph",
    "Tour",
    "TwoFactor",
    "build_alpha_certificate",
    "build_tour_from_factor",
    "check_certificate",
    "fixture",
    "initial_two_factor",
    "random_cubic_bipartite",
    "run_local_improvement",
    "solve_bipartite",
    "validate_cubic_bipartite",
]
