"""Work-efficient parallel fixed-parameter algorithms for vertex cover."""

from .branching import (
    BranchingFamily,
    branching_number,
    family,
    family_branching_number,
    predicted_depth_bound,
)
from .cost import NodeCost
from .engine import RunConfig, RunMetrics, Verdict, estimate_wall_time, run, verify_witness
from .generators import generate_instance, gnp, planted_vc
from .graph import Graph, Instance, ParseError, delete_vertices, parse_dimacs
from .kernels import BUSS, LP, Cascade, buss_kernel, cascade, lp_kernel
from .matching import maximal_matching, maximal_set_packing, maximum_bipartite_matching
from .oracle import brute_force_vc
from .rules import b_one, b_star, solve_degree_two, vc_degree_rule, vc_edge_rule, vc_matching_rule

__version__ = "0.1.0"
