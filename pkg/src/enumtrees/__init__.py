"""Exact enumeration of the rationals through free monoids of Moebius maps,
with height counting and orbit-density experiments on P^1(Q)."""
from .core import INF, BudgetExceeded, PreconditionError, ProjPoint, Rational, format_rational, parse_rational
from .monoid import L, R, IDENTITY, Mat2, compose_word, decompose, omega, omega_inverse, solve_diophantine
from .tree import bfs_rationals, fusc, index_to_rational, newman_next, rational_to_index, tree_path
from .chan import gk_family, hk_family, verify_partition
from .maps import RationalMap, eval_map, parse_family, parse_map
from .heights import count_points_up_to, density_estimate, height, log_height, schanuel_constant
from .orbit import Family, check_injectivity, expand_orbit, find_escape_depth, growth_check

__version__ = "0.1.0"
