"""Anti-Ramsey colorings of complete p-graphs for cancellative configurations."""
from .hypercore import (
    Coloring,
    build_coloring,
    edge_rank,
    edge_unrank,
    load_coloring,
    monochromatic,
    rainbow,
    save_coloring,
)
from .patterns import (
    PatternWitness,
    find_rainbow,
    find_rainbow_cancellative,
    find_rainbow_O,
    find_rainbow_p3,
    find_rainbow_star,
    find_rainbow_T,
    has_rainbow_triangle,
    link_graph,
)
from .designs import TripleSystem, build_mpsts, build_sts, schonheim, validate_psts
from .constructions import (
    build_cancellative_extremal,
    build_mpsts_coloring,
    build_pg_coloring,
    generate_gallai,
)
from .solver import Budget, SolveResult, solve_anti_ramsey, verify_optimal_structure

__version__ = "0.1.0"
