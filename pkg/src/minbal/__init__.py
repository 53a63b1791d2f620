"""Min-balanced coalition systems and facet catalogues of game cones.

Exact-rational tooling for transferable-utility games: enumeration and
classification of min-balanced set systems, irreducibility testing, the
facet-inequality catalogues of the balanced / totally balanced /
(conjecturally) exact cones, and certificate-producing membership
oracles.
"""

from .balance import (
    InequalityVector,
    MinBalancedSystem,
    SetSystem,
    canonical_type,
    complement_system,
    enumerate_min_balanced,
    is_min_balanced,
    normalize,
    system_of,
)
from .catalogue import (
    Catalogue,
    CatalogueEntry,
    ConeKind,
    classify,
    generate,
    parse,
    render_inequality,
    serialize,
)
from .cones import (
    CoreAllocation,
    FailingSubgame,
    InfeasibleCore,
    NoTightAllocation,
    TightAllocationTable,
    Verdict,
    ViolatedSystem,
    conjugate,
    delta_contains,
    is_balanced,
    is_exact,
    is_totally_balanced_facets,
    is_totally_balanced_lp,
    theta_contains,
)
from .games import (
    Game,
    GameFormatError,
    Players,
    SetFunction,
    anti_dual,
    dirac,
    game_from_json,
    game_of,
    game_to_json,
    inner,
    is_modular,
    is_o_standardized,
    letters,
    modular_from_payoffs,
    random_game,
    reflect,
    restrict,
    set_function_of,
    shift,
    tabulate,
    unanimity,
)
from .linalg import DimensionError, FeasibilityResult, conic_feasible, lp_feasible, rank, solve_unique
from .reduction import Decomposition, ReductionWitness, decompose, is_reducible

__version__ = "0.1.0"

__all__ = [
    "Catalogue",
    "CatalogueEntry",
    "ConeKind",
    "CoreAllocation",
    "Decomposition",
    "DimensionError",
    "FailingSubgame",
    "FeasibilityResult",
    "Game",
    "GameFormatError",
    "InequalityVector",
    "InfeasibleCore",
    "MinBalancedSystem",
    "NoTightAllocation",
    "Players",
    "ReductionWitness",
    "SetFunction",
    "SetSystem",
    "TightAllocationTable",
    "Verdict",
    "ViolatedSystem",
    "anti_dual",
    "canonical_type",
    "classify",
    "complement_system",
    "conic_feasible",
    "conjugate",
    "decompose",
    "delta_contains",
    "dirac",
    "enumerate_min_balanced",
    "game_from_json",
    "game_of",
    "game_to_json",
    "generate",
    "inner",
    "is_balanced",
    "is_exact",
    "is_min_balanced",
    "is_modular",
    "is_o_standardized",
    "is_reducible",
    "is_totally_balanced_facets",
    "is_totally_balanced_lp",
    "letters",
    "lp_feasible",
    "modular_from_payoffs",
    "normalize",
    "parse",
    "random_game",
    "rank",
    "reflect",
    "render_inequality",
    "restrict",
    "serialize",
    "set_function_of",
    "shift",
    "solve_unique",
    "system_of",
    "tabulate",
    "theta_contains",
    "unanimity",
]
