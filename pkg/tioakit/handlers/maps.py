"""
Stores Handler maps to be used by tioa-kit.

We store these in a separate file to resolve circular import dependencies!
Here is a list of the following maps:

    * SYMBOLIC - Zone based handlers for every query kind
    * ORACLE - Region graph handlers for refinement, consistency and bisimulation
    * DEFAULT_MAP - Default handler map, the symbolic one
    * ORACLE_MAP - Map used for cross-checking
"""

from tioakit.handlers import queries


SYMBOLIC = (
    queries.Refinement(),
    queries.Consistency(),
    queries.Implementation(),
    queries.LocalConsistency(),
    queries.Bisimulation(),
    queries.Get(),
    queries.PruneHandler(),
)

ORACLE = {
    0: queries.OracleRefinement(),
    1: queries.OracleConsistency(),
    4: queries.OracleBisimulation(),
}

DEFAULT_MAP = (SYMBOLIC)
ORACLE_MAP = (ORACLE)
