"""
Region graph oracle: explicit, brute force versions of the analyses
for automata small enough to enumerate their regions.
"""

from tioakit.oracle.checks import (MAX_CLOCKS, MAX_CONSTANT, check_size, discrete_transitions, inconsistent_nodes,
                                   oracle_bisim, oracle_consistency, oracle_refinement, prune, reachable_labels,
                                   region_graph)
from tioakit.oracle.generate import default_seed, random_tioa
from tioakit.oracle.regions import all_keys, region_key, representative, time_successor
from tioakit.oracle.systems import (AutomatonSystem, BaseSystem, CompositionSystem, ConjunctionSystem, PrunedSystem,
                                    QuotientSystem)
