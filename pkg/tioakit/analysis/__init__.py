"""
Game based analysis of specifications: consistency, pruning, refinement and bisimulation.
"""

from tioakit.analysis.base import StateSet
from tioakit.analysis.consistency import (consistency, consistent_states, controllable_predecessors, error_states,
                                          immediate_errors, inconsistent_states, is_implementation,
                                          is_locally_consistent, prune_adversarial)
from tioakit.analysis.simulation import SimulationGame, bisimilar, refinement
