from .localization import localize_b1zero, localize_general, localization_expression
from .outcome import RuleOutcome, apply_outcome
from .rules import (
    change_splitting,
    change_splitting_spinc,
    check_identities,
    degree_relations,
    identity_outcome,
    normalize_splitting,
    odd_vanishing,
    psc_rule,
    spin_rule,
    wall_cross,
)
from .sums import FiberSumError, GluingError, connected_sum, elliptic_chain, fiber_sum, self_sum

__all__ = [
    "RuleOutcome", "apply_outcome", "change_splitting", "change_splitting_spinc", "check_identities",
    "connected_sum", "degree_relations", "elliptic_chain", "fiber_sum", "FiberSumError", "GluingError",
    "identity_outcome", "localization_expression", "localize_b1zero", "localize_general",
    "normalize_splitting", "odd_vanishing", "psc_rule", "self_sum", "spin_rule", "wall_cross",
]
