"""Reversible 1D cellular automata: rule algebra, block neighborhoods,
verified block circuits, and time-symmetry machinery."""

from .core import (
    AlphabetMismatch,
    CyclicConfig,
    LocalRule,
    RuleError,
    RuleParseError,
    TableSizeExceeded,
    apply_cyclic,
    apply_cyclic_batch,
    compose,
    eca_rule,
    equal,
    format_rule,
    identity_rule,
    minimize_neighborhood,
    parse_rule,
    product,
    reexpress,
    rule_number,
)
from .reversibility import (
    NeighborhoodReport,
    NotInjective,
    RadiusCapExceeded,
    ReversibleCA,
    invert,
    is_injective,
    neighborhoods,
    power,
)
from .localization import (
    FinitePermutation,
    TrackedCell,
    format_permutation,
    is_localized,
    localization,
    restrict,
    shrink,
    window_span,
)
from .blockrep import (
    BlockCircuit,
    NonIdentityOutsideWindow,
    PaddingDependence,
    PeriodTooSmall,
    ShapeViolation,
    VerificationReport,
    apply_circuit,
    apply_circuit_batch,
    assemble_circuit,
    block_neighborhood,
    bn_upper_bound,
    enumerate_configs,
    format_circuit,
    reversible_update,
    verify_block_representation,
    verify_circuit,
)
from .timesym import (
    NotLTSCA,
    SquareBlockInfo,
    conjugate_block,
    ebr_of_square,
    find_time_symmetries,
    involution_rule,
    involutions,
    is_involution,
    is_ltsca,
    pair_swap,
    square_block_info,
    time_symmetrize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
