"""Exact multiplier groups and symmetry witnesses for quasiperiodic torus flows."""

from .errors import QPError
from .numberfield import FieldElement, NumberField, make_field, signature
from .lattice import FLattice, Order, coefficient_ring, contains, lattice_from_generators, mul_preserves
from .units import UnitGroup, quadratic_fundamental_unit, unit_group, verify_supplied_unit
from .multiplier import (
    Flow,
    FlowSpec,
    Multiplier,
    MultiplierGroup,
    SymmetryReport,
    brute_force_multipliers,
    classify,
    frequency_lattice,
    multiplier_group,
    multiplier_of_matrix,
    validate_flow,
    witness_matrix,
)
from .conjugacy import conjugacy_witness, scale_equivalence, semiconjugacy_report, semiconjugacy_witness

__version__ = "0.1.0"
