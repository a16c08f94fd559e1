"""Finite racks and quandles: subrack lattices, corresponding quandles,
(s,t)-racks over Z_n and quandle colorings of knot diagrams."""

from racklab.core import (
    MagmaTable,
    Rack,
    RackError,
    NotSelfDistributive,
    RowNotBijective,
    MalformedTable,
    ParameterViolation,
    validate_rack,
    translation,
    inverse_translation,
    conjugation_identity_check,
    is_homomorphism,
    build_trivial,
    build_permutation_rack,
    build_dihedral,
    build_core,
    build_alexander,
    build_st_rack,
    build_parity_shift,
    build_partition_rack,
    rack_from_json,
)
from racklab.lattice import (
    Subrack,
    SubrackLattice,
    CapExceeded,
    atom_of,
    atoms,
    orbits,
    generate_subrack,
    enumerate_subracks,
    join,
    meet,
    is_atomic,
    is_distributive,
    lattice_isomorphism_check,
)
from racklab.quandles import (
    CorrespondingQuandle,
    WellDefinednessViolation,
    corresponding_quandle,
    is_trivial_quandle,
    distributive_via_quandle,
    iota,
    iota_quandle,
    subrack_inclusion_report,
)
from racklab.strack import (
    STParams,
    laurent_identity_check,
    st_power,
    st_atom,
    zero_class_identity,
    non_alexander_certificate,
    class_op_closed_form,
)
from racklab.knots import (
    Crossing,
    KnotDiagram,
    DiagramError,
    NotAQuandle,
    parse_diagram,
    count_colorings,
    has_nontrivial_coloring,
    distinguish,
)

__version__ = "0.1.0"
