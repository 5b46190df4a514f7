"""Exact lattice, filtration and polygon invariants over K((t)).

The public surface re-exports the operations of the submodules; see
``latticework.cli`` for the command-line front end.
"""

from .bilattice import (
    BilatticedSpace,
    GoodnessReport,
    GroupShape,
    bb_side,
    bl_dual,
    bl_exterior,
    bl_ord,
    bl_type,
    borel_unipotent_report,
    check_extension_dominance,
    is_good,
    is_strict_bl_map,
)
from .errors import LatticeworkError
from .filtration import (
    Flag,
    bb_filtration,
    dominance_leq,
    dual_flag,
    flag_type,
    is_minuscule,
    is_strict_filtered_map,
    rees_lattice,
    tensor_flag,
)
from .harness import TrialConfig, oracle_type_via_diagonalization, replay, run_suite
from .lattice import (
    CocharType,
    LatticeBasis,
    ResidueSubspace,
    combine,
    contains,
    dual,
    image_mod_t,
    relative_type,
    scale,
    standard_lattice,
)
from .polygon import (
    SlopeVector,
    admissibility_report,
    basic_element,
    compact_mod_center,
    is_basic_for_shape,
    make_slopes,
    mazur_member,
    newton_point,
    polygon_of,
    slope_arith,
    tate_anchor,
)
from .scalar import GF, QQ, LaurentScalar, arith, expand, parse_field, parse_scalar, valuation

__version__ = "0.1.0"
