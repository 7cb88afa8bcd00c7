"""Sup-norm sticky disk toolkit.

Particles interact through the sticky potential evaluated in the sup norm:
hard core below distance 1, unit reward at exactly 1, nothing beyond.
This package builds the resulting bond graphs, enumerates their faces,
verifies the exact excess-energy decompositions, searches lattice ground
states exhaustively, and runs desk-scale convergence experiments toward
the octagonal anisotropic perimeter.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    AmbiguousPredicate,
    BudgetExceeded,
    DegenerateTarget,
    DegreeExceeded,
    DuplicatePoint,
    Infeasible,
    InvalidSelection,
    InvariantViolation,
    NonFinite,
    NotPlanar,
    NotUnit,
    OutOfRange,
    ParseError,
    SupdiskError,
    ZeroVector,
)
from .geometry import CrossKind, ccw_angle, classify_crossing, sup_dist  # noqa: F401
from .graph import (  # noqa: F401
    BondGraph,
    Configuration,
    Quad,
    build,
    check_admissibility,
    connected_components,
    energy,
)
from .faces import (  # noqa: F401
    BoundaryComponent,
    ComponentRole,
    EdgeClass,
    Face,
    FaceComplex,
    FaceKind,
    RegionSelection,
    boundary_components,
    classify_edges,
    comb_perimeter_region,
    enumerate_faces,
    select_region,
)
from .defects import (  # noqa: F401
    DecompositionReport,
    angular_defect,
    decompose_square,
    decompose_triangular,
    face_defect,
    vertex_excess,
)
from .anisotropy import (  # noqa: F401
    PolygonalSet,
    aniso_perimeter,
    check_face_bound,
    check_region_bound,
    phi,
    phi_length,
    unit_area_wulff,
    wulff_octagon,
)
from .ground_state import (  # noqa: F401
    CrystallizationReport,
    SearchResult,
    brute_force_min,
    monotonicity_check,
    perturbation_test,
    verify_crystallization,
)
from .gamma import (  # noqa: F401
    GammaExperiment,
    compactness_diagnostics,
    directional_density,
    gamma_sweep,
    recovery_sequence,
    rescaled_excess,
    symdiff_area,
)
from .formats import dump_config, make_report, parse_config  # noqa: F401
from .render import RenderOptions, render_svg  # noqa: F401
