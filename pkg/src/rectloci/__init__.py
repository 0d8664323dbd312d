"""Rectangle loci of pairs of lines in the plane."""

from .catalog import CatalogEntry, LineSet4, PairingLabel, catalog_loci, enumerate_pairings, single_pair_locus
from .cone import (
    Chord,
    Ellipse,
    GeneratingLines,
    HRCone,
    LinePair,
    Slab,
    cone_from_angles,
    cone_through_ellipse,
    generating_lines,
    level_curve,
    midpoint_chord,
    surface_from_pair,
    surface_height_sq,
)
from .geom import (
    Affine,
    ConicCoeffs,
    ConicKind,
    Line,
    Point2,
    RigidMotion,
    SymMat2,
    classify_conic,
    eig_sym2,
    sqrt_spd,
)
from .locus import (
    DegenerateHyperbola,
    DifferenceForm,
    EmptySet,
    FullPlane,
    Hyperbola,
    InscribedRectangle,
    LineMinusOpenSegment,
    LocusClass,
    SinglePoint,
    WholeLine,
    compute_locus,
    difference_form,
    locus_equal,
    membership_residual,
    rectangle_at,
    transform_locus,
)
from .metric import InnerProduct, locus_in_metric, transform_pair
from .oracle import OracleReport, ScanWindow, brute_rectangle_search, verify_locus, verify_single_pair
from .realization import (
    ConePairRealization,
    HyperbolaSpec,
    RealizationParams,
    build_cone_pair,
    normalize_hyperbola,
    params_on_constraint,
    realize,
    sample_parameter_surface,
)

__version__ = "0.1.0"
