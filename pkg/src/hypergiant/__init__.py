"""Hyperbolic random graphs, half-plane continuum percolation, and the
giant-component constant.

The package samples the two-parameter disk model and its Poissonized variant,
simulates the exponential-intensity half-plane process whose graph locally
approximates the disk model near its boundary, and estimates the percolation
probability of a planted point, the giant-component constant, and the critical
intensity bracket at alpha = 1.
"""

from .continuum import (
    BoxIndex,
    ContinuumParams,
    ContinuumSample,
    LayeredPoint,
    LayeredProcess,
    Window,
    box_index,
    estimate_event,
    event_C,
    event_T,
    event_U,
    EventEstimate,
    expected_box_count,
    explore_rightmost,
    gamma_graph,
    gamma_graph_torus,
    mecke_check,
    sample_continuum,
    sample_layered,
    sample_layered_process,
)
from .coupling import (
    EdgeAgreementReport,
    StripPoint,
    edge_agreement,
    psi,
    psi_inverse,
    strip_intensity,
    strip_points_csv,
)
from .errors import DomainError, EstimationError
from .estimators import (
    CEstimate,
    LambdaBracket,
    ThetaEstimate,
    ThetaProxyConfig,
    bracket_lambda_c,
    c_of,
    estimate_theta,
    lln_experiment,
)
from .geometry import (
    HalfPlanePoint,
    KpkvbParams,
    PolarPoint,
    appendix_bounds_check,
    delta_scaled,
    hyperbolic_distance,
    radius_R,
    sample_radius,
    threshold_angle,
)
from .graphs import ComponentSummary, Graph, components
from .kpkvb import (
    VertexSet,
    build_graph,
    degree_tail_exponent,
    sample_vertices,
    sample_vertices_poissonized,
)

__version__ = "0.1.0"

__all__ = [
    "BoxIndex", "CEstimate", "ComponentSummary", "ContinuumParams",
    "ContinuumSample", "DomainError", "EdgeAgreementReport", "EstimationError",
    "Graph", "HalfPlanePoint", "KpkvbParams", "LambdaBracket", "LayeredPoint",
    "LayeredProcess", "PolarPoint", "StripPoint", "ThetaEstimate",
    "ThetaProxyConfig", "VertexSet", "Window", "appendix_bounds_check",
    "box_index", "bracket_lambda_c", "build_graph", "c_of", "components",
    "degree_tail_exponent", "delta_scaled", "edge_agreement", "estimate_event", "estimate_theta",
    "EventEstimate", "event_C", "event_T", "event_U", "expected_box_count", "explore_rightmost",
    "gamma_graph", "gamma_graph_torus", "hyperbolic_distance", "lln_experiment",
    "mecke_check", "psi", "psi_inverse", "radius_R", "sample_continuum",
    "sample_layered", "sample_layered_process", "sample_radius",
    "sample_vertices", "sample_vertices_poissonized", "strip_intensity", "strip_points_csv",
    "threshold_angle",
]
