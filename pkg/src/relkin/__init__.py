"""Special-relativistic velocity composition.

Lorentz matrix algebra with polar splitting into boost and rotation,
Einstein velocity addition with its Thomas rotation, rational formulas
for the boost linking two observed states, the hyperbolic geometry of
the state space, and a Galilei-Newton module for contrast.
"""

from .minkowski import (
    ETA,
    MATRIX_TOL,
    NORM_TOL,
    four_vector,
    gamma_of_states,
    minkowski_dot,
    minkowski_norm_sq,
    outer,
    projectors,
    relative_velocity,
    state_of_motion,
    wedge,
)
from .lorentz import (
    BETA_MAX,
    PolarFactors,
    boost,
    boost_eigenvalues,
    check_rotation,
    check_velocity,
    compose,
    embed_rotation,
    gamma_of_beta,
    invert,
    is_lorentz,
    jacobi_eigh,
    polar_decompose,
    polar_factors_via_sqrt,
    symmetric_sqrt,
    to_matrix,
    validate_lorentz,
)
from .velocity import (
    GROUP_SIGNATURE,
    LOOP_SIGNATURE,
    MaxThomasAngle,
    ThomasRotation,
    check_benz_conditions,
    check_loop_axioms,
    einstein_add,
    gamma_compose,
    max_thomas_angle,
    sample_velocity,
    signature_matches,
    solve_left,
    thomas_angle_from_gammas,
    thomas_angle_from_phi,
    thomas_rotation,
    velocity_difference,
)
from .boostlink import (
    StateTriple,
    boost_from_velocity,
    geodesic_boost,
    link_boost,
    link_gamma,
    link_velocity,
    state_triple,
    tilt_curve_gamma_star,
    tilt_curve_phi,
    tilt_scan,
)
from .hyperbolic import (
    GeodesicPath,
    boost_exp,
    boost_exp_closed,
    geodesic_between,
    hyperbolic_distance,
    parallel_transport_numeric,
    transport_by_boost,
)
from .galilei import (
    decompose as galilei_decompose,
    galilei_add,
    galilei_boost,
    galilei_link_velocity,
    galilei_state,
    rotation_embed,
    validate_galilei,
)

__version__ = "0.1.0"

__all__ = [
    "ETA",
    "MATRIX_TOL",
    "NORM_TOL",
    "BETA_MAX",
    "four_vector",
    "minkowski_dot",
    "minkowski_norm_sq",
    "state_of_motion",
    "gamma_of_states",
    "relative_velocity",
    "outer",
    "wedge",
    "projectors",
    "PolarFactors",
    "boost",
    "boost_eigenvalues",
    "check_rotation",
    "check_velocity",
    "compose",
    "embed_rotation",
    "gamma_of_beta",
    "invert",
    "is_lorentz",
    "jacobi_eigh",
    "polar_decompose",
    "polar_factors_via_sqrt",
    "symmetric_sqrt",
    "to_matrix",
    "validate_lorentz",
    "ThomasRotation",
    "MaxThomasAngle",
    "einstein_add",
    "gamma_compose",
    "velocity_difference",
    "solve_left",
    "thomas_rotation",
    "thomas_angle_from_phi",
    "thomas_angle_from_gammas",
    "max_thomas_angle",
    "check_loop_axioms",
    "check_benz_conditions",
    "signature_matches",
    "sample_velocity",
    "LOOP_SIGNATURE",
    "GROUP_SIGNATURE",
    "StateTriple",
    "state_triple",
    "link_gamma",
    "link_velocity",
    "link_boost",
    "boost_from_velocity",
    "geodesic_boost",
    "tilt_curve_gamma_star",
    "tilt_curve_phi",
    "tilt_scan",
    "GeodesicPath",
    "boost_exp",
    "boost_exp_closed",
    "hyperbolic_distance",
    "geodesic_between",
    "parallel_transport_numeric",
    "transport_by_boost",
    "galilei_state",
    "galilei_boost",
    "galilei_add",
    "galilei_decompose",
    "galilei_link_velocity",
    "rotation_embed",
    "validate_galilei",
]
