"""Python interface to the deltoid map (x, y) -> (y^2 - 2x, x^2 - 2y)."""

from ._deltoid import (
    DivisionByZero,
    DomainError,
    EndpointMismatch,
    Error,
    InvalidTolerance,
    IoError,
    LiftAmbiguity,
    ParseError,
    apply_f,
    chebyshev_lift,
    deltoid_residual,
    format_complex,
    gamma,
    generator_permutations,
    green,
    green_iterative,
    in_K,
    julia_verdict,
    parse_complex,
    pedal_point,
    point_from_tangents,
    preimages,
    relation_report,
    render,
    render_ppm,
    sample_pedal_cloud,
    tangent_parameters,
    verify,
    word_permutation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
