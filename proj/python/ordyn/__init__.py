"""Numerical lab for translation dynamics on weighted Orlicz spaces.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from ._core import (  # noqa: F401
    CapacityError,
    DivergenceError,
    DomainError,
    GroupPoint,
    GroupSpace,
    NormResult,
    ParseError,
    PointSet,
    PreconditionError,
    SimpleFunction,
    Weight,
    YoungFunction,
    __version__,
    abelian_obstruction_check,
    aperiodicity_window,
    blowup_collapse_probe,
    chaos_certificate,
    criterion_quantity,
    criterion_quantity_direct,
    delta2_probe,
    dual_ball_oracle,
    is_torsion,
    luxemburg_norm,
    mixing_certificate,
    modular,
    norm_equivalence_check,
    operator_norm_bound,
    orbit,
    orbit_hit,
    orlicz_norm,
    periodic_point,
    presets,
    run,
    run_json,
    tabulate_conjugate,
    transitivity_certificate,
    translate,
    validate_weight,
    weighted_norm,
)
