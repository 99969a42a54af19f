"""Median-of-means distance weighted persistence."""

from ._core import (
    MomdistError,
    __version__,
    bottleneck,
    default_parameters,
    experiment_names,
    gen_circle,
    gen_matern,
    lambert_w0,
    momdist,
    momdist_diagram,
    radius_h,
    radius_p,
    run_experiment,
    select_q,
    weighted_rips_diagram,
    weights,
)

__all__ = [
    "MomdistError",
    "__version__",
    "bottleneck",
    "default_parameters",
    "experiment_names",
    "gen_circle",
    "gen_matern",
    "lambert_w0",
    "momdist",
    "momdist_diagram",
    "radius_h",
    "radius_p",
    "run_experiment",
    "select_q",
    "weighted_rips_diagram",
    "weights",
]
