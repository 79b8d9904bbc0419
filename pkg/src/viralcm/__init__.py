"""Influence propagation on the enhanced configuration model.

Analytic predictions (critical condition, fixed points, influenced and
pioneer fractions) together with Monte Carlo checks on sampled multigraphs,
continuous-time exploration processes and exact enumeration oracles.
"""

__version__ = "0.1.0"

from .degree_model import (  # noqa: E402
    JointDegreeDistribution,
    MomentSummary,
    Regime,
    criticality,
    g_bar,
    h_bar,
    h_forward,
    H_bar,
    H_forward,
    make_from_table,
    make_thinned_poisson,
    moments,
    pgf_g,
    size_biased,
)
from .theory import TheoryPrediction, branching_extinction, predict, solve_xi, solve_xi_bar  # noqa: E402

__all__ = [
    "JointDegreeDistribution",
    "MomentSummary",
    "Regime",
    "TheoryPrediction",
    "branching_extinction",
    "criticality",
    "g_bar",
    "h_bar",
    "h_forward",
    "H_bar",
    "H_forward",
    "make_from_table",
    "make_thinned_poisson",
    "moments",
    "pgf_g",
    "predict",
    "size_biased",
    "solve_xi",
    "solve_xi_bar",
]
