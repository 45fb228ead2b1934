"""Scrip-economy toolkit: simulation, steady-state wealth distributions,
threshold best replies and pure-strategy equilibria."""

from ._core import (
    AgentType,
    BestReplyReport,
    ChoiceProbabilities,
    EquilibriumKind,
    EquilibriumResult,
    GameSpec,
    LambdaSolution,
    MoneyDistribution,
    NumericError,
    PolicyResult,
    SpecError,
    StationaryReport,
    TraceSummary,
    base_distribution,
    best_reply_threshold,
    best_reply_vector,
    build_game_spec,
    choice_probabilities,
    default_threshold_cap,
    discounted_ruin_factor,
    distance_l2sq,
    exact_stationary,
    game_spec_from_json,
    greatest_equilibrium,
    mean_money,
    min_relent_distribution,
    money_below_capacity,
    nearest_realizable,
    per_round_discount,
    potential_value,
    relative_entropy,
    rng_name,
    run_experiment,
    simulate,
    solve_lambda,
    value_iteration_policy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
