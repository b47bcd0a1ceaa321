"""Local independence graphs: mu-separation, faithfulness checks and structure learning."""

from ._localind import (
    ExplicitModel,
    EmpiricalModel,
    Graph,
    GraphOracleModel,
    IndependenceModel,
    RestrictedModel,
    __version__,
    ancestors,
    conditions_hierarchy,
    connecting_walk,
    edge_transitive_graph,
    find_perfect_map,
    granger_f_test,
    graph_order,
    is_faithful,
    is_k_faithful,
    is_subgraph,
    is_transitively_closed,
    latent_projection,
    learn,
    mu_separated,
    mu_separated_oracle,
    pair_order,
    restrict_to_observed,
    run_comparison,
    sample_graph,
    sample_var_system,
    simulate_var,
    spectral_radius,
    trim,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
