"""Fair re-ranking of recommendation lists under provider exposure targets."""

from ._tfrom import (
    Error,
    Instance,
    OnlineRecommender,
    all_random,
    dcg,
    exposure,
    fair_targets,
    generate_synthetic,
    load_instance,
    minimum_exposure,
    ndcg,
    online_total_exposure,
    original_ranking,
    position_weight,
    run_offline,
    run_online,
    tfrom_offline,
    top_k,
    total_exposure,
)

__all__ = [
    "Error",
    "Instance",
    "OnlineRecommender",
    "all_random",
    "dcg",
    "exposure",
    "fair_targets",
    "generate_synthetic",
    "load_instance",
    "minimum_exposure",
    "ndcg",
    "online_total_exposure",
    "original_ranking",
    "position_weight",
    "run_offline",
    "run_online",
    "tfrom_offline",
    "top_k",
    "total_exposure",
]
