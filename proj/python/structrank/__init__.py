"""Unsupervised scoring and ranking of structural node embeddings.

The heavy lifting lives in the compiled extension `structrank._core`; this
package re-exports its public surface.
"""

from structrank._core import (
    Graph,
    battery_feature_names,
    convergence_study,
    evaluate,
    extended_battery,
    feature,
    fixed_embedding,
    generate_synthetic,
    load_embedding,
    random_embedding,
    rank,
    __version__,
)

__all__ = [
    "Graph",
    "battery_feature_names",
    "convergence_study",
    "evaluate",
    "extended_battery",
    "feature",
    "fixed_embedding",
    "generate_synthetic",
    "load_embedding",
    "random_embedding",
    "rank",
    "__version__",
]
