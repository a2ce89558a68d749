"""Python interface to the municlust clustering toolkit."""

import json as _json

from ._municlust import (  # noqa: F401
    ClusterAssignment,
    Dendrogram,
    DistanceMatrix,
    FeatureMatrix,
    GapResult,
    InvalidInput,
    KMeansResult,
    Linkage,
    LowessFit,
    Merge,
    Metric,
    NumericError,
    RegressionFit,
    SilhouetteResult,
    cut_dendrogram,
    dbscan,
    distance,
    distance_matrix,
    gap_statistic,
    hierarchical,
    kendall,
    kmeans,
    linear_regression,
    lowess,
    pearson,
    pooled_within_dispersion,
    select_k_elbow,
    select_k_gap,
    select_k_silhouette,
    silhouette,
    spearman,
    ssw,
    standardize,
    strength_label,
    synthesize,
)
from ._municlust import run_analysis_json as _run_analysis_json


def run_analysis(config, X):
    """Run the full correlate/regress/cluster/validate pipeline.

    config is a dict mirroring the CLI options; returns the report dict.
    """
    return _json.loads(_run_analysis_json(_json.dumps(config), X))
