from .projection import ProjectedPoint, project_tsne
from .xmeans import cluster_xmeans
from .evaluation import (
    EvaluationReport,
    evaluate_clustering,
    js_divergence,
    kl_divergence,
    normalized_histograms,
    time_distribution_report,
)
from .matching import match_role_identities
from .flows import TransitionFlow, compute_flows
from .clusters import RoleCluster, build_role_clusters

__all__ = [
    "ProjectedPoint",
    "project_tsne",
    "cluster_xmeans",
    "EvaluationReport",
    "evaluate_clustering",
    "js_divergence",
    "kl_divergence",
    "normalized_histograms",
    "time_distribution_report",
    "match_role_identities",
    "TransitionFlow",
    "compute_flows",
    "RoleCluster",
    "build_role_clusters",
]
