"""Exact shortest covering walks on graphs with near-clique clusters."""

from .clusterdetect import Cluster, ClusterParams, ClusterSet, cluster_stats, detect_clusters, is_valid_cluster
from .coarsening import CoarsePlan, coarsen, decompose_cluster, naive_coarsen
from .graphcore import Graph, Walk, graph_from_edges, metric_closure, validate_closed_walk
from .hamwalk import (
    Solution,
    check_local_expandability,
    expand_walk,
    normalize_bulk_visits,
    oracle_walk_length,
    solve_exact,
    solve_pipeline,
)

__all__ = [
    "Cluster",
    "ClusterParams",
    "ClusterSet",
    "CoarsePlan",
    "Graph",
    "Solution",
    "Walk",
    "check_local_expandability",
    "cluster_stats",
    "coarsen",
    "decompose_cluster",
    "detect_clusters",
    "expand_walk",
    "graph_from_edges",
    "is_valid_cluster",
    "metric_closure",
    "naive_coarsen",
    "normalize_bulk_visits",
    "oracle_walk_length",
    "solve_exact",
    "solve_pipeline",
    "validate_closed_walk",
]
