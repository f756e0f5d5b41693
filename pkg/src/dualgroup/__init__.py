"""Exact models of the duality functor groups DG_n of n-fold vector bundles."""

from .combinatorics import Hop, Partition, enumerate_partitions, stirling2, tomo_count
from .group_model import (
    DualityElement, LabeledGraph, Perm, SplitStatus, bfs_enumerate, centre_order,
    dg_order, element_of_dg, eval_word, is_kernel_graph, kernel_basis, psi_generator,
    square_graph, verify_splitting,
)

__version__ = "0.1.0"
