"""Graphs of G-conjugacy class sizes of normal subgroups of finite permutation groups."""
from .classgraph import ClassGraph, GraphSummary, build_graph, export_graph, isolated_pairs, summarize
from .constructions import GroupPair, catalog_build, example1_pair, example2_composite
from .io import GroupDocument, GroupFileError, parse_group_file
from .perm import (
    GClass,
    GroupError,
    NotNormalError,
    PermGroup,
    Permutation,
    check_normal,
    g_classes_in,
    is_normal,
    quotient,
)
from .structure import classify_structure, frobenius_kernel, normal_subgroups, o_pi, sylow
from .theorems import SUITES, VerificationOutcome, run_corpus

__version__ = "0.1.0"
