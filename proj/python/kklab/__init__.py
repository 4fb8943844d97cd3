"""Exact subgraph counts, sparsity thresholds and extremal search."""

import json as _json

from ._core import (
    Graph,
    automorphism_count,
    check_sparse,
    count_copies,
    count_labeled,
    q_min,
    required_L,
    run_cli,
)

__all__ = [
    "Graph",
    "automorphism_count",
    "check_sparse",
    "count_copies",
    "count_labeled",
    "q_min",
    "required_L",
    "run_cli",
    "cli_json",
]


def cli_json(*args):
    """Run one CLI command and return its exit code and parsed JSON output."""
    code, out, _ = run_cli([str(a) for a in args])
    return code, _json.loads(out) if out.strip() else None
